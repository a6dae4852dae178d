//! Catalog generation, weak-map pair discovery and the monotonicity
//! verification suite.

pub mod catalog;
pub mod error;
pub mod pairs;
pub mod profile;
pub mod suite;

pub use catalog::{Catalog, Entry, Source};
pub use error::{Result, VerifyError};
pub use pairs::find_weak_pairs;
pub use suite::{run_suite, Check, SuiteOptions, SuiteReport};
