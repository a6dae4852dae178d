//! Matroids, lattices of flats, flag f/h-vectors of their order complexes,
//! weak and strong maps, and the fine-graded Stanley–Reisner computations
//! that certify flag h-vector monotonicity under weak maps.

pub mod error;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod maps;
pub mod matroid;
pub mod order_complex;
pub mod sr;
pub mod subset;

pub use error::{Error, Result};
pub use lattice::FlatLattice;
pub use matroid::Matroid;
pub use order_complex::{Chain, CoarseVectors, FlagVector, JhString};
pub use subset::{GroundSubset, RankSet};
