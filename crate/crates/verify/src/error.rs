use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("ground set size {n} exceeds the enumeration cap {cap} (set FLAGMONO_CAP to raise it)")]
    CapExceeded { n: usize, cap: usize },

    #[error("rank {r} is out of range for ground set size {n}")]
    BadRank { n: usize, r: usize },

    #[error("duplicate catalog name {0}")]
    DuplicateName(String),

    #[error(transparent)]
    Core(#[from] flagmono_core::Error),
}

pub type Result<T> = std::result::Result<T, VerifyError>;
