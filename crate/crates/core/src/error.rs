use thiserror::Error;

use crate::subset::{GroundSubset, RankSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set of size {0} exceeds the supported maximum of 16")]
    GroundSetTooLarge(usize),

    #[error("element {element} is outside the ground set [1..{n}]")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("basis family is empty")]
    EmptyBases,

    #[error("bases have unequal cardinalities {0} and {1}")]
    UnequalBases(usize, usize),

    #[error("not a matroid: removing {x} from {b1} admits no exchange into {b2}")]
    NotAMatroid {
        b1: GroundSubset,
        x: usize,
        b2: GroundSubset,
    },

    #[error("invalid rank {rank} for ground set of size {n}")]
    InvalidRank { rank: i64, n: usize },

    #[error("near-pencil needs at least 3 elements, got {0}")]
    TooSmall(usize),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("columns have inconsistent dimensions")]
    DimensionMismatch,

    #[error("not a permutation of [1..{0}]")]
    NotAPermutation(usize),

    #[error("matroids have different ground sets ({0} vs {1})")]
    GroundSetMismatch(usize, usize),

    #[error("rank set {set} is not contained in [1..{top}]")]
    RankOutOfRange { set: RankSet, top: usize },

    #[error("chain is not full")]
    NotFullChain,

    #[error("chains have different flags {0} and {1}")]
    FlagMismatch(RankSet, RankSet),

    #[error("{0} is not a chain of proper flats of this lattice")]
    InvalidChain(String),

    #[error("no weak map from A to B: {0} is independent in B but not in A")]
    NotAWeakMap(GroundSubset),

    #[error("A -> B is not a rank-preserving weak map")]
    NotRankPreservingWeak,

    #[error("full chain has descent set {actual}, expected {expected}")]
    NotDescentChain { expected: RankSet, actual: RankSet },

    #[error("integer overflow converting an exact result")]
    Overflow,

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
