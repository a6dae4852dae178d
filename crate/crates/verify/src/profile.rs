//! Per-matroid data shared by all checks.

use flagmono_core::lattice::FlatLattice;
use flagmono_core::order_complex::{
    coarse_vectors, flag_f_vector, flag_h_vector, independence_vectors, CoarseVectors,
};
use flagmono_core::{FlagVector, GroundSubset, Matroid};
use rayon::prelude::*;

use crate::catalog::Catalog;

/// Bitset over the `2^n` subsets of the ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFamily(Vec<u64>);

impl SubsetFamily {
    pub fn from_fn(n: usize, mut member: impl FnMut(GroundSubset) -> bool) -> SubsetFamily {
        let total = 1usize << n;
        let mut words = vec![0u64; total.div_ceil(64)];
        for bits in 0..total {
            if member(GroundSubset::from_bits(bits as u16)) {
                words[bits / 64] |= 1 << (bits % 64);
            }
        }
        SubsetFamily(words)
    }

    pub fn is_subset(&self, other: &SubsetFamily) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

#[derive(Clone, Debug)]
pub struct Profile {
    pub lattice: FlatLattice,
    pub flag_f: FlagVector,
    pub flag_h: FlagVector,
    pub coarse: CoarseVectors,
    pub independence: CoarseVectors,
    pub independent: SubsetFamily,
    pub flats: SubsetFamily,
}

impl Profile {
    pub fn new(m: &Matroid) -> Profile {
        let lattice = FlatLattice::of_matroid(m);
        let flag_f = flag_f_vector(&lattice);
        let flag_h = flag_h_vector(&lattice);
        let coarse = coarse_vectors(&flag_f);
        let flats = SubsetFamily::from_fn(m.n(), |s| lattice.contains(s));
        Profile {
            flag_f,
            flag_h,
            coarse,
            independence: independence_vectors(m),
            independent: SubsetFamily::from_fn(m.n(), |s| m.is_independent(s)),
            flats,
            lattice,
        }
    }
}

pub fn profiles(cat: &Catalog) -> Vec<Profile> {
    cat.entries()
        .par_iter()
        .map(|e| Profile::new(&e.matroid))
        .collect()
}
