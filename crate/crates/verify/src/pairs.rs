//! Weak and strong map pairs within a catalog.

use rayon::prelude::*;

use crate::catalog::Catalog;
use crate::profile::{profiles, Profile};

/// Ordered pairs `(a, b)` of catalog indices on the same ground set.
pub type Pair = (usize, usize);

fn scan(cat: &Catalog, keep: impl Fn(usize, usize) -> bool + Sync) -> Vec<Pair> {
    let entries = cat.entries();
    (0..entries.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let keep = &keep;
            (0..entries.len())
                .filter(move |&b| entries[a].matroid.n() == entries[b].matroid.n() && keep(a, b))
                .map(move |b| (a, b))
        })
        .collect()
}

/// All pairs with `I(B) ⊆ I(A)`, optionally restricted to equal rank.
/// Identity pairs are included.
pub fn weak_pairs(cat: &Catalog, profiles: &[Profile], rank_preserving: bool) -> Vec<Pair> {
    let entries = cat.entries();
    scan(cat, |a, b| {
        (!rank_preserving || entries[a].matroid.rank() == entries[b].matroid.rank())
            && profiles[b].independent.is_subset(&profiles[a].independent)
    })
}

/// All pairs with `F(B) ⊆ F(A)`.
pub fn strong_pairs(cat: &Catalog, profiles: &[Profile]) -> Vec<Pair> {
    scan(cat, |a, b| profiles[b].flats.is_subset(&profiles[a].flats))
}

pub fn find_weak_pairs(cat: &Catalog, rank_preserving: bool) -> Vec<Pair> {
    weak_pairs(cat, &profiles(cat), rank_preserving)
}
