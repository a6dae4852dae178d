//! Graded lattices of flats.

use std::collections::{HashMap, HashSet};

use crate::matroid::Matroid;
use crate::subset::GroundSubset;

/// Ground sets up to this size enumerate flats as closures of all subsets;
/// larger ones walk covers upward from the loops.
const CLOSURE_SWEEP_MAX: usize = 12;

/// Flats grouped by rank, each rank sorted in flat lex order, with covers.
///
/// Also used for the flats of an auxiliary pseudo-matroid, which are graded
/// but need not form a geometric lattice.
#[derive(Clone, Debug)]
pub struct FlatLattice {
    n: usize,
    flats: Vec<GroundSubset>,
    flat_rank: Vec<usize>,
    /// `rank_start[k]..rank_start[k + 1]` indexes the flats of rank `k`.
    rank_start: Vec<usize>,
    covers: Vec<Vec<usize>>,
    index: HashMap<GroundSubset, usize>,
}

impl FlatLattice {
    /// Lattice of flats of a matroid.
    pub fn of_matroid(m: &Matroid) -> FlatLattice {
        if m.n() <= CLOSURE_SWEEP_MAX {
            Self::of_matroid_by_closures(m)
        } else {
            Self::of_matroid_by_covers(m)
        }
    }

    /// Closure of every subset, deduplicated.
    pub fn of_matroid_by_closures(m: &Matroid) -> FlatLattice {
        let mut seen = HashSet::new();
        for bits in 0..(1u32 << m.n()) {
            seen.insert(m.closure(GroundSubset::from_bits(bits as u16)));
        }
        let flats: Vec<(GroundSubset, usize)> =
            seen.into_iter().map(|f| (f, m.rank_of(f))).collect();
        Self::assemble(m.n(), m.rank(), flats, |lat, id| matroid_covers(m, lat, id))
    }

    /// Breadth-first search from the loops: the covers of a flat `F` are the
    /// closures of `F + x` for `x` outside `F`.
    pub fn of_matroid_by_covers(m: &Matroid) -> FlatLattice {
        let zero = m.loops();
        let mut seen = HashSet::from([zero]);
        let mut frontier = vec![zero];
        while let Some(f) = frontier.pop() {
            for x in m.ground().difference(f).iter() {
                let g = m.closure(f.with(x));
                if seen.insert(g) {
                    frontier.push(g);
                }
            }
        }
        let flats: Vec<(GroundSubset, usize)> =
            seen.into_iter().map(|f| (f, m.rank_of(f))).collect();
        Self::assemble(m.n(), m.rank(), flats, |lat, id| matroid_covers(m, lat, id))
    }

    /// Graded family of flats with an explicit rank for each; covers are
    /// recomputed by containment between consecutive ranks.
    pub fn from_graded_flats(
        n: usize,
        top_rank: usize,
        flats: Vec<(GroundSubset, usize)>,
    ) -> FlatLattice {
        Self::assemble(n, top_rank, flats, |lat, id| {
            let f = lat.flats[id];
            let k = lat.flat_rank[id];
            if k >= lat.rank() {
                return Vec::new();
            }
            lat.ids_of_rank(k + 1)
                .filter(|&g| f.is_subset(lat.flats[g]))
                .collect()
        })
    }

    fn assemble(
        n: usize,
        top_rank: usize,
        mut flats: Vec<(GroundSubset, usize)>,
        covers_of: impl Fn(&FlatLattice, usize) -> Vec<usize>,
    ) -> FlatLattice {
        flats.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.lex_cmp(b.0)));
        let mut rank_start = vec![0; top_rank + 2];
        for &(_, k) in &flats {
            rank_start[k + 1] += 1;
        }
        for k in 1..rank_start.len() {
            rank_start[k] += rank_start[k - 1];
        }
        let index = flats
            .iter()
            .enumerate()
            .map(|(i, &(f, _))| (f, i))
            .collect();
        let mut lat = FlatLattice {
            n,
            flat_rank: flats.iter().map(|&(_, k)| k).collect(),
            flats: flats.into_iter().map(|(f, _)| f).collect(),
            rank_start,
            covers: Vec::new(),
            index,
        };
        lat.covers = (0..lat.flats.len()).map(|id| covers_of(&lat, id)).collect();
        lat
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank of the top flat `E`.
    pub fn rank(&self) -> usize {
        self.rank_start.len() - 2
    }

    /// Chains live on ranks `1..=top()`, i.e. `top() = rank - 1` (or 0).
    pub fn top(&self) -> usize {
        self.rank().saturating_sub(1)
    }

    pub fn zero(&self) -> GroundSubset {
        self.flats[0]
    }

    pub fn ground(&self) -> GroundSubset {
        *self.flats.last().expect("lattice has a top flat")
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flats(&self) -> &[GroundSubset] {
        &self.flats
    }

    pub fn flat(&self, id: usize) -> GroundSubset {
        self.flats[id]
    }

    pub fn id_of(&self, f: GroundSubset) -> Option<usize> {
        self.index.get(&f).copied()
    }

    pub fn contains(&self, f: GroundSubset) -> bool {
        self.index.contains_key(&f)
    }

    pub fn rank_of(&self, f: GroundSubset) -> Option<usize> {
        self.id_of(f).map(|id| self.flat_rank[id])
    }

    pub fn ids_of_rank(&self, k: usize) -> std::ops::Range<usize> {
        if k > self.rank() {
            return 0..0;
        }
        self.rank_start[k]..self.rank_start[k + 1]
    }

    /// Flats of rank `k` in flat lex order.
    pub fn flats_of_rank(&self, k: usize) -> &[GroundSubset] {
        &self.flats[self.ids_of_rank(k)]
    }

    /// Number of flats of each rank `0..=rank`.
    pub fn rank_counts(&self) -> Vec<usize> {
        (0..=self.rank()).map(|k| self.ids_of_rank(k).len()).collect()
    }

    pub fn covers(&self, f: GroundSubset) -> impl Iterator<Item = GroundSubset> + '_ {
        let ids: &[usize] = match self.id_of(f) {
            Some(id) => &self.covers[id],
            None => &[],
        };
        ids.iter().map(move |&g| self.flats[g])
    }

    /// The flat covering `f` that contains `x`, if any.
    pub fn cover_containing(&self, f: GroundSubset, x: usize) -> Option<GroundSubset> {
        self.covers(f).find(|g| g.contains(x))
    }

    /// Smallest flat of the lattice containing `set`. Flats are closed under
    /// intersection, so the first hit in rank order is unique.
    pub fn closure_of(&self, set: GroundSubset) -> GroundSubset {
        *self
            .flats
            .iter()
            .find(|f| set.is_subset(**f))
            .expect("top flat contains everything")
    }
}

fn matroid_covers(m: &Matroid, lat: &FlatLattice, id: usize) -> Vec<usize> {
    let f = lat.flats[id];
    let mut out: Vec<usize> = m
        .ground()
        .difference(f)
        .iter()
        .map(|x| lat.index[&m.closure(f.with(x))])
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}
