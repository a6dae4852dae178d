//! Weak and strong maps between matroids on the same ground set, the
//! closure map on flats and chains, and the auxiliary pseudo-matroid of a
//! rank-preserving weak map.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::matroid::Matroid;
use crate::order_complex::{chains_of_flag, jh_string, minimal_completion, Chain};
use crate::subset::{GroundSubset, RankSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    Strong,
    Weak,
    RankPreservingWeak,
    None,
}

/// Outcome of a map test. `violation` is a flat of B that is not a flat of
/// A (strong test) or a basis of B dependent in A (weak test).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MapWitness {
    pub kind: MapKind,
    pub violation: Option<GroundSubset>,
}

impl MapWitness {
    pub fn holds(&self) -> bool {
        self.kind != MapKind::None
    }
}

fn same_ground(a: &Matroid, b: &Matroid) -> Result<()> {
    if a.n() == b.n() {
        Ok(())
    } else {
        Err(Error::GroundSetMismatch(a.n(), b.n()))
    }
}

/// `I(B) ⊆ I(A)`, tested on the bases of B.
pub fn is_weak_map(a: &Matroid, b: &Matroid) -> Result<MapWitness> {
    same_ground(a, b)?;
    if let Some(&bad) = b.bases().iter().find(|&&s| !a.is_independent(s)) {
        return Ok(MapWitness {
            kind: MapKind::None,
            violation: Some(bad),
        });
    }
    let kind = if a.rank() == b.rank() {
        MapKind::RankPreservingWeak
    } else {
        MapKind::Weak
    };
    Ok(MapWitness {
        kind,
        violation: None,
    })
}

pub fn is_rank_preserving_weak(a: &Matroid, b: &Matroid) -> Result<bool> {
    Ok(is_weak_map(a, b)?.kind == MapKind::RankPreservingWeak)
}

/// `F(B) ⊆ F(A)`.
pub fn is_strong_map(a: &Matroid, b: &Matroid) -> Result<MapWitness> {
    same_ground(a, b)?;
    let b_lat = FlatLattice::of_matroid(b);
    Ok(strong_map_with(a, &b_lat))
}

/// Strong-map test against a precomputed lattice of B.
pub fn strong_map_with(a: &Matroid, b_lattice: &FlatLattice) -> MapWitness {
    match b_lattice.flats().iter().find(|&&f| !a.is_flat(f)) {
        Some(&bad) => MapWitness {
            kind: MapKind::None,
            violation: Some(bad),
        },
        None => MapWitness {
            kind: MapKind::Strong,
            violation: None,
        },
    }
}

/// Splits a weak map `A → B` as `A → T → B` with `T` the truncation of `A`
/// to the rank of `B`: the first leg is strong, the second rank-preserving.
pub fn decompose_weak_map(a: &Matroid, b: &Matroid) -> Result<Matroid> {
    let weak = is_weak_map(a, b)?;
    if !weak.holds() {
        return Err(Error::NotAWeakMap(weak.violation.unwrap_or_default()));
    }
    let t = a.truncation(b.rank())?;
    if !is_strong_map(a, &t)?.holds() {
        return Err(Error::TheoremViolation(
            "truncation is not a strong image".into(),
        ));
    }
    if !is_rank_preserving_weak(&t, b)? {
        return Err(Error::TheoremViolation(
            "truncation does not map weakly onto B".into(),
        ));
    }
    Ok(t)
}

/// First subset `G` with `rk_A(G) < rk_B(G)`, if any.
pub fn rank_dominance_violation(a: &Matroid, b: &Matroid) -> Result<Option<GroundSubset>> {
    same_ground(a, b)?;
    Ok((0..(1u32 << a.n()))
        .map(|bits| GroundSubset::from_bits(bits as u16))
        .find(|&g| a.rank_of(g) < b.rank_of(g)))
}

/// Image of a chain under B-closure, dropping images equal to `0_B` or `E`
/// and collapsing duplicates.
pub fn phi_chain(b: &Matroid, c: &Chain) -> Chain {
    let zero = b.loops();
    let top = b.ground();
    let mut flats: Vec<GroundSubset> = Vec::with_capacity(c.len());
    let mut flag = RankSet::EMPTY;
    for &f in c.flats() {
        let g = b.closure(f);
        if g == zero || g == top || flats.last() == Some(&g) {
            continue;
        }
        flats.push(g);
        flag = flag.with(b.rank_of(g));
    }
    Chain::from_parts(flats, flag)
}

/// Checks that B-closure maps `F(A)` onto `F(B)` and that every B-flat has
/// a preimage of the same rank. Returns the first B-flat without one.
pub fn flat_surjectivity_violation(
    a_lattice: &FlatLattice,
    b: &Matroid,
    b_lattice: &FlatLattice,
) -> Option<GroundSubset> {
    b_lattice.flats().iter().copied().find(|&f| {
        let k = b.rank_of(f);
        !a_lattice
            .ids_of_rank(k)
            .any(|id| b.closure(a_lattice.flat(id)) == f)
    })
}

/// Flats of `A` whose B-closure keeps their A-rank, graded by A-rank.
#[derive(Clone, Debug)]
pub struct PseudoMatroidLattice {
    a: Matroid,
    b: Matroid,
    lattice: FlatLattice,
}

impl PseudoMatroidLattice {
    pub fn new(a: &Matroid, b: &Matroid) -> Result<PseudoMatroidLattice> {
        Self::from_lattice(a, &FlatLattice::of_matroid(a), b)
    }

    /// Builds from a precomputed lattice of A. Fails if the pair is not a
    /// rank-preserving weak map; reports a theorem violation if the two
    /// membership tests disagree or the result is not graded.
    pub fn from_lattice(
        a: &Matroid,
        a_lattice: &FlatLattice,
        b: &Matroid,
    ) -> Result<PseudoMatroidLattice> {
        if !is_rank_preserving_weak(a, b)? {
            return Err(Error::NotRankPreservingWeak);
        }
        let mut kept = Vec::new();
        for &f in a_lattice.flats() {
            let k = a.rank_of(f);
            let by_rank = b.rank_of(b.closure(f)) == k;
            let by_basis = f
                .subsets()
                .any(|i| i.len() == k && b.is_independent(i));
            if by_rank != by_basis {
                return Err(Error::TheoremViolation(format!(
                    "membership tests disagree on flat {f}"
                )));
            }
            if by_rank {
                kept.push((f, k));
            }
        }
        let lattice = FlatLattice::from_graded_flats(a.n(), a.rank(), kept);
        if let Some((lo, hi)) = gradedness_violation(&lattice) {
            return Err(Error::TheoremViolation(format!(
                "pseudo-matroid has no flat strictly between {lo} and {hi}"
            )));
        }
        Ok(PseudoMatroidLattice {
            a: a.clone(),
            b: b.clone(),
            lattice,
        })
    }

    pub fn lattice(&self) -> &FlatLattice {
        &self.lattice
    }

    pub fn source(&self) -> &Matroid {
        &self.a
    }

    pub fn target(&self) -> &Matroid {
        &self.b
    }
}

/// A pair `F ⊊ F'` with rank gap at least two and no flat of the next rank
/// strictly between them.
fn gradedness_violation(lat: &FlatLattice) -> Option<(GroundSubset, GroundSubset)> {
    for k in 0..=lat.rank() {
        for &lo in lat.flats_of_rank(k) {
            for k2 in k + 2..=lat.rank() {
                for &hi in lat.flats_of_rank(k2) {
                    if !lo.is_subset(hi) {
                        continue;
                    }
                    let between = lat
                        .flats_of_rank(k + 1)
                        .iter()
                        .any(|g| lo.is_subset(*g) && g.is_subset(hi));
                    if !between {
                        return Some((lo, hi));
                    }
                }
            }
        }
    }
    None
}

/// Preimage of a B-chain with the same flag, built from A-closures of the
/// prefixes of the Jordan–Hölder string of its minimal completion.
pub fn flag_preimage(
    a: &Matroid,
    a_lattice: &FlatLattice,
    b_lattice: &FlatLattice,
    c: &Chain,
) -> Result<Chain> {
    let mu = minimal_completion(b_lattice, c);
    let word = jh_string(b_lattice, &mu)?;
    let mut prefix = GroundSubset::EMPTY;
    let mut flats = Vec::with_capacity(c.len());
    for (k, &letter) in word.letters().iter().enumerate() {
        prefix = prefix.with(letter);
        if c.flag().contains(k + 1) {
            flats.push(a.closure(prefix));
        }
    }
    Chain::new(a_lattice, flats)
}

#[derive(Clone, Debug, Default)]
pub struct FlagSurjectivity {
    /// `(C, D)` with `φ_B(D) = C` and equal flags, one per B-chain.
    pub preimages: Vec<(Chain, Chain)>,
    /// B-chains whose constructed preimage failed.
    pub failures: Vec<Chain>,
}

impl FlagSurjectivity {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every B-chain, exhibits an A-chain of the same flag mapping onto it.
pub fn check_flag_surjectivity(
    a: &Matroid,
    a_lattice: &FlatLattice,
    b: &Matroid,
    b_lattice: &FlatLattice,
) -> Result<FlagSurjectivity> {
    if !is_rank_preserving_weak(a, b)? {
        return Err(Error::NotRankPreservingWeak);
    }
    let mut out = FlagSurjectivity::default();
    for s in RankSet::full(b_lattice.top()).subsets() {
        for c in chains_of_flag(b_lattice, s)? {
            match flag_preimage(a, a_lattice, b_lattice, &c) {
                Ok(d) if d.flag() == c.flag() && phi_chain(b, &d) == c => {
                    out.preimages.push((c, d))
                }
                _ => out.failures.push(c),
            }
        }
    }
    Ok(out)
}
