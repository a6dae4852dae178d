//! Matroids on `[n]` stored by their basis family.
//!
//! A [`Matroid`] also carries a rank table over all `2^n` subsets, built once
//! at construction, so rank and closure queries are table lookups.

use std::fmt;

use crate::error::{Error, Result};
use crate::subset::{GroundSubset, MAX_GROUND};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matroid {
    n: usize,
    rank: usize,
    /// Sorted by element list.
    bases: Vec<GroundSubset>,
    ranks: Vec<u8>,
}

impl Matroid {
    /// Validates a basis family: nonempty, equicardinal and closed under
    /// basis exchange.
    pub fn from_bases<I>(n: usize, bases: I) -> Result<Matroid>
    where
        I: IntoIterator<Item = GroundSubset>,
    {
        if n > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(n));
        }
        let ground = GroundSubset::full(n);
        let mut bases: Vec<GroundSubset> = bases.into_iter().collect();
        for b in &bases {
            if !b.is_subset(ground) {
                let element = b.difference(ground).min_element().unwrap_or(0);
                return Err(Error::ElementOutOfRange { element, n });
            }
        }
        bases.sort_by(|a, b| a.list_cmp(*b));
        bases.dedup();
        let first = *bases.first().ok_or(Error::EmptyBases)?;
        if let Some(b) = bases.iter().find(|b| b.len() != first.len()) {
            return Err(Error::UnequalBases(first.len(), b.len()));
        }
        check_exchange(n, &bases)?;
        Ok(Self::from_valid_bases(n, bases))
    }

    /// Builds from a family already known to satisfy the basis axioms,
    /// sorted and deduplicated.
    pub(crate) fn from_valid_bases(n: usize, bases: Vec<GroundSubset>) -> Matroid {
        let rank = bases[0].len();
        let ranks = rank_table(n, &bases);
        Matroid {
            n,
            rank,
            bases,
            ranks,
        }
    }

    /// `U(r, n)`: every `r`-subset is a basis.
    pub fn uniform(r: i64, n: usize) -> Result<Matroid> {
        if n > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(n));
        }
        if r < 0 || r as usize > n {
            return Err(Error::InvalidRank { rank: r, n });
        }
        Ok(Self::from_valid_bases(
            n,
            GroundSubset::k_subsets(n, r as usize),
        ))
    }

    /// Rank-3 matroid on `[n]` where `{1, ..., n-1}` is a line and `n` lies
    /// off it.
    pub fn near_pencil(n: usize) -> Result<Matroid> {
        if n < 3 {
            return Err(Error::TooSmall(n));
        }
        if n > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(n));
        }
        let bases = GroundSubset::k_subsets(n - 1, 2)
            .into_iter()
            .map(|pair| pair.with(n))
            .collect::<Vec<_>>();
        Matroid::from_bases(n, bases)
    }

    /// Column matroid of a matrix over `GF(p)`; column `j` is element `j + 1`.
    pub fn linear(p: u64, columns: &[Vec<u64>]) -> Result<Matroid> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = columns.len();
        if n > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(n));
        }
        let dim = columns.first().map_or(0, |c| c.len());
        if columns.iter().any(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch);
        }
        let all: Vec<usize> = (0..n).collect();
        let r = gf_rank(p, columns, &all);
        let bases: Vec<GroundSubset> = GroundSubset::k_subsets(n, r)
            .into_iter()
            .filter(|s| {
                let idx: Vec<usize> = s.iter().map(|e| e - 1).collect();
                gf_rank(p, columns, &idx) == r
            })
            .collect();
        Matroid::from_bases(n, bases)
    }

    /// Truncation to rank `k`: the bases are the independent `k`-sets.
    pub fn truncation(&self, k: usize) -> Result<Matroid> {
        if k > self.rank {
            return Err(Error::InvalidRank {
                rank: k as i64,
                n: self.n,
            });
        }
        if k == self.rank {
            return Ok(self.clone());
        }
        let bases = GroundSubset::k_subsets(self.n, k)
            .into_iter()
            .filter(|s| self.is_independent(*s))
            .collect();
        Ok(Self::from_valid_bases(self.n, bases))
    }

    /// Applies `perm`, where `perm[i - 1]` is the image of element `i`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Matroid> {
        if perm.len() != self.n {
            return Err(Error::NotAPermutation(self.n));
        }
        let mut seen = GroundSubset::EMPTY;
        for &p in perm {
            if p == 0 || p > self.n || seen.contains(p) {
                return Err(Error::NotAPermutation(self.n));
            }
            seen = seen.with(p);
        }
        let mut bases: Vec<GroundSubset> = self
            .bases
            .iter()
            .map(|b| GroundSubset::from_elements(b.iter().map(|e| perm[e - 1])))
            .collect();
        bases.sort_by(|a, b| a.list_cmp(*b));
        Ok(Self::from_valid_bases(self.n, bases))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank of the whole ground set.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[GroundSubset] {
        &self.bases
    }

    pub fn ground(&self) -> GroundSubset {
        GroundSubset::full(self.n)
    }

    /// Size of the largest independent subset of `set`.
    pub fn rank_of(&self, set: GroundSubset) -> usize {
        self.ranks[set.bits() as usize] as usize
    }

    pub fn is_independent(&self, set: GroundSubset) -> bool {
        self.rank_of(set) == set.len()
    }

    pub fn is_basis(&self, set: GroundSubset) -> bool {
        set.len() == self.rank && self.is_independent(set)
    }

    /// Smallest flat containing `set`.
    pub fn closure(&self, set: GroundSubset) -> GroundSubset {
        let r = self.rank_of(set);
        let mut out = set;
        for x in self.ground().difference(set).iter() {
            if self.rank_of(set.with(x)) == r {
                out = out.with(x);
            }
        }
        out
    }

    pub fn is_flat(&self, set: GroundSubset) -> bool {
        self.closure(set) == set
    }

    /// The set of loops, which is also the minimal flat.
    pub fn loops(&self) -> GroundSubset {
        self.closure(GroundSubset::EMPTY)
    }

    /// Number of independent sets of each cardinality `0..=rank`.
    pub fn independent_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.rank + 1];
        for bits in 0..(1u32 << self.n) {
            let s = GroundSubset::from_bits(bits as u16);
            if self.is_independent(s) {
                counts[s.len()] += 1;
            }
        }
        counts
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("n", &self.n)
            .field("rank", &self.rank)
            .field("bases", &self.bases)
            .finish()
    }
}

fn check_exchange(n: usize, bases: &[GroundSubset]) -> Result<()> {
    let mut member = vec![false; 1 << n];
    for b in bases {
        member[b.bits() as usize] = true;
    }
    for &b1 in bases {
        for &b2 in bases {
            if b1 == b2 {
                continue;
            }
            let extra = b2.difference(b1);
            for x in b1.difference(b2).iter() {
                let base = b1.without(x);
                let ok = extra
                    .iter()
                    .any(|y| member[base.with(y).bits() as usize]);
                if !ok {
                    return Err(Error::NotAMatroid { b1, x, b2 });
                }
            }
        }
    }
    Ok(())
}

/// Rank of every subset of `[n]`, by dynamic programming over the subset
/// lattice: a set is independent iff it lies under some basis, and the rank
/// of a dependent set is the largest rank among its one-smaller subsets.
fn rank_table(n: usize, bases: &[GroundSubset]) -> Vec<u8> {
    let size = 1usize << n;
    let mut under_basis = vec![false; size];
    for b in bases {
        under_basis[b.bits() as usize] = true;
    }
    for bits in (0..size).rev() {
        if under_basis[bits] {
            continue;
        }
        let mut rest = !bits & (size - 1);
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            if under_basis[bits | low] {
                under_basis[bits] = true;
                break;
            }
            rest &= rest - 1;
        }
    }
    let mut ranks = vec![0u8; size];
    for bits in 1..size {
        if under_basis[bits] {
            ranks[bits] = bits.count_ones() as u8;
        } else {
            let mut best = 0;
            let mut rest = bits;
            while rest != 0 {
                let low = rest & rest.wrapping_neg();
                best = best.max(ranks[bits & !low]);
                rest &= rest - 1;
            }
            ranks[bits] = best;
        }
    }
    ranks
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Rank over `GF(p)` of the selected columns.
fn gf_rank(p: u64, columns: &[Vec<u64>], select: &[usize]) -> usize {
    let dim = columns.first().map_or(0, |c| c.len());
    // rows of the transposed matrix: one per selected column
    let mut rows: Vec<Vec<u64>> = select
        .iter()
        .map(|&j| columns[j].iter().map(|v| v % p).collect())
        .collect();
    let mut rank = 0;
    for col in 0..dim {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows.len() {
            if i == rank || rows[i][col] == 0 {
                continue;
            }
            let factor = rows[i][col];
            for j in 0..dim {
                let sub = factor * rows[rank][j] % p;
                rows[i][j] = (rows[i][j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}
