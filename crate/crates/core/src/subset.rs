//! Bitmask sets: subsets of the ground set `[n]` and subsets of the rank
//! range `[r]`.
//!
//! Ground elements are labeled `1..=n` and element `e` lives in bit `e - 1`.
//! Ranks are labeled `1..=r` with the same offset.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 16;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSubset(u16);

impl GroundSubset {
    pub const EMPTY: GroundSubset = GroundSubset(0);

    pub fn from_bits(bits: u16) -> Self {
        GroundSubset(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    /// The whole ground set `[n]`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND);
        GroundSubset(((1u32 << n) - 1) as u16)
    }

    pub fn singleton(e: usize) -> Self {
        debug_assert!((1..=MAX_GROUND).contains(&e));
        GroundSubset(1 << (e - 1))
    }

    /// Builds a set from 1-based elements. Panics on elements outside `1..=16`.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        elements
            .into_iter()
            .fold(Self::EMPTY, |acc, e| acc.with(e))
    }

    pub fn contains(self, e: usize) -> bool {
        e >= 1 && e <= MAX_GROUND && self.0 & (1 << (e - 1)) != 0
    }

    pub fn with(self, e: usize) -> Self {
        assert!((1..=MAX_GROUND).contains(&e), "element {e} out of range");
        GroundSubset(self.0 | (1 << (e - 1)))
    }

    pub fn without(self, e: usize) -> Self {
        if !(1..=MAX_GROUND).contains(&e) {
            return self;
        }
        GroundSubset(self.0 & !(1 << (e - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        GroundSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        GroundSubset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        GroundSubset(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest element, if any.
    pub fn min_element(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    /// Largest element, if any.
    pub fn max_element(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(16 - self.0.leading_zeros() as usize)
        }
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let e = bits.trailing_zeros() as usize + 1;
            bits &= bits - 1;
            Some(e)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Flat order used for chains: find the smallest element in exactly one
    /// of the two sets; the set containing it comes first.
    pub fn lex_cmp(self, other: Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let lowest = diff & diff.wrapping_neg();
        if self.0 & lowest != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Compares the sorted element lists lexicographically.
    pub fn list_cmp(self, other: Self) -> Ordering {
        self.iter().cmp(other.iter())
    }

    /// Every subset of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = GroundSubset> {
        let full = self.0;
        let mut next = Some(0u16);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(GroundSubset(cur))
        })
    }

    /// All `k`-subsets of `[n]` in list-lexicographic order.
    pub fn k_subsets(n: usize, k: usize) -> Vec<GroundSubset> {
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(k);
        fn rec(
            n: usize,
            k: usize,
            start: usize,
            stack: &mut Vec<usize>,
            out: &mut Vec<GroundSubset>,
        ) {
            if stack.len() == k {
                out.push(GroundSubset::from_elements(stack.iter().copied()));
                return;
            }
            let need = k - stack.len();
            for e in start..=n {
                if n - e + 1 < need {
                    break;
                }
                stack.push(e);
                rec(n, k, e + 1, stack, out);
                stack.pop();
            }
        }
        if k <= n {
            rec(n, k, 1, &mut stack, &mut out);
        }
        out
    }
}

impl fmt::Display for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A set of ranks `S ⊆ [r]`; rank `i` lives in bit `i - 1`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankSet(u32);

impl RankSet {
    pub const EMPTY: RankSet = RankSet(0);

    pub fn from_bits(bits: u32) -> Self {
        RankSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// `[r] = {1, ..., r}`; empty when `r == 0`.
    pub fn full(r: usize) -> Self {
        RankSet(((1u64 << r) - 1) as u32)
    }

    pub fn from_ranks<I: IntoIterator<Item = usize>>(ranks: I) -> Self {
        ranks.into_iter().fold(Self::EMPTY, |acc, i| acc.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=32).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn with(self, i: usize) -> Self {
        assert!((1..=32).contains(&i), "rank {i} out of range");
        RankSet(self.0 | (1 << (i - 1)))
    }

    pub fn without(self, i: usize) -> Self {
        if !(1..=32).contains(&i) {
            return self;
        }
        RankSet(self.0 & !(1 << (i - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest rank in the set, or 0 when empty.
    pub fn max_rank(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// Ranks in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize + 1;
            bits &= bits - 1;
            Some(i)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of `self`.
    pub fn subsets(self) -> impl Iterator<Item = RankSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(RankSet(cur))
        })
    }

    /// All subsets of `[r]` ordered by size, then lexicographically by
    /// their sorted rank lists.
    pub fn all_ordered(r: usize) -> Vec<RankSet> {
        let mut all: Vec<RankSet> = RankSet::full(r).subsets().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
        all
    }
}

impl fmt::Display for RankSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for RankSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for GroundSubset {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.to_vec().serialize(ser)
    }
}

impl Serialize for RankSet {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.to_vec().serialize(ser)
    }
}
