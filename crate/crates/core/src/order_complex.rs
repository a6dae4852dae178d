//! Chains of proper flats and the flag vectors of the order complex.
//!
//! Flag h-vectors are available by three routes which are kept independent
//! of each other:
//!
//! * [`flag_h_vector`]: inclusion–exclusion over chain counts,
//! * [`h_by_descents`]: counting valid Jordan–Hölder strings by descent set,
//!   generated from the matroid's closure operator rather than the lattice,
//! * [`h_by_essential_chains`]: counting chains with no flat minimal between
//!   its neighbours.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::matroid::Matroid;
use crate::subset::{GroundSubset, RankSet};

/// A strictly increasing sequence of proper flats (neither the loops nor
/// the whole ground set). The empty chain has flag `∅`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    flats: Vec<GroundSubset>,
    flag: RankSet,
}

impl Chain {
    pub fn empty() -> Chain {
        Chain {
            flats: Vec::new(),
            flag: RankSet::EMPTY,
        }
    }

    /// Validates `flats` against `lat`: each must be a proper flat and ranks
    /// and containments must strictly increase.
    pub fn new(lat: &FlatLattice, flats: Vec<GroundSubset>) -> Result<Chain> {
        let mut flag = RankSet::EMPTY;
        let mut prev: Option<(GroundSubset, usize)> = None;
        for &f in &flats {
            let k = lat
                .rank_of(f)
                .ok_or_else(|| Error::InvalidChain(format!("{f} is not a flat")))?;
            if k == 0 || k >= lat.rank() {
                return Err(Error::InvalidChain(format!("{f} is not a proper flat")));
            }
            if let Some((p, pk)) = prev {
                if pk >= k || !p.is_subset(f) {
                    return Err(Error::InvalidChain(format!("{p} is not below {f}")));
                }
            }
            flag = flag.with(k);
            prev = Some((f, k));
        }
        Ok(Chain { flats, flag })
    }

    /// Caller guarantees `flats` has one flat per rank of `flag`, increasing.
    pub(crate) fn from_parts(flats: Vec<GroundSubset>, flag: RankSet) -> Chain {
        debug_assert_eq!(flats.len(), flag.len());
        Chain { flats, flag }
    }

    pub fn flats(&self) -> &[GroundSubset] {
        &self.flats
    }

    pub fn flag(&self) -> RankSet {
        self.flag
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    /// `(rank, flat)` pairs in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, GroundSubset)> + '_ {
        self.flag.iter().zip(self.flats.iter().copied())
    }

    pub fn flat_at_rank(&self, k: usize) -> Option<GroundSubset> {
        self.iter().find(|&(r, _)| r == k).map(|(_, f)| f)
    }

    /// Keeps only the flats whose ranks lie in `s`.
    pub fn restrict(&self, s: RankSet) -> Chain {
        let (flag, flats): (Vec<usize>, Vec<GroundSubset>) =
            self.iter().filter(|&(k, _)| s.contains(k)).unzip();
        Chain {
            flats,
            flag: RankSet::from_ranks(flag),
        }
    }

    /// Removes the flat of rank `k`, if present.
    pub fn without_rank(&self, k: usize) -> Chain {
        self.restrict(self.flag.without(k))
    }

    pub fn contains_chain(&self, other: &Chain) -> bool {
        other
            .iter()
            .all(|(k, f)| self.flat_at_rank(k) == Some(f))
    }

    pub fn is_full(&self, lat: &FlatLattice) -> bool {
        self.flag == RankSet::full(lat.top())
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, flat) in self.flats.iter().enumerate() {
            if i > 0 {
                write!(f, " < ")?;
            }
            write!(f, "{flat}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check_range(lat: &FlatLattice, s: RankSet) -> Result<()> {
    if s.is_subset(RankSet::full(lat.top())) {
        Ok(())
    } else {
        Err(Error::RankOutOfRange {
            set: s,
            top: lat.top(),
        })
    }
}

/// All chains of flag exactly `s`, in lexicographic chain order.
pub fn chains_of_flag(lat: &FlatLattice, s: RankSet) -> Result<Vec<Chain>> {
    check_range(lat, s)?;
    let ranks = s.to_vec();
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(ranks.len());
    extend_chains(lat, &ranks, lat.zero(), &mut stack, &mut out, s);
    Ok(out)
}

fn extend_chains(
    lat: &FlatLattice,
    ranks: &[usize],
    below: GroundSubset,
    stack: &mut Vec<GroundSubset>,
    out: &mut Vec<Chain>,
    flag: RankSet,
) {
    let Some((&k, rest)) = ranks.split_first() else {
        out.push(Chain::from_parts(stack.clone(), flag));
        return;
    };
    for &f in lat.flats_of_rank(k) {
        if below.is_subset(f) {
            stack.push(f);
            extend_chains(lat, rest, f, stack, out, flag);
            stack.pop();
        }
    }
}

/// Values indexed by every `S ⊆ [r]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlagVector {
    top: usize,
    values: Vec<i64>,
}

impl FlagVector {
    pub fn from_fn(top: usize, mut value: impl FnMut(RankSet) -> i64) -> FlagVector {
        let values = (0..(1u32 << top)).map(|b| value(RankSet::from_bits(b))).collect();
        FlagVector { top, values }
    }

    /// The `r` in `S ⊆ [r]`.
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn get(&self, s: RankSet) -> i64 {
        self.values[s.bits() as usize]
    }

    /// `(S, value)` pairs in bitmask order.
    pub fn iter(&self) -> impl Iterator<Item = (RankSet, i64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(b, &v)| (RankSet::from_bits(b as u32), v))
    }

    /// `h_S = Σ_{T ⊆ S} (-1)^{|S|-|T|} f_T`.
    pub fn h_from_f(&self) -> FlagVector {
        FlagVector::from_fn(self.top, |s| {
            s.subsets()
                .map(|t| {
                    let sign = if (s.len() - t.len()) % 2 == 0 { 1 } else { -1 };
                    sign * self.get(t)
                })
                .sum()
        })
    }

    /// `f_S = Σ_{T ⊆ S} h_T`.
    pub fn f_from_h(&self) -> FlagVector {
        FlagVector::from_fn(self.top, |s| s.subsets().map(|t| self.get(t)).sum())
    }

    /// Componentwise `self ≥ other`; returns the first failing `S`.
    pub fn dominates(&self, other: &FlagVector) -> std::result::Result<(), RankSet> {
        assert_eq!(self.top, other.top, "flag vectors over different [r]");
        match self.iter().find(|&(s, v)| v < other.get(s)) {
            Some((s, _)) => Err(s),
            None => Ok(()),
        }
    }

    /// CSV with `S` encoded as a bitmask integer (rank `i` in bit `i - 1`).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("S,value\n");
        for s in RankSet::all_ordered(self.top) {
            out.push_str(&format!("{},{}\n", s.bits(), self.get(s)));
        }
        out
    }
}

impl Serialize for FlagVector {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        #[derive(Serialize)]
        struct Entry {
            #[serde(rename = "S")]
            s: Vec<usize>,
            value: i64,
        }
        let order = RankSet::all_ordered(self.top);
        let mut seq = serializer.serialize_seq(Some(order.len()))?;
        for s in order {
            seq.serialize_element(&Entry {
                s: s.to_vec(),
                value: self.get(s),
            })?;
        }
        seq.end()
    }
}

/// Chain counts `f_S`, by dynamic programming over consecutive ranks of `S`.
pub fn flag_f_vector(lat: &FlatLattice) -> FlagVector {
    FlagVector::from_fn(lat.top(), |s| count_chains(lat, s))
}

fn count_chains(lat: &FlatLattice, s: RankSet) -> i64 {
    let mut ranks = s.iter();
    let Some(first) = ranks.next() else {
        return 1;
    };
    let mut layer: Vec<(GroundSubset, i64)> =
        lat.flats_of_rank(first).iter().map(|&f| (f, 1)).collect();
    for k in ranks {
        layer = lat
            .flats_of_rank(k)
            .iter()
            .map(|&g| {
                let c = layer
                    .iter()
                    .filter(|(f, _)| f.is_subset(g))
                    .map(|&(_, c)| c)
                    .sum();
                (g, c)
            })
            .collect();
    }
    layer.iter().map(|&(_, c)| c).sum()
}

/// Flag h-vector by inclusion–exclusion on [`flag_f_vector`].
pub fn flag_h_vector(lat: &FlatLattice) -> FlagVector {
    flag_f_vector(lat).h_from_f()
}

/// Ordinary f- and h-vectors `(f_0..f_r)`, `(h_0..h_r)` of a simplicial
/// complex of dimension `r - 1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CoarseVectors {
    pub f: Vec<i64>,
    pub h: Vec<i64>,
}

/// `Σ h_i x^{r-i} = Σ f_i (x-1)^{r-i}` solved for `h`, with `r = f.len() - 1`.
pub fn h_from_f_polynomial(f: &[i64]) -> Vec<i64> {
    let r = f.len() - 1;
    (0..=r)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(r - i, k - i) * f[i]
                })
                .sum()
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Coarse vectors of the order complex, by summing a flag f-vector over
/// `|S| = k`. Panics if the summed h-vector disagrees with the polynomial
/// transform of the summed f-vector.
pub fn coarse_vectors(flag_f: &FlagVector) -> CoarseVectors {
    let r = flag_f.top();
    let flag_h = flag_f.h_from_f();
    let mut f = vec![0i64; r + 1];
    let mut h = vec![0i64; r + 1];
    for (s, v) in flag_f.iter() {
        f[s.len()] += v;
        h[s.len()] += flag_h.get(s);
    }
    assert_eq!(h, h_from_f_polynomial(&f), "coarse h-vector identity failed");
    CoarseVectors { f, h }
}

/// f- and h-vectors of the independence complex, with `r = rank(M)`.
pub fn independence_vectors(m: &Matroid) -> CoarseVectors {
    let f: Vec<i64> = m.independent_counts().into_iter().map(|c| c as i64).collect();
    let h = h_from_f_polynomial(&f);
    CoarseVectors { f, h }
}

pub fn independence_h_vector(m: &Matroid) -> Vec<i64> {
    independence_vectors(m).h
}

/// A Jordan–Hölder string `b_1 … b_{r+1}` of ground elements.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JhString(pub Vec<usize>);

impl JhString {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn descent_set(&self) -> RankSet {
        descent_set(&self.0)
    }
}

impl fmt::Display for JhString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.iter().any(|&b| b > 9) { " " } else { "" };
        let parts: Vec<String> = self.0.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join(sep))
    }
}

impl fmt::Debug for JhString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Positions `i` with `b_i > b_{i+1}`.
pub fn descent_set(letters: &[usize]) -> RankSet {
    RankSet::from_ranks(
        letters
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1),
    )
}

/// `F_0 = 0_M, F_1, …, F_r, F_{r+1} = E` for a full chain.
fn boundaries(lat: &FlatLattice, c: &Chain) -> Vec<GroundSubset> {
    let mut out = Vec::with_capacity(c.len() + 2);
    out.push(lat.zero());
    out.extend_from_slice(c.flats());
    if lat.rank() > 0 {
        out.push(lat.ground());
    }
    out
}

/// `b_i = min(F_i \ F_{i-1})` along a full chain.
pub fn jh_string(lat: &FlatLattice, c: &Chain) -> Result<JhString> {
    if !c.is_full(lat) {
        return Err(Error::NotFullChain);
    }
    let bounds = boundaries(lat, c);
    Ok(JhString(
        bounds
            .windows(2)
            .map(|w| w[1].difference(w[0]).min_element().expect("strict chain"))
            .collect(),
    ))
}

/// True iff the letters form a basis and each `b_i` is the least element
/// of `cl(b_1..b_i) \ cl(b_1..b_{i-1})`.
pub fn is_valid_string(m: &Matroid, s: &JhString) -> bool {
    let letters = s.letters();
    if letters.len() != m.rank() || letters.iter().any(|&b| b == 0 || b > m.n()) {
        return false;
    }
    let set = GroundSubset::from_elements(letters.iter().copied());
    if set.len() != letters.len() || !m.is_basis(set) {
        return false;
    }
    let mut prefix = GroundSubset::EMPTY;
    let mut flat = m.closure(prefix);
    for &b in letters {
        prefix = prefix.with(b);
        let next = m.closure(prefix);
        if next.difference(flat).min_element() != Some(b) {
            return false;
        }
        flat = next;
    }
    true
}

/// Every valid string of `m`, built letter by letter from the closure
/// operator.
pub fn valid_strings(m: &Matroid) -> Vec<JhString> {
    fn rec(m: &Matroid, flat: GroundSubset, word: &mut Vec<usize>, out: &mut Vec<JhString>) {
        if word.len() == m.rank() {
            out.push(JhString(word.clone()));
            return;
        }
        for x in m.ground().difference(flat).iter() {
            let next = m.closure(flat.with(x));
            if next.difference(flat).min_element() == Some(x) {
                word.push(x);
                rec(m, next, word, out);
                word.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(m, m.loops(), &mut Vec::new(), &mut out);
    out
}

/// The full chain `cl(b_1) ⊂ cl(b_1 b_2) ⊂ …` of a string.
pub fn chain_of_string(m: &Matroid, lat: &FlatLattice, s: &JhString) -> Result<Chain> {
    let r = lat.top();
    let mut prefix = GroundSubset::EMPTY;
    let mut flats = Vec::with_capacity(r);
    for &b in s.letters().iter().take(r) {
        prefix = prefix.with(b);
        flats.push(m.closure(prefix));
    }
    Chain::new(lat, flats)
}

/// The rank-`k` flat produced by interpolating upward from `lower` toward
/// `upper`, always adjoining the least element of `upper` not yet covered.
pub fn minimal_flat(
    lat: &FlatLattice,
    lower: GroundSubset,
    upper: GroundSubset,
    k: usize,
) -> GroundSubset {
    let mut cur = lower;
    let mut rank = lat.rank_of(lower).expect("lower is a flat");
    while rank < k {
        let a = upper
            .difference(cur)
            .min_element()
            .expect("upper has higher rank");
        cur = lat.cover_containing(cur, a).expect("cover exists in a matroid lattice");
        rank += 1;
    }
    cur
}

/// Minimal completion `μ(C)` of a chain to a full chain.
pub fn minimal_completion(lat: &FlatLattice, c: &Chain) -> Chain {
    let mut bounds = Vec::with_capacity(c.len() + 2);
    bounds.push((0, lat.zero()));
    bounds.extend(c.iter());
    bounds.push((lat.rank(), lat.ground()));
    let mut flats = Vec::with_capacity(lat.top());
    for w in bounds.windows(2) {
        let ((lo_rank, lo), (hi_rank, hi)) = (w[0], w[1]);
        let mut cur = lo;
        for _ in lo_rank + 1..hi_rank {
            let a = hi.difference(cur).min_element().expect("gap has elements");
            cur = lat.cover_containing(cur, a).expect("cover exists");
            flats.push(cur);
        }
        if hi_rank < lat.rank() {
            flats.push(hi);
        }
    }
    Chain::from_parts(flats, RankSet::full(lat.top()))
}

/// A chain is essential when none of its flats is the minimal flat of its
/// rank in the interval spanned by its neighbours.
pub fn is_essential(lat: &FlatLattice, c: &Chain) -> bool {
    let mut bounds = Vec::with_capacity(c.len() + 2);
    bounds.push(lat.zero());
    bounds.extend_from_slice(c.flats());
    bounds.push(lat.ground());
    c.iter().enumerate().all(|(i, (k, f))| {
        minimal_flat(lat, bounds[i], bounds[i + 2], k) != f
    })
}

/// Lexicographic chain order: compare the flats at the lowest rank where the
/// chains differ.
pub fn lex_compare(c1: &Chain, c2: &Chain) -> Result<Ordering> {
    if c1.flag() != c2.flag() {
        return Err(Error::FlagMismatch(c1.flag(), c2.flag()));
    }
    Ok(c1
        .flats()
        .iter()
        .zip(c2.flats())
        .map(|(a, b)| a.lex_cmp(*b))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal))
}

/// `h_S` as the number of valid strings with descent set `S`.
pub fn h_by_descents(m: &Matroid) -> FlagVector {
    let top = m.rank().saturating_sub(1);
    let mut counts: HashMap<RankSet, i64> = HashMap::new();
    for s in valid_strings(m) {
        *counts.entry(s.descent_set()).or_default() += 1;
    }
    FlagVector::from_fn(top, |s| counts.get(&s).copied().unwrap_or(0))
}

/// `f_S` as the number of valid strings with descent set contained in `S`.
pub fn f_by_descents(m: &Matroid) -> FlagVector {
    h_by_descents(m).f_from_h()
}

/// `h_S` as the number of essential chains of flag `S`.
pub fn h_by_essential_chains(lat: &FlatLattice) -> FlagVector {
    FlagVector::from_fn(lat.top(), |s| {
        chains_of_flag(lat, s)
            .expect("S within range")
            .iter()
            .filter(|c| is_essential(lat, c))
            .count() as i64
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(e: &[usize]) -> GroundSubset {
        GroundSubset::from_elements(e.iter().copied())
    }

    fn rs(r: &[usize]) -> RankSet {
        RankSet::from_ranks(r.iter().copied())
    }

    fn lat_of(m: &Matroid) -> FlatLattice {
        FlatLattice::of_matroid(m)
    }

    fn u(r: i64, n: usize) -> Matroid {
        Matroid::uniform(r, n).unwrap()
    }

    fn chain(lat: &FlatLattice, flats: &[&[usize]]) -> Chain {
        Chain::new(lat, flats.iter().map(|f| set(f)).collect()).unwrap()
    }

    #[test]
    fn chains_of_small_flags() {
        let lat = lat_of(&u(2, 3));
        let cs = chains_of_flag(&lat, rs(&[1])).unwrap();
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0].flats(), &[set(&[1])]);
        assert_eq!(cs[2].flats(), &[set(&[3])]);
        let empty = chains_of_flag(&lat, RankSet::EMPTY).unwrap();
        assert_eq!(empty, vec![Chain::empty()]);
        assert!(matches!(
            chains_of_flag(&lat, rs(&[2])),
            Err(Error::RankOutOfRange { .. })
        ));
        let lat4 = lat_of(&u(3, 4));
        let cs = chains_of_flag(&lat4, rs(&[1, 2])).unwrap();
        assert_eq!(cs.len(), 12);
        for w in cs.windows(2) {
            assert_eq!(lex_compare(&w[0], &w[1]).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn flag_vectors_of_examples() {
        let f = flag_f_vector(&lat_of(&u(2, 3)));
        assert_eq!((f.get(RankSet::EMPTY), f.get(rs(&[1]))), (1, 3));
        let h = flag_h_vector(&lat_of(&u(2, 3)));
        assert_eq!((h.get(RankSet::EMPTY), h.get(rs(&[1]))), (1, 2));

        let lat = lat_of(&u(3, 4));
        let f = flag_f_vector(&lat);
        assert_eq!(f.get(rs(&[1])), 4);
        assert_eq!(f.get(rs(&[2])), 6);
        assert_eq!(f.get(rs(&[1, 2])), 12);
        let h = flag_h_vector(&lat);
        assert_eq!(h.get(rs(&[1])), 3);
        assert_eq!(h.get(rs(&[2])), 5);
        assert_eq!(h.get(rs(&[1, 2])), 3);
        assert_eq!(h.f_from_h(), f);

        let par = Matroid::from_bases(3, [set(&[1, 2]), set(&[1, 3])]).unwrap();
        let lat = lat_of(&par);
        assert_eq!(flag_f_vector(&lat).get(rs(&[1])), 2);
        assert_eq!(flag_h_vector(&lat).get(rs(&[1])), 1);
    }

    #[test]
    fn coarse_u34() {
        let cv = coarse_vectors(&flag_f_vector(&lat_of(&u(3, 4))));
        assert_eq!(cv.h, vec![1, 8, 3]);
        assert_eq!(cv.f, vec![1, 10, 12]);
        // f_r equals the sum of all flag h-numbers
        let h = flag_h_vector(&lat_of(&u(3, 4)));
        assert_eq!(h.iter().map(|(_, v)| v).sum::<i64>(), 12);
        assert_eq!(coarse_vectors(&flag_f_vector(&lat_of(&u(2, 3)))).h, vec![1, 2]);
    }

    #[test]
    fn independence_vectors_small() {
        assert_eq!(independence_h_vector(&u(2, 2)), vec![1, 0, 0]);
        assert_eq!(independence_h_vector(&u(1, 2)), vec![1, 1]);
        let v = independence_vectors(&u(2, 3));
        assert_eq!(v.f, vec![1, 3, 3]);
        assert_eq!(v.h, vec![1, 1, 1]);
    }

    #[test]
    fn jh_strings_and_descents() {
        let lat = lat_of(&u(3, 4));
        let c = chain(&lat, &[&[3], &[3, 4]]);
        let s = jh_string(&lat, &c).unwrap();
        assert_eq!(s.letters(), &[3, 4, 1]);
        assert_eq!(s.descent_set(), rs(&[2]));
        let lat2 = lat_of(&u(2, 3));
        assert_eq!(jh_string(&lat2, &chain(&lat2, &[&[2]])).unwrap().letters(), &[2, 1]);
        assert_eq!(jh_string(&lat2, &chain(&lat2, &[&[1]])).unwrap().letters(), &[1, 2]);
        assert_eq!(
            jh_string(&lat, &chain(&lat, &[&[3]])).unwrap_err(),
            Error::NotFullChain
        );
        assert_eq!(descent_set(&[1, 2, 3]), RankSet::EMPTY);
        assert_eq!(descent_set(&[3, 2, 1]), rs(&[1, 2]));
        assert_eq!(descent_set(&[3, 4, 1]), rs(&[2]));
    }

    #[test]
    fn string_validity() {
        let m = u(3, 4);
        assert!(!is_valid_string(&m, &JhString(vec![1, 2, 4])));
        assert!(is_valid_string(&m, &JhString(vec![1, 2, 3])));
        assert!(!is_valid_string(&m, &JhString(vec![1, 2])));
        assert!(!is_valid_string(&m, &JhString(vec![1, 1, 2])));
        let lat = lat_of(&m);
        for c in chains_of_flag(&lat, rs(&[1, 2])).unwrap() {
            let s = jh_string(&lat, &c).unwrap();
            assert!(is_valid_string(&m, &s));
            assert_eq!(chain_of_string(&m, &lat, &s).unwrap(), c);
        }
        assert_eq!(valid_strings(&m).len(), 12);
    }

    #[test]
    fn minimal_completions() {
        let lat = lat_of(&u(3, 4));
        let c = chain(&lat, &[&[3, 4]]);
        assert_eq!(minimal_completion(&lat, &c), chain(&lat, &[&[3], &[3, 4]]));
        let full = chain(&lat, &[&[2], &[2, 4]]);
        assert_eq!(minimal_completion(&lat, &full), full);
        let mu = minimal_completion(&lat, &Chain::empty());
        assert_eq!(jh_string(&lat, &mu).unwrap().letters(), &[1, 2, 3]);
    }

    #[test]
    fn essential_chains() {
        let lat = lat_of(&u(3, 4));
        assert!(is_essential(&lat, &chain(&lat, &[&[3, 4]])));
        assert!(!is_essential(&lat, &chain(&lat, &[&[1]])));
        assert!(is_essential(&lat, &Chain::empty()));
    }

    #[test]
    fn lex_comparisons() {
        let lat = lat_of(&u(3, 4));
        let a = chain(&lat, &[&[1]]);
        let b = chain(&lat, &[&[2]]);
        assert_eq!(lex_compare(&a, &b).unwrap(), Ordering::Less);
        assert_eq!(lex_compare(&a, &a).unwrap(), Ordering::Equal);
        let p = chain(&lat, &[&[1, 3]]);
        let q = chain(&lat, &[&[1, 2]]);
        assert_eq!(lex_compare(&q, &p).unwrap(), Ordering::Less);
        assert!(matches!(lex_compare(&a, &p), Err(Error::FlagMismatch(..))));
    }

    #[test]
    fn three_routes_on_u34() {
        let m = u(3, 4);
        let lat = lat_of(&m);
        let h = flag_h_vector(&lat);
        assert_eq!(h_by_descents(&m), h);
        assert_eq!(h_by_essential_chains(&lat), h);
        assert_eq!(f_by_descents(&m), flag_f_vector(&lat));
    }

    #[test]
    fn invalid_chains_rejected() {
        let lat = lat_of(&u(3, 4));
        assert!(Chain::new(&lat, vec![set(&[1, 2])]).is_ok());
        assert!(Chain::new(&lat, vec![GroundSubset::EMPTY]).is_err());
        assert!(Chain::new(&lat, vec![set(&[1, 2, 3, 4])]).is_err());
        assert!(Chain::new(&lat, vec![set(&[1, 2]), set(&[1])]).is_err());
        assert!(Chain::new(&lat, vec![set(&[2]), set(&[1, 3])]).is_err());
    }

    #[test]
    fn flag_vector_serialization() {
        let h = flag_h_vector(&lat_of(&u(3, 4)));
        let json = serde_json::to_string(&h).unwrap();
        assert_eq!(
            json,
            r#"[{"S":[],"value":1},{"S":[1],"value":3},{"S":[2],"value":5},{"S":[1,2],"value":3}]"#
        );
        assert_eq!(h.to_csv(), "S,value\n0,1\n1,3\n2,5\n3,3\n");
    }
}
