//! Fine-graded pieces of Stanley–Reisner rings of order complexes.
//!
//! Only squarefree degrees `S ⊆ [r]` are materialized; the degree-`S` part of
//! `k[Δ]` has one basis monomial `x_C` per chain of flag `S`, and the
//! degree-`S` part of the ideal generated by the rank sums `θ_i` is spanned
//! by the products `θ_i x_C` with `fl(C) = S \ i`. Everything is computed
//! one degree at a time with exact integer matrices.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::linalg::{exact_rank, kernel_basis, mat_t_vec};
use crate::maps::{phi_chain, PseudoMatroidLattice};
use crate::matroid::Matroid;
use crate::order_complex::{chains_of_flag, flag_h_vector, jh_string, lex_compare, Chain, FlagVector};
use crate::subset::{GroundSubset, RankSet};

/// Chains of a fixed flag in lexicographic order, with reverse lookup.
#[derive(Clone, Debug)]
pub struct ChainBasis {
    degree: RankSet,
    chains: Vec<Chain>,
    index: HashMap<Chain, usize>,
}

impl ChainBasis {
    pub fn new(lat: &FlatLattice, s: RankSet) -> Result<ChainBasis> {
        let chains = chains_of_flag(lat, s)?;
        let index = chains
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        Ok(ChainBasis {
            degree: s,
            chains,
            index,
        })
    }

    pub fn degree(&self) -> RankSet {
        self.degree
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn position(&self, c: &Chain) -> Option<usize> {
        self.index.get(c).copied()
    }
}

/// Chain bases for every flag of a lattice, indexed by the flag bitmask.
#[derive(Clone, Debug)]
pub struct ChainTable {
    bases: Vec<Arc<ChainBasis>>,
}

impl ChainTable {
    pub fn new(lat: &FlatLattice) -> ChainTable {
        let bases = RankSet::full(lat.top())
            .subsets()
            .map(|s| Arc::new(ChainBasis::new(lat, s).expect("flag inside [r]")))
            .collect::<Vec<_>>();
        let mut by_bits = vec![None; bases.len()];
        for b in bases {
            let i = b.degree.bits() as usize;
            by_bits[i] = Some(b);
        }
        ChainTable {
            bases: by_bits.into_iter().map(|b| b.expect("every flag")).collect(),
        }
    }

    pub fn get(&self, s: RankSet) -> Result<&Arc<ChainBasis>> {
        self.bases.get(s.bits() as usize).ok_or(Error::RankOutOfRange {
            set: s,
            top: self.bases.len().trailing_zeros() as usize,
        })
    }
}

/// Generators `θ_i x_C` of the degree-`S` part of `Θ`, one row each,
/// against the chains of flag `S` as columns.
#[derive(Clone, Debug)]
pub struct RelationMatrix {
    columns: Arc<ChainBasis>,
    rows: Vec<(usize, Chain)>,
    entries: Vec<Vec<i64>>,
}

impl RelationMatrix {
    pub fn degree(&self) -> RankSet {
        self.columns.degree
    }

    pub fn columns(&self) -> &ChainBasis {
        &self.columns
    }

    /// `(i, C)` for the generator `θ_i x_C`.
    pub fn rows(&self) -> &[(usize, Chain)] {
        &self.rows
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        exact_rank(&self.entries)
    }

    /// Index of the first generator on which `f` is nonzero. `None` means
    /// `f` annihilates the degree-`S` part of `Θ`.
    pub fn first_unannihilated(&self, f: &Functional) -> Option<usize> {
        assert_eq!(f.degree, self.degree(), "functional of the wrong degree");
        self.entries.iter().position(|row| {
            row.iter()
                .zip(&f.coeffs)
                .map(|(a, b)| a * b)
                .sum::<i64>()
                != 0
        })
    }

    pub fn annihilates(&self, f: &Functional) -> bool {
        self.first_unannihilated(f).is_none()
    }
}

pub fn theta_relations(lat: &FlatLattice, s: RankSet) -> Result<RelationMatrix> {
    let columns = Arc::new(ChainBasis::new(lat, s)?);
    let mut lower = HashMap::new();
    for i in s.iter() {
        lower.insert(i, Arc::new(ChainBasis::new(lat, s.without(i))?));
    }
    Ok(relations_from(columns, |i| lower[&i].clone()))
}

/// Relation matrix of degree `S` from cached chain bases.
pub fn theta_relations_cached(table: &ChainTable, s: RankSet) -> Result<RelationMatrix> {
    let columns = table.get(s)?.clone();
    Ok(relations_from(columns, |i| {
        table.get(s.without(i)).expect("subflag in range").clone()
    }))
}

fn relations_from(
    columns: Arc<ChainBasis>,
    lower: impl Fn(usize) -> Arc<ChainBasis>,
) -> RelationMatrix {
    let s = columns.degree;
    let mut rows = Vec::new();
    let mut offsets = HashMap::new();
    let mut blocks = Vec::new();
    for i in s.iter() {
        let basis = lower(i);
        offsets.insert(i, rows.len());
        rows.extend(basis.chains.iter().map(|c| (i, c.clone())));
        blocks.push((i, basis));
    }
    let mut entries = vec![vec![0i64; columns.len()]; rows.len()];
    for (j, d) in columns.chains.iter().enumerate() {
        for (i, basis) in &blocks {
            let pos = basis
                .position(&d.without_rank(*i))
                .expect("removing a flat leaves a chain");
            entries[offsets[i] + pos][j] = 1;
        }
    }
    RelationMatrix {
        columns,
        rows,
        entries,
    }
}

/// Dimension of the degree-`S` part of `k[Δ]/Θ`.
pub fn quotient_dim(lat: &FlatLattice, s: RankSet) -> Result<usize> {
    let rel = theta_relations(lat, s)?;
    Ok(rel.columns.len() - rel.rank())
}

/// A linear functional on the degree-`S` part of `k[Δ]`, with one integer
/// coefficient per chain of the matching [`ChainBasis`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Functional {
    pub degree: RankSet,
    pub coeffs: Vec<i64>,
}

impl Functional {
    pub fn zero(basis: &ChainBasis) -> Functional {
        Functional {
            degree: basis.degree,
            coeffs: vec![0; basis.len()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Nonzero `(chain, coefficient)` terms.
    pub fn terms<'a>(&'a self, basis: &'a ChainBasis) -> impl Iterator<Item = (&'a Chain, i64)> {
        basis
            .chains
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(ch, &c)| (ch, c))
    }
}

/// Basis of the degree-`S` annihilator of `Θ`.
pub fn annihilator_basis(lat: &FlatLattice, s: RankSet) -> Result<Vec<Functional>> {
    let rel = theta_relations(lat, s)?;
    let kernel = kernel_basis(&rel.entries, rel.columns.len())?;
    Ok(kernel
        .into_iter()
        .map(|coeffs| Functional { degree: s, coeffs })
        .collect())
}

/// Matrix of `ψ` in degree `S`: rows are chains of the pseudo-matroid,
/// columns are B-chains, and an entry is 1 when B-closure sends the row
/// chain to the column chain.
#[derive(Clone, Debug)]
pub struct PsiMatrix {
    pub rows: Arc<ChainBasis>,
    pub columns: Arc<ChainBasis>,
    pub entries: Vec<Vec<i64>>,
}

impl PsiMatrix {
    /// B-chains with no preimage.
    pub fn zero_columns(&self) -> Vec<usize> {
        (0..self.columns.len())
            .filter(|&j| self.entries.iter().all(|row| row[j] == 0))
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        self.zero_columns().is_empty()
    }

    /// `π(g) = g ∘ ψ`.
    pub fn pullback(&self, g: &Functional) -> Functional {
        Functional {
            degree: self.columns.degree,
            coeffs: mat_t_vec(&self.entries, self.columns.len(), &g.coeffs),
        }
    }
}

pub fn psi_matrix(
    aprime: &PseudoMatroidLattice,
    b_lattice: &FlatLattice,
    s: RankSet,
) -> Result<PsiMatrix> {
    let rows = Arc::new(ChainBasis::new(aprime.lattice(), s)?);
    let columns = Arc::new(ChainBasis::new(b_lattice, s)?);
    psi_from(aprime.target(), rows, columns)
}

fn psi_from(b: &Matroid, rows: Arc<ChainBasis>, columns: Arc<ChainBasis>) -> Result<PsiMatrix> {
    let mut entries = vec![vec![0i64; columns.len()]; rows.len()];
    for (i, tau) in rows.chains.iter().enumerate() {
        let image = phi_chain(b, tau);
        let j = columns.position(&image).ok_or_else(|| {
            Error::TheoremViolation(format!("B-closure of {tau} changed its flag"))
        })?;
        entries[i][j] = 1;
    }
    Ok(PsiMatrix {
        rows,
        columns,
        entries,
    })
}

/// The subgroup of `S_{r+1}` generated by `(i i+1)` for `i ∈ S`, as
/// 0-based permutations with signs. It is the product of the symmetric
/// groups on the blocks of positions joined by runs of consecutive ranks.
pub fn descent_group(s: RankSet, len: usize) -> Vec<(Vec<usize>, i64)> {
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut pos = 0;
    while pos < len {
        let start = pos;
        while pos + 1 < len && s.contains(pos + 1) {
            pos += 1;
        }
        blocks.push((start, pos + 1));
        pos += 1;
    }
    let mut out = vec![((0..len).collect::<Vec<usize>>(), 1i64)];
    for (lo, hi) in blocks {
        if hi - lo < 2 {
            continue;
        }
        let perms = signed_permutations(hi - lo);
        out = out
            .into_iter()
            .flat_map(|(base, sign)| {
                perms.iter().map(move |(p, ps)| {
                    let mut next = base.clone();
                    for (k, &pk) in p.iter().enumerate() {
                        next[lo + k] = base[lo + pk];
                    }
                    (next, sign * ps)
                })
            })
            .collect();
    }
    out
}

fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i64)>) {
        if cur.len() == k {
            let inversions = (0..k)
                .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                .filter(|&(i, j)| cur[i] > cur[j])
                .count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            out.push((cur.clone(), sign));
            return;
        }
        for v in 0..k {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(k, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(k, &mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Signed chains `(ν(C_σ), sgn σ)` for `σ` in the descent group of `S`,
/// where the rank-`k` flat of `C_σ` is the closure of the first `k`
/// permuted letters. `on_flat` sees every flat of every `C_σ`, including
/// ranks outside `S`.
fn signed_terms(
    closure: impl Fn(GroundSubset) -> GroundSubset,
    letters: &[usize],
    s: RankSet,
    group: &[(Vec<usize>, i64)],
    mut on_flat: impl FnMut(usize, GroundSubset) -> Result<()>,
) -> Result<Vec<(Chain, i64)>> {
    let top = letters.len().saturating_sub(1);
    let mut out = Vec::with_capacity(group.len());
    for (perm, sign) in group {
        let mut prefix = GroundSubset::EMPTY;
        let mut flats = Vec::with_capacity(s.len());
        for (k, &p) in perm.iter().enumerate().take(top) {
            prefix = prefix.with(letters[p]);
            let f = closure(prefix);
            on_flat(k + 1, f)?;
            if s.contains(k + 1) {
                flats.push(f);
            }
        }
        out.push((Chain::from_parts(flats, s), *sign));
    }
    Ok(out)
}

fn accumulate(basis: &ChainBasis, terms: &[(Chain, i64)]) -> Result<Functional> {
    let mut f = Functional::zero(basis);
    for (c, sign) in terms {
        let j = basis
            .position(c)
            .ok_or_else(|| Error::TheoremViolation(format!("{c} is not a chain of flag {}", basis.degree)))?;
        f.coeffs[j] += sign;
    }
    Ok(f)
}

fn descent_letters(b_lattice: &FlatLattice, c: &Chain, s: RankSet) -> Result<Vec<usize>> {
    let word = jh_string(b_lattice, c)?;
    let actual = word.descent_set();
    if actual != s {
        return Err(Error::NotDescentChain {
            expected: s,
            actual,
        });
    }
    Ok(word.0)
}

/// `f_C = Σ_{σ ∈ H} sgn(σ) ε_{ν(C_σ)}` over B-closures.
pub fn dual_functional_fc(
    b: &Matroid,
    b_lattice: &FlatLattice,
    c: &Chain,
    s: RankSet,
) -> Result<Functional> {
    let basis = ChainBasis::new(b_lattice, s)?;
    let letters = descent_letters(b_lattice, c, s)?;
    let group = descent_group(s, letters.len());
    fc_terms(b, &basis, &letters, &group).map(|(f, _)| f)
}

fn fc_terms(
    b: &Matroid,
    basis: &ChainBasis,
    letters: &[usize],
    group: &[(Vec<usize>, i64)],
) -> Result<(Functional, Vec<(Chain, i64)>)> {
    let terms = signed_terms(|g| b.closure(g), letters, basis.degree, group, |_, _| Ok(()))?;
    Ok((accumulate(basis, &terms)?, terms))
}

/// `g_C = Σ_{σ ∈ H} sgn(σ) ε_{ν(D_σ)}` over A-closures; every flat of every
/// `D_σ` must be a flat of the pseudo-matroid.
pub fn dual_functional_gc(
    aprime: &PseudoMatroidLattice,
    b_lattice: &FlatLattice,
    c: &Chain,
    s: RankSet,
) -> Result<Functional> {
    let basis = ChainBasis::new(aprime.lattice(), s)?;
    let letters = descent_letters(b_lattice, c, s)?;
    let group = descent_group(s, letters.len());
    gc_terms(aprime, &basis, &letters, &group)
}

fn gc_terms(
    aprime: &PseudoMatroidLattice,
    basis: &ChainBasis,
    letters: &[usize],
    group: &[(Vec<usize>, i64)],
) -> Result<Functional> {
    let a = aprime.source();
    let lat = aprime.lattice();
    let terms = signed_terms(|g| a.closure(g), letters, basis.degree, group, |k, f| {
        if lat.rank_of(f) == Some(k) {
            Ok(())
        } else {
            Err(Error::TheoremViolation(format!(
                "A-closure {f} is not a rank-{k} flat of the pseudo-matroid"
            )))
        }
    })?;
    accumulate(basis, &terms)
}

/// A rank-preserving weak map with its lattices, pseudo-matroid and the
/// per-flag chain bases shared by every degree.
#[derive(Clone, Debug)]
pub struct PairContext {
    pub a: Matroid,
    pub b: Matroid,
    pub a_lattice: FlatLattice,
    pub b_lattice: FlatLattice,
    pub aprime: PseudoMatroidLattice,
    b_chains: ChainTable,
    aprime_chains: ChainTable,
    h_a: FlagVector,
    h_b: FlagVector,
    /// Full B-chains with their strings and descent sets.
    full_b: Vec<(Chain, Vec<usize>, RankSet)>,
}

impl PairContext {
    pub fn new(a: &Matroid, b: &Matroid) -> Result<PairContext> {
        let a_lattice = FlatLattice::of_matroid(a);
        let b_lattice = FlatLattice::of_matroid(b);
        Self::with_lattices(a, a_lattice, b, b_lattice)
    }

    pub fn with_lattices(
        a: &Matroid,
        a_lattice: FlatLattice,
        b: &Matroid,
        b_lattice: FlatLattice,
    ) -> Result<PairContext> {
        let aprime = PseudoMatroidLattice::from_lattice(a, &a_lattice, b)?;
        let b_chains = ChainTable::new(&b_lattice);
        let full_b = b_chains
            .get(RankSet::full(b_lattice.top()))?
            .chains
            .iter()
            .map(|c| {
                let word = jh_string(&b_lattice, c)?;
                let d = word.descent_set();
                Ok((c.clone(), word.0, d))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PairContext {
            a: a.clone(),
            b: b.clone(),
            aprime_chains: ChainTable::new(aprime.lattice()),
            h_a: flag_h_vector(&a_lattice),
            h_b: flag_h_vector(&b_lattice),
            a_lattice,
            b_lattice,
            aprime,
            b_chains,
            full_b,
        })
    }

    pub fn top(&self) -> usize {
        self.b_lattice.top()
    }
}

/// Evidence that `π` maps the degree-`S` annihilator of the pseudo-matroid
/// onto that of B.
#[derive(Clone, Debug, Serialize)]
pub struct SurjectivityReport {
    pub degree: Vec<usize>,
    /// Full B-chains with descent set `S`.
    pub descent_chains: usize,
    pub h_b: i64,
    /// `dim (Φ_B)_S`, from the relation matrix.
    pub dim_phi_b: usize,
    /// `dim (R_{A'})_S`, from the relation matrix.
    pub quotient_dim_aprime: usize,
    /// Size of the computed basis of `(Φ_{A'})_S`.
    pub dim_phi_aprime: usize,
    /// Rank of the `f_C` as vectors.
    pub fc_rank: usize,
    /// Rank of `π` applied to a basis of `(Φ_{A'})_S`.
    pub image_rank: usize,
    pub fc_annihilate: bool,
    pub gc_annihilate: bool,
    pub pullback_matches: bool,
    pub triangular: bool,
    pub psi_injective: bool,
}

impl SurjectivityReport {
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.descent_chains as i64 != self.h_b {
            out.push("descent-chain count differs from h_S(B)");
        }
        if self.dim_phi_b as i64 != self.h_b {
            out.push("annihilator dimension differs from h_S(B)");
        }
        if self.dim_phi_aprime != self.quotient_dim_aprime {
            out.push("annihilator basis size differs from the quotient dimension");
        }
        if !self.fc_annihilate {
            out.push("some f_C fails the annihilator test");
        }
        if !self.gc_annihilate {
            out.push("some g_C fails the annihilator test");
        }
        if !self.pullback_matches {
            out.push("pi(g_C) differs from f_C");
        }
        if !self.triangular {
            out.push("f_C not lower triangular with unit diagonal");
        }
        if self.fc_rank != self.descent_chains {
            out.push("f_C are linearly dependent");
        }
        if self.image_rank < self.dim_phi_b {
            out.push("pi is not onto the B annihilator");
        }
        if !self.psi_injective {
            out.push("psi has a zero column");
        }
        out
    }

    pub fn passes(&self) -> bool {
        self.failures().is_empty()
    }
}

pub fn verify_surjectivity(ctx: &PairContext, s: RankSet) -> Result<SurjectivityReport> {
    let rel_b = theta_relations_cached(&ctx.b_chains, s)?;
    let rel_ap = theta_relations_cached(&ctx.aprime_chains, s)?;
    let psi = psi_from(&ctx.b, rel_ap.columns.clone(), rel_b.columns.clone())?;
    let group = descent_group(s, ctx.b.rank());

    let mut descent_chains = 0;
    let mut fc_rows = Vec::new();
    let mut fc_annihilate = true;
    let mut gc_annihilate = true;
    let mut pullback_matches = true;
    let mut triangular = true;
    for (c, letters, _) in ctx.full_b.iter().filter(|(_, _, d)| *d == s) {
        descent_chains += 1;
        let (f, terms) = fc_terms(&ctx.b, &rel_b.columns, letters, &group)?;
        let lead = c.restrict(s);
        for (t, _) in &terms {
            if lex_compare(t, &lead)?.is_gt() {
                triangular = false;
            }
        }
        let lead_pos = rel_b.columns.position(&lead).expect("restriction has flag S");
        if f.coeffs[lead_pos] != 1 {
            triangular = false;
        }
        fc_annihilate &= rel_b.annihilates(&f);
        let g = gc_terms(&ctx.aprime, &rel_ap.columns, letters, &group)?;
        gc_annihilate &= rel_ap.annihilates(&g);
        pullback_matches &= psi.pullback(&g) == f;
        fc_rows.push(f.coeffs);
    }

    let dim_phi_b = rel_b.columns.len() - rel_b.rank();
    let phi_aprime = kernel_basis(&rel_ap.entries, rel_ap.columns.len())?;
    let images: Vec<Vec<i64>> = phi_aprime
        .iter()
        .map(|g| mat_t_vec(&psi.entries, psi.columns.len(), g))
        .collect();

    Ok(SurjectivityReport {
        degree: s.to_vec(),
        descent_chains,
        h_b: ctx.h_b.get(s),
        dim_phi_b,
        quotient_dim_aprime: rel_ap.columns.len() - rel_ap.rank(),
        dim_phi_aprime: phi_aprime.len(),
        fc_rank: exact_rank(&fc_rows),
        image_rank: exact_rank(&images),
        fc_annihilate,
        gc_annihilate,
        pullback_matches,
        triangular,
        psi_injective: psi.is_injective(),
    })
}

/// `h_S(A) ≥ dim (R_{A'})_S ≥ h_S(B)` in one degree, with the surjectivity
/// evidence behind the lower inequality.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionRow {
    pub degree: Vec<usize>,
    pub h_a: i64,
    pub dim_aprime: usize,
    pub h_b: i64,
    pub surjectivity: SurjectivityReport,
}

impl DimensionRow {
    pub fn inequalities_hold(&self) -> bool {
        self.h_a >= self.dim_aprime as i64 && self.dim_aprime as i64 >= self.h_b
    }

    pub fn holds(&self) -> bool {
        self.inequalities_hold() && self.surjectivity.passes()
    }
}

pub fn verify_injectivity_chain(ctx: &PairContext) -> Result<Vec<DimensionRow>> {
    RankSet::full(ctx.top())
        .subsets()
        .map(|s| {
            let rep = verify_surjectivity(ctx, s)?;
            Ok(DimensionRow {
                degree: s.to_vec(),
                h_a: ctx.h_a.get(s),
                dim_aprime: rep.quotient_dim_aprime,
                h_b: ctx.h_b.get(s),
                surjectivity: rep,
            })
        })
        .collect()
}

/// One row of the per-degree Stanley–Reisner table of a lattice.
#[derive(Clone, Debug, Serialize)]
pub struct SrRow {
    #[serde(rename = "S")]
    pub degree: Vec<usize>,
    pub chains: usize,
    pub relation_rank: usize,
    pub quotient_dim: usize,
    pub h: i64,
    pub agrees: bool,
}

pub fn sr_table(lat: &FlatLattice) -> Result<Vec<SrRow>> {
    let h = flag_h_vector(lat);
    RankSet::all_ordered(lat.top())
        .into_iter()
        .map(|s| {
            let rel = theta_relations(lat, s)?;
            let rank = rel.rank();
            let dim = rel.columns.len() - rank;
            Ok(SrRow {
                degree: s.to_vec(),
                chains: rel.columns.len(),
                relation_rank: rank,
                quotient_dim: dim,
                h: h.get(s),
                agrees: dim as i64 == h.get(s),
            })
        })
        .collect()
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

    fn u(r: i64, n: usize) -> Matroid {
        Matroid::uniform(r, n).unwrap()
    }

    fn par34() -> Matroid {
        Matroid::from_bases(4, [set(&[1, 2, 3]), set(&[1, 2, 4])]).unwrap()
    }

    #[test]
    fn relation_matrix_shapes() {
        let lat = FlatLattice::of_matroid(&u(2, 3));
        let rel = theta_relations(&lat, rs(&[1])).unwrap();
        assert_eq!(rel.entries(), &[vec![1, 1, 1]]);

        let lat = FlatLattice::of_matroid(&u(3, 4));
        let rel = theta_relations(&lat, rs(&[1, 2])).unwrap();
        assert_eq!(rel.entries().len(), 10);
        assert_eq!(rel.columns().len(), 12);
        for ((i, _), row) in rel.rows().iter().zip(rel.entries()) {
            let ones = row.iter().filter(|&&v| v == 1).count();
            match i {
                2 => assert_eq!(ones, 3),
                1 => assert_eq!(ones, 2),
                _ => unreachable!(),
            }
        }
        assert_eq!(rel.rows().iter().filter(|(i, _)| *i == 2).count(), 4);
        assert_eq!(rel.rank(), 9);

        let rel = theta_relations(&lat, RankSet::EMPTY).unwrap();
        assert!(rel.entries().is_empty());
        assert_eq!(rel.columns().len(), 1);
        assert!(theta_relations(&lat, rs(&[3])).is_err());
    }

    #[test]
    fn quotient_dimensions() {
        let lat = FlatLattice::of_matroid(&u(2, 3));
        assert_eq!(quotient_dim(&lat, rs(&[1])).unwrap(), 2);
        assert_eq!(quotient_dim(&lat, RankSet::EMPTY).unwrap(), 1);
        let lat = FlatLattice::of_matroid(&u(3, 4));
        assert_eq!(quotient_dim(&lat, rs(&[1, 2])).unwrap(), 3);
    }

    #[test]
    fn annihilators() {
        let lat = FlatLattice::of_matroid(&u(2, 3));
        let basis = annihilator_basis(&lat, rs(&[1])).unwrap();
        assert_eq!(basis.len(), 2);
        let rel = theta_relations(&lat, rs(&[1])).unwrap();
        assert!(basis.iter().all(|f| rel.annihilates(f)));
        assert_eq!(annihilator_basis(&lat, RankSet::EMPTY).unwrap().len(), 1);
    }

    #[test]
    fn descent_groups() {
        assert_eq!(descent_group(RankSet::EMPTY, 3).len(), 1);
        assert_eq!(descent_group(rs(&[1, 2]), 3).len(), 6);
        assert_eq!(descent_group(rs(&[1, 3]), 4).len(), 4);
        assert_eq!(descent_group(rs(&[1, 2, 4]), 5).len(), 12);
        let g = descent_group(rs(&[1]), 3);
        assert!(g.contains(&(vec![1, 0, 2], -1)));
        let total: i64 = descent_group(rs(&[1, 2, 3]), 4).iter().map(|(_, s)| s).sum();
        assert_eq!(total, 0);
    }

    #[test]
    fn fc_on_u23() {
        let m = u(2, 3);
        let lat = FlatLattice::of_matroid(&m);
        let c = Chain::new(&lat, vec![set(&[2])]).unwrap();
        let f = dual_functional_fc(&m, &lat, &c, rs(&[1])).unwrap();
        // columns are [{1}], [{2}], [{3}]
        assert_eq!(f.coeffs, vec![-1, 1, 0]);
        let err = dual_functional_fc(&m, &lat, &c, RankSet::EMPTY).unwrap_err();
        assert!(matches!(err, Error::NotDescentChain { .. }));
        let up = Chain::new(&lat, vec![set(&[1])]).unwrap();
        let f = dual_functional_fc(&m, &lat, &up, RankSet::EMPTY).unwrap();
        assert_eq!(f.coeffs, vec![1]);
    }

    #[test]
    fn psi_for_parallel_collapse() {
        let a = u(3, 4);
        let ctx = PairContext::new(&a, &par34()).unwrap();
        let psi = psi_matrix(&ctx.aprime, &ctx.b_lattice, rs(&[1])).unwrap();
        let col = psi
            .columns
            .position(&Chain::new(&ctx.b_lattice, vec![set(&[3, 4])]).unwrap())
            .unwrap();
        let ones: Vec<&Chain> = psi
            .rows
            .chains()
            .iter()
            .zip(&psi.entries)
            .filter(|(_, row)| row[col] == 1)
            .map(|(c, _)| c)
            .collect();
        assert_eq!(ones.len(), 2);
        assert!(psi.is_injective());

        let id = PairContext::new(&a, &a).unwrap();
        let psi = psi_matrix(&id.aprime, &id.b_lattice, rs(&[1, 2])).unwrap();
        for (i, row) in psi.entries.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(v, (i == j) as i64);
            }
        }
    }

    #[test]
    fn surjectivity_reports() {
        let a = u(2, 3);
        let ctx = PairContext::new(&a, &a).unwrap();
        let rep = verify_surjectivity(&ctx, rs(&[1])).unwrap();
        assert_eq!(rep.descent_chains, 2);
        assert!(rep.passes(), "{:?}", rep.failures());

        let ctx = PairContext::new(&u(3, 4), &par34()).unwrap();
        for s in RankSet::full(2).subsets() {
            let rep = verify_surjectivity(&ctx, s).unwrap();
            assert!(rep.passes(), "{s}: {:?}", rep.failures());
        }
        let rep = verify_surjectivity(&ctx, rs(&[1, 2])).unwrap();
        assert_eq!(rep.descent_chains, 1);
    }

    #[test]
    fn dimension_chain_for_parallel_collapse() {
        let ctx = PairContext::new(&u(3, 4), &par34()).unwrap();
        let rows = verify_injectivity_chain(&ctx).unwrap();
        let pick = |s: &[usize]| rows.iter().find(|r| r.degree == s).unwrap();
        assert_eq!((pick(&[1]).h_a, pick(&[1]).h_b), (3, 2));
        assert_eq!((pick(&[2]).h_a, pick(&[2]).h_b), (5, 2));
        assert_eq!((pick(&[1, 2]).h_a, pick(&[1, 2]).h_b), (3, 1));
        assert!(rows.iter().all(DimensionRow::holds));
    }

    #[test]
    fn sr_table_agrees_on_u34() {
        let rows = sr_table(&FlatLattice::of_matroid(&u(3, 4))).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.agrees));
        assert_eq!(rows[3].relation_rank, 9);
    }

    #[test]
    fn fc_on_u34_descending_string() {
        let m = u(3, 4);
        let lat = FlatLattice::of_matroid(&m);
        let s = rs(&[1, 2]);
        let c = Chain::new(&lat, vec![set(&[3]), set(&[2, 3])]).unwrap();
        let basis = ChainBasis::new(&lat, s).unwrap();
        let f = dual_functional_fc(&m, &lat, &c, s).unwrap();
        let terms: Vec<(&Chain, i64)> = f.terms(&basis).collect();
        assert_eq!(terms.len(), 6);
        assert_eq!(f.coeffs.iter().sum::<i64>(), 0);
        assert_eq!(f.coeffs[basis.position(&c).unwrap()], 1);
        let swapped = Chain::new(&lat, vec![set(&[2]), set(&[2, 3])]).unwrap();
        assert_eq!(f.coeffs[basis.position(&swapped).unwrap()], -1);
        assert!(theta_relations(&lat, s).unwrap().annihilates(&f));
    }

    #[test]
    fn gc_pulls_back_to_fc() {
        let ctx = PairContext::new(&u(3, 4), &par34()).unwrap();
        let s = rs(&[1, 2]);
        let c = Chain::new(&ctx.b_lattice, vec![set(&[3, 4]), set(&[2, 3, 4])]).unwrap();
        assert_eq!(jh_string(&ctx.b_lattice, &c).unwrap().0, vec![3, 2, 1]);
        let f = dual_functional_fc(&ctx.b, &ctx.b_lattice, &c, s).unwrap();
        let g = dual_functional_gc(&ctx.aprime, &ctx.b_lattice, &c, s).unwrap();
        let psi = psi_matrix(&ctx.aprime, &ctx.b_lattice, s).unwrap();
        assert_eq!(psi.pullback(&g), f);
        assert!(theta_relations(ctx.aprime.lattice(), s).unwrap().annihilates(&g));

        let id = PairContext::new(&u(3, 4), &u(3, 4)).unwrap();
        let c = Chain::new(&id.b_lattice, vec![set(&[3]), set(&[2, 3])]).unwrap();
        assert_eq!(
            dual_functional_gc(&id.aprime, &id.b_lattice, &c, s).unwrap(),
            dual_functional_fc(&id.b, &id.b_lattice, &c, s).unwrap()
        );
    }
}
