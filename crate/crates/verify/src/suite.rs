//! Theorem checks over a catalog, with machine-readable witnesses.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::time::Instant;

use flagmono_core::maps::{
    check_flag_surjectivity, flat_surjectivity_violation, is_strong_map, is_weak_map,
    rank_dominance_violation,
};
use flagmono_core::order_complex::{
    chain_of_string, chains_of_flag, flag_f_vector, flag_h_vector, h_by_descents,
    h_by_essential_chains, independence_h_vector, jh_string, minimal_completion, valid_strings,
};
use flagmono_core::sr::{quotient_dim, verify_injectivity_chain, PairContext};
use flagmono_core::{FlagVector, Matroid, RankSet};
use flagmono_core::lattice::FlatLattice;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::Catalog;
use crate::pairs::{strong_pairs, weak_pairs, Pair};
use crate::profile::{profiles, Profile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Four routes to the flag h-vector agree.
    HRoutes,
    /// Independence h-vectors of U(2,2) and U(1,2) under the strong map between them.
    IndependenceExample,
    /// Flag h-vector monotonicity on rank-preserving weak pairs.
    FlagMono,
    /// Coarse f/h monotonicity on all weak pairs, through the truncation.
    CoarseMono,
    /// Coarse h monotonicity on strong pairs.
    StrongMono,
    /// Independence h-vector monotonicity on rank-preserving weak pairs.
    IndepMono,
    /// Dual functionals and the dimension chain through the pseudo-matroid.
    Duality,
    /// Completion, restriction and string bijections.
    Bijections,
    /// Flag vectors are invariant under relabeling.
    Relabel,
    /// Flag h-vectors are bounded by the uniform matroid of the same rank.
    UniformMax,
    /// Strong implies weak, rank dominance, flat and flag surjectivity.
    Maps,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::HRoutes,
        Check::IndependenceExample,
        Check::FlagMono,
        Check::CoarseMono,
        Check::StrongMono,
        Check::IndepMono,
        Check::Duality,
        Check::Bijections,
        Check::Relabel,
        Check::UniformMax,
        Check::Maps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::HRoutes => "h-routes",
            Check::IndependenceExample => "independence-example",
            Check::FlagMono => "flag-mono",
            Check::CoarseMono => "coarse-mono",
            Check::StrongMono => "strong-mono",
            Check::IndepMono => "indep-mono",
            Check::Duality => "duality",
            Check::Bijections => "bijections",
            Check::Relabel => "relabel",
            Check::UniformMax => "uniform-max",
            Check::Maps => "maps",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    /// `h_S(A) < h_S(B)` or the analogous flag inequality.
    Flag { s: Vec<usize>, a: i64, b: i64 },
    /// A coarse entry out of order; `vector` names which.
    Coarse {
        vector: String,
        index: usize,
        a: i64,
        b: i64,
    },
    Routes {
        s: Vec<usize>,
        inclusion_exclusion: i64,
        descents: i64,
        essential: i64,
        sr: i64,
    },
    Duality { s: Vec<usize>, failures: Vec<String> },
    Dimension {
        s: Vec<usize>,
        h_a: i64,
        dim_aprime: usize,
        h_b: i64,
    },
    Relabel { perm: Vec<usize>, s: Vec<usize>, before: i64, after: i64 },
    Chain { chain: String, issue: String },
    Subset { subset: Vec<usize>, issue: String },
    Message { message: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub subject: String,
    pub witness: Witness,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: Check,
    pub scheduled: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.passed == self.scheduled
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub catalog_size: usize,
    pub weak_pairs: usize,
    pub rank_preserving_pairs: usize,
    pub strong_pairs: usize,
    pub checks: Vec<CheckReport>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn violations(&self) -> usize {
        self.checks.iter().map(|c| c.failed).sum()
    }

    pub fn check(&self, check: Check) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.check == check)
    }

    /// One summary row per check; the first witness is embedded as JSON.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,scheduled,passed,failed,first_failure\n");
        for c in &self.checks {
            let first = c
                .failures
                .first()
                .map(|f| serde_json::to_string(f).expect("witness serializes"))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},\"{}\"",
                c.check.name(),
                c.scheduled,
                c.passed,
                c.failed,
                first.replace('"', "\"\"")
            );
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub checks: Vec<Check>,
    pub seed: u64,
    pub relabelings: usize,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            checks: Check::ALL.to_vec(),
            seed: 0,
            relabelings: 50,
            jobs: 0,
        }
    }
}

/// Shared state for one suite run.
pub struct Context<'a> {
    pub catalog: &'a Catalog,
    pub profiles: Vec<Profile>,
    pub weak: Vec<Pair>,
    pub rank_preserving: Vec<Pair>,
    pub strong: Vec<Pair>,
    index: HashMap<&'a Matroid, usize>,
}

impl<'a> Context<'a> {
    pub fn new(catalog: &'a Catalog) -> Context<'a> {
        let profiles = profiles(catalog);
        let weak = weak_pairs(catalog, &profiles, false);
        let rank_preserving = weak
            .iter()
            .copied()
            .filter(|&(a, b)| catalog.get(a).matroid.rank() == catalog.get(b).matroid.rank())
            .collect();
        let strong = strong_pairs(catalog, &profiles);
        Context {
            catalog,
            profiles,
            weak,
            rank_preserving,
            strong,
            index: catalog.lookup(),
        }
    }

    fn matroid(&self, i: usize) -> &Matroid {
        &self.catalog.get(i).matroid
    }

    fn name(&self, i: usize) -> &str {
        &self.catalog.get(i).name
    }

    fn pair_name(&self, (a, b): Pair) -> String {
        format!("{} -> {}", self.name(a), self.name(b))
    }

    pub fn run(&self, check: Check, opts: &SuiteOptions) -> CheckReport {
        let (scheduled, failures) = match check {
            Check::HRoutes => self.singletons(|i| h_routes(self.matroid(i), &self.profiles[i])),
            Check::IndependenceExample => (1, independence_example().err().into_iter().collect()),
            Check::FlagMono => self.over_pairs(&self.rank_preserving, |p| self.flag_mono(p)),
            Check::CoarseMono => self.over_pairs(&self.weak, |p| self.coarse_mono(p)),
            Check::StrongMono => self.over_pairs(&self.strong, |p| self.strong_mono(p)),
            Check::IndepMono => self.over_pairs(&self.rank_preserving, |p| self.indep_mono(p)),
            Check::Duality => self.over_pairs(&self.rank_preserving, |p| self.duality(p)),
            Check::Bijections => {
                self.singletons(|i| bijections(self.matroid(i), &self.profiles[i].lattice))
            }
            Check::Relabel => self.singletons(|i| {
                relabel(self.matroid(i), &self.profiles[i], opts.seed, i, opts.relabelings)
            }),
            Check::UniformMax => self.uniform_max(),
            Check::Maps => self.maps(),
        };
        let failed = failures.len();
        CheckReport {
            check,
            scheduled,
            passed: scheduled - failed,
            failed,
            failures,
        }
    }

    fn singletons(
        &self,
        f: impl Fn(usize) -> Result<(), Witness> + Sync,
    ) -> (usize, Vec<Failure>) {
        let failures = (0..self.catalog.len())
            .into_par_iter()
            .filter_map(|i| {
                f(i).err().map(|witness| Failure {
                    subject: self.name(i).to_string(),
                    witness,
                })
            })
            .collect();
        (self.catalog.len(), failures)
    }

    fn over_pairs(
        &self,
        pairs: &[Pair],
        f: impl Fn(Pair) -> Result<(), Witness> + Sync,
    ) -> (usize, Vec<Failure>) {
        let failures = pairs
            .par_iter()
            .filter_map(|&p| {
                f(p).err().map(|witness| Failure {
                    subject: self.pair_name(p),
                    witness,
                })
            })
            .collect();
        (pairs.len(), failures)
    }

    fn flag_mono(&self, (a, b): Pair) -> Result<(), Witness> {
        flag_dominates(&self.profiles[a].flag_h, &self.profiles[b].flag_h)
    }

    fn indep_mono(&self, (a, b): Pair) -> Result<(), Witness> {
        coarse_dominates(
            "independence-h",
            &self.profiles[a].independence.h,
            &self.profiles[b].independence.h,
            self.profiles[b].independence.h.len(),
        )
    }

    fn strong_mono(&self, (a, b): Pair) -> Result<(), Witness> {
        let hb = &self.profiles[b].coarse.h;
        coarse_dominates("h", &self.profiles[a].coarse.h, hb, hb.len())
    }

    /// `A -> T -> B` with `T` the truncation: strong then rank-preserving,
    /// and the coarse inequalities along both legs and directly.
    fn coarse_mono(&self, (a, b): Pair) -> Result<(), Witness> {
        let (ma, mb) = (self.matroid(a), self.matroid(b));
        let rb = mb.rank();
        let t = ma.truncation(rb).map_err(message)?;
        let owned;
        let pt = match self.index.get(&t) {
            Some(&ti) => &self.profiles[ti],
            None => {
                owned = Profile::new(&t);
                &owned
            }
        };
        let (pa, pb) = (&self.profiles[a], &self.profiles[b]);
        if !pt.flats.is_subset(&pa.flats) {
            return Err(Witness::Message {
                message: format!("rank-{rb} truncation is not a strong image"),
            });
        }
        if !pb.independent.is_subset(&pt.independent) {
            return Err(Witness::Message {
                message: format!("rank-{rb} truncation does not map weakly onto B"),
            });
        }
        for (x, y, leg) in [(pa, pt, "A-T"), (pt, pb, "T-B"), (pa, pb, "A-B")] {
            coarse_dominates(&format!("h {leg}"), &x.coarse.h, &y.coarse.h, rb)?;
            coarse_dominates(&format!("f {leg}"), &x.coarse.f, &y.coarse.f, rb + 1)?;
        }
        Ok(())
    }

    fn duality(&self, (a, b): Pair) -> Result<(), Witness> {
        let ctx = PairContext::with_lattices(
            self.matroid(a),
            self.profiles[a].lattice.clone(),
            self.matroid(b),
            self.profiles[b].lattice.clone(),
        )
        .map_err(message)?;
        for row in verify_injectivity_chain(&ctx).map_err(message)? {
            if !row.surjectivity.passes() {
                return Err(Witness::Duality {
                    s: row.degree,
                    failures: row
                        .surjectivity
                        .failures()
                        .into_iter()
                        .map(String::from)
                        .collect(),
                });
            }
            if !row.inequalities_hold() {
                return Err(Witness::Dimension {
                    s: row.degree,
                    h_a: row.h_a,
                    dim_aprime: row.dim_aprime,
                    h_b: row.h_b,
                });
            }
        }
        Ok(())
    }

    fn uniform_max(&self) -> (usize, Vec<Failure>) {
        let keys: HashSet<(usize, usize)> = self
            .catalog
            .entries()
            .iter()
            .map(|e| (e.matroid.rank(), e.matroid.n()))
            .collect();
        let uniform: HashMap<(usize, usize), FlagVector> = keys
            .into_par_iter()
            .map(|(r, n)| {
                let u = Matroid::uniform(r as i64, n).expect("valid uniform parameters");
                ((r, n), flag_h_vector(&FlatLattice::of_matroid(&u)))
            })
            .collect();
        self.singletons(|i| {
            let m = self.matroid(i);
            flag_dominates(&uniform[&(m.rank(), m.n())], &self.profiles[i].flag_h)
        })
    }

    /// Per strong pair: the weak test agrees. Per weak pair: rank
    /// dominance. Per rank-preserving pair: flat and flag surjectivity.
    fn maps(&self) -> (usize, Vec<Failure>) {
        let (n1, mut f1) = self.over_pairs(&self.strong, |(a, b)| {
            let weak = is_weak_map(self.matroid(a), self.matroid(b)).map_err(message)?;
            let strong = is_strong_map(self.matroid(a), self.matroid(b)).map_err(message)?;
            if weak.holds() && strong.holds() {
                Ok(())
            } else {
                Err(Witness::Subset {
                    subset: weak.violation.or(strong.violation).unwrap_or_default().to_vec(),
                    issue: "strong map that is not weak".into(),
                })
            }
        });
        let (n2, f2) = self.over_pairs(&self.weak, |(a, b)| {
            match rank_dominance_violation(self.matroid(a), self.matroid(b)).map_err(message)? {
                None => Ok(()),
                Some(g) => Err(Witness::Subset {
                    subset: g.to_vec(),
                    issue: "rank in B exceeds rank in A".into(),
                }),
            }
        });
        let (n3, f3) = self.over_pairs(&self.rank_preserving, |(a, b)| {
            let (pa, pb) = (&self.profiles[a], &self.profiles[b]);
            if let Some(f) = flat_surjectivity_violation(&pa.lattice, self.matroid(b), &pb.lattice) {
                return Err(Witness::Subset {
                    subset: f.to_vec(),
                    issue: "B-flat with no preimage of equal rank".into(),
                });
            }
            let rep = check_flag_surjectivity(self.matroid(a), &pa.lattice, self.matroid(b), &pb.lattice)
                .map_err(message)?;
            match rep.failures.first() {
                None => Ok(()),
                Some(c) => Err(Witness::Chain {
                    chain: c.to_string(),
                    issue: "B-chain with no preimage of equal flag".into(),
                }),
            }
        });
        f1.extend(f2);
        f1.extend(f3);
        (n1 + n2 + n3, f1)
    }
}

fn message(e: impl std::fmt::Display) -> Witness {
    Witness::Message {
        message: e.to_string(),
    }
}

fn flag_dominates(a: &FlagVector, b: &FlagVector) -> Result<(), Witness> {
    a.dominates(b).map_err(|s| Witness::Flag {
        s: s.to_vec(),
        a: a.get(s),
        b: b.get(s),
    })
}

/// `a_i ≥ b_i` for `i < len`, reading missing entries as 0.
fn coarse_dominates(vector: &str, a: &[i64], b: &[i64], len: usize) -> Result<(), Witness> {
    let at = |v: &[i64], i: usize| v.get(i).copied().unwrap_or(0);
    match (0..len).find(|&i| at(a, i) < at(b, i)) {
        None => Ok(()),
        Some(i) => Err(Witness::Coarse {
            vector: vector.to_string(),
            index: i,
            a: at(a, i),
            b: at(b, i),
        }),
    }
}

pub fn h_routes(m: &Matroid, p: &Profile) -> Result<(), Witness> {
    let descents = h_by_descents(m);
    let essential = h_by_essential_chains(&p.lattice);
    for (s, v) in p.flag_h.iter() {
        let sr = quotient_dim(&p.lattice, s).map_err(message)? as i64;
        let (d, e) = (descents.get(s), essential.get(s));
        if d != v || e != v || sr != v {
            return Err(Witness::Routes {
                s: s.to_vec(),
                inclusion_exclusion: v,
                descents: d,
                essential: e,
                sr,
            });
        }
    }
    Ok(())
}

/// U(2,2) has `h^I = (1,0,0)`, U(1,2) has `h^I = (1,1)`, the second is a
/// strong image of the first, and `h_1^I` increases along that map.
pub fn independence_example() -> Result<(), Failure> {
    let fail = |msg: String| Failure {
        subject: "U(2,2) -> U(1,2)".into(),
        witness: Witness::Message { message: msg },
    };
    let a = Matroid::uniform(2, 2).map_err(|e| fail(e.to_string()))?;
    let b = Matroid::uniform(1, 2).map_err(|e| fail(e.to_string()))?;
    let (ha, hb) = (independence_h_vector(&a), independence_h_vector(&b));
    if ha != [1, 0, 0] || hb != [1, 1] {
        return Err(fail(format!("h^I vectors {ha:?} and {hb:?}")));
    }
    if !is_strong_map(&a, &b).map_err(|e| fail(e.to_string()))?.holds() {
        return Err(fail("U(1,2) is not a strong image of U(2,2)".into()));
    }
    if ha[1] >= hb[1] {
        return Err(fail(format!("h_1^I(A) = {} is not below h_1^I(B) = {}", ha[1], hb[1])));
    }
    Ok(())
}

/// `ν∘μ = id` on all chains, `μ∘ν_S = id` on full chains whose descent set
/// lies in `S`, and full chains biject with valid strings.
pub fn bijections(m: &Matroid, lat: &FlatLattice) -> Result<(), Witness> {
    let chain_issue = |c: &flagmono_core::Chain, issue: &str| Witness::Chain {
        chain: c.to_string(),
        issue: issue.into(),
    };
    let top = RankSet::full(lat.top());
    for s in top.subsets() {
        for c in chains_of_flag(lat, s).map_err(message)? {
            if minimal_completion(lat, &c).restrict(s) != c {
                return Err(chain_issue(&c, "restricted completion differs"));
            }
        }
    }
    let full = chains_of_flag(lat, top).map_err(message)?;
    let mut strings = HashSet::new();
    for c in &full {
        let word = jh_string(lat, c).map_err(message)?;
        let descents = word.descent_set();
        for s in top.subsets().filter(|s| descents.is_subset(*s)) {
            if &minimal_completion(lat, &c.restrict(s)) != c {
                return Err(chain_issue(c, "completion of restriction differs"));
            }
        }
        if &chain_of_string(m, lat, &word).map_err(message)? != c {
            return Err(chain_issue(c, "string does not rebuild the chain"));
        }
        if !strings.insert(word) {
            return Err(chain_issue(c, "string shared by two chains"));
        }
    }
    let valid: HashSet<_> = valid_strings(m).into_iter().collect();
    if valid != strings {
        return Err(Witness::Message {
            message: format!(
                "{} valid strings but {} chain strings",
                valid.len(),
                strings.len()
            ),
        });
    }
    Ok(())
}

/// Random relabelings, reproducible from `(seed, index)`.
pub fn relabel(m: &Matroid, p: &Profile, seed: u64, index: usize, count: usize) -> Result<(), Witness> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut perm: Vec<usize> = (1..=m.n()).collect();
    for _ in 0..count {
        perm.shuffle(&mut rng);
        let lat = FlatLattice::of_matroid(&m.relabel(&perm).map_err(message)?);
        for (mine, theirs) in [(&p.flag_f, flag_f_vector(&lat)), (&p.flag_h, flag_h_vector(&lat))] {
            if let Some((s, v)) = mine.iter().find(|&(s, v)| theirs.get(s) != v) {
                return Err(Witness::Relabel {
                    perm: perm.clone(),
                    s: s.to_vec(),
                    before: v,
                    after: theirs.get(s),
                });
            }
        }
    }
    Ok(())
}

pub fn run_suite(cat: &Catalog, opts: &SuiteOptions) -> SuiteReport {
    let body = || {
        let start = Instant::now();
        let ctx = Context::new(cat);
        let checks = opts.checks.iter().map(|&c| ctx.run(c, opts)).collect();
        SuiteReport {
            seed: opts.seed,
            catalog_size: cat.len(),
            weak_pairs: ctx.weak.len(),
            rank_preserving_pairs: ctx.rank_preserving.len(),
            strong_pairs: ctx.strong.len(),
            checks,
            elapsed_ms: start.elapsed().as_millis(),
        }
    };
    if opts.jobs == 0 {
        body()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .expect("thread pool")
            .install(body)
    }
}
