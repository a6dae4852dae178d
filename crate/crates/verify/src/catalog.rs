//! Matroid catalogs: exhaustive labeled enumeration, named constructions,
//! random linear matroids and files.

use std::collections::{HashMap, HashSet};

use flagmono_core::{GroundSubset, Matroid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Result, VerifyError};

/// Default bound on `n` for exhaustive enumeration.
pub const DEFAULT_CAP: usize = 7;

/// Enumeration cap, overridable through `FLAGMONO_CAP`.
pub fn enumeration_cap() -> usize {
    std::env::var("FLAGMONO_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Source {
    Named,
    Enumerated,
    RandomLinear { field: u64, seed: u64 },
    File { path: String },
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub source: Source,
    pub matroid: Matroid,
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: Vec<Entry>,
    names: HashSet<String>,
}

impl Catalog {
    pub fn new() -> Catalog {
        Catalog::default()
    }

    pub fn push(&mut self, name: impl Into<String>, source: Source, matroid: Matroid) -> Result<()> {
        let name = name.into();
        if !self.names.insert(name.clone()) {
            return Err(VerifyError::DuplicateName(name));
        }
        self.entries.push(Entry {
            name,
            source,
            matroid,
        });
        Ok(())
    }

    pub fn extend(&mut self, other: Catalog) -> Result<()> {
        for e in other.entries {
            self.push(e.name, e.source, e.matroid)?;
        }
        Ok(())
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> &Entry {
        &self.entries[i]
    }

    /// Index of an entry by its basis family.
    pub fn lookup(&self) -> HashMap<&Matroid, usize> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, e)| (&e.matroid, i))
            .collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Unknown,
    In,
    Out,
}

struct Search {
    candidates: Vec<GroundSubset>,
    position: Vec<usize>,
    status: Vec<Status>,
    chosen: Vec<usize>,
    found: Vec<Vec<GroundSubset>>,
}

impl Search {
    /// Some `x ∈ B1 \ B2` all of whose exchanges `B1 - x + y` are excluded.
    fn blocked(&self, b1: GroundSubset, b2: GroundSubset) -> bool {
        let out = b2.difference(b1);
        b1.difference(b2).iter().any(|x| {
            let base = b1.without(x);
            out.iter()
                .all(|y| self.status[self.position[base.with(y).bits() as usize]] == Status::Out)
        })
    }

    fn consistent_with(&self, idx: usize) -> bool {
        let s = self.candidates[idx];
        self.chosen.iter().all(|&j| {
            let t = self.candidates[j];
            !self.blocked(s, t) && !self.blocked(t, s)
        })
    }

    fn consistent(&self) -> bool {
        self.chosen.iter().all(|&i| {
            self.chosen
                .iter()
                .all(|&j| i == j || !self.blocked(self.candidates[i], self.candidates[j]))
        })
    }

    fn run(&mut self, idx: usize) {
        if idx == self.candidates.len() {
            if !self.chosen.is_empty() {
                self.found
                    .push(self.chosen.iter().map(|&i| self.candidates[i]).collect());
            }
            return;
        }
        self.status[idx] = Status::In;
        self.chosen.push(idx);
        if self.consistent_with(idx) {
            self.run(idx + 1);
        }
        self.chosen.pop();
        self.status[idx] = Status::Out;
        if self.consistent() {
            self.run(idx + 1);
        }
        self.status[idx] = Status::Unknown;
    }
}

/// All labeled matroids of rank `r` on `[n]`, found by depth-first search
/// over candidate basis families with exchange pruning.
pub fn enumerate_bases(n: usize, r: usize) -> Result<Vec<Vec<GroundSubset>>> {
    let cap = enumeration_cap();
    if n > cap {
        return Err(VerifyError::CapExceeded { n, cap });
    }
    if r > n {
        return Err(VerifyError::BadRank { n, r });
    }
    let candidates = GroundSubset::k_subsets(n, r);
    let mut position = vec![usize::MAX; 1 << n];
    for (i, s) in candidates.iter().enumerate() {
        position[s.bits() as usize] = i;
    }
    let mut search = Search {
        status: vec![Status::Unknown; candidates.len()],
        candidates,
        position,
        chosen: Vec::new(),
        found: Vec::new(),
    };
    search.run(0);
    Ok(search.found)
}

pub fn enumerate_matroids(n: usize, r: usize) -> Result<Catalog> {
    let mut cat = Catalog::new();
    for (i, bases) in enumerate_bases(n, r)?.into_iter().enumerate() {
        let m = Matroid::from_bases(n, bases)?;
        cat.push(format!("n{n}r{r}#{i}"), Source::Enumerated, m)?;
    }
    Ok(cat)
}

/// Every labeled matroid with `n ≤ n_max`, all ranks.
pub fn exhaustive(n_max: usize) -> Result<Catalog> {
    let mut cat = Catalog::new();
    for n in 0..=n_max {
        for r in 0..=n {
            cat.extend(enumerate_matroids(n, r)?)?;
        }
    }
    Ok(cat)
}

/// Uniform matroids and near-pencils on up to `n_max` elements.
pub fn named(n_max: usize) -> Result<Catalog> {
    let mut cat = Catalog::new();
    for n in 0..=n_max {
        for r in 0..=n {
            cat.push(
                format!("U({r},{n})"),
                Source::Named,
                Matroid::uniform(r as i64, n)?,
            )?;
        }
        if n >= 3 {
            cat.push(
                format!("near-pencil({n})"),
                Source::Named,
                Matroid::near_pencil(n)?,
            )?;
        }
    }
    Ok(cat)
}

/// `count` linear matroids over GF(`field`) with ground sets of size
/// `n_range` and ambient dimension at most `max_dim`, reproducible from
/// `seed`.
pub fn random_linear(
    field: u64,
    n_range: std::ops::RangeInclusive<usize>,
    max_dim: usize,
    count: usize,
    seed: u64,
) -> Result<Catalog> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cat = Catalog::new();
    for i in 0..count {
        let n = rng.gen_range(n_range.clone());
        let d = rng.gen_range(1..=max_dim.max(1));
        let cols: Vec<Vec<u64>> = (0..n)
            .map(|_| (0..d).map(|_| rng.gen_range(0..field)).collect())
            .collect();
        let m = Matroid::linear(field, &cols)?;
        cat.push(
            format!("GF{field}-s{seed}-{i}"),
            Source::RandomLinear { field, seed },
            m,
        )?;
    }
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_bases(3, 2).unwrap().len(), 7);
        assert_eq!(enumerate_bases(0, 0).unwrap().len(), 1);
        for n in 1..=5 {
            assert_eq!(enumerate_bases(n, n).unwrap().len(), 1);
            assert_eq!(enumerate_bases(n, 0).unwrap().len(), 1);
            assert_eq!(enumerate_bases(n, 1).unwrap().len(), (1 << n) - 1);
        }
        assert!(matches!(enumerate_bases(2, 3), Err(VerifyError::BadRank { .. })));
    }

    #[test]
    fn catalog_rejects_duplicate_names() {
        let mut cat = Catalog::new();
        let m = Matroid::uniform(1, 2).unwrap();
        cat.push("x", Source::Named, m.clone()).unwrap();
        assert!(matches!(
            cat.push("x", Source::Named, m),
            Err(VerifyError::DuplicateName(_))
        ));
    }

    #[test]
    fn random_linear_is_reproducible() {
        let a = random_linear(2, 4..=8, 3, 5, 11).unwrap();
        let b = random_linear(2, 4..=8, 3, 5, 11).unwrap();
        let ms = |c: &Catalog| c.entries().iter().map(|e| e.matroid.clone()).collect::<Vec<_>>();
        assert_eq!(ms(&a), ms(&b));
    }

    #[test]
    fn named_catalog() {
        let cat = named(4).unwrap();
        assert!(cat.entries().iter().any(|e| e.name == "near-pencil(4)"));
        assert_eq!(cat.len(), 15 + 2);
    }
}
