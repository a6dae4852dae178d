use std::collections::HashSet;

use flagmono::catalog::{enumerate_bases, enumerate_matroids, exhaustive, named};
use flagmono::find_weak_pairs;
use flagmono_core::maps::is_weak_map;
use flagmono_core::{GroundSubset, Matroid};

/// Basis exchange checked directly on bitmasks.
fn is_basis_family(family: &[u16]) -> bool {
    let members: HashSet<u16> = family.iter().copied().collect();
    family.iter().all(|&b1| {
        family.iter().all(|&b2| {
            (0..16).filter(|x| b1 >> x & 1 == 1 && b2 >> x & 1 == 0).all(|x| {
                (0..16)
                    .filter(|y| b2 >> y & 1 == 1 && b1 >> y & 1 == 0)
                    .any(|y| members.contains(&(b1 & !(1 << x) | 1 << y)))
            })
        })
    })
}

/// Every nonempty family of r-subsets of [n] that satisfies exchange.
fn brute_force(n: usize, r: usize) -> HashSet<Vec<u16>> {
    let pool: Vec<u16> = (0u32..1 << n)
        .filter(|b| b.count_ones() as usize == r)
        .map(|b| b as u16)
        .collect();
    (1u64..1 << pool.len())
        .map(|mask| {
            let mut fam: Vec<u16> = (0..pool.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| pool[i])
                .collect();
            fam.sort_unstable();
            fam
        })
        .filter(|fam| is_basis_family(fam))
        .collect()
}

#[test]
fn enumeration_matches_brute_force() {
    for n in 0..=6 {
        for r in 0..=n {
            let expected = brute_force(n, r);
            let found: HashSet<Vec<u16>> = enumerate_bases(n, r)
                .unwrap()
                .into_iter()
                .map(|fam| {
                    let mut bits: Vec<u16> = fam.iter().map(|s| s.bits()).collect();
                    bits.sort_unstable();
                    bits
                })
                .collect();
            assert_eq!(found, expected, "n={n} r={r}");
        }
    }
}

#[test]
fn rank_two_on_three_elements() {
    let cat = enumerate_matroids(3, 2).unwrap();
    assert_eq!(cat.len(), 7);
    let loopless = cat
        .entries()
        .iter()
        .filter(|e| e.matroid.loops().is_empty())
        .count();
    assert_eq!(loopless, 4);
}

#[test]
fn totals_by_ground_set_size() {
    let totals: Vec<usize> = (0..=6)
        .map(|n| (0..=n).map(|r| enumerate_bases(n, r).unwrap().len()).sum())
        .collect();
    assert_eq!(totals, vec![1, 2, 5, 16, 68, 406, 3807]);
}

#[test]
fn entries_are_distinct_valid_matroids() {
    let cat = exhaustive(5).unwrap();
    let distinct: HashSet<&Matroid> = cat.entries().iter().map(|e| &e.matroid).collect();
    assert_eq!(distinct.len(), cat.len());
    for e in cat.entries() {
        assert_eq!(
            Matroid::from_bases(e.matroid.n(), e.matroid.bases().iter().copied()).unwrap(),
            e.matroid
        );
    }
}

#[test]
fn weak_pairs_agree_with_the_basis_test() {
    let cat = exhaustive(4).unwrap();
    let mut expected = Vec::new();
    for (i, a) in cat.entries().iter().enumerate() {
        for (j, b) in cat.entries().iter().enumerate() {
            if a.matroid.n() == b.matroid.n() && is_weak_map(&a.matroid, &b.matroid).unwrap().holds() {
                expected.push((i, j));
            }
        }
    }
    let mut found = find_weak_pairs(&cat, false);
    found.sort_unstable();
    assert_eq!(found, expected);
    let rp = find_weak_pairs(&cat, true);
    assert!(rp
        .iter()
        .all(|&(a, b)| cat.get(a).matroid.rank() == cat.get(b).matroid.rank()));
}

#[test]
fn uniform_matroids_map_onto_every_entry() {
    let cat = exhaustive(5).unwrap();
    let lookup = cat.lookup();
    let pairs: HashSet<(usize, usize)> = find_weak_pairs(&cat, true).into_iter().collect();
    for (j, e) in cat.entries().iter().enumerate() {
        let u = Matroid::uniform(e.matroid.rank() as i64, e.matroid.n()).unwrap();
        assert!(pairs.contains(&(lookup[&u], j)), "{}", e.name);
    }
}

#[test]
fn named_pair_from_the_uniform_triangle() {
    let mut cat = named(3).unwrap();
    let b = Matroid::from_bases(
        3,
        [GroundSubset::from_elements([1, 2]), GroundSubset::from_elements([1, 3])],
    )
    .unwrap();
    cat.push("12,13", flagmono::Source::Named, b).unwrap();
    let lookup = cat.lookup();
    let u23 = lookup[&Matroid::uniform(2, 3).unwrap()];
    let target = cat.len() - 1;
    assert!(find_weak_pairs(&cat, true).contains(&(u23, target)));
    let all = find_weak_pairs(&cat, false);
    let u13 = lookup[&Matroid::uniform(1, 3).unwrap()];
    assert!(all.contains(&(u23, u13)));
}
