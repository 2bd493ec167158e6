//! Naive oracle implementations used to cross-check the library.
//!
//! Everything here works on `BTreeSet<u32>` index sets and walks full
//! subset spaces directly from the definitions — no ranks, no bitmaps, no
//! shadow cascades — so it is an independent route to the same answers.

#![allow(dead_code)]

use std::collections::BTreeSet;

use fideal::{GeneratorSet, Monomial};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Naive = BTreeSet<u32>;

pub fn to_naive(m: &Monomial) -> Naive {
    m.indices().collect()
}

pub fn from_naive(s: &Naive) -> Monomial {
    let v: Vec<u32> = s.iter().copied().collect();
    Monomial::from_indices(&v).unwrap()
}

/// All d-subsets of {1..n}, lexicographic.
pub fn subsets(n: u32, d: u32) -> Vec<Naive> {
    fn rec(start: u32, n: u32, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Naive>) {
        if d == 0 {
            out.push(cur.iter().copied().collect());
            return;
        }
        for v in start..=n {
            if n - v + 1 < d {
                break;
            }
            cur.push(v);
            rec(v + 1, n, d - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, d, &mut Vec::new(), &mut out);
    out
}

pub fn naive_in_ideal(gens: &[Naive], m: &Naive) -> bool {
    gens.iter().any(|g| g.is_subset(m))
}

pub fn naive_minimalize(gens: &[Naive]) -> Vec<Naive> {
    let mut distinct: Vec<Naive> = Vec::new();
    for g in gens {
        if !distinct.contains(g) {
            distinct.push(g.clone());
        }
    }
    let mut kept: Vec<Naive> = Vec::new();
    for g in &distinct {
        let redundant = distinct
            .iter()
            .any(|h| h != g && h.is_subset(g));
        if !redundant {
            kept.push(g.clone());
        }
    }
    kept.sort();
    kept
}

/// Per-degree (a, b, c, d) counts straight from the definition, for a
/// minimal generator set.
pub fn naive_abcd(gens: &[Naive], n: u32) -> Vec<(u64, u64, u64, u64)> {
    let mut rows = Vec::new();
    for deg in 0..=n {
        let (mut a, mut b, mut c, mut dd) = (0u64, 0u64, 0u64, 0u64);
        for m in subsets(n, deg) {
            let in_ideal = naive_in_ideal(gens, &m);
            let is_gen = gens.contains(&m);
            let divides_some = gens.iter().any(|g| m.is_subset(g));
            if is_gen {
                c += 1;
            } else if in_ideal {
                dd += 1;
            } else if divides_some {
                b += 1;
            } else {
                a += 1;
            }
        }
        rows.push((a, b, c, dd));
    }
    rows
}

/// Stanley-Reisner f-vector by scanning every subset.
pub fn naive_sr_fvector(gens: &[Naive], n: u32) -> Vec<u64> {
    let mut counts = vec![1u64];
    for deg in 1..=n {
        let faces = subsets(n, deg)
            .iter()
            .filter(|m| !naive_in_ideal(gens, m))
            .count() as u64;
        if faces > 0 {
            counts.push(faces);
        }
    }
    counts
}

/// Facet-complex f-vector: count divisors of the minimal generators.
pub fn naive_facet_fvector(min_gens: &[Naive], n: u32) -> Vec<u64> {
    let mut counts = vec![1u64];
    for deg in 1..=n {
        let faces = subsets(n, deg)
            .iter()
            .filter(|m| min_gens.iter().any(|g| m.is_subset(g)))
            .count() as u64;
        if faces > 0 {
            counts.push(faces);
        }
    }
    counts
}

pub fn naive_lower_perfect(slice: &[Naive], n: u32, d: u32) -> bool {
    subsets(n, d - 1)
        .iter()
        .all(|g| slice.iter().any(|m| g.is_subset(m)))
}

pub fn naive_upper_perfect(slice: &[Naive], n: u32, d: u32) -> bool {
    subsets(n, d + 1)
        .iter()
        .all(|g| slice.iter().any(|m| m.is_subset(g)))
}

pub fn naive_f_ideal(gens: &[Naive], n: u32) -> bool {
    let min = naive_minimalize(gens);
    naive_sr_fvector(&min, n) == naive_facet_fvector(&min, n)
}

pub fn gset(n: u32, rows: &[&[u32]]) -> GeneratorSet {
    GeneratorSet::new(
        n,
        rows.iter().map(|r| Monomial::from_indices(r).unwrap()),
    )
    .unwrap()
}

/// Seeded random generator set: degrees at least 2, nonempty after
/// minimalization, over `2..=max_n` variables.
pub fn random_ideal(rng: &mut ChaCha8Rng, max_n: u32) -> GeneratorSet {
    loop {
        let n = rng.random_range(2..=max_n);
        let count = rng.random_range(1..=(n as usize) * 2);
        let mut gens = Vec::new();
        for _ in 0..count {
            let deg = rng.random_range(2..=n);
            let mut idx: Vec<u32> = (1..=n).collect();
            for i in 0..deg as usize {
                let j = rng.random_range(i..idx.len());
                idx.swap(i, j);
            }
            idx.truncate(deg as usize);
            gens.push(Monomial::from_indices(&idx).unwrap());
        }
        let g = GeneratorSet::new(n, gens).unwrap().minimalize();
        if !g.is_empty() {
            return g;
        }
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The reference mixed ideal: 14 generators in degrees 2 and 3 on 7
/// variables.
pub fn n7_ideal() -> GeneratorSet {
    gset(
        7,
        &[
            &[2, 4],
            &[2, 6],
            &[4, 6],
            &[1, 2, 7],
            &[2, 3, 7],
            &[3, 4, 7],
            &[5, 6, 7],
            &[1, 3, 7],
            &[1, 5, 7],
            &[3, 5, 7],
            &[2, 5, 7],
            &[4, 5, 7],
            &[1, 3, 5],
            &[2, 3, 5],
        ],
    )
}

/// A three-degree generator list on 8 variables with duplicate and
/// redundant rows (32 in total), matching the CLI fixture.
pub fn mixed_deg345_rows() -> Vec<Vec<u32>> {
    vec![
        vec![1, 2, 3, 8],
        vec![2, 3, 5, 8],
        vec![3, 4, 5, 8],
        vec![1, 2, 4, 5, 7],
        vec![2, 3, 4, 5, 7],
        vec![3, 4, 5, 8],
        vec![2, 3, 6],
        vec![1, 2, 4, 6],
        vec![1, 2, 5, 6],
        vec![1, 3, 4, 6],
        vec![1, 3, 5, 6],
        vec![1, 4, 5, 6],
        vec![2, 3, 4, 6],
        vec![2, 3, 5, 6],
        vec![2, 4, 5, 6],
        vec![6, 7, 8],
        vec![5, 6, 7, 8],
        vec![4, 6, 7],
        vec![4, 7, 8],
        vec![1, 5, 8],
        vec![2, 4, 6, 8],
        vec![4, 5, 6, 8],
        vec![3, 4, 6, 8],
        vec![2, 5, 6, 8],
        vec![1, 3, 4, 5],
        vec![3, 5, 6, 8],
        vec![3, 6, 7, 8],
        vec![3, 7, 8],
        vec![2, 7, 8],
        vec![1, 6, 8],
        vec![2, 7, 8],
        vec![2, 5, 6, 8],
    ]
}
