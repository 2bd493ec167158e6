//! Constructions of mixed and pure f-ideals, the Newton complementary
//! dual, and the residue-block signature machinery.
//!
//! Each constructor builds its named parts deterministically, fills the
//! free-choice part through a [`SelectionPolicy`], re-verifies the output
//! with the f-ideal verdict, and fails loudly instead of returning an
//! unverified ideal. Closed-form part sizes are checked at runtime.

use std::collections::HashSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::binom::binomial;
use crate::complex::is_f_ideal;
use crate::error::{Error, Result};
use crate::monomial::{
    check_ambient, complement_monomial, enumerate_monomials, GeneratorSet, Monomial, MAX_VARS,
};
use crate::perfect::{is_perfect, DegreeSlice};

/// How a free-choice step picks monomials from the eligible candidates.
///
/// `LexFirst` takes the lexicographically smallest ones; `SeededRandom`
/// draws a uniform subset reproducibly for a fixed seed.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SelectionPolicy {
    LexFirst,
    SeededRandom(u64),
}

impl SelectionPolicy {
    /// Pick `count` monomials from lexicographically sorted `candidates`.
    fn select(&self, candidates: &[Monomial], count: usize) -> Result<Vec<Monomial>> {
        if count > candidates.len() {
            return Err(Error::ConstructionFailed(format!(
                "need {count} free-choice monomials but only {} are eligible",
                candidates.len()
            )));
        }
        let mut chosen = match self {
            SelectionPolicy::LexFirst => candidates[..count].to_vec(),
            SelectionPolicy::SeededRandom(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                return select_random(&mut rng, candidates, count);
            }
        };
        chosen.sort();
        Ok(chosen)
    }

    pub fn describe(&self) -> String {
        match self {
            SelectionPolicy::LexFirst => "lex".into(),
            SelectionPolicy::SeededRandom(s) => format!("seed:{s}"),
        }
    }
}

/// One named part of a construction (G1, G2, ..., NF).
#[derive(Clone, Debug, Serialize)]
pub struct TracePart {
    pub name: String,
    pub size: usize,
    pub monomials: Vec<Monomial>,
}

impl TracePart {
    fn new(name: &str, mut monomials: Vec<Monomial>) -> TracePart {
        monomials.sort();
        TracePart { name: name.into(), size: monomials.len(), monomials }
    }
}

/// Construction provenance: the named parts and the free-choice count.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionTrace {
    pub algorithm: String,
    pub n: u32,
    pub policy: String,
    pub free_choice_count: u64,
    pub parts: Vec<TracePart>,
}

impl ConstructionTrace {
    pub fn part(&self, name: &str) -> Option<&TracePart> {
        self.parts.iter().find(|p| p.name == name)
    }
}

/// A verified constructed ideal with its trace.
#[derive(Clone, Debug)]
pub struct Construction {
    pub ideal: GeneratorSet,
    pub trace: ConstructionTrace,
}

/// Per-residue-class support counts of `g` modulo `d`, sorted descending.
/// Class `i` holds the indices congruent to `i (mod d)`, residue 0 in
/// class `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSignature(Vec<u32>);

impl BlockSignature {
    pub fn counts(&self) -> &[u32] {
        &self.0
    }
}

fn residue_class(index: u32, d: u32) -> u32 {
    let r = index % d;
    if r == 0 {
        d
    } else {
        r
    }
}

pub fn block_signature(g: &Monomial, d: u32, n: u32) -> Result<BlockSignature> {
    check_ambient(n)?;
    if d < 2 {
        return Err(Error::InvalidArgument("block degree d must be at least 2".into()));
    }
    if g.max_index() > n {
        return Err(Error::InvalidArgument(format!(
            "monomial {g} uses an index above n = {n}"
        )));
    }
    let mut counts = class_counts(g, d);
    counts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(BlockSignature(counts))
}

/// Raw per-class counts (class i at position i-1), unsorted.
fn class_counts(g: &Monomial, d: u32) -> Vec<u32> {
    let mut counts = vec![0u32; d as usize];
    for i in g.indices() {
        counts[(residue_class(i, d) - 1) as usize] += 1;
    }
    counts
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::ConstructionFailed(msg()))
    }
}

/// Uniform `count`-subset of `candidates`, sorted back into lex order.
fn select_random(
    rng: &mut ChaCha8Rng,
    candidates: &[Monomial],
    count: usize,
) -> Result<Vec<Monomial>> {
    if count > candidates.len() {
        return Err(Error::ConstructionFailed(format!(
            "need {count} free-choice monomials but only {} are eligible",
            candidates.len()
        )));
    }
    let mut idx: Vec<usize> = (0..candidates.len()).collect();
    for i in 0..count {
        let j = rng.random_range(i..idx.len());
        idx.swap(i, j);
    }
    let mut chosen: Vec<Monomial> = idx[..count].iter().map(|&i| candidates[i]).collect();
    chosen.sort();
    Ok(chosen)
}

/// Minimal extra degree-`d` monomials (drawn from `eligible`) so that
/// `members` plus the result covers both shadows: every degree-`d-1`
/// monomial divides some element, every degree-`d+1` monomial is divisible
/// by some element. Each gap is closed greedily with one multiple or
/// divisor, lex-first or rng-chosen per the active policy.
fn cover_shadows(
    n: u32,
    d: u32,
    members: &[Monomial],
    eligible: &[Monomial],
    rng: &mut Option<ChaCha8Rng>,
) -> Result<Vec<Monomial>> {
    use crate::binom::{rank, unrank, Bitmap};
    let eligible_bits: HashSet<u64> = eligible.iter().map(|m| m.bits()).collect();
    let mut added: Vec<Monomial> = Vec::new();
    let mut added_bits: HashSet<u64> = HashSet::new();

    let pick = |options: &[Monomial],
                rng: &mut Option<ChaCha8Rng>|
     -> Option<Monomial> {
        if options.is_empty() {
            return None;
        }
        Some(match rng {
            None => options[0],
            Some(rng) => options[rng.random_range(0..options.len())],
        })
    };

    // Upper shadow: degree d+1.
    let above = d + 1;
    let mut covered = Bitmap::new(binomial(n, above));
    for m in members {
        for v in 1..=n {
            if !m.contains(v) {
                covered.insert(rank(n, above, m.with_var(v).bits()));
            }
        }
    }
    for r in 0..covered.len() {
        if covered.contains(r) {
            continue;
        }
        let u = Monomial::from_bits(unrank(n, above, r));
        let mut options: Vec<Monomial> = u
            .indices()
            .map(|v| u.without_var(v))
            .filter(|c| eligible_bits.contains(&c.bits()) && !added_bits.contains(&c.bits()))
            .collect();
        options.sort();
        let chosen = pick(&options, rng).ok_or_else(|| {
            Error::ConstructionFailed(format!(
                "no eligible divisor covers the degree-{above} monomial {u}"
            ))
        })?;
        added_bits.insert(chosen.bits());
        added.push(chosen);
        for v in 1..=n {
            if !chosen.contains(v) {
                covered.insert(rank(n, above, chosen.with_var(v).bits()));
            }
        }
    }

    // Lower shadow: degree d-1.
    let below = d - 1;
    let mut covered = Bitmap::new(binomial(n, below));
    for m in members.iter().chain(added.iter()) {
        for v in m.indices() {
            covered.insert(rank(n, below, m.without_var(v).bits()));
        }
    }
    for r in 0..covered.len() {
        if covered.contains(r) {
            continue;
        }
        let g = Monomial::from_bits(unrank(n, below, r));
        let mut options: Vec<Monomial> = (1..=n)
            .filter(|&v| !g.contains(v))
            .map(|v| g.with_var(v))
            .filter(|c| eligible_bits.contains(&c.bits()) && !added_bits.contains(&c.bits()))
            .collect();
        options.sort();
        let chosen = pick(&options, rng).ok_or_else(|| {
            Error::ConstructionFailed(format!(
                "no eligible multiple covers the degree-{below} monomial {g}"
            ))
        })?;
        added_bits.insert(chosen.bits());
        added.push(chosen);
        for v in chosen.indices() {
            covered.insert(rank(n, below, chosen.without_var(v).bits()));
        }
    }

    added.sort();
    Ok(added)
}

fn pair(a: u32, b: u32) -> Monomial {
    Monomial::from_indices(&[a, b]).expect("valid pair")
}

fn triple(a: u32, b: u32, c: u32) -> Monomial {
    Monomial::from_indices(&[a, b, c]).expect("valid triple")
}

/// Degree-3 monomials over `1..=n` outside `taken`, not divisible by any
/// pair in `blockers`, in lexicographic order.
fn eligible_triples(n: u32, taken: &HashSet<u64>, blockers: &[Monomial]) -> Result<Vec<Monomial>> {
    let mut out = Vec::new();
    for m in enumerate_monomials(n, 3)? {
        if taken.contains(&m.bits()) {
            continue;
        }
        if blockers.iter().any(|p| p.divides(&m)) {
            continue;
        }
        out.push(m);
    }
    Ok(out)
}

fn verify_mixed(
    algorithm: &str,
    n: u32,
    parts: Vec<TracePart>,
    free_choice_count: u64,
    policy: SelectionPolicy,
    generator_parts: &[&str],
) -> Result<Construction> {
    let mut gens: Vec<Monomial> = Vec::new();
    for p in &parts {
        if generator_parts.contains(&p.name.as_str()) {
            gens.extend_from_slice(&p.monomials);
        }
    }
    let total = gens.len();
    let ideal = GeneratorSet::new(n, gens)?;
    ensure(ideal.len() == total, || {
        format!("{algorithm}: generator parts overlap")
    })?;
    let minimal = ideal.minimalize();
    ensure(minimal.len() == total, || {
        format!("{algorithm}: assembled generators are not minimal")
    })?;
    let verdict = is_f_ideal(&minimal)?;
    ensure(verdict, || {
        format!("{algorithm}: output failed the f-ideal verification gate")
    })?;
    let trace = ConstructionTrace {
        algorithm: algorithm.into(),
        n,
        policy: policy.describe(),
        free_choice_count,
        parts,
    };
    Ok(Construction { ideal: minimal, trace })
}

/// Mixed degree-(2,3) f-ideal on `n = 2k+1` variables, `k ≡ 0, 3 (mod 4)`.
///
/// Parts: even-index pairs `G1`, the nonface pairs `NF`, the pairs times
/// the last variable `G2`, the odd-index triples `G3`, and the policy-
/// chosen `G4`.
pub fn construct_mixed_odd_a(k: u32, policy: SelectionPolicy) -> Result<Construction> {
    if k < 3 || !matches!(k % 4, 0 | 3) {
        return Err(Error::InvalidArgument(format!(
            "k = {k}: need k >= 3 with k = 0 or 3 (mod 4)"
        )));
    }
    let n = 2 * k + 1;
    check_ambient(n)?;

    let evens: Vec<u32> = (1..=k).map(|i| 2 * i).collect();
    let odds: Vec<u32> = (0..k).map(|i| 2 * i + 1).collect();

    let g1: Vec<Monomial> = pairs_of(&evens);
    let nf: Vec<Monomial> = odd_even_nonfaces(&odds, &evens);
    let g2 = pairs_times_last(n, 2 * k, &g1, &nf);
    let g3: Vec<Monomial> = triples_of(&odds);

    ensure(g1.len() as u64 == binomial(k, 2), || {
        format!("|G1| = {} != C({k},2)", g1.len())
    })?;
    ensure(nf.len() as u64 == binomial(k, 2), || {
        format!("|NF| = {} != C({k},2)", nf.len())
    })?;
    ensure(g2.len() as u64 == (k as u64) * (k as u64), || {
        format!("|G2| = {} != k^2", g2.len())
    })?;
    ensure(g3.len() as u64 == binomial(k, 3), || {
        format!("|G3| = {} != C({k},3)", g3.len())
    })?;

    // Degree-3 target: half the monomials that stay outside the ideal.
    let k = k as u64;
    let slice6 = k * (k + 1) * (4 * k - 1);
    ensure(slice6 % 6 == 0 && (slice6 / 6) % 2 == 0, || {
        format!("degree-3 non-ideal count {slice6}/6 is not an even integer")
    })?;
    let half = slice6 / 12;
    let pre6 = k * (k - 1) * (k - 2) + 6 * k * k;
    ensure(pre6 % 6 == 0, || format!("preselected count {pre6}/6 is not integral"))?;
    let preselected = pre6 / 6;
    ensure(preselected == (g2.len() + g3.len()) as u64, || {
        format!(
            "closed-form preselected count {preselected} != |G2|+|G3| = {}",
            g2.len() + g3.len()
        )
    })?;
    ensure(half >= preselected, || {
        format!("free-choice count would be negative: {half} < {preselected}")
    })?;
    let need = half - preselected;

    let taken: HashSet<u64> = g2.iter().chain(&g3).map(|m| m.bits()).collect();
    let blockers: Vec<Monomial> = g1.iter().chain(&nf).copied().collect();
    let eligible = eligible_triples(n, &taken, &blockers)?;
    let g4 = policy.select(&eligible, need as usize)?;

    let parts = vec![
        TracePart::new("G1", g1),
        TracePart::new("NF", nf),
        TracePart::new("G2", g2),
        TracePart::new("G3", g3),
        TracePart::new("G4", g4),
    ];
    verify_mixed("4.1", n, parts, need, policy, &["G1", "G2", "G3", "G4"])
}

/// Mixed degree-(2,3) f-ideal on `n = 2k+1` variables, `k ≡ 1, 2 (mod 4)`,
/// `k >= 15`. Same shape as [`construct_mixed_odd_a`] with two extra pairs
/// in `G1` and two extra nonfaces.
pub fn construct_mixed_odd_b(k: u32, policy: SelectionPolicy) -> Result<Construction> {
    if k < 15 || !matches!(k % 4, 1 | 2) {
        return Err(Error::InvalidArgument(format!(
            "k = {k}: need k >= 15 with k = 1 or 2 (mod 4)"
        )));
    }
    let n = 2 * k + 1;
    check_ambient(n)?;

    let evens: Vec<u32> = (1..=k).map(|i| 2 * i).collect();
    let odds: Vec<u32> = (0..k).map(|i| 2 * i + 1).collect();

    let mut g1 = pairs_of(&evens);
    g1.push(pair(2, 3));
    g1.push(pair(2, 5));
    let mut nf = odd_even_nonfaces(&odds, &evens);
    nf.push(pair(2, 7));
    nf.push(pair(2, 9));
    let g2 = pairs_times_last(n, 2 * k, &g1, &nf);
    let g3: Vec<Monomial> = triples_of(&odds);

    ensure(g1.len() as u64 == binomial(k, 2) + 2, || {
        format!("|G1| = {} != C({k},2)+2", g1.len())
    })?;
    ensure(nf.len() as u64 == binomial(k, 2) + 2, || {
        format!("|NF| = {} != C({k},2)+2", nf.len())
    })?;
    ensure(g2.len() as u64 == (k as u64) * (k as u64) - 4, || {
        format!("|G2| = {} != k^2-4", g2.len())
    })?;

    let k = k as u64;
    let slice6 = 4 * k * k * k + 3 * k * k - 13 * k + 6;
    ensure(slice6 % 6 == 0 && (slice6 / 6) % 2 == 0, || {
        format!("degree-3 non-ideal count {slice6}/6 is not an even integer")
    })?;
    let half = slice6 / 12;
    let pre6 = k * (k - 1) * (k - 2) + 6 * k * k - 24;
    ensure(pre6 % 6 == 0, || format!("preselected count {pre6}/6 is not integral"))?;
    let preselected = pre6 / 6;
    ensure(preselected == (g2.len() + g3.len()) as u64, || {
        format!(
            "closed-form preselected count {preselected} != |G2|+|G3| = {}",
            g2.len() + g3.len()
        )
    })?;
    ensure(half >= preselected, || {
        format!("free-choice count would be negative: {half} < {preselected}")
    })?;
    let need = half - preselected;

    let taken: HashSet<u64> = g2.iter().chain(&g3).map(|m| m.bits()).collect();
    let blockers: Vec<Monomial> = g1.iter().chain(&nf).copied().collect();
    let eligible = eligible_triples(n, &taken, &blockers)?;
    let g4 = policy.select(&eligible, need as usize)?;

    let parts = vec![
        TracePart::new("G1", g1),
        TracePart::new("NF", nf),
        TracePart::new("G2", g2),
        TracePart::new("G3", g3),
        TracePart::new("G4", g4),
    ];
    verify_mixed("4.4", n, parts, need, policy, &["G1", "G2", "G3", "G4"])
}

/// Mixed degree-(2,3) f-ideal on `n = 2k` variables, `k >= 4`.
///
/// The two top variables get special roles; `G6` is the policy-chosen part.
/// For `k` in {4, 5} the count argument behind the verification gate is
/// not covered by the stated bounds, so an explicit construction failure
/// is a possible (and accepted) outcome.
pub fn construct_mixed_even(k: u32, policy: SelectionPolicy) -> Result<Construction> {
    if k < 4 {
        return Err(Error::InvalidArgument(format!("k = {k}: need k >= 4")));
    }
    let n = 2 * k;
    check_ambient(n)?;

    // Evens below 2k and odds below 2k-1.
    let evens: Vec<u32> = (1..k).map(|i| 2 * i).collect();
    let odds_all: Vec<u32> = (0..k).map(|i| 2 * i + 1).collect(); // 1..=2k-1
    let odds_low: Vec<u32> = odds_all[..k as usize - 1].to_vec(); // excludes 2k-1

    let g1 = pairs_of(&evens);
    let nf = odd_even_nonfaces(&odds_all, &evens);
    // Pairs on 1..2k-2 not in NF or G1, each times x_{2k-1}.
    let g2 = pairs_times_last(n - 1, n - 2, &g1, &nf);
    let g3 = triples_of(&odds_low);
    let g4: Vec<Monomial> = pairs_of(&odds_all)
        .into_iter()
        .map(|p| {
            let mut idx: Vec<u32> = p.indices().collect();
            idx.push(n);
            Monomial::from_indices(&idx).expect("valid")
        })
        .collect();
    let g5: Vec<Monomial> = evens.iter().map(|&e| triple(e, n - 1, n)).collect();

    ensure(g1.len() as u64 == binomial(k - 1, 2), || {
        format!("|G1| = {} != C({},2)", g1.len(), k - 1)
    })?;
    ensure(nf.len() as u64 == binomial(k - 1, 2), || {
        format!("|NF| = {} != C({},2)", nf.len(), k - 1)
    })?;
    ensure(g2.len() as u64 == ((k - 1) as u64) * ((k - 1) as u64), || {
        format!("|G2| = {} != (k-1)^2", g2.len())
    })?;
    ensure(g3.len() as u64 == binomial(k - 1, 3), || {
        format!("|G3| = {} != C({},3)", g3.len(), k - 1)
    })?;
    ensure(g4.len() as u64 == binomial(k, 2), || {
        format!("|G4| = {} != C({k},2)", g4.len())
    })?;
    ensure(g5.len() as u64 == (k - 1) as u64, || {
        format!("|G5| = {} != k-1", g5.len())
    })?;

    let k64 = k as u64;
    let slice6 = 4 * k64 * (k64 - 1) * (k64 + 1);
    ensure(slice6 % 12 == 0, || {
        format!("degree-3 non-ideal count {slice6}/6 is not an even integer")
    })?;
    let half = slice6 / 12;
    let preselected = (g2.len() + g3.len() + g4.len() + g5.len()) as u64;
    ensure(half >= preselected, || {
        format!("free-choice count would be negative: {half} < {preselected}")
    })?;
    let need = half - preselected;
    // The closed-form |G6| count must agree with the slice bookkeeping.
    let closed_form = k64 * k64 * k64 - 3 * k64 * k64 - 4 * k64 + 6;
    ensure(closed_form % 6 == 0 && closed_form / 6 == need, || {
        format!("closed-form |G6| = {closed_form}/6 disagrees with slice count {need}")
    })?;

    let taken: HashSet<u64> = g2.iter().chain(&g3).chain(&g4).chain(&g5).map(|m| m.bits()).collect();
    let blockers: Vec<Monomial> = g1.iter().chain(&nf).copied().collect();
    let eligible = eligible_triples(n, &taken, &blockers)?;
    let g6 = policy.select(&eligible, need as usize)?;

    let parts = vec![
        TracePart::new("G1", g1),
        TracePart::new("NF", nf),
        TracePart::new("G2", g2),
        TracePart::new("G3", g3),
        TracePart::new("G4", g4),
        TracePart::new("G5", g5),
        TracePart::new("G6", g6),
    ];
    verify_mixed(
        "4.6",
        n,
        parts,
        need,
        policy,
        &["G1", "G2", "G3", "G4", "G5", "G6"],
    )
}

/// Mixed degree-(2,3) f-ideal over `x_1..x_k, y_1..y_{k+1}` (odd `k >= 3`):
/// all x-pairs minus one, all y-pairs, and `(k+1)/2` policy-chosen
/// monomials `y_i x_l x_m`. Variables map to `1..=k` and `k+1..=2k+1`.
pub fn construct_block_odd(k: u32, l: u32, m: u32, policy: SelectionPolicy) -> Result<Construction> {
    if k < 3 || k % 2 == 0 {
        return Err(Error::InvalidArgument(format!("k = {k}: need odd k >= 3")));
    }
    if l == m || l == 0 || m == 0 || l > k || m > k {
        return Err(Error::InvalidArgument(format!(
            "l = {l}, m = {m}: need distinct indices in 1..={k}"
        )));
    }
    let n = 2 * k + 1;
    check_ambient(n)?;

    let xs: Vec<u32> = (1..=k).collect();
    let ys: Vec<u32> = (k + 1..=n).collect();
    let skip = pair(l, m);
    let g1: Vec<Monomial> = pairs_of(&xs).into_iter().filter(|p| *p != skip).collect();
    let g2 = pairs_of(&ys);
    let candidates: Vec<Monomial> = ys.iter().map(|&y| triple(l, m, y)).collect();
    let g3 = policy.select(&candidates, ((k + 1) / 2) as usize)?;

    ensure(g1.len() as u64 == binomial(k, 2) - 1, || {
        format!("|G1| = {} != C({k},2)-1", g1.len())
    })?;
    ensure(g2.len() as u64 == binomial(k + 1, 2), || {
        format!("|G2| = {} != C({},2)", g2.len(), k + 1)
    })?;

    let parts = vec![
        TracePart::new("G1", g1),
        TracePart::new("G2", g2),
        TracePart::new("G3", g3),
    ];
    verify_mixed(
        "4.8",
        n,
        parts,
        ((k + 1) / 2) as u64,
        policy,
        &["G1", "G2", "G3"],
    )
}

/// Mixed degree-(2,3) f-ideal over `x_1..x_k, y_1..y_{k+2}` (even `k >= 4`):
/// all x-pairs, all y-pairs minus `y_l y_m`, and `k/2` policy-chosen
/// monomials `x_i y_l y_m`. Variables map to `1..=k` and `k+1..=2k+2`.
pub fn construct_block_even(
    k: u32,
    l: u32,
    m: u32,
    policy: SelectionPolicy,
) -> Result<Construction> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::InvalidArgument(format!("k = {k}: need even k >= 4")));
    }
    if l == m || l == 0 || m == 0 || l > k + 2 || m > k + 2 {
        return Err(Error::InvalidArgument(format!(
            "l = {l}, m = {m}: need distinct indices in 1..={}",
            k + 2
        )));
    }
    let n = 2 * k + 2;
    check_ambient(n)?;

    let xs: Vec<u32> = (1..=k).collect();
    let ys: Vec<u32> = (k + 1..=n).collect();
    let skip = pair(k + l, k + m);
    let g1 = pairs_of(&xs);
    let g2: Vec<Monomial> = pairs_of(&ys).into_iter().filter(|p| *p != skip).collect();
    let candidates: Vec<Monomial> = xs.iter().map(|&x| triple(x, k + l, k + m)).collect();
    let g3 = policy.select(&candidates, (k / 2) as usize)?;

    ensure(g1.len() as u64 == binomial(k, 2), || {
        format!("|G1| = {} != C({k},2)", g1.len())
    })?;
    ensure(g2.len() as u64 == binomial(k + 2, 2) - 1, || {
        format!("|G2| = {} != C({},2)-1", g2.len(), k + 2)
    })?;

    let parts = vec![
        TracePart::new("G1", g1),
        TracePart::new("G2", g2),
        TracePart::new("G3", g3),
    ];
    verify_mixed("4.9", n, parts, (k / 2) as u64, policy, &["G1", "G2", "G3"])
}

/// Pure f-ideal in degree `d` in {3, 4, 5} on `n >= d^2` variables with an
/// even slice. Builds the residue-block families and fills the remaining
/// half-slice by policy; verifies perfection (and hence the pure f-ideal
/// property) before returning.
pub fn construct_pure(d: u32, n: u32, policy: SelectionPolicy) -> Result<Construction> {
    if !matches!(d, 3 | 4 | 5) {
        return Err(Error::InvalidArgument(format!(
            "pure construction supports d in {{3,4,5}}, got {d}"
        )));
    }
    check_ambient(n)?;
    if n < d * d {
        return Err(Error::InvalidArgument(format!(
            "pure degree-{d} construction needs n >= {}, got {n}",
            d * d
        )));
    }
    let total = binomial(n, d);
    if total % 2 != 0 {
        return Err(Error::StructurallyImpossible(format!(
            "C({n},{d}) = {total} is odd; no pure f-ideal exists"
        )));
    }
    let target = total / 2;

    // Cyclic class arithmetic over 1..=d.
    let cyc = |i: u32, off: i32| -> usize {
        let v = (i as i32 - 1 + off).rem_euclid(d as i32);
        v as usize
    };
    // Offset patterns (relative to the heaviest class) for each named part:
    // (multiplicity at offset 0, then (offset, multiplicity) pairs).
    let patterns: Vec<(&str, u32, Vec<(i32, u32)>)> = match d {
        3 => vec![
            ("G1", 3, vec![]),
            ("G2", 2, vec![(1, 1)]),
        ],
        4 => vec![
            ("G1", 2, vec![(1, 1), (2, 1)]),
            ("G2", 2, vec![(1, 2)]), // placeholder, replaced below by the i<j rule
            ("G3", 3, vec![(-1, 1)]),
            ("G4", 4, vec![]),
        ],
        5 => vec![
            ("G1", 2, vec![(1, 1), (2, 1), (3, 1)]),
            ("G2", 2, vec![(-1, 2), (-2, 1)]),
            ("G3", 2, vec![(2, 2), (4, 1)]),
            ("G4", 3, vec![(-1, 1), (-3, 1)]),
            ("G5", 3, vec![(1, 1), (3, 1)]),
            ("G6", 3, vec![(-1, 2)]),
            ("G7", 3, vec![(-3, 2)]),
            ("G8", 4, vec![(1, 1)]),
            ("G9", 4, vec![(3, 1)]),
            ("G10", 5, vec![]),
        ],
        _ => unreachable!(),
    };

    let mut part_monomials: Vec<Vec<Monomial>> = vec![Vec::new(); patterns.len()];
    let mut eligible: Vec<Monomial> = Vec::new();
    'mono: for mono in enumerate_monomials(n, d)? {
        let counts = class_counts(&mono, d);
        for (pi, (name, head, tail)) in patterns.iter().enumerate() {
            // "two in S_i and two in S_j, i < j" is any pair of doubled
            // classes, not a cyclic pattern.
            let matched = if d == 4 && *name == "G2" {
                counts.iter().filter(|&&c| c == 2).count() == 2
            } else {
                (1..=d).any(|i| {
                    counts[cyc(i, 0)] == *head
                        && tail.iter().all(|&(off, mult)| counts[cyc(i, off)] == mult)
                })
            };
            if matched {
                part_monomials[pi].push(mono);
                continue 'mono;
            }
        }
        eligible.push(mono);
    }

    let preselected: u64 = part_monomials.iter().map(|p| p.len() as u64).sum();
    ensure(preselected <= target, || {
        format!("block families already exceed the half slice: {preselected} > {target}")
    })?;
    let need = target - preselected;

    // The block families alone need not cover every shadow monomial (for
    // d = 5 two offset patterns of the (3,2,1) class escape them), so the
    // selection step first spends free slots on eligible monomials that
    // close the remaining coverage gaps, then fills the rest by policy.
    let members: Vec<Monomial> = part_monomials.iter().flatten().copied().collect();
    let mut rng = match policy {
        SelectionPolicy::LexFirst => None,
        SelectionPolicy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let repaired = cover_shadows(n, d, &members, &eligible, &mut rng)?;
    ensure(repaired.len() as u64 <= need, || {
        format!(
            "coverage repair needs {} monomials but only {need} free slots remain",
            repaired.len()
        )
    })?;
    let repaired_bits: HashSet<u64> = repaired.iter().map(|m| m.bits()).collect();
    let remaining: Vec<Monomial> = eligible
        .iter()
        .filter(|m| !repaired_bits.contains(&m.bits()))
        .copied()
        .collect();
    let rest = match &mut rng {
        None => SelectionPolicy::LexFirst.select(&remaining, (need as usize) - repaired.len())?,
        Some(rng) => select_random(rng, &remaining, (need as usize) - repaired.len())?,
    };
    let mut fill = repaired;
    fill.extend(rest);
    fill.sort();
    let fill_name = format!("G{}", patterns.len() + 1);

    let mut all: Vec<Monomial> = part_monomials.iter().flatten().copied().collect();
    all.extend_from_slice(&fill);
    let slice = DegreeSlice::new(n, d, all)?;
    ensure(slice.len() as u64 == target, || {
        format!(
            "assembled {} generators, expected half slice {target}",
            slice.len()
        )
    })?;
    ensure(is_perfect(&slice)?, || {
        format!("pure-{d} output on {n} variables is not a perfect set")
    })?;
    let ideal = slice.generator_set();
    let verdict = is_f_ideal(&ideal)?;
    ensure(verdict, || {
        format!("pure-{d} output failed the f-ideal verification gate")
    })?;

    let mut parts: Vec<TracePart> = patterns
        .iter()
        .zip(part_monomials)
        .map(|((name, _, _), ms)| TracePart::new(name, ms))
        .collect();
    parts.push(TracePart::new(&fill_name, fill));
    let trace = ConstructionTrace {
        algorithm: format!("pure{d}"),
        n,
        policy: policy.describe(),
        free_choice_count: need,
        parts,
    };
    Ok(Construction { ideal, trace })
}

/// Newton complementary dual: the minimalized set of per-generator
/// complements. Requires every generator degree at most `n-2` so the dual
/// stays generated in degrees at least 2.
pub fn newton_dual(g: &GeneratorSet) -> Result<GeneratorSet> {
    let n = g.n();
    for m in g.gens() {
        if m.degree() + 2 > n {
            return Err(Error::UnsupportedIdeal(format!(
                "generator {m} has degree {} > n-2 = {}; its dual would have degree < 2",
                m.degree(),
                n as i64 - 2
            )));
        }
    }
    let duals: Vec<Monomial> = g.gens().iter().map(|m| complement_monomial(m, n)).collect();
    Ok(GeneratorSet::new(n, duals)?.minimalize())
}

fn pairs_of(indices: &[u32]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(indices.len() * indices.len().saturating_sub(1) / 2);
    for (a, &i) in indices.iter().enumerate() {
        for &j in &indices[a + 1..] {
            out.push(pair(i, j));
        }
    }
    out
}

fn triples_of(indices: &[u32]) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..indices.len() {
        for b in a + 1..indices.len() {
            for c in b + 1..indices.len() {
                out.push(triple(indices[a], indices[b], indices[c]));
            }
        }
    }
    out
}

fn odd_even_nonfaces(odds: &[u32], evens: &[u32]) -> Vec<Monomial> {
    let mut out = Vec::new();
    for &i in odds {
        for &j in evens {
            if i + 1 < j {
                out.push(pair(i, j));
            }
        }
    }
    out
}

/// All pairs on `1..=limit` outside `g1 ∪ nf`, each multiplied by the
/// special variable `special`.
fn pairs_times_last(special: u32, limit: u32, g1: &[Monomial], nf: &[Monomial]) -> Vec<Monomial> {
    let excluded: HashSet<u64> = g1.iter().chain(nf).map(|m| m.bits()).collect();
    let mut out = Vec::new();
    for i in 1..=limit {
        for j in i + 1..=limit {
            let p = pair(i, j);
            if !excluded.contains(&p.bits()) {
                out.push(p.with_var(special));
            }
        }
    }
    out
}

/// Upper bound on `k` so the ambient count stays within [`MAX_VARS`].
pub fn max_k_odd() -> u32 {
    (MAX_VARS - 1) / 2
}
