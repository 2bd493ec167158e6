//! f-vectors of the Stanley-Reisner and facet complexes of a squarefree
//! monomial ideal, the ABCD degree partition, and the f-ideal verdict.
//!
//! Everything is counted degree by degree over ranked slices; face lists are
//! never materialized. Two coverage cascades do all the work:
//!
//! * the *upward* closure (divisible by some generator = in the ideal),
//!   grown one degree at a time from the generators, and
//! * the *downward* closure (divides some minimal generator), shrunk one
//!   degree at a time from the generators.
//!
//! The upward cascade stops at `max_degree + 1`: when that slice is fully
//! covered, every higher slice is too, so the remaining rows of the ABCD
//! table are forced; when it is not, the verdict is already negative at
//! that degree.

use std::fmt;

use serde::Serialize;

use crate::binom::{binomial, rank, Bitmap};
use crate::error::{Error, Result};
use crate::monomial::{GeneratorSet, Monomial};

/// Largest slice (in ranks) the coverage bitmaps will allocate.
const SLICE_BUDGET: u64 = 1 << 31;

/// Face counts `(f_-1, f_0, ..., f_dim)` of a nonempty simplicial complex,
/// with the convention `f_-1 = 1`.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct FVector(Vec<u64>);

impl FVector {
    fn from_counts(counts: Vec<u64>) -> FVector {
        debug_assert!(counts.first() == Some(&1));
        debug_assert!(counts.last().map(|&c| c > 0).unwrap_or(false));
        FVector(counts)
    }

    /// Full vector including `f_-1`.
    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    /// The tail `(f_0, f_1, ...)` without the conventional `f_-1` entry.
    pub fn tail(&self) -> &[u64] {
        &self.0[1..]
    }

    /// Dimension of the complex; `(1, n)` has dimension 0.
    pub fn dim(&self) -> i32 {
        self.0.len() as i32 - 2
    }
}

impl fmt::Debug for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{:?}", self.0)
    }
}

/// One degree row of the ABCD partition: counts of nonfaces untouched by
/// the ideal (a), proper divisors of generators outside the ideal (b),
/// generators (c), and non-generator ideal members (d).
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AbcdRow {
    pub degree: u32,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

/// The ABCD partition, degree by degree.
///
/// Rows are stored exactly for degrees `0..=cutoff` where `cutoff` is
/// `min(n, max generator degree + 1)`. When `tail_in_ideal` is true every
/// higher slice lies inside the ideal, so those rows are `(0, 0, 0, C(n,d))`
/// and [`AbcdTable::row`] synthesizes them on demand.
#[derive(Clone, Debug)]
pub struct AbcdTable {
    n: u32,
    rows: Vec<AbcdRow>,
    tail_in_ideal: bool,
}

impl AbcdTable {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Exactly computed rows, degrees `0..=cutoff`.
    pub fn computed_rows(&self) -> &[AbcdRow] {
        &self.rows
    }

    pub fn cutoff(&self) -> u32 {
        self.rows.last().map(|r| r.degree).unwrap_or(0)
    }

    /// Whether all degrees above the cutoff are fully contained in the ideal.
    pub fn tail_in_ideal(&self) -> bool {
        self.tail_in_ideal
    }

    /// The row for any degree `0..=n`, when determined.
    pub fn row(&self, degree: u32) -> Option<AbcdRow> {
        if degree > self.n {
            return None;
        }
        if let Some(r) = self.rows.get(degree as usize) {
            return Some(*r);
        }
        if self.tail_in_ideal {
            Some(AbcdRow { degree, a: 0, b: 0, c: 0, d: binomial(self.n, degree) })
        } else {
            None
        }
    }

    /// Degree balance: `a_d = c_d` for every degree `0..=n`.
    pub fn is_balanced(&self) -> bool {
        self.rows.iter().all(|r| r.a == r.c)
            && (self.tail_in_ideal || self.cutoff() == self.n)
    }

    /// All rows `0..=n` when every row is determined.
    pub fn full_rows(&self) -> Option<Vec<AbcdRow>> {
        (0..=self.n).map(|d| self.row(d)).collect()
    }
}

/// Combined verification output: both f-vectors, the ABCD table and the
/// verdict.
#[derive(Clone, Debug)]
pub struct FIdealReport {
    pub n: u32,
    pub generators: usize,
    pub sr: FVector,
    pub facet: FVector,
    pub abcd: AbcdTable,
    pub f_ideal: bool,
}

/// Ideal membership: some generator divides `m`.
pub fn in_ideal(g: &GeneratorSet, m: &Monomial) -> bool {
    g.contains_in_ideal(m)
}

fn check_supported(g: &GeneratorSet) -> Result<()> {
    if g.is_empty() {
        return Err(Error::UnsupportedIdeal(
            "empty generator set: the zero ideal has no facet complex".into(),
        ));
    }
    if g.min_degree() < 2 {
        return Err(Error::UnsupportedIdeal(
            "generators must all have degree at least 2".into(),
        ));
    }
    Ok(())
}

fn slice_bitmap(n: u32, d: u32) -> Result<Bitmap> {
    let len = binomial(n, d);
    if len > SLICE_BUDGET {
        return Err(Error::TooLarge(format!(
            "degree slice C({n},{d}) = {len} exceeds the coverage budget"
        )));
    }
    Ok(Bitmap::new(len))
}

/// Grow the in-ideal coverage bitmap from degree `d-1` to degree `d`.
fn grow_up(n: u32, d: u32, below: &Bitmap, gens_d: &[Monomial]) -> Result<Bitmap> {
    let mut bm = slice_bitmap(n, d)?;
    for r in below.iter() {
        let m = Monomial::from_bits(crate::binom::unrank(n, d - 1, r));
        for v in 1..=n {
            if !m.contains(v) {
                bm.insert(rank(n, d, m.with_var(v).bits()));
            }
        }
    }
    for g in gens_d {
        bm.insert(rank(n, d, g.bits()));
    }
    Ok(bm)
}

/// Shrink the divides-a-generator bitmap from degree `d+1` to degree `d`.
fn grow_down(n: u32, d: u32, above: &Bitmap, gens_d: &[Monomial]) -> Result<Bitmap> {
    let mut bm = slice_bitmap(n, d)?;
    for r in above.iter() {
        let m = Monomial::from_bits(crate::binom::unrank(n, d + 1, r));
        for v in m.indices() {
            bm.insert(rank(n, d, m.without_var(v).bits()));
        }
    }
    for g in gens_d {
        bm.insert(rank(n, d, g.bits()));
    }
    Ok(bm)
}

fn gens_by_degree(g: &GeneratorSet) -> Vec<Vec<Monomial>> {
    let mut by_deg: Vec<Vec<Monomial>> = vec![Vec::new(); g.max_degree() as usize + 1];
    for m in g.gens() {
        by_deg[m.degree() as usize].push(*m);
    }
    by_deg
}

/// f-vector of the Stanley-Reisner complex: faces of degree `d` are the
/// monomials of degree `d` not contained in the ideal.
pub fn sr_fvector(g: &GeneratorSet) -> Result<FVector> {
    check_supported(g)?;
    let n = g.n();
    let by_deg = gens_by_degree(g);
    let mut counts = vec![1u64]; // f_-1: the unit is never in a proper ideal
    let mut covered = Bitmap::new(1); // degree-0 slice, unit uncovered
    for d in 1..=n {
        let empty = Vec::new();
        let gens_d = by_deg.get(d as usize).unwrap_or(&empty);
        covered = grow_up(n, d, &covered, gens_d)?;
        let faces = binomial(n, d) - covered.count();
        if faces == 0 {
            break; // downward-closed: every higher degree is covered too
        }
        counts.push(faces);
    }
    Ok(FVector::from_counts(counts))
}

/// f-vector of the facet complex: faces of degree `d` are the monomials
/// dividing some minimal generator.
pub fn facet_fvector(g: &GeneratorSet) -> Result<FVector> {
    check_supported(g)?;
    let g = if g.is_minimal() { g.clone() } else { g.minimalize() };
    let n = g.n();
    let maxdeg = g.max_degree();
    let by_deg = gens_by_degree(&g);
    // Count from the top degree downward.
    let mut counts_rev: Vec<u64> = Vec::with_capacity(maxdeg as usize + 1);
    let mut div = slice_bitmap(n, maxdeg)?;
    for m in &by_deg[maxdeg as usize] {
        div.insert(rank(n, maxdeg, m.bits()));
    }
    counts_rev.push(div.count());
    for d in (0..maxdeg).rev() {
        if div.is_full() {
            // Everything below a fully covered level is covered as well.
            for dd in (0..=d).rev() {
                counts_rev.push(binomial(n, dd));
            }
            break;
        }
        let empty = Vec::new();
        let gens_d = by_deg.get(d as usize).unwrap_or(&empty);
        div = grow_down(n, d, &div, gens_d)?;
        counts_rev.push(div.count());
    }
    counts_rev.reverse();
    Ok(FVector::from_counts(counts_rev))
}

/// Classify every squarefree monomial per degree into the four classes.
/// Requires a minimal generator set (minimalizes on the fly otherwise).
pub fn abcd_partition(g: &GeneratorSet) -> Result<AbcdTable> {
    check_supported(g)?;
    let g = if g.is_minimal() { g.clone() } else { g.minimalize() };
    let n = g.n();
    let maxdeg = g.max_degree();
    let cutoff = (maxdeg + 1).min(n);
    let by_deg = gens_by_degree(&g);
    let empty = Vec::new();
    let gd = |d: u32| by_deg.get(d as usize).unwrap_or(&empty);

    // Upward closure counts for degrees 0..=cutoff. A fully covered level
    // covers everything above it.
    let mut covered_counts = vec![0u64; cutoff as usize + 1];
    let mut covered = Bitmap::new(1);
    let mut saturated = false;
    for d in 1..=cutoff {
        if saturated {
            covered_counts[d as usize] = binomial(n, d);
            continue;
        }
        covered = grow_up(n, d, &covered, gd(d))?;
        covered_counts[d as usize] = covered.count();
        saturated = covered.is_full();
    }
    let tail_in_ideal = cutoff == n || covered_counts[cutoff as usize] == binomial(n, cutoff);

    // Downward closure counts for degrees 0..=maxdeg. Once a level is
    // fully covered every level below it is too (extend, then divide),
    // so the cascade can stop there.
    let mut divisor_counts = vec![0u64; maxdeg as usize + 1];
    let mut div = slice_bitmap(n, maxdeg)?;
    for m in gd(maxdeg) {
        div.insert(rank(n, maxdeg, m.bits()));
    }
    divisor_counts[maxdeg as usize] = div.count();
    for d in (0..maxdeg).rev() {
        if div.is_full() {
            for dd in 0..=d {
                divisor_counts[dd as usize] = binomial(n, dd);
            }
            break;
        }
        div = grow_down(n, d, &div, gd(d))?;
        divisor_counts[d as usize] = div.count();
    }

    let mut rows = Vec::with_capacity(cutoff as usize + 1);
    for d in 0..=cutoff {
        let total = binomial(n, d);
        let c = gd(d).len() as u64;
        let in_ideal = covered_counts[d as usize];
        let dividing = divisor_counts.get(d as usize).copied().unwrap_or(0);
        // A monomial of the ideal never strictly divides a minimal
        // generator, so the dividing set is exactly B ∪ C.
        let b = dividing - c;
        let dd = in_ideal - c;
        let a = total - in_ideal - b;
        rows.push(AbcdRow { degree: d, a, b, c, d: dd });
    }
    Ok(AbcdTable { n, rows, tail_in_ideal })
}

fn cross_check_enabled() -> bool {
    cfg!(debug_assertions) || std::env::var_os("FIDEAL_CROSS_CHECK").is_some()
}

/// The f-ideal verdict via the degree-balance criterion `#A_d = #C_d`.
///
/// In debug builds (and in release with `FIDEAL_CROSS_CHECK` set) the
/// verdict is cross-checked against direct f-vector equality whenever the
/// ambient size keeps that computation cheap.
pub fn is_f_ideal(g: &GeneratorSet) -> Result<bool> {
    let table = abcd_partition(g)?;
    let verdict = table.is_balanced();
    if cross_check_enabled() && g.n() <= 24 {
        let g = if g.is_minimal() { g.clone() } else { g.minimalize() };
        let direct = sr_fvector(&g)? == facet_fvector(&g)?;
        assert_eq!(
            verdict, direct,
            "degree-balance verdict disagrees with direct f-vector equality"
        );
    }
    Ok(verdict)
}

/// Full verification report: ABCD table, both f-vectors, verdict.
pub fn f_ideal_report(g: &GeneratorSet) -> Result<FIdealReport> {
    check_supported(g)?;
    let g = if g.is_minimal() { g.clone() } else { g.minimalize() };
    let abcd = abcd_partition(&g)?;
    let sr = sr_fvector(&g)?;
    let facet = facet_fvector(&g)?;
    let f_ideal = abcd.is_balanced();
    // Self-check: the two verdict routes must agree.
    assert_eq!(
        f_ideal,
        sr == facet,
        "degree-balance verdict disagrees with direct f-vector equality"
    );
    Ok(FIdealReport { n: g.n(), generators: g.len(), sr, facet, abcd, f_ideal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;

    fn m(idx: &[u32]) -> Monomial {
        Monomial::from_indices(idx).unwrap()
    }

    fn gset(n: u32, gens: &[&[u32]]) -> GeneratorSet {
        GeneratorSet::new(n, gens.iter().map(|v| m(v))).unwrap()
    }

    #[test]
    fn in_ideal_examples() {
        let g = gset(3, &[&[1, 2]]);
        assert!(in_ideal(&g, &m(&[1, 2, 3])));
        assert!(!in_ideal(&g, &m(&[1, 3])));
        let empty = GeneratorSet::new(3, []).unwrap();
        assert!(!in_ideal(&empty, &m(&[1, 2])));
    }

    #[test]
    fn sr_single_edge() {
        let g = gset(2, &[&[1, 2]]);
        assert_eq!(sr_fvector(&g).unwrap().counts(), &[1, 2]);
    }

    #[test]
    fn facet_single_edge() {
        let g = gset(2, &[&[1, 2]]);
        assert_eq!(facet_fvector(&g).unwrap().counts(), &[1, 2, 1]);
    }

    #[test]
    fn three_edge_path_matching_mix() {
        // n=4, edges {1,2},{3,4},{1,3}: 3 of 6 pairs survive outside the
        // ideal, and divisors of the three edges give 4 vertices, 3 edges.
        let g = gset(4, &[&[1, 2], &[3, 4], &[1, 3]]);
        assert_eq!(sr_fvector(&g).unwrap().counts(), &[1, 4, 3]);
        assert_eq!(facet_fvector(&g).unwrap().counts(), &[1, 4, 3]);
        assert!(is_f_ideal(&g).unwrap());
    }

    #[test]
    fn star_is_not_f_ideal() {
        let g = gset(4, &[&[1, 2], &[1, 3], &[1, 4]]);
        assert!(!is_f_ideal(&g).unwrap());
    }

    #[test]
    fn abcd_single_edge() {
        let g = gset(2, &[&[1, 2]]);
        let t = abcd_partition(&g).unwrap();
        let r1 = t.row(1).unwrap();
        assert_eq!((r1.a, r1.b, r1.c, r1.d), (0, 2, 0, 0));
        let r2 = t.row(2).unwrap();
        assert_eq!((r2.a, r2.b, r2.c, r2.d), (0, 0, 1, 0));
        assert!(t.row(0).unwrap().a == 0);
    }

    #[test]
    fn degree_one_generator_rejected() {
        let g = gset(3, &[&[1], &[2, 3]]);
        assert!(matches!(sr_fvector(&g), Err(Error::UnsupportedIdeal(_))));
        assert!(matches!(is_f_ideal(&g), Err(Error::UnsupportedIdeal(_))));
    }

    #[test]
    fn empty_ideal_rejected() {
        let g = GeneratorSet::new(3, []).unwrap();
        assert!(matches!(is_f_ideal(&g), Err(Error::UnsupportedIdeal(_))));
    }

    #[test]
    fn unit_generator_rejected() {
        let g = GeneratorSet::new(3, [Monomial::UNIT]).unwrap();
        assert!(matches!(is_f_ideal(&g), Err(Error::UnsupportedIdeal(_))));
    }

    #[test]
    fn partition_identity_rows_sum() {
        let g = gset(5, &[&[1, 2], &[2, 3, 4], &[4, 5]]);
        let t = abcd_partition(&g).unwrap();
        for d in 0..=5 {
            let r = t.row(d).unwrap();
            assert_eq!(r.a + r.b + r.c + r.d, binomial(5, d), "degree {d}");
        }
    }

    #[test]
    fn non_minimal_input_is_minimalized() {
        let g = gset(4, &[&[1, 2], &[1, 2, 3], &[3, 4], &[1, 3]]);
        assert!(!g.is_minimal());
        assert!(is_f_ideal(&g).unwrap());
        let t = abcd_partition(&g).unwrap();
        assert_eq!(t.row(2).unwrap().c, 3);
    }
}
