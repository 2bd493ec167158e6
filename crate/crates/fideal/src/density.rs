//! Exact enumeration and seeded Monte Carlo estimation of lower-perfect,
//! upper-perfect, perfect and f-ideal densities among half-slice ideals,
//! plus the closed-form density bounds.
//!
//! Sampling draws uniform `m`-subsets of the degree slice (over
//! lexicographic ranks) with one ChaCha stream per trial, so results are
//! bit-identical for a fixed `(n, d, trials, seed)` no matter how the
//! trials are scheduled across threads.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::binom::{binomial, binomial_capped};
use crate::complex::is_f_ideal;
use crate::error::{Error, Result};
use crate::monomial::{check_ambient, enumerate_monomials, Monomial};
use crate::perfect::{is_lower_perfect, is_pure_f_ideal, is_upper_perfect, DegreeSlice};

/// Default cap on the number of subsets exact enumeration will walk.
pub const DEFAULT_EXACT_BUDGET: u64 = 1_000_000;

const WILSON_Z: f64 = 1.959963984540054; // 95% two-sided normal quantile

/// Predicate counts over every half-slice subset.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactCounts {
    pub total: u64,
    pub lp: u64,
    pub up: u64,
    pub perfect: u64,
    pub fideal: u64,
}

/// Which density a [`DensityEstimate`] refers to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityKind {
    Lp,
    Up,
    Perfect,
    Fideal,
}

/// A sampled (or exact) density with its 95% Wilson interval.
#[derive(Copy, Clone, Debug, Serialize)]
pub struct DensityEstimate {
    pub kind: DensityKind,
    pub fraction: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials: u64,
    pub seed: u64,
}

fn check_params(n: u32, d: u32) -> Result<u64> {
    check_ambient(n)?;
    if d < 2 || d > n {
        return Err(Error::InvalidArgument(format!(
            "degree d = {d} outside 2..={n}"
        )));
    }
    let total = binomial(n, d);
    if total % 2 != 0 {
        return Err(Error::StructurallyImpossible(format!(
            "C({n},{d}) = {total} is odd; the half-slice generator count does not exist"
        )));
    }
    Ok(total)
}

/// Walk every `m = C(n,d)/2` subset of the degree slice and count the four
/// predicates. The f-ideal verdict goes through the degree-balance route,
/// independent of the shadow-coverage predicates, and must agree with the
/// perfect count.
pub fn enumerate_exact(n: u32, d: u32, budget: u64) -> Result<ExactCounts> {
    let slice_size = check_params(n, d)?;
    let m = slice_size / 2;
    let total = binomial_capped(slice_size, m, budget).ok_or_else(|| {
        Error::TooLarge(format!(
            "C({slice_size},{m}) subsets exceed the exact-enumeration budget {budget}"
        ))
    })?;
    let monomials = enumerate_monomials(n, d)?;

    let mut counts = ExactCounts { total, lp: 0, up: 0, perfect: 0, fideal: 0 };
    // Lexicographic enumeration of m-element index subsets.
    let mut idx: Vec<usize> = (0..m as usize).collect();
    loop {
        let chosen: Vec<Monomial> = idx.iter().map(|&i| monomials[i]).collect();
        let slice = DegreeSlice::new(n, d, chosen.iter().copied())?;
        let lp = is_lower_perfect(&slice)?;
        let up = is_upper_perfect(&slice)?;
        let fideal = is_f_ideal(&slice.generator_set())?;
        counts.lp += lp as u64;
        counts.up += up as u64;
        counts.perfect += (lp && up) as u64;
        counts.fideal += fideal as u64;
        assert_eq!(
            lp && up,
            fideal,
            "perfect/f-ideal disagreement on a half slice (n={n}, d={d})"
        );

        // Advance to the next subset.
        let k = m as usize;
        let nn = slice_size as usize;
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(counts);
            }
            i -= 1;
            if idx[i] != i + nn - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[derive(Copy, Clone, Default)]
struct TrialCounts {
    lp: u64,
    up: u64,
    perfect: u64,
    fideal: u64,
}

impl TrialCounts {
    fn add(self, o: TrialCounts) -> TrialCounts {
        TrialCounts {
            lp: self.lp + o.lp,
            up: self.up + o.up,
            perfect: self.perfect + o.perfect,
            fideal: self.fideal + o.fideal,
        }
    }
}

/// Floyd's algorithm: a uniform `m`-subset of `0..total`.
fn sample_ranks(rng: &mut ChaCha8Rng, total: u64, m: u64) -> Vec<u64> {
    let mut chosen = std::collections::HashSet::with_capacity(m as usize);
    for j in total - m..total {
        let t = rng.random_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    chosen.into_iter().collect()
}

fn run_trial(
    n: u32,
    d: u32,
    monomials: &[Monomial],
    m: u64,
    seed: u64,
    trial: u64,
) -> TrialCounts {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let ranks = sample_ranks(&mut rng, monomials.len() as u64, m);
    let chosen = ranks.iter().map(|&r| monomials[r as usize]);
    let slice = DegreeSlice::new(n, d, chosen).expect("sampled ranks are valid");
    let lp = is_lower_perfect(&slice).expect("d >= 2");
    let up = is_upper_perfect(&slice).expect("d < n");
    // For an exact half slice in one degree, the f-ideal property is the
    // perfect-set property; is_pure_f_ideal is that characterization.
    let fideal = is_pure_f_ideal(&slice).expect("parity was checked");
    debug_assert_eq!(fideal, lp && up);
    TrialCounts {
        lp: lp as u64,
        up: up as u64,
        perfect: (lp && up) as u64,
        fideal: fideal as u64,
    }
}

/// 95% Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    assert!(trials > 0);
    let nf = trials as f64;
    let p = successes as f64 / nf;
    let z = WILSON_Z;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let center = (p + z2 / (2.0 * nf)) / denom;
    let half = z * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Estimate all four densities from `trials` uniform half-slice draws.
/// Bit-for-bit reproducible for fixed `(n, d, trials, seed)` regardless of
/// how many worker threads run the trials.
pub fn sample_densities(n: u32, d: u32, trials: u64, seed: u64) -> Result<Vec<DensityEstimate>> {
    let slice_size = check_params(n, d)?;
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let m = slice_size / 2;
    let monomials = enumerate_monomials(n, d)?;

    let sums = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(n, d, &monomials, m, seed, t))
        .reduce(TrialCounts::default, TrialCounts::add);

    let est = |kind: DensityKind, successes: u64| {
        let (lo, hi) = wilson_interval(successes, trials);
        DensityEstimate {
            kind,
            fraction: successes as f64 / trials as f64,
            ci_low: lo,
            ci_high: hi,
            trials,
            seed,
        }
    };
    Ok(vec![
        est(DensityKind::Lp, sums.lp),
        est(DensityKind::Up, sums.up),
        est(DensityKind::Perfect, sums.perfect),
        est(DensityKind::Fideal, sums.fideal),
    ])
}

fn ln_binomial(a: f64, b: f64) -> f64 {
    if b < 0.0 || b > a {
        return f64::NEG_INFINITY;
    }
    libm::lgamma(a + 1.0) - libm::lgamma(b + 1.0) - libm::lgamma(a - b + 1.0)
}

/// Union-bound lower bound on the lower-perfect density:
/// `1 - C(n,d-1) * C(2m-n+d-1, m) / C(2m, m)` with `m = C(n,d)/2`,
/// evaluated in log space and clamped to `[0, 1]`. When the shifted
/// binomial has top below bottom it vanishes and the bound degenerates
/// to 1.
pub fn lp_lower_bound(n: u32, d: u32) -> Result<f64> {
    let slice_size = check_params(n, d)?;
    let m = (slice_size / 2) as i128;
    let t = 2 * m - n as i128 + d as i128 - 1;
    if t < m {
        return Ok(1.0);
    }
    let ln_fail = (binomial(n, d - 1) as f64).ln() + ln_binomial(t as f64, m as f64)
        - ln_binomial(2.0 * m as f64, m as f64);
    Ok((1.0 - ln_fail.exp()).clamp(0.0, 1.0))
}

/// Closed-form upper bound on the probability that a uniform half slice
/// covers every block `u_p`: `[1 - ((m-n)/(2m-n))^(d+1)]^l` with
/// `l = floor(n/(d+1))`. Upper-bounds the upper-perfect density. Requires
/// `m > n` to be meaningful.
pub fn up_cover_bound(n: u32, d: u32) -> Result<f64> {
    let slice_size = check_params(n, d)?;
    let m = slice_size / 2;
    if m <= n as u64 {
        return Err(Error::UndefinedBound(format!(
            "m = {m} <= n = {n}: the cover bound is undefined"
        )));
    }
    let l = n / (d + 1);
    let inner = (m - n as u64) as f64 / (2 * m - n as u64) as f64;
    let per_block = 1.0 - inner.powi(d as i32 + 1);
    Ok(per_block.powi(l as i32).clamp(0.0, 1.0))
}

/// One row of the density trend table.
#[derive(Clone, Debug, Serialize)]
pub struct TrendRow {
    pub n: u32,
    pub d: u32,
    pub mode: String, // "exact" | "sample" | "impossible"
    pub trials: u64,
    pub seed: u64,
    pub lp: Option<f64>,
    pub lp_lo: Option<f64>,
    pub lp_hi: Option<f64>,
    pub up: Option<f64>,
    pub up_lo: Option<f64>,
    pub up_hi: Option<f64>,
    pub perfect: Option<f64>,
    pub fideal: Option<f64>,
    pub lp_bound: Option<f64>,
    pub up_bound: Option<f64>,
}

pub const TREND_CSV_HEADER: &str =
    "n,d,mode,trials,seed,lp,lp_lo,lp_hi,up,up_lo,up_hi,perfect,fideal,lp_bound,up_bound";

fn csv_f64(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_default()
}

impl TrendRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.d,
            self.mode,
            self.trials,
            self.seed,
            csv_f64(self.lp),
            csv_f64(self.lp_lo),
            csv_f64(self.lp_hi),
            csv_f64(self.up),
            csv_f64(self.up_lo),
            csv_f64(self.up_hi),
            csv_f64(self.perfect),
            csv_f64(self.fideal),
            csv_f64(self.lp_bound),
            csv_f64(self.up_bound),
        )
    }
}

/// Densities and bounds for each `n`, exact when the subset count fits the
/// budget and sampled otherwise. Parity failures are reported per row.
pub fn trend_report(
    d: u32,
    ns: &[u32],
    trials: u64,
    seed: u64,
    budget: u64,
) -> Result<Vec<TrendRow>> {
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let slice_size = match check_params(n, d) {
            Ok(s) => s,
            Err(Error::StructurallyImpossible(_)) => {
                rows.push(TrendRow {
                    n,
                    d,
                    mode: "impossible".into(),
                    trials: 0,
                    seed,
                    lp: None,
                    lp_lo: None,
                    lp_hi: None,
                    up: None,
                    up_lo: None,
                    up_hi: None,
                    perfect: None,
                    fideal: None,
                    lp_bound: None,
                    up_bound: None,
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let m = slice_size / 2;
        let lp_bound = Some(lp_lower_bound(n, d)?);
        let up_bound = match up_cover_bound(n, d) {
            Ok(b) => Some(b),
            Err(Error::UndefinedBound(_)) => None,
            Err(e) => return Err(e),
        };
        if binomial_capped(slice_size, m, budget).is_some() {
            let c = enumerate_exact(n, d, budget)?;
            let frac = |x: u64| Some(x as f64 / c.total as f64);
            rows.push(TrendRow {
                n,
                d,
                mode: "exact".into(),
                trials: c.total,
                seed,
                lp: frac(c.lp),
                lp_lo: frac(c.lp),
                lp_hi: frac(c.lp),
                up: frac(c.up),
                up_lo: frac(c.up),
                up_hi: frac(c.up),
                perfect: frac(c.perfect),
                fideal: frac(c.fideal),
                lp_bound,
                up_bound,
            });
        } else {
            let est = sample_densities(n, d, trials, seed)?;
            let get = |k: DensityKind| est.iter().find(|e| e.kind == k).copied().unwrap();
            let lp = get(DensityKind::Lp);
            let up = get(DensityKind::Up);
            rows.push(TrendRow {
                n,
                d,
                mode: "sample".into(),
                trials,
                seed,
                lp: Some(lp.fraction),
                lp_lo: Some(lp.ci_low),
                lp_hi: Some(lp.ci_high),
                up: Some(up.fraction),
                up_lo: Some(up.ci_low),
                up_hi: Some(up.ci_high),
                perfect: Some(get(DensityKind::Perfect).fraction),
                fideal: Some(get(DensityKind::Fideal).fraction),
                lp_bound,
                up_bound,
            });
        }
    }
    Ok(rows)
}
