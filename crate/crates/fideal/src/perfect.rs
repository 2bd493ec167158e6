//! Lower/upper/perfect-set predicates on degree slices and the pure
//! f-ideal characterization: a set of `C(n,d)/2` degree-`d` monomials
//! generates a pure f-ideal exactly when it is perfect.
//!
//! Shadow coverage is tracked in bitmaps over the lexicographic ranks of
//! the neighbouring degree slices.

use crate::binom::{binomial, rank, Bitmap};
use crate::error::{Error, Result};
use crate::monomial::{check_ambient, GeneratorSet, Monomial};

/// A set of squarefree monomials all of one degree `d` over `x_1..x_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSlice {
    n: u32,
    d: u32,
    mons: Vec<Monomial>, // sorted, distinct
}

impl DegreeSlice {
    pub fn new(n: u32, d: u32, mons: impl IntoIterator<Item = Monomial>) -> Result<DegreeSlice> {
        check_ambient(n)?;
        if d > n {
            return Err(Error::InvalidArgument(format!("degree {d} outside 0..={n}")));
        }
        let mut mons: Vec<Monomial> = mons.into_iter().collect();
        mons.sort();
        mons.dedup();
        for m in &mons {
            if m.degree() != d {
                return Err(Error::InvalidArgument(format!(
                    "monomial {m} has degree {} in a degree-{d} slice",
                    m.degree()
                )));
            }
            if m.max_index() > n {
                return Err(Error::InvalidArgument(format!(
                    "monomial {m} uses an index above n = {n}"
                )));
            }
        }
        Ok(DegreeSlice { n, d, mons })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.mons
    }

    pub fn len(&self) -> usize {
        self.mons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mons.is_empty()
    }

    /// The generator set of the ideal spanned by this slice.
    pub fn generator_set(&self) -> GeneratorSet {
        GeneratorSet::new(self.n, self.mons.iter().copied())
            .expect("slice members are valid generators")
    }
}

/// Every monomial of degree `d-1` divides some member: the lower shadow
/// covers the whole slice below.
pub fn is_lower_perfect(a: &DegreeSlice) -> Result<bool> {
    if a.d == 0 {
        return Err(Error::InvalidArgument(
            "lower perfection is undefined in degree 0".into(),
        ));
    }
    let below = a.d - 1;
    let mut bm = Bitmap::new(binomial(a.n, below));
    for m in &a.mons {
        for v in m.indices() {
            bm.insert(rank(a.n, below, m.without_var(v).bits()));
        }
        if bm.is_full() {
            return Ok(true);
        }
    }
    Ok(bm.is_full())
}

/// Every monomial of degree `d+1` is divisible by some member: the upper
/// shadow covers the whole slice above.
pub fn is_upper_perfect(a: &DegreeSlice) -> Result<bool> {
    if a.d >= a.n {
        return Err(Error::InvalidArgument(
            "upper perfection is undefined in top degree".into(),
        ));
    }
    let above = a.d + 1;
    let mut bm = Bitmap::new(binomial(a.n, above));
    for m in &a.mons {
        for v in 1..=a.n {
            if !m.contains(v) {
                bm.insert(rank(a.n, above, m.with_var(v).bits()));
            }
        }
        if bm.is_full() {
            return Ok(true);
        }
    }
    Ok(bm.is_full())
}

/// Both lower perfect and upper perfect.
pub fn is_perfect(a: &DegreeSlice) -> Result<bool> {
    Ok(is_lower_perfect(a)? && is_upper_perfect(a)?)
}

/// Pure f-ideal test for a degree slice: exactly half the slice, and
/// perfect. An odd `C(n,d)` makes the generator count unattainable and is
/// reported as [`Error::StructurallyImpossible`], distinct from `false`.
pub fn is_pure_f_ideal(a: &DegreeSlice) -> Result<bool> {
    if a.d < 2 {
        return Err(Error::InvalidArgument(
            "pure f-ideals require generator degree at least 2".into(),
        ));
    }
    let total = binomial(a.n, a.d);
    if total % 2 != 0 {
        return Err(Error::StructurallyImpossible(format!(
            "C({},{}) = {total} is odd; no degree-{} pure f-ideal exists on {} variables",
            a.n, a.d, a.d, a.n
        )));
    }
    if a.len() as u64 != total / 2 {
        return Ok(false);
    }
    is_perfect(a)
}

/// Tri-state outcome used by reporting layers.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PureVerdict {
    Yes,
    No,
    Impossible,
}

impl PureVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            PureVerdict::Yes => "yes",
            PureVerdict::No => "no",
            PureVerdict::Impossible => "impossible",
        }
    }
}

/// [`is_pure_f_ideal`] folded into a tri-state answer.
pub fn pure_f_ideal_verdict(a: &DegreeSlice) -> Result<PureVerdict> {
    match is_pure_f_ideal(a) {
        Ok(true) => Ok(PureVerdict::Yes),
        Ok(false) => Ok(PureVerdict::No),
        Err(Error::StructurallyImpossible(_)) => Ok(PureVerdict::Impossible),
        Err(e) => Err(e),
    }
}
