//! Squarefree monomials as variable-index subsets, and generator sets.
//!
//! A squarefree monomial over `x_1..x_n` is identified with its support,
//! a subset of `{1..n}`. Indices are 1-based at every external interface.
//! The canonical order everywhere is lexicographic on the sorted index
//! tuple; it is the tie-break used by every "select monomials" step.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::binom::{binomial, unrank};
use crate::error::{Error, Result};

/// Largest supported ambient variable count. Every algorithm precondition
/// in scope fits well inside this envelope.
pub const MAX_VARS: u32 = 64;

/// A squarefree monomial: bit `i-1` set means `x_i` divides the monomial.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    bits: u64,
}

impl Monomial {
    /// The unit monomial (degree 0).
    pub const UNIT: Monomial = Monomial { bits: 0 };

    /// Build from 1-based variable indices. Rejects indices outside
    /// `1..=64` and duplicates.
    pub fn from_indices(indices: &[u32]) -> Result<Monomial> {
        let mut bits = 0u64;
        for &i in indices {
            if i == 0 || i > MAX_VARS {
                return Err(Error::InvalidArgument(format!(
                    "variable index {i} outside 1..={MAX_VARS}"
                )));
            }
            let mask = 1u64 << (i - 1);
            if bits & mask != 0 {
                return Err(Error::InvalidArgument(format!(
                    "duplicate variable index {i}"
                )));
            }
            bits |= mask;
        }
        Ok(Monomial { bits })
    }

    pub(crate) fn from_bits(bits: u64) -> Monomial {
        Monomial { bits }
    }

    pub(crate) fn bits(&self) -> u64 {
        self.bits
    }

    /// Number of variables in the support.
    pub fn degree(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_unit(&self) -> bool {
        self.bits == 0
    }

    /// 1-based indices in ascending order.
    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() + 1;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn contains(&self, index: u32) -> bool {
        index >= 1 && index <= MAX_VARS && self.bits & (1u64 << (index - 1)) != 0
    }

    pub fn max_index(&self) -> u32 {
        if self.bits == 0 {
            0
        } else {
            64 - self.bits.leading_zeros()
        }
    }

    /// Monomial divisibility: support inclusion.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.bits & !other.bits == 0
    }

    /// Multiply by `x_index` (index must not already occur).
    pub fn with_var(&self, index: u32) -> Monomial {
        debug_assert!(index >= 1 && index <= MAX_VARS && !self.contains(index));
        Monomial { bits: self.bits | (1u64 << (index - 1)) }
    }

    /// Divide by `x_index` (index must occur).
    pub fn without_var(&self, index: u32) -> Monomial {
        debug_assert!(self.contains(index));
        Monomial { bits: self.bits & !(1u64 << (index - 1)) }
    }

    /// The Newton complement `x_1..x_n / m`: support is `{1..n} \ supp(m)`.
    pub fn complement(&self, n: u32) -> Monomial {
        assert!(n >= 1 && n <= MAX_VARS, "ambient n outside 1..={MAX_VARS}");
        assert!(self.max_index() <= n, "monomial uses an index above n");
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Monomial { bits: full & !self.bits }
    }
}

impl Ord for Monomial {
    /// Lexicographic order on the sorted index tuple; shorter prefixes come
    /// first ({1} < {1,2} < {1,3} < {2}).
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.indices().cmp(other.indices())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{i}")?;
        }
        Ok(())
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.degree() as usize))?;
        for i in self.indices() {
            seq.serialize_element(&i)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Monomial, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Monomial;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an array of 1-based variable indices")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Monomial, A::Error> {
                let mut indices = Vec::new();
                while let Some(i) = seq.next_element::<u32>()? {
                    indices.push(i);
                }
                Monomial::from_indices(&indices).map_err(de::Error::custom)
            }
        }
        deserializer.deserialize_seq(V)
    }
}

/// All `C(n,d)` squarefree monomials of degree `d` over `x_1..x_n`, in
/// lexicographic order of their sorted index tuples. `d = 0` yields the
/// unit monomial.
pub fn enumerate_monomials(n: u32, d: u32) -> Result<Vec<Monomial>> {
    check_ambient(n)?;
    if d > n {
        return Err(Error::InvalidArgument(format!(
            "degree {d} outside 0..={n}"
        )));
    }
    let total = binomial(n, d);
    let mut out = Vec::with_capacity(total as usize);
    for r in 0..total {
        out.push(Monomial::from_bits(unrank(n, d, r)));
    }
    Ok(out)
}

pub(crate) fn check_ambient(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("ambient n must be positive".into()));
    }
    if n > MAX_VARS {
        return Err(Error::InvalidArgument(format!(
            "ambient n = {n} exceeds the supported limit {MAX_VARS}"
        )));
    }
    Ok(())
}

/// A finite set of squarefree monomials generating a monomial ideal,
/// together with the ambient variable count.
#[derive(Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    n: u32,
    gens: Vec<Monomial>, // sorted lex, no duplicates
    minimal: bool,
}

impl GeneratorSet {
    /// Build a generator set; sorts, removes duplicates, and validates that
    /// every index fits inside `1..=n`. Equi-generated sets are marked
    /// minimal (distinct monomials of one degree never divide each other);
    /// anything else starts with `minimal = false` until [`minimalize`]d.
    ///
    /// [`minimalize`]: GeneratorSet::minimalize
    pub fn new(n: u32, gens: impl IntoIterator<Item = Monomial>) -> Result<GeneratorSet> {
        check_ambient(n)?;
        let mut gens: Vec<Monomial> = gens.into_iter().collect();
        gens.sort();
        gens.dedup();
        for g in &gens {
            if g.max_index() > n {
                return Err(Error::InvalidArgument(format!(
                    "generator {g} uses an index above n = {n}"
                )));
            }
        }
        let equigenerated = gens
            .windows(2)
            .all(|w| w[0].degree() == w[1].degree());
        let minimal = !gens.is_empty() && equigenerated;
        Ok(GeneratorSet { n, gens, minimal })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Whether the set is known to be an antichain under divisibility.
    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(|g| g.degree()).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> u32 {
        self.gens.iter().map(|g| g.degree()).min().unwrap_or(0)
    }

    /// Remove duplicates and every monomial strictly divisible by another
    /// member. The result generates the same ideal and is minimal.
    pub fn minimalize(&self) -> GeneratorSet {
        if self.minimal {
            return self.clone();
        }
        // Ascending degree: a monomial can only be divided by one of
        // strictly smaller degree (duplicates are already gone).
        let mut by_degree = self.gens.clone();
        by_degree.sort_by_key(|m| m.degree());
        let mut kept: Vec<Monomial> = Vec::with_capacity(by_degree.len());
        for m in by_degree {
            if !kept.iter().any(|k| k.degree() < m.degree() && k.divides(&m)) {
                kept.push(m);
            }
        }
        kept.sort();
        GeneratorSet { n: self.n, gens: kept, minimal: true }
    }

    /// Membership in the generated ideal: some generator divides `m`.
    pub fn contains_in_ideal(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Per-degree generator counts, indexed 0..=max_degree.
    pub fn degree_histogram(&self) -> Vec<u64> {
        let mut hist = vec![0u64; self.max_degree() as usize + 1];
        for g in &self.gens {
            hist[g.degree() as usize] += 1;
        }
        hist
    }
}

impl fmt::Debug for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GeneratorSet(n={}, {} gens)", self.n, self.gens.len())
    }
}

impl Serialize for GeneratorSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("GeneratorSet", 2)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("generators", &self.gens)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for GeneratorSet {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<GeneratorSet, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: u32,
            generators: Vec<Monomial>,
        }
        let raw = Raw::deserialize(deserializer)?;
        GeneratorSet::new(raw.n, raw.generators).map_err(de::Error::custom)
    }
}

/// Monomial divisibility as a free function, mirroring the operation name
/// used at the interface: true iff `supp(a)⊆ supp(b)`.
pub fn divides(a: &Monomial, b: &Monomial) -> bool {
    a.divides(b)
}

/// The complement monomial on `{1..n} \ supp(m)`.
pub fn complement_monomial(m: &Monomial, n: u32) -> Monomial {
    m.complement(n)
}
