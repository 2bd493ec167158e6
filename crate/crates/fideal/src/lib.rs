//! f-ideals: squarefree monomial ideals whose Stanley-Reisner and facet
//! complexes share an f-vector.
//!
//! The crate provides:
//!
//! * [`monomial`] — squarefree monomials as index subsets, generator sets,
//!   enumeration, divisibility, complements and minimalization;
//! * [`complex`] — f-vectors of both complexes, the ABCD degree partition
//!   and the f-ideal verdict, all by degree-wise counting;
//! * [`perfect`] — lower/upper/perfect-set predicates on degree slices and
//!   the pure f-ideal characterization;
//! * [`construct`] — the mixed and pure construction algorithms, the
//!   Newton complementary dual and block signatures;
//! * [`density`] — exact and Monte Carlo density experiments with Wilson
//!   intervals and the analytic density bounds.
//!
//! All values are immutable after construction and every operation is a
//! pure function; concurrent use needs no synchronization.

mod binom;
pub mod complex;
pub mod construct;
pub mod density;
pub mod error;
pub mod monomial;
pub mod perfect;

pub use complex::{
    abcd_partition, f_ideal_report, facet_fvector, in_ideal, is_f_ideal, sr_fvector, AbcdRow,
    AbcdTable, FIdealReport, FVector,
};
pub use construct::{
    block_signature, construct_block_even, construct_block_odd, construct_mixed_even,
    construct_mixed_odd_a, construct_mixed_odd_b, construct_pure, newton_dual, BlockSignature,
    Construction, ConstructionTrace, SelectionPolicy, TracePart,
};
pub use density::{
    enumerate_exact, lp_lower_bound, sample_densities, trend_report, up_cover_bound,
    wilson_interval, DensityEstimate, DensityKind, ExactCounts, TrendRow, DEFAULT_EXACT_BUDGET,
    TREND_CSV_HEADER,
};
pub use error::{Error, Result};
pub use monomial::{
    complement_monomial, divides, enumerate_monomials, GeneratorSet, Monomial, MAX_VARS,
};
pub use perfect::{
    is_lower_perfect, is_perfect, is_pure_f_ideal, is_upper_perfect, pure_f_ideal_verdict,
    DegreeSlice, PureVerdict,
};
