//! Carry value transformation (CVT) over an arbitrary radix, the dynamical
//! system `f(a, b) = (CVT(a, b), a ⊕ b)` it induces, and exhaustive checks of
//! its convergence and counting properties.
//!
//! Every arithmetic routine is generic over an unsigned primitive integer
//! (see [`Natural`]); the aliases below fix the width used by the table,
//! census and verification code.

pub mod census;
pub mod digits;
pub mod dynamics;
mod error;
mod num;
pub mod verify;

pub use census::{
    build_table, check_no_max_in_quadrant, check_quadrant_self_similarity, check_symmetry,
    class_census, count_max_iteration_pairs, count_one_iteration_pairs, ClassCensus, ClassInfo,
    IterationTable, QuadrantReport,
};
pub use digits::{
    bitlen, carry_xor, cvt, digit_len, from_digits, gxor, hamming_distance, mcvt, reference_add,
    to_digits, Base, DigitVector,
};
pub use dynamics::{
    default_cap, iteration_bound, iteration_count, mcvt_iterations_to_zero, mcvt_step, mcvt_trace,
    orbit, step, trace, Orbit, PairState, StopReason, StopReport, Trace,
};
pub use error::{CvtError, Result};
pub use num::Natural;

/// Width used by the CLI, the census and the verification sweeps.
pub type Nat = u64;
/// Wide variant for callers that need more headroom than [`Nat`].
pub type Nat128 = u128;

pub type PairState64 = PairState<Nat>;
pub type Orbit64 = Orbit<Nat>;
pub type Trace64 = Trace<Nat>;
