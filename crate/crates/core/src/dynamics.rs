//! The map `f(c, x) = (CVT(c, x), c ⊕ x)` and its orbits.
//!
//! Orbits are recorded from the first image of `f`: `states[0]` is
//! `f(x0, y0)`, so `states[i - 1]` is the state after `i` applications. The
//! iteration count of a pair is the first `i ≥ 1` at which either component
//! vanishes. An orbit keeps running past an XOR zero until the carry
//! component is zero too, which takes exactly one more step since
//! `CVT(c, 0) = 0`.

use crate::digits::{bitlen, carry_xor, cvt, digit_len, gxor, mcvt, scale_by_base};
use crate::{Base, CvtError, Natural, Result};

/// One point of the system: carry value `c` and XOR value `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PairState<T> {
    pub c: T,
    pub x: T,
}

impl<T: Natural> PairState<T> {
    pub fn new(c: T, x: T) -> Self {
        PairState { c, x }
    }

    /// Whether either component is zero.
    pub fn has_zero(&self) -> bool {
        self.c.is_zero() || self.x.is_zero()
    }

    pub fn is_fixed_point(&self) -> bool {
        self.c.is_zero()
    }
}

impl<T> From<(T, T)> for PairState<T> {
    fn from((c, x): (T, T)) -> Self {
        PairState { c, x }
    }
}

impl<T> From<PairState<T>> for (T, T) {
    fn from(s: PairState<T>) -> Self {
        (s.c, s.x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StopReason {
    /// The carry component reached zero no later than the XOR component.
    CvtZero,
    /// The XOR component hit zero first; the carry vanished one step later.
    XorZeroThenCvtZero,
    CapExceeded,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::CvtZero => "cvt_zero",
            StopReason::XorZeroThenCvtZero => "xor_zero_then_cvt_zero",
            StopReason::CapExceeded => "cap_exceeded",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StopReport {
    pub reason: StopReason,
    pub steps_taken: usize,
}

/// A possibly incomplete trajectory, as produced by [`trace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace<T> {
    pub initial: (T, T),
    pub base: Base,
    pub states: Vec<PairState<T>>,
    /// `None` only if the cap stopped the walk before any component vanished.
    pub iteration_count: Option<usize>,
    pub report: StopReport,
}

impl<T: Natural> Trace<T> {
    pub fn is_complete(&self) -> bool {
        self.report.reason != StopReason::CapExceeded
    }

    pub fn last(&self) -> Option<&PairState<T>> {
        self.states.last()
    }
}

/// A trajectory that reached its fixed point `(0, s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit<T> {
    pub initial: (T, T),
    pub base: Base,
    pub states: Vec<PairState<T>>,
    pub iteration_count: usize,
    pub terminal: PairState<T>,
    pub report: StopReport,
}

impl<T: Natural> TryFrom<Trace<T>> for Orbit<T> {
    type Error = CvtError;

    fn try_from(trace: Trace<T>) -> Result<Self> {
        if !trace.is_complete() {
            return Err(CvtError::CapExceeded {
                cap: trace.report.steps_taken,
            });
        }
        let terminal = *trace.states.last().expect("complete traces are nonempty");
        let iteration_count = trace
            .iteration_count
            .expect("complete traces have an iteration count");
        Ok(Orbit {
            initial: trace.initial,
            base: trace.base,
            states: trace.states,
            iteration_count,
            terminal,
            report: trace.report,
        })
    }
}

/// One application of `f`.
pub fn step<T: Natural>(s: PairState<T>, base: Base) -> Result<PairState<T>> {
    if base.is_binary() {
        return Ok(PairState::new(cvt(s.c, s.x, base)?, gxor(s.c, s.x, base)?));
    }
    let (m, x) = carry_xor(s.c, s.x, base)?;
    Ok(PairState::new(scale_by_base(m, base)?, x))
}

/// One application of the MCVT variant `(MCVT(c, x), c ⊕ x)`. Unlike
/// [`step`] this does not preserve `c + x`.
pub fn mcvt_step<T: Natural>(s: PairState<T>, base: Base) -> Result<PairState<T>> {
    if base.is_binary() {
        return Ok(PairState::new(mcvt(s.c, s.x, base)?, gxor(s.c, s.x, base)?));
    }
    let (m, x) = carry_xor(s.c, s.x, base)?;
    Ok(PairState::new(m, x))
}

/// Step budget used when the caller gives none.
///
/// Binary orbits vanish within `bitlen + 1` steps, so `bitlen + 2` leaves
/// one spare. Other radices get `4 · digit_len`.
pub fn default_cap<T: Natural>(x0: T, y0: T, base: Base) -> usize {
    let larger = x0.max(y0);
    if base.is_binary() {
        bitlen(larger) as usize + 2
    } else {
        4 * digit_len(larger, base)
    }
}

/// Iterates `f` from `(x0, y0)` until the carry component is zero or `cap`
/// steps have been taken. Hitting the cap is not an error here; see
/// [`orbit`] for the strict form.
pub fn trace<T: Natural>(x0: T, y0: T, base: Base, cap: usize) -> Result<Trace<T>> {
    if cap == 0 {
        return Err(CvtError::InvalidArgument(
            "step cap must be at least 1".into(),
        ));
    }
    let mut states = Vec::new();
    let mut iteration_count = None;
    let mut xor_first = false;
    let mut s = PairState::new(x0, y0);
    while states.len() < cap {
        s = step(s, base)?;
        states.push(s);
        if iteration_count.is_none() && s.has_zero() {
            iteration_count = Some(states.len());
            xor_first = !s.c.is_zero();
        }
        if s.c.is_zero() {
            let reason = if xor_first {
                StopReason::XorZeroThenCvtZero
            } else {
                StopReason::CvtZero
            };
            let steps_taken = states.len();
            return Ok(Trace {
                initial: (x0, y0),
                base,
                states,
                iteration_count,
                report: StopReport {
                    reason,
                    steps_taken,
                },
            });
        }
    }
    let steps_taken = states.len();
    Ok(Trace {
        initial: (x0, y0),
        base,
        states,
        iteration_count,
        report: StopReport {
            reason: StopReason::CapExceeded,
            steps_taken,
        },
    })
}

/// Full orbit of `(x0, y0)` up to its fixed point. `cap` defaults to
/// [`default_cap`].
pub fn orbit<T: Natural>(x0: T, y0: T, base: Base, cap: Option<usize>) -> Result<Orbit<T>> {
    let cap = cap.unwrap_or_else(|| default_cap(x0, y0, base));
    Orbit::try_from(trace(x0, y0, base, cap)?)
}

/// First `i ≥ 1` at which `f^i(a, b)` has a zero component.
///
/// Same value as `orbit(a, b, base, None)?.iteration_count`, without
/// recording the states.
pub fn iteration_count<T: Natural>(a: T, b: T, base: Base) -> Result<usize> {
    let cap = default_cap(a, b, base);
    let mut s = PairState::new(a, b);
    for i in 1..=cap {
        s = step(s, base)?;
        if s.has_zero() {
            return Ok(i);
        }
    }
    Err(CvtError::CapExceeded { cap })
}

/// Claimed upper bound on the binary iteration count: the bit length of the
/// larger operand.
pub fn iteration_bound<T: Natural>(a: T, b: T) -> usize {
    bitlen(a.max(b)) as usize
}

/// Number of applications of [`mcvt_step`] until the first component is
/// zero. Always 1 or 2; anything larger is reported as
/// [`CvtError::McvtBound`].
pub fn mcvt_iterations_to_zero<T: Natural>(a: T, b: T, base: Base) -> Result<usize> {
    let mut s = PairState::new(a, b);
    for i in 1..=2 {
        s = mcvt_step(s, base)?;
        if s.c.is_zero() {
            return Ok(i);
        }
    }
    Err(mcvt_bound(a, b, base))
}

fn mcvt_bound<T: Natural>(a: T, b: T, base: Base) -> CvtError {
    CvtError::McvtBound {
        a: a.to_string(),
        b: b.to_string(),
        base: base.get(),
    }
}

/// Trajectory of the MCVT variant up to the first zero MCVT.
pub fn mcvt_trace<T: Natural>(a: T, b: T, base: Base) -> Result<Trace<T>> {
    let mut states = Vec::with_capacity(2);
    let mut s = PairState::new(a, b);
    for _ in 0..2 {
        s = mcvt_step(s, base)?;
        states.push(s);
        if s.c.is_zero() {
            let steps_taken = states.len();
            return Ok(Trace {
                initial: (a, b),
                base,
                states,
                iteration_count: Some(steps_taken),
                report: StopReport {
                    reason: StopReason::CvtZero,
                    steps_taken,
                },
            });
        }
    }
    Err(mcvt_bound(a, b, base))
}
