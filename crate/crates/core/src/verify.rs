//! Exhaustive sweeps that check the convergence and counting claims over a
//! finite universe of pairs, reporting counterexamples instead of panicking.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::census::{self, max_iteration_formula, one_iteration_formula, MAX_TABLE_N};
use crate::digits::{bitlen, cvt, gxor, hamming_distance, reference_add};
use crate::dynamics::{iteration_bound, mcvt_iterations_to_zero, orbit};
use crate::{Base, CvtError, Nat, Result};

/// Counterexamples kept per outcome.
pub const MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    Theorem1,
    Lemma1,
    Lemma2,
    Lemma4,
    Theorem2,
    Theorem3,
    HammingNote,
    Symmetry,
    Quadrants,
    Counts,
    All,
}

impl Property {
    /// Every concrete property, in reporting order.
    pub const EACH: [Property; 10] = [
        Property::Theorem1,
        Property::Lemma1,
        Property::Lemma2,
        Property::Lemma4,
        Property::Theorem2,
        Property::Theorem3,
        Property::HammingNote,
        Property::Symmetry,
        Property::Quadrants,
        Property::Counts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Theorem1 => "theorem1",
            Property::Lemma1 => "lemma1",
            Property::Lemma2 => "lemma2",
            Property::Lemma4 => "lemma4",
            Property::Theorem2 => "theorem2",
            Property::Theorem3 => "theorem3",
            Property::HammingNote => "hamming-note",
            Property::Symmetry => "symmetry",
            Property::Quadrants => "quadrants",
            Property::Counts => "counts",
            Property::All => "all",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = CvtError;

    fn from_str(s: &str) -> Result<Self> {
        Property::EACH
            .iter()
            .chain(std::iter::once(&Property::All))
            .copied()
            .find(|p| p.name() == s)
            .ok_or_else(|| CvtError::InvalidArgument(format!("unknown property '{s}'")))
    }
}

/// Pairs `(a, b)` with `a, b ≤ max`, and the radices swept where a property
/// is radix-generic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    pub max: Nat,
    pub bases: RangeInclusive<u32>,
}

impl Default for Universe {
    fn default() -> Self {
        Universe {
            max: 1023,
            bases: 2..=10,
        }
    }
}

impl Universe {
    pub fn new(max: Nat, bases: RangeInclusive<u32>) -> Result<Self> {
        if *bases.start() < 2 || bases.is_empty() {
            return Err(CvtError::InvalidArgument(format!(
                "base range {}..{} must be nonempty and start at 2 or above",
                bases.start(),
                bases.end()
            )));
        }
        Ok(Universe { max, bases })
    }

    /// Table size covering every value up to `max`.
    pub fn table_n(&self) -> Result<u32> {
        let n = bitlen(self.max);
        if n > MAX_TABLE_N {
            return Err(CvtError::InvalidArgument(format!(
                "table properties need max < {}, got {}",
                1u64 << MAX_TABLE_N,
                self.max
            )));
        }
        Ok(n)
    }

    fn bases(&self) -> impl Iterator<Item = Base> + '_ {
        self.bases
            .clone()
            .map(|b| Base::new(b).expect("validated range"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub pair: Option<(Nat, Nat)>,
    pub base: Option<u32>,
    pub detail: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((a, b)) = self.pair {
            write!(f, "({a}, {b})")?;
            if let Some(base) = self.base {
                write!(f, " base {base}")?;
            }
            write!(f, ": ")?;
        }
        f.write_str(&self.detail)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub property: Property,
    pub universe: String,
    pub passed: bool,
    /// First few violations in lexicographic order.
    pub counterexamples: Vec<Counterexample>,
    /// Total number of violations found.
    pub violations: u64,
    /// Observations recorded alongside the verdict.
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

/// Violations and named tallies gathered while sweeping.
#[derive(Debug, Default)]
struct Findings {
    violations: u64,
    samples: Vec<Counterexample>,
    tallies: BTreeMap<&'static str, u64>,
}

impl Findings {
    fn report(&mut self, pair: Option<(Nat, Nat)>, base: Option<Base>, detail: impl Into<String>) {
        self.violations += 1;
        if self.samples.len() < MAX_COUNTEREXAMPLES {
            self.samples.push(Counterexample {
                pair,
                base: base.map(Base::get),
                detail: detail.into(),
            });
        }
    }

    fn tally(&mut self, key: &'static str) {
        *self.tallies.entry(key).or_insert(0) += 1;
    }

    fn merge(mut self, other: Findings) -> Findings {
        self.violations += other.violations;
        let room = MAX_COUNTEREXAMPLES.saturating_sub(self.samples.len());
        self.samples.extend(other.samples.into_iter().take(room));
        for (k, v) in other.tallies {
            *self.tallies.entry(k).or_insert(0) += v;
        }
        self
    }

    fn tallied(&self, key: &str) -> u64 {
        self.tallies.get(key).copied().unwrap_or(0)
    }
}

/// Runs `check` on every pair `(a, b)` with `a, b ≤ max`. Rows are processed
/// in parallel and merged in order, so samples stay lexicographic.
fn sweep_pairs<F>(max: Nat, check: F) -> Findings
where
    F: Fn(Nat, Nat, &mut Findings) + Sync,
{
    (0..=max)
        .into_par_iter()
        .map(|a| {
            let mut f = Findings::default();
            for b in 0..=max {
                check(a, b, &mut f);
            }
            f
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Findings::default(), Findings::merge)
}

fn outcome(
    property: Property,
    universe: String,
    f: Findings,
    notes: Vec<String>,
    start: Instant,
) -> VerifyOutcome {
    VerifyOutcome {
        property,
        universe,
        passed: f.violations == 0,
        counterexamples: f.samples,
        violations: f.violations,
        notes,
        elapsed: start.elapsed(),
    }
}

fn pair_universe(u: &Universe) -> String {
    format!("all pairs (a, b) with 0 <= a, b <= {}", u.max)
}

fn based_universe(u: &Universe) -> String {
    format!(
        "{}, bases {}..{}",
        pair_universe(u),
        u.bases.start(),
        u.bases.end()
    )
}

pub fn run(property: Property, u: &Universe) -> Result<Vec<VerifyOutcome>> {
    if property == Property::All {
        return Property::EACH.iter().map(|&p| run_one(p, u)).collect();
    }
    Ok(vec![run_one(property, u)?])
}

fn run_one(property: Property, u: &Universe) -> Result<VerifyOutcome> {
    match property {
        Property::Theorem1 => Ok(theorem1(u)),
        Property::Lemma1 => Ok(lemma1(u)),
        Property::Lemma2 => Ok(lemma2(u)),
        Property::Lemma4 => Ok(lemma4(u)),
        Property::Theorem2 => Ok(theorem2(u)),
        Property::Theorem3 => Ok(theorem3(u)),
        Property::HammingNote => Ok(hamming_note(u)),
        Property::Symmetry => symmetry(u),
        Property::Quadrants => quadrants(u),
        Property::Counts => counts(u),
        Property::All => unreachable!("expanded by run"),
    }
}

/// `cvt(a, b) + gxor(a, b) = a + b` in every base.
pub fn theorem1(u: &Universe) -> VerifyOutcome {
    let start = Instant::now();
    let f = sweep_pairs(u.max, |a, b, f| {
        for base in u.bases() {
            let lhs = cvt(a, b, base).and_then(|c| Ok((c, gxor(a, b, base)?)));
            let rhs = reference_add(a, b);
            match (lhs, rhs) {
                (Ok((c, x)), Ok(s)) if c.checked_add(x) == Some(s) => {}
                (Ok((c, x)), Ok(s)) => {
                    f.report(Some((a, b)), Some(base), format!("{c} + {x} != {s}"))
                }
                (Err(e), _) | (_, Err(e)) => f.report(Some((a, b)), Some(base), e.to_string()),
            }
        }
    });
    outcome(Property::Theorem1, based_universe(u), f, Vec::new(), start)
}

/// Every state of a binary orbit from `a, b < 2^n` stays below `2^(n+1)`.
pub fn lemma1(u: &Universe) -> VerifyOutcome {
    let start = Instant::now();
    let f = sweep_pairs(u.max, |a, b, f| {
        let n = bitlen(a.max(b));
        let limit: Nat = 1 << (n + 1);
        match orbit(a, b, Base::BINARY, None) {
            Ok(o) => {
                if let Some((i, s)) = o
                    .states
                    .iter()
                    .enumerate()
                    .find(|(_, s)| s.c >= limit || s.x >= limit)
                {
                    f.report(
                        Some((a, b)),
                        None,
                        format!("state {} = ({}, {}) reaches 2^{}", i + 1, s.c, s.x, n + 1),
                    );
                }
            }
            Err(e) => f.report(Some((a, b)), None, e.to_string()),
        }
    });
    let universe = format!(
        "{}, n = bitlen(max(a, b)) (implies every wider n)",
        pair_universe(u)
    );
    outcome(Property::Lemma1, universe, f, Vec::new(), start)
}

/// Within a fixed window of `n + 1` binary digits, the number of zero
/// digits of the carry component strictly increases from one state to the
/// next until the orbit terminates.
///
/// Also tallies the shifted form of the same argument: a zero at position
/// `k` reappears at `k + 1` in the next carry value, and the number of
/// trailing zeros grows by at least one per step.
pub fn lemma2(u: &Universe) -> VerifyOutcome {
    let start = Instant::now();
    let n = bitlen(u.max);
    let width = n + 1;
    let window: Nat = (1 << width) - 1;
    let f = sweep_pairs(u.max, |a, b, f| {
        let o = match orbit(a, b, Base::BINARY, None) {
            Ok(o) => o,
            Err(e) => return f.report(Some((a, b)), None, e.to_string()),
        };
        let carries: Vec<Nat> = o.states.iter().map(|s| s.c).collect();
        let zeros = |c: Nat| width - (c & window).count_ones();
        if let Some(i) = (1..carries.len()).find(|&i| zeros(carries[i]) <= zeros(carries[i - 1])) {
            f.report(
                Some((a, b)),
                None,
                format!(
                    "zeros in {width}-digit window: {} at step {} -> {} at step {}",
                    zeros(carries[i - 1]),
                    i,
                    zeros(carries[i]),
                    i + 1
                ),
            );
        }
        for w in carries.windows(2) {
            let (prev, next) = (w[0], w[1]);
            // zero at k in prev implies zero at k + 1 in next
            if next & !(prev << 1) & window != 0 {
                f.tally("shifted zero lost");
            }
            if next != 0 && next.trailing_zeros() <= prev.trailing_zeros() {
                f.tally("trailing zeros not increasing");
            }
        }
    });
    let notes = vec![
        format!(
            "shifted form (zero at position k reappears at k+1): {} violations",
            f.tallied("shifted zero lost")
        ),
        format!(
            "trailing zeros of the carry value strictly increase: {} violations",
            f.tallied("trailing zeros not increasing")
        ),
    ];
    let universe = format!("{}, window of n + 1 = {width} digits", pair_universe(u));
    outcome(Property::Lemma2, universe, f, notes, start)
}

/// If the carry first vanishes at step `n + 1` then the XOR vanished at
/// step `n`, for inputs of at most `n` bits.
pub fn lemma4(u: &Universe) -> VerifyOutcome {
    let start = Instant::now();
    let f = sweep_pairs(u.max, |a, b, f| {
        let n = bitlen(a.max(b)) as usize;
        match orbit(a, b, Base::BINARY, None) {
            Ok(o) if o.states.len() == n + 1 => {
                f.tally("reach n+1");
                if o.states[n - 1].x != 0 {
                    f.report(
                        Some((a, b)),
                        None,
                        format!(
                            "carry vanishes at step {} but XOR at step {n} is {}",
                            n + 1,
                            o.states[n - 1].x
                        ),
                    );
                }
            }
            Ok(_) => {}
            Err(e) => f.report(Some((a, b)), None, e.to_string()),
        }
    });
    let notes = vec![format!(
        "pairs whose carry first vanishes at step n + 1: {}",
        f.tallied("reach n+1")
    )];
    outcome(Property::Lemma4, pair_universe(u), f, notes, start)
}

/// Binary orbits end at `(0, a + b)` and the iteration count is at most
/// `bitlen(max(a, b))`.
pub fn theorem2(u: &Universe) -> VerifyOutcome {
    let start = Instant::now();
    let f = sweep_pairs(u.max, |a, b, f| {
        let bound = iteration_bound(a, b);
        match orbit(a, b, Base::BINARY, None) {
            Ok(o) => {
                if o.terminal.c != 0 || Some(o.terminal.x) != a.checked_add(b) {
                    f.report(
                        Some((a, b)),
                        None,
                        format!(
                            "terminal ({}, {}) != (0, {})",
                            o.terminal.c,
                            o.terminal.x,
                            a + b
                        ),
                    );
                } else if o.iteration_count > bound {
                    f.report(
                        Some((a, b)),
                        None,
                        format!(
                            "iteration count {} exceeds bound {bound}",
                            o.iteration_count
                        ),
                    );
                }
                if o.iteration_count == bound + 1 {
                    f.tally("count bound+1");
                }
                if o.states.len() == bound + 1 {
                    f.tally("carry zero at bound+1");
                }
            }
            Err(e) => f.report(Some((a, b)), None, e.to_string()),
        }
    });
    let notes = vec![
        format!(
            "pairs whose iteration count is bitlen + 1: {}",
            f.tallied("count bound+1")
        ),
        format!(
            "pairs whose carry only vanishes at step bitlen + 1 (XOR vanished first): {}",
            f.tallied("carry zero at bound+1")
        ),
    ];
    outcome(Property::Theorem2, pair_universe(u), f, notes, start)
}

/// The MCVT variant reaches a zero first component within two steps.
pub fn theorem3(u: &Universe) -> VerifyOutcome {
    let start = Instant::now();
    let f = sweep_pairs(u.max, |a, b, f| {
        for base in u.bases() {
            if let Err(e) = mcvt_iterations_to_zero(a, b, base) {
                f.report(Some((a, b)), Some(base), e.to_string());
            }
        }
    });
    outcome(Property::Theorem3, based_universe(u), f, Vec::new(), start)
}

/// Steps until the carry vanishes: 1 when the Hamming distance equals the
/// full width `n`, at most `k + 2` when the distance is `k < n`.
pub fn hamming_note(u: &Universe) -> VerifyOutcome {
    let start = Instant::now();
    let f = sweep_pairs(u.max, |a, b, f| {
        let n = bitlen(a.max(b));
        let k = hamming_distance(a, b);
        let steps = match orbit(a, b, Base::BINARY, None) {
            Ok(o) => o.states.len(),
            Err(e) => return f.report(Some((a, b)), None, e.to_string()),
        };
        if k == n && steps != 1 {
            f.report(
                Some((a, b)),
                None,
                format!("distance {k} = width but {steps} steps"),
            );
        } else if k < n && steps > k as usize + 2 {
            f.report(
                Some((a, b)),
                None,
                format!("distance {k} but {steps} steps > {}", k + 2),
            );
        }
    });
    let universe = format!("{}, width n = bitlen(max(a, b))", pair_universe(u));
    let notes =
        vec!["claim stated without proof; violations are reported, not assumed".to_string()];
    outcome(Property::HammingNote, universe, f, notes, start)
}

pub fn symmetry(u: &Universe) -> Result<VerifyOutcome> {
    let start = Instant::now();
    let n = u.table_n()?;
    let t = census::build_table(n)?;
    let mut f = Findings::default();
    for a in 0..t.side() {
        for b in a + 1..t.side() {
            if t.get(a, b) != t.get(b, a) {
                f.report(
                    Some((a as Nat, b as Nat)),
                    None,
                    format!("{} != {}", t.get(a, b), t.get(b, a)),
                );
            }
        }
    }
    let universe = format!("iteration table n = {n}");
    Ok(outcome(Property::Symmetry, universe, f, Vec::new(), start))
}

pub fn quadrants(u: &Universe) -> Result<VerifyOutcome> {
    let start = Instant::now();
    let n = u.table_n()?;
    let t = census::build_table(n)?;
    let depth = n.saturating_sub(1);
    let report = census::check_quadrant_self_similarity(&t, depth)?;
    let mut f = Findings::default();
    for c in report.pairs_checked.iter().filter(|c| !c.equal) {
        f.report(
            Some((c.row as Nat, c.col as Nat)),
            None,
            format!(
                "level {} block of side {}: upper-right != lower-left",
                c.level, c.size
            ),
        );
    }
    let mut notes = vec![format!(
        "{} block pairs compared at levels 0..={depth}",
        report.pairs_checked.len()
    )];
    if n >= 2 {
        let nested = t.upper_left()? == census::build_table(n - 1)?;
        let no_max = census::check_no_max_in_quadrant(n)?;
        if !nested {
            f.report(
                None,
                None,
                format!(
                    "upper-left block of table n = {n} differs from table n = {}",
                    n - 1
                ),
            );
        }
        if !no_max {
            f.report(
                None,
                None,
                format!("upper-left block of table n = {n} contains the value {n}"),
            );
        }
        notes.push(format!(
            "upper-left block equals table n = {}: {nested}; contains no entry {n}: {no_max}",
            n - 1
        ));
    }
    let universe = format!("iteration table n = {n}");
    Ok(outcome(Property::Quadrants, universe, f, notes, start))
}

/// Size of the one-iteration class against `3^n + 2^n − 1` and of the top
/// class against `3 · 2^(n−1)` (the latter from `n = 3`).
pub fn counts(u: &Universe) -> Result<VerifyOutcome> {
    let start = Instant::now();
    let top = u.table_n()?;
    let mut f = Findings::default();
    let mut notes = Vec::new();
    for n in 1..=top {
        let c = census::class_census(n)?;
        let ones = c.cardinality(1);
        if ones != one_iteration_formula(n) {
            f.report(
                None,
                None,
                format!(
                    "n = {n}: one-iteration class {ones} != {}",
                    one_iteration_formula(n)
                ),
            );
        }
        if n >= 3 {
            let max = c.cardinality(n as usize);
            if max != max_iteration_formula(n) {
                f.report(
                    None,
                    None,
                    format!("n = {n}: top class {max} != {}", max_iteration_formula(n)),
                );
            }
        }
        if c.total() != 1u64 << (2 * n) {
            f.report(None, None, format!("n = {n}: classes sum to {}", c.total()));
        }
    }
    if top >= 6 {
        notes.push(format!(
            "n = 6..={top} extends past the published table sizes"
        ));
    }
    let universe = format!("tables n = 1..={top}");
    Ok(outcome(Property::Counts, universe, f, notes, start))
}
