//! Text and JSON output for the `compute`, `orbit`, `census` and `verify`
//! commands. Nothing here writes timing or other run-dependent data.

use std::fmt::Write;

use cvt_core::census::{max_iteration_formula, one_iteration_formula};
use cvt_core::verify::VerifyOutcome;
use cvt_core::{
    cvt, gxor, mcvt, reference_add, to_digits, Base, ClassCensus, CvtError, Nat, PairState, Trace,
};
use serde::Serialize;

fn digit_string(v: Nat, base: Base) -> String {
    to_digits(v, base, None).to_msb_string()
}

/// CVT, MCVT and XOR of `a` and `b` in decimal and base-β digits, followed
/// by the carry-save check `a + b = CVT + XOR`.
pub fn compute_report(a: Nat, b: Nat, base: Base) -> Result<String, CvtError> {
    let c = cvt(a, b, base)?;
    let m = mcvt(a, b, base)?;
    let x = gxor(a, b, base)?;
    let sum = reference_add(a, b)?;
    let rhs = c
        .checked_add(x)
        .ok_or(CvtError::Overflow { bits: Nat::BITS })?;
    let mut out = String::new();
    let line = |out: &mut String, label: &str, v: Nat| {
        writeln!(out, "{label:<5}= {v} ({})_{base}", digit_string(v, base)).unwrap();
    };
    line(&mut out, "a", a);
    line(&mut out, "b", b);
    line(&mut out, "CVT", c);
    line(&mut out, "MCVT", m);
    line(&mut out, "XOR", x);
    let verdict = if sum == rhs { "holds" } else { "FAILS" };
    writeln!(out, "a+b = CVT+XOR: {sum} = {rhs} ({verdict})").unwrap();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Cvt,
    Mcvt,
}

#[derive(Serialize)]
struct OrbitJson {
    initial: [Nat; 2],
    base: u32,
    states: Vec<[Nat; 2]>,
    iteration_count: Option<usize>,
    terminal: Option<[Nat; 2]>,
}

fn pair(s: &PairState<Nat>) -> [Nat; 2] {
    [s.c, s.x]
}

/// Renders a trace. Incomplete traces print every recorded state with no
/// terminal.
pub fn orbit_report(t: &Trace<Nat>, variant: Variant, fmt: OrbitFormat, digits: bool) -> String {
    let terminal = t.is_complete().then(|| t.last().map(pair)).flatten();
    match fmt {
        OrbitFormat::Json => {
            let doc = OrbitJson {
                initial: [t.initial.0, t.initial.1],
                base: t.base.get(),
                states: t.states.iter().map(pair).collect(),
                iteration_count: t.iteration_count.filter(|_| t.is_complete()),
                terminal,
            };
            let mut s = serde_json::to_string(&doc).expect("plain data serializes");
            s.push('\n');
            s
        }
        OrbitFormat::Csv => {
            let mut out = String::from("step,c,x\n");
            for (i, s) in t.states.iter().enumerate() {
                writeln!(out, "{},{},{}", i + 1, s.c, s.x).unwrap();
            }
            out
        }
        OrbitFormat::Text => {
            let show = |v: Nat| {
                if digits {
                    digit_string(v, t.base)
                } else {
                    v.to_string()
                }
            };
            let states: Vec<String> = t
                .states
                .iter()
                .map(|s| format!("({}, {})", show(s.c), show(s.x)))
                .collect();
            let mut out = String::new();
            let name = match variant {
                Variant::Cvt => "cvt",
                Variant::Mcvt => "mcvt",
            };
            writeln!(out, "variant: {name}, base {}", t.base).unwrap();
            writeln!(
                out,
                "initial: ({}, {})",
                show(t.initial.0),
                show(t.initial.1)
            )
            .unwrap();
            writeln!(out, "states: {}", states.join(", ")).unwrap();
            match (t.is_complete(), variant) {
                (true, Variant::Cvt) => {
                    let terminal = t.last().expect("complete traces are nonempty");
                    writeln!(out, "iteration_count: {}", t.iteration_count.unwrap_or(0)).unwrap();
                    writeln!(
                        out,
                        "terminal: ({}, {})",
                        show(terminal.c),
                        show(terminal.x)
                    )
                    .unwrap();
                    writeln!(
                        out,
                        "stop: {} after {} steps",
                        t.report.reason.as_str(),
                        t.report.steps_taken
                    )
                    .unwrap();
                }
                (true, Variant::Mcvt) => {
                    writeln!(out, "mcvt zero at step {}", t.report.steps_taken).unwrap();
                }
                (false, _) => {
                    writeln!(
                        out,
                        "stop: cap_exceeded after {} steps",
                        t.report.steps_taken
                    )
                    .unwrap();
                }
            }
            out
        }
    }
}

#[derive(Serialize)]
struct ClassJson {
    iterations: usize,
    cardinality: u64,
    representative: [Nat; 2],
}

#[derive(Serialize)]
struct FormulaJson {
    predicted: u64,
    actual: u64,
}

#[derive(Serialize)]
struct CensusJson {
    n: u32,
    pairs: u64,
    classes: Vec<ClassJson>,
    one_iteration: FormulaJson,
    /// Only claimed for n >= 3.
    max_iteration: Option<FormulaJson>,
}

pub fn census_json(c: &ClassCensus) -> String {
    let doc = CensusJson {
        n: c.n,
        pairs: c.total(),
        classes: c
            .classes
            .iter()
            .map(|(&k, info)| ClassJson {
                iterations: k,
                cardinality: info.cardinality,
                representative: [info.representative.0, info.representative.1],
            })
            .collect(),
        one_iteration: FormulaJson {
            predicted: one_iteration_formula(c.n),
            actual: c.cardinality(1),
        },
        max_iteration: (c.n >= 3).then(|| FormulaJson {
            predicted: max_iteration_formula(c.n),
            actual: c.cardinality(c.n as usize),
        }),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn census_text(c: &ClassCensus) -> String {
    let n = c.n;
    let mut out = String::new();
    writeln!(out, "n = {n} ({} ordered pairs)", c.total()).unwrap();
    writeln!(
        out,
        "{:<12}{:<13}representative",
        "iterations", "cardinality"
    )
    .unwrap();
    for (k, info) in &c.classes {
        let (a, b) = info.representative;
        writeln!(out, "{k:<12}{:<13}({a}, {b})", info.cardinality).unwrap();
    }
    writeln!(
        out,
        "one-iteration pairs: predicted 3^{n} + 2^{n} - 1 = {}, actual {}",
        one_iteration_formula(n),
        c.cardinality(1)
    )
    .unwrap();
    let max_line = format!(
        "max-iteration pairs: predicted 3*2^{} = {}, actual {}",
        n - 1,
        max_iteration_formula(n),
        c.cardinality(n as usize)
    );
    if n >= 3 {
        writeln!(out, "{max_line}").unwrap();
    } else {
        writeln!(out, "{max_line} (formula claimed for n >= 3 only)").unwrap();
    }
    out
}

pub fn verify_text(outcomes: &[VerifyOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{}: {verdict}", o.property).unwrap();
        writeln!(out, "  universe: {}", o.universe).unwrap();
        writeln!(out, "  violations: {}", o.violations).unwrap();
        for note in &o.notes {
            writeln!(out, "  note: {note}").unwrap();
        }
        for c in &o.counterexamples {
            writeln!(out, "  counterexample: {c}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cvt_core::{class_census, mcvt_trace, trace};

    #[test]
    fn compute_binary() {
        let r = compute_report(23, 27, Base::BINARY).unwrap();
        assert!(r.contains("CVT  = 38 (100110)_2"));
        assert!(r.contains("MCVT = 19 (10011)_2"));
        assert!(r.contains("XOR  = 12 (1100)_2"));
        assert!(r.contains("a+b = CVT+XOR: 50 = 50 (holds)"));
    }

    #[test]
    fn compute_ternary_and_zero() {
        let r = compute_report(466, 458, Base::TERNARY).unwrap();
        assert!(r.contains("a    = 466 (122021)_3"));
        assert!(r.contains("CVT  = 336 (110110)_3"));
        assert!(r.contains("MCVT = 112 (11011)_3"));
        assert!(r.contains("XOR  = 588 (210210)_3"));
        let r = compute_report(0, 0, Base::BINARY).unwrap();
        assert!(r.contains("CVT  = 0 (0)_2"));
        assert!(r.contains("0 = 0 (holds)"));
    }

    #[test]
    fn compute_overflow() {
        assert!(compute_report(u64::MAX, 1, Base::BINARY).is_err());
    }

    #[test]
    fn orbit_text_and_json() {
        let t = trace(12u64, 25, Base::BINARY, 10).unwrap();
        let text = orbit_report(&t, Variant::Cvt, OrbitFormat::Text, false);
        assert!(text.contains("states: (16, 21), (32, 5), (0, 37)"));
        assert!(text.contains("iteration_count: 3"));
        let json = orbit_report(&t, Variant::Cvt, OrbitFormat::Json, false);
        assert_eq!(
            json,
            "{\"initial\":[12,25],\"base\":2,\"states\":[[16,21],[32,5],[0,37]],\"iteration_count\":3,\"terminal\":[0,37]}\n"
        );
        let csv = orbit_report(&t, Variant::Cvt, OrbitFormat::Csv, false);
        assert_eq!(csv, "step,c,x\n1,16,21\n2,32,5\n3,0,37\n");
        let digits = orbit_report(&t, Variant::Cvt, OrbitFormat::Text, true);
        assert!(digits.contains("initial: (1100, 11001)"));
    }

    #[test]
    fn partial_orbit_has_no_terminal() {
        let t = trace(127u64, 65, Base::BINARY, 2).unwrap();
        let json = orbit_report(&t, Variant::Cvt, OrbitFormat::Json, false);
        assert!(json.contains("\"states\":[[130,62],[4,188]]"));
        assert!(json.contains("\"iteration_count\":null,\"terminal\":null"));
        let text = orbit_report(&t, Variant::Cvt, OrbitFormat::Text, false);
        assert!(text.contains("stop: cap_exceeded after 2 steps"));
    }

    #[test]
    fn mcvt_orbit_text() {
        let t = mcvt_trace(23u64, 27, Base::BINARY).unwrap();
        let text = orbit_report(&t, Variant::Mcvt, OrbitFormat::Text, false);
        assert!(text.contains("states: (19, 12), (0, 31)"));
        assert!(text.contains("mcvt zero at step 2"));
    }

    #[test]
    fn census_outputs() {
        let c = class_census(5).unwrap();
        let text = census_text(&c);
        assert!(text.contains("predicted 3^5 + 2^5 - 1 = 274, actual 274"));
        assert!(text.contains("predicted 3*2^4 = 48, actual 48"));
        let json: serde_json::Value =
            serde_json::from_str(&census_json(&class_census(4).unwrap())).unwrap();
        let cards: Vec<u64> = json["classes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["cardinality"].as_u64().unwrap())
            .collect();
        assert_eq!(cards, [96, 78, 58, 24]);
        assert_eq!(
            json["classes"][3]["representative"],
            serde_json::json!([1, 15])
        );
        let json: serde_json::Value =
            serde_json::from_str(&census_json(&class_census(1).unwrap())).unwrap();
        assert!(json["max_iteration"].is_null());
    }
}
