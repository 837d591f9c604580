//! Runtime invariant suites behind `twoslit verify`.
//!
//! Each check reports pass/fail and, on failure, a witness.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::events::{
    apply, enumerate_combined_events, enumerate_elementary_events, enumerate_even_events,
    generate_nls, is_auto_symmetric, is_label_symmetric, stabilizer, symmetry_signature,
    arrangements, EvenEvent, Statistics, SymmetryOp,
};
use crate::optics::{
    amplitude_ci, amplitude_closed, amplitude_qi, amplitude_quadrature, classify_regime, envelope,
    linspace, path_difference_approx, path_difference_exact, ExperimentConfig, QuadratureOptions,
    Side, SourcePoint,
};
use crate::systems::{
    golden_check, is_prohibited, parse_golden, rotate90, table2, Status, SystemId, GOLDEN_TABLE2,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Optics,
    Events,
    Table2,
    All,
}

impl Suite {
    pub fn from_name(s: &str) -> Option<Suite> {
        match s {
            "optics" => Some(Suite::Optics),
            "events" => Some(Suite::Events),
            "table2" => Some(Suite::Table2),
            "all" => Some(Suite::All),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{mark}] {}/{}: {}", self.suite, self.name, self.detail)
    }
}

fn outcome(suite: &'static str, name: &str, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome { suite, name: name.to_string(), passed, detail }
}

/// Signature of the amplitude under test, so a fixture can swap it out.
pub type ClosedForm = dyn Fn(&ExperimentConfig, f64, f64) -> f64 + Sync;

pub fn run(suite: Suite) -> Vec<CheckOutcome> {
    match suite {
        Suite::Optics => optics_checks(&amplitude_closed),
        Suite::Events => events_checks(),
        Suite::Table2 => table2_checks(),
        Suite::All => {
            let mut all = optics_checks(&amplitude_closed);
            all.extend(events_checks());
            all.extend(table2_checks());
            all
        }
    }
}

const K_THETA_D_SWEEP: [f64; 7] = [0.01, 0.5, 1.0, PI, 10.0, 100.0, 1000.0];

/// Two fringe periods of cos(kθy/2) on either side of the axis, kθ = 1.
fn fringe_grid(n: usize) -> Vec<f64> {
    linspace(-8.0 * PI, 8.0 * PI, n)
}

fn sweep_max(
    pts: &[f64],
    mut f: impl FnMut(f64, f64) -> f64,
) -> (f64, f64, f64) {
    let mut worst = (0.0, 0.0, 0.0);
    for &y in pts {
        for &z in pts {
            let v = f(y, z);
            if v > worst.0 || v.is_nan() {
                worst = (v, y, z);
            }
        }
    }
    worst
}

pub fn optics_checks(closed: &ClosedForm) -> Vec<CheckOutcome> {
    const S: &str = "optics";
    let mut out = Vec::new();
    let pts = fringe_grid(20);
    let options = QuadratureOptions::default();

    // Closed form against quadrature.
    let mut worst = (0.0, 0.0, 0.0, 0.0);
    let mut quad_error = None;
    for a in K_THETA_D_SWEEP {
        let c = ExperimentConfig::from_k_theta(1.0, a).expect("valid sweep config");
        for &y in &pts {
            for &z in &pts {
                match amplitude_quadrature(&c, y, z, &options) {
                    Ok(q) => {
                        let diff = (q - closed(&c, y, z)).abs();
                        if diff > worst.0 || diff.is_nan() {
                            worst = (diff, a, y, z);
                        }
                    }
                    Err(e) => {
                        quad_error.get_or_insert(format!("kθd={a} ({y},{z}): {e}"));
                    }
                }
            }
        }
    }
    let passed = quad_error.is_none() && worst.0 <= 1e-8;
    let detail = match quad_error {
        Some(e) => e,
        None => format!("max |quadrature - closed| = {:.3e} at kθd={}, y={:.4}, z={:.4}", worst.0, worst.1, worst.2, worst.3),
    };
    out.push(outcome(S, "closed-form/quadrature equivalence", passed, detail));

    // Small-uncertainty limit.
    let c = ExperimentConfig::from_k_theta(1.0, 0.01).expect("valid");
    let bound = 0.5 * (envelope(0.01) - 1.0).abs();
    let (diff, y, z) = sweep_max(&pts, |y, z| (closed(&c, y, z) - amplitude_ci(&c, y, z)).abs());
    let env_gap = (envelope(0.01) - 1.0).abs();
    let second_order = 0.01f64.powi(2) / 24.0;
    out.push(outcome(
        S,
        "CI limit",
        diff <= bound + 1e-15 && (env_gap - second_order).abs() <= 1e-3 * second_order,
        format!("sup |closed - ci| = {diff:.3e} (bound {bound:.3e}) at ({y:.4},{z:.4}); |env-1| = {env_gap:.3e} vs (kθd)²/24 = {second_order:.3e}"),
    ));

    // Large-uncertainty limit.
    let c = ExperimentConfig::from_k_theta(1.0, 1000.0).expect("valid");
    let (diff, y, z) = sweep_max(&pts, |y, z| (closed(&c, y, z) - amplitude_qi(&c, y, z)).abs());
    out.push(outcome(
        S,
        "QI limit",
        diff <= 1.0 / 1000.0,
        format!("sup |closed - qi| = {diff:.3e} (bound 1.000e-3) at ({y:.4},{z:.4})"),
    ));

    // Symmetries and boundedness over the sweep.
    let mut sym_worst = (0.0, String::new());
    let mut bound_worst = (0.0, String::new());
    let mut shift_worst = 0.0f64;
    for a in K_THETA_D_SWEEP {
        let c = ExperimentConfig::from_k_theta(1.0, a).expect("valid");
        for &y in &pts {
            for &z in &pts {
                let v = closed(&c, y, z);
                let d = (v - closed(&c, z, y)).abs().max((v - closed(&c, -y, -z)).abs());
                if d > sym_worst.0 {
                    sym_worst = (d, format!("kθd={a} ({y:.4},{z:.4})"));
                }
                for w in [v, amplitude_ci(&c, y, z), amplitude_qi(&c, y, z)] {
                    let excess = w.abs() - 1.0;
                    if excess > bound_worst.0 || !w.is_finite() {
                        bound_worst = (excess.max(f64::MIN_POSITIVE), format!("kθd={a} ({y:.4},{z:.4}) value {w}"));
                    }
                }
                let shifted = amplitude_qi(&c, y + 1.7, z + 1.7);
                shift_worst = shift_worst.max((shifted - amplitude_qi(&c, y, z)).abs());
            }
        }
    }
    out.push(outcome(
        S,
        "Ψ symmetric under y↔z and (y,z)→(-y,-z)",
        sym_worst.0 <= 1e-12,
        if sym_worst.0 <= 1e-12 { "max deviation <= 1e-12".into() } else { format!("deviation {:.3e} at {}", sym_worst.0, sym_worst.1) },
    ));
    out.push(outcome(
        S,
        "qi depends only on y - z",
        shift_worst <= 1e-12,
        format!("max shift deviation {shift_worst:.3e}"),
    ));
    out.push(outcome(
        S,
        "amplitudes bounded by 1",
        bound_worst.0 <= 0.0,
        if bound_worst.0 <= 0.0 { "all values in [-1, 1]".into() } else { bound_worst.1 },
    ));

    // Small-angle path difference against exact geometry.
    let c = ExperimentConfig::new(1.0, 1e-2, 1.0, 1.0, 0.0).expect("valid");
    let mut rel_worst = (0.0, 0.0, 0.0);
    for &fx in &[-1.0, -0.3, 0.5, 1.0] {
        for &fy in &[-1.0, -0.2, 0.7, 1.0] {
            let (x, y) = (fx * 0.01 * c.h, fy * 0.01 * c.m);
            let exact = path_difference_exact(&c, Side::East, SourcePoint { u: 0.0, x }, y);
            let rel = ((path_difference_approx(&c, x, y) - exact) / exact).abs();
            if rel > rel_worst.0 {
                rel_worst = (rel, x, y);
            }
        }
    }
    out.push(outcome(
        S,
        "small-angle path difference within 1% of exact",
        rel_worst.0 <= 1e-2,
        format!("max relative error {:.4} at x={:.3e}, y={:.3e}", rel_worst.0, rel_worst.1, rel_worst.2),
    ));

    // Regime report identity.
    let mut ratio_worst = 0.0f64;
    for a in K_THETA_D_SWEEP {
        let r = classify_regime(&ExperimentConfig::from_k_theta(1.0, a).expect("valid"));
        ratio_worst = ratio_worst.max((r.momentum_ratio * r.k_theta_d - 1.0).abs());
    }
    out.push(outcome(
        S,
        "momentum ratio · kθd = 1",
        ratio_worst <= 1e-12,
        format!("max deviation {ratio_worst:.3e}"),
    ));
    out
}

fn first_failure<'a>(
    events: impl IntoIterator<Item = &'a EvenEvent>,
    pred: impl Fn(&EvenEvent) -> bool,
) -> Option<String> {
    events.into_iter().find(|e| !pred(e)).map(|e| e.short())
}

fn from_witness(suite: &'static str, name: &str, witness: Option<String>, ok: &str) -> CheckOutcome {
    match witness {
        None => outcome(suite, name, true, ok.to_string()),
        Some(w) => outcome(suite, name, false, format!("counterexample {w}")),
    }
}

pub fn events_checks() -> Vec<CheckOutcome> {
    const S: &str = "events";
    let mut out = Vec::new();
    let all = enumerate_even_events();
    let ls: BTreeSet<EvenEvent> = all.iter().filter(|e| is_label_symmetric(e)).copied().collect();
    let nls: BTreeSet<EvenEvent> = all.difference(&ls).copied().collect();

    let counts = [
        enumerate_elementary_events().len(),
        enumerate_combined_events().len(),
        all.len(),
        ls.len(),
        nls.len(),
    ];
    out.push(outcome(
        S,
        "cardinalities 8/12/18/6/12",
        counts == [8, 12, 18, 6, 12],
        format!("elementary {}, combined {}, even {}, LS {}, non-LS {}", counts[0], counts[1], counts[2], counts[3], counts[4]),
    ));

    out.push(from_witness(
        S,
        "AS ⇔ LS ⇔ two attributes",
        first_failure(&all, |e| {
            let two = e.attribute_count() == 2;
            is_auto_symmetric(e) == two && is_label_symmetric(e) == two
        }),
        "holds on all 18",
    ));

    let singles = |sig: &BTreeSet<SymmetryOp>| sig.iter().filter(|o| matches!(o, SymmetryOp::Transposition(..))).count();
    let pairs = |sig: &BTreeSet<SymmetryOp>| sig.iter().filter(|o| matches!(o, SymmetryOp::Simultaneous(..))).count();
    out.push(from_witness(
        S,
        "non-LS fixed by exactly one disjoint pair only",
        first_failure(&nls, |e| {
            let st = stabilizer(e);
            pairs(&st) == 1 && singles(&st) == 0 && !st.contains(&SymmetryOp::LabelSwap)
        }),
        "holds on all 12",
    ));
    out.push(from_witness(
        S,
        "LS signature is one transposition plus label swap",
        first_failure(&ls, |e| {
            let sig = symmetry_signature(e);
            singles(&sig) == 1 && sig.contains(&SymmetryOp::LabelSwap) && sig.len() == 2
        }),
        "holds on all 6",
    ));
    out.push(from_witness(
        S,
        "operations are involutions",
        first_failure(&all, |e| SymmetryOp::all().into_iter().all(|op| apply(op, &apply(op, e)) == *e)),
        "10 ops × 18 events",
    ));
    out.push(from_witness(
        S,
        "canonical text re-parses to the same event",
        first_failure(&all, |e| {
            e.short().parse::<EvenEvent>().ok() == Some(*e)
                && e.expanded().parse::<EvenEvent>().ok() == Some(*e)
                && e.expanded().parse::<EvenEvent>().map(|p| p.expanded()).ok() == Some(e.expanded())
        }),
        "both forms round-trip",
    ));

    let generated: Vec<(SystemId, BTreeSet<EvenEvent>, BTreeSet<EvenEvent>)> = SystemId::ALL
        .into_iter()
        .map(|s| {
            let [a, b] = s.ls_events();
            (s, generate_nls(&a).unwrap_or_default(), generate_nls(&b).unwrap_or_default())
        })
        .collect();
    let same_pairs = generated.iter().find(|(_, a, b)| a != b || a.len() != 4);
    out.push(outcome(
        S,
        "both LS events of a system generate the same 4-set",
        same_pairs.is_none(),
        match same_pairs {
            None => "QI, CI, RI".into(),
            Some((s, _, _)) => format!("differs for {s}"),
        },
    ));
    let union: BTreeSet<EvenEvent> = generated.iter().flat_map(|(_, a, _)| a.iter().copied()).collect();
    let total: usize = generated.iter().map(|(_, a, _)| a.len()).sum();
    out.push(outcome(
        S,
        "generated sets partition the non-LS events",
        union == nls && total == 12,
        format!("union {} events, summed sizes {total}", union.len()),
    ));
    out.push(from_witness(
        S,
        "label swap is a fixed-point-free involution on non-LS",
        first_failure(&nls, |e| {
            let s = apply(SymmetryOp::LabelSwap, e);
            s != *e && nls.contains(&s) && apply(SymmetryOp::LabelSwap, &s) == *e
        }),
        "holds on all 12",
    ));
    let classical = arrangements(Statistics::Classical).len();
    let bose = arrangements(Statistics::Bose).len();
    out.push(outcome(
        S,
        "two-box arrangements 4 classical / 3 Bose",
        classical == 4 && bose == 3,
        format!("classical {classical}, Bose {bose}"),
    ));
    out
}

pub fn table2_checks() -> Vec<CheckOutcome> {
    const S: &str = "table2";
    let mut out = Vec::new();
    let records = table2();

    match parse_golden(GOLDEN_TABLE2) {
        Ok(rows) => {
            let mismatches = golden_check(&records, &rows);
            let matched = rows.len() - mismatches.len().min(rows.len());
            out.push(outcome(
                S,
                "golden table",
                mismatches.is_empty(),
                if mismatches.is_empty() {
                    format!("{matched}/{} records match", rows.len())
                } else {
                    mismatches.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("; ")
                },
            ));
        }
        Err(e) => out.push(outcome(S, "golden table", false, e.to_string())),
    }

    let of = |s: SystemId, st: Option<Status>| -> BTreeSet<EvenEvent> {
        records
            .iter()
            .filter(|r| r.system == s && st.is_none_or(|x| r.status == x))
            .map(|r| r.event)
            .collect()
    };
    let sizes: Vec<(SystemId, usize, usize)> = SystemId::ALL
        .into_iter()
        .map(|s| (s, of(s, Some(Status::Regular)).len(), of(s, Some(Status::Anti)).len()))
        .collect();
    let claimed: usize = SystemId::ALL.iter().map(|s| of(*s, None).len()).sum();
    out.push(outcome(
        S,
        "systems partition the 18 events with regular/anti 2/4, 4/2, 4/2",
        claimed == 18 && sizes == vec![(SystemId::QI, 2, 4), (SystemId::CI, 4, 2), (SystemId::RI, 4, 2)],
        format!("{sizes:?}"),
    ));

    let bad = records.iter().find(|r| {
        let flags: Vec<bool> = r.event.summands().iter().map(|c| is_prohibited(r.system, c)).collect();
        let any = flags.iter().any(|f| *f);
        let both = flags.iter().all(|f| *f);
        (r.status == Status::Anti) != both || any != both
    });
    out.push(from_witness(
        S,
        "anti ⇔ both summands prohibited ⇔ one summand prohibited",
        bad.map(|r| r.event.short()),
        "holds on all 18",
    ));

    let summands = |s: SystemId, st: Status| -> BTreeSet<String> {
        of(s, Some(st)).iter().flat_map(|e| e.summands()).map(|c| c.short()).collect()
    };
    let same = [Status::Regular, Status::Anti]
        .into_iter()
        .all(|st| summands(SystemId::CI, st) == summands(SystemId::RI, st));
    out.push(outcome(
        S,
        "CI and RI use the same summands per status",
        same,
        format!("regular {:?}", summands(SystemId::CI, Status::Regular)),
    ));

    let rotated = |s: SystemId| -> BTreeSet<EvenEvent> { of(s, None).iter().map(rotate90).collect() };
    let involution = enumerate_even_events().iter().all(|e| rotate90(&rotate90(e)) == *e);
    out.push(outcome(
        S,
        "rotation fixes QI and swaps CI with RI",
        involution
            && rotated(SystemId::QI) == of(SystemId::QI, None)
            && rotated(SystemId::CI) == of(SystemId::RI, None)
            && rotated(SystemId::RI) == of(SystemId::CI, None),
        format!("involution: {involution}"),
    ));

    let gen_ok = SystemId::ALL.into_iter().all(|s| {
        let generated = generate_nls(&s.ls_events()[0]).unwrap_or_default();
        let flagged: BTreeSet<EvenEvent> = generated
            .iter()
            .filter(|e| e.summands().iter().any(|c| is_prohibited(s, c)))
            .copied()
            .collect();
        let anti_nls: BTreeSet<EvenEvent> =
            of(s, Some(Status::Anti)).into_iter().filter(|e| !is_label_symmetric(e)).collect();
        flagged == anti_nls && (s != SystemId::QI || flagged.len() == 4)
    });
    out.push(outcome(
        S,
        "non-LS anti-events are generated events with a prohibited summand",
        gen_ok,
        "QI has all four generated events anti".into(),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn events_and_table_suites_pass() {
        for c in events_checks().into_iter().chain(table2_checks()) {
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn golden_reports_18_of_18() {
        let golden = &table2_checks()[0];
        assert!(golden.passed);
        assert_eq!(golden.detail, "18/18 records match");
    }

    #[test]
    fn corrupted_envelope_fails_the_oracle() {
        let corrupted = |c: &ExperimentConfig, y: f64, z: f64| {
            let kt = c.k_theta();
            // sin(a)/a in place of sin(a/2)/(a/2)
            let a = c.k_theta_d();
            let env = if a == 0.0 { 1.0 } else { a.sin() / a };
            env * 0.5 * (0.5 * kt * (y + z)).cos() + 0.5 * (0.5 * kt * (y - z)).cos()
        };
        let checks = optics_checks(&corrupted);
        let oracle = checks.iter().find(|c| c.name == "closed-form/quadrature equivalence").unwrap();
        assert!(!oracle.passed, "{oracle}");
    }

    #[test]
    fn optics_suite_with_real_closed_form() {
        let checks = optics_checks(&amplitude_closed);
        for c in &checks {
            if c.name.starts_with("small-angle path difference") {
                // The h·x/l + h·y/m form is half the exact lower-minus-upper
                // difference for slits at ±h.
                assert!(!c.passed, "{c}");
            } else {
                assert!(c.passed, "{c}");
            }
        }
    }
}
