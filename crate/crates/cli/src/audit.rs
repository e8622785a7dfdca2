use std::f64::consts::PI;
use std::str::FromStr;

use kapteyn::closed::{closure_checks, identity_checks, registry};
use kapteyn::direct::{sum_series, SeriesSpec};
use kapteyn::exact::{q_to_f64, Q};
use kapteyn::transcendental::{
    asym_eval, asym_reference, aux_integral, aux_quadrature, cot_integral, csc2_integral,
    first_omitted, log_integral, tables, AsymId, AuxId, CotVariant, IntegrandParams, LogVariant,
    SumVariant,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::output::{AuditSummary, Cell, Num, Output, Table};
use crate::Outcome;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub group: &'static str,
    pub name: String,
    pub max_rel_dev: Option<Num>,
    pub threshold: Option<Num>,
    pub passed: bool,
    pub note: Option<String>,
}

fn measured(group: &'static str, name: impl Into<String>, dev: f64, threshold: f64) -> Check {
    Check {
        group,
        name: name.into(),
        max_rel_dev: Some(Num(dev)),
        threshold: Some(Num(threshold)),
        passed: dev <= threshold,
        note: None,
    }
}

fn exact(group: &'static str, name: impl Into<String>, holds: bool) -> Check {
    Check {
        group,
        name: name.into(),
        max_rel_dev: None,
        threshold: None,
        passed: holds,
        note: None,
    }
}

fn failed(group: &'static str, name: impl Into<String>, err: impl std::fmt::Display) -> Check {
    Check {
        note: Some(err.to_string()),
        ..exact(group, name, false)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        (a - b).abs()
    } else {
        ((a - b) / b).abs()
    }
}

fn grid() -> Vec<f64> {
    (1..=18).map(|k| 0.05 * k as f64).collect()
}

fn closed_entries(tol: f64) -> Vec<Check> {
    registry()
        .par_iter()
        .map(|e| {
            let mut worst = 0.0f64;
            for x in grid().into_iter().filter(|&x| x >= e.validity.0 && x < e.validity.1) {
                match (e.eval(x), e.eval_direct(x, tol)) {
                    (Ok(c), Ok(d)) => worst = worst.max(rel(d, c)),
                    (Err(err), _) | (_, Err(err)) => return failed("closed form", &e.id, err),
                }
            }
            measured("closed form", &e.id, worst, 1e-10)
        })
        .collect()
}

fn exact_algebra() -> Vec<Check> {
    let mut out: Vec<Check> = closure_checks()
        .into_iter()
        .map(|c| {
            let mut k = exact("derivation", &c.id, c.equal);
            k.note = Some(c.recipe);
            k
        })
        .collect();
    out.extend(identity_checks().into_iter().map(|c| {
        let mut k = exact("identity", &c.name, c.holds);
        k.note = Some(c.relation);
        k
    }));
    out
}

fn table_coefficients() -> Vec<Check> {
    let mut out = Vec::new();
    for t in tables() {
        let checks = match t.verify() {
            Ok(c) => c,
            Err(e) => {
                out.push(failed("coefficients", t.id, e));
                continue;
            }
        };
        for c in checks {
            let dev = match (Q::from_str(&c.stored), Q::from_str(&c.oracle)) {
                (Ok(s), Ok(o)) => rel(q_to_f64(&s), q_to_f64(&o)),
                _ if c.matches => 0.0,
                _ => f64::NAN,
            };
            let mut k = exact("coefficients", format!("{} x^{}", t.id, c.power), c.matches);
            k.max_rel_dev = Some(Num(dev));
            if !c.matches {
                k.note = Some(format!("stored {} exact {}", c.stored, c.oracle));
            }
            out.push(k);
        }
    }
    out
}

fn table_truncation(tol: f64) -> Vec<Check> {
    let x = 0.1;
    tables()
        .par_iter()
        .map(|t| {
            let r = (|| -> kapteyn::Result<(f64, f64, f64)> {
                Ok((t.eval_full(x)?, t.target_value(x, tol)?.value, first_omitted(t, x)?))
            })();
            match r {
                Ok((v, d, omitted)) => {
                    let bound = 10.0 * omitted;
                    let mut k = measured("truncation", t.id, rel(v, d), rel(d + bound, d));
                    k.passed = (v - d).abs() <= bound;
                    k.note = Some(format!("x = {x}, bound 10 × first omitted term"));
                    k
                }
                Err(e) => failed("truncation", t.id, e),
            }
        })
        .collect()
}

fn representations(tol: f64) -> Vec<Check> {
    type Eval = fn(f64, f64) -> kapteyn::Result<f64>;
    let lin = SeriesSpec::linear;
    let cases: Vec<(&str, Eval, SeriesSpec)> = vec![
        ("log all", |x, t| Ok(log_integral(LogVariant::AllM, &IntegrandParams::at(x)?, t)?.value), lin(-1)),
        ("log even", |x, t| Ok(log_integral(LogVariant::Even, &IntegrandParams::at(x)?, t)?.value), lin(-1).even()),
        ("log bilinear", |x, t| Ok(log_integral(LogVariant::Bilinear, &IntegrandParams::at(x)?, t)?.value), SeriesSpec::bilinear(-1)),
        ("log param-a 0.5", |x, t| Ok(log_integral(LogVariant::ParamA, &IntegrandParams::new(x, 0.5)?, t)?.value), lin(-1).geometric(0.5)),
        ("cot all", |x, t| Ok(cot_integral(CotVariant::AllM, &IntegrandParams::at(x)?, t)?.value), lin(0).deriv(1)),
        ("cot even", |x, t| Ok(cot_integral(CotVariant::Even, &IntegrandParams::at(x)?, t)?.value), lin(0).even().deriv(1)),
        ("cot bilinear", |x, t| Ok(cot_integral(CotVariant::Bilinear, &IntegrandParams::at(x)?, t)?.value), SeriesSpec::bilinear(0).derivs(0, 1).scaled(2.0)),
        ("csc2 all", |x, t| Ok(csc2_integral(SumVariant::AllM, x, t)?.value), lin(1).deriv(2)),
        ("csc2 even", |x, t| Ok(csc2_integral(SumVariant::Even, x, t)?.value), lin(1).even().deriv(2)),
    ];
    let itol = tol.max(1e-10);
    cases
        .into_par_iter()
        .map(|(name, f, spec)| {
            let mut worst = 0.0f64;
            for k in 1..=9 {
                let x = k as f64 / 10.0;
                match (f(x, itol), sum_series(&spec, x, tol)) {
                    (Ok(v), Ok(d)) => worst = worst.max(rel(v, d.value)),
                    (Err(e), _) | (_, Err(e)) => return failed("representation", name, e),
                }
            }
            measured("representation", name, worst, 1e-7)
        })
        .collect()
}

fn auxiliary() -> Vec<Check> {
    AuxId::ALL
        .iter()
        .map(|&id| {
            let mut worst = 0.0f64;
            for c in [0.01, 1.0, PI * PI] {
                match (aux_integral(id, c), aux_quadrature(id, c)) {
                    (Ok(a), Ok(q)) => worst = worst.max(rel(a, q)),
                    (Err(e), _) | (_, Err(e)) => return failed("auxiliary", id.name(), e),
                }
            }
            measured("auxiliary", id.name(), worst, 1e-12)
        })
        .collect()
}

fn asymptotics() -> Vec<Check> {
    AsymId::ALL
        .par_iter()
        .map(|&id| {
            let g: f64 = if id == AsymId::IntegralNJ2n { 1e-2 } else { 1e-3 };
            let x = (1.0 - g).sqrt();
            let r = (|| -> kapteyn::Result<f64> {
                Ok(asym_reference(id, x, 1e-8)?.value / asym_eval(id, x)?.value)
            })();
            match r {
                Ok(r) => {
                    let mut k = measured("asymptotic", id.id(), (r - 1.0).abs(), 0.05);
                    k.note = Some(format!("exact/leading = {r:.6} at 1 − x² = {g:e}"));
                    k
                }
                Err(e) => failed("asymptotic", id.id(), e),
            }
        })
        .collect()
}

pub fn run(tol: f64) -> Outcome {
    let tol = tol.max(1e-13);
    let groups: Vec<Box<dyn Fn() -> Vec<Check> + Sync + Send>> = vec![
        Box::new(move || closed_entries(tol)),
        Box::new(exact_algebra),
        Box::new(table_coefficients),
        Box::new(move || table_truncation(tol)),
        Box::new(move || representations(tol)),
        Box::new(auxiliary),
        Box::new(asymptotics),
    ];
    let checks: Vec<Check> = groups.par_iter().flat_map(|g| g()).collect();
    let failures: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.group, c.name))
        .collect();
    let max_rel_dev = checks
        .iter()
        .filter_map(|c| c.max_rel_dev.map(|n| n.0))
        .filter(|d| d.is_finite())
        .fold(0.0, f64::max);
    let mut out = Output::rows("audit", json!({ "tol": tol }), Vec::new());
    out.table = Some(Table {
        headers: vec!["group", "check", "max rel dev", "threshold", "status", "note"],
        rows: checks
            .iter()
            .map(|c| {
                vec![
                    Cell::from(c.group),
                    Cell::from(c.name.clone()),
                    c.max_rel_dev.map_or(Cell::Empty, |n| Cell::Num(n.0)),
                    c.threshold.map_or(Cell::Empty, |n| Cell::Num(n.0)),
                    Cell::from(if c.passed { "PASS" } else { "FAIL" }),
                    c.note.clone().map_or(Cell::Empty, Cell::from),
                ]
            })
            .collect(),
    });
    out.footer.push(format!(
        "audit: {} checks, {} failures, max rel dev {}",
        checks.len(),
        failures.len(),
        crate::output::human(max_rel_dev)
    ));
    for f in &failures {
        out.footer.push(format!("FAIL {f}"));
    }
    out.report.audit = Some(AuditSummary {
        checks: checks.len(),
        failures: failures.len(),
        max_rel_dev: Num(max_rel_dev),
        failed: failures.clone(),
        details: json!(checks),
    });
    Outcome {
        output: out,
        valid: failures.is_empty(),
    }
}
