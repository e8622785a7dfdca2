use anyhow::{anyhow, bail, Context, Result};
use kapteyn::closed::{self, lookup, registry, RationalFunction};
use kapteyn::direct::{sum_integral, sum_series, Parity, SeriesSpec};
use kapteyn::radiation::{self, Mode, ProbabilityMethod, QuantumRegime, RadiationInput};
use kapteyn::transcendental::{
    asym_eval, asym_reference, cot_integral, csc2_integral, first_omitted, log_integral,
    lookup_table, regularized_jprime_sum, tables, AsymId, CoeffTable, CotVariant, IntegrandParams,
    LogVariant, SumVariant,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::{Cell, Output, Row, Table};
use crate::*;

pub fn run(cli: &Cli) -> Result<Outcome> {
    let tol = cli.tol;
    match &cli.command {
        Command::Sum(a) => sum(a, tol),
        Command::Closed(ClosedCmd::List) => Ok(ok(closed_list())),
        Command::Closed(ClosedCmd::Eval(a)) => closed_eval(a, tol),
        Command::Integral(a) => integral(a, tol),
        Command::Coeffs(CoeffsCmd::Show(a)) => coeffs_show(a),
        Command::Coeffs(CoeffsCmd::Verify(a)) => coeffs_verify(a),
        Command::Coeffs(CoeffsCmd::Export(a)) => coeffs_export(a),
        Command::Coeffs(CoeffsCmd::Eval(a)) => coeffs_eval(a, tol),
        Command::Asym(a) => asym(a, tol),
        Command::Audit => Ok(crate::audit::run(tol)),
        Command::Radiation(r) => radiation_cmd(r),
    }
}

fn ok(output: Output) -> Outcome {
    Outcome { output, valid: true }
}

fn params(args: &impl Serialize, tol: Option<f64>) -> Value {
    let mut v = serde_json::to_value(args).unwrap_or(Value::Null);
    if let (Some(t), Value::Object(m)) = (tol, &mut v) {
        m.insert("tol".into(), json!(t));
    }
    v
}

/// Evaluates every point in parallel; rows come back in input order.
fn eval_points<F>(points: &Points, f: F) -> Result<Vec<Row>>
where
    F: Fn(f64) -> kapteyn::Result<Row> + Sync,
{
    let xs = points.values();
    xs.par_iter()
        .map(|&x| f(x).with_context(|| format!("at x = {x}")))
        .collect()
}

fn eval_point_rows<F>(points: &Points, f: F) -> Result<Vec<Row>>
where
    F: Fn(f64) -> kapteyn::Result<Vec<Row>> + Sync,
{
    let xs = points.values();
    let nested: Vec<Vec<Row>> = xs
        .par_iter()
        .map(|&x| f(x).with_context(|| format!("at x = {x}")))
        .collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

fn value_name(v: impl clap::ValueEnum) -> String {
    v.to_possible_value().map_or_else(String::new, |p| p.get_name().to_string())
}

fn build_spec(a: &SumArgs) -> Result<SeriesSpec> {
    let mut spec = match a.family {
        FamilyArg::Linear => {
            if a.deriv2 != 0 {
                bail!("--deriv2 applies to bilinear series only");
            }
            SeriesSpec::linear(a.nu).deriv(a.deriv)
        }
        FamilyArg::Bilinear => SeriesSpec::bilinear(a.nu).derivs(a.deriv, a.deriv2),
    };
    spec = spec.with_parity(match a.parity {
        ParityArg::All => Parity::All,
        ParityArg::Even => Parity::Even,
        ParityArg::Odd => Parity::Odd,
    });
    if a.alternating {
        spec = spec.alternating();
    }
    if a.a != 1.0 {
        spec = spec.geometric(a.a);
    }
    spec.validate()?;
    Ok(spec)
}

fn sum(a: &SumArgs, tol: f64) -> Result<Outcome> {
    let spec = build_spec(a)?;
    let rows = eval_points(&a.points, |x| {
        let r = if a.integral {
            sum_integral(&spec, x, tol)?
        } else {
            sum_series(&spec, x, tol)?
        };
        Ok(Row::new(x, r.value, Some(r.abs_error_estimate), r.method))
    })?;
    let mut out = Output::rows("sum", params(a, Some(tol)), rows);
    let what = if a.integral { format!("∫₀^x {spec} dx") } else { spec.to_string() };
    out.footer.push(format!("series: {what}"));
    Ok(ok(out))
}

fn lhs_text(e: &closed::ClosedFormEntry) -> String {
    e.lhs
        .iter()
        .map(|t| {
            if t.multiplier == RationalFunction::one() {
                t.spec.to_string()
            } else {
                format!("({})·{}", t.multiplier, t.spec)
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn closed_list() -> Output {
    let mut out = Output::rows("closed list", json!({}), Vec::new());
    out.report.details = Some(json!(closed::export()));
    out.table = Some(Table {
        headers: vec!["id", "validity", "provenance", "series", "closed form"],
        rows: registry()
            .iter()
            .map(|e| {
                vec![
                    Cell::from(e.id.clone()),
                    Cell::from(format!("[{}, {})", e.validity.0, e.validity.1)),
                    Cell::from(format!("{:?}", e.provenance).to_lowercase()),
                    Cell::from(lhs_text(e)),
                    Cell::from(e.expression.to_string()),
                ]
            })
            .collect(),
    });
    out
}

fn closed_eval(a: &ClosedEvalArgs, tol: f64) -> Result<Outcome> {
    let e = lookup(&a.id)?;
    let rows = eval_points(&a.points, |x| {
        let v = e.eval(x)?;
        if a.check {
            let d = e.eval_direct(x, tol)?;
            let dev = if v == 0.0 { (d - v).abs() } else { ((d - v) / v).abs() };
            Ok(Row::new(x, v, Some(dev), "closed (error: deviation of direct sum)"))
        } else {
            Ok(Row::new(x, v, None, "closed"))
        }
    })?;
    let mut out = Output::rows("closed eval", params(a, Some(tol)), rows);
    out.footer.push(format!("{}: {} = {}", e.id, lhs_text(e), e.expression));
    Ok(ok(out))
}

fn integral(a: &IntegralArgs, tol: f64) -> Result<Outcome> {
    if a.variant != VariantArg::ParamA && a.a != 1.0 {
        bail!("--a applies to the param-a variant only");
    }
    let unsupported = || {
        anyhow!(
            "variant {} is not available for the {} integral",
            value_name(a.variant),
            value_name(a.kind)
        )
    };
    let sum_variant = match a.variant {
        VariantArg::All => Some(SumVariant::AllM),
        VariantArg::Even => Some(SumVariant::Even),
        _ => None,
    };
    let log_variant = match a.variant {
        VariantArg::All => LogVariant::AllM,
        VariantArg::Even => LogVariant::Even,
        VariantArg::ParamA => LogVariant::ParamA,
        VariantArg::Bilinear => LogVariant::Bilinear,
    };
    let cot_variant = match a.variant {
        VariantArg::All => Some(CotVariant::AllM),
        VariantArg::Even => Some(CotVariant::Even),
        VariantArg::Bilinear => Some(CotVariant::Bilinear),
        VariantArg::ParamA => None,
    };
    match a.kind {
        IntegralKind::Cot if cot_variant.is_none() => return Err(unsupported()),
        IntegralKind::Csc2 | IntegralKind::Regularized if sum_variant.is_none() => {
            return Err(unsupported())
        }
        _ => {}
    }
    let rows = eval_points(&a.points, |x| {
        let r = match a.kind {
            IntegralKind::Log => log_integral(log_variant, &IntegrandParams::new(x, a.a)?, tol)?,
            IntegralKind::Cot => cot_integral(cot_variant.unwrap(), &IntegrandParams::at(x)?, tol)?,
            IntegralKind::Csc2 => csc2_integral(sum_variant.unwrap(), x, tol)?,
            IntegralKind::Regularized => regularized_jprime_sum(sum_variant.unwrap(), x, tol)?,
        };
        Ok(Row::new(x, r.value, Some(r.abs_error_estimate), r.method))
    })?;
    Ok(ok(Output::rows("integral", params(a, Some(tol)), rows)))
}

fn selected_tables(id: &Option<String>) -> Result<Vec<&'static CoeffTable>> {
    match id {
        Some(id) => Ok(vec![lookup_table(id)?]),
        None => Ok(tables().iter().collect()),
    }
}

fn table_header(t: &CoeffTable) -> String {
    let pre = t.prefactor.to_string();
    if pre == "1" {
        format!("{}: {} = Σ c_k x^k", t.id, t.description)
    } else {
        format!("{}: {} = {pre} · Σ c_k x^k", t.id, t.description)
    }
}

fn coeffs_show(a: &CoeffsIdArgs) -> Result<Outcome> {
    let mut out = Output::rows("coeffs show", params(a, None), Vec::new());
    match &a.id {
        Some(id) => {
            let t = lookup_table(id)?;
            let e = t.export();
            out.table = Some(Table {
                headers: vec!["power", "coefficient", "value"],
                rows: e
                    .coefficients
                    .iter()
                    .zip(t.rationals())
                    .map(|(c, r)| {
                        vec![
                            Cell::from(c.power.to_string()),
                            Cell::from(c.value.clone()),
                            Cell::Num(kapteyn::exact::q_to_f64(&r)),
                        ]
                    })
                    .collect(),
            });
            out.footer.push(table_header(t));
            out.report.details = Some(json!(e));
        }
        None => {
            out.table = Some(Table {
                headers: vec!["id", "powers", "prefactor", "series"],
                rows: tables()
                    .iter()
                    .map(|t| {
                        vec![
                            Cell::from(t.id),
                            Cell::from(format!("{}..={} step {}", t.first_power, t.max_power(), t.step)),
                            Cell::from(t.prefactor.to_string()),
                            Cell::from(t.description),
                        ]
                    })
                    .collect(),
            });
            out.report.details = Some(json!(tables().iter().map(|t| t.export()).collect::<Vec<_>>()));
        }
    }
    Ok(ok(out))
}

fn coeffs_verify(a: &CoeffsIdArgs) -> Result<Outcome> {
    let mut out = Output::rows("coeffs verify", params(a, None), Vec::new());
    let mut rows = Vec::new();
    let mut details = Vec::new();
    let mut valid = true;
    for t in selected_tables(&a.id)? {
        let checks = t.verify()?;
        let passed = checks.iter().filter(|c| c.matches).count();
        valid &= passed == checks.len();
        for c in &checks {
            rows.push(vec![
                Cell::from(t.id),
                Cell::from(c.power.to_string()),
                Cell::from(c.stored.clone()),
                Cell::from(c.oracle.clone()),
                Cell::from(if c.matches { "PASS" } else { "FAIL" }),
            ]);
        }
        out.footer.push(format!("{}: {passed}/{} coefficients PASS", t.id, checks.len()));
        details.push(json!({ "id": t.id, "passed": passed, "total": checks.len(), "checks": checks }));
    }
    out.table = Some(Table {
        headers: vec!["table", "power", "stored", "exact", "status"],
        rows,
    });
    out.report.details = Some(Value::Array(details));
    Ok(Outcome { output: out, valid })
}

fn coeffs_export(a: &CoeffsIdArgs) -> Result<Outcome> {
    let selected = selected_tables(&a.id)?;
    let mut out = Output::rows("coeffs export", params(a, None), Vec::new());
    let exports: Vec<_> = selected.iter().map(|t| t.export()).collect();
    out.table = Some(Table {
        headers: vec!["table", "power", "coefficient"],
        rows: exports
            .iter()
            .flat_map(|e| {
                e.coefficients.iter().map(move |c| {
                    vec![Cell::from(e.id), Cell::from(c.power.to_string()), Cell::from(c.value.clone())]
                })
            })
            .collect(),
    });
    out.report.details = Some(json!(exports));
    Ok(ok(out))
}

fn coeffs_eval(a: &CoeffsEvalArgs, tol: f64) -> Result<Outcome> {
    let t = lookup_table(&a.id)?;
    let order = a.order.unwrap_or(t.max_power());
    let rows = eval_points(&a.points, |x| {
        let v = t.eval(x, order)?;
        if a.check {
            let d = t.target_value(x, tol)?.value;
            Ok(Row::new(x, v, Some((v - d).abs()), "table (error: deviation from direct sum)"))
        } else if order == t.max_power() {
            let err = if x == 0.0 { 0.0 } else { first_omitted(t, x)? };
            Ok(Row::new(x, v, Some(err), "table (error: first omitted term)"))
        } else {
            Ok(Row::new(x, v, None, "table"))
        }
    })?;
    let mut out = Output::rows("coeffs eval", params(a, Some(tol)), rows);
    out.footer.push(table_header(t));
    Ok(ok(out))
}

fn asym(a: &AsymArgs, tol: f64) -> Result<Outcome> {
    let id = AsymId::parse(&a.id).ok_or_else(|| kapteyn::Error::UnknownId(a.id.clone()))?;
    let rows = eval_points(&a.points, |x| {
        if a.reference {
            let r = asym_reference(id, x, tol)?;
            Ok(Row::new(x, r.value, Some(r.abs_error_estimate), r.method))
        } else {
            let r = asym_eval(id, x)?;
            let method = if r.below_validity {
                format!("asym:{} (x below 0.95, leading term only)", id.id())
            } else {
                format!("asym:{}", id.id())
            };
            Ok(Row::new(x, r.value, None, method))
        }
    })?;
    let mut out = Output::rows("asym", params(a, Some(tol)), rows);
    out.footer.push(format!("{}: {}", id.id(), id.formula()));
    Ok(ok(out))
}

fn method(m: MethodArg) -> ProbabilityMethod {
    match m {
        MethodArg::Series => ProbabilityMethod::Series,
        MethodArg::Numeric => ProbabilityMethod::Numeric,
    }
}

fn radiation_cmd(r: &RadiationCmd) -> Result<Outcome> {
    let out = match r {
        RadiationCmd::Probability(a) => {
            let rows = eval_points(&a.points, |b| {
                let p = radiation::total_probability(b, method(a.method))?;
                Ok(Row::new(b, p.value, Some(p.error_estimate), p.method))
            })?;
            Output::rows("radiation probability", params(a, None), rows)
        }
        RadiationCmd::Coefficient(a) => {
            let rows = eval_points(&a.points, |b| {
                let v = radiation::magnetic_coefficient(b, method(a.method))?;
                Ok(Row::new(b, v, None, "coefficient"))
            })?;
            let mut out = Output::rows("radiation coefficient", params(a, None), rows);
            out.footer.push(format!(
                "ultrarelativistic limit 5α/(2√3) = {}",
                crate::output::human(radiation::ultrarelativistic_P())
            ));
            out
        }
        RadiationCmd::Harmonic(a) => {
            let rows = eval_points(&a.points, |b| {
                Ok(Row::new(b, radiation::harmonic_intensity(a.n, b)?, None, format!("harmonic:{}", a.n)))
            })?;
            Output::rows("radiation harmonic", params(a, None), rows)
        }
        RadiationCmd::Rate(a) => {
            let input = RadiationInput {
                beta: a.beta,
                omega_h: a.omega_h,
                chi: a.chi,
                time: a.time,
                mode: match a.mode {
                    ModeArg::Classical => Mode::Classical,
                    ModeArg::Quantum => Mode::Quantum,
                },
            };
            let m = method(a.method);
            let rate = input.rate(m)?;
            let survival = radiation::survival_probability(rate, a.time)?;
            let rows = vec![
                Row::new(a.beta, rate, None, "rate"),
                Row::new(a.beta, survival, None, "survival"),
            ];
            Output::rows("radiation rate", params(a, None), rows)
        }
        RadiationCmd::Quantum(a) => {
            let rows = eval_point_rows(&a.points, |chi| {
                let w = radiation::quantum_W(chi)?;
                Ok(match w.regime {
                    QuantumRegime::Low => vec![Row::new(chi, w.single()?, None, "low")],
                    QuantumRegime::High => vec![Row::new(chi, w.single()?, None, "high")],
                    QuantumRegime::Gap => vec![
                        Row::new(chi, w.low.unwrap_or(f64::NAN), None, "gap:low"),
                        Row::new(chi, w.high.unwrap_or(f64::NAN), None, "gap:high"),
                    ],
                })
            })?;
            let mut out = Output::rows("radiation quantum", params(a, None), rows);
            if out.report.results.iter().any(|r| r.method.starts_with("gap")) {
                out.footer.push(format!(
                    "no formula between chi = {} and {}; both branches shown",
                    radiation::CHI_LOW,
                    radiation::CHI_HIGH
                ));
            }
            out
        }
        RadiationCmd::Lifetime(a) => {
            let mut rows = vec![Row::new(a.chi, radiation::lab_lifetime(a.gamma, a.chi)?, None, "lifetime")];
            if let Some(k) = a.ratio {
                let r = radiation::lifetime_ratio(a.gamma, a.chi, k)?;
                rows.push(Row::new(a.chi, r, None, format!("ratio t({k}E)/t(E)")));
            }
            Output::rows("radiation lifetime", params(a, None), rows)
        }
    };
    Ok(ok(out))
}
