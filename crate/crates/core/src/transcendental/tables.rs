use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::direct::{self, EvalResult, Family, SeriesSpec};
use crate::error::{domain, Error, Result};
use crate::exact::{factorial, one_minus_z2_pow_half, q, qi, q_to_f64, series_div, series_mul, Poly, Q};

/// Highest Taylor order [`extract_taylor_coeff`] will compute.
pub const MAX_TAYLOR_ORDER: usize = 24;

/// The function a table expands.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "spec")]
pub enum Target {
    Series(SeriesSpec),
    /// `∫₀^x` of the series
    Integral(SeriesSpec),
    /// `x² Σ J'_{2n}(2nx) − (1 − x²) ∫₀^x Σ n J_{2n}(2nt) dt`
    Probability,
}

/// `coef · x^x_power · (1 − x²)^(half_power/2)`
#[derive(Debug, Clone, PartialEq)]
pub struct Prefactor {
    pub coef: Q,
    pub x_power: u32,
    pub half_power: i32,
}

impl Prefactor {
    fn unit() -> Self {
        Self {
            coef: Q::one(),
            x_power: 0,
            half_power: 0,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut v = q_to_f64(&self.coef) * x.powi(self.x_power as i32);
        if self.half_power != 0 {
            v *= ((1.0 - x) * (1.0 + x)).sqrt().powi(self.half_power);
        }
        v
    }
}

impl fmt::Display for Prefactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.coef.is_one() || (self.x_power == 0 && self.half_power == 0) {
            parts.push(self.coef.to_string());
        }
        match self.x_power {
            0 => {}
            1 => parts.push("x".into()),
            p => parts.push(format!("x^{p}")),
        }
        let h = self.half_power;
        if h != 0 {
            let e = if h % 2 == 0 {
                format!("{}", h / 2)
            } else {
                format!("{h}/2")
            };
            parts.push(format!("(1-x^2)^({e})"));
        }
        write!(f, "{}", parts.join("·"))
    }
}

/// Truncated power series `prefactor · Σ_k c_k x^(first_power + k·step)`.
///
/// Coefficients are polynomials in the geometric parameter `a`; every table
/// except the one for `Σ a^m J_m(mx)/m` has constant coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTable {
    pub id: &'static str,
    pub description: &'static str,
    pub prefactor: Prefactor,
    pub first_power: u32,
    pub step: u32,
    pub coefficients: Vec<Poly>,
    pub target: Target,
}

impl CoeffTable {
    /// Power of `x` carried by coefficient `k` inside the bracket.
    pub fn power(&self, k: usize) -> u32 {
        self.first_power + k as u32 * self.step
    }

    pub fn max_power(&self) -> u32 {
        self.power(self.coefficients.len() - 1)
    }

    /// Constant coefficients (`a = 1`).
    pub fn rationals(&self) -> Vec<Q> {
        self.coefficients.iter().map(|p| p.eval_q(&Q::one())).collect()
    }

    /// Sum through bracket power `order`, at `a = 1`.
    pub fn eval(&self, x: f64, order: u32) -> Result<f64> {
        self.eval_at(x, 1.0, order)
    }

    pub fn eval_at(&self, x: f64, a: f64, order: u32) -> Result<f64> {
        if order > self.max_power() {
            return Err(Error::OrderTooLarge {
                requested: order as usize,
                available: self.max_power() as usize,
            });
        }
        if !x.is_finite() || x.abs() >= 1.0 {
            return domain(format!("tables are expansions about 0 and need |x| < 1, got {x}"));
        }
        let mut sum = 0.0;
        for (k, c) in self.coefficients.iter().enumerate() {
            let p = self.power(k);
            if p > order {
                break;
            }
            sum += c.eval(a) * x.powi(p as i32);
        }
        Ok(self.prefactor.eval(x) * sum)
    }

    /// Full truncated sum.
    pub fn eval_full(&self, x: f64) -> Result<f64> {
        self.eval(x, self.max_power())
    }

    /// Numerical value of the expanded function by direct summation.
    pub fn target_value(&self, x: f64, tol: f64) -> Result<EvalResult> {
        target_value(&self.target, x, tol)
    }

    /// Oracle bracket coefficients (`a = 1`) for every stored power.
    pub fn oracle_coefficients(&self) -> Result<Vec<Q>> {
        let n = self.max_power() as usize + self.prefactor.x_power as usize + 1;
        let f = target_series(&self.target, n)?;
        let bracket = strip_prefactor(&f, &self.prefactor, n)?;
        Ok((0..self.coefficients.len())
            .map(|k| bracket[self.power(k) as usize].clone())
            .collect())
    }

    /// Compares every stored coefficient with the exact oracle.
    pub fn verify(&self) -> Result<Vec<CoeffCheck>> {
        let oracle = if self.id == GEOMETRIC_ID {
            self.geometric_oracle()?
        } else {
            self.oracle_coefficients()?
                .into_iter()
                .map(Poly::constant)
                .collect()
        };
        Ok(self
            .coefficients
            .iter()
            .zip(oracle)
            .enumerate()
            .map(|(k, (stored, oracle))| CoeffCheck {
                power: self.power(k),
                matches: *stored == oracle,
                stored: poly_in_a(stored),
                oracle: poly_in_a(&oracle),
            })
            .collect())
    }

    fn geometric_oracle(&self) -> Result<Vec<Poly>> {
        let Target::Series(spec) = self.target else {
            unreachable!("the geometric table expands a plain series")
        };
        (0..self.coefficients.len())
            .map(|k| taylor_poly_in_a(&spec, self.power(k) as usize))
            .collect()
    }

    pub fn export(&self) -> TableExport {
        TableExport {
            id: self.id,
            description: self.description,
            prefactor: self.prefactor.to_string(),
            first_power: self.first_power,
            step: self.step,
            coefficients: self
                .coefficients
                .iter()
                .enumerate()
                .map(|(k, c)| ExportCoeff {
                    power: self.power(k),
                    value: poly_in_a(c),
                    pairs: c.coeffs().iter().map(|v| [v.numer().to_string(), v.denom().to_string()]).collect(),
                })
                .collect(),
        }
    }
}

/// One stored coefficient against its oracle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoeffCheck {
    pub power: u32,
    pub stored: String,
    pub oracle: String,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableExport {
    pub id: &'static str,
    pub description: &'static str,
    pub prefactor: String,
    pub first_power: u32,
    pub step: u32,
    pub coefficients: Vec<ExportCoeff>,
}

/// `pairs[j]` is the numerator/denominator of the `a^j` coefficient.
#[derive(Debug, Clone, Serialize)]
pub struct ExportCoeff {
    pub power: u32,
    pub value: String,
    pub pairs: Vec<[String; 2]>,
}

fn poly_in_a(p: &Poly) -> String {
    match p.degree() {
        None => "0".into(),
        Some(0) => p.coeff(0).to_string(),
        Some(_) => {
            let terms: Vec<String> = p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| match j {
                    0 => c.to_string(),
                    1 => format!("({c})·a"),
                    _ => format!("({c})·a^{j}"),
                })
                .collect();
            terms.join(" + ")
        }
    }
}

const GEOMETRIC_ID: &str = "3.04";

fn consts(c: &[(i64, i64)]) -> Vec<Poly> {
    c.iter().map(|&(n, d)| Poly::constant(q(n, d))).collect()
}

fn pre(n: i64, d: i64, x_power: u32, half_power: i32) -> Prefactor {
    Prefactor {
        coef: q(n, d),
        x_power,
        half_power,
    }
}

#[allow(clippy::too_many_arguments)]
fn table(
    id: &'static str,
    description: &'static str,
    prefactor: Prefactor,
    first_power: u32,
    step: u32,
    coefficients: Vec<Poly>,
    target: Target,
) -> CoeffTable {
    CoeffTable {
        id,
        description,
        prefactor,
        first_power,
        step,
        coefficients,
        target,
    }
}

fn build() -> Vec<CoeffTable> {
    use Target::{Integral, Probability, Series};
    let lin = SeriesSpec::linear;
    let bil = SeriesSpec::bilinear;
    let one = Prefactor::unit;
    vec![
        table(
            GEOMETRIC_ID,
            "Σ a^m J_m(mx)/m",
            one(),
            1,
            1,
            vec![
                Poly::new(vec![qi(0), q(1, 2)]),
                Poly::new(vec![qi(0), qi(0), q(1, 4)]),
                Poly::new(vec![qi(0), q(-1, 16), qi(0), q(3, 16)]),
            ],
            Series(lin(-1)),
        ),
        table(
            "3.20",
            "Σ J_m(mx)/m",
            one(),
            1,
            1,
            consts(&[(1, 2), (1, 4), (1, 8), (1, 12), (23, 384), (11, 240), (841, 23040), (151, 5040)]),
            Series(lin(-1)),
        ),
        table(
            "3.22",
            "Σ J'_m(mx)",
            one(),
            0,
            1,
            consts(&[(1, 2), (1, 2), (3, 8), (1, 3), (115, 384), (11, 40), (5887, 23040), (151, 630)]),
            Series(lin(0).deriv(1)),
        ),
        table(
            "3.49",
            "Σ 2n J_2n(2nx)",
            one(),
            2,
            2,
            consts(&[(1, 1), (7, 3), (239, 60), (1481, 252), (292223, 36288)]),
            Series(lin(1).even()),
        ),
        table(
            "3.50",
            "Σ J_2n(2nx)/(2n)",
            one(),
            2,
            2,
            consts(&[(1, 4), (1, 12), (11, 240), (151, 5040), (15619, 725760)]),
            Series(lin(-1).even()),
        ),
        table(
            "3.51",
            "Σ J'_2n(2nx)",
            one(),
            1,
            2,
            consts(&[(1, 2), (1, 3), (11, 40), (151, 630), (15619, 72576)]),
            Series(lin(0).even().deriv(1)),
        ),
        table(
            "3.52",
            "Σ J'_2n(2nx), resummed",
            pre(1, 2, 1, -1),
            0,
            2,
            consts(&[(1, 1), (1, 6), (11, 120), (59, 1008), (14971, 362880)]),
            Series(lin(0).even().deriv(1)),
        ),
        table(
            "3.55",
            "Σ 2n J_2n(2nx), resummed",
            pre(1, 1, 2, -5),
            0,
            2,
            consts(&[(1, 1), (-1, 6), (1, 40), (5, 1008), (103, 72576)]),
            Series(lin(1).even()),
        ),
        table(
            "3.56",
            "∫₀^x Σ n J_2n(2nt) dt",
            pre(1, 6, 3, -3),
            0,
            2,
            consts(&[(1, 1), (-1, 10), (-1, 56), (-19, 3024), (-809, 266112)]),
            Integral(lin(1).even().scaled(0.5)),
        ),
        table(
            "5.02",
            "Σ n J_n²(nx)",
            pre(1, 4, 2, 0),
            0,
            2,
            consts(&[(1, 1), (7, 4), (239, 96), (7435, 2304), (292223, 73728)]),
            Series(bil(1)),
        ),
        table(
            "5.06",
            "Σ n J_n²(nx), resummed",
            pre(1, 4, 2, -4),
            0,
            2,
            consts(&[(1, 1), (-1, 4), (-1, 96), (-5, 2304), (-23, 73728)]),
            Series(bil(1)),
        ),
        table(
            "5.07",
            "Σ n J'_n²(nx)",
            one(),
            0,
            2,
            consts(&[(1, 4), (5, 16), (127, 384), (3133, 9216), (101887, 294912)]),
            Series(bil(1).derivs(1, 1)),
        ),
        table(
            "5.09",
            "Σ n J'_n²(nx), resummed",
            pre(1, 4, 0, -2),
            0,
            2,
            consts(&[(1, 1), (1, 4), (7, 96), (85, 2304), (1631, 73728)]),
            Series(bil(1).derivs(1, 1)),
        ),
        table(
            "5.10",
            "Σ J_n²(nx)/n",
            pre(1, 4, 2, 0),
            0,
            2,
            consts(&[(1, 1), (1, 4), (11, 96), (151, 2304), (15619, 368640)]),
            Series(bil(-1)),
        ),
        table(
            "6.04",
            "x² Σ J'_2n(2nx) − (1−x²) ∫₀^x Σ n J_2n(2nt) dt",
            pre(1, 3, 3, -1),
            0,
            2,
            consts(&[(1, 1), (3, 10), (41, 280), (275, 3024), (28121, 443520)]),
            Probability,
        ),
    ]
}

pub fn tables() -> &'static [CoeffTable] {
    static TABLES: OnceLock<Vec<CoeffTable>> = OnceLock::new();
    TABLES.get_or_init(build)
}

pub fn lookup_table(id: &str) -> Result<&'static CoeffTable> {
    tables()
        .iter()
        .find(|t| t.id == id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

/// `prefactor(x) · Σ_{power ≤ order} c_k x^power` for a registered table.
pub fn eval_coeff_table(id: &str, x: f64, order: u32) -> Result<f64> {
    lookup_table(id)?.eval(x, order)
}

/// `[x^k]` of `J_m^{(d)}(mx)`, with the derivative taken in the full argument.
fn bessel_term_coeff(m: u32, d: u8, k: usize) -> Q {
    // J_m(mx) = Σ_s (−1)^s (m/2)^{m+2s} x^{m+2s} / (s!(m+s)!)
    let p = k + d as usize;
    let m_us = m as usize;
    if p < m_us || (p - m_us) % 2 == 1 {
        return Q::zero();
    }
    let s = (p - m_us) / 2;
    let half_m = q(m as i64, 2);
    let mut c = pow_q(&half_m, p as u32) / Q::from_integer(factorial(s as u64) * factorial((m_us + s) as u64));
    if s % 2 == 1 {
        c = -c;
    }
    // d/dx J_m(mx) = m J'_m(mx)
    for j in 1..=d as usize {
        c *= qi((k + j) as i64);
    }
    c / pow_q(&qi(m as i64), d as u32)
}

fn pow_q(base: &Q, e: u32) -> Q {
    let mut out = Q::one();
    for _ in 0..e {
        out *= base;
    }
    out
}

fn check_order(k: usize) -> Result<()> {
    if k > MAX_TAYLOR_ORDER {
        return Err(Error::OrderTooLarge {
            requested: k,
            available: MAX_TAYLOR_ORDER,
        });
    }
    Ok(())
}

/// Coefficient of order `m`, without the geometric factor `a^m`.
fn exact_weight(spec: &SeriesSpec, m: u32) -> Result<Q> {
    let scale = Q::from_float(spec.scale)
        .ok_or_else(|| Error::InvalidSpec(format!("scale {} is not finite", spec.scale)))?;
    let mw = if spec.weight >= 0 {
        pow_q(&qi(m as i64), spec.weight as u32)
    } else {
        Q::one() / pow_q(&qi(m as i64), (-spec.weight) as u32)
    };
    let sign = if spec.alternating && m % 2 == 1 { -Q::one() } else { Q::one() };
    Ok(scale * mw * sign)
}

/// `[x^k]` of the series as a polynomial in the geometric parameter `a`.
pub fn taylor_poly_in_a(spec: &SeriesSpec, k: usize) -> Result<Poly> {
    spec.validate()?;
    check_order(k)?;
    let (start, step) = spec.orders();
    let mut coeffs = vec![Q::zero(); k + 3];
    let mut m = start;
    // D^d J_m(mx) starts at x^{m−d}; a product at x^{2n−d₁−d₂}
    loop {
        let c = match spec.family {
            Family::Linear => {
                if m as usize > k + spec.deriv.0 as usize {
                    break;
                }
                bessel_term_coeff(m, spec.deriv.0, k)
            }
            Family::Bilinear => {
                if 2 * m as usize > k + (spec.deriv.0 + spec.deriv.1) as usize {
                    break;
                }
                let mut acc = Q::zero();
                for i in 0..=k {
                    let a = bessel_term_coeff(m, spec.deriv.0, i);
                    if a.is_zero() {
                        continue;
                    }
                    acc += a * bessel_term_coeff(m, spec.deriv.1, k - i);
                }
                acc
            }
        };
        if !c.is_zero() {
            let w = exact_weight(spec, m)?;
            if coeffs.len() <= m as usize {
                coeffs.resize(m as usize + 1, Q::zero());
            }
            coeffs[m as usize] += w * c;
        }
        m += step;
    }
    Ok(Poly::new(coeffs))
}

/// Exact `k`-th Taylor coefficient of the series about `x = 0`.
///
/// Each order contributes the exact coefficient of its ascending Bessel
/// series, so only orders up to `k + d` (linear) or `(k + d₁ + d₂)/2`
/// (bilinear) enter. A geometric parameter is taken at its exact binary
/// value.
pub fn extract_taylor_coeff(spec: &SeriesSpec, k: usize) -> Result<Q> {
    let p = taylor_poly_in_a(spec, k)?;
    if spec.geometric_a == 1.0 {
        return Ok(p.coeffs().iter().fold(Q::zero(), |acc, c| acc + c));
    }
    let a = Q::from_float(spec.geometric_a).expect("validated");
    Ok(p.eval_q(&a))
}

/// Taylor coefficients `0..n` of a table target.
pub fn target_series(target: &Target, n: usize) -> Result<Vec<Q>> {
    match target {
        Target::Series(spec) => (0..n).map(|k| extract_taylor_coeff(spec, k)).collect(),
        Target::Integral(spec) => {
            let mut out = vec![Q::zero()];
            for k in 1..n {
                out.push(extract_taylor_coeff(spec, k - 1)? / qi(k as i64));
            }
            Ok(out)
        }
        Target::Probability => {
            let jp = target_series(&Target::Series(probability_parts().0), n)?;
            let int = target_series(&Target::Integral(probability_parts().1), n)?;
            let mut out = vec![Q::zero(); n];
            for k in 0..n {
                if k >= 2 {
                    out[k] += &jp[k - 2] + &int[k - 2];
                }
                out[k] -= &int[k];
            }
            Ok(out)
        }
    }
}

/// `Σ J'_{2n}(2nx)` and `Σ n J_{2n}(2nx)`.
pub(crate) fn probability_parts() -> (SeriesSpec, SeriesSpec) {
    (
        SeriesSpec::linear(0).even().deriv(1),
        SeriesSpec::linear(1).even().scaled(0.5),
    )
}

/// Divides a target series by `coef · x^p · (1 − x²)^(h/2)`.
fn strip_prefactor(f: &[Q], p: &Prefactor, n: usize) -> Result<Vec<Q>> {
    let shift = p.x_power as usize;
    if let Some((i, _)) = f.iter().enumerate().take(shift).find(|(_, c)| !c.is_zero()) {
        return domain(format!("the target has an x^{i} term below the prefactor's x^{shift}"));
    }
    let shifted: Vec<Q> = f.iter().skip(shift).cloned().collect();
    let inv = one_minus_z2_pow_half(-p.half_power as i64, n);
    let out = series_mul(&shifted, &inv, n);
    let coef = vec![p.coef.clone()];
    Ok(series_div(&out, &coef, n))
}

/// Numerical value of a table target.
pub fn target_value(target: &Target, x: f64, tol: f64) -> Result<EvalResult> {
    match target {
        Target::Series(spec) => direct::sum_series(spec, x, tol),
        Target::Integral(spec) => direct::sum_integral(spec, x, tol),
        Target::Probability => probability_hat(x, tol),
    }
}

/// `x² Σ J'_{2n}(2nx) − (1 − x²) ∫₀^x Σ n J_{2n}(2nt) dt`
pub(crate) fn probability_hat(x: f64, tol: f64) -> Result<EvalResult> {
    let (jp, int) = probability_parts();
    let a = direct::sum_series(&jp, x, tol)?;
    let b = direct::sum_integral(&int, x, tol)?;
    let g = (1.0 - x) * (1.0 + x);
    Ok(EvalResult {
        value: x * x * a.value - g * b.value,
        abs_error_estimate: x * x * a.abs_error_estimate + g * b.abs_error_estimate,
        terms_used: a.terms_used + b.terms_used,
        method: "direct:probability".into(),
    })
}

/// Size of the first omitted bracket term at `x`, from the oracle.
pub fn first_omitted(table: &CoeffTable, x: f64) -> Result<f64> {
    let next = table.max_power() + table.step;
    let n = next as usize + table.prefactor.x_power as usize + 1;
    let f = target_series(&table.target, n)?;
    let bracket = strip_prefactor(&f, &table.prefactor, n)?;
    let c = q_to_f64(&bracket[next as usize]);
    Ok((table.prefactor.eval(x) * c * x.powi(next as i32)).abs())
}
