//! Brute-force summation of Kapteyn series with a certified tail.
//!
//! Every other route in the crate is checked against this engine, so it is
//! deliberately simple: generate terms with [`crate::specfun::scaled_bessel`],
//! stop on a geometric tail model, and fall back to double-double terms
//! when the series cancels too strongly for binary64.

use std::fmt;

use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::error::{domain, Error, Result};
use crate::quad::{self, QuadOptions};
use crate::specfun::{scaled_bessel_dd, scaled_bessel_with, ScaledConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `Σ c_m D^d J_m(mx)`
    Linear,
    /// `Σ c_n D^{d₁}J_n(nx) · D^{d₂}J_n(nx)`
    Bilinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    All,
    /// orders 2, 4, 6, …
    Even,
    /// orders 1, 3, 5, …
    Odd,
}

/// One Kapteyn series.
///
/// The coefficient of order `m` is `scale · (±1)^m · m^weight · a^m`, where
/// `m` is the Bessel order itself (so `Σ 2n J_{2n}` is weight 1, even parity).
/// Derivatives are taken with respect to the full Bessel argument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesSpec {
    pub family: Family,
    pub weight: i32,
    pub alternating: bool,
    pub parity: Parity,
    pub geometric_a: f64,
    /// `(d, 0)` for linear series, `(d₁, d₂)` for bilinear ones.
    pub deriv: (u8, u8),
    pub scale: f64,
}

impl SeriesSpec {
    pub fn linear(weight: i32) -> Self {
        Self {
            family: Family::Linear,
            weight,
            alternating: false,
            parity: Parity::All,
            geometric_a: 1.0,
            deriv: (0, 0),
            scale: 1.0,
        }
    }

    pub fn bilinear(weight: i32) -> Self {
        Self {
            family: Family::Bilinear,
            ..Self::linear(weight)
        }
    }

    pub fn even(self) -> Self {
        self.with_parity(Parity::Even)
    }

    pub fn odd(self) -> Self {
        self.with_parity(Parity::Odd)
    }

    pub fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    pub fn alternating(mut self) -> Self {
        self.alternating = true;
        self
    }

    /// Derivative order of a linear series.
    pub fn deriv(mut self, d: u8) -> Self {
        self.deriv = (d, 0);
        self
    }

    /// Derivative orders of the two factors of a bilinear series.
    pub fn derivs(mut self, d1: u8, d2: u8) -> Self {
        self.deriv = (d1, d2);
        self
    }

    pub fn geometric(mut self, a: f64) -> Self {
        self.geometric_a = a;
        self
    }

    pub fn scaled(mut self, s: f64) -> Self {
        self.scale = s;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSpec(m));
        if !(-2..=4).contains(&self.weight) {
            return bad(format!("weight {} outside [-2, 4]", self.weight));
        }
        if !(self.geometric_a > 0.0 && self.geometric_a <= 1.0) {
            return bad(format!("geometric parameter {} outside (0, 1]", self.geometric_a));
        }
        if self.deriv.0 > 2 || self.deriv.1 > 2 {
            return bad(format!("derivative orders {:?} must be 0, 1 or 2", self.deriv));
        }
        if self.family == Family::Linear && self.deriv.1 != 0 {
            return bad("a linear series has a single derivative order".into());
        }
        if !self.scale.is_finite() || self.scale == 0.0 {
            return bad(format!("scale {} must be finite and non-zero", self.scale));
        }
        Ok(())
    }

    /// First order and step of the summation index.
    pub fn orders(&self) -> (u32, u32) {
        match self.parity {
            Parity::All => (1, 1),
            Parity::Even => (2, 2),
            Parity::Odd => (1, 2),
        }
    }

    /// Coefficient of order `m`.
    pub fn coefficient(&self, m: u32) -> f64 {
        let mut c = self.scale * (m as f64).powi(self.weight);
        if self.geometric_a != 1.0 {
            c *= self.geometric_a.powi(m as i32);
        }
        if self.alternating && m % 2 == 1 {
            -c
        } else {
            c
        }
    }

}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale != 1.0 {
            write!(f, "{}·", self.scale)?;
        }
        write!(f, "Σ")?;
        match self.parity {
            Parity::All => write!(f, "[m≥1]")?,
            Parity::Even => write!(f, "[m even]")?,
            Parity::Odd => write!(f, "[m odd]")?,
        }
        if self.alternating {
            write!(f, " (−1)^m")?;
        }
        if self.weight != 0 {
            write!(f, " m^{}", self.weight)?;
        }
        if self.geometric_a != 1.0 {
            write!(f, " {}^m", self.geometric_a)?;
        }
        let j = |d: u8| match d {
            0 => "J_m(mx)",
            1 => "J'_m(mx)",
            _ => "J''_m(mx)",
        };
        match self.family {
            Family::Linear => write!(f, " {}", j(self.deriv.0)),
            Family::Bilinear => write!(f, " {}·{}", j(self.deriv.0), j(self.deriv.1)),
        }
    }
}

/// Value with an error estimate and the effort spent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub terms_used: usize,
    pub method: String,
}

/// Limits of the direct engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectOptions {
    pub x_max: f64,
    /// Refuse when the predicted number of terms exceeds this.
    pub max_terms: usize,
    /// Largest predicted term count for which the double-double fallback runs.
    pub dd_max_terms: usize,
    pub scaled: ScaledConfig,
}

impl Default for DirectOptions {
    fn default() -> Self {
        Self {
            x_max: 0.999,
            max_terms: 2_000_000,
            dd_max_terms: 8_000,
            scaled: ScaledConfig::default(),
        }
    }
}

pub const MIN_TOL: f64 = 1e-14;
const ABS_FLOOR: f64 = 1e-15;
// relative accuracy of one binary64 term
const TERM_EPS: f64 = 2e-15;
const RUN: usize = 5;

fn check_x(x: f64, opts: &DirectOptions) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return domain(format!("series argument must be finite and ≥ 0, got {x}"));
    }
    if x > opts.x_max {
        return Err(Error::BeyondDirectRange {
            x,
            x_max: opts.x_max,
        });
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol >= MIN_TOL) || !tol.is_finite() {
        return domain(format!("tolerance must be at least {MIN_TOL:e}, got {tol}"));
    }
    Ok(())
}

/// Order beyond which the tail model may be trusted.
fn min_order(spec: &SeriesSpec, x: f64) -> u32 {
    let g = (1.0 - x) * (1.0 + x);
    let mut m = (10.0 / (g * g.sqrt())).ceil();
    if spec.geometric_a < 1.0 {
        m = m.min((36.0 / -spec.geometric_a.ln()).ceil());
    }
    m.max(1.0) as u32
}

/// Rough count of orders needed before the terms fall below `tol`
/// relative, from `J_m(mx) ~ m^{−1/3} e^{−m(atanh w − w)}`, `w = √(1−x²)`.
pub(crate) fn predicted_order(spec: &SeriesSpec, x: f64, tol: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    let (_, gap) = crate::specfun::atanh_gap(x);
    let k = if spec.family == Family::Bilinear { 2.0 } else { 1.0 };
    let rate = k * gap - spec.geometric_a.ln();
    let p = (spec.weight as f64 + k - 1.0).max(0.0);
    let target = (1.0 / tol).ln().max(20.0);
    let mut m = target / rate;
    for _ in 0..6 {
        m = (target + p * m.max(1.0).ln()) / rate;
    }
    m
}

fn predicted_terms(spec: &SeriesSpec, x: f64, tol: f64) -> usize {
    let (_, step) = spec.orders();
    let m = predicted_order(spec, x, tol).max(min_order(spec, x) as f64);
    (m / step as f64).ceil() as usize + RUN
}

/// Running state of the stopping rule.
struct Tail {
    recent: [f64; RUN],
    filled: usize,
    small_run: usize,
}

impl Tail {
    fn new() -> Self {
        Self {
            recent: [0.0; RUN],
            filled: 0,
            small_run: 0,
        }
    }

    /// Records `|t|` and returns the geometric tail bound once the run of
    /// small terms is long enough and the ratios are below one.
    fn push(&mut self, t: f64, threshold: f64, past_min: bool) -> Option<f64> {
        self.recent.rotate_left(1);
        self.recent[RUN - 1] = t;
        self.filled = (self.filled + 1).min(RUN);
        if t <= threshold {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        if !past_min || self.small_run < RUN || self.filled < RUN {
            return None;
        }
        let mut r: f64 = 0.0;
        for w in self.recent.windows(2) {
            let ratio = if w[0] == 0.0 {
                if w[1] == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                w[1] / w[0]
            };
            r = r.max(ratio);
        }
        if r >= 1.0 {
            return None;
        }
        Some(t * r / (1.0 - r))
    }
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct Compensated {
    sum: f64,
    c: f64,
}

impl Compensated {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.c += (self.sum - t) + v;
        } else {
            self.c += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

struct Summed {
    value: f64,
    abs_sum: f64,
    tail: f64,
    terms: usize,
}

/// Sums `term(m)` over the orders of `spec` until the tail model certifies
/// `tol`.
fn run_sum<F>(spec: &SeriesSpec, x: f64, tol: f64, budget: usize, mut term: F) -> Result<Summed>
where
    F: FnMut(u32) -> Result<f64>,
{
    let (first, step) = spec.orders();
    let m_min = min_order(spec, x);
    let mut acc = Compensated::default();
    let mut abs_sum = 0.0;
    let mut tail = Tail::new();
    let mut m = first;
    let mut terms = 0usize;
    loop {
        let t = term(m)?;
        acc.add(t);
        abs_sum += t.abs();
        terms += 1;
        let s = acc.value();
        let threshold = (tol * s.abs()).max(ABS_FLOOR);
        if let Some(bound) = tail.push(t.abs(), threshold, m >= m_min) {
            if bound <= 0.5 * threshold {
                return Ok(Summed {
                    value: s,
                    abs_sum,
                    tail: bound,
                    terms,
                });
            }
        }
        if terms > budget {
            return Err(Error::NonConvergent(format!(
                "{spec} at x = {x}: no convergence after {terms} terms (partial sum {s})"
            )));
        }
        m += step;
    }
}

fn dd_pow(a: f64, m: u32) -> TwoFloat {
    let mut result = TwoFloat::from(1.0);
    let mut base = TwoFloat::from(a);
    let mut e = m;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base;
        }
        base = base * base;
        e >>= 1;
    }
    result
}

fn dd_recip(t: TwoFloat) -> TwoFloat {
    let y = t.hi().recip();
    let e = TwoFloat::from(1.0) - t * y;
    e * y + y
}

/// Coefficient without `scale`, in double-double.
fn dd_coefficient(spec: &SeriesSpec, m: u32) -> TwoFloat {
    let mf = m as f64;
    let mut c = match spec.weight {
        w if w >= 0 => dd_pow(mf, w as u32),
        w => dd_recip(dd_pow(mf, (-w) as u32)),
    };
    if spec.geometric_a != 1.0 {
        c = c * dd_pow(spec.geometric_a, m);
    }
    if spec.alternating && m % 2 == 1 {
        -c
    } else {
        c
    }
}

fn dd_pick(t: &(TwoFloat, TwoFloat, TwoFloat), d: u8) -> TwoFloat {
    match d {
        0 => t.0,
        1 => t.1,
        _ => t.2,
    }
}

fn sum_dd(spec: &SeriesSpec, x: f64, tol: f64, budget: usize) -> Result<EvalResult> {
    let mut total = TwoFloat::from(0.0);
    let mut abs_sum = 0.0;
    let mut tail = Tail::new();
    let (first, step) = spec.orders();
    let m_min = min_order(spec, x);
    let mut m = first;
    let mut terms = 0;
    loop {
        let b = scaled_bessel_dd(m, x);
        let mut t = dd_coefficient(spec, m) * dd_pick(&b, spec.deriv.0);
        if spec.family == Family::Bilinear {
            t = t * dd_pick(&b, spec.deriv.1);
        }
        total += t;
        let tf = f64::from(t).abs();
        abs_sum += tf;
        terms += 1;
        let s = f64::from(total) * spec.scale;
        let threshold = (tol * s.abs()).max(ABS_FLOOR) / spec.scale.abs();
        if let Some(bound) = tail.push(tf, threshold, m >= m_min) {
            if bound <= 0.5 * threshold {
                let scale = spec.scale.abs();
                return Ok(EvalResult {
                    value: s,
                    abs_error_estimate: scale * (bound + 1e-30 * abs_sum) + f64::EPSILON * s.abs(),
                    terms_used: terms,
                    method: "direct-dd".into(),
                });
            }
        }
        if terms > budget {
            return Err(Error::NonConvergent(format!(
                "{spec} at x = {x}: double-double pass exceeded {budget} terms"
            )));
        }
        m += step;
    }
}

/// `Σ c_m · term_m(x)` for the given spec.
pub fn sum_series(spec: &SeriesSpec, x: f64, tol: f64) -> Result<EvalResult> {
    sum_series_with(spec, x, tol, &DirectOptions::default())
}

pub fn sum_series_with(
    spec: &SeriesSpec,
    x: f64,
    tol: f64,
    opts: &DirectOptions,
) -> Result<EvalResult> {
    spec.validate()?;
    check_x(x, opts)?;
    check_tol(tol)?;
    let predicted = predicted_terms(spec, x, tol);
    if predicted > opts.max_terms {
        return Err(Error::NonConvergent(format!(
            "{spec} at x = {x} needs about {predicted} terms (budget {})",
            opts.max_terms
        )));
    }
    let budget = opts.max_terms;
    let cfg = opts.scaled;
    let bilinear = spec.family == Family::Bilinear;
    let (d1, d2) = spec.deriv;
    let summed = run_sum(spec, x, tol, budget, |m| {
        let b = scaled_bessel_with(m, x, &cfg)?;
        let mut v = b.deriv(d1);
        if bilinear {
            v *= b.deriv(d2);
        }
        Ok(spec.coefficient(m) * v)
    })?;
    let rounding = TERM_EPS * summed.abs_sum;
    if rounding > tol * summed.value.abs() && summed.terms <= opts.dd_max_terms {
        return sum_dd(spec, x, tol, 4 * opts.dd_max_terms);
    }
    Ok(EvalResult {
        value: summed.value,
        abs_error_estimate: summed.tail + rounding,
        terms_used: summed.terms,
        method: "direct".into(),
    })
}

/// `∫₀^{X/m}` of `J_m(mx)` via `∫₀^X J_m = 2 Σ_k J_{m+2k+1}(X)`.
///
/// The tail orders come from a backward recurrence normalized by an
/// accurate `J_m(X)`.
fn integral_j(m: u32, beta: f64, jm: f64) -> f64 {
    if beta == 0.0 || jm == 0.0 {
        return 0.0;
    }
    let x = m as f64 * beta;
    let (_, gap0) = crate::specfun::atanh_gap(beta);
    let base = m as f64 * gap0;
    // smallest offset j with J_{m+j}(X)/J_m(X) below e^{−46}
    let mut j = 8u32;
    loop {
        let n = (m + j) as f64;
        let (_, gap) = crate::specfun::atanh_gap(x / n);
        if n * gap - base >= 46.0 || j > 1 << 24 {
            break;
        }
        j *= 2;
    }
    let start = m + 2 * j + 20;
    let mut p_next = 0.0;
    let mut p = 1e-200;
    let mut odd_sum = 0.0;
    let mut k = start;
    while k > m {
        if (k - m) % 2 == 1 {
            odd_sum += p;
        }
        let prev = (2.0 * k as f64 / x) * p - p_next;
        p_next = p;
        p = prev;
        k -= 1;
        if p.abs() > 1e250 {
            p *= 1e-250;
            p_next *= 1e-250;
            odd_sum *= 1e-250;
        }
    }
    2.0 * odd_sum / p * jm / m as f64
}

/// `∫₀^β` of the series, term by term.
pub fn sum_integral(spec: &SeriesSpec, beta: f64, tol: f64) -> Result<EvalResult> {
    sum_integral_with(spec, beta, tol, &DirectOptions::default())
}

pub fn sum_integral_with(
    spec: &SeriesSpec,
    beta: f64,
    tol: f64,
    opts: &DirectOptions,
) -> Result<EvalResult> {
    spec.validate()?;
    check_x(beta, opts)?;
    check_tol(tol)?;
    if beta == 0.0 {
        return Ok(EvalResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            terms_used: 1,
            method: "direct-integral".into(),
        });
    }
    let predicted = predicted_terms(spec, beta, tol);
    let budget_cap = match spec.family {
        Family::Linear => opts.max_terms,
        Family::Bilinear => opts.max_terms.min(50_000),
    };
    if predicted > budget_cap {
        return Err(Error::NonConvergent(format!(
            "∫ {spec} up to {beta} needs about {predicted} terms (budget {budget_cap})"
        )));
    }
    let cfg = opts.scaled;
    let (d1, d2) = spec.deriv;
    let mut quad_err = 0.0;
    let summed = match spec.family {
        Family::Linear => run_sum(spec, beta, tol, budget_cap, |m| {
            let b = scaled_bessel_with(m, beta, &cfg)?;
            let mf = m as f64;
            let v = match d1 {
                0 => integral_j(m, beta, b.value),
                1 => b.value / mf,
                _ => (b.prime - if m == 1 { 0.5 } else { 0.0 }) / mf,
            };
            Ok(spec.coefficient(m) * v)
        })?,
        Family::Bilinear => {
            let q = QuadOptions::rel(1e-13).with_abs(1e-300);
            run_sum(spec, beta, tol, budget_cap, |m| {
                let r = quad::try_integrate(
                    |x| {
                        let b = scaled_bessel_with(m, x, &cfg)?;
                        Ok(b.deriv(d1) * b.deriv(d2))
                    },
                    0.0,
                    beta,
                    &q,
                )?;
                let c = spec.coefficient(m);
                quad_err += (c * r.error).abs();
                Ok(c * r.value)
            })?
        }
    };
    Ok(EvalResult {
        value: summed.value,
        abs_error_estimate: summed.tail + TERM_EPS * summed.abs_sum + quad_err,
        terms_used: summed.terms,
        method: match spec.family {
            Family::Linear => "direct-integral".into(),
            Family::Bilinear => "direct-integral-quadrature".into(),
        },
    })
}

/// Linear even series whose angular transform reproduces `spec`, for
/// bilinear specs with `(d₁, d₂) ∈ {(0,0), (0,1), (1,0)}`.
///
/// `Σ s n^ν J_n²(nx)` pairs with `Σ s 2^{−ν} (2n)^ν J_{2n}(2ny)`; the
/// derivative cases pair with the `J'` series.
pub fn linear_partner(spec: &SeriesSpec) -> Option<SeriesSpec> {
    if spec.family != Family::Bilinear || spec.parity != Parity::All || spec.alternating {
        return None;
    }
    if spec.geometric_a != 1.0 {
        return None;
    }
    let d = match spec.deriv {
        (0, 0) => 0,
        (0, 1) | (1, 0) => 1,
        _ => return None,
    };
    Some(
        SeriesSpec::linear(spec.weight)
            .even()
            .deriv(d)
            .scaled(spec.scale * 2f64.powi(-spec.weight)),
    )
}

/// `(2/π) ∫₀^{π/2} cos^d φ · S(x cos φ) dφ` for a linear even series `S`
/// with derivative order `d`.
///
/// With `S = Σ c_{2n} D^d J_{2n}(2ny)` this equals `Σ c_{2n} J_n²(nx)` for
/// `d = 0` and `Σ c_{2n} J_n(nx) J'_n(nx)` for `d = 1`.
pub fn bilinear_from_linear(spec: &SeriesSpec, x: f64, tol: f64) -> Result<EvalResult> {
    spec.validate()?;
    if spec.family != Family::Linear || spec.parity != Parity::Even {
        return Err(Error::InvalidSpec(format!(
            "the angular transform takes a linear even series, got {spec}"
        )));
    }
    let opts = DirectOptions::default();
    check_x(x, &opts)?;
    check_tol(tol)?;
    let d = spec.deriv.0 as i32;
    let inner_tol = (0.1 * tol).max(MIN_TOL);
    let mut inner_err: f64 = 0.0;
    let mut terms = 0;
    let q = QuadOptions::rel(tol).with_abs(ABS_FLOOR);
    let r = quad::try_integrate(
        |phi| {
            let c = phi.cos();
            let s = sum_series(spec, x * c, inner_tol)?;
            inner_err = inner_err.max(s.abs_error_estimate);
            terms += s.terms_used;
            Ok(c.powi(d) * s.value)
        },
        0.0,
        std::f64::consts::FRAC_PI_2,
        &q,
    )?;
    let k = std::f64::consts::FRAC_2_PI;
    Ok(EvalResult {
        value: k * r.value,
        abs_error_estimate: k * r.error + inner_err,
        terms_used: terms,
        method: "angular-transform".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn geometric_closed_form() {
        let r = sum_series(&SeriesSpec::linear(0), 0.5, 1e-13).unwrap();
        assert!((r.value - 0.5).abs() < 1e-13, "{r:?}");
        assert!(r.abs_error_estimate < 1e-12);
    }

    #[test]
    fn zero_argument() {
        for d in 0..=2 {
            let s = SeriesSpec::linear(1).deriv(d);
            let v = sum_series(&s, 0.0, 1e-12).unwrap().value;
            let want = [0.0, 0.5, 0.5][d as usize];
            assert!((v - want).abs() < 1e-15, "d={d}: {v}");
        }
    }

    #[test]
    fn cancelling_series_uses_double_double() {
        // Σ (−1)^m m⁴ J_m(mz) = −z(1−9z)/(2(1+z)^7)
        let z: f64 = 0.9;
        let want = -z * (1.0 - 9.0 * z) / (2.0 * (1.0 + z).powi(7));
        let r = sum_series(&SeriesSpec::linear(4).alternating(), z, 1e-12).unwrap();
        assert_eq!(r.method, "direct-dd");
        assert!(rel(r.value, want) < 1e-11, "{} vs {want}", r.value);
    }

    #[test]
    fn rejects_out_of_range() {
        let s = SeriesSpec::linear(0);
        assert!(matches!(
            sum_series(&s, 0.9995, 1e-10),
            Err(Error::BeyondDirectRange { .. })
        ));
        assert!(sum_series(&s, -0.1, 1e-10).is_err());
        assert!(sum_series(&s, 0.5, 1e-16).is_err());
        assert!(sum_series(&SeriesSpec::linear(5), 0.5, 1e-10).is_err());
    }

    #[test]
    fn neumann_integral_matches_quadrature() {
        for &(m, beta) in &[(1u32, 0.5), (4, 0.9), (60, 0.95), (400, 0.99)] {
            let jm = crate::specfun::scaled_bessel(m, beta).unwrap().value;
            let got = integral_j(m, beta, jm);
            let want = quad::integrate(
                |x| crate::specfun::scaled_bessel(m, x).unwrap().value,
                0.0,
                beta,
                &QuadOptions::rel(1e-13),
            )
            .unwrap()
            .value;
            assert!(rel(got, want) < 1e-11, "m={m} β={beta}: {got} vs {want}");
        }
    }

    #[test]
    fn partner_of_nielson_sum() {
        let p = linear_partner(&SeriesSpec::bilinear(-2)).unwrap();
        assert_eq!(p, SeriesSpec::linear(-2).even().scaled(4.0));
        assert!(linear_partner(&SeriesSpec::linear(0)).is_none());
    }
}
