use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::aux::{aux_integral, AuxId};
use super::phase::{
    breakpoints, cot_minus_recip, csc_minus_recip, pi_minus_psi, psi, sin_cos_psi, sine_tail,
    width_c, IntegrandParams,
};
use crate::direct::EvalResult;
use crate::error::{domain, Result};
use crate::quad::{self, QuadOptions, QuadResult};

/// Largest argument accepted by the plain integral representations.
pub const X_MAX_PLAIN: f64 = 0.999;
/// Largest argument accepted by the regularized forms.
pub const X_MAX_REGULARIZED: f64 = 0.99999;
/// Above this the `csc²` integral switches to its regularized decomposition.
pub const CSC2_SPLIT: f64 = 0.99;
/// Tightest tolerance the integral routes accept.
pub const MIN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LogVariant {
    /// `Σ J_m(mx)/m`
    AllM,
    /// `Σ_{m even} J_m(mx)/m`
    Even,
    /// `Σ a^m J_m(mx)/m`
    ParamA,
    /// `Σ J_n²(nx)/n`
    Bilinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CotVariant {
    /// `Σ J'_m(mx)`
    AllM,
    /// `Σ_{m even} J'_m(mx)`
    Even,
    /// `Σ 2 J_n(nx) J'_n(nx)`
    Bilinear,
}

/// Sum over all orders or over even orders only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumVariant {
    AllM,
    Even,
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol >= MIN_TOL && tol.is_finite()) {
        return domain(format!("tolerance must be at least {MIN_TOL:e}, got {tol}"));
    }
    Ok(())
}

fn check_x(x: f64, hi: f64) -> Result<()> {
    if !(0.0..=hi).contains(&x) {
        return domain(format!("x must lie in [0, {hi}], got {x}"));
    }
    Ok(())
}

// The kernels stay O(1) as x → 0 while the integrals vanish, so roundoff
// caps the absolute accuracy near 100ε.
const ROUNDOFF_ABS: f64 = 1e-13;

fn opts(tol: f64) -> QuadOptions {
    QuadOptions::rel(tol).with_abs((1e-2 * tol).max(ROUNDOFF_ABS))
}

fn result(value: f64, error: f64, evaluations: usize, method: &str) -> EvalResult {
    EvalResult {
        value,
        abs_error_estimate: error,
        terms_used: evaluations,
        method: method.into(),
    }
}

fn exact_zero(method: &str) -> EvalResult {
    result(0.0, 0.0, 0, method)
}

/// `ln(sin u / u)` for `0 ≤ u < π`.
fn ln_sinc(u: f64) -> f64 {
    if u < 1e-4 {
        -u * u / 6.0
    } else {
        (u.sin() / u).ln()
    }
}

/// `ψ/θ`
fn psi_over_theta(theta: f64, x: f64) -> f64 {
    if theta == 0.0 {
        1.0 - x
    } else {
        psi(theta, x) / theta
    }
}

/// `ln(2 sin φ) − ln θ`
fn log_all_regular(theta: f64, x: f64) -> f64 {
    let p = psi(theta, x);
    ln_sinc(0.5 * p) + psi_over_theta(theta, x).ln()
}

/// `ln(2 sin ψ) − ln θ − ln(π − θ)`
fn log_even_regular(theta: f64, x: f64) -> f64 {
    if theta <= FRAC_PI_2 {
        let p = psi(theta, x);
        ln_sinc(p) + psi_over_theta(theta, x).ln() + (2.0 / (PI - theta)).ln()
    } else {
        let d = PI - theta;
        let e = pi_minus_psi(theta, x);
        let ratio = if d == 0.0 { 1.0 + x } else { e / d };
        ln_sinc(e) + ratio.ln() + (2.0 / theta).ln()
    }
}

fn log_all(x: f64, tol: f64) -> Result<QuadResult> {
    // ∫₀^π ln θ dθ = π(ln π − 1)
    let r = quad::integrate_points(|t| log_all_regular(t, x), &breakpoints(x), &opts(tol))?;
    Ok(QuadResult {
        value: -(r.value + PI * (PI.ln() - 1.0)) / PI,
        error: r.error / PI,
        ..r
    })
}

fn log_even(x: f64, tol: f64) -> Result<QuadResult> {
    let r = quad::integrate_points(|t| log_even_regular(t, x), &breakpoints(x), &opts(tol))?;
    Ok(QuadResult {
        value: -(r.value + 2.0 * PI * (PI.ln() - 1.0)) / (2.0 * PI),
        error: r.error / (2.0 * PI),
        ..r
    })
}

/// `θ` with `ψ(θ) = target`, by bisection (`ψ` increases on `[0, π]`).
fn invert_psi(target: f64, x: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, PI);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if psi(mid, x) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn log_param_a(x: f64, a: f64, tol: f64) -> Result<QuadResult> {
    let gap = 1.0 - a;
    let mut pts = breakpoints(x);
    for f in [0.3, 1.0, 3.0, 10.0] {
        let target = f * gap / a.sqrt();
        if target < psi(0.25 * PI, x) {
            pts.push(invert_psi(target, x));
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let f = |t: f64| {
        let s = (0.5 * psi(t, x)).sin();
        (gap * gap + 4.0 * a * s * s).ln()
    };
    let r = quad::integrate_points(f, &pts, &opts(tol))?;
    Ok(QuadResult {
        value: -r.value / (2.0 * PI),
        error: r.error / (2.0 * PI),
        ..r
    })
}

/// Outer integral `(4/π) ∫₀^{π/2} w(φ) inner(x cos φ) dφ` of the bilinear
/// forms; the inner integrals run at a tenth of the outer tolerance.
fn bilinear_outer(
    x: f64,
    tol: f64,
    weight: impl Fn(f64) -> f64,
    inner: impl Fn(f64, f64) -> Result<QuadResult>,
) -> Result<QuadResult> {
    let mut evaluations = 0;
    let mut inner_err: f64 = 0.0;
    let pts = [0.0, 0.25 * PI, FRAC_PI_2];
    let r = quad::try_integrate_points(
        |p| {
            let y = x * p.cos();
            let v = inner(y, (0.1 * tol).max(MIN_TOL))?;
            evaluations += v.evaluations;
            inner_err = inner_err.max(v.error);
            Ok(weight(p) * v.value)
        },
        &pts,
        &opts(tol),
    )?;
    let s = 4.0 / PI;
    Ok(QuadResult {
        value: s * r.value,
        error: s * (r.error + FRAC_PI_2 * inner_err),
        panels: r.panels,
        evaluations: evaluations + r.evaluations,
    })
}

/// Log-kernel integral representation of `Σ J_m(mx)/m` and its relatives.
///
/// The `ln θ` (and `ln(π − θ)`) endpoint singularities are subtracted and
/// integrated in closed form, so the quadrature sees a bounded integrand.
pub fn log_integral(variant: LogVariant, params: &IntegrandParams, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    let x = params.x;
    check_x(x, X_MAX_PLAIN)?;
    let method = match variant {
        LogVariant::AllM => "log-integral:all",
        LogVariant::Even => "log-integral:even",
        LogVariant::ParamA => "log-integral:param-a",
        LogVariant::Bilinear => "log-integral:bilinear",
    };
    if x == 0.0 {
        return Ok(exact_zero(method));
    }
    let r = match variant {
        LogVariant::AllM => log_all(x, tol)?,
        LogVariant::Even => log_even(x, tol)?,
        LogVariant::ParamA if params.a == 1.0 => log_all(x, tol)?,
        LogVariant::ParamA => log_param_a(x, params.a, tol)?,
        LogVariant::Bilinear => bilinear_outer(x, tol, |_| 1.0, log_even)?,
    };
    Ok(result(r.value, r.error, r.evaluations, method))
}

/// `sin θ cot φ` with `φ = ψ/2`.
fn cot_all_integrand(theta: f64, x: f64) -> f64 {
    let phi = 0.5 * psi(theta, x);
    theta.sin() * phi.cos() / phi.sin()
}

/// `sin θ / sin ψ`, finite at both ends of `[0, π]`.
fn sin_ratio_even(theta: f64, x: f64) -> f64 {
    if theta <= FRAC_PI_2 {
        if theta == 0.0 {
            return 1.0 / (1.0 - x);
        }
        theta.sin() / psi(theta, x).sin()
    } else {
        let d = PI - theta;
        if d == 0.0 {
            return 1.0 / (1.0 + x);
        }
        d.sin() / pi_minus_psi(theta, x).sin()
    }
}

/// `sin θ cot ψ`
fn cot_even_integrand(theta: f64, x: f64) -> f64 {
    sin_ratio_even(theta, x) * sin_cos_psi(theta, x).1
}

fn cot_all(x: f64, tol: f64) -> Result<QuadResult> {
    let r = quad::integrate_points(|t| cot_all_integrand(t, x), &breakpoints(x), &opts(tol))?;
    Ok(scaled(r, 1.0 / (2.0 * PI)))
}

fn cot_even(x: f64, tol: f64) -> Result<QuadResult> {
    if x == 0.0 {
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
            panels: 0,
            evaluations: 0,
        });
    }
    let r = quad::integrate_points(|t| cot_even_integrand(t, x), &breakpoints(x), &opts(tol))?;
    Ok(scaled(r, 1.0 / (2.0 * PI)))
}

fn scaled(r: QuadResult, s: f64) -> QuadResult {
    QuadResult {
        value: s * r.value,
        error: s * r.error,
        ..r
    }
}

/// Cotangent-kernel representation of `Σ J'_m(mx)` and relatives: the
/// `x`-derivative of [`log_integral`].
pub fn cot_integral(variant: CotVariant, params: &IntegrandParams, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    let x = params.x;
    check_x(x, X_MAX_PLAIN)?;
    let (r, method) = match variant {
        CotVariant::AllM => (cot_all(x, tol)?, "cot-integral:all"),
        CotVariant::Even => (cot_even(x, tol)?, "cot-integral:even"),
        CotVariant::Bilinear => {
            if x == 0.0 {
                return Ok(exact_zero("cot-integral:bilinear"));
            }
            (bilinear_outer(x, tol, f64::cos, cot_even)?, "cot-integral:bilinear")
        }
    };
    Ok(result(r.value, r.error, r.evaluations, method))
}

/// Peak pieces shared by the regularized forms, with `D = c + θ²` and
/// `E = (6/θ)(θ − sin θ) − θ²` so that `θ/ψ = 6/(x(D + E))`.
struct Peak {
    d: f64,
    e: f64,
}

impl Peak {
    fn at(theta: f64, x: f64) -> Self {
        Peak {
            d: width_c(x) + theta * theta,
            e: sine_tail(theta, 2),
        }
    }

    /// `θ/ψ − 6/(xD)`
    fn ratio_excess(&self, x: f64) -> f64 {
        -(6.0 / x) * self.e / (self.d * (self.d + self.e))
    }
}

/// `sin θ/ψ = (θ/ψ − 1)/x`, minus its analytic part
/// `−1/x + 6/(x²D) + (36/x⁴)(1/D² + θ⁴/(10D³))` after squaring.
fn square_excess(theta: f64, x: f64) -> f64 {
    let p = Peak::at(theta, x);
    let (d, e) = (p.d, p.e);
    let f = sine_tail(theta, 3);
    let de = d + e;
    // 1/(D+E)² − 1/D² + 2E/D³
    let r2 = e * e * (3.0 * d + 2.0 * e) / (d * d * d * de * de);
    let x3 = x * x * x;
    (12.0 / x3) * e / (d * de) + (36.0 / (x3 * x)) * (-2.0 * f / (d * d * d) + r2)
}

/// `∫₀^π (sin θ/ψ)² dθ`, analytic part plus bounded remainder.
fn square_integral(x: f64, tol: f64) -> Result<(f64, QuadResult)> {
    let c = width_c(x);
    let x2 = x * x;
    let analytic = PI / x2 - (12.0 / (x2 * x)) * aux_integral(AuxId::I1, c)?
        + (36.0 / (x2 * x2)) * (aux_integral(AuxId::I2, c)? + 0.1 * aux_integral(AuxId::I3_4, c)?);
    let r = quad::integrate_points(|t| square_excess(t, x), &breakpoints(x), &opts(tol))?;
    Ok((analytic, r))
}

/// `r² − (sin θ / u)²` with `r = sin θ / sin u`.
fn csc_excess(theta: f64, u: f64, r: f64) -> f64 {
    let s = theta.sin();
    let w = if u < 0.1 { s * csc_minus_recip(u) } else { r - s / u };
    w * (w + 2.0 * s / u)
}

fn csc2_direct(variant: SumVariant, x: f64, tol: f64) -> Result<QuadResult> {
    let pts = breakpoints(x);
    match variant {
        SumVariant::AllM => {
            let f = |t: f64| {
                let r = t.sin() / (0.5 * psi(t, x)).sin();
                r * r
            };
            Ok(scaled(quad::integrate_points(f, &pts, &opts(tol))?, 0.25 / PI))
        }
        SumVariant::Even => {
            let f = |t: f64| {
                let r = sin_ratio_even(t, x);
                r * r
            };
            Ok(scaled(quad::integrate_points(f, &pts, &opts(tol))?, 0.5 / PI))
        }
    }
}

fn csc2_split(variant: SumVariant, x: f64, tol: f64) -> Result<QuadResult> {
    let (analytic, sq) = square_integral(x, tol)?;
    let pts = breakpoints(x);
    let (k, pre, rem) = match variant {
        SumVariant::AllM => {
            let f = |t: f64| {
                let u = 0.5 * psi(t, x);
                csc_excess(t, u, t.sin() / u.sin())
            };
            // sin θ/φ = 2 sin θ/ψ
            (4.0, 0.25 / PI, quad::integrate_points(f, &pts, &opts(tol))?)
        }
        SumVariant::Even => {
            let f = |t: f64| {
                let u = if t <= FRAC_PI_2 { psi(t, x) } else { PI - pi_minus_psi(t, x) };
                csc_excess(t, u, sin_ratio_even(t, x))
            };
            (1.0, 0.5 / PI, quad::integrate_points(f, &pts, &opts(tol))?)
        }
    };
    Ok(QuadResult {
        value: pre * (k * (analytic + sq.value) + rem.value),
        error: pre * (k * sq.error + rem.error),
        panels: sq.panels + rem.panels,
        evaluations: sq.evaluations + rem.evaluations,
    })
}

/// `Σ m J''_m(mx)` (all orders or even orders) from the `csc²` kernel.
///
/// Above `x = 0.99` the `θ → 0` peak is split off and integrated in closed
/// form with the auxiliary integrals.
pub fn csc2_integral(variant: SumVariant, x: f64, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    check_x(x, X_MAX_REGULARIZED)?;
    let name = match variant {
        SumVariant::AllM => "all",
        SumVariant::Even => "even",
    };
    let (r, route) = if x > CSC2_SPLIT {
        (csc2_split(variant, x, tol)?, "regularized")
    } else {
        (csc2_direct(variant, x, tol)?, "direct")
    };
    Ok(result(r.value, r.error, r.evaluations, &format!("csc2-integral:{name}:{route}")))
}

/// `Σ J'_m(mx)` (all or even orders) in regularized form: a boundary term,
/// a bounded integral and an arctangent carrying the `x → 1` growth.
pub fn regularized_jprime_sum(variant: SumVariant, x: f64, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    if !(x > 0.0 && x <= X_MAX_REGULARIZED) {
        return domain(format!("x must lie in (0, {X_MAX_REGULARIZED}], got {x}"));
    }
    let i1 = aux_integral(AuxId::I1, width_c(x))?;
    let (k, integrand): (f64, Box<dyn Fn(f64) -> f64>) = match variant {
        SumVariant::AllM => (
            2.0,
            Box::new(move |t: f64| {
                let phi = 0.5 * psi(t, x);
                t.sin() * cot_minus_recip(phi) + (2.0 / x) * Peak::at(t, x).ratio_excess(x)
            }),
        ),
        SumVariant::Even => (
            1.0,
            Box::new(move |t: f64| {
                // sin θ (cot ψ − 1/ψ)
                let regular = if t <= FRAC_PI_2 {
                    t.sin() * cot_minus_recip(psi(t, x))
                } else {
                    sin_ratio_even(t, x) * sin_cos_psi(t, x).1 - t.sin() / psi(t, x)
                };
                regular + (1.0 / x) * Peak::at(t, x).ratio_excess(x)
            }),
        ),
    };
    let r = quad::integrate_points(integrand, &breakpoints(x), &opts(tol))?;
    let value = -k / (2.0 * x) + r.value / (2.0 * PI) + 3.0 * k * i1 / (PI * x * x);
    let name = match variant {
        SumVariant::AllM => "regularized:all",
        SumVariant::Even => "regularized:even",
    };
    Ok(result(value, r.error / (2.0 * PI), r.evaluations, name))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64) -> IntegrandParams {
        IntegrandParams::at(x).unwrap()
    }

    #[test]
    fn values_at_zero() {
        assert_eq!(log_integral(LogVariant::AllM, &p(0.0), 1e-10).unwrap().value, 0.0);
        let v = cot_integral(CotVariant::AllM, &p(0.0), 1e-10).unwrap().value;
        assert!((v - 0.5).abs() < 1e-12);
        let v = csc2_integral(SumVariant::AllM, 0.0, 1e-10).unwrap().value;
        assert!((v - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(log_integral(LogVariant::AllM, &p(0.9995), 1e-10).is_err());
        assert!(log_integral(LogVariant::AllM, &p(0.5), 1e-13).is_err());
        assert!(regularized_jprime_sum(SumVariant::AllM, 0.0, 1e-10).is_err());
    }

    #[test]
    fn split_and_direct_agree() {
        for v in [SumVariant::AllM, SumVariant::Even] {
            for x in [0.5, 0.9, 0.99] {
                let a = csc2_direct(v, x, 1e-12).unwrap().value;
                let b = csc2_split(v, x, 1e-12).unwrap().value;
                assert!(((a - b) / a).abs() < 1e-10, "{v:?} {x}: {a} vs {b}");
            }
        }
    }
}
