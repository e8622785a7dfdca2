use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::integrals::{csc2_integral, regularized_jprime_sum, SumVariant, MIN_TOL, X_MAX_REGULARIZED};
use crate::direct::{self, EvalResult, SeriesSpec};
use crate::error::{domain, Result};
use crate::quad::{self, QuadOptions};

/// Lower end of the range where the leading-order formulas are meant to hold.
pub const X_ASYM: f64 = 0.95;

/// Below this the reference sums use the direct engine.
const DIRECT_BELOW: f64 = 0.99;

/// Leading `x → 1` behaviour of a sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AsymId {
    /// `Σ J'_m(mx)`
    JPrime,
    /// `Σ m J''_m(mx)`
    MJSecond,
    /// `∫₀^β Σ n J_{2n}(2nx) dx`
    IntegralNJ2n,
    /// `Σ n J_{2n}(2nβ)`
    NJ2n,
    /// `Σ n J_n²(nx)`
    NJSquared,
    /// `Σ n J'_n²(nx)`
    NJPrimeSquared,
}

impl AsymId {
    pub const ALL: [AsymId; 6] = [
        AsymId::JPrime,
        AsymId::MJSecond,
        AsymId::IntegralNJ2n,
        AsymId::NJ2n,
        AsymId::NJSquared,
        AsymId::NJPrimeSquared,
    ];

    pub fn id(self) -> &'static str {
        match self {
            AsymId::JPrime => "3.24",
            AsymId::MJSecond => "3.24'",
            AsymId::IntegralNJ2n => "3.53",
            AsymId::NJ2n => "3.54",
            AsymId::NJSquared => "5.04",
            AsymId::NJPrimeSquared => "5.08",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim().replace('′', "'");
        Self::ALL.into_iter().find(|a| a.id() == s)
    }

    pub fn formula(self) -> &'static str {
        match self {
            AsymId::JPrime => "sqrt(3)/(1-x^2)^(1/2)",
            AsymId::MJSecond => "sqrt(3)/(1-x^2)^(3/2)",
            AsymId::IntegralNJ2n => "1/(4 sqrt(3) (1-x^2)^(3/2))",
            AsymId::NJ2n => "sqrt(3)/(4 (1-x^2)^(5/2))",
            AsymId::NJSquared => "1/(pi sqrt(3) (1-x^2)^2)",
            AsymId::NJPrimeSquared => "2/(pi sqrt(3) (1-x^2))",
        }
    }
}

/// Leading-order value, flagged when `x` is below [`X_ASYM`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymResult {
    pub value: f64,
    pub below_validity: bool,
}

/// Evaluates the leading-order `x → 1` formula.
pub fn asym_eval(id: AsymId, x: f64) -> Result<AsymResult> {
    if !(x > 0.0 && x < 1.0) {
        return domain(format!("asymptotic forms need 0 < x < 1, got {x}"));
    }
    let g = (1.0 - x) * (1.0 + x);
    let s3 = 3f64.sqrt();
    let value = match id {
        AsymId::JPrime => s3 / g.sqrt(),
        AsymId::MJSecond => s3 / (g * g.sqrt()),
        AsymId::IntegralNJ2n => 1.0 / (4.0 * s3 * g * g.sqrt()),
        AsymId::NJ2n => s3 / (4.0 * g * g * g.sqrt()),
        AsymId::NJSquared => 1.0 / (PI * s3 * g * g),
        AsymId::NJPrimeSquared => 2.0 / (PI * s3 * g),
    };
    Ok(AsymResult {
        value,
        below_validity: x <= X_ASYM,
    })
}

/// `Σ 2n J_{2n}(2ny)`: direct below 0.99, otherwise from the Bessel
/// equation `Σ m J_m = [Σ m J''_m + (1/y) Σ J'_m] / (1/y² − 1)` over even `m`.
pub(crate) fn even_weighted_sum(y: f64, tol: f64) -> Result<EvalResult> {
    if y <= DIRECT_BELOW {
        return direct::sum_series(&SeriesSpec::linear(1).even(), y, tol);
    }
    let second = csc2_integral(SumVariant::Even, y, tol)?;
    let first = regularized_jprime_sum(SumVariant::Even, y, tol)?;
    let k = y * y / ((1.0 - y) * (1.0 + y));
    Ok(EvalResult {
        value: k * (second.value + first.value / y),
        abs_error_estimate: k * (second.abs_error_estimate + first.abs_error_estimate / y),
        terms_used: second.terms_used + first.terms_used,
        method: "bessel-equation:even".into(),
    })
}

fn outer_points(x: f64, peak_at_end: bool, hi: f64) -> Vec<f64> {
    let w = ((1.0 - x) * (1.0 + x)).sqrt();
    let mut pts = vec![0.0, hi];
    for f in [0.3, 1.0, 3.0, 10.0] {
        let d = f * w;
        if d < 0.5 * hi {
            pts.push(if peak_at_end { hi - d } else { d });
        }
    }
    pts.sort_by(f64::total_cmp);
    pts
}

/// `Σ n J_n²(nx) = (1/π) ∫₀^{π/2} Σ 2k J_{2k}(2k x cos φ) dφ`
pub fn n_j_squared(x: f64, tol: f64) -> Result<EvalResult> {
    check_reference_x(x)?;
    let mut evals = 0;
    let mut inner_err: f64 = 0.0;
    let r = quad::try_integrate_points(
        |p| {
            let v = even_weighted_sum(x * p.cos(), (0.1 * tol).max(MIN_TOL))?;
            evals += v.terms_used;
            inner_err = inner_err.max(v.abs_error_estimate);
            Ok(v.value)
        },
        &outer_points(x, false, FRAC_PI_2),
        &QuadOptions::rel(tol),
    )?;
    Ok(EvalResult {
        value: r.value / PI,
        abs_error_estimate: (r.error + FRAC_PI_2 * inner_err) / PI,
        terms_used: evals + r.evaluations,
        method: "integral:n-j-squared".into(),
    })
}

/// `Σ n J'_n²(nx) = [(1−x²) Σ n J_n²(nx) + (2/π) ∫₀^x L(u) √(x²−u²) du] / x²`
/// with `L = Σ 2k J_{2k}(2ku)`.
pub fn n_j_prime_squared(x: f64, tol: f64) -> Result<EvalResult> {
    check_reference_x(x)?;
    let s = n_j_squared(x, tol)?;
    let mut evals = 0;
    let mut inner_err: f64 = 0.0;
    let r = quad::try_integrate_points(
        |u| {
            let v = even_weighted_sum(u, (0.1 * tol).max(MIN_TOL))?;
            evals += v.terms_used;
            inner_err = inner_err.max(v.abs_error_estimate);
            Ok(v.value * ((x - u) * (x + u)).sqrt())
        },
        &outer_points(x, true, x),
        &QuadOptions::rel(tol),
    )?;
    let g = (1.0 - x) * (1.0 + x);
    let x2 = x * x;
    Ok(EvalResult {
        value: (g * s.value + 2.0 / PI * r.value) / x2,
        abs_error_estimate: (g * s.abs_error_estimate + 2.0 / PI * (r.error + x * x * inner_err)) / x2,
        terms_used: s.terms_used + evals + r.evaluations,
        method: "integral:n-j-prime-squared".into(),
    })
}

fn check_reference_x(x: f64) -> Result<()> {
    if !(x > 0.0 && x <= X_MAX_REGULARIZED) {
        return domain(format!("reference sums need 0 < x ≤ {X_MAX_REGULARIZED}, got {x}"));
    }
    Ok(())
}

/// Accurate value of the sum whose leading behaviour `id` describes.
pub fn asym_reference(id: AsymId, x: f64, tol: f64) -> Result<EvalResult> {
    match id {
        AsymId::JPrime => regularized_jprime_sum(SumVariant::AllM, x, tol),
        AsymId::MJSecond => csc2_integral(SumVariant::AllM, x, tol),
        AsymId::IntegralNJ2n => direct::sum_integral(&SeriesSpec::linear(1).even().scaled(0.5), x, tol),
        AsymId::NJ2n => {
            check_reference_x(x)?;
            let mut r = even_weighted_sum(x, tol)?;
            r.value *= 0.5;
            r.abs_error_estimate *= 0.5;
            Ok(r)
        }
        AsymId::NJSquared => n_j_squared(x, tol),
        AsymId::NJPrimeSquared => n_j_prime_squared(x, tol),
    }
}
