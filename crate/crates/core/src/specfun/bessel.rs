//! `J_n(x)` for integer order by ascending series or Miller's backward
//! recurrence normalised with `J₀ + 2ΣJ₂ₖ = 1`.

use serde::Serialize;

use crate::error::{domain, Result};

/// Evaluation strategy chosen for one Bessel value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Series,
    Recurrence,
    /// Debye's large-order expansion in `sech α` form.
    UniformAsymptotic,
    /// Trapezoid rule on the steepest-descent contour of Bessel's integral.
    SaddleContour,
}

/// Order, argument and the regime that produced the value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BesselEvalPoint {
    pub order: u32,
    pub argument: f64,
    pub regime: Regime,
}

// 2^∓830 ≈ 10^∓250: rescaling by a power of two is exact
pub(crate) const BIG: f64 = 1.0e250;
pub(crate) const RESCALE: f64 = 1.396_701_497_859_909_2e-250;
pub(crate) const RESCALE_INV: f64 = 7.159_725_979_618_74e249;

pub(crate) fn check_arg(x: f64) -> Result<()> {
    if !x.is_finite() {
        return domain(format!("Bessel argument must be finite, got {x}"));
    }
    if x < 0.0 {
        return domain(format!("Bessel argument must be non-negative, got {x}"));
    }
    Ok(())
}

/// The ascending series converges without cancellation when `x² ≤ 4(n+1)`.
pub(crate) fn series_regime(n: u32, x: f64) -> bool {
    x * x <= 4.0 * (n as f64 + 1.0)
}

/// Ascending series `Σ (−1)^s (x/2)^{n+2s} / (s!(n+s)!)`.
pub(crate) fn j_series(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let h = 0.5 * x;
    // (x/2)^n / n! with exponent tracking
    let mut lead = 1.0;
    let mut scale = 0i32;
    for k in 1..=n {
        lead *= h / k as f64;
        if lead < RESCALE {
            lead *= RESCALE_INV;
            scale += 1;
        }
    }
    let q = -h * h;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut s = 1.0;
    loop {
        term *= q / (s * (n as f64 + s));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
        s += 1.0;
    }
    let mut v = lead * sum;
    for _ in 0..scale {
        v *= RESCALE;
    }
    v
}

fn miller_start(n: u32, x: f64) -> u32 {
    let base = (n as f64 + 1.0).max(x.ceil());
    let start = base + (160.0 * base).sqrt() + 16.0;
    let s = start as u32;
    s + (s & 1)
}

/// `J_{n−1}, J_n, J_{n+1}` at `x > 0` by backward recurrence. `J_{−1} = −J₁`.
pub(crate) fn j_triple_miller(n: u32, x: f64) -> (f64, f64, f64) {
    let start = miller_start(n + 1, x);
    let mut p_next = 0.0; // p_{k+1}
    let mut p = 1e-300; // p_k
    let mut norm = 0.0;
    // stored values and the number of rescalings applied since storage
    let mut stored = [0.0f64; 3];
    let mut stored_scale = [0i32; 3];
    let mut rescales = 0i32;
    let record = |k: u32, v: f64, rescales: i32, stored: &mut [f64; 3], ss: &mut [i32; 3]| {
        if k + 1 >= n && k <= n + 1 {
            let idx = (k + 1 - n) as usize;
            stored[idx] = v;
            ss[idx] = rescales;
        }
    };
    let mut k = start;
    record(k, p, rescales, &mut stored, &mut stored_scale);
    if k % 2 == 0 {
        norm += 2.0 * p;
    }
    while k > 0 {
        let p_prev = (2.0 * k as f64 / x) * p - p_next;
        p_next = p;
        p = p_prev;
        k -= 1;
        if p.abs() > BIG {
            p *= RESCALE;
            p_next *= RESCALE;
            norm *= RESCALE;
            rescales += 1;
        }
        record(k, p, rescales, &mut stored, &mut stored_scale);
        if k % 2 == 0 {
            norm += if k == 0 { p } else { 2.0 * p };
        }
    }
    let fetch = |idx: usize| {
        let mut v = stored[idx] / norm;
        for _ in stored_scale[idx]..rescales {
            v *= RESCALE;
        }
        v
    };
    let j = fetch(1);
    let jp1 = fetch(2);
    let jm1 = if n == 0 { -jp1 } else { fetch(0) };
    (jm1, j, jp1)
}

fn j_triple_series(n: u32, x: f64) -> (f64, f64, f64) {
    let jp1 = j_series(n + 1, x);
    let jm1 = if n == 0 { -jp1 } else { j_series(n - 1, x) };
    (jm1, j_series(n, x), jp1)
}

/// `J_{n−1}(x), J_n(x), J_{n+1}(x)` and the regime used.
pub(crate) fn j_triple(n: u32, x: f64) -> (f64, f64, f64, Regime) {
    if x == 0.0 {
        let (a, b, c) = j_triple_series(n, 0.0);
        return (a, b, c, Regime::Series);
    }
    if series_regime(n + 1, x) && (n == 0 || series_regime(n - 1, x)) {
        let (a, b, c) = j_triple_series(n, x);
        (a, b, c, Regime::Series)
    } else {
        let (a, b, c) = j_triple_miller(n, x);
        (a, b, c, Regime::Recurrence)
    }
}

/// Regime that [`bessel_j`] uses for `(n, x)`.
pub fn bessel_eval_point(n: u32, x: f64) -> Result<BesselEvalPoint> {
    check_arg(x)?;
    let regime = if x == 0.0 || series_regime(n, x) {
        Regime::Series
    } else {
        Regime::Recurrence
    };
    Ok(BesselEvalPoint {
        order: n,
        argument: x,
        regime,
    })
}

/// Bessel function of the first kind `J_n(x)`, `x ≥ 0`.
pub fn bessel_j(n: u32, x: f64) -> Result<f64> {
    check_arg(x)?;
    if x == 0.0 || series_regime(n, x) {
        Ok(j_series(n, x))
    } else {
        Ok(j_triple_miller(n, x).1)
    }
}

/// `J'_n(x) = (J_{n−1}(x) − J_{n+1}(x))/2`.
pub fn bessel_j_prime(n: u32, x: f64) -> Result<f64> {
    check_arg(x)?;
    let (jm1, _, jp1, _) = j_triple(n, x);
    Ok(0.5 * (jm1 - jp1))
}

/// `J''_n(x)` from Bessel's equation, `J'' = −J'/x − (1 − n²/x²) J`.
///
/// Inside the series regime the equivalent second difference
/// `(J_{n−2} − 2J_n + J_{n+2})/4` is used instead, which avoids the
/// cancellation of the two `1/x` terms at small argument. At `x = 0` only
/// `n ≥ 1` is accepted.
pub fn bessel_j_second(n: u32, x: f64) -> Result<f64> {
    check_arg(x)?;
    if x == 0.0 {
        if n == 0 {
            return domain("J''_0 at x = 0: the rearranged Bessel equation is singular there");
        }
        return Ok(if n == 2 { 0.25 } else { 0.0 });
    }
    if series_regime(n + 2, x) && series_regime(n.saturating_sub(2), x) {
        let jn = |k: i64| {
            let v = j_series(k.unsigned_abs() as u32, x);
            if k < 0 && k % 2 != 0 {
                -v
            } else {
                v
            }
        };
        let k = n as i64;
        return Ok(0.25 * (jn(k - 2) - 2.0 * jn(k) + jn(k + 2)));
    }
    let (jm1, j, jp1, _) = j_triple(n, x);
    Ok(second_from_ode(n as f64, x, j, 0.5 * (jm1 - jp1)))
}

pub(crate) fn second_from_ode(n: f64, x: f64, j: f64, jp: f64) -> f64 {
    let r = n / x;
    -jp / x - (1.0 - r) * (1.0 + r) * j
}
