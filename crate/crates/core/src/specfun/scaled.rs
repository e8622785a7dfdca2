//! `J_m(mz)` and its derivatives for `0 ≤ z < 1`, the building block of every
//! Kapteyn term.
//!
//! Below the crossover order the generic routines of [`super::bessel`] are
//! used. Above it the argument is never formed as a detached product `m·z`:
//! with `w = √(1−z²) = tanh α` the exact contour representation
//!
//! ```text
//! J_m(mz) = e^{−m(α−w)}/π ∫₀^π exp(−2mw sin²(θ/2)) cos(m(sin θ − θ)) dθ
//! ```
//!
//! is evaluated by the trapezoid rule, which converges geometrically because
//! the integrand is entire and periodic. Far enough from the transition
//! region the Debye expansion is used instead.

use std::f64::consts::PI;

use twofloat::TwoFloat;

use super::bessel::{self, Regime, BIG, RESCALE};
use super::debye;
use crate::error::{domain, Result};

/// Crossover constants of the scaled-argument path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledConfig {
    /// Orders below this use series or recurrence.
    pub crossover_order: u32,
    /// Debye's expansion is used when `1 − z² > uniform_gap · m^{−2/3}`.
    pub uniform_gap: f64,
}

impl Default for ScaledConfig {
    fn default() -> Self {
        Self {
            crossover_order: 50,
            uniform_gap: 16.0,
        }
    }
}

/// `J_m(mz)`, `J'_m(mz)`, `J''_m(mz)` (derivatives with respect to the full
/// argument).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledBessel {
    pub value: f64,
    pub prime: f64,
    pub second: f64,
    pub regime: Regime,
}

impl ScaledBessel {
    /// Derivative of order `d ∈ {0, 1, 2}`.
    pub fn deriv(&self, d: u8) -> f64 {
        match d {
            0 => self.value,
            1 => self.prime,
            _ => self.second,
        }
    }
}

fn check_z(z: f64) -> Result<()> {
    if !(0.0..1.0).contains(&z) {
        return domain(format!("scaled Bessel argument needs 0 ≤ z < 1, got {z}"));
    }
    Ok(())
}

fn at_origin(m: u32) -> ScaledBessel {
    ScaledBessel {
        value: if m == 0 { 1.0 } else { 0.0 },
        prime: if m == 1 { 0.5 } else { 0.0 },
        second: match m {
            0 => -0.5,
            2 => 0.25,
            _ => 0.0,
        },
        regime: Regime::Series,
    }
}

/// `J_m(mz)` and derivatives with the default crossover constants.
pub fn scaled_bessel(m: u32, z: f64) -> Result<ScaledBessel> {
    scaled_bessel_with(m, z, &ScaledConfig::default())
}

pub fn scaled_bessel_with(m: u32, z: f64, cfg: &ScaledConfig) -> Result<ScaledBessel> {
    check_z(z)?;
    if z == 0.0 {
        return Ok(at_origin(m));
    }
    let mf = m as f64;
    if m < cfg.crossover_order.max(1) {
        let x = mf * z;
        if m == 0 {
            return Ok(at_origin(0));
        }
        let (jm1, j, jp1, regime) = bessel::j_triple(m, x);
        let second = bessel::bessel_j_second(m, x)?;
        return Ok(ScaledBessel {
            value: j,
            prime: 0.5 * (jm1 - jp1),
            second,
            regime,
        });
    }
    let one_minus = (1.0 - z) * (1.0 + z);
    let (value, prime, regime) = if one_minus > cfg.uniform_gap * mf.powf(-2.0 / 3.0) {
        match debye_expansion(mf, z) {
            Some((j, jp)) => (j, jp, Regime::UniformAsymptotic),
            None => {
                let (j, jp) = saddle_contour(mf, z);
                (j, jp, Regime::SaddleContour)
            }
        }
    } else {
        let (j, jp) = saddle_contour(mf, z);
        (j, jp, Regime::SaddleContour)
    };
    let second = one_minus / (z * z) * value - prime / (mf * z);
    Ok(ScaledBessel {
        value,
        prime,
        second,
        regime,
    })
}

/// `w = √(1−z²)` and `atanh(w) − w` without cancellation.
///
/// Away from `z = 1` the gap is formed as `ln((1+w)/z) − w`, since `atanh`
/// would amplify the rounding of `w` by `1/(1−w)`.
pub(crate) fn atanh_gap(z: f64) -> (f64, f64) {
    let w = ((1.0 - z) * (1.0 + z)).sqrt();
    if w > 0.6 {
        return (w, ((1.0 + w) / z).ln() - w);
    }
    (w, gap_series(w))
}

fn gap_series(w: f64) -> f64 {
    let w2 = w * w;
    let mut p = w * w2;
    let mut sum = 0.0;
    let mut k = 3.0;
    loop {
        let t = p / k;
        sum += t;
        if t <= 1e-18 * sum {
            break;
        }
        p *= w2;
        k += 2.0;
    }
    sum
}

/// `θ − sin θ` without cancellation.
pub(crate) fn theta_minus_sin(t: f64) -> f64 {
    if t >= 1.0 {
        return t - t.sin();
    }
    let t2 = t * t;
    let mut term = t * t2 / 6.0;
    let mut sum = term;
    let mut k = 2.0;
    loop {
        term *= -t2 / ((2.0 * k) * (2.0 * k + 1.0));
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
        k += 1.0;
    }
    sum
}

/// Trapezoid rule on the steepest-descent contour; returns `(J, J')`.
pub(crate) fn saddle_contour(m: f64, z: f64) -> (f64, f64) {
    let (w, gap) = atanh_gap(z);
    let alpha = w.atanh();
    let expo = -m * gap;
    if expo < -745.0 {
        return (0.0, 0.0);
    }
    // aliasing error ~ e^{−Nα} against e^{−m(α−w)}; Gaussian width ~ 1/√(mw)
    let n = ((90.0 * m * w).sqrt()).max((m * gap + 45.0) / alpha) + 8.0;
    let half = (0.5 * n).ceil() as usize;
    let h = PI / half as f64;
    let mw2 = 2.0 * m * w;
    let mut acc_j = 0.0;
    let mut acc_d = 0.0;
    for i in 0..=half {
        let theta = i as f64 * h;
        let s = (0.5 * theta).sin();
        let env = (-mw2 * s * s).exp();
        if env < 1e-22 {
            break;
        }
        let phase = -m * theta_minus_sin(theta);
        let (sp, cp) = phase.sin_cos();
        let (st, ct) = theta.sin_cos();
        let wt = if i == 0 || i == half { 0.5 } else { 1.0 };
        acc_j += wt * env * cp;
        acc_d += wt * env * (w * ct * cp - st * sp);
    }
    let pre = expo.exp() * h / PI;
    (pre * acc_j, pre * acc_d / z)
}

/// Debye expansion; `None` when the asymptotic series has not settled to
/// full precision before its terms start growing.
pub(crate) fn debye_expansion(m: f64, z: f64) -> Option<(f64, f64)> {
    let (w, gap) = atanh_gap(z);
    let expo = -m * gap;
    if expo < -745.0 {
        return Some((0.0, 0.0));
    }
    let t = 1.0 / w;
    let tabs = debye::tables();
    let horner = |c: &[f64]| c.iter().rev().fold(0.0, |acc, a| acc * t + a);
    let (mut su, mut sv) = (1.0f64, 1.0f64);
    let (mut last_u, mut last_v) = (f64::INFINITY, f64::INFINITY);
    let mut pow = 1.0;
    let mut settled = false;
    for k in 1..debye::ORDERS {
        pow /= m;
        let tu = horner(&tabs.u[k]) * pow;
        let tv = horner(&tabs.v[k]) * pow;
        if tu.abs() > last_u || tv.abs() > last_v {
            break;
        }
        su += tu;
        sv += tv;
        last_u = tu.abs();
        last_v = tv.abs();
        if last_u <= 1e-17 * su.abs() && last_v <= 1e-17 * sv.abs() {
            settled = true;
            break;
        }
    }
    if !settled {
        return None;
    }
    let e = expo.exp();
    let j = e / (2.0 * PI * m * w).sqrt() * su;
    let jp = e * (w / (2.0 * PI * m)).sqrt() / z * sv;
    Some((j, jp))
}

/// Double-double `J_m(mz)`, `J'_m(mz)`, `J''_m(mz)` by backward recurrence.
///
/// Used by the summation engine when a series cancels so heavily that the
/// binary64 terms cannot deliver the requested accuracy. Cost is `O(m)`.
pub(crate) fn scaled_bessel_dd(m: u32, z: f64) -> (TwoFloat, TwoFloat, TwoFloat) {
    let zero = TwoFloat::from(0.0);
    if z == 0.0 {
        let o = at_origin(m);
        return (o.value.into(), o.prime.into(), o.second.into());
    }
    let x = TwoFloat::new_mul(m as f64, z);
    let inv_x = recip(x);
    let xf = f64::from(x);
    let base = (m as f64 + 2.0).max(xf.ceil());
    let start = {
        let s = (base + (320.0 * base).sqrt() + 40.0) as u32;
        s + (s & 1)
    };
    let mut p_next = zero;
    let mut p = TwoFloat::from(1.0);
    let mut norm = TwoFloat::from(2.0);
    let mut stored = [zero; 3];
    let mut stored_scale = [0i32; 3];
    let mut rescales = 0i32;
    let mut k = start;
    while k > 0 {
        let prev = p * (2.0 * k as f64) * inv_x - p_next;
        p_next = p;
        p = prev;
        k -= 1;
        if p.hi().abs() > BIG {
            p *= RESCALE;
            p_next *= RESCALE;
            norm *= RESCALE;
            rescales += 1;
        }
        if k + 1 >= m && k <= m + 1 {
            let idx = (k + 1 - m) as usize;
            stored[idx] = p;
            stored_scale[idx] = rescales;
        }
        if k % 2 == 0 {
            norm += if k == 0 { p } else { p * 2.0 };
        }
    }
    let inv_norm = recip(norm);
    let fetch = |idx: usize| {
        let mut v = stored[idx] * inv_norm;
        for _ in stored_scale[idx]..rescales {
            v *= RESCALE;
        }
        v
    };
    let j = fetch(1);
    let jp1 = fetch(2);
    let jm1 = if m == 0 { -jp1 } else { fetch(0) };
    let jp = (jm1 - jp1) * 0.5;
    let one_minus = TwoFloat::new_sub(1.0, z) * TwoFloat::new_add(1.0, z);
    let z2 = TwoFloat::new_mul(z, z);
    let jpp = one_minus * recip(z2) * j - jp * inv_x;
    (j, jp, jpp)
}

/// Double-double reciprocal by one Newton step; twofloat's own quotient of
/// two double-doubles is only accurate to binary64.
fn recip(t: TwoFloat) -> TwoFloat {
    let y = t.hi().recip();
    let e = TwoFloat::from(1.0) - t * y;
    e * y + y
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn contour_matches_recurrence_below_crossover() {
        for &m in &[5u32, 20, 49] {
            for &z in &[0.2, 0.5, 0.8, 0.95, 0.999] {
                let (jm1, j, jp1, _) = bessel::j_triple(m, m as f64 * z);
                let (cj, cjp) = saddle_contour(m as f64, z);
                assert!(rel(cj, j) < 1e-12, "J m={m} z={z}: {cj} vs {j}");
                assert!(rel(cjp, 0.5 * (jm1 - jp1)) < 1e-12, "J' m={m} z={z}");
            }
        }
    }

    #[test]
    fn debye_agrees_with_contour_where_used() {
        let cfg = ScaledConfig::default();
        let (mut tried, mut settled) = (0, 0);
        for &m in &[50u32, 120, 500, 3000, 40_000] {
            for &z in &[0.3, 0.6, 0.8, 0.9, 0.95, 0.99] {
                let mf = m as f64;
                if (1.0 - z * z) <= cfg.uniform_gap * mf.powf(-2.0 / 3.0) {
                    continue;
                }
                let (cj, cjp) = saddle_contour(mf, z);
                if cj < 1e-280 {
                    continue;
                }
                tried += 1;
                let Some((dj, djp)) = debye_expansion(mf, z) else {
                    continue;
                };
                settled += 1;
                assert!(rel(dj, cj) < 1e-13, "J m={m} z={z}: {dj} vs {cj}");
                assert!(rel(djp, cjp) < 1e-13, "J' m={m} z={z}");
            }
        }
        assert!(settled * 4 >= tried * 3, "{settled}/{tried}");
    }

    #[test]
    fn double_double_matches_reference() {
        // mpmath at the binary argument 60·fl(0.9)
        let (j, jp, _) = scaled_bessel_dd(60, 0.9);
        assert!(rel(f64::from(j), 0.011_600_841_295_627_815) < 1e-15);
        assert!(rel(f64::from(jp), 0.006_000_187_395_522_194) < 1e-15);
        let s = scaled_bessel(60, 0.9).unwrap();
        assert!(rel(s.value, f64::from(j)) < 1e-13);
        assert!(rel(s.prime, f64::from(jp)) < 1e-13);
    }

    #[test]
    fn origin_and_domain() {
        let s = scaled_bessel(1, 0.0).unwrap();
        assert_eq!((s.value, s.prime), (0.0, 0.5));
        assert!(scaled_bessel(3, 1.0).is_err());
        assert!(scaled_bessel(3, -0.1).is_err());
    }
}
