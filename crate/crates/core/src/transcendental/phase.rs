use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Argument, geometric parameter and the derived quantities shared by the
/// integral representations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrandParams {
    pub x: f64,
    pub a: f64,
}

impl IntegrandParams {
    pub fn new(x: f64, a: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&x) {
            return domain(format!("x must lie in [0, 1), got {x}"));
        }
        if !(a > 0.0 && a <= 1.0) {
            return domain(format!("a must lie in (0, 1], got {a}"));
        }
        Ok(Self { x, a })
    }

    pub fn at(x: f64) -> Result<Self> {
        Self::new(x, 1.0)
    }

    /// `1 + a²`
    pub fn b(&self) -> f64 {
        1.0 + self.a * self.a
    }

    /// `−2a`
    pub fn e(&self) -> f64 {
        -2.0 * self.a
    }

    /// `6(1−x)/x`, the squared width of the `θ → 0` peak.
    pub fn c(&self) -> f64 {
        width_c(self.x)
    }

    /// `θ/2 − (x/2) sin θ`
    pub fn phi(&self, theta: f64) -> f64 {
        0.5 * psi(theta, self.x)
    }

    /// `θ − x sin θ`
    pub fn psi(&self, theta: f64) -> f64 {
        psi(theta, self.x)
    }
}

pub(crate) fn width_c(x: f64) -> f64 {
    6.0 * (1.0 - x) / x
}

/// `θ − sin θ` without cancellation.
pub(crate) fn theta_minus_sin(t: f64) -> f64 {
    if t > 1.0 {
        return t - t.sin();
    }
    let t2 = t * t;
    let mut term = t * t2 / 6.0;
    let mut sum = term;
    let mut k = 2.0;
    loop {
        term *= -t2 / ((2.0 * k) * (2.0 * k + 1.0));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            return sum;
        }
        k += 1.0;
    }
}

/// `θ − x sin θ`, accurate for small `θ` and `x` near one.
pub(crate) fn psi(theta: f64, x: f64) -> f64 {
    (1.0 - x) * theta + x * theta_minus_sin(theta)
}

/// `6 Σ_{k≥from} (−1)^{k+1} θ^{2k}/(2k+1)!`: the tail of
/// `(6/θ)(θ − sin θ) = θ² − θ⁴/20 + θ⁶/840 − …`.
pub(crate) fn sine_tail(theta: f64, from: u32) -> f64 {
    let t2 = theta * theta;
    // first term 6 (−1)^{from+1} θ^{2 from}/(2 from + 1)!
    let mut term = 6.0;
    for j in 1..=(2 * from + 1) {
        term /= j as f64;
    }
    term *= t2.powi(from as i32);
    if from % 2 == 0 {
        term = -term;
    }
    let mut sum = term;
    let mut k = from as f64;
    loop {
        term *= -t2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() || term == 0.0 {
            return sum;
        }
        k += 1.0;
    }
}

/// `sin ψ` and `cos ψ` for `ψ = θ − x sin θ`, accurate near both ends of
/// `[0, π]`.
pub(crate) fn sin_cos_psi(theta: f64, x: f64) -> (f64, f64) {
    if theta <= 0.5 * PI {
        let p = psi(theta, x);
        (p.sin(), p.cos())
    } else {
        // π − ψ = d + x sin d with d = π − θ
        let d = PI - theta;
        let e = d + x * d.sin();
        (e.sin(), -e.cos())
    }
}

/// `π − ψ` for `θ > π/2`.
pub(crate) fn pi_minus_psi(theta: f64, x: f64) -> f64 {
    let d = PI - theta;
    d + x * d.sin()
}

/// `cot u − 1/u`.
pub(crate) fn cot_minus_recip(u: f64) -> f64 {
    if u < 0.1 {
        let u2 = u * u;
        -u * (1.0 / 3.0
            + u2 * (1.0 / 45.0 + u2 * (2.0 / 945.0 + u2 * (1.0 / 4725.0 + u2 * 2.0 / 93555.0))))
    } else {
        1.0 / u.tan() - 1.0 / u
    }
}

/// `csc u − 1/u`.
pub(crate) fn csc_minus_recip(u: f64) -> f64 {
    if u < 0.1 {
        let u2 = u * u;
        u * (1.0 / 6.0
            + u2 * (7.0 / 360.0 + u2 * (31.0 / 15120.0 + u2 * (127.0 / 604_800.0 + u2 * 73.0 / 3_421_440.0))))
    } else {
        1.0 / u.sin() - 1.0 / u
    }
}

/// Panel boundaries that resolve the `θ ≲ √c` peak.
pub(crate) fn breakpoints(x: f64) -> Vec<f64> {
    let mut pts = vec![0.0, 0.25 * PI, 0.5 * PI, 0.75 * PI, PI];
    if x > 0.0 {
        let s = width_c(x).sqrt();
        for f in [0.1, 0.3, 1.0, 3.0, 10.0] {
            let p = f * s;
            if p > 1e-12 && p < 0.25 * PI {
                pts.push(p);
            }
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_and_invariants() {
        let p = IntegrandParams::new(0.5, 0.3).unwrap();
        assert!((p.c() - 6.0).abs() < 1e-15);
        // b² − e² = (1 − a²)²
        assert!((p.b() * p.b() - p.e() * p.e() - (1.0 - 0.09f64).powi(2)).abs() < 1e-15);
        for k in 1..=100 {
            let t = PI * k as f64 / 100.0;
            assert!(p.phi(t) > 0.0 && p.psi(t) > 0.0);
        }
        assert!(IntegrandParams::new(1.0, 0.5).is_err());
        assert!(IntegrandParams::new(0.5, 0.0).is_err());
    }

    #[test]
    fn phase_accuracy() {
        // ψ(θ) for x near 1 and tiny θ: (1−x)θ + xθ³/6 …
        let (t, x): (f64, f64) = (1e-4, 0.999_999);
        let want = (1.0 - x) * t + x * (t * t * t / 6.0 - t.powi(5) / 120.0);
        assert!((psi(t, x) - want).abs() < 1e-16 * want);
        for t in [0.01f64, 0.5, 1.0, 2.0, 3.0] {
            let direct = 6.0 / t * (t - t.sin()) - t * t;
            assert!((sine_tail(t, 2) - direct).abs() < 1e-13, "{t}");
            assert!((sine_tail(t, 3) - (direct + t.powi(4) / 20.0)).abs() < 1e-13, "{t}");
        }
        for u in [1e-3, 0.05, 0.0999, 0.1, 0.5] {
            assert!((cot_minus_recip(u) - (1.0 / u.tan() - 1.0 / u)).abs() < 1e-13 * (1.0 + 1.0 / u));
            assert!((csc_minus_recip(u) - (1.0 / u.sin() - 1.0 / u)).abs() < 1e-13 * (1.0 + 1.0 / u));
        }
        let theta = PI - 1e-9;
        let d = PI - theta;
        let (s, c) = sin_cos_psi(theta, 0.5);
        assert!((s - 1.5 * d).abs() < 1e-15 * d && (c + 1.0).abs() < 1e-15);
    }
}
