use std::f64::consts::PI;

use serde::Serialize;

use super::gamma::gamma;
use crate::error::{domain, Result};

/// The two fractional orders that appear in the Airy connection formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum KOrder {
    OneThird,
    TwoThirds,
}

impl KOrder {
    pub fn nu(self) -> f64 {
        match self {
            KOrder::OneThird => 1.0 / 3.0,
            KOrder::TwoThirds => 2.0 / 3.0,
        }
    }
}

/// Modified Bessel function `K_ν(x)` for `ν ∈ {1/3, 2/3}`, `x > 0`.
///
/// Trapezoid rule on `∫₀^∞ e^{−x cosh t} cosh(νt) dt`; the integrand is
/// analytic in the strip `|Im t| < π/2`, so a fixed step of 0.1 is far past
/// double precision.
pub fn bessel_k(order: KOrder, x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return domain(format!("K_ν needs a finite positive argument, got {x}"));
    }
    Ok(k_scaled(order.nu(), x) * (-x).exp())
}

/// `e^x K_ν(x)`.
fn k_scaled(nu: f64, x: f64) -> f64 {
    let h = 0.1;
    let t_max = (40.0 / x).max(1.0).acosh() + 1.0;
    let steps = (t_max / h).ceil() as usize;
    let mut sum = 0.5; // t = 0: e^{−x(cosh 0 − 1)} cosh 0
    for i in 1..=steps {
        let t = i as f64 * h;
        // cosh t − 1 = 2 sinh²(t/2)
        let s = (0.5 * t).sinh();
        let v = (-2.0 * x * s * s).exp() * (nu * t).cosh();
        sum += v;
        if v < 1e-18 * sum {
            break;
        }
    }
    h * sum
}

/// `Ai(x)` for `x ≥ 0`: `Ai(x) = (1/π)√(x/3) K_{1/3}(ζ)`, `ζ = (2/3)x^{3/2}`.
pub fn airy_ai(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return domain(format!("Ai is provided for finite x ≥ 0, got {x}"));
    }
    if x == 0.0 {
        return Ok(3f64.powf(-2.0 / 3.0) / gamma(2.0 / 3.0)?);
    }
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    Ok((x / 3.0).sqrt() / PI * bessel_k(KOrder::OneThird, zeta)?)
}

/// `Ai'(x)` for `x ≥ 0`: `Ai'(x) = −x/(π√3) K_{2/3}(ζ)`.
pub fn airy_ai_prime(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return domain(format!("Ai' is provided for finite x ≥ 0, got {x}"));
    }
    if x == 0.0 {
        return Ok(-(3f64.powf(-1.0 / 3.0)) / gamma(1.0 / 3.0)?);
    }
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    Ok(-x / (PI * 3f64.sqrt()) * bessel_k(KOrder::TwoThirds, zeta)?)
}

fn check_uniform(n: u32, x: f64) -> Result<f64> {
    if n == 0 {
        return domain("the large-order form needs n ≥ 1");
    }
    if !(x > 0.0 && x < 1.0) {
        return domain(format!(
            "the large-order K form covers 0 < x < 1 only, got {x}"
        ));
    }
    Ok((1.0 - x) * (1.0 + x))
}

/// Leading transition-region form `J_n(nx) ≈ √(1−x²)/(π√3) K_{1/3}(n(1−x²)^{3/2}/3)`.
///
/// Only accurate to a few percent; the summation engine never uses it.
pub fn uniform_j(n: u32, x: f64) -> Result<f64> {
    let g = check_uniform(n, x)?;
    let arg = n as f64 * g * g.sqrt() / 3.0;
    Ok(g.sqrt() / (PI * 3f64.sqrt()) * bessel_k(KOrder::OneThird, arg)?)
}

/// Leading form `J'_n(nx) ≈ (1−x²)/(π√3) K_{2/3}(n(1−x²)^{3/2}/3)`.
pub fn uniform_j_prime(n: u32, x: f64) -> Result<f64> {
    let g = check_uniform(n, x)?;
    let arg = n as f64 * g * g.sqrt() / 3.0;
    Ok(g / (PI * 3f64.sqrt()) * bessel_k(KOrder::TwoThirds, arg)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn reference_values() {
        // mpmath
        let cases = [
            (KOrder::OneThird, 1e-6, 168.746_431_100_892_7),
            (KOrder::OneThird, 0.5, 0.989_031_074_246_724_3),
            (KOrder::OneThird, 7.0, 4.279_682_583_582_18e-4),
            (KOrder::TwoThirds, 1e-6, 10_747.641_081_108_539),
            (KOrder::TwoThirds, 2.0, 0.124_838_927_488_128_31),
            (KOrder::TwoThirds, 50.0, 3.425_208_530_143_374_6e-23),
        ];
        for (o, x, v) in cases {
            let got = bessel_k(o, x).unwrap();
            assert!(rel(got, v) < 1e-11, "K_{:?}({x}) = {got}, want {v}", o);
        }
    }

    #[test]
    fn large_argument_limit() {
        for o in [KOrder::OneThird, KOrder::TwoThirds] {
            let x = 40.0;
            let r = bessel_k(o, x).unwrap() * x.exp() * (2.0 * x / PI).sqrt();
            assert!((r - 1.0).abs() < 1e-2);
        }
    }

    #[test]
    fn airy_connection_at_origin() {
        assert!(rel(airy_ai(0.0).unwrap(), 0.355_028_053_887_817_24) < 1e-13);
        assert!(rel(airy_ai_prime(0.0).unwrap(), -0.258_819_403_792_806_8) < 1e-13);
        // the K form approaches the same limits
        assert!(rel(airy_ai(1e-7).unwrap(), 0.355_028_053_887_817_24) < 1e-6);
        assert!(rel(airy_ai_prime(1e-7).unwrap(), -0.258_819_403_792_806_8) < 1e-6);
    }

    #[test]
    fn uniform_forms_are_positive_and_reject_bad_x() {
        for n in [1, 10, 1000] {
            for x in [0.1, 0.5, 0.99] {
                assert!(uniform_j(n, x).unwrap() > 0.0);
                assert!(uniform_j_prime(n, x).unwrap() > 0.0);
            }
        }
        assert!(uniform_j(10, 1.0).is_err());
        assert!(uniform_j_prime(10, 0.0).is_err());
    }
}
