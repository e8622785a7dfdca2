use std::f64::consts::FRAC_PI_2;

use kapteyn::quad::{self, QuadOptions};
use kapteyn::radiation::*;
use kapteyn::specfun::{bessel_j, bessel_j_prime};

const SERIES: ProbabilityMethod = ProbabilityMethod::Series;
const NUMERIC: ProbabilityMethod = ProbabilityMethod::Numeric;

fn grid() -> impl Iterator<Item = f64> {
    (1..=9).map(|k| k as f64 / 10.0)
}

#[test]
fn harmonics_are_non_negative() {
    for beta in grid() {
        for n in 1..=200 {
            let v = harmonic_intensity(n, beta).unwrap();
            assert!(v >= 0.0, "n = {n}, beta = {beta}: {v:e}");
        }
    }
}

#[test]
fn harmonics_integrate_the_angular_distribution() {
    // Î_n = β n² ∫₀^{π/2} cos θ [tan²θ J_n²(nβ cos θ) + β² J'_n²(nβ cos θ)] dθ
    let beta = 0.5;
    for n in 1..=3u32 {
        let nf = n as f64;
        let f = |t: f64| -> kapteyn::Result<f64> {
            let z = nf * beta * t.cos();
            let j = bessel_j(n, z)?;
            let jp = bessel_j_prime(n, z)?;
            Ok(t.sin().powi(2) / t.cos() * j * j + beta * beta * t.cos() * jp * jp)
        };
        let r = quad::try_integrate(f, 0.0, FRAC_PI_2, &QuadOptions::rel(1e-12)).unwrap();
        let want = harmonic_intensity(n, beta).unwrap();
        assert!((beta * nf * nf * r.value - want).abs() < 1e-10 * want, "n = {n}");
    }
}

#[test]
fn harmonic_sum_rule() {
    for beta in [0.3, 0.5, 0.7] {
        let h = probability_by_harmonics(beta, 1e-13).unwrap();
        let n = total_probability(beta, NUMERIC).unwrap();
        let tol = 1e-9 * n.value + h.error_estimate + n.error_estimate;
        assert!((h.value - n.value).abs() <= tol, "beta = {beta}: {} vs {}", h.value, n.value);
    }
}

#[test]
fn intensity_from_closed_forms() {
    let beta = 0.5;
    let mut sum = 0.0;
    for n in 1..=200 {
        sum += harmonic_intensity(n, beta).unwrap();
    }
    let closed = total_intensity(beta).unwrap();
    assert!((sum - closed).abs() < 1e-6 * closed, "{sum} vs {closed}");
}

#[test]
fn series_and_numeric_probabilities() {
    for beta in [0.1, 0.3] {
        let s = total_probability(beta, SERIES).unwrap().value;
        let n = total_probability(beta, NUMERIC).unwrap().value;
        assert!((s - n).abs() < 1e-6, "beta = {beta}");
    }
    // beyond 0.3 the five printed terms no longer reach 1e-6; the gap stays
    // within the size of the first omitted term
    for beta in [0.5, 0.7, 0.9] {
        let s = total_probability(beta, SERIES).unwrap();
        let n = total_probability(beta, NUMERIC).unwrap().value;
        assert!((s.value - n).abs() < 10.0 * s.error_estimate, "beta = {beta}");
    }
}

#[test]
fn series_is_increasing() {
    let mut last = total_probability(0.0, SERIES).unwrap().value;
    assert_eq!(last, 0.0);
    for k in 1..=90 {
        let v = total_probability(k as f64 / 100.0, SERIES).unwrap().value;
        assert!(v > last, "beta = {}", k as f64 / 100.0);
        last = v;
    }
}

#[test]
fn classical_rate_and_survival() {
    let input = RadiationInput {
        beta: 0.3,
        omega_h: 2.0,
        chi: 0.0,
        time: 5.0,
        mode: Mode::Classical,
    };
    let p = total_probability(0.3, SERIES).unwrap().value;
    let rate = input.rate(SERIES).unwrap();
    assert!((rate - 2.0 * ALPHA * 2.0 / 0.3 * p).abs() < 1e-18);
    assert!((input.survival(SERIES).unwrap() - (-5.0 * rate).exp()).abs() < 1e-15);
    let still = RadiationInput { time: 0.0, ..input };
    assert_eq!(still.survival(NUMERIC).unwrap(), 1.0);
    assert!(RadiationInput { beta: 1.0, ..input }.rate(SERIES).is_err());
    assert!(RadiationInput { omega_h: 0.0, ..input }.rate(SERIES).is_err());
    assert!(RadiationInput { beta: 0.95, ..input }.rate(SERIES).is_err());
    assert!(RadiationInput { beta: 0.95, ..input }.rate(NUMERIC).is_ok());
}

#[test]
fn quantum_rate_and_lifetime() {
    let input = RadiationInput {
        beta: 0.6,
        omega_h: 1.0,
        chi: 0.05,
        time: 1.0,
        mode: Mode::Quantum,
    };
    let rate = input.rate(NUMERIC).unwrap();
    assert!((rate - ALPHA * w_low(0.05) * 0.8).abs() < 1e-16);
    assert!(RadiationInput { chi: 1.0, ..input }.rate(NUMERIC).is_err());
    let w = quantum_W(1.0).unwrap();
    assert_eq!(w.regime, QuantumRegime::Gap);
    assert!(w.low.is_some() && w.high.is_some());
    assert_eq!(quantum_W(0.0).unwrap().single().unwrap(), 0.0);
    assert!(quantum_W(-1.0).is_err());
    for (gamma, chi) in [(1e4, 20.0), (1e6, 100.0)] {
        let r = lifetime_ratio(gamma, chi, 2.0).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-12);
    }
    assert!((lifetime_ratio(10.0, 0.01, 2.0).unwrap() - 1.0).abs() < 1e-15);
    assert_eq!(lab_lifetime(3.0, 0.0).unwrap(), f64::INFINITY);
}
