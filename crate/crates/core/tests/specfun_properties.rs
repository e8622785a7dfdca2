use kapteyn::quad::{self, QuadOptions};
use kapteyn::specfun::{
    bessel_j, bessel_j_prime, bessel_j_second, bessel_k, gamma, scaled_bessel_with, uniform_j,
    uniform_j_prime, KOrder, ScaledConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn bessel_equation_residual() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..2000 {
        let n: u32 = rng.gen_range(0..=100);
        let x: f64 = rng.gen_range(1e-3..=50.0);
        let j = bessel_j(n, x).unwrap();
        let jp = bessel_j_prime(n, x).unwrap();
        let jpp = bessel_j_second(n, x).unwrap();
        let nf = n as f64;
        let res = x * x * jpp + x * jp + (x * x - nf * nf) * j;
        let bound = 1e-10 * (x * x * j).abs().max(1.0);
        assert!(res.abs() <= bound, "n = {n}, x = {x}: residual {res:e}");
    }
}

#[test]
fn three_term_recurrence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for _ in 0..2000 {
        let n: u32 = rng.gen_range(1..=100);
        let x: f64 = rng.gen_range(0.1..=50.0);
        let lhs = bessel_j(n - 1, x).unwrap() + bessel_j(n + 1, x).unwrap();
        let rhs = 2.0 * n as f64 / x * bessel_j(n, x).unwrap();
        // relative to the size of the terms, which vanish at zeros of J_n
        let size = bessel_j(n - 1, x).unwrap().abs() + rhs.abs();
        assert!((lhs - rhs).abs() <= 1e-11 * size.max(1e-300), "n = {n}, x = {x}");
    }
}

#[test]
fn derivatives_match_finite_differences() {
    let h = 1e-5;
    for n in [0, 1, 2, 7, 30] {
        for x in [0.3, 1.0, 5.0, 20.0, 40.0] {
            let d = (bessel_j(n, x + h).unwrap() - bessel_j(n, x - h).unwrap()) / (2.0 * h);
            assert!((d - bessel_j_prime(n, x).unwrap()).abs() < 1e-8, "J' n = {n}, x = {x}");
            let d2 = (bessel_j_prime(n, x + h).unwrap() - bessel_j_prime(n, x - h).unwrap()) / (2.0 * h);
            assert!((d2 - bessel_j_second(n, x).unwrap()).abs() < 1e-8, "J'' n = {n}, x = {x}");
        }
    }
}

#[test]
fn regimes_agree_at_the_crossover() {
    let above = ScaledConfig::default();
    let below = ScaledConfig {
        crossover_order: above.crossover_order + 1,
        ..above
    };
    let m = above.crossover_order;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut zs: Vec<f64> = (0..200).map(|_| rng.gen_range(0.05..=0.999)).collect();
    zs.extend([0.9, 0.99, 0.995, 0.999]);
    for z in zs {
        let a = scaled_bessel_with(m, z, &above).unwrap();
        let b = scaled_bessel_with(m, z, &below).unwrap();
        assert!(rel(a.value, b.value) < 1e-6, "J at z = {z}: {} vs {}", a.value, b.value);
        assert!(rel(a.prime, b.prime) < 1e-6, "J' at z = {z}");
    }
}

#[test]
fn uniform_forms_near_the_transition() {
    let n = 200;
    let x = 0.99;
    let r = uniform_j(n, x).unwrap() / bessel_j(n, n as f64 * x).unwrap();
    assert!((r - 1.0).abs() < 0.02, "{r}");
    let r = uniform_j_prime(n, x).unwrap() / bessel_j_prime(n, n as f64 * x).unwrap();
    assert!((r - 1.0).abs() < 0.02, "{r}");
}

#[test]
fn k_mellin_moment() {
    // ∫₀^∞ x^{α−1} K_ν(ax) dx = 2^{α−2} a^{−α} Γ((α+ν)/2) Γ((α−ν)/2)
    let (alpha, nu, a) = (2.0, 1.0 / 3.0, 1.0);
    let f = |x: f64| -> kapteyn::Result<f64> {
        Ok(if x == 0.0 { 0.0 } else { x.powf(alpha - 1.0) * bessel_k(KOrder::OneThird, a * x)? })
    };
    let pts = [0.0, 1e-6, 1e-3, 0.1, 1.0, 5.0, 20.0, 50.0];
    let r = quad::try_integrate_points(f, &pts, &QuadOptions::rel(1e-12)).unwrap();
    // K_ν(x) < e^{−x} beyond 50, so the tail is below 1e-19
    let want = 2f64.powf(alpha - 2.0)
        * a.powf(-alpha)
        * gamma((alpha + nu) / 2.0).unwrap()
        * gamma((alpha - nu) / 2.0).unwrap();
    assert!(rel(r.value, want) < 1e-8, "{} vs {want}", r.value);
}

#[test]
fn gamma_reference_values() {
    assert!(rel(gamma(2.0 / 3.0).unwrap(), 1.354_117_939_426_400_4) < 1e-13);
    assert!(rel(gamma(1.0 / 3.0).unwrap(), 2.678_938_534_707_747_6) < 1e-13);
    assert!(rel(gamma(0.5).unwrap(), std::f64::consts::PI.sqrt()) < 1e-13);
}
