use kapteyn::direct::{sum_series, SeriesSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sum(spec: SeriesSpec, x: f64) -> f64 {
    sum_series(&spec, x, 1e-14).unwrap().value
}

#[test]
fn parity_reconstruction() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd1_0001);
    for _ in 0..60 {
        let nu: i32 = rng.gen_range(-2..=4);
        let d: u8 = rng.gen_range(0..=1);
        let x: f64 = rng.gen_range(0.01..=0.9);
        let base = SeriesSpec::linear(nu).deriv(d);
        let all = sum(base, x);
        let even = sum(base.even(), x);
        let odd = sum(base.odd(), x);
        let alt = sum(base.alternating(), x);
        let scale = all.abs().max(even.abs()).max(odd.abs());
        assert!((all - even - odd).abs() <= 1e-11 * scale, "ν = {nu}, d = {d}, x = {x}");
        assert!((even - 0.5 * (all + alt)).abs() <= 1e-11 * scale, "ν = {nu}, d = {d}, x = {x}");
    }
}

#[test]
fn tighter_tolerance_means_more_work_and_smaller_bound() {
    let spec = SeriesSpec::linear(1);
    for x in [0.3, 0.7, 0.95] {
        let mut last: Option<(f64, usize)> = None;
        for tol in [1e-6, 1e-9, 1e-12, 1e-14] {
            let r = sum_series(&spec, x, tol).unwrap();
            if let Some((err, terms)) = last {
                assert!(r.abs_error_estimate <= err, "x = {x}, tol = {tol}");
                assert!(r.terms_used >= terms, "x = {x}, tol = {tol}");
            }
            last = Some((r.abs_error_estimate, r.terms_used));
        }
    }
}

#[test]
fn derivative_matches_finite_difference() {
    // d/dx Σ c_m J_m(mx) = Σ m c_m J'_m(mx); five-point stencil, since the
    // three-point truncation h²f‴/6 alone exceeds 1e-6 for ν = 2 at x = 0.8
    let h = 1e-4;
    for nu in [-2, -1, 0, 1, 2] {
        for k in 1..=8 {
            let x = k as f64 / 10.0;
            let f = SeriesSpec::linear(nu);
            let fd = (8.0 * (sum(f, x + h) - sum(f, x - h))
                - (sum(f, x + 2.0 * h) - sum(f, x - 2.0 * h)))
                / (12.0 * h);
            let d = sum(SeriesSpec::linear(nu + 1).deriv(1), x);
            assert!(((fd - d) / d).abs() < 1e-6, "ν = {nu}, x = {x}: {fd} vs {d}");
        }
    }
}
