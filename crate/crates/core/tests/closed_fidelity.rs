use kapteyn::closed::{derive, lookup, registry, Provenance};
use kapteyn::direct::{sum_series, SeriesSpec};

fn grid() -> Vec<f64> {
    (1..=18).map(|k| 0.05 * k as f64).collect()
}

/// Base-2 Halton points scaled into (0, 0.9].
fn halton(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|mut i| {
            let (mut f, mut r) = (1.0, 0.0);
            while i > 0 {
                f /= 2.0;
                r += f * (i % 2) as f64;
                i /= 2;
            }
            0.9 * r
        })
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn every_entry_matches_direct_summation() {
    let mut worst = (0.0, String::new());
    for e in registry() {
        for x in grid().into_iter().chain(halton(20)) {
            let closed = e.eval(x).unwrap();
            let direct = e.eval_direct(x, 1e-13).unwrap();
            let d = rel(direct, closed);
            if d > worst.0 {
                worst = (d, format!("{} at {x}", e.id));
            }
            assert!(d <= 1e-10, "{} at x = {x}: direct {direct} vs closed {closed}", e.id);
        }
    }
    println!("worst relative deviation {:.2e} ({})", worst.0, worst.1);
}

#[test]
fn odd_series_start_at_the_first_order() {
    for id in ["2.06", "2.08", "2.15b", "2.24"] {
        let e = lookup(id).unwrap();
        assert!(e.odd_start.is_some());
        let spec = *e.spec().unwrap();
        for x in [0.2, 0.5, 0.8] {
            let closed = e.eval(x).unwrap();
            let r = sum_series(&spec, x, 1e-13).unwrap();
            assert!(rel(r.value, closed) < 1e-11, "{id}");
            // without the m = 1 term the mismatch dwarfs the error estimate
            let b = kapteyn::specfun::scaled_bessel(1, x).unwrap();
            let first = spec.coefficient(1) * b.deriv(spec.deriv.0);
            let miss = (r.value - first - closed).abs();
            assert!(miss > 1e6 * r.abs_error_estimate.max(1e-15 * closed.abs()), "{id} at {x}");
        }
    }
}

#[test]
fn derivative_entries_match_termwise_derivatives() {
    // the J' and J'' entries against finite differences of the J sums
    let h = 1e-4;
    let cases = [
        ("2.07", SeriesSpec::linear(0).even(), 1),
        ("2.08", SeriesSpec::linear(0).odd(), 1),
        ("2.09", SeriesSpec::linear(0).even(), 2),
        ("2.15a", SeriesSpec::linear(-2).even(), 1),
        ("2.15b", SeriesSpec::linear(-2).odd(), 1),
    ];
    for (id, base, order) in cases {
        for x in [0.2, 0.5, 0.8] {
            let f = |t: f64| sum_series(&base, t, 1e-14).unwrap().value;
            let fd = if order == 1 {
                (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
            } else {
                (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h))
                    / (12.0 * h * h)
            };
            // Σ m^{w} D^d J_m(mx) is d/dx^d of Σ m^{w−d} J_m(mx)
            let closed = lookup(id).unwrap().eval(x).unwrap();
            let tol = if order == 1 { 1e-9 } else { 1e-6 };
            assert!(rel(fd, closed) < tol, "{id} at {x}: {fd} vs {closed}");
        }
    }
}

#[test]
fn derived_entries_are_marked() {
    let d = derive("2.20").unwrap().unwrap();
    assert_eq!(d.provenance, Provenance::OperatorDerived);
    assert_eq!(d.expression, lookup("2.20").unwrap().expression);
    assert!(derive("2.03").unwrap().is_none());
    assert!(derive("nope").is_err());
}
