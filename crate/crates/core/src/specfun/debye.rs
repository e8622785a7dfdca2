//! Debye polynomials `u_k(t)`, `v_k(t)` for the large-order expansions
//!
//! ```text
//! J_ν(ν sech α) ~ e^{ν(tanh α − α)} / √(2πν tanh α) · Σ u_k(coth α) / ν^k
//! J'_ν(ν sech α) ~ e^{ν(tanh α − α)} √(sinh 2α / 4πν) · Σ v_k(coth α) / ν^k
//! ```
//!
//! The polynomials are generated exactly from
//! `u_{k+1} = ½t²(1−t²)u_k' + ⅛∫₀ᵗ(1−5s²)u_k ds` and
//! `v_{k+1} = u_{k+1} − ½t(1−t²)u_k − t²(1−t²)u_k'`, then rounded once.

use std::sync::OnceLock;

use crate::exact::{q, q_to_f64, Poly};

pub(crate) const ORDERS: usize = 26;

pub(crate) struct DebyeTables {
    pub u: Vec<Vec<f64>>,
    pub v: Vec<Vec<f64>>,
}

pub(crate) fn tables() -> &'static DebyeTables {
    static TABLES: OnceLock<DebyeTables> = OnceLock::new();
    TABLES.get_or_init(build)
}

pub(crate) fn exact_polynomials(orders: usize) -> (Vec<Poly>, Vec<Poly>) {
    let t2 = Poly::monomial(q(1, 1), 2);
    let one_minus_t2 = Poly::from_ints(&[1, 0, -1]);
    let a = &t2 * &one_minus_t2; // t²(1−t²)
    let b = &Poly::from_ints(&[0, 1]) * &one_minus_t2; // t(1−t²)
    let kernel = Poly::from_ints(&[1, 0, -5]);
    let mut u = vec![Poly::one()];
    let mut v = vec![Poly::one()];
    for k in 0..orders - 1 {
        let du = u[k].derivative();
        let next = &(&a * &du).scale(&q(1, 2)) + &(&kernel * &u[k]).antiderivative().scale(&q(1, 8));
        let vn = &(&next - &(&b * &u[k]).scale(&q(1, 2))) - &(&a * &du);
        u.push(next);
        v.push(vn);
    }
    (u, v)
}

fn build() -> DebyeTables {
    let (u, v) = exact_polynomials(ORDERS);
    let round = |p: &Poly| p.coeffs().iter().map(q_to_f64).collect::<Vec<_>>();
    DebyeTables {
        u: u.iter().map(round).collect(),
        v: v.iter().map(round).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_polynomials_match_the_classical_ones() {
        let (u, v) = exact_polynomials(3);
        assert_eq!(u[1], Poly::new(vec![q(0, 1), q(3, 24), q(0, 1), q(-5, 24)]));
        assert_eq!(v[1], Poly::new(vec![q(0, 1), q(-9, 24), q(0, 1), q(7, 24)]));
        // u₂ = (81t² − 462t⁴ + 385t⁶)/1152
        assert_eq!(
            u[2],
            Poly::new(vec![
                q(0, 1),
                q(0, 1),
                q(81, 1152),
                q(0, 1),
                q(-462, 1152),
                q(0, 1),
                q(385, 1152)
            ])
        );
    }
}
