//! Exact closed forms of algebraic Kapteyn series.
//!
//! Right-hand sides live in [`registry`] as [`AlgebraicFunction`]s over
//! exact rationals. The operators in this module reproduce the higher
//! entries from the lower ones, and the closure checks compare the two
//! structurally.

mod algebraic;
mod rational;
mod registry;

use num_traits::Zero;

pub use algebraic::AlgebraicFunction;
pub use rational::{RationalCoeffs, RationalFunction};
pub use registry::{
    closure_checks, derive, eval_closed, export, identity_checks, lookup, registry, ClosureCheck,
    ExportEntry, IdentityCheck,
};

use serde::Serialize;

use crate::direct::{sum_series, Family, Parity, SeriesSpec};
use crate::error::{Error, Result};
use crate::exact::{Poly, Q};

/// One summand of a left-hand side: `multiplier(z) · Σ spec`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub multiplier: RationalFunction,
    pub spec: SeriesSpec,
}

impl Term {
    pub fn plain(spec: SeriesSpec) -> Self {
        Self {
            multiplier: RationalFunction::one(),
            spec,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Transcribed,
    OperatorDerived,
}

/// A summation formula: `Σ terms = expression` for `z` in `[lo, hi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormEntry {
    pub id: String,
    pub lhs: Vec<Term>,
    pub expression: AlgebraicFunction,
    pub validity: (f64, f64),
    pub provenance: Provenance,
    /// Which lower limit the right-hand side actually belongs to, for odd
    /// series whose printed limit is ambiguous.
    pub odd_start: Option<&'static str>,
}

impl ClosedFormEntry {
    /// The series when the left side is a single unweighted term.
    pub fn spec(&self) -> Option<&SeriesSpec> {
        match self.lhs.as_slice() {
            [t] if t.multiplier == RationalFunction::one() => Some(&t.spec),
            _ => None,
        }
    }

    fn check_z(&self, z: f64) -> Result<()> {
        let (lo, hi) = self.validity;
        if !(z >= lo && z < hi) {
            return Err(Error::Domain(format!(
                "entry {} is valid for {lo} ≤ z < {hi}, got {z}",
                self.id
            )));
        }
        Ok(())
    }

    pub fn eval(&self, z: f64) -> Result<f64> {
        self.check_z(z)?;
        self.expression.eval(z)
    }

    /// Left-hand side by brute-force summation.
    pub fn eval_direct(&self, z: f64, tol: f64) -> Result<f64> {
        self.check_z(z)?;
        let mut total = 0.0;
        for t in &self.lhs {
            let w = t.multiplier.eval(z)?;
            total += w * sum_series(&t.spec, z, tol)?.value;
        }
        Ok(total)
    }
}

/// `S ↦ (z d/dz)² S / (1 − z²)`: the closed form of `Σ c_m m^ν J_m(mz)`
/// to that of `Σ c_m m^{ν+2} J_m(mz)`.
pub fn apply_kapteyn_operator(rf: &RationalFunction) -> RationalFunction {
    let theta2 = rf.theta().theta();
    &theta2 / &RationalFunction::from_ints(&[1, 0, -1], &[1])
}

/// Power-series solution of `L F = g` with `F(0) = 0`, rebuilt as a rational
/// function over `g`'s denominator and verified exactly.
///
/// `coef(k, g_k)` gives `F`'s `z^k` coefficient, or `None` when `L` cannot
/// produce `g_k`.
fn invert_by_series(
    g: &RationalFunction,
    what: &str,
    shift: usize,
    coef: impl Fn(usize, &Q) -> Option<Q>,
    apply: impl Fn(&RationalFunction) -> RationalFunction,
) -> Result<RationalFunction> {
    if g.is_zero() {
        return Ok(RationalFunction::zero());
    }
    let not_in = |why: String| Err(Error::NotInImage(format!("{what} of {g}: {why}")));
    let den = g.denominator();
    if den.coeff(0).is_zero() {
        return not_in("pole at z = 0".into());
    }
    let deg = |p: &Poly| p.degree().unwrap_or(0);
    let n = deg(g.numerator()) + 2 * deg(den) + shift + 3;
    let gs = g.taylor(n).expect("regular at 0");
    let mut fs = vec![Q::zero(); n + shift];
    for (k, gk) in gs.iter().enumerate() {
        match coef(k + shift, gk) {
            Some(f) => fs[k + shift] = f,
            None => return not_in(format!("obstruction at order z^{k}")),
        }
    }
    // F · den(g) as a truncated polynomial
    let num = crate::exact::series_mul(&fs, den.coeffs(), n + shift);
    let cand = RationalFunction::new(Poly::new(num), den.clone())?;
    if &apply(&cand) != g {
        return not_in("no rational preimage with this denominator".into());
    }
    Ok(cand)
}

/// Inverse of `(z d/dz)²` with zero value and slope at the origin.
///
/// The input is `(1 − z²)` times the weight-`ν` closed form; the output is
/// the weight-`ν−2` closed form. A constant term in the input would need
/// `ln² z` and is refused.
pub fn integrate_weight_down(rf: &RationalFunction) -> Result<RationalFunction> {
    invert_by_series(
        rf,
        "(z d/dz)⁻²",
        0,
        |k, gk| {
            if k == 0 {
                gk.is_zero().then(Q::zero)
            } else {
                Some(gk / Q::from_integer((k * k).into()))
            }
        },
        |f| f.theta().theta(),
    )
}

/// `∫₀^z r(t) dt` when it is rational.
pub fn rational_antiderivative(rf: &RationalFunction) -> Result<RationalFunction> {
    invert_by_series(
        rf,
        "∫₀",
        1,
        |k, gk| Some(gk / Q::from_integer(k.into())),
        |f| f.derivative(),
    )
}

/// Even and odd parts from the plain and alternating closed forms.
pub fn parity_combine(
    s_plus: &RationalFunction,
    s_minus: &RationalFunction,
) -> (RationalFunction, RationalFunction) {
    let half = Q::new(1.into(), 2.into());
    (
        (s_plus + s_minus).scale(&half),
        (s_plus - s_minus).scale(&half),
    )
}

/// The `Σ n^ν J'_n²(nz)` formula implied by a `Σ n^ν J_n²(nz)` entry.
///
/// For `ν = −2` the relation `(1−z²) S' = (z² P)'` is integrated from the
/// origin; otherwise `P = ½(T'/z + T'') + (1 − 1/z²) S`, where `T` is the
/// registry's weight `ν−2` entry. The small-`z` value is checked against the
/// `n = 1` term, `J'_1(0)² = 1/4`.
pub fn derive_prime_relation(entry: &ClosedFormEntry) -> Result<ClosedFormEntry> {
    let spec = match entry.spec() {
        Some(s)
            if s.family == Family::Bilinear
                && s.deriv == (0, 0)
                && s.parity == Parity::All
                && !s.alternating
                && s.geometric_a == 1.0 =>
        {
            *s
        }
        _ => {
            return Err(Error::InvalidSpec(format!(
                "entry {} is not a plain Σ n^ν J_n² series",
                entry.id
            )))
        }
    };
    let z = RationalFunction::z();
    let z2 = &z * &z;
    let s = &entry.expression;
    let prime = if spec.weight == -2 {
        let rat = s.as_rational().ok_or_else(|| {
            Error::NotInImage(format!("entry {} has an irrational ν = −2 form", entry.id))
        })?;
        let integrand = &RationalFunction::from_ints(&[1, 0, -1], &[1]) * &rat.derivative();
        let a = rational_antiderivative(&integrand)?;
        AlgebraicFunction::from_rational(&a / &z2)
    } else {
        let lower = SeriesSpec::bilinear(spec.weight - 2).scaled(spec.scale);
        let t = registry()
            .iter()
            .find(|e| e.spec() == Some(&lower))
            .ok_or_else(|| {
                Error::UnknownId(format!("no registry entry for {lower} to pair with {}", entry.id))
            })?;
        let t1 = t.expression.derivative();
        let t2 = t1.derivative();
        let half = Q::new(1.into(), 2.into());
        let inv_z = z.recip()?;
        let first = (&t1.mul_rational(&inv_z) + &t2).scale(&half);
        let factor = &RationalFunction::one() - &(&RationalFunction::one() / &z2);
        &first + &s.mul_rational(&factor)
    };
    let scale = Q::from_float(spec.scale).expect("finite scale");
    let want = scale / Q::from_integer(4.into());
    match prime.value_at_zero() {
        Some(v) if v == want => {}
        got => {
            return Err(Error::NotInImage(format!(
                "derived J'² form of {} has value {got:?} at z = 0, expected {want}",
                entry.id
            )))
        }
    }
    let target = spec.derivs(1, 1);
    let id = registry()
        .iter()
        .find(|e| e.spec() == Some(&target))
        .map(|e| e.id.clone())
        .unwrap_or_else(|| format!("derived:{target}"));
    Ok(ClosedFormEntry {
        id,
        lhs: vec![Term::plain(target)],
        expression: prime,
        validity: entry.validity,
        provenance: Provenance::OperatorDerived,
        odd_start: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::from_ints(num, den)
    }

    #[test]
    fn kapteyn_operator_examples() {
        let s0 = rf(&[0, 1], &[2, -2]);
        let s2 = apply_kapteyn_operator(&s0);
        let want = RationalFunction::new(Poly::from_ints(&[0, 1]), Poly::from_ints(&[1, -1]).pow(4).scale(&q(2, 1))).unwrap();
        assert_eq!(s2, want);
        let s4 = apply_kapteyn_operator(&s2);
        let want = RationalFunction::new(Poly::from_ints(&[0, 1, 9]), Poly::from_ints(&[1, -1]).pow(7).scale(&q(2, 1))).unwrap();
        assert_eq!(s4, want);
        assert!(apply_kapteyn_operator(&RationalFunction::zero()).is_zero());
    }

    #[test]
    fn weight_down_examples() {
        let g = rf(&[0, 1, 1], &[2]);
        assert_eq!(integrate_weight_down(&g).unwrap(), rf(&[0, 4, 1], &[8]));
        assert!(integrate_weight_down(&RationalFunction::zero()).unwrap().is_zero());
        // round trip through the operator
        let s0 = rf(&[0, 1], &[2, -2]);
        let up = &apply_kapteyn_operator(&s0) * &rf(&[1, 0, -1], &[1]);
        assert_eq!(integrate_weight_down(&up).unwrap(), s0);
    }

    #[test]
    fn weight_down_refuses_obstructions() {
        // a constant needs ln² z; z/(1−z) would need Li₂
        assert!(matches!(integrate_weight_down(&RationalFunction::one()), Err(Error::NotInImage(_))));
        assert!(matches!(integrate_weight_down(&rf(&[0, 1], &[1, -1])), Err(Error::NotInImage(_))));
        assert!(matches!(integrate_weight_down(&rf(&[1], &[0, 1])), Err(Error::NotInImage(_))));
    }

    #[test]
    fn parity_examples() {
        let (e, o) = parity_combine(&rf(&[0, 1], &[2, -2]), &rf(&[0, -1], &[2, 2]));
        assert_eq!(e, rf(&[0, 0, 1], &[2, 0, -2]));
        assert_eq!(o, rf(&[0, 1], &[2, 0, -2]));
        let f = rf(&[1, 2], &[3, 0, 1]);
        let (e, o) = parity_combine(&f, &f);
        assert_eq!(e, f);
        assert!(o.is_zero());
    }

    #[test]
    fn antiderivative() {
        assert_eq!(rational_antiderivative(&rf(&[1, 0, 3], &[1])).unwrap(), rf(&[0, 1, 0, 1], &[1]));
        // 1/(1−z)² integrates to z/(1−z)
        assert_eq!(rational_antiderivative(&rf(&[1], &[1, -2, 1])).unwrap(), rf(&[0, 1], &[1, -1]));
        // 1/(1−z) integrates to a logarithm
        assert!(rational_antiderivative(&rf(&[1], &[1, -1])).is_err());
    }

    #[test]
    fn prime_relation_examples() {
        let p = derive_prime_relation(lookup("4.04").unwrap()).unwrap();
        assert_eq!(p.id, "4.06");
        assert_eq!(p.expression, lookup("4.06").unwrap().expression);
        let p = derive_prime_relation(lookup("4.07").unwrap()).unwrap();
        assert_eq!(p.id, "4.08");
        assert_eq!(p.expression, lookup("4.08").unwrap().expression);
        assert_eq!(p.provenance, Provenance::OperatorDerived);
        // weight 2 has no registry counterpart but still derives
        let p = derive_prime_relation(lookup("4.14").unwrap()).unwrap();
        assert!(p.id.starts_with("derived:"));
        assert!(derive_prime_relation(lookup("2.03").unwrap()).is_err());
    }
}
