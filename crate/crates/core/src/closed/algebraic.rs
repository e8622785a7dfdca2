use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{sign, RationalFunction};
use crate::error::{domain, Result};
use crate::exact::{q_to_f64, Poly, Q};

/// `A(z) + B(z)·√(1−z²)` with rational `A`, `B`.
///
/// `√(1−z²)` is irrational over `Q(z)`, so the pair is a canonical form and
/// equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraicFunction {
    pub rational: RationalFunction,
    pub radical: RationalFunction,
}

fn one_minus_z2() -> RationalFunction {
    RationalFunction::from_ints(&[1, 0, -1], &[1])
}

impl AlgebraicFunction {
    pub fn new(rational: RationalFunction, radical: RationalFunction) -> Self {
        Self { rational, radical }
    }

    pub fn from_rational(r: RationalFunction) -> Self {
        Self::new(r, RationalFunction::zero())
    }

    pub fn zero() -> Self {
        Self::from_rational(RationalFunction::zero())
    }

    /// `√(1−z²)`
    pub fn sqrt_one_minus_z2() -> Self {
        Self::new(RationalFunction::zero(), RationalFunction::one())
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    /// The rational part when there is no radical part.
    pub fn as_rational(&self) -> Option<&RationalFunction> {
        self.radical.is_zero().then_some(&self.rational)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.rational.scale(c), self.radical.scale(c))
    }

    pub fn mul_rational(&self, r: &RationalFunction) -> Self {
        Self::new(&self.rational * r, &self.radical * r)
    }

    /// `(B·s)' = (B' − zB/(1−z²))·s`
    pub fn derivative(&self) -> Self {
        let b = &self.radical;
        let z = RationalFunction::z();
        let rad = &b.derivative() - &(&(&z * b) / &one_minus_z2());
        Self::new(self.rational.derivative(), rad)
    }

    /// `(P, R, D)` with `self = (P + R·s)/D` and no factor common to all three.
    fn parts(&self) -> (Poly, Poly, Poly) {
        let a = &self.rational;
        let b = &self.radical;
        let p = a.numerator() * b.denominator();
        let r = b.numerator() * a.denominator();
        let d = a.denominator() * b.denominator();
        let g = p.gcd(&r).gcd(&d);
        (p.div_rem(&g).0, r.div_rem(&g).0, d.div_rem(&g).0)
    }

    /// `(P² − R²(1−z²)) / D`, reduced: `self = this / (P − R·s)`.
    fn conjugate(p: &Poly, r: &Poly, d: &Poly) -> Result<RationalFunction> {
        let n = &(p * p) - &(&(r * r) * &Poly::from_ints(&[1, 0, -1]));
        RationalFunction::new(n, d.clone())
    }

    /// Exact value at `z = 0`, where `s = 1`, if the function is regular there.
    pub fn value_at_zero(&self) -> Option<Q> {
        let (p, r, d) = self.parts();
        let zero = Q::zero();
        let (p0, r0, d0) = (p.eval_q(&zero), r.eval_q(&zero), d.eval_q(&zero));
        if !d0.is_zero() {
            return Some((p0 + r0) / d0);
        }
        let conj = Self::conjugate(&p, &r, &d).ok()?;
        let denom = &p0 - &r0;
        if denom.is_zero() {
            return None;
        }
        conj.eval_q(&zero).map(|v| v / denom)
    }

    /// Evaluation at the binary64 point `z`, with the only inexact steps
    /// being `√(1−z²)` and the final combination.
    ///
    /// When `A` and `B·s` cancel, the conjugate form
    /// `(A² − B²(1−z²)) / (A − B·s)` is used with its numerator reduced
    /// exactly, which also resolves removable singularities such as
    /// `(1 − s)/(2z²)` at `z = 0`.
    pub fn eval(&self, z: f64) -> Result<f64> {
        if !(-1.0..=1.0).contains(&z) {
            return domain(format!("√(1−z²) needs |z| ≤ 1, got {z}"));
        }
        if self.radical.is_zero() {
            return self.rational.eval(z);
        }
        let zq = Q::from_float(z).expect("finite");
        let w = q_to_f64(&(Q::one() - &zq * &zq)).sqrt();
        let (p, r, d) = self.parts();
        let (pq, rq, dq) = (p.eval_q(&zq), r.eval_q(&zq), d.eval_q(&zq));
        let cancels = sign(&pq) * sign(&rq) < 0;
        if !dq.is_zero() && !cancels {
            return Ok(q_to_f64(&(pq / &dq)) + q_to_f64(&(rq / &dq)) * w);
        }
        let conj = Self::conjugate(&p, &r, &d)?;
        let cq = conj.eval_q(&zq);
        let denom = q_to_f64(&pq) - q_to_f64(&rq) * w;
        match cq {
            Some(c) if denom != 0.0 => Ok(q_to_f64(&c) / denom),
            _ => domain(format!("z = {z} is a singular point of {self}")),
        }
    }
}

impl From<RationalFunction> for AlgebraicFunction {
    fn from(r: RationalFunction) -> Self {
        Self::from_rational(r)
    }
}

impl fmt::Debug for AlgebraicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.radical.is_zero()) {
            (_, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "[{}]·√(1−z²)", self.radical),
            (false, false) => write!(f, "{} + [{}]·√(1−z²)", self.rational, self.radical),
        }
    }
}

impl Add for &AlgebraicFunction {
    type Output = AlgebraicFunction;
    fn add(self, o: &AlgebraicFunction) -> AlgebraicFunction {
        AlgebraicFunction::new(&self.rational + &o.rational, &self.radical + &o.radical)
    }
}

impl Sub for &AlgebraicFunction {
    type Output = AlgebraicFunction;
    fn sub(self, o: &AlgebraicFunction) -> AlgebraicFunction {
        AlgebraicFunction::new(&self.rational - &o.rational, &self.radical - &o.radical)
    }
}

impl Mul for &AlgebraicFunction {
    type Output = AlgebraicFunction;
    fn mul(self, o: &AlgebraicFunction) -> AlgebraicFunction {
        let rr = &(&self.rational * &o.rational)
            + &(&(&self.radical * &o.radical) * &one_minus_z2());
        let rs = &(&self.rational * &o.radical) + &(&self.radical * &o.rational);
        AlgebraicFunction::new(rr, rs)
    }
}

impl Neg for &AlgebraicFunction {
    type Output = AlgebraicFunction;
    fn neg(self) -> AlgebraicFunction {
        AlgebraicFunction::new(-&self.rational, -&self.radical)
    }
}

impl Add for AlgebraicFunction {
    type Output = AlgebraicFunction;
    fn add(self, o: AlgebraicFunction) -> AlgebraicFunction {
        &self + &o
    }
}

impl Sub for AlgebraicFunction {
    type Output = AlgebraicFunction;
    fn sub(self, o: AlgebraicFunction) -> AlgebraicFunction {
        &self - &o
    }
}

impl Mul for AlgebraicFunction {
    type Output = AlgebraicFunction;
    fn mul(self, o: AlgebraicFunction) -> AlgebraicFunction {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn radical_squares_to_polynomial() {
        let s = AlgebraicFunction::sqrt_one_minus_z2();
        assert_eq!(&s * &s, AlgebraicFunction::from_rational(one_minus_z2()));
    }

    #[test]
    fn derivative_of_radical() {
        // d/dz √(1−z²) = −z/√(1−z²) = −z/(1−z²) · √(1−z²)
        let d = AlgebraicFunction::sqrt_one_minus_z2().derivative();
        assert!(d.rational.is_zero());
        assert_eq!(d.radical, RationalFunction::from_ints(&[0, -1], &[1, 0, -1]));
    }

    #[test]
    fn removable_point_and_cancellation() {
        // (1 − √(1−z²))/(2z²) → 1/4 at 0
        let f = AlgebraicFunction::new(
            RationalFunction::from_ints(&[1], &[0, 0, 2]),
            RationalFunction::from_ints(&[-1], &[0, 0, 2]),
        );
        assert_eq!(f.eval(0.0).unwrap(), 0.25);
        let z: f64 = 1e-5;
        let want = 1.0 / (2.0 * (1.0 + (1.0 - z * z).sqrt()));
        assert!((f.eval(z).unwrap() - want).abs() < 1e-16);
        let g = f.scale(&q(2, 1));
        assert!((g.eval(0.6).unwrap() - (1.0 - 0.8) / 0.36).abs() < 1e-15);
    }
}
