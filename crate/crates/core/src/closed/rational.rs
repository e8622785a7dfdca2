use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exact::{q_to_f64, Poly, Q};

/// Exact ratio of polynomials in `z` over the rationals.
///
/// Always stored reduced, with a monic denominator, so structural equality
/// is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

/// Coefficient lists as `"p/q"` strings, ascending powers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalCoeffs {
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return domain("rational function with a zero denominator");
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.div_rem(&g);
        let (mut d, _) = den.div_rem(&g);
        let lead = d.leading();
        if !lead.is_one() {
            let inv = Q::one() / lead;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Self { num: n, den: d }
    }

    /// From integer coefficient lists; panics on a zero denominator, so only
    /// for literals.
    pub fn from_ints(num: &[i64], den: &[i64]) -> Self {
        Self::new(Poly::from_ints(num), Poly::from_ints(den)).expect("non-zero literal denominator")
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::reduced(p, Poly::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn z() -> Self {
        Self::from_poly(Poly::z())
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::reduced(self.num.scale(c), self.den.clone())
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduced(n, &self.den * &self.den)
    }

    /// `z · d/dz`
    pub fn theta(&self) -> Self {
        &Self::z() * &self.derivative()
    }

    pub fn eval_q(&self, z: &Q) -> Option<Q> {
        let d = self.den.eval_q(z);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval_q(z) / d)
        }
    }

    /// Exact evaluation at the binary64 point `z`, rounded once.
    pub fn eval(&self, z: f64) -> Result<f64> {
        let zq = Q::from_float(z).ok_or_else(|| crate::Error::Domain(format!("non-finite z {z}")))?;
        match self.eval_q(&zq) {
            Some(v) => Ok(q_to_f64(&v)),
            None => domain(format!("z = {z} is a pole of {self}")),
        }
    }

    /// Taylor coefficients at `z = 0` through `z^{n−1}`, if regular there.
    pub fn taylor(&self, n: usize) -> Option<Vec<Q>> {
        if self.den.coeff(0).is_zero() {
            return None;
        }
        Some(self.num.series_div(&self.den, n))
    }

    pub fn coeffs(&self) -> RationalCoeffs {
        let strs = |p: &Poly| p.coeffs().iter().map(|c| c.to_string()).collect();
        RationalCoeffs {
            numerator: strs(&self.num),
            denominator: strs(&self.den),
        }
    }

    /// Leading sign and magnitude helper for display.
    fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        if self.den == o.den {
            return RationalFunction::reduced(&self.num + &o.num, self.den.clone());
        }
        RationalFunction::reduced(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        self + &(-o)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(&self.num * &o.num, &self.den * &o.den)
    }
}

/// Panics when dividing by the zero function.
impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, o: &RationalFunction) -> RationalFunction {
        assert!(!o.is_zero(), "division by the zero rational function");
        RationalFunction::reduced(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: RationalFunction) -> RationalFunction {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

/// Sign of a rational, for cancellation checks.
pub(crate) fn sign(v: &Q) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn normalisation_is_canonical() {
        // (2z − 2z²)/(4 − 4z²) = z/(2(1+z)) → monic denominator z + 1
        let a = RationalFunction::from_ints(&[0, 2, -2], &[4, 0, -4]);
        let b = RationalFunction::from_ints(&[0, 1], &[2, 2]);
        assert_eq!(a, b);
        assert_eq!(a.denominator(), &Poly::from_ints(&[1, 1]));
        assert_eq!(a.numerator(), &Poly::new(vec![q(0, 1), q(1, 2)]));
    }

    #[test]
    fn calculus() {
        // d/dz z/(1−z) = 1/(1−z)²
        let f = RationalFunction::from_ints(&[0, 1], &[1, -1]);
        assert_eq!(f.derivative(), RationalFunction::from_ints(&[1], &[1, -2, 1]));
        assert_eq!(&f - &f, RationalFunction::zero());
        assert_eq!(&(&f * &f) / &f, f);
    }

    #[test]
    fn evaluation_rounds_once() {
        let f = RationalFunction::from_ints(&[0, 1], &[2, -2]);
        assert_eq!(f.eval(0.5).unwrap(), 0.5);
        assert!(RationalFunction::from_ints(&[1], &[1, -1]).eval(1.0).is_err());
        assert_eq!(f.taylor(4).unwrap(), vec![q(0, 1), q(1, 2), q(1, 2), q(1, 2)]);
    }
}
