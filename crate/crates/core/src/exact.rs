//! Polynomials and truncated power series with arbitrary-precision rational
//! coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Nearest binary64 to `v` (ties and subnormals aside).
pub fn q_to_f64(v: &Q) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    let n = v.numer().abs();
    let d = v.denom().clone();
    // quotient with 66–67 significant bits, remainder folded into a sticky bit
    let k = 66 - (n.bits() as i64 - d.bits() as i64);
    let (num, den) = if k >= 0 {
        (n << k as usize, d)
    } else {
        (n, d << (-k) as usize)
    };
    let (mut quo, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        quo |= BigInt::one();
    }
    let mut f = quo.to_f64().unwrap_or(f64::INFINITY);
    // f · 2^{−k} in steps that cannot overflow an intermediate
    let mut e = -k;
    while e != 0 {
        let step = e.clamp(-1000, 1000);
        f *= 2f64.powi(step as i32);
        e -= step;
    }
    if v.is_negative() {
        -f
    } else {
        f
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Dense polynomial, coefficients in ascending powers, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| qi(v)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·z^k`.
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut v = vec![Q::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn z() -> Self {
        Self::monomial(Q::one(), 1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * qi(k as i64))
                .collect(),
        )
    }

    /// Antiderivative vanishing at zero.
    pub fn antiderivative(&self) -> Self {
        let mut v = vec![Q::zero()];
        v.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| a / qi(k as i64 + 1)),
        );
        Self::new(v)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitutes `z → −z`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| if k % 2 == 1 { -a.clone() } else { a.clone() })
                .collect(),
        )
    }

    pub fn eval(&self, z: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * z + q_to_f64(c))
    }

    pub fn eval_q(&self, z: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * z + c)
    }

    /// Euclidean division: `self = q·d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Q::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quo[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quo), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead = self.leading();
        self.scale(&(Q::one() / lead))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// Scales to integer coefficients with unit content (keeps Euclid's
    /// remainder sequence from blowing up).
    fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Q::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Self::new(ints.into_iter().map(|c| Q::new(c, g.clone())).collect())
    }

    /// Truncated power series of `self / den` through `z^(n-1)`; `den(0) ≠ 0`.
    pub fn series_div(&self, den: &Self, n: usize) -> Vec<Q> {
        series_div(&self.coeffs, &den.coeffs, n)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "z")?,
                1 => write!(f, "{a}*z")?,
                _ if a.is_one() => write!(f, "z^{k}")?,
                _ => write!(f, "{a}*z^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Product of two truncated series, keeping `n` coefficients.
pub fn series_mul(a: &[Q], b: &[Q], n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `num / den` as a truncated series; requires `den[0] ≠ 0`.
pub fn series_div(num: &[Q], den: &[Q], n: usize) -> Vec<Q> {
    assert!(
        den.first().is_some_and(|d| !d.is_zero()),
        "series division needs a non-zero constant term"
    );
    let d0 = den[0].clone();
    let mut out: Vec<Q> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = num.get(k).cloned().unwrap_or_else(Q::zero);
        for j in 1..=k.min(den.len().saturating_sub(1)) {
            acc -= &den[j] * &out[k - j];
        }
        out.push(acc / &d0);
    }
    out
}

/// Series of `(1 − z²)^(p/2)` through `z^(n-1)` (generalised binomial).
pub fn one_minus_z2_pow_half(p: i64, n: usize) -> Vec<Q> {
    let alpha = q(p, 2);
    let mut out = vec![Q::zero(); n];
    let mut c = Q::one();
    let mut k = 0usize;
    while 2 * k < n {
        out[2 * k] = c.clone();
        // next binomial coefficient of (−z²)^k
        c = c * (&alpha - qi(k as i64)) / qi(k as i64 + 1) * qi(-1);
        k += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_division() {
        // (z-1)(z+2) and (z-1)(z+3)
        let a = &Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[2, 1]);
        let b = &Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[3, 1]);
        assert_eq!(a.gcd(&b), Poly::from_ints(&[-1, 1]));
        let (quo, rem) = a.div_rem(&Poly::from_ints(&[-1, 1]));
        assert!(rem.is_zero());
        assert_eq!(quo, Poly::from_ints(&[2, 1]));
    }

    #[test]
    fn binomial_half_powers() {
        // (1−z²)^(1/2) = 1 − z²/2 − z⁴/8 − …
        let s = one_minus_z2_pow_half(1, 6);
        assert_eq!(s[0], qi(1));
        assert_eq!(s[2], q(-1, 2));
        assert_eq!(s[4], q(-1, 8));
        assert!(s[1].is_zero() && s[3].is_zero());
        // product with (1−z²)^(−1/2) is 1
        let inv = one_minus_z2_pow_half(-1, 12);
        let one = series_mul(&one_minus_z2_pow_half(1, 12), &inv, 12);
        assert_eq!(one[0], qi(1));
        assert!(one[1..].iter().all(Zero::is_zero));
    }

    #[test]
    fn series_division_geometric() {
        let s = series_div(&[qi(1)], &[qi(1), qi(-1)], 5);
        assert!(s.iter().all(|c| *c == qi(1)));
    }

    #[test]
    fn parse_and_convert() {
        assert_eq!(parse_q("-23/384"), Some(q(-23, 384)));
        assert_eq!(parse_q("7"), Some(qi(7)));
        assert_eq!(parse_q("1/0"), None);
        // correctly rounded: IEEE division of exact operands is the reference
        assert_eq!(q_to_f64(&q(1, 3)), 1.0 / 3.0);
        assert_eq!(q_to_f64(&q(-2, 7)), -2.0 / 7.0);
        assert_eq!(q_to_f64(&q(1, 10)), 0.1);
        assert_eq!(q_to_f64(&Q::new(factorial(200), factorial(199))), 200.0);
        let tiny = Q::new(BigInt::one(), BigInt::from(10).pow(300u32) * BigInt::from(3));
        assert_eq!(q_to_f64(&tiny), 1.0 / 3.0 * 1e-300);
    }
}
