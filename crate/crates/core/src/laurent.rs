//! Laurent polynomials in one variable `t` with rational coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{Domain, Euclidean};
use crate::{int, Rational};

/// Degree of a polynomial; the zero polynomial has degree minus infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// An element of `Q[t, t^-1]`.
///
/// Stored densely as `coeffs[i]` = coefficient of `t^(low + i)`. The first
/// and last stored coefficients are nonzero; the zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent {
    low: i64,
    coeffs: Vec<Rational>,
}

impl Laurent {
    fn from_raw(low: i64, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Laurent { low: 0, coeffs: Vec::new() };
        }
        coeffs.drain(..lead_zeros);
        Laurent { low: low + lead_zeros as i64, coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_raw(0, vec![c])
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        Self::from_raw(exp, vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `c*t + d`, a common shorthand in tests and presentations.
    pub fn linear(c: Rational, d: Rational) -> Self {
        Self::from_raw(0, vec![d, c])
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let terms: Vec<(i64, Rational)> = terms.into_iter().collect();
        let Some(low) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero();
        };
        let high = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::from_raw(low, coeffs)
    }

    /// Integer coefficients in ascending order starting at `t^low`.
    pub fn from_ints(low: i64, coeffs: &[i64]) -> Self {
        Self::from_raw(low, coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::MinusInfinity
        } else {
            Degree::Finite(self.low + self.coeffs.len() as i64 - 1)
        }
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn low_degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::MinusInfinity
        } else {
            Degree::Finite(self.low)
        }
    }

    /// `degree - low_degree`: the Euclidean size in `Q[t, t^-1]`.
    pub fn span(&self) -> Option<u64> {
        (!self.coeffs.is_empty()).then(|| self.coeffs.len() as u64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        if exp < self.low {
            return Rational::zero();
        }
        self.coeffs
            .get((exp - self.low) as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn trailing_coeff(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty() || (self.low == 0 && self.coeffs.len() == 1)
    }

    /// Units of `Q[t, t^-1]` are the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// No negative exponents.
    pub fn is_polynomial(&self) -> bool {
        self.coeffs.is_empty() || self.low >= 0
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Laurent { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// `f(t^-1)`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Laurent { low: -self.degree().finite().unwrap(), coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|(e, _)| *e != 0)
                .map(|(e, c)| (e - 1, c * int(e))),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation; the point must be nonzero when negative exponents occur.
    pub fn eval(&self, point: &Rational) -> Result<Rational> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        if point.is_zero() {
            if self.low < 0 {
                return Err(Error::invalid("evaluation at t = 0 with negative exponents"));
            }
            return Ok(self.coeff(0));
        }
        // Horner on the dense coefficients, then scale by point^low
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * point + c;
        }
        Ok(acc * pow_rational(point, self.low))
    }

    /// Splits `self = t^k * f` with `f` a polynomial having nonzero constant term.
    pub fn strip_t(&self) -> (i64, Laurent) {
        if self.is_zero() {
            return (0, Self::zero());
        }
        (self.low, Laurent { low: 0, coeffs: self.coeffs.clone() })
    }

    /// Least common denominator of the coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Gcd of the numerators after clearing denominators (the integer content).
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let l = self.denominator_lcm();
        let g = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .fold(BigInt::zero(), |acc, x| acc.gcd(&x));
        Rational::new(g, l)
    }

    /// Representative up to the units `±t^k`: lowest exponent 0 and positive leading coefficient.
    pub fn unit_normalized(&self) -> Self {
        let (_, f) = self.strip_t();
        match f.leading_coeff() {
            Some(c) if c.is_negative() => -f,
            _ => f,
        }
    }

    /// Representative up to all units `c*t^k` of `Q[t, t^-1]`: additionally
    /// scaled to coprime integer coefficients.
    pub fn associate_normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let f = self.unit_normalized();
        let c = f.content();
        f.scale(&c.recip())
    }

    /// Unit `u = c*t^k` with `u * self == self.associate_normalized()`.
    pub fn associate_unit(&self) -> Laurent {
        if self.is_zero() {
            return Self::one();
        }
        let f = self.unit_normalized();
        let sign = if self.leading_coeff().unwrap().is_negative() { -1 } else { 1 };
        Laurent::monomial(f.content().recip() * int(sign), -self.low)
    }

    /// Polynomial division in `Q[t]`: both operands must be polynomials.
    pub fn poly_div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        assert!(self.is_polynomial() && divisor.is_polynomial());
        let d_deg = divisor.degree().finite().unwrap();
        let lead_inv = divisor.leading_coeff().unwrap().recip();
        let mut rem = self.to_dense_from_zero();
        let mut quot = Vec::new();
        let n = rem.len() as i64;
        if n > d_deg {
            quot = vec![Rational::zero(); (n - d_deg) as usize];
            for k in (0..quot.len()).rev() {
                let c = &rem[k + d_deg as usize] * &lead_inv;
                if c.is_zero() {
                    continue;
                }
                for (e, dc) in divisor.terms() {
                    rem[k + e as usize] -= &c * dc;
                }
                quot[k] = c;
            }
        }
        (Self::from_raw(0, quot), Self::from_raw(0, rem))
    }

    fn to_dense_from_zero(&self) -> Vec<Rational> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut v = vec![Rational::zero(); self.low as usize];
        v.extend(self.coeffs.iter().cloned());
        v
    }

    /// Remainder of polynomial division in `Q[t]`.
    pub fn poly_rem(&self, divisor: &Self) -> Self {
        self.poly_div_rem(divisor).1
    }

    /// Extended Euclid in `Q[t]`: returns `(g, u, v)` with `u*a + v*b = g`,
    /// `g` monic (or zero when both inputs vanish).
    pub fn poly_ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.poly_div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if let Some(lc) = r0.leading_coeff().cloned() {
            let inv = lc.recip();
            (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
        } else {
            (r0, s0, t0)
        }
    }

    /// Gcd in `Q[t, t^-1]`, normalized to lowest exponent 0, coprime integer
    /// coefficients and positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (_, fa) = a.strip_t();
        let (_, fb) = b.strip_t();
        let to_ints = |p: &Laurent| -> Vec<BigInt> {
            let q = p.associate_normalized();
            (0..=q.degree().finite().unwrap_or(-1)).map(|e| q.coeff(e).to_integer()).collect()
        };
        let g = primitive_prs_gcd(to_ints(&fa), to_ints(&fb));
        Laurent::from_terms(g.into_iter().enumerate().map(|(e, c)| (e as i64, Rational::from_integer(c))))
            .associate_normalized()
    }

    /// Inverse of `t` modulo a polynomial `c` with `c(0) != 0`, reduced mod `c`.
    pub(crate) fn t_inverse_mod(c: &Self) -> Self {
        // c = t q + c(0), so t (-q / c(0)) = 1 mod c
        let c0 = c.coeff(0);
        let (q, _) = c.poly_div_rem(&Laurent::t());
        q.scale(&(-c0.recip())).poly_rem(c)
    }

    /// Inverse of `1 - t` modulo a polynomial `c` with `c(1) != 0`, reduced mod `c`.
    pub(crate) fn one_minus_t_inverse_mod(c: &Self) -> Self {
        // c = (t - 1) h + c(1), so (1 - t) (h / c(1)) = 1 mod c
        let c1 = c.eval(&Rational::one()).expect("polynomial");
        let (h, _) = c.poly_div_rem(&Laurent::from_ints(0, &[-1, 1]));
        h.scale(&c1.recip()).poly_rem(c)
    }

    /// Divides in `Q[t, t^-1]` when the division is exact.
    pub fn laurent_div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (a, fa) = self.strip_t();
        let (b, fb) = divisor.strip_t();
        let (q, r) = fa.poly_div_rem(&fb);
        r.is_zero().then(|| q.shift(a - b))
    }

    /// Does `divisor` divide `self` in `Q[t, t^-1]`?
    pub fn divisible_by(&self, divisor: &Self) -> bool {
        if divisor.is_zero() {
            return self.is_zero();
        }
        self.laurent_div_exact(divisor).is_some()
    }
}

/// Gcd in `Z[t]` up to sign by the primitive pseudo-remainder sequence;
/// coefficients are listed from the constant term up.
fn primitive_prs_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    fn trim(p: &mut Vec<BigInt>) {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }
    fn primitive(p: &mut [BigInt]) {
        let g = p.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() && !g.is_one() {
            p.iter_mut().for_each(|x| *x /= &g);
        }
    }
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        // a <- prem(a, b)
        let lb = b.last().unwrap().clone();
        while a.len() >= b.len() {
            let la = a.last().unwrap().clone();
            let shift = a.len() - b.len();
            a.iter_mut().for_each(|x| *x *= &lb);
            for (i, bi) in b.iter().enumerate() {
                a[i + shift] -= &la * bi;
            }
            a.pop();
            trim(&mut a);
            primitive(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn pow_rational(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl Zero for Laurent {
    fn zero() -> Self {
        Laurent { low: 0, coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Laurent {
    fn one() -> Self {
        Laurent { low: 0, coeffs: vec![Rational::one()] }
    }
}

impl From<Rational> for Laurent {
    fn from(c: Rational) -> Self {
        Laurent::constant(c)
    }
}

impl From<i64> for Laurent {
    fn from(c: i64) -> Self {
        Laurent::constant(int(c))
    }
}

impl<'a> Add<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn add(self, rhs: &'a Laurent) -> Laurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.degree().max(rhs.degree()).finite().unwrap();
        let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
        for (e, c) in self.terms().chain(rhs.terms()) {
            coeffs[(e - low) as usize] += c;
        }
        Laurent::from_raw(low, coeffs)
    }
}

impl<'a> Sub<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &'a Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &'a Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Laurent::from_raw(self.low + rhs.low, coeffs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Laurent> for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent { (&self).$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        *self = &*self + rhs;
    }
}

impl Domain for Laurent {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        self.laurent_div_exact(other)
    }
}

impl Euclidean for Laurent {
    type Size = u64;

    fn euclid_size(&self) -> u64 {
        self.span().unwrap_or(0)
    }

    fn div_rem_euclid(&self, other: &Self) -> (Self, Self) {
        // t is a unit, so divide the t-free parts and reattach the powers
        let (a, fa) = self.strip_t();
        let (b, fb) = other.strip_t();
        let (q, r) = fa.poly_div_rem(&fb);
        (q.shift(a - b), r.shift(a))
    }

    fn normalizing_unit(&self) -> (Self, Self) {
        let u = self.associate_unit();
        let (c, e) = {
            let (e, f) = u.strip_t();
            (f.coeff(0), e)
        };
        (u, Laurent::monomial(c.recip(), -e))
    }
}

impl fmt::Display for Laurent {
    /// Descending powers, e.g. `2t^2 - 5t + 2` or `(1/2)t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<(i64, &Rational)> = self.terms().collect();
        for (k, (e, c)) in terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mag_str = if mag.is_integer() { mag.to_string() } else { format!("({mag})") };
            match *e {
                0 => write!(f, "{mag_str}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag_str}")?;
                    }
                    if *e == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn poly(low: i64, c: &[i64]) -> Laurent {
        Laurent::from_ints(low, c)
    }

    #[test]
    fn zero_has_minus_infinity_degree() {
        assert_eq!(Laurent::zero().degree(), Degree::MinusInfinity);
        assert!(Degree::MinusInfinity < Degree::Finite(i64::MIN));
        assert_eq!(poly(-2, &[1, 0, 3]).degree(), Degree::Finite(0));
        assert_eq!(poly(-2, &[1, 0, 3]).low_degree(), Degree::Finite(-2));
    }

    #[test]
    fn substitute_examples() {
        // -2t^2 + 5t - 2 at 1
        assert_eq!(poly(0, &[-2, 5, -2]).eval(&int(1)).unwrap(), int(1));
        assert_eq!(poly(-1, &[1]).eval(&int(2)).unwrap(), rat(1, 2));
        assert_eq!(poly(0, &[-2, 1]).eval(&int(-1)).unwrap(), int(-3));
        assert!(poly(-1, &[1]).eval(&int(0)).is_err());
        assert_eq!(poly(0, &[4, 1]).eval(&int(0)).unwrap(), int(4));
    }

    #[test]
    fn gcd_examples() {
        let t_minus_1 = poly(0, &[-1, 1]);
        assert_eq!(Laurent::gcd(&t_minus_1, &Laurent::zero()), t_minus_1);
        let delta = &poly(0, &[-1, 2]) * &poly(0, &[2, -1]);
        assert_eq!(Laurent::gcd(&delta, &poly(0, &[-1, 2])), poly(0, &[-1, 2]));
        assert_eq!(Laurent::gcd(&poly(2, &[1]), &poly(5, &[1])), Laurent::one());
        assert_eq!(Laurent::gcd(&Laurent::zero(), &Laurent::zero()), Laurent::zero());
        // sign convention: positive leading coefficient
        assert_eq!(Laurent::gcd(&poly(0, &[1, -1]), &poly(0, &[-1, 1])), t_minus_1);
    }

    #[test]
    fn poly_division() {
        let a = poly(0, &[-2, 5, -2]);
        let b = poly(0, &[-1, 2]);
        let (q, r) = a.poly_div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, poly(0, &[2, -1]));
        let (q, r) = poly(0, &[1, 0, 1]).poly_div_rem(&poly(0, &[1, 1]));
        assert_eq!(&(&q * &poly(0, &[1, 1])) + &r, poly(0, &[1, 0, 1]));
        assert_eq!(r, poly(0, &[2]));
    }

    #[test]
    fn ext_gcd_identity() {
        let a = poly(0, &[0, 0, 1]);
        let b = poly(0, &[2, 1]);
        let (g, u, v) = Laurent::poly_ext_gcd(&a, &b);
        assert_eq!(g, Laurent::one());
        assert_eq!(&(&u * &a) + &(&v * &b), Laurent::one());
    }

    #[test]
    fn normalization() {
        let f = poly(-3, &[-2, 5, -2]).scale(&rat(3, 2));
        let u = f.unit_normalized();
        assert_eq!(u, poly(0, &[6, -15, 6]).scale(&rat(1, 2)));
        assert_eq!(u.unit_normalized(), u);
        assert_eq!(f.associate_normalized(), poly(0, &[2, -5, 2]));
        assert_eq!(&f.associate_unit() * &f, f.associate_normalized());
        let (unit, inv) = f.normalizing_unit();
        assert_eq!(&unit * &inv, Laurent::one());
    }

    #[test]
    fn inverted_variable_and_display() {
        let f = poly(-1, &[3, 0, 1]);
        assert_eq!(f.invert_variable(), poly(-1, &[1, 0, 3]));
        assert_eq!(poly(0, &[-2, 5, -2]).to_string(), "-2t^2 + 5t - 2");
        assert_eq!(Laurent::monomial(rat(1, 2), -1).to_string(), "(1/2)t^-1");
        assert_eq!(Laurent::zero().to_string(), "0");
    }

    #[test]
    fn euclid_in_laurent_ring() {
        let a = poly(-2, &[1, 3, 0, 1]);
        let b = poly(3, &[1, 1]);
        let (q, r) = a.div_rem_euclid(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.span().unwrap_or(0) < b.span().unwrap());
    }
}
