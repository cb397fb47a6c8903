//! Rational functions in `t`: the fraction field `Q(t)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::ring::{Domain, Field};
use crate::Rational;

/// A reduced fraction `numerator / denominator` of Laurent polynomials.
///
/// The denominator has lowest exponent 0, coprime integer coefficients and a
/// positive leading coefficient, and shares no nonunit factor with the
/// numerator. Every element of `Q(t)` has exactly one such representation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Laurent,
    den: Laurent,
}

impl RationalFunction {
    pub fn new(num: Laurent, den: Laurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Laurent::gcd(&num, &den);
        let num = num.laurent_div_exact(&g).expect("gcd divides numerator");
        let den = den.laurent_div_exact(&g).expect("gcd divides denominator");
        let unit = den.associate_unit();
        Ok(RationalFunction { num: &num * &unit, den: &den * &unit })
    }

    pub fn from_laurent(p: Laurent) -> Self {
        RationalFunction { num: p, den: Laurent::one() }
    }

    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    pub fn denominator(&self) -> &Laurent {
        &self.den
    }

    /// Lies in `Q[t, t^-1]`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn eval(&self, point: &Rational) -> Result<Rational> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::invalid("evaluation at a pole"));
        }
        Ok(self.num.eval(point)? / d)
    }

    /// `f(t^-1)`.
    pub fn invert_variable(&self) -> Self {
        Self::new(self.num.invert_variable(), self.den.invert_variable()).unwrap()
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den).unwrap()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).unwrap()
    }

    /// Canonical representative modulo `Q[t, t^-1]`: a polynomial numerator of
    /// degree below the denominator's. Zero when `self` is a Laurent polynomial.
    pub fn fractional_part(&self) -> Self {
        if self.is_laurent() {
            return Self::zero();
        }
        // denominator has nonzero constant term, so t is invertible modulo it
        let (k, n0) = self.num.strip_t();
        let mut r = n0.poly_rem(&self.den);
        if k != 0 {
            let step = if k > 0 { Laurent::t() } else { Laurent::t_inverse_mod(&self.den) };
            for _ in 0..k.unsigned_abs() {
                r = (&r * &step).poly_rem(&self.den);
            }
        }
        Self::new(r, self.den.clone()).unwrap()
    }

    /// The Laurent-polynomial part `self - self.fractional_part()`.
    pub fn laurent_part(&self) -> Laurent {
        let diff = self - &self.fractional_part();
        debug_assert!(diff.is_laurent());
        diff.num
    }

    pub fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self::new(self.den.clone(), self.num.clone()).unwrap())
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction { num: Laurent::zero(), den: Laurent::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction { num: Laurent::one(), den: Laurent::one() }
    }
}

impl From<Laurent> for RationalFunction {
    fn from(p: Laurent) -> Self {
        Self::from_laurent(p)
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        Self::from_laurent(Laurent::constant(c))
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &'a RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(n, &self.den * &rhs.den).unwrap()
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &'a RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &'a RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &'a RationalFunction) -> RationalFunction {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction { (&self).$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Domain for RationalFunction {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self * &i)
    }
}

impl Field for RationalFunction {
    fn inv(&self) -> Option<Self> {
        RationalFunction::inv(self)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    fn p(low: i64, c: &[i64]) -> Laurent {
        Laurent::from_ints(low, c)
    }

    fn rf(n: Laurent, d: Laurent) -> RationalFunction {
        RationalFunction::new(n, d).unwrap()
    }

    #[test]
    fn reduction_is_canonical() {
        // (t^2 - 1) / (2t^2 - 2t) = (t + 1) / (2t)
        let a = rf(p(0, &[-1, 0, 1]), p(1, &[-2, 2]));
        let b = rf(p(-1, &[1, 1]).scale(&rat(1, 2)), Laurent::one());
        assert_eq!(a, b);
        assert!(a.is_laurent());
        let c = rf(p(0, &[1]), p(0, &[-4, -2]));
        assert_eq!(c.denominator(), &p(0, &[2, 1]));
        assert_eq!(c.numerator(), &p(0, &[-1]).scale(&rat(1, 2)));
        assert!(RationalFunction::new(Laurent::one(), Laurent::zero()).is_err());
    }

    #[test]
    fn field_arithmetic() {
        let a = rf(p(0, &[1]), p(0, &[2, 1]));
        let b = rf(p(0, &[1]), p(0, &[-1, 1]));
        let s = &a + &b;
        assert_eq!(s, rf(p(0, &[1, 2]), &p(0, &[2, 1]) * &p(0, &[-1, 1])));
        assert_eq!(&(&s - &b), &a);
        assert_eq!(&(&a / &a), &RationalFunction::one());
        assert_eq!(a.eval(&int(1)).unwrap(), rat(1, 3));
        assert!(b.eval(&int(1)).is_err());
    }

    #[test]
    fn fractional_part_mod_laurent() {
        // t^-1 / (t + 2): t^-1 = 1/2 - t/2 modulo (t + 2)... check by difference
        let f = rf(p(-1, &[1]), p(0, &[2, 1]));
        let fr = f.fractional_part();
        assert!(fr.numerator().degree() < fr.denominator().degree());
        assert!((&f - &fr).is_laurent());
        let g = rf(p(0, &[0, 0, 0, 1]), p(0, &[1, 1]));
        let gr = g.fractional_part();
        assert!((&g - &gr).is_laurent());
        assert_eq!(gr, rf(p(0, &[-1]), p(0, &[1, 1])));
        assert!(RationalFunction::from_laurent(p(-3, &[1, 2])).fractional_part().is_zero());
    }

    #[test]
    fn variable_inversion() {
        let f = rf(p(0, &[1]), p(0, &[2, 1]));
        // 1/(t^-1 + 2) = t / (1 + 2t)
        assert_eq!(f.invert_variable(), rf(p(1, &[1]), p(0, &[1, 2])));
    }

    #[test]
    fn derivative_of_reciprocal() {
        let f = rf(p(0, &[1]), p(0, &[2, 1]));
        assert_eq!(f.derivative().eval(&int(1)).unwrap(), rat(-1, 9));
    }
}
