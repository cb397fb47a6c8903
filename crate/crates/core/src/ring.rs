//! Minimal algebraic traits shared by the dense matrix routines.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Commutative ring with owned arithmetic.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Integral domain with exact division.
pub trait Domain: Ring {
    /// `Some(q)` with `q * other == self`, or `None` if `other` does not divide `self`.
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

/// Euclidean domain used by the Smith normal form.
pub trait Euclidean: Domain {
    type Size: Ord;
    /// Euclidean size; zero elements are never queried.
    fn euclid_size(&self) -> Self::Size;
    fn div_rem_euclid(&self, other: &Self) -> (Self, Self);
    /// Unit `u` (with inverse) such that `u * self` is the canonical associate.
    fn normalizing_unit(&self) -> (Self, Self);
}

impl Domain for BigInt {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }
}

impl Euclidean for BigInt {
    type Size = BigUint;

    fn euclid_size(&self) -> BigUint {
        self.magnitude().clone()
    }

    fn div_rem_euclid(&self, other: &Self) -> (Self, Self) {
        let (q, r) = self.div_mod_floor(other);
        // keep |r| <= |other|/2 for faster descent
        let twice: BigInt = &r * BigInt::from(2);
        if twice.abs() > other.abs() {
            (q + 1, r - other)
        } else {
            (q, r)
        }
    }

    fn normalizing_unit(&self) -> (Self, Self) {
        if self.is_negative() {
            (-BigInt::one(), -BigInt::one())
        } else {
            (BigInt::one(), BigInt::one())
        }
    }
}

impl Domain for Rational {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| self / other)
    }
}

/// Field with multiplicative inverses.
pub trait Field: Domain {
    fn inv(&self) -> Option<Self>;
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}
