//! Minimal coefficient-ring abstraction shared by the series code.
//!
//! Series arithmetic only ever needs ring operations plus exact division by
//! a nonzero integer (legal in any ℚ-algebra, which both coefficient types
//! are). Nothing else may be assumed of the ring — in particular no division
//! by arbitrary ring elements.

use std::fmt;

use num_bigint::BigInt;

use crate::poly::LambdaPoly;
use crate::rational::Rational;

pub trait CoeffRing: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    /// Tag identifying the ring in serialized output.
    const RING_NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;

    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }

    /// The canonical embedding of ℤ.
    fn from_bigint(n: &BigInt) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// Exact division by a nonzero integer.
    ///
    /// # Panics
    /// Panics if `n` is zero; callers only divide by factorials and other
    /// positive combinatorial quantities.
    fn div_exact_int(&self, n: &BigInt) -> Self;
}

impl CoeffRing for Rational {
    const RING_NAME: &'static str = "rational";

    fn zero() -> Self {
        Rational::zero()
    }

    fn one() -> Self {
        Rational::one()
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn from_bigint(n: &BigInt) -> Self {
        Rational::from_bigint(n.clone())
    }

    fn div_exact_int(&self, n: &BigInt) -> Self {
        assert!(!num_traits::Zero::is_zero(n), "division by zero integer");
        self / &Rational::from_bigint(n.clone())
    }
}

impl CoeffRing for LambdaPoly {
    const RING_NAME: &'static str = "lambda-poly";

    fn zero() -> Self {
        LambdaPoly::zero()
    }

    fn one() -> Self {
        LambdaPoly::one()
    }

    fn is_zero(&self) -> bool {
        LambdaPoly::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        LambdaPoly::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        LambdaPoly::sub(self, rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        LambdaPoly::mul(self, rhs)
    }

    fn neg(&self) -> Self {
        LambdaPoly::neg(self)
    }

    fn from_bigint(n: &BigInt) -> Self {
        LambdaPoly::constant(Rational::from_bigint(n.clone()))
    }

    fn div_exact_int(&self, n: &BigInt) -> Self {
        assert!(!num_traits::Zero::is_zero(n), "division by zero integer");
        let inv = Rational::from_bigint(n.clone())
            .recip()
            .expect("nonzero integer has a reciprocal");
        self.scale(&inv)
    }
}

/// The falling factorial `(x)_n = x(x−1)⋯(x−n+1)`, with `(x)_0 = 1`,
/// over any coefficient ring (a rational point or the indeterminate λ).
pub fn falling_factorial<R: CoeffRing>(x: &R, n: u32) -> R {
    let mut acc = R::one();
    for i in 0..n {
        acc = acc.mul(&x.sub(&R::from_int(i64::from(i))));
    }
    acc
}
