//! Arbitrary-precision rational numbers, the scalar type of the whole crate.
//!
//! Values are always kept in canonical form: denominator positive, numerator
//! and denominator coprime, zero stored as 0/1. Canonical form is what makes
//! structural equality coincide with mathematical equality, which every
//! identity check in this crate relies on.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Errors from rational arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {input:?} as a rational: {reason}")]
    Parse { input: String, reason: String },
}

/// An exact rational number `p/q` with `q > 0` and `gcd(|p|, q) = 1`.
///
/// Backed by [`num_rational::BigRational`], which normalizes on every
/// operation, so the canonical-form invariant holds by construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den`, normalizing. Fails when `den` is zero.
    pub fn new(num: BigInt, den: BigInt) -> Result<Self, ArithmeticError> {
        if den.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// The integer `n` as a rational.
    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    /// Shorthand for `p/q` from machine integers; panics when `q = 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// True when the denominator is 1.
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Division that reports a zero divisor instead of panicking.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithmeticError> {
        if rhs.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Multiplicative inverse; fails on zero.
    pub fn recip(&self) -> Result<Self, ArithmeticError> {
        if self.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    /// Integer power, with negative exponents taken on the reciprocal.
    /// `0^0 = 1`; a negative exponent on zero fails.
    pub fn pow_int(&self, exp: i32) -> Result<Self, ArithmeticError> {
        if exp < 0 && self.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        Ok(Rational(num_traits::Pow::pow(&self.0, exp as isize)))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_bigint(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

/// Panics on a zero divisor, like the primitive numeric types.
/// Use [`Rational::checked_div`] where the divisor is not known nonzero.
impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl<'a> Neg for &'a Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Renders `"p/q"`, with the `/q` omitted for integers: `-3/7`, `5`.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Parses `"p"` or `"p/q"` with an optional leading sign on `p`.
impl FromStr for Rational {
    type Err = ArithmeticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_err = |reason: &str| ArithmeticError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num = BigInt::from_str(num_str.trim())
            .map_err(|_| parse_err("numerator is not an integer"))?;
        let den = match den_str {
            Some(d) => {
                let d = BigInt::from_str(d.trim())
                    .map_err(|_| parse_err("denominator is not an integer"))?;
                if d.is_zero() {
                    return Err(parse_err("denominator is zero"));
                }
                if d.is_negative() {
                    return Err(parse_err("denominator must be positive"));
                }
                d
            }
            None => BigInt::one(),
        };
        Ok(Rational(BigRational::new(num, den)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

impl Rational {
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

/// Exact binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binom_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Degenerate falling factorial `(x)_{n,λ} = x(x-λ)(x-2λ)⋯(x-(n-1)λ)`,
/// with the empty product `(x)_{0,λ} = 1`. Defined for every `λ`, including 0,
/// where it reduces to the plain power `x^n`.
pub fn degen_falling_factorial(x: &Rational, n: u32, lambda: &Rational) -> Rational {
    let mut acc = Rational::one();
    let mut factor = x.clone();
    for _ in 0..n {
        acc = acc * &factor;
        factor = factor - lambda;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn addition_reduces_to_lowest_terms() {
        assert_eq!(rat("1/2") + rat("1/3"), rat("5/6"));
    }

    #[test]
    fn construction_normalizes() {
        let half = Rational::new(BigInt::from(2), BigInt::from(4)).unwrap();
        assert_eq!(half.numer(), &BigInt::from(1));
        assert_eq!(half.denom(), &BigInt::from(2));
        // sign moves to the numerator
        let neg = Rational::new(BigInt::from(3), BigInt::from(-6)).unwrap();
        assert_eq!(neg, rat("-1/2"));
    }

    #[test]
    fn zero_is_canonical() {
        let z = Rational::new(BigInt::from(0), BigInt::from(-7)).unwrap();
        assert_eq!(z.numer(), &BigInt::from(0));
        assert_eq!(z.denom(), &BigInt::from(1));
        assert_eq!(z, Rational::zero());
    }

    #[test]
    fn negative_integer_power() {
        // (3/5)^(-2) = 25/9
        assert_eq!(rat("3/5").pow_int(-2).unwrap(), rat("25/9"));
        assert_eq!(rat("2").pow_int(0).unwrap(), Rational::one());
        assert_eq!(Rational::zero().pow_int(0).unwrap(), Rational::one());
        assert_eq!(
            Rational::zero().pow_int(-1),
            Err(ArithmeticError::DivisionByZero)
        );
    }

    #[test]
    fn division_by_zero_is_an_error_value() {
        assert_eq!(
            rat("1").checked_div(&Rational::zero()),
            Err(ArithmeticError::DivisionByZero)
        );
        assert_eq!(Rational::new(BigInt::one(), BigInt::zero()),
            Err(ArithmeticError::DivisionByZero));
    }

    #[test]
    fn display_omits_unit_denominator() {
        assert_eq!(rat("-3/7").to_string(), "-3/7");
        assert_eq!(rat("5").to_string(), "5");
        assert_eq!(rat("10/2").to_string(), "5");
        assert_eq!(Rational::zero().to_string(), "0");
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("a/b".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["0", "5", "-3/7", "22/7", "-1"] {
            assert_eq!(rat(s).to_string(), s);
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binom_int(3, 1), BigInt::from(3));
        assert_eq!(binom_int(5, 7), BigInt::from(0));
        assert_eq!(binom_int(10, 5), BigInt::from(252));
        assert_eq!(binom_int(0, 0), BigInt::from(1));
    }

    #[test]
    fn degenerate_falling_factorials() {
        let one = Rational::one();
        assert_eq!(degen_falling_factorial(&one, 1, &rat("1/2")), rat("1"));
        // third factor 1 - 2*(1/2) = 0
        assert_eq!(degen_falling_factorial(&one, 3, &rat("1/2")), rat("0"));
        assert_eq!(degen_falling_factorial(&one, 2, &rat("1/3")), rat("2/3"));
        assert_eq!(degen_falling_factorial(&rat("5"), 0, &rat("9")), rat("1"));
        // λ = 0 degenerates to plain powers
        assert_eq!(
            degen_falling_factorial(&rat("3"), 4, &Rational::zero()),
            rat("81")
        );
    }
}
