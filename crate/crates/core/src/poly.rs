//! Dense polynomials in the degeneracy parameter λ with rational coefficients.
//!
//! Every λ-dependent number family in this crate is held symbolically as a
//! [`LambdaPoly`], so identity checks are exact polynomial comparisons rather
//! than comparisons at sampled points. Degrees stay small (a few hundred at
//! most), which is why the representation is a dense coefficient vector.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::{binom_int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("cannot divide by λ: constant term {constant} is nonzero")]
    NonzeroConstantTerm { constant: Rational },
}

/// A polynomial in λ, stored dense with the constant term first.
///
/// Invariant: the coefficient vector never ends in a zero, and the zero
/// polynomial is the empty vector. Together with [`Rational`]'s canonical
/// form this makes `==` decide mathematical equality in Q[λ].
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LambdaPoly {
    coeffs: Vec<Rational>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        LambdaPoly::constant(Rational::one())
    }

    /// The monomial λ.
    pub fn lambda() -> Self {
        LambdaPoly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            LambdaPoly::zero()
        } else {
            LambdaPoly { coeffs: vec![c] }
        }
    }

    /// Builds from coefficients (constant term first), trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = LambdaPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Rational::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of λ^i (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        LambdaPoly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return LambdaPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        LambdaPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LambdaPoly::zero();
        }
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        self.scale(&Rational::from_bigint(c.clone()))
    }

    /// Multiplies by λ (shifts every coefficient up one power).
    pub fn mul_by_lambda(&self) -> Self {
        if self.is_zero() {
            return LambdaPoly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        LambdaPoly { coeffs }
    }

    /// Exact evaluation at a rational point, by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `self = quotient·divisor + remainder` and
    /// `deg remainder < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        let Some(d_deg) = divisor.degree() else {
            return Err(PolyError::DivisionByZeroPoly);
        };
        let lead = divisor.coeffs[d_deg].clone();
        let mut rem = self.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(d_deg)];
        while let Some(r_deg) = rem.degree() {
            if r_deg < d_deg {
                break;
            }
            let factor = &rem.coeffs[r_deg] / &lead;
            let shift = r_deg - d_deg;
            quot[shift] = factor.clone();
            let mut next = rem.coeffs;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                next[shift + j] = &next[shift + j] - &(&factor * b);
            }
            rem = LambdaPoly::from_coeffs(next);
        }
        Ok((LambdaPoly::from_coeffs(quot), rem))
    }

    /// Divides by λ exactly. Well defined only when the constant term
    /// vanishes; a nonzero constant term is reported as an error carrying
    /// the offending coefficient.
    pub fn divide_by_lambda(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Ok(LambdaPoly::zero());
        }
        let constant = self.coeff(0);
        if !constant.is_zero() {
            return Err(PolyError::NonzeroConstantTerm { constant });
        }
        Ok(LambdaPoly {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }
}

/// Compact bracketed coefficient list, constant term first: `[3/2,-1/2]`.
impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Serializes as the JSON array of coefficient strings, constant term first.
impl Serialize for LambdaPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter())
    }
}

impl<'de> Deserialize<'de> for LambdaPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let coeffs = Vec::<Rational>::deserialize(deserializer)?;
        Ok(LambdaPoly::from_coeffs(coeffs))
    }
}

/// The generalized binomial `C(λ - r, k) = (λ-r)(λ-r-1)⋯(λ-r-k+1)/k!`
/// as a polynomial in λ: degree `k`, leading coefficient `1/k!`.
///
/// The product of linear factors is formed first and divided by `k!`
/// once at the end, so intermediate coefficients stay integral.
pub fn binom_poly(shift: i64, k: u32) -> LambdaPoly {
    let mut p = LambdaPoly::one();
    let mut factorial = BigInt::from(1);
    for i in 0..k as i64 {
        let root = Rational::from_int(shift + i);
        p = p.mul(&LambdaPoly::from_coeffs(vec![
            -root,
            Rational::one(),
        ]));
        factorial *= i + 1;
    }
    p.scale(&Rational::new(BigInt::from(1), factorial).expect("factorial is nonzero"))
}

/// Signed-Stirling expansion oracle helper: `C(n, k)` as a [`Rational`].
pub fn binom_rat(n: u64, k: u64) -> Rational {
    Rational::from_bigint(binom_int(n, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn poly(cs: &[&str]) -> LambdaPoly {
        LambdaPoly::from_coeffs(cs.iter().map(|c| rat(c)).collect())
    }

    #[test]
    fn difference_of_squares() {
        let p = poly(&["1", "1"]); // 1 + λ
        let q = poly(&["1", "-1"]); // 1 - λ
        assert_eq!(p.mul(&q), poly(&["1", "0", "-1"]));
    }

    #[test]
    fn eval_at_zero_reads_constant_term() {
        let p = poly(&["3", "-1"]); // 3 - λ
        assert_eq!(p.eval(&Rational::zero()), rat("3"));
        assert_eq!(p.eval(&rat("1/2")), rat("5/2"));
    }

    #[test]
    fn exact_division_with_remainder() {
        // (λ² - 1) / (λ - 1) = λ + 1 remainder 0
        let num = poly(&["-1", "0", "1"]);
        let den = poly(&["-1", "1"]);
        let (q, r) = num.div_rem(&den).unwrap();
        assert_eq!(q, poly(&["1", "1"]));
        assert!(r.is_zero());

        // non-exact case keeps deg rem < deg divisor
        let (q, r) = poly(&["1", "0", "1"]).div_rem(&den).unwrap();
        assert_eq!(q, poly(&["1", "1"]));
        assert_eq!(r, poly(&["2"]));

        assert_eq!(
            num.div_rem(&LambdaPoly::zero()),
            Err(PolyError::DivisionByZeroPoly)
        );
    }

    #[test]
    fn divide_by_lambda_shifts_coefficients() {
        // λ² + 2λ → λ + 2
        assert_eq!(
            poly(&["0", "2", "1"]).divide_by_lambda().unwrap(),
            poly(&["2", "1"])
        );
        assert_eq!(
            LambdaPoly::zero().divide_by_lambda().unwrap(),
            LambdaPoly::zero()
        );
        assert_eq!(
            poly(&["1", "1"]).divide_by_lambda(),
            Err(PolyError::NonzeroConstantTerm { constant: rat("1") })
        );
    }

    #[test]
    fn generalized_binomial_polynomials() {
        // C(λ-1, 1) = λ - 1
        assert_eq!(binom_poly(1, 1), poly(&["-1", "1"]));
        // C(λ-1, 0) = 1
        assert_eq!(binom_poly(1, 0), LambdaPoly::one());
        // C(λ-1, 2) = (λ-1)(λ-2)/2 = (λ² - 3λ + 2)/2
        assert_eq!(binom_poly(1, 2), poly(&["1", "-3/2", "1/2"]));
        // leading coefficient 1/k!
        let p = binom_poly(3, 4);
        assert_eq!(p.degree(), Some(4));
        assert_eq!(p.coeff(4), rat("1/24"));
        // λ = r is a root for k ≥ 1
        assert_eq!(binom_poly(3, 4).eval(&rat("3")), Rational::zero());
    }

    #[test]
    fn zero_polynomial_has_empty_coefficients() {
        let z = poly(&["1"]).sub(&poly(&["1"]));
        assert!(z.is_zero());
        assert!(z.coeffs().is_empty());
        assert_eq!(z.degree(), None);
        assert_eq!(z.to_string(), "[]");
    }

    #[test]
    fn display_is_compact_bracket_list() {
        assert_eq!(poly(&["3/2", "-1/2"]).to_string(), "[3/2,-1/2]");
    }
}
