//! Truncated formal power series over an exact coefficient ring.
//!
//! A series keeps coefficients for t⁰ … t^N with N fixed at construction;
//! all arithmetic is exact and silently discards terms beyond the order.
//! The constructors build the generating functions this crate studies: the
//! degenerate logarithm and exponential, negative binomial powers
//! (1−t)^{−r}, and their combination −log_λ(1−t)/(1−t)^r whose t^n
//! coefficient is the degenerate hyperharmonic number H^{(r)}_{n,λ}.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::{binom_int, degen_falling_factorial, Rational};
use crate::ring::CoeffRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("derivative order {k} exceeds series order {order}")]
    DerivativeOrderExceeded { k: usize, order: usize },
    #[error("composition requires the inner series to have zero constant term")]
    NonzeroInnerConstant,
}

/// A formal power series truncated at a fixed order N: exactly N+1
/// coefficients, for t⁰ through t^N.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<R: CoeffRing> {
    order: usize,
    coeffs: Vec<R>,
}

impl<R: CoeffRing> std::fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TruncatedSeries(order={}, coeffs=[", self.order)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "])")
    }
}

impl<R: CoeffRing> TruncatedSeries<R> {
    /// Builds a series from its coefficient list (t⁰ first). The order is
    /// `coeffs.len() − 1`.
    ///
    /// # Panics
    /// Panics on an empty list; a series carries at least the t⁰ term.
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        TruncatedSeries {
            order: coeffs.len() - 1,
            coeffs,
        }
    }

    /// Builds a series by tabulating `f(n)` for n = 0 … order.
    pub fn tabulate(order: usize, f: impl FnMut(usize) -> R) -> Self {
        TruncatedSeries {
            order,
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::tabulate(order, |_| R::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::tabulate(order, |n| if n == 0 { R::one() } else { R::zero() })
    }

    /// The series t (truncates to 0 when order = 0).
    pub fn identity(order: usize) -> Self {
        Self::tabulate(order, |n| if n == 1 { R::one() } else { R::zero() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    fn check_order(&self, rhs: &Self) -> Result<(), SeriesError> {
        if self.order == rhs.order {
            Ok(())
        } else {
            Err(SeriesError::OrderMismatch {
                left: self.order,
                right: rhs.order,
            })
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_order(rhs)?;
        Ok(Self::tabulate(self.order, |n| {
            self.coeffs[n].add(&rhs.coeffs[n])
        }))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_order(rhs)?;
        Ok(Self::tabulate(self.order, |n| {
            self.coeffs[n].sub(&rhs.coeffs[n])
        }))
    }

    pub fn neg(&self) -> Self {
        Self::tabulate(self.order, |n| self.coeffs[n].neg())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::tabulate(self.order, |n| self.coeffs[n].mul(c))
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_order(rhs)?;
        let mut out = vec![R::zero(); self.order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(self.order + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Ok(TruncatedSeries {
            order: self.order,
            coeffs: out,
        })
    }

    /// k-th formal derivative. Coefficient n of the result is
    /// `a_{n+k}·(n+k)!/n!`; the order drops to `order − k`.
    pub fn derive(&self, k: usize) -> Result<Self, SeriesError> {
        if k > self.order {
            return Err(SeriesError::DerivativeOrderExceeded {
                k,
                order: self.order,
            });
        }
        let out = (0..=self.order - k)
            .map(|n| {
                let mut factor = BigInt::from(1);
                for i in 1..=k {
                    factor *= n + i;
                }
                self.coeffs[n + k].mul(&R::from_bigint(&factor))
            })
            .collect();
        Ok(TruncatedSeries {
            order: self.order - k,
            coeffs: out,
        })
    }

    /// Composition `self(inner(t))`, evaluated by Horner's rule over the
    /// truncated ring. Requires equal orders and a vanishing constant term
    /// of `inner` (otherwise the result would need infinitely many terms of
    /// `self`).
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroInnerConstant);
        }
        let mut acc = Self::zero(self.order);
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] = acc.coeffs[0].add(a);
        }
        Ok(acc)
    }
}

/// The negative binomial power `(1−t)^{−r} = Σ_n C(n+r−1, n) t^n`.
///
/// # Panics
/// Panics when `r = 0`; the exponent must be a positive integer.
pub fn geom_pow<R: CoeffRing>(r: u32, order: usize) -> TruncatedSeries<R> {
    assert!(r >= 1, "geom_pow requires a positive exponent");
    TruncatedSeries::tabulate(order, |n| {
        R::from_bigint(&binom_int(n as u64 + u64::from(r) - 1, n as u64))
    })
}

/// The degenerate logarithm `log_λ(1−t)`.
///
/// The t^k coefficient is `−(−1)^{k−1}(λ−1)(λ−2)⋯(λ−k+1)/k!`, the product
/// form of `(−1)^k λ^{k−1}(1)_{k,1/λ}/k!`. The product form is polynomial
/// in λ, so the same code serves the symbolic ring and any rational λ —
/// including λ = 0, where it reduces to the classical `log(1−t)`.
///
/// `lambda` is the image of λ in the coefficient ring: the indeterminate
/// for `LambdaPoly`, a value for `Rational`.
pub fn degen_log_series<R: CoeffRing>(lambda: &R, order: usize) -> TruncatedSeries<R> {
    signed_log_series(lambda, order, true)
}

/// The degenerate logarithm `log_λ(1+t) = ((1+t)^λ − 1)/λ`, with t^k
/// coefficient `(λ−1)(λ−2)⋯(λ−k+1)/k!`. This is the compositional inverse
/// of `e_λ(t) − 1`.
pub fn degen_log1p_series<R: CoeffRing>(lambda: &R, order: usize) -> TruncatedSeries<R> {
    signed_log_series(lambda, order, false)
}

fn signed_log_series<R: CoeffRing>(
    lambda: &R,
    order: usize,
    negate_argument: bool,
) -> TruncatedSeries<R> {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(R::zero());
    // Running product (λ−1)⋯(λ−k+1) and running factorial k!.
    let mut product = R::one();
    let mut factorial = BigInt::from(1);
    for k in 1..=order {
        if k > 1 {
            product = product.mul(&lambda.sub(&R::from_int(k as i64 - 1)));
            factorial *= k;
        }
        let mut c = product.div_exact_int(&factorial);
        // log_λ(1−t): sign −(−1)^{k−1} = (−1)^k.
        if negate_argument && k % 2 == 1 {
            c = c.neg();
        }
        coeffs.push(c);
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// The degenerate exponential `e_λ^x(t) = Σ_n (x)_{n,λ} tⁿ/n!`.
pub fn degen_exp_series(
    x: &Rational,
    lambda: &Rational,
    order: usize,
) -> TruncatedSeries<Rational> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut factorial = BigInt::from(1);
    for n in 0..=order {
        if n > 0 {
            factorial *= n;
        }
        let num = degen_falling_factorial(x, n as u32, lambda);
        coeffs.push(num.div_exact_int(&factorial));
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// The hyperharmonic generating function `−log_λ(1−t)/(1−t)^r`, whose t^n
/// coefficient is the degenerate hyperharmonic number `H^{(r)}_{n,λ}`.
///
/// # Panics
/// Panics when `r = 0` (see [`geom_pow`]).
pub fn degen_hyper_gf<R: CoeffRing>(lambda: &R, r: u32, order: usize) -> TruncatedSeries<R> {
    degen_log_series(lambda, order)
        .neg()
        .mul(&geom_pow(r, order))
        .expect("constructors share the requested order")
}

impl<R: CoeffRing + Serialize> Serialize for TruncatedSeries<R> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("TruncatedSeries", 3)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("ring", R::RING_NAME)?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct SeriesRepr<R> {
    order: usize,
    ring: String,
    coeffs: Vec<R>,
}

impl<'de, R: CoeffRing + Deserialize<'de>> Deserialize<'de> for TruncatedSeries<R> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SeriesRepr::<R>::deserialize(deserializer)?;
        if repr.ring != R::RING_NAME {
            return Err(D::Error::custom(format!(
                "expected coefficients in ring {:?}, found {:?}",
                R::RING_NAME,
                repr.ring
            )));
        }
        if repr.coeffs.len() != repr.order + 1 {
            return Err(D::Error::custom(format!(
                "series of order {} must carry {} coefficients, found {}",
                repr.order,
                repr.order + 1,
                repr.coeffs.len()
            )));
        }
        Ok(TruncatedSeries {
            order: repr.order,
            coeffs: repr.coeffs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LambdaPoly;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn series(cs: &[&str]) -> TruncatedSeries<Rational> {
        TruncatedSeries::from_coeffs(cs.iter().map(|c| rat(c)).collect())
    }

    #[test]
    fn product_of_binomials() {
        let a = series(&["1", "1", "0"]);
        let b = series(&["1", "-1", "0"]);
        assert_eq!(a.mul(&b).unwrap(), series(&["1", "0", "-1"]));
        assert_eq!(a.mul(&TruncatedSeries::one(2)).unwrap(), a);
    }

    #[test]
    fn geometric_series_telescopes() {
        let all_ones = TruncatedSeries::tabulate(5, |_| Rational::one());
        let one_minus_t = series(&["1", "-1", "0", "0", "0", "0"]);
        assert_eq!(
            all_ones.mul(&one_minus_t).unwrap(),
            TruncatedSeries::one(5)
        );
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = series(&["1", "2"]);
        let b = series(&["1", "2", "3"]);
        assert_eq!(
            a.mul(&b),
            Err(SeriesError::OrderMismatch { left: 1, right: 2 })
        );
        assert_eq!(
            a.add(&b),
            Err(SeriesError::OrderMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn derivatives_shift_and_scale() {
        let p = series(&["1", "1", "1"]);
        assert_eq!(p.derive(1).unwrap(), series(&["1", "2"]));
        assert_eq!(p.derive(0).unwrap(), p);

        let powers = TruncatedSeries::tabulate(4, |_| Rational::one());
        assert_eq!(powers.derive(2).unwrap(), series(&["2", "6", "12"]));

        assert_eq!(
            p.derive(5),
            Err(SeriesError::DerivativeOrderExceeded { k: 5, order: 2 })
        );
    }

    #[test]
    fn negative_binomial_powers() {
        let g1: TruncatedSeries<Rational> = geom_pow(1, 4);
        assert!(g1.coeffs().iter().all(Rational::is_one));

        let g2: TruncatedSeries<Rational> = geom_pow(2, 4);
        assert_eq!(g2.coeff(3), &rat("4"));

        let one_minus_t = series(&["1", "-1", "0", "0", "0"]);
        assert_eq!(g1.mul(&one_minus_t).unwrap(), TruncatedSeries::one(4));
    }

    #[test]
    fn degenerate_log_specializations() {
        // λ = 0: classical −log(1−t) has coefficients 1, 1/2, 1/3, …
        let classical = degen_log_series(&Rational::zero(), 5).neg();
        for k in 1..=5usize {
            assert_eq!(classical.coeff(k), &Rational::ratio(1, k as i64));
        }

        // symbolic: t² coefficient of −log_λ(1−t) is (1−λ)/2
        let symbolic = degen_log_series(&LambdaPoly::lambda(), 3).neg();
        assert_eq!(
            symbolic.coeff(2),
            &LambdaPoly::from_coeffs(vec![rat("1/2"), rat("-1/2")])
        );

        // λ = 1: log_1(1−t) = (1−t) − 1 = −t exactly
        let at_one = degen_log_series(&Rational::one(), 6);
        assert_eq!(at_one.coeff(1), &rat("-1"));
        for k in [0usize, 2, 3, 4, 5, 6] {
            assert!(at_one.coeff(k).is_zero(), "coefficient {k} should vanish");
        }
    }

    #[test]
    fn degenerate_exponential_specializations() {
        // λ = 0: classical exponential with coefficients x^n/n!
        let e = degen_exp_series(&rat("2"), &Rational::zero(), 4);
        assert_eq!(e.coeff(3), &rat("4/3")); // 2³/3! = 8/6

        // x = 1, λ = 1: e_1(t) = 1 + t exactly
        let linear = degen_exp_series(&Rational::one(), &Rational::one(), 5);
        assert_eq!(linear.coeff(0), &rat("1"));
        assert_eq!(linear.coeff(1), &rat("1"));
        for k in 2..=5usize {
            assert!(linear.coeff(k).is_zero());
        }

        // x = 2, λ = 1: t² coefficient (2)_{2,1}/2! = 2/2 = 1
        let e21 = degen_exp_series(&rat("2"), &Rational::one(), 2);
        assert_eq!(e21.coeff(2), &rat("1"));
    }

    #[test]
    fn composition_rules() {
        let inner = series(&["0", "1", "1"]); // t + t²
        let outer_t = TruncatedSeries::identity(2);
        assert_eq!(outer_t.compose(&inner).unwrap(), inner);

        let constant = series(&["7", "0", "0"]);
        let zero_inner = TruncatedSeries::zero(2);
        assert_eq!(constant.compose(&zero_inner).unwrap(), constant);

        let bad_inner = series(&["1", "1", "0"]);
        assert_eq!(
            constant.compose(&bad_inner),
            Err(SeriesError::NonzeroInnerConstant)
        );
    }

    #[test]
    fn degenerate_log_inverts_degenerate_exp() {
        let lambda = rat("1/2");
        let order = 16;
        let exp_minus_one = {
            let e = degen_exp_series(&Rational::one(), &lambda, order);
            let mut cs = e.coeffs().to_vec();
            cs[0] = Rational::zero();
            TruncatedSeries::from_coeffs(cs)
        };
        let log1p = degen_log1p_series(&lambda, order);
        assert_eq!(
            log1p.compose(&exp_minus_one).unwrap(),
            TruncatedSeries::identity(order)
        );
    }

    #[test]
    fn hyperharmonic_generating_function_low_coefficients() {
        let gf = degen_hyper_gf(&LambdaPoly::lambda(), 1, 3);
        assert!(gf.coeff(0).is_zero());
        assert_eq!(gf.coeff(1), &LambdaPoly::one());

        let gf2 = degen_hyper_gf(&LambdaPoly::lambda(), 2, 2);
        assert_eq!(
            gf2.coeff(2),
            &LambdaPoly::from_coeffs(vec![rat("5/2"), rat("-1/2")])
        );
    }

    #[test]
    fn json_round_trip_preserves_series() {
        let gf = degen_hyper_gf(&LambdaPoly::lambda(), 2, 3);
        let text = serde_json::to_string(&gf).unwrap();
        assert!(text.contains("\"ring\":\"lambda-poly\""));
        let back: TruncatedSeries<LambdaPoly> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, gf);

        // a rational-ring document does not deserialize as lambda-poly
        let rational_doc =
            serde_json::to_string(&degen_exp_series(&rat("1"), &rat("0"), 2)).unwrap();
        assert!(serde_json::from_str::<TruncatedSeries<LambdaPoly>>(&rational_doc).is_err());

        // wrong coefficient count is rejected
        let bad = r#"{"order":2,"ring":"rational","coeffs":["1","2"]}"#;
        assert!(serde_json::from_str::<TruncatedSeries<Rational>>(bad).is_err());
    }
}
