//! Truncated degenerate Hurwitz zeta sums and the finite
//! summation-rearrangement report tying them to the hyperharmonic families.
//!
//! For integer exponents m ≥ 2 and rational δ, λ every partial sum lives in
//! ℚ, so truncations are computed exactly. No convergence claim is made
//! anywhere: callers receive the magnitude of the last included term as a
//! tail indicator and judge truncation quality themselves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::numbers::{self, DegenHyperRoute, NumbersError};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("exponent must be an integer >= 2, got {0}")]
    ExponentTooSmall(u32),
    #[error("delta must be positive, got {0}")]
    NonpositiveDelta(Rational),
    #[error("at least one term is required")]
    NoTerms,
    #[error("at least one decimal digit is required")]
    NoDigits,
}

/// A validated request for a truncated zeta evaluation.
///
/// `terms` counts the summands included: the sum with offset δ runs over
/// n = 0 … terms−1, the δ = 1 specialization over n = 1 … terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaQuery {
    m: u32,
    delta: Rational,
    lambda: Rational,
    terms: u64,
    digits: u32,
}

impl ZetaQuery {
    pub fn new(
        m: u32,
        delta: Rational,
        lambda: Rational,
        terms: u64,
        digits: u32,
    ) -> Result<Self, ZetaError> {
        if m < 2 {
            return Err(ZetaError::ExponentTooSmall(m));
        }
        if delta.is_zero() || delta.is_negative() {
            return Err(ZetaError::NonpositiveDelta(delta));
        }
        if terms == 0 {
            return Err(ZetaError::NoTerms);
        }
        if digits == 0 {
            return Err(ZetaError::NoDigits);
        }
        Ok(ZetaQuery {
            m,
            delta,
            lambda,
            terms,
            digits,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn terms(&self) -> u64 {
        self.terms
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }
}

/// An exact partial sum together with the magnitude of the last summand it
/// includes (a tail indicator, not an error bound).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialSum {
    pub value: Rational,
    pub last_term: Rational,
}

/// The truncated degenerate Hurwitz zeta sum
/// Σ_{n=0}^{terms−1} (1)_{n,λ}/(n+δ)^m.
pub fn zeta_partial(query: &ZetaQuery) -> PartialSum {
    let mut sum = Rational::zero();
    let mut last = Rational::zero();
    // (1)_{n,λ} grown one factor at a time: (1)_{n+1,λ} = (1)_{n,λ}·(1−nλ).
    let mut product = Rational::one();
    for n in 0..query.terms {
        if n > 0 {
            let factor = Rational::one() - &query.lambda * &Rational::from_int(n as i64 - 1);
            product = product * factor;
        }
        let base = &query.delta + &Rational::from_int(n as i64);
        let denom = base
            .pow_int(query.m as i32)
            .expect("positive base has all integer powers");
        last = product.clone() / denom;
        sum = sum + &last;
    }
    PartialSum {
        value: sum,
        last_term: last.abs(),
    }
}

/// The δ = 1 specialization Σ_{n=1}^{terms} (1)_{n−1,λ}/n^m.
///
/// # Panics
/// Panics when `m < 2` or `terms = 0`; build a [`ZetaQuery`] to surface
/// those as errors instead.
pub fn zeta_degen_partial(m: u32, lambda: &Rational, terms: u64) -> PartialSum {
    assert!(m >= 2, "exponent must be at least 2");
    assert!(terms >= 1, "at least one term is required");
    let mut sum = Rational::zero();
    let mut last = Rational::zero();
    let mut product = Rational::one(); // (1)_{n−1,λ}
    for n in 1..=terms {
        if n > 1 {
            let factor = Rational::one() - lambda * &Rational::from_int(n as i64 - 2);
            product = product * factor;
        }
        let denom = Rational::from_int(n as i64)
            .pow_int(m as i32)
            .expect("positive base has all integer powers");
        last = product.clone() / denom;
        sum = sum + &last;
    }
    PartialSum {
        value: sum,
        last_term: last.abs(),
    }
}

/// Both sides of the finite summation-order swap for the weighted
/// hyperharmonic sums, plus the zeta-weighted form of the same quantity.
///
/// With t_k = (1)_{k−1,λ}/k^m and h_n = H_{n,λ}^{(s)} evaluated at λ:
/// - `direct_sum`   A = Σ_{n≤N} H_{n,λ}^{(r)}·(1)_{n−1,λ}/n^m,
/// - `swapped_sum`  B = Σ_{n≤N} H_{n,λ}^{(r−1)}·Σ_{k=n}^{N} t_k,
/// - `zeta_form`    C = ζ_λ(m)|_N·Σ_{n≤N} H_{n,λ}^{(r−1)}
///                      − Σ_{n≤N} H_{n,λ}^{(r−1)}·Σ_{l<n} t_l.
///
/// A = B is an exact theorem about finite sums (`swap_exact` records it);
/// `residual` reports A − C for the same truncation with no claim attached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RearrangementReport {
    pub direct_sum: Rational,
    pub swapped_sum: Rational,
    pub zeta_form: Rational,
    pub swap_exact: bool,
    pub residual: Rational,
}

/// Computes [`RearrangementReport`] for order r ≥ 2, exponent m ≥ 2, a
/// rational λ, and truncation N = `terms`.
///
/// # Panics
/// Panics when `r < 2`, `m < 2`, or `terms = 0`.
pub fn rearrangement_report(
    r: u32,
    m: u32,
    lambda: &Rational,
    terms: u32,
) -> Result<RearrangementReport, NumbersError> {
    assert!(r >= 2, "the rearrangement needs order r >= 2");
    assert!(m >= 2, "exponent must be at least 2");
    assert!(terms >= 1, "at least one term is required");
    let n_max = terms as usize;

    // t_k = (1)_{k−1,λ}/k^m for k = 1 … N, plus prefix and suffix sums.
    let mut t = Vec::with_capacity(n_max + 1);
    t.push(Rational::zero()); // unused slot so t[k] is the k-th term
    let mut product = Rational::one();
    for k in 1..=n_max {
        if k > 1 {
            let factor = Rational::one() - lambda * &Rational::from_int(k as i64 - 2);
            product = product * factor;
        }
        let denom = Rational::from_int(k as i64)
            .pow_int(m as i32)
            .expect("positive base has all integer powers");
        t.push(product.clone() / denom);
    }
    let mut prefix = vec![Rational::zero(); n_max + 1]; // prefix[n] = Σ_{l≤n} t_l
    for k in 1..=n_max {
        prefix[k] = &prefix[k - 1] + &t[k];
    }

    let eval_hyper = |n: u32, order: u32| -> Result<Rational, NumbersError> {
        Ok(numbers::degen_hyperharmonic(n, order, DegenHyperRoute::Recurrence)?.eval(lambda))
    };

    let mut direct_sum = Rational::zero();
    let mut swapped_sum = Rational::zero();
    let mut weighted_prefix = Rational::zero(); // Σ_{n≤N} h_n^{(r−1)}·Σ_{l<n} t_l
    let mut lower_total = Rational::zero(); // Σ_{n≤N} h_n^{(r−1)}
    for n in 1..=n_max {
        let h_r = eval_hyper(n as u32, r)?;
        direct_sum = direct_sum + h_r * &t[n];

        let h_lower = eval_hyper(n as u32, r - 1)?;
        let suffix = &prefix[n_max] - &prefix[n - 1]; // Σ_{k=n}^{N} t_k
        swapped_sum = swapped_sum + &h_lower * &suffix;
        weighted_prefix = weighted_prefix + &h_lower * &prefix[n - 1];
        lower_total = lower_total + h_lower;
    }
    let zeta_form = &prefix[n_max] * &lower_total - weighted_prefix;
    let residual = &direct_sum - &zeta_form;
    let swap_exact = direct_sum == swapped_sum;
    Ok(RearrangementReport {
        direct_sum,
        swapped_sum,
        zeta_form,
        swap_exact,
        residual,
    })
}

/// Renders a rational as a decimal string with exactly `digits` fractional
/// digits, correctly rounded (round-half-even), via exact integer scaling.
/// A value that rounds to zero is printed without a sign.
///
/// # Panics
/// Panics when `digits = 0`.
pub fn render_decimal(x: &Rational, digits: u32) -> String {
    assert!(digits >= 1, "at least one decimal digit is required");
    let numer = x.numer().abs();
    let denom = x.denom().clone();
    let scaled = numer * BigInt::from(10).pow(digits);
    let (mut quotient, remainder) = scaled.div_rem(&denom);
    let twice = &remainder * BigInt::from(2);
    let round_up = match twice.cmp(&denom) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => quotient.is_odd(),
    };
    if round_up {
        quotient += 1;
    }
    let mut body = quotient.to_string();
    let width = digits as usize + 1;
    if body.len() < width {
        body = format!("{}{}", "0".repeat(width - body.len()), body);
    }
    let split = body.len() - digits as usize;
    let sign = if x.is_negative() && !num_traits::Zero::is_zero(&quotient) {
        "-"
    } else {
        ""
    };
    format!("{sign}{}.{}", &body[..split], &body[split..])
}
