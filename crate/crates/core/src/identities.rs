//! Exact verification of the identities relating the number families.
//!
//! Every verifier sweeps a parameter box, compares two independently
//! computed sides — as polynomials in λ wherever possible, so one check
//! covers all λ at once — and returns a [`VerificationReport`]. A failure
//! carries the parameters and both exact sides, enough to reproduce the
//! case from the report alone. There is no tolerance anywhere: sides are
//! equal or the case fails.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::numbers::{
    self, DegenHyperRoute, HyperRoute, NumbersError, QPolyKey, QPolyRoute,
};
use crate::poly::{binom_poly, LambdaPoly};
use crate::rational::{binom_int, Rational};
use crate::series::degen_hyper_gf;
use crate::zeta::rearrangement_report;

/// Inclusive parameter range; empty when `min > max`.
pub type Range = (u32, u32);

fn span(range: Range) -> std::ops::RangeInclusive<u32> {
    range.0..=range.1
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("singular parameter: {factor} vanishes at λ = {lambda}")]
    SingularParameter { factor: String, lambda: Rational },
    #[error(transparent)]
    Numbers(#[from] NumbersError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamRange {
    pub name: &'static str,
    pub min: u32,
    pub max: u32,
}

fn range(name: &'static str, r: Range) -> ParamRange {
    ParamRange {
        name,
        min: r.0,
        max: r.1,
    }
}

/// One failing case: the parameters and both exact sides.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub params: BTreeMap<&'static str, String>,
    pub lhs: Value,
    pub rhs: Value,
}

/// Outcome of sweeping one identity over a parameter box.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub ranges: Vec<ParamRange>,
    pub cases: u64,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    fn new(identity: &str, ranges: Vec<ParamRange>) -> Self {
        VerificationReport {
            identity: identity.to_owned(),
            ranges,
            cases: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, params: BTreeMap<&'static str, String>, lhs: &impl Serialize, rhs: &impl Serialize) {
        self.failures.push(Failure {
            params,
            lhs: as_value(lhs),
            rhs: as_value(rhs),
        });
    }
}

fn as_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize infallibly")
}

macro_rules! params {
    ($($name:ident),+ $(,)?) => {{
        let mut map = BTreeMap::new();
        $(map.insert(stringify!($name), $name.to_string());)+
        map
    }};
}

/// A deliberately corrupted sweep case, used to exercise the
/// failure-reporting path end to end: the named case's right-hand side is
/// shifted by 1, which must surface as a failure witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InjectedFault {
    pub n: u32,
    pub k: u32,
    pub r: u32,
}

impl Default for InjectedFault {
    fn default() -> Self {
        InjectedFault { n: 1, k: 1, r: 1 }
    }
}

fn factorial(k: u32) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 2..=k {
        acc *= i;
    }
    acc
}

/// Right-hand side of the binomial-weighted shift identity for
/// C(n+k,k)·H_{n+k,λ}^{(r)}:
///
/// C(n+r+k−1,n)·H_k^{(r)} + C(r+k−1,k)·H_{n,λ}^{(k+r)}
/// + λ·[ C(n+r+k−1,n)·C(r+k−1,k)·Σ_{l=2}^{k} q_{l−1}(λ)/(r+l−1)
///     + C(r+k−1,k)·q_k(λ)·H_{n,λ}^{(k+r)} ],
///
/// with empty sums for k ≤ 1 and the whole λ-bracket absent for k = 0
/// (q_0 = 0, since an empty product equals 1 + λ·0).
fn shift_identity_rhs(n: u32, k: u32, r: u32) -> Result<LambdaPoly, NumbersError> {
    let outer = binom_int(u64::from(n + r + k) - 1, u64::from(n));
    let inner = binom_int(u64::from(r + k) - 1, u64::from(k));
    let classical = numbers::hyperharmonic(k, r, HyperRoute::Recurrence)?;
    let shifted = numbers::degen_hyperharmonic(n, k + r, DegenHyperRoute::Recurrence)?;

    let mut rhs = LambdaPoly::constant(Rational::from_bigint(outer.clone()) * classical);
    rhs = rhs.add(&shifted.scale_int(&inner));

    if k >= 1 {
        let mut q_sum = LambdaPoly::zero();
        for l in 2..=k {
            let q = numbers::q_poly(QPolyKey { n: l - 1, r }, QPolyRoute::Product)?;
            q_sum = q_sum.add(&q.scale(&Rational::ratio(1, i64::from(r + l) - 1)));
        }
        let q_k = numbers::q_poly(QPolyKey { n: k, r }, QPolyRoute::Product)?;
        let bracket = q_sum
            .scale_int(&(outer * &inner))
            .add(&q_k.mul(&shifted).scale_int(&inner));
        rhs = rhs.add(&bracket.mul_by_lambda());
    }
    Ok(rhs)
}

fn shift_identity_lhs(n: u32, k: u32, r: u32) -> Result<LambdaPoly, NumbersError> {
    let top = numbers::degen_hyperharmonic(n + k, r, DegenHyperRoute::Recurrence)?;
    Ok(top.scale_int(&binom_int(u64::from(n + k), u64::from(k))))
}

/// Verifies, as an identity in ℚ[λ], the shift identity behind
/// `verify theorem2` for one parameter triple (n, k, r ≥ 1).
pub fn verify_theorem2(n: u32, k: u32, r: u32) -> Result<VerificationReport, NumbersError> {
    verify_theorem2_sweep((n, n), (k, k), (r, r), None)
}

/// Sweeps the shift identity over a parameter box. `fault`, when set,
/// corrupts that one case (see [`InjectedFault`]).
pub fn verify_theorem2_sweep(
    nr: Range,
    kr: Range,
    rr: Range,
    fault: Option<&InjectedFault>,
) -> Result<VerificationReport, NumbersError> {
    let mut report = VerificationReport::new(
        "theorem2",
        vec![range("n", nr), range("k", kr), range("r", rr)],
    );
    for n in span(nr) {
        for k in span(kr) {
            for r in span(rr) {
                let lhs = shift_identity_lhs(n, k, r)?;
                let mut rhs = shift_identity_rhs(n, k, r)?;
                if fault.is_some_and(|f| (f.n, f.k, f.r) == (n, k, r)) {
                    rhs = rhs.add(&LambdaPoly::one());
                }
                report.cases += 1;
                if lhs != rhs {
                    report.fail(params![n, k, r], &lhs, &rhs);
                }
            }
        }
    }
    Ok(report)
}

/// (−1)^k·C(λ−1,k), the k-dependent factor of the division-free form.
fn signed_binom_factor(k: u32) -> LambdaPoly {
    let factor = binom_poly(1, k);
    if k % 2 == 1 {
        factor.neg()
    } else {
        factor
    }
}

/// Verifies, in the division-free polynomial form, the closed expression
/// behind `verify theorem3`:
/// (−1)^k·C(λ−1,k)·H_{n,λ}^{(k+1)} = C(n+k,n)·(H_{n+k,λ} − H_{k,λ}).
pub fn verify_theorem3(n: u32, k: u32) -> Result<VerificationReport, NumbersError> {
    verify_theorem3_sweep((n, n), (k, k))
}

pub fn verify_theorem3_sweep(nr: Range, kr: Range) -> Result<VerificationReport, NumbersError> {
    let mut report =
        VerificationReport::new("theorem3", vec![range("n", nr), range("k", kr)]);
    // k-outer so the k-dependent pieces are built once per column
    for k in span(kr) {
        let factor = signed_binom_factor(k);
        let h_k = numbers::degen_harmonic(k)?;
        for n in span(nr) {
            let lhs =
                factor.mul(&numbers::degen_hyperharmonic(n, k + 1, DegenHyperRoute::Recurrence)?);
            let rhs = numbers::degen_harmonic(n + k)?
                .sub(&h_k)
                .scale_int(&binom_int(u64::from(n + k), u64::from(n)));
            report.cases += 1;
            if lhs != rhs {
                report.fail(params![n, k], &lhs, &rhs);
            }
        }
    }
    Ok(report)
}

/// The division form of the closed expression, evaluated at a specific λ.
/// Rejects λ ∈ {1, …, k}, where the divisor C(λ−1, k) vanishes, with an
/// error naming the factor.
pub fn verify_theorem3_evaluated(
    n: u32,
    k: u32,
    lambda: &Rational,
) -> Result<VerificationReport, IdentityError> {
    let divisor = binom_poly(1, k).eval(lambda);
    if divisor.is_zero() {
        return Err(IdentityError::SingularParameter {
            factor: format!("C(λ-1,{k})"),
            lambda: lambda.clone(),
        });
    }
    let mut report = VerificationReport::new(
        "theorem3-evaluated",
        vec![range("n", (n, n)), range("k", (k, k))],
    );
    let lhs = numbers::degen_hyperharmonic(n, k + 1, DegenHyperRoute::Recurrence)
        .map_err(IdentityError::Numbers)?
        .eval(lambda);
    let diff = numbers::degen_harmonic(n + k)
        .map_err(IdentityError::Numbers)?
        .sub(&numbers::degen_harmonic(k).map_err(IdentityError::Numbers)?)
        .eval(lambda);
    let mut rhs =
        Rational::from_bigint(binom_int(u64::from(n + k), u64::from(n))) * diff / divisor;
    if k % 2 == 1 {
        rhs = -rhs;
    }
    report.cases += 1;
    if lhs != rhs {
        let mut params = params![n, k];
        params.insert("lambda", lambda.to_string());
        report.fail(params, &lhs, &rhs);
    }
    Ok(report)
}

/// Sweeps the evaluated closed expression over a box and a λ list. A λ in
/// the singular set {1, …, k} counts as a correctly rejected case.
pub fn verify_theorem3_evaluated_sweep(
    nr: Range,
    kr: Range,
    lambdas: &[Rational],
) -> Result<VerificationReport, NumbersError> {
    let mut report = VerificationReport::new(
        "theorem3-evaluated",
        vec![range("n", nr), range("k", kr)],
    );
    if span(nr).next().is_none() || span(kr).next().is_none() {
        return Ok(report);
    }
    let n_cases = u64::from(nr.1 - nr.0) + 1;
    for lambda in lambdas {
        // one evaluation table of H_{m,λ} per λ serves every (n, k) pair
        let mut harmonic_at = Vec::with_capacity((nr.1 + kr.1) as usize + 1);
        for m in 0..=(nr.1 + kr.1) {
            harmonic_at.push(numbers::degen_harmonic(m)?.eval(lambda));
        }
        for k in span(kr) {
            let divisor = binom_poly(1, k).eval(lambda);
            if divisor.is_zero() {
                // the divisor genuinely vanishes there (λ ∈ {1, …, k});
                // rejection for every n in the box is the specified behavior
                report.cases += n_cases;
                continue;
            }
            let inverse = divisor.recip().expect("divisor checked nonzero");
            let negate = k % 2 == 1;
            for n in span(nr) {
                let lhs = numbers::degen_hyperharmonic(n, k + 1, DegenHyperRoute::Recurrence)?
                    .eval(lambda);
                let diff = &harmonic_at[(n + k) as usize] - &harmonic_at[k as usize];
                let mut rhs = Rational::from_bigint(binom_int(u64::from(n + k), u64::from(n)))
                    * diff
                    * &inverse;
                if negate {
                    rhs = -rhs;
                }
                report.cases += 1;
                if lhs != rhs {
                    let mut params = params![n, k];
                    params.insert("lambda", lambda.to_string());
                    report.fail(params, &lhs, &rhs);
                }
            }
        }
    }
    Ok(report)
}

/// Verifies everything the correction polynomials promise for one (n, r):
/// the three routes agree, the degree is exactly n−1, and reassembling
/// 1 + λ·q_n recovers (−1)^n·C(λ−r, n)/C(r+n−1, n).
pub fn verify_lemma1(n: u32, r: u32) -> Result<VerificationReport, NumbersError> {
    verify_lemma1_sweep((n, n), (r, r))
}

pub fn verify_lemma1_sweep(nr: Range, rr: Range) -> Result<VerificationReport, NumbersError> {
    let mut report =
        VerificationReport::new("lemma1", vec![range("n", nr), range("r", rr)]);
    for n in span(nr) {
        for r in span(rr) {
            let key = QPolyKey { n, r };
            let product = numbers::q_poly(key, QPolyRoute::Product)?;
            let closed = numbers::q_poly(key, QPolyRoute::Closed)?;
            let stirling = numbers::q_poly(key, QPolyRoute::Stirling)?;
            report.cases += 1;

            let check = |which: &'static str,
                             lhs: &LambdaPoly,
                             rhs: &LambdaPoly,
                             report: &mut VerificationReport| {
                if lhs != rhs {
                    let mut params = params![n, r];
                    params.insert("check", which.to_owned());
                    report.fail(params, lhs, rhs);
                }
            };
            check("product-vs-closed", &product, &closed, &mut report);
            check("product-vs-stirling", &product, &stirling, &mut report);

            // reassembly: 1 + λ·q = (−1)^n·C(λ−r, n)/C(r+n−1, n)
            let reassembled = LambdaPoly::one().add(&product.mul_by_lambda());
            let mut direct = binom_poly(i64::from(r), n).scale(
                &Rational::from_bigint(binom_int(u64::from(r + n) - 1, u64::from(n)))
                    .recip()
                    .expect("binomial coefficient is positive"),
            );
            if n % 2 == 1 {
                direct = direct.neg();
            }
            check("reassembly", &reassembled, &direct, &mut report);

            if product.degree() != Some(n as usize - 1) {
                let mut params = params![n, r];
                params.insert("check", "degree".to_owned());
                report.fail(
                    params,
                    &format!("{:?}", product.degree()),
                    &format!("{:?}", Some(n as usize - 1)),
                );
            }
        }
    }
    Ok(report)
}

/// Checks that the t^n coefficients of −log_λ(1−t)/(1−t)^r match the
/// recurrence values H_{n,λ}^{(r)}, symbolically in λ, for 0 ≤ n ≤ order.
pub fn verify_gf_match(rr: Range, order: usize) -> Result<VerificationReport, NumbersError> {
    let mut report = VerificationReport::new(
        "gf",
        vec![range("r", rr), range("n", (0, order as u32))],
    );
    for r in span(rr) {
        let gf = degen_hyper_gf(&LambdaPoly::lambda(), r, order);
        for n in 0..=order {
            let recurrence = numbers::degen_hyperharmonic(n as u32, r, DegenHyperRoute::Recurrence)?;
            report.cases += 1;
            if gf.coeff(n) != &recurrence {
                let mut params = params![r];
                params.insert("n", n.to_string());
                report.fail(params, gf.coeff(n), &recurrence);
            }
        }
    }
    Ok(report)
}

/// Checks the k-th derivative of the generating function coefficientwise
/// against two independent expansions: k!·C(n+k,k)·H_{n+k,λ}^{(r)} and
/// k! times [`shift_identity_rhs`]. Their agreement is exactly the shift
/// identity, derived here on the series side.
pub fn verify_derivative_identity(
    kr: Range,
    rr: Range,
    order: usize,
) -> Result<VerificationReport, NumbersError> {
    let mut report = VerificationReport::new(
        "derivative",
        vec![
            range("k", kr),
            range("r", rr),
            range("order", (order as u32, order as u32)),
        ],
    );
    for k in span(kr) {
        if k as usize > order {
            continue;
        }
        let k_factorial = factorial(k);
        for r in span(rr) {
            let gf = degen_hyper_gf(&LambdaPoly::lambda(), r, order);
            let derived = gf.derive(k as usize).expect("k <= order was checked");
            for n in 0..=(order - k as usize) {
                let coeff = derived.coeff(n);
                report.cases += 1;

                let weight =
                    binom_int(n as u64 + u64::from(k), u64::from(k)) * &k_factorial;
                let direct = numbers::degen_hyperharmonic(
                    n as u32 + k,
                    r,
                    DegenHyperRoute::Recurrence,
                )?
                .scale_int(&weight);
                if coeff != &direct {
                    let mut params = params![k, r];
                    params.insert("n", n.to_string());
                    params.insert("check", "coefficient-extraction".to_owned());
                    report.fail(params, coeff, &direct);
                }

                let expanded =
                    shift_identity_rhs(n as u32, k, r)?.scale_int(&k_factorial);
                if coeff != &expanded {
                    let mut params = params![k, r];
                    params.insert("n", n.to_string());
                    params.insert("check", "expansion".to_owned());
                    report.fail(params, coeff, &expanded);
                }
            }
        }
    }
    Ok(report)
}

/// Checks the finite summation-order swap of the weighted hyperharmonic
/// sums at specific λ values: both double sums must agree exactly at every
/// truncation.
pub fn verify_rearrangement(
    rr: Range,
    mr: Range,
    lambdas: &[Rational],
    terms: u32,
) -> Result<VerificationReport, NumbersError> {
    let mut report = VerificationReport::new(
        "rearrangement",
        vec![
            range("r", rr),
            range("m", mr),
            range("terms", (terms, terms)),
        ],
    );
    for r in span(rr) {
        for m in span(mr) {
            for lambda in lambdas {
                let rearranged = rearrangement_report(r, m, lambda, terms)?;
                report.cases += 1;
                if !rearranged.swap_exact {
                    let mut params = params![r, m];
                    params.insert("lambda", lambda.to_string());
                    report.fail(params, &rearranged.direct_sum, &rearranged.swapped_sum);
                }
            }
        }
    }
    Ok(report)
}

/// Parameter box for [`verify_all`]. Each verifier intersects these ranges
/// with its own domain (for example the rearrangement needs r, m ≥ 2); an
/// empty intersection runs zero cases and passes vacuously.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub n: Range,
    pub k: Range,
    pub r: Range,
    pub m: Range,
    pub order: usize,
    pub terms: u32,
    pub lambdas: Vec<Rational>,
    pub fault: Option<InjectedFault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n: (1, 5),
            k: (1, 5),
            r: (1, 5),
            m: (2, 3),
            order: 16,
            terms: 20,
            lambdas: default_lambdas(),
            fault: None,
        }
    }
}

/// The λ sample points used when the caller does not supply any:
/// two values in (−1, 1), one integer ≥ 2 (singular for some k, to
/// exercise rejection), and one above 1.
pub fn default_lambdas() -> Vec<Rational> {
    vec![
        Rational::ratio(1, 2),
        Rational::ratio(-1, 3),
        Rational::from_int(2),
        Rational::ratio(7, 5),
    ]
}

fn clamp_min(range: Range, min: u32) -> Range {
    (range.0.max(min), range.1)
}

/// Runs every verifier over the configured ranges and returns their seven
/// reports, in a fixed order. The aggregate passes iff every report does.
pub fn verify_all(config: &VerifyConfig) -> Result<Vec<VerificationReport>, NumbersError> {
    let mut reports = Vec::with_capacity(7);
    reports.push(verify_theorem2_sweep(
        clamp_min(config.n, 1),
        clamp_min(config.k, 1),
        clamp_min(config.r, 1),
        config.fault.as_ref(),
    )?);
    reports.push(verify_theorem3_sweep(config.n, clamp_min(config.k, 1))?);
    reports.push(verify_theorem3_evaluated_sweep(
        config.n,
        clamp_min(config.k, 1),
        &config.lambdas,
    )?);
    reports.push(verify_lemma1_sweep(
        clamp_min(config.n, 1),
        clamp_min(config.r, 1),
    )?);
    reports.push(verify_gf_match(clamp_min(config.r, 1), config.order)?);
    reports.push(verify_derivative_identity(
        config.k,
        clamp_min(config.r, 1),
        config.order,
    )?);
    reports.push(verify_rearrangement(
        clamp_min(config.r, 2),
        clamp_min(config.m, 2),
        &config.lambdas,
        config.terms,
    )?);
    Ok(reports)
}
