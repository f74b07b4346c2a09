//! The special-number families: harmonic, degenerate harmonic,
//! hyperharmonic, degenerate hyperharmonic, signed Stirling numbers of the
//! first kind, and the q-correction polynomials.
//!
//! Each family that admits several independent formulas exposes them as
//! explicit routes (`recurrence` / `gf` / `closed`, …) so identity checks
//! can compare genuinely independent computations. Values are memoized in a
//! [`NumberCache`]; a process-wide cache backs the module-level functions.
//!
//! Notation note: the correction polynomial family is written q_n(λ) with
//! the start parameter r suppressed, but the defining product
//! Π_{i=0}^{n−1}(1 − λ/(r+i)) depends on r. [`QPolyKey`] carries both
//! indices to keep that dependence explicit.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use thiserror::Error;

use crate::poly::{binom_poly, LambdaPoly};
use crate::rational::{binom_int, Rational};
use crate::ring::falling_factorial;
use crate::series::degen_hyper_gf;

/// Default ceiling on the index n a cache will materialize.
pub const DEFAULT_CACHE_BOUND: u32 = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumbersError {
    #[error("index {requested} exceeds the cache bound {bound}")]
    CacheBoundExceeded { requested: u32, bound: u32 },
    #[error("H_0^(0) is undefined (it would be 1/0)")]
    UndefinedValue,
    #[error("internal consistency failure: {0}")]
    InternalInconsistency(String),
}

/// Computation route for classical hyperharmonic numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HyperRoute {
    /// Iterated partial sums H_n^{(r)} = Σ_{k≤n} H_k^{(r−1)}.
    Recurrence,
    /// C(n+r−1, r−1)·(H_{n+r−1} − H_{r−1}).
    Closed,
}

/// Computation route for degenerate hyperharmonic numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegenHyperRoute {
    /// Iterated partial sums bottoming out at the degenerate harmonics.
    Recurrence,
    /// Coefficient n of −log_λ(1−t)/(1−t)^r.
    Gf,
    /// (−1)^{r−1}·C(n+r−1, n)·(H_{n+r−1,λ} − H_{r−1,λ}) divided exactly by
    /// the polynomial C(λ−1, r−1).
    Closed,
}

/// Computation route for the q-correction polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QPolyRoute {
    /// Expand Π_{i=0}^{n−1}(1 − λ/(r+i)), subtract 1, divide by λ.
    Product,
    /// ((−1)^n·C(λ−r, n)/C(r+n−1, n) − 1)/λ.
    Closed,
    /// Stirling-number expansion of the closed form.
    Stirling,
}

/// Index of a q-correction polynomial: q_n for the product starting at r.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct QPolyKey {
    pub n: u32,
    pub r: u32,
}

/// Memoized storage for every family. All methods are safe to call from
/// multiple threads; a cached cell is only ever written with the value a
/// fresh computation would produce, so readers see either absence or the
/// correct value.
pub struct NumberCache {
    bound: u32,
    /// H_0, H_1, … as a growing prefix.
    harmonics: Mutex<Vec<Rational>>,
    /// H_{0,λ}, H_{1,λ}, … as a growing prefix.
    degen_harmonics: Mutex<Vec<LambdaPoly>>,
    /// Row r ≥ 1 holds H_0^{(r)}, H_1^{(r)}, … (recurrence values).
    hyper_rows: Mutex<BTreeMap<u32, Vec<Rational>>>,
    /// Row r ≥ 1 holds H_{0,λ}^{(r)}, H_{1,λ}^{(r)}, … (recurrence values).
    degen_hyper_rows: Mutex<BTreeMap<u32, Vec<LambdaPoly>>>,
    /// Row n holds S₁(n, 0), …, S₁(n, n).
    stirling_rows: Mutex<Vec<Vec<BigInt>>>,
    /// First-computed value per key; later routes are checked against it.
    q_polys: Mutex<BTreeMap<QPolyKey, LambdaPoly>>,
}

impl NumberCache {
    pub fn new(bound: u32) -> Self {
        NumberCache {
            bound,
            harmonics: Mutex::new(vec![Rational::zero()]),
            degen_harmonics: Mutex::new(vec![LambdaPoly::zero()]),
            hyper_rows: Mutex::new(BTreeMap::new()),
            degen_hyper_rows: Mutex::new(BTreeMap::new()),
            stirling_rows: Mutex::new(vec![vec![BigInt::one()]]),
            q_polys: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    fn check_bound(&self, n: u32) -> Result<(), NumbersError> {
        if n > self.bound {
            Err(NumbersError::CacheBoundExceeded {
                requested: n,
                bound: self.bound,
            })
        } else {
            Ok(())
        }
    }

    /// The harmonic number H_n = 1 + 1/2 + ⋯ + 1/n, with H_0 = 0.
    pub fn harmonic(&self, n: u32) -> Result<Rational, NumbersError> {
        self.check_bound(n)?;
        let mut prefix = self.harmonics.lock().expect("harmonic cache poisoned");
        while prefix.len() <= n as usize {
            let m = prefix.len() as i64;
            let next = prefix.last().expect("prefix starts nonempty") + &Rational::ratio(1, m);
            prefix.push(next);
        }
        Ok(prefix[n as usize].clone())
    }

    /// The degenerate harmonic number H_{n,λ} = Σ_{k=1}^{n} H_{k,λ}^{(0)}
    /// as a polynomial in λ of degree ≤ n−1, with H_{0,λ} = 0.
    pub fn degen_harmonic(&self, n: u32) -> Result<LambdaPoly, NumbersError> {
        self.check_bound(n)?;
        let mut prefix = self
            .degen_harmonics
            .lock()
            .expect("degenerate harmonic cache poisoned");
        while prefix.len() <= n as usize {
            let k = prefix.len() as u32;
            let next = prefix
                .last()
                .expect("prefix starts nonempty")
                .add(&degen_hyperharmonic_order0_poly(k));
            prefix.push(next);
        }
        Ok(prefix[n as usize].clone())
    }

    /// The hyperharmonic number H_n^{(r)} (iterated partial sums of the
    /// harmonic numbers), by the requested route. r = 0 denotes the base
    /// family H_n^{(0)} = 1/n regardless of route.
    pub fn hyperharmonic(
        &self,
        n: u32,
        r: u32,
        route: HyperRoute,
    ) -> Result<Rational, NumbersError> {
        self.check_bound(n)?;
        if r == 0 {
            if n == 0 {
                return Err(NumbersError::UndefinedValue);
            }
            return Ok(Rational::ratio(1, i64::from(n)));
        }
        match route {
            HyperRoute::Recurrence => {
                let mut rows = self.hyper_rows.lock().expect("hyper cache poisoned");
                for row_r in 1..=r {
                    // Fill row row_r up to n; each cell needs the one to its
                    // left and the cell above (row_r − 1, same n).
                    let prev_row = if row_r == 1 {
                        Vec::new()
                    } else {
                        rows[&(row_r - 1)].clone()
                    };
                    let row = rows.entry(row_r).or_insert_with(|| vec![Rational::zero()]);
                    while row.len() <= n as usize {
                        let m = row.len();
                        let above = if row_r == 1 {
                            Rational::ratio(1, m as i64)
                        } else {
                            prev_row[m].clone()
                        };
                        let next = &row[m - 1] + &above;
                        row.push(next);
                    }
                }
                Ok(rows[&r][n as usize].clone())
            }
            HyperRoute::Closed => {
                let top = self.harmonic(n + r - 1)?;
                let bottom = self.harmonic(r - 1)?;
                let binom = Rational::from_bigint(binom_int(
                    u64::from(n) + u64::from(r) - 1,
                    u64::from(r) - 1,
                ));
                Ok(binom * (top - bottom))
            }
        }
    }

    /// The degenerate hyperharmonic number H_{n,λ}^{(r)} as a polynomial in
    /// λ, by the requested route.
    ///
    /// # Panics
    /// Panics when `r = 0`; the degenerate recurrence bottoms out at r = 1
    /// and the order-0 family lives in [`degen_hyperharmonic_order0`].
    pub fn degen_hyperharmonic(
        &self,
        n: u32,
        r: u32,
        route: DegenHyperRoute,
    ) -> Result<LambdaPoly, NumbersError> {
        assert!(r >= 1, "degenerate hyperharmonic numbers need r >= 1");
        self.check_bound(n)?;
        match route {
            DegenHyperRoute::Recurrence => {
                // Prefetch the base row so no two cache locks are ever held
                // at once.
                let mut base = Vec::with_capacity(n as usize + 1);
                for m in 0..=n {
                    base.push(self.degen_harmonic(m)?);
                }
                let mut rows = self
                    .degen_hyper_rows
                    .lock()
                    .expect("degenerate hyper cache poisoned");
                let row1 = rows.entry(1).or_default();
                while row1.len() <= n as usize {
                    row1.push(base[row1.len()].clone());
                }
                for row_r in 2..=r {
                    let prev_row = rows[&(row_r - 1)].clone();
                    let row = rows
                        .entry(row_r)
                        .or_insert_with(|| vec![LambdaPoly::zero()]);
                    while row.len() <= n as usize {
                        let m = row.len();
                        let next = row[m - 1].add(&prev_row[m]);
                        row.push(next);
                    }
                }
                Ok(rows[&r][n as usize].clone())
            }
            DegenHyperRoute::Gf => {
                let gf = degen_hyper_gf(&LambdaPoly::lambda(), r, n as usize);
                Ok(gf.coeff(n as usize).clone())
            }
            DegenHyperRoute::Closed => {
                let k = r - 1;
                let diff = self
                    .degen_harmonic(n + k)?
                    .sub(&self.degen_harmonic(k)?);
                let mut numerator =
                    diff.scale_int(&binom_int(u64::from(n) + u64::from(k), u64::from(n)));
                if k % 2 == 1 {
                    numerator = numerator.neg();
                }
                let divisor = binom_poly(1, k);
                let (quotient, remainder) = numerator
                    .div_rem(&divisor)
                    .expect("C(λ-1,k) is a nonzero polynomial");
                if !remainder.is_zero() {
                    return Err(NumbersError::InternalInconsistency(format!(
                        "closed route for H_({n},λ)^({r}): division by C(λ-1,{k}) \
                         left remainder {remainder}"
                    )));
                }
                Ok(quotient)
            }
        }
    }

    /// The order-0 degenerate family
    /// H_{k,λ}^{(0)} = (−1)^{k−1}(λ−1)(λ−2)⋯(λ−k+1)/k!,
    /// the t^k coefficient of −log_λ(1−t). Specializes to 1/k at λ = 0.
    ///
    /// # Panics
    /// Panics when `k = 0`.
    pub fn degen_hyperharmonic_order0(&self, k: u32) -> LambdaPoly {
        assert!(k >= 1, "the order-0 family starts at k = 1");
        degen_hyperharmonic_order0_poly(k)
    }

    /// The signed Stirling number of the first kind S₁(n, k), from the
    /// triangle recurrence S₁(n+1, k) = S₁(n, k−1) − n·S₁(n, k) with
    /// S₁(0, 0) = 1. Out-of-triangle indices yield 0.
    pub fn stirling1(&self, n: u32, k: u32) -> Result<BigInt, NumbersError> {
        self.check_bound(n)?;
        if k > n {
            return Ok(BigInt::zero());
        }
        let mut rows = self.stirling_rows.lock().expect("stirling cache poisoned");
        while rows.len() <= n as usize {
            let m = rows.len(); // building row m from row m−1
            let prev = &rows[m - 1];
            let mut row = Vec::with_capacity(m + 1);
            for j in 0..=m {
                let from_left = if j >= 1 { prev.get(j - 1) } else { None };
                let above = prev.get(j);
                let mut cell = from_left.cloned().unwrap_or_else(BigInt::zero);
                if let Some(s) = above {
                    cell -= BigInt::from(m - 1) * s;
                }
                row.push(cell);
            }
            rows.push(row);
        }
        Ok(rows[n as usize][k as usize].clone())
    }

    /// The correction polynomial q_n(λ) for start parameter r, defined by
    /// Π_{i=0}^{n−1}(1 − λ/(r+i)) = 1 + λ·q_n(λ), by the requested route.
    ///
    /// Product-route values are memoized. The other two routes always
    /// recompute and, when a product value is cached, are compared against
    /// it, so a route disagreement surfaces as an internal-consistency
    /// error at the point of use.
    ///
    /// # Panics
    /// Panics when `n = 0` or `r = 0`.
    pub fn q_poly(&self, key: QPolyKey, route: QPolyRoute) -> Result<LambdaPoly, NumbersError> {
        assert!(key.n >= 1 && key.r >= 1, "q polynomials need n, r >= 1");
        self.check_bound(key.n)?;
        if route == QPolyRoute::Product {
            let mut cache = self.q_polys.lock().expect("q-poly cache poisoned");
            let value = cache
                .entry(key)
                .or_insert_with(|| q_poly_product(key))
                .clone();
            return Ok(value);
        }
        let computed = match route {
            QPolyRoute::Closed => q_poly_closed(key),
            QPolyRoute::Stirling => self.q_poly_stirling(key)?,
            QPolyRoute::Product => unreachable!("handled above"),
        };
        if let Some(stored) = self
            .q_polys
            .lock()
            .expect("q-poly cache poisoned")
            .get(&key)
        {
            if *stored != computed {
                return Err(NumbersError::InternalInconsistency(format!(
                    "q_{}(λ) with start {} disagrees across routes: product {} vs {:?} {}",
                    key.n, key.r, stored, route, computed
                )));
            }
        }
        Ok(computed)
    }

    fn q_poly_stirling(&self, key: QPolyKey) -> Result<LambdaPoly, NumbersError> {
        let n = key.n;
        let r = key.r;
        // (−r)_n = (−r)(−r−1)⋯(−r−n+1)
        let scale = falling_factorial(&Rational::from_int(-i64::from(r)), n)
            .recip()
            .expect("(−r)_n is a nonzero integer for r >= 1");
        let mut coeffs = Vec::with_capacity(n as usize);
        for k in 1..=n {
            let mut inner = BigInt::zero();
            for l in k..=n {
                let mut term = binom_int(u64::from(l), u64::from(k)) * self.stirling1(n, l)?;
                term *= BigInt::from(r).pow(l - k);
                if (l - k) % 2 == 1 {
                    term = -term;
                }
                inner += term;
            }
            coeffs.push(Rational::from_bigint(inner) * &scale);
        }
        Ok(LambdaPoly::from_coeffs(coeffs))
    }
}

/// Shared process-wide cache behind the module-level functions.
fn shared() -> &'static NumberCache {
    static SHARED: OnceLock<NumberCache> = OnceLock::new();
    SHARED.get_or_init(|| NumberCache::new(DEFAULT_CACHE_BOUND))
}

pub fn harmonic(n: u32) -> Result<Rational, NumbersError> {
    shared().harmonic(n)
}

pub fn degen_harmonic(n: u32) -> Result<LambdaPoly, NumbersError> {
    shared().degen_harmonic(n)
}

pub fn hyperharmonic(n: u32, r: u32, route: HyperRoute) -> Result<Rational, NumbersError> {
    shared().hyperharmonic(n, r, route)
}

pub fn degen_hyperharmonic(
    n: u32,
    r: u32,
    route: DegenHyperRoute,
) -> Result<LambdaPoly, NumbersError> {
    shared().degen_hyperharmonic(n, r, route)
}

pub fn degen_hyperharmonic_order0(k: u32) -> LambdaPoly {
    shared().degen_hyperharmonic_order0(k)
}

pub fn stirling1(n: u32, k: u32) -> Result<BigInt, NumbersError> {
    shared().stirling1(n, k)
}

pub fn q_poly(key: QPolyKey, route: QPolyRoute) -> Result<LambdaPoly, NumbersError> {
    shared().q_poly(key, route)
}

fn degen_hyperharmonic_order0_poly(k: u32) -> LambdaPoly {
    if k == 0 {
        return LambdaPoly::zero();
    }
    let mut p = falling_factorial(
        &LambdaPoly::from_coeffs(vec![Rational::from_int(-1), Rational::one()]),
        k - 1,
    );
    // (λ−1)(λ−2)⋯(λ−k+1) is (x)_{k−1} at x = λ−1; attach (−1)^{k−1}/k!.
    if k % 2 == 0 {
        p = p.neg();
    }
    let mut factorial = BigInt::one();
    for i in 2..=k {
        factorial *= i;
    }
    p.scale(
        &Rational::new(BigInt::one(), factorial).expect("factorial is nonzero"),
    )
}

fn q_poly_product(key: QPolyKey) -> LambdaPoly {
    let mut product = LambdaPoly::one();
    for i in 0..key.n {
        let factor = LambdaPoly::from_coeffs(vec![
            Rational::one(),
            -Rational::ratio(1, i64::from(key.r) + i64::from(i)),
        ]);
        product = product.mul(&factor);
    }
    product
        .sub(&LambdaPoly::one())
        .divide_by_lambda()
        .expect("the product form has constant term exactly 1")
}

fn q_poly_closed(key: QPolyKey) -> LambdaPoly {
    let mut reassembled = binom_poly(i64::from(key.r), key.n);
    if key.n % 2 == 1 {
        reassembled = reassembled.neg();
    }
    let scale = Rational::from_bigint(binom_int(
        u64::from(key.r) + u64::from(key.n) - 1,
        u64::from(key.n),
    ))
    .recip()
    .expect("binomial coefficient is positive");
    reassembled
        .scale(&scale)
        .sub(&LambdaPoly::one())
        .divide_by_lambda()
        .expect("the closed form has constant term exactly 1")
}
