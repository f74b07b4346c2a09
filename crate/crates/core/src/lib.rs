//! Exact computation and machine verification of identities for harmonic,
//! hyperharmonic, and their degenerate (λ-deformed) number families.
//!
//! Everything is computed over ℚ or the polynomial ring ℚ[λ] — there is no
//! floating point and no tolerance anywhere. Identity checks compare
//! canonical forms structurally, so a pass means exact equality.
//!
//! Module map:
//! - [`rational`]: arbitrary-precision rationals in canonical form.
//! - [`poly`]: dense polynomials in λ with exact division.
//! - [`ring`]: the minimal coefficient-ring abstraction both share.
//! - [`series`]: truncated formal power series and the generating
//!   functions of the number families.
//! - [`numbers`]: memoized harmonic / hyperharmonic / Stirling / q-poly
//!   computation with independent routes.
//! - [`identities`]: verifiers that sweep parameter ranges and report
//!   exact failures with witnesses.
//! - [`zeta`]: truncated degenerate Hurwitz zeta sums and the finite
//!   summation-rearrangement report.

pub mod identities;
pub mod numbers;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod series;
pub mod zeta;

pub use poly::{binom_poly, LambdaPoly, PolyError};
pub use rational::{binom_int, degen_falling_factorial, ArithmeticError, Rational};
pub use ring::{falling_factorial, CoeffRing};
pub use series::{
    degen_exp_series, degen_hyper_gf, degen_log1p_series, degen_log_series, geom_pow,
    SeriesError, TruncatedSeries,
};
