//! Exact arithmetic over ℚ and ℚ(√2) and the truncated-power-series kernel.
//!
//! This is the coefficient engine behind the ξ-derivative table and the
//! asymptotic expansions: the square-root series h with h(z)² = e⁻ᶻ+z−1,
//! its reversion h⁻¹, and the generic series operations (Cauchy product,
//! composition, exp, log) they require. All values are immutable and every
//! operation is a pure function, so everything here is freely shareable
//! across threads.

mod qsqrt2;
mod rational;
mod series;

pub use qsqrt2::QSqrt2;
pub use rational::Rational;
pub use series::{
    h_polynomial, inverse_coefficients, series_compose, series_exp, series_log, series_mul,
    TruncatedSeries,
};

use num_bigint::BigInt;

/// n! as a big integer.
pub(crate) fn big_factorial(n: u64) -> BigInt {
    let mut acc = BigInt::from(1);
    for k in 2..=n {
        acc *= k;
    }
    acc
}
