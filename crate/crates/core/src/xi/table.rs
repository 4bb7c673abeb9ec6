//! Exact derivatives of ξ at 1.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exact::{big_factorial, h_polynomial, inverse_coefficients, Rational};

/// The exact values ξ(1), ξ′(1), …, ξ⁽ᵏ⁾(1) as rationals, plus the derived
/// f64 Taylor coefficients ξ⁽ᵏ⁾(1)/k! used by the evaluators.
///
/// Immutable after construction; share freely across threads.
#[derive(Clone, Debug)]
pub struct XiDerivativeTable {
    values: Vec<Rational>,
    taylor: Vec<f64>,
}

/// Computes [ξ(1), …, ξ⁽ⁿ⁻¹⁾(1)] exactly.
///
/// With h⁻¹(w) = Σ aₖ wᵏ the reversion of the square-root series h, the sum
/// of the two branches is u(t) + v(t) = Σ 2a₂ₖ (t−1)ᵏ, so
/// ξ⁽ᵏ⁾(1) = 2·a₂₍ₖ₊₁₎·(k+1)!. The odd-index aₖ are pure √2-multiples and
/// cancel; a nonzero √2-part at an even index would be an implementation
/// bug, which is asserted.
pub fn xi_derivatives(n: usize) -> Result<XiDerivativeTable> {
    if n == 0 {
        return Err(Error::invalid("xi_derivatives requires n >= 1"));
    }
    let b = h_polynomial(2 * n)?;
    let a = inverse_coefficients(&b, 2 * n)?;
    let mut values = Vec::with_capacity(n);
    for j in 1..=n {
        let a2j = &a[2 * j - 1];
        let rat = a2j
            .as_rational()
            .unwrap_or_else(|| panic!("a_{} has a nonzero sqrt2 part: {a2j}", 2 * j));
        values.push(Rational::from_int(2) * rat * Rational::new(big_factorial(j as u64), 1));
    }
    Ok(XiDerivativeTable::from_values(values))
}

impl XiDerivativeTable {
    fn from_values(values: Vec<Rational>) -> Self {
        let mut taylor = Vec::with_capacity(values.len());
        let mut fact = 1.0;
        for (k, v) in values.iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            taylor.push(v.to_f64() / fact);
        }
        XiDerivativeTable { values, taylor }
    }

    /// Shared table with derivatives through ξ⁽²⁰⁾(1).
    ///
    /// Twenty-one Taylor terms keep the series branch of the evaluators below
    /// ~1e−15 truncation error everywhere inside |t−1| ≤ 1, twice the switch
    /// radius (the Taylor coefficients decay like (2π)⁻ᵏ).
    pub fn standard() -> &'static XiDerivativeTable {
        static TABLE: OnceLock<XiDerivativeTable> = OnceLock::new();
        TABLE.get_or_init(|| xi_derivatives(21).expect("standard table"))
    }

    /// Number of stored derivatives (max order + 1).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Highest derivative order in the table.
    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    /// ξ⁽ᵏ⁾(1) as an exact rational.
    pub fn get(&self, k: usize) -> &Rational {
        &self.values[k]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Taylor coefficient ξ⁽ᵏ⁾(1)/k! as f64.
    pub fn taylor_coeff(&self, k: usize) -> f64 {
        self.taylor[k]
    }

    /// Σ ξ⁽ᵏ⁾(1)(t−1)ᵏ/k! over the whole table (Horner).
    pub fn series_at(&self, t: f64) -> f64 {
        let dt = t - 1.0;
        self.taylor.iter().rev().fold(0.0, |acc, c| acc * dt + c)
    }

    /// Series for ξ′(t): Σ ξ⁽ʲ⁺¹⁾(1)(t−1)ʲ/j!.
    pub fn series_prime_at(&self, t: f64) -> f64 {
        let dt = t - 1.0;
        (1..self.taylor.len())
            .rev()
            .fold(0.0, |acc, k| acc * dt + self.taylor[k] * k as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_three_derivatives() {
        let table = xi_derivatives(3).unwrap();
        assert_eq!(table.get(0), &Rational::new(2, 3));
        assert_eq!(table.get(1), &Rational::new(8, 135));
        assert_eq!(table.get(2), &Rational::new(-16, 2835));
    }

    #[test]
    fn rejects_zero_order() {
        assert!(xi_derivatives(0).is_err());
    }

    #[test]
    fn sign_pattern_pairs() {
        // +, +, −, −, +, +, −, −, … for k ≤ 10
        let table = xi_derivatives(11).unwrap();
        for k in 0..=10 {
            let expect_positive = (k / 2) % 2 == 0;
            assert_eq!(
                table.get(k).is_positive(),
                expect_positive,
                "sign of xi^({k})(1)"
            );
        }
    }

    #[test]
    fn taylor_coeffs_match_values() {
        let table = xi_derivatives(4).unwrap();
        assert!((table.taylor_coeff(0) - 2.0 / 3.0).abs() < 1e-16);
        assert!((table.taylor_coeff(2) - (-16.0 / 2835.0) / 2.0).abs() < 1e-18);
    }

    #[test]
    fn series_at_one_is_two_thirds() {
        let table = XiDerivativeTable::standard();
        assert_eq!(table.series_at(1.0), 2.0 / 3.0);
        assert!((table.series_prime_at(1.0) - 8.0 / 135.0).abs() < 1e-17);
    }
}
