//! Dense truncated power series over ℚ(√2) and the h / h⁻¹ coefficient
//! recursions.
//!
//! A series of order n stores coefficients of z⁰..zⁿ and is understood
//! modulo z^{n+1}. Binary operations truncate to the smaller order. n stays
//! below ~50 everywhere in this crate, so the schoolbook O(n²) Cauchy
//! product is the right tool; no FFT.

use crate::error::{Error, Result};

use super::{big_factorial, QSqrt2, Rational};

/// Coefficients c₀..cₙ of a power series known modulo z^{n+1}.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<QSqrt2>,
}

impl TruncatedSeries {
    /// Builds a series from its coefficients; the order is `len − 1`.
    pub fn from_coeffs(coeffs: Vec<QSqrt2>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least a constant term");
        TruncatedSeries { coeffs }
    }

    pub fn from_rational_coeffs(coeffs: &[Rational]) -> Self {
        TruncatedSeries::from_coeffs(coeffs.iter().cloned().map(QSqrt2::from_rational).collect())
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![QSqrt2::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        s.coeffs[0] = QSqrt2::one();
        s
    }

    /// The identity series z (requires order ≥ 1).
    pub fn z(order: usize) -> Self {
        assert!(order >= 1);
        let mut s = TruncatedSeries::zero(order);
        s.coeffs[1] = QSqrt2::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &QSqrt2 {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[QSqrt2] {
        &self.coeffs
    }

    pub fn truncated(&self, order: usize) -> Self {
        let order = order.min(self.order());
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
        }
    }

    pub fn add(&self, other: &TruncatedSeries) -> Self {
        let order = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        }
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Self {
        let order = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|k| &self.coeffs[k] - &other.coeffs[k])
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QSqrt2::is_zero)
    }
}

impl std::fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                write!(f, "({})z^{} ", c, k)?;
            }
        }
        write!(f, "+ O(z^{})", self.order() + 1)
    }
}

/// Cauchy product truncated to the smaller order.
pub fn series_mul(s: &TruncatedSeries, t: &TruncatedSeries) -> TruncatedSeries {
    let order = s.order().min(t.order());
    let mut coeffs = vec![QSqrt2::zero(); order + 1];
    for (i, si) in s.coeffs.iter().take(order + 1).enumerate() {
        if si.is_zero() {
            continue;
        }
        for (j, tj) in t.coeffs.iter().take(order + 1 - i).enumerate() {
            if !tj.is_zero() {
                coeffs[i + j] += si * tj;
            }
        }
    }
    TruncatedSeries { coeffs }
}

/// outer(inner(z)) truncated to the smaller order, by Horner accumulation.
///
/// `inner` must have zero constant term, otherwise the truncated result
/// would depend on coefficients of `outer` beyond its order.
pub fn series_compose(outer: &TruncatedSeries, inner: &TruncatedSeries) -> Result<TruncatedSeries> {
    if !inner.coeff(0).is_zero() {
        return Err(Error::invalid(
            "series composition requires zero constant term in the inner series",
        ));
    }
    let order = outer.order().min(inner.order());
    let inner = inner.truncated(order);
    let mut acc = TruncatedSeries::zero(order);
    acc.coeffs[0] = outer.coeff(order).clone();
    for k in (0..order).rev() {
        acc = series_mul(&acc, &inner);
        acc.coeffs[0] += outer.coeff(k).clone();
    }
    Ok(acc)
}

/// exp(s(z)) = Σ s(z)ʲ/j! truncated at the order of `s`; the zero constant
/// term makes the sum finite (sʲ has valuation j).
pub fn series_exp(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    if !s.coeff(0).is_zero() {
        return Err(Error::invalid(
            "series exponential requires zero constant term",
        ));
    }
    let order = s.order();
    let mut acc = TruncatedSeries::one(order);
    let mut term = TruncatedSeries::one(order);
    for j in 1..=order {
        term = series_mul(&term, s).scale(&Rational::new(1, j as i64));
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// log(s(z)) for a series with constant term 1, via log(1+u) = Σ (−1)^{j+1} uʲ/j.
pub fn series_log(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    if s.coeff(0) != &QSqrt2::one() {
        return Err(Error::invalid("series logarithm requires constant term 1"));
    }
    let order = s.order();
    let mut u = s.clone();
    u.coeffs[0] = QSqrt2::zero();
    let mut acc = TruncatedSeries::zero(order);
    let mut upow = TruncatedSeries::one(order);
    for j in 1..=order {
        upow = series_mul(&upow, &u);
        let sign = Rational::alternating_sign(j as u64 + 1);
        acc = acc.add(&upow.scale(&(sign / Rational::from_int(j as i64))));
    }
    Ok(acc)
}

/// First n coefficients b₁..bₙ of the square-root series h with
/// h(z)² = e⁻ᶻ + z − 1 and h′(0) = 1/√2 > 0.
///
/// Equating coefficients in (Σ bₖ zᵏ)² = Σ_{k≥2} (−1)ᵏ zᵏ/k! gives
/// Σ_{l=1}^{k−1} bₗ b_{k−l} = (−1)ᵏ/k! for k ≥ 2, which determines each
/// b_{j+1} from b₁..bⱼ after splitting off the two boundary products
/// 2·b₁·b_{j+1}.
pub fn h_polynomial(n: usize) -> Result<Vec<QSqrt2>> {
    if n == 0 {
        return Err(Error::invalid("h_polynomial requires n >= 1"));
    }
    // 1-indexed work table: b[k] is the coefficient of z^k.
    let mut b = vec![QSqrt2::zero(); n + 1];
    b[1] = QSqrt2::sqrt2_multiple(Rational::new(1, 2)); // 1/√2
    let two_b1_inv = b[1].scale(&Rational::from_int(2)).inverse().unwrap();
    for j in 1..n {
        let sign = Rational::alternating_sign(j as u64);
        let rhs = QSqrt2::from_rational(sign * Rational::new(1, big_factorial(j as u64 + 2)));
        let mut cross = QSqrt2::zero();
        for l in 1..j {
            cross += &b[l + 1] * &b[j - l + 1];
        }
        b[j + 1] = &(&rhs - &cross) * &two_b1_inv;
    }
    Ok(b.split_off(1))
}

/// Coefficients a₁..aₙ of the compositional inverse of Σ bₖ zᵏ, obtained by
/// equating coefficients in h⁻¹(h(z)) = z.
///
/// With b_{k,l} the coefficient of zˡ in (Σ bₘ zᵐ)ᵏ, the identity reads
/// a₁ b₁ = 1 and Σ_{k=1}^{l} aₖ b_{k,l} = 0 for l ≥ 2; since b_{l,l} = b₁ˡ
/// is nonzero, each aₗ follows from a₁..a_{l−1}.
pub fn inverse_coefficients(b: &[QSqrt2], n: usize) -> Result<Vec<QSqrt2>> {
    if b.is_empty() || b[0].is_zero() {
        return Err(Error::invalid(
            "series reversion requires a nonzero linear coefficient b_1",
        ));
    }
    if n == 0 || n > b.len() {
        return Err(Error::invalid(format!(
            "inverse_coefficients needs 1 <= n <= len(b) = {}, got n = {n}",
            b.len()
        )));
    }
    // powers[k][l] = coefficient of z^l in h(z)^k, 1-indexed, l <= n.
    let mut powers = vec![vec![QSqrt2::zero(); n + 1]; n + 1];
    for l in 1..=n {
        powers[1][l] = b[l - 1].clone();
    }
    for k in 1..n {
        for l in (k + 1)..=n {
            let mut acc = QSqrt2::zero();
            for j in k..l {
                let factor = &powers[k][j];
                if !factor.is_zero() {
                    acc += factor * &b[l - j - 1];
                }
            }
            powers[k + 1][l] = acc;
        }
    }

    let mut a = vec![QSqrt2::zero(); n + 1];
    a[1] = b[0].inverse().unwrap();
    for l in 2..=n {
        let mut acc = QSqrt2::zero();
        for k in 1..l {
            acc += &a[k] * &powers[k][l];
        }
        let diag_inv = powers[l][l].inverse().expect("b_1^l is nonzero");
        a[l] = &(-&acc) * &diag_inv;
    }
    Ok(a.split_off(1))
}
