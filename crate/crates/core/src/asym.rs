//! Exact asymptotic expansions of φ(x), m(x), m′(x) at infinity.
//!
//! Everything here manipulates polynomials in w = 1/x with exact rational
//! coefficients. The φ-expansion is produced by the fixed-point iteration
//!
//! ```text
//! φ ← Σ_{k} ξ⁽ᵏ⁾(1)/(2x^{k+1})  −  Σ_{k} (−1)ᵏ xᵏ/k! ∫₀^φ (u+e⁻ᵘ−1)ᵏ du
//! ```
//!
//! starting from 1/(3x), where the integrand powers are replaced by their
//! Taylor polynomials and each step is truncated to the order it can
//! actually certify. m(x) = x·e^{−φ(x)} then yields the m-expansion through
//! the exact series exponential.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{series_exp, Rational, TruncatedSeries};
use crate::xi::{xi_derivatives, XiDerivativeTable};

/// An expansion a·x + b + Σ_{k≥1} cₖ x⁻ᵏ with exact coefficients, valid
/// modulo o(x^{−order}) where order is the number of inverse coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsymptoticExpansion {
    linear: Rational,
    constant: Rational,
    /// Entry k−1 is the coefficient of x⁻ᵏ.
    inv: Vec<Rational>,
}

impl AsymptoticExpansion {
    pub fn new(linear: Rational, constant: Rational, inv: Vec<Rational>) -> Self {
        AsymptoticExpansion {
            linear,
            constant,
            inv,
        }
    }

    /// Expansion with only inverse powers; `inv[k-1]` is the x⁻ᵏ coefficient.
    pub fn pure_inverse(inv: Vec<Rational>) -> Self {
        AsymptoticExpansion {
            linear: Rational::zero(),
            constant: Rational::zero(),
            inv,
        }
    }

    pub fn zero() -> Self {
        AsymptoticExpansion::pure_inverse(Vec::new())
    }

    pub fn linear_coeff(&self) -> &Rational {
        &self.linear
    }

    pub fn const_coeff(&self) -> &Rational {
        &self.constant
    }

    pub fn inv_coeffs(&self) -> &[Rational] {
        &self.inv
    }

    /// Coefficient of x⁻ᵏ (k ≥ 1), zero beyond the stored order.
    pub fn inv_coeff(&self, k: usize) -> Rational {
        assert!(k >= 1, "inverse coefficients start at x^-1");
        self.inv.get(k - 1).cloned().unwrap_or_else(Rational::zero)
    }

    /// Number of inverse coefficients; the expansion is valid modulo
    /// o(x^{−order}).
    pub fn order(&self) -> usize {
        self.inv.len()
    }

    pub fn is_pure_inverse(&self) -> bool {
        self.linear.is_zero() && self.constant.is_zero()
    }

    fn sub(&self, other: &AsymptoticExpansion) -> AsymptoticExpansion {
        let len = self.inv.len().max(other.inv.len());
        let inv = (1..=len)
            .map(|k| self.inv_coeff(k) - other.inv_coeff(k))
            .collect();
        AsymptoticExpansion {
            linear: &self.linear - &other.linear,
            constant: &self.constant - &other.constant,
            inv,
        }
    }
}

/// Σ_{k=1}^{n} ξ⁽ᵏ⁻¹⁾(1)/(2xᵏ).
pub fn xi_sum(n: usize) -> Result<AsymptoticExpansion> {
    if n == 0 {
        return Err(Error::invalid("xi_sum requires n >= 1"));
    }
    let table = xi_derivatives(n)?;
    Ok(xi_sum_from_table(&table, n))
}

fn xi_sum_from_table(table: &XiDerivativeTable, n: usize) -> AsymptoticExpansion {
    let half = Rational::new(1, 2);
    AsymptoticExpansion::pure_inverse((0..n).map(|k| table.get(k) * &half).collect())
}

/// Taylor coefficients t_{k,l} of (e⁻ᵘ + u − 1)ᵏ = Σ_{l≥2k} t_{k,l} uˡ,
/// returned for l = 2k..=max_degree (empty if max_degree < 2k).
///
/// Row 1 is t_{1,m} = (−1)ᵐ/m!; row k+1 follows by Cauchy multiplication
/// with the base series: t_{k+1,m} = Σ_{l=2}^{m−2k} (−1)ˡ/l! · t_{k,m−l}.
pub fn integrand_power_coeffs(k: usize, max_degree: usize) -> Result<Vec<Rational>> {
    if k == 0 {
        return Err(Error::invalid("integrand_power_coeffs requires k >= 1"));
    }
    if max_degree < 2 * k {
        return Ok(Vec::new());
    }
    let row = integrand_rows(k, max_degree);
    Ok(row[2 * k..=max_degree].to_vec())
}

/// Dense row t_{k,·} for degrees 0..=max_degree (zeros below 2k).
fn integrand_rows(k: usize, max_degree: usize) -> Vec<Rational> {
    let base: Vec<Rational> = (0..=max_degree)
        .map(|m| {
            if m < 2 {
                Rational::zero()
            } else {
                Rational::alternating_sign(m as u64) * Rational::inv_factorial(m as u64)
            }
        })
        .collect();
    let mut row = base.clone();
    for j in 1..k {
        let mut next = vec![Rational::zero(); max_degree + 1];
        for (m, slot) in next.iter_mut().enumerate().skip(2 * (j + 1)) {
            let mut acc = Rational::zero();
            for l in 2..=(m - 2 * j) {
                if !row[m - l].is_zero() {
                    acc += &base[l] * &row[m - l];
                }
            }
            *slot = acc;
        }
        row = next;
    }
    row
}

// Dense polynomial-in-w helpers, truncating products at `dmax`.

fn poly_mul(a: &[Rational], b: &[Rational], dmax: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dmax + 1];
    for (i, ai) in a.iter().enumerate().take(dmax + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(dmax + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Σ_{k=1}^{n} ((−1)ᵏ xᵏ/k!) ∫₀^φ (u + e⁻ᵘ − 1)ᵏ du with the integrand
/// replaced by its Taylor polynomial of order n+k, expanded exactly in
/// powers of 1/x and truncated to o(x^{−(n+1)}).
///
/// `phi` must be a pure 1/x-expansion. n = 0 yields the zero expansion.
pub fn sum_of_int(n: usize, phi: &AsymptoticExpansion) -> Result<AsymptoticExpansion> {
    if !phi.is_pure_inverse() {
        return Err(Error::invalid(
            "sum_of_int requires an expansion with zero linear and constant parts",
        ));
    }
    if n == 0 {
        return Ok(AsymptoticExpansion::zero());
    }
    let keep = n + 1;
    let mut total = vec![Rational::zero(); keep + 1];

    // phi as a dense polynomial in w = 1/x.
    let mut phi_w = vec![Rational::zero(); phi.order() + 1];
    for k in 1..=phi.order() {
        phi_w[k] = phi.inv_coeff(k);
    }

    for k in 1..=n {
        let dmax = keep + k; // degrees surviving the later shift by x^k
        let row = integrand_rows(k, n + k);
        // T = Σ_m t_{k,m} · φ^{m+1}/(m+1)
        let mut t_poly = vec![Rational::zero(); dmax + 1];
        let mut phi_pow = vec![Rational::one()]; // φ^0
        let mut pow_deg = 0usize;
        for (m, coeff) in row.iter().enumerate().take(n + k + 1).skip(2 * k) {
            while pow_deg < m + 1 {
                phi_pow = poly_mul(&phi_pow, &phi_w, dmax);
                pow_deg += 1;
            }
            if coeff.is_zero() {
                continue;
            }
            let scale = coeff / &Rational::from_int(m as i64 + 1);
            for (d, c) in phi_pow.iter().enumerate() {
                if !c.is_zero() {
                    t_poly[d] += c * &scale;
                }
            }
        }
        // add (−1)^k/k! · x^k · T
        let factor = Rational::alternating_sign(k as u64) * Rational::inv_factorial(k as u64);
        for (d, c) in t_poly.iter().enumerate() {
            if d >= k && d - k <= keep && !c.is_zero() {
                total[d - k] += c * &factor;
            }
        }
    }

    debug_assert!(total[0].is_zero(), "sum_of_int produced a constant term");
    Ok(AsymptoticExpansion::pure_inverse(total[1..].to_vec()))
}

/// Exact coefficients c₁..cₙ of φ(x) = Σ cₖ x⁻ᵏ + o(x⁻ⁿ), c₁ = 1/3.
pub fn asymp_phi(n: usize) -> Result<AsymptoticExpansion> {
    if n == 0 {
        return Err(Error::invalid("asymp_phi requires n >= 1"));
    }
    let table = xi_derivatives(n)?;
    let mut phi = AsymptoticExpansion::pure_inverse(vec![Rational::new(1, 3)]);
    for k in 1..n {
        let integrals = sum_of_int(k, &phi)?;
        phi = xi_sum_from_table(&table, k + 1).sub(&integrals);
        debug_assert_eq!(phi.order(), k + 1);
    }
    Ok(phi)
}

/// Exact expansion of m(x) = x·e^{−φ(x)}: x − 1/3 + Σ_{k=1}^{n−1} mₖ x⁻ᵏ.
pub fn asymp_m(n: usize) -> Result<AsymptoticExpansion> {
    if n == 0 {
        return Err(Error::invalid("asymp_m requires n >= 1"));
    }
    let phi = asymp_phi(n)?;
    // −φ as a truncated series in w = 1/x, then exp.
    let mut coeffs = vec![Rational::zero(); n + 1];
    for k in 1..=n {
        coeffs[k] = -phi.inv_coeff(k);
    }
    let exp = series_exp(&TruncatedSeries::from_rational_coeffs(&coeffs))?;
    let d: Vec<Rational> = exp
        .coeffs()
        .iter()
        .map(|c| {
            c.as_rational()
                .unwrap_or_else(|| panic!("sqrt2 part leaked into the m-expansion: {c}"))
                .clone()
        })
        .collect();
    debug_assert_eq!(d[0], Rational::one());
    Ok(AsymptoticExpansion::new(
        d[0].clone(),
        d[1].clone(),
        d[2..].to_vec(),
    ))
}

/// Term-wise d/dx: a·x + b + Σ cₖ x⁻ᵏ ↦ a − Σ k·cₖ x^{−(k+1)}.
pub fn differentiate_expansion(e: &AsymptoticExpansion) -> AsymptoticExpansion {
    let mut inv = vec![Rational::zero(); e.order() + 1];
    for k in 1..=e.order() {
        inv[k] = -(Rational::from_int(k as i64) * e.inv_coeff(k));
    }
    AsymptoticExpansion::new(Rational::zero(), e.linear.clone(), inv)
}

/// Floating-point evaluation, Horner in 1/x.
pub fn eval_expansion(e: &AsymptoticExpansion, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!(
            "expansion evaluation requires x > 0, got {x}"
        )));
    }
    let w = 1.0 / x;
    let tail = e
        .inv
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * w + c.to_f64());
    Ok(e.linear.to_f64() * x + e.constant.to_f64() + w * tail)
}
