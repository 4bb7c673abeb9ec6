//! Ramanujan's θ: eⁿ/2 = Σ_{k<n} nᵏ/k! + θ(n)·nⁿ/n!.
//!
//! θ(n) lies in (1/3, 1/2), decreasing towards 1/3. Three routes are
//! implemented and cross-checked: the defining sum (compensated summation;
//! the cancellation between eⁿ/2 and the partial sum is O(√n)·ε relative to
//! the bracket nⁿ/n!), the Laplace transform θ(x) = (x/2)∫₀^∞ e^{−xt}ξ(t+1)dt
//! valid for real x, and the divergent asymptotic series Σ ξ⁽ᵏ⁾(1)/(2xᵏ).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::median::{median, DEFAULT_MEDIAN_TOL};
use crate::quad::integrate;
use crate::xi::{xi_eval, xi_prime_eval, XiDerivativeTable};

/// Largest accepted integer argument; factorial-scale intermediates stay
/// representable in log form well beyond, but e^n itself must stay finite.
pub const MAX_THETA_N: u32 = 170;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ThetaMethod {
    Sum,
    Integral,
    Series,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ThetaResult {
    pub argument: f64,
    pub theta: f64,
    pub method: ThetaMethod,
    /// Estimated absolute error of `theta`.
    pub est_error: f64,
}

fn neumaier(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// θ(n) from the defining sum, for 1 ≤ n ≤ [`MAX_THETA_N`].
pub fn theta_integer(n: u32) -> Result<ThetaResult> {
    if n == 0 || n > MAX_THETA_N {
        return Err(Error::domain(format!(
            "theta_integer requires 1 <= n <= {MAX_THETA_N}, got {n}"
        )));
    }
    let nf = n as f64;
    // Terms n^k/k! for k = 0..n-1; the last one equals n^n/n!.
    let mut term = 1.0;
    let terms = (0..n).map(|k| {
        if k > 0 {
            term *= nf / k as f64;
        }
        term
    });
    let partial = neumaier(terms);
    // after the loop `term` is n^{n-1}/(n-1)! = n^n/n!
    let bracket = term;
    let half_exp = 0.5 * nf.exp();
    let theta = (half_exp - partial) / bracket;
    let est_error = f64::EPSILON * (half_exp + partial) / bracket;
    Ok(ThetaResult {
        argument: nf,
        theta,
        method: ThetaMethod::Sum,
        est_error,
    })
}

/// θ(x) = (x/2)∫₀^∞ e^{−xt} ξ(t+1) dt for real x > 0.
///
/// Substituting s = xt gives θ(x) = ½∫₀^∞ e^{−s} ξ(s/x + 1) ds, whose
/// integrand is O(1)-scaled for every x; it is integrated adaptively over
/// [0, 50] and, since ξ ≤ 1, the discarded tail is below
/// ½∫₅₀^∞ e^{−s} ds = e^{−50}/2, which is folded into the error estimate.
pub fn theta_real(x: f64, tol: f64) -> Result<ThetaResult> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("theta_real requires x > 0, got {x}")));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("theta_real tolerance must be positive"));
    }
    let table = XiDerivativeTable::standard();
    let cutoff = 50.0;
    let q = integrate(
        |s| match xi_eval(s / x + 1.0, table) {
            Ok(v) => (-s).exp() * v,
            Err(_) => f64::NAN,
        },
        0.0,
        cutoff,
        tol,
    )?;
    if q.value.is_nan() {
        return Err(Error::convergence(
            format!("xi evaluation failed inside the theta integral at x = {x}"),
            q.evaluations,
        ));
    }
    let tail_bound = 0.5 * (-cutoff).exp();
    Ok(ThetaResult {
        argument: x,
        theta: 0.5 * q.value,
        method: ThetaMethod::Integral,
        est_error: 0.5 * q.abs_error + tail_bound,
    })
}

/// Partial sum Σ_{k<n_terms} ξ⁽ᵏ⁾(1)/(2xᵏ) of the asymptotic (divergent)
/// series for θ(x); accurate only for large x.
pub fn theta_series(x: f64, n_terms: usize, table: &XiDerivativeTable) -> Result<f64> {
    if n_terms == 0 || n_terms > table.len() {
        return Err(Error::invalid(format!(
            "theta_series needs 1 <= n_terms <= {} table entries, got {n_terms}",
            table.len()
        )));
    }
    let w = 1.0 / x;
    let mut acc = 0.0;
    for k in (0..n_terms).rev() {
        acc = acc * w + 0.5 * table.get(k).to_f64();
    }
    Ok(acc)
}

/// |LHS − RHS| of the Choi identity
/// 1 − θ(n) = (e/n)ⁿ ∫ₙ^{m(n+1)} tⁿe^{−t} dt,
/// with the integrand evaluated in log form to dodge the nⁿ overflow.
pub fn choi_identity_residual(n: u32) -> Result<f64> {
    if n == 0 || n > MAX_THETA_N {
        return Err(Error::domain(format!(
            "choi_identity_residual requires 1 <= n <= {MAX_THETA_N}, got {n}"
        )));
    }
    let lhs = 1.0 - theta_integer(n)?.theta;
    let nf = n as f64;
    let upper = median(nf + 1.0, DEFAULT_MEDIAN_TOL)?.m;
    let q = integrate(
        |t| (nf * (t / nf).ln() + (nf - t)).exp(),
        nf,
        upper,
        1e-12,
    )?;
    Ok((lhs - q.value).abs())
}

/// Watson's auxiliary function φ(t) = (135/8)·ξ′(t+1), normalized to 1 at 0.
pub fn watson_phi(t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::domain(format!("watson_phi requires t >= 0, got {t}")));
    }
    Ok(135.0 / 8.0 * xi_prime_eval(t + 1.0, XiDerivativeTable::standard())?)
}
