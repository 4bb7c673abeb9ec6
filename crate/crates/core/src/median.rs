//! The median m(x) of the gamma distribution with shape x, its derivative,
//! and φ(x) = log(x/m(x)).
//!
//! m(x) is the unique root of P(x, ·) = 1/2. The solver works on w = log m
//! with a safeguarded Newton iteration inside the bracket
//! (max(ε, x − 1/3), x) guaranteed by the Chen–Rubin bounds; the log
//! variable keeps the iteration well-scaled down to the x → 0 regime where
//! m(x) ≈ e^{−γ}2^{−1/x} collapses towards zero double-exponentially, and
//! `log_m` stays meaningful even below the underflow threshold of m itself.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::{digamma, gamma_density, incgamma_prefactor_ln, regularized_p};

pub mod constants {
    /// Euler–Mascheroni constant γ.
    pub const EULER_GAMMA: f64 = 0.5772156649015329;
    /// log 2 = m(1).
    pub const LN_2: f64 = std::f64::consts::LN_2;
}

/// Default residual tolerance |P(x, m) − 1/2| for the median solver.
pub const DEFAULT_MEDIAN_TOL: f64 = 1e-12;

/// Default tolerance handed to adaptive quadratures.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Below this x the value m itself is reported alongside `log_m` but only the
/// log-domain field carries full information (m ≈ e^{−γ}2^{−1/x} is tiny and
/// eventually subnormal); small-x asymptotics should be checked via `log_m`.
pub const LOG_DOMAIN_THRESHOLD: f64 = 0.02;

/// Result of a median solve.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MedianResult {
    pub x: f64,
    /// The median, exp(`log_m`).
    pub m: f64,
    /// log m(x); the primary value for x below [`LOG_DOMAIN_THRESHOLD`].
    pub log_m: f64,
    /// |P(x, m) − 1/2| at the returned point.
    pub residual: f64,
    pub iterations: u32,
}

/// How to compute m′(x).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MedianPrimeMethod {
    /// Central differences of the median with one Richardson step. Default.
    FiniteDiff,
    /// The implicit-function-theorem route: m′ from the differential equation
    /// e^{−m}m^{x−1}m′ = Γ′(x)/2 − ∫₀^m ln t · e^{−t}t^{x−1} dt, all terms
    /// regularized by Γ(x).
    DiffEq,
}

/// Solves P(x, m) = 1/2. The returned residual satisfies `residual <= tol`;
/// the iteration itself polishes to the floating-point fixed point, so the
/// achieved residual is usually near 1e−16.
pub fn median(x: f64, tol: f64) -> Result<MedianResult> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("median requires x > 0, got {x}")));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("median tolerance must be positive"));
    }

    let g = |w: f64| -> Result<f64> { Ok(regularized_p(x, w.exp())? - 0.5) };

    // Bracket in w = log m from the Chen-Rubin bounds (m < x strictly, and
    // m > x - 1/3 where that is positive) and the small-x asymptote.
    let mut w_hi = x.ln();
    let mut w_lo = if x > 1.0 / 3.0 + 1e-9 {
        (x - 1.0 / 3.0).ln()
    } else {
        -constants::LN_2 / x - constants::EULER_GAMMA - 1.0
    };
    let mut iterations = 0u32;
    for _ in 0..64 {
        iterations += 1;
        if g(w_lo)? < 0.0 {
            break;
        }
        w_lo -= 1.0 + (w_hi - w_lo);
    }

    let mut w = if x > 0.45 {
        (x - 1.0 / 3.0 + 8.0 / (405.0 * x)).ln()
    } else {
        -constants::EULER_GAMMA - constants::LN_2 / x
    };
    if !(w_lo < w && w < w_hi) {
        w = 0.5 * (w_lo + w_hi);
    }

    let mut best_w = w;
    let mut best_residual = f64::INFINITY;
    for _ in 0..100 {
        iterations += 1;
        let gw = g(w)?;
        if gw.abs() < best_residual {
            best_residual = gw.abs();
            best_w = w;
        }
        if gw == 0.0 {
            break;
        }
        if gw < 0.0 {
            w_lo = w;
        } else {
            w_hi = w;
        }
        // dP/dw = exp(x·w − e^w − ln Γ(x))
        let dg = incgamma_prefactor_ln(x, w.exp()).exp();
        let mut next = w - gw / dg;
        if !next.is_finite() || next <= w_lo || next >= w_hi {
            next = 0.5 * (w_lo + w_hi);
        }
        if (next - w).abs() <= f64::EPSILON * (1.0 + w.abs()) {
            break;
        }
        w = next;
    }

    if best_residual > tol {
        return Err(Error::convergence(
            format!("median solve at x = {x} stalled with residual {best_residual:e}"),
            iterations,
        ));
    }
    Ok(MedianResult {
        x,
        m: best_w.exp(),
        log_m: best_w,
        residual: best_residual,
        iterations,
    })
}

/// (1/Γ(x)) ∫₀^m ln t · e^{−t} t^{x−1} dt.
///
/// The log-singular head [0, min(m,1)] is integrated exactly term by term
/// against the Taylor series of e^{−t} (∫₀^δ tᶜ⁻¹ ln t dt = δᶜ(ln δ/c − 1/c²)),
/// which is stable for every x > 0; the smooth tail [1, m], when present,
/// goes to adaptive quadrature.
fn log_weighted_cdf_integral(x: f64, med: &MedianResult, quad_tol: f64) -> Result<f64> {
    let m = med.m;
    let ln_delta = if m < 1.0 { med.log_m } else { 0.0 };

    let ln_gamma_x = crate::special::ln_gamma(x)?;
    let mut head = 0.0;
    let mut j_factorial_sign_ln = 0.0; // ln(j!)
    for j in 0..400 {
        let jf = j as f64;
        if j > 0 {
            j_factorial_sign_ln += jf.ln();
        }
        let c = x + jf;
        let scale = ((c * ln_delta) - ln_gamma_x - j_factorial_sign_ln).exp();
        let term = scale * (ln_delta / c - 1.0 / (c * c));
        let signed = if j % 2 == 0 { term } else { -term };
        head += signed;
        if scale < 1e-18 * head.abs().max(1e-30) && j > 2 {
            break;
        }
    }

    let tail = if m > 1.0 {
        let q = crate::quad::integrate(|t| t.ln() * gamma_density(x, t), 1.0, m, quad_tol)?;
        q.value
    } else {
        0.0
    };
    Ok(head + tail)
}

/// m′(x), by central differences (default) or through the differential
/// equation. Both stay within (0, 1) on the whole half-line and agree to
/// ~1e−6 over [0.2, 100].
pub fn median_prime(x: f64, method: MedianPrimeMethod) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("median_prime requires x > 0, got {x}")));
    }
    match method {
        MedianPrimeMethod::FiniteDiff => {
            let h = x * 1e-5;
            let slope = |step: f64| -> Result<f64> {
                let hi = median(x + step, DEFAULT_MEDIAN_TOL)?.m;
                let lo = median(x - step, DEFAULT_MEDIAN_TOL)?.m;
                Ok((hi - lo) / (2.0 * step))
            };
            let d_h = slope(h)?;
            let d_half = slope(0.5 * h)?;
            Ok((4.0 * d_half - d_h) / 3.0)
        }
        MedianPrimeMethod::DiffEq => {
            let med = median(x, DEFAULT_MEDIAN_TOL)?;
            let rhs = 0.5 * digamma(x)? - log_weighted_cdf_integral(x, &med, DEFAULT_QUAD_TOL)?;
            let density = gamma_density(x, med.m);
            Ok(rhs / density)
        }
    }
}

/// φ(x) = log(x/m(x)) = log x − log m(x); positive for all x > 0.
pub fn phi_num(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("phi requires x > 0, got {x}")));
    }
    Ok(x.ln() - median(x, DEFAULT_MEDIAN_TOL)?.log_m)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent bisection oracle on P(x, ·) − 1/2 in plain m-space.
    fn median_bisect(x: f64) -> f64 {
        let mut lo = 1e-12;
        let mut hi = x;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if regularized_p(x, mid).unwrap() < 0.5 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn median_of_exponential_is_ln2() {
        let r = median(1.0, 1e-12).unwrap();
        assert!((r.m - constants::LN_2).abs() <= 1e-13, "m(1) = {}", r.m);
        assert!(r.residual <= 1e-13);
    }

    #[test]
    fn median_at_two_matches_closed_form_oracle() {
        // P(2, m) = 1 - e^{-m}(1+m) = 1/2, solved by bisection to 50 digits
        // offline: m = 1.678346990016660653413.
        let r = median(2.0, 1e-12).unwrap();
        assert!((r.m - 1.6783469900166607).abs() < 1e-12);
        assert!((r.m - median_bisect(2.0)).abs() < 1e-9);
    }

    #[test]
    fn median_reference_values() {
        for (x, want) in [
            (0.05, 5.573878440746243e-7),
            (0.1, 5.933911044602259e-4),
            (0.5, 0.22746821155978638),
            (5.0, 4.670908882795984),
            (10.0, 9.668714614714131),
            (100.0, 99.66686491931549),
        ] {
            let r = median(x, 1e-12).unwrap();
            assert!(
                (r.m - want).abs() <= 1e-11 * want.max(1.0),
                "m({x}) = {} want {want}",
                r.m
            );
        }
    }

    #[test]
    fn median_respects_chen_rubin_bracket() {
        for &x in &[0.05, 0.2, 1.0 / 3.0, 0.5, 1.0, 3.0, 42.0, 150.0] {
            let r = median(x, 1e-12).unwrap();
            assert!(r.m < x, "upper bound at {x}");
            if x > 1.0 / 3.0 {
                assert!(r.m > x - 1.0 / 3.0, "lower bound at {x}");
            }
            assert!(r.m > 0.0);
        }
    }

    #[test]
    fn bounds_hold_on_wide_log_grid() {
        // 500 log-spaced points spanning [0.02, 200]: Chen-Rubin bracket,
        // sharpened upper bound, monotonicity of m, and x*phi in its range.
        let (a, b) = (0.02f64.ln(), 200f64.ln());
        let mut prev_m = 0.0;
        let mut prev_xphi = f64::INFINITY;
        for i in 0..500 {
            let x = (a + (b - a) * i as f64 / 499.0).exp();
            let r = median(x, 1e-12).unwrap();
            assert!(r.m < x, "m < x at {x}");
            assert!(r.m < x - 1.0 / 3.0 + 1.0 / (18.0 * x), "sharpened bound at {x}");
            if x > 1.0 / 3.0 {
                assert!(r.m > x - 1.0 / 3.0, "lower bound at {x}");
            }
            assert!(r.m > prev_m, "m not increasing at {x}");
            let xphi = x * (x.ln() - r.log_m);
            assert!(xphi > 1.0 / 3.0 && xphi < constants::LN_2, "xphi at {x}");
            assert!(xphi < prev_xphi, "xphi not decreasing at {x}");
            prev_m = r.m;
            prev_xphi = xphi;
        }
    }

    #[test]
    fn median_against_expansion_at_ten() {
        let e = crate::asym::asymp_m(3).unwrap();
        let approx = crate::asym::eval_expansion(&e, 10.0).unwrap();
        let r = median(10.0, 1e-12).unwrap();
        assert!((r.m - approx).abs() < 3e-4);
    }

    #[test]
    fn median_domain_and_tolerance_errors() {
        assert!(median(0.0, 1e-12).is_err());
        assert!(median(-1.0, 1e-12).is_err());
        assert!(median(f64::NAN, 1e-12).is_err());
        assert!(median(1.0, 0.0).is_err());
    }

    #[test]
    fn log_domain_value_for_tiny_x() {
        // m(0.02) ~ 2^{-50}: representable, but log_m is the robust quantity.
        let r = median(0.02, 1e-12).unwrap();
        let predicted = -constants::EULER_GAMMA - constants::LN_2 / 0.02;
        assert!((r.log_m - predicted).abs() < 0.1, "log_m = {}", r.log_m);
        assert!((r.m.ln() - r.log_m).abs() < 1e-12);
    }

    #[test]
    fn median_prime_reference_values() {
        // Frozen from 50-digit Richardson differences of the mpmath median.
        for (x, want, tol) in [
            (0.1, 0.04159774247876045, 1e-7),
            (1.0, 0.9680448305369613, 1e-8),
            (2.0, 0.9932948937493149, 1e-8),
            (10.0, 0.9997879018337420, 1e-8),
        ] {
            let fd = median_prime(x, MedianPrimeMethod::FiniteDiff).unwrap();
            assert!((fd - want).abs() < tol, "m'({x}) fd = {fd}, want {want}");
        }
    }

    #[test]
    fn median_prime_methods_agree() {
        for &x in &[0.2, 0.5, 1.0, 2.0, 10.0, 50.0, 100.0] {
            let fd = median_prime(x, MedianPrimeMethod::FiniteDiff).unwrap();
            let de = median_prime(x, MedianPrimeMethod::DiffEq).unwrap();
            assert!(
                (fd - de).abs() <= 1e-6,
                "methods disagree at {x}: {fd} vs {de}"
            );
            assert!(fd > 0.0 && fd < 1.0);
            assert!(de > 0.0 && de < 1.0);
        }
    }

    #[test]
    fn median_prime_small_x_asymptote() {
        // m'(x) ~ (log 2) e^{-γ} 2^{-1/x} / x² near zero; at x = 0.1 the true
        // value is within 25% of the leading term.
        let leading =
            constants::LN_2 * (-constants::EULER_GAMMA).exp() * (2.0_f64).powf(-10.0) / 0.01;
        let got = median_prime(0.1, MedianPrimeMethod::FiniteDiff).unwrap();
        assert!(got / leading > 0.8 && got / leading < 1.25, "ratio {}", got / leading);
    }

    #[test]
    fn phi_reference_values() {
        // phi(1) = log(1/log 2)
        assert!((phi_num(1.0).unwrap() - 0.36651292058166435).abs() < 1e-12);
        // phi(10) ~ 1/30 + 29/81000
        let phi10 = phi_num(10.0).unwrap();
        assert!((phi10 - (1.0 / 30.0 + 29.0 / 81000.0)).abs() < 2e-5);
        // x phi(x) at 0.05 sits in (1/3, log 2), close to the log 2 end
        let xphi = 0.05 * phi_num(0.05).unwrap();
        assert!((xphi - 0.5702136128422311).abs() < 1e-9);
        assert!(xphi > 1.0 / 3.0 && xphi < constants::LN_2);
        assert!(phi_num(-1.0).is_err());
    }
}
