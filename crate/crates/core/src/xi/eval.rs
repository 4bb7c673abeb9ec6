//! Real-axis evaluation of ξ and ξ′ for t ≥ 1.
//!
//! Away from t = 1 the defining branch formulas are evaluated directly after
//! root-solving e⁻ᶻ + z = t on each side of zero. Near t = 1 both branches
//! behave like ±√(2(t−1)) and the two reciprocals cancel to O(1), so the
//! direct formula loses ~√(t−1) of precision; inside |t−1| < [`SWITCH_RADIUS`]
//! the exact Taylor table takes over (its radius of convergence is 2π, so the
//! series is rapidly convergent there).

use crate::error::{Error, Result};

use super::XiDerivativeTable;

/// Radius around t = 1 inside which ξ/ξ′ are summed from the Taylor table.
pub const SWITCH_RADIUS: f64 = 0.5;

/// Default residual tolerance for the branch root-solver.
pub const DEFAULT_SOLVER_TOL: f64 = 1e-14;

/// The two inverse branches of f(z) = e⁻ᶻ + z at a point t ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct BranchPair {
    pub t: f64,
    /// Root in (−∞, 0].
    pub u: f64,
    /// Root in [0, ∞).
    pub v: f64,
}

/// Solves e⁻ᶻ + z = t for both branches with |residual| ≤ tol·max(1, t)
/// (the residual is measured relative to the scale of t: the exponential
/// itself has ulp(t)-level representation noise, so an absolute target
/// below that is not meaningful).
///
/// Each branch is a safeguarded Newton iteration inside a sign-bracketing
/// interval, with bisection whenever a Newton step leaves the bracket. The
/// initial guesses come from f(z) − 1 ≈ z²/2 near 1 and from the dominant
/// term of each branch for large t.
pub fn solve_branches(t: f64, tol: f64) -> Result<BranchPair> {
    if !(t >= 1.0) {
        return Err(Error::domain(format!("solve_branches requires t >= 1, got {t}")));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("solver tolerance must be positive"));
    }
    if t == 1.0 {
        return Ok(BranchPair { t, u: 0.0, v: 0.0 });
    }
    let tol_scaled = tol * t.max(1.0);

    // v-branch: g(v) = e^{-v} + v - t increases on [0, t]; g(0) = 1 - t < 0,
    // g(t) = e^{-t} > 0.
    let v0 = if t < 2.0 {
        (2.0 * (t - 1.0)).sqrt()
    } else {
        t - (-t).exp()
    };
    let v = newton_bracketed(|z| ((-z).exp() + z - t, 1.0 - (-z).exp()), 0.0, t, v0, tol_scaled)?;

    // u-branch via w = -u >= 0: g(w) = e^{w} - w - t increases on [0, inf);
    // g(0) = 1 - t < 0 and g(ln(2t) + 2) > 0.
    let w0 = if t < 2.0 {
        (2.0 * (t - 1.0)).sqrt()
    } else {
        (t + t.ln()).ln()
    };
    let w_hi = (2.0 * t).ln() + 2.0;
    let w = newton_bracketed(|z| (z.exp() - z - t, z.exp() - 1.0), 0.0, w_hi, w0, tol_scaled)?;

    Ok(BranchPair { t, u: -w, v })
}

/// Safeguarded Newton on an increasing function with g(lo) <= 0 <= g(hi).
/// Iterates to the floating-point fixed point (not merely to `tol`), then
/// checks the residual against `tol`.
fn newton_bracketed(
    g_and_dg: impl Fn(f64) -> (f64, f64),
    mut lo: f64,
    mut hi: f64,
    x0: f64,
    tol: f64,
) -> Result<f64> {
    let mut x = x0.clamp(lo, hi);
    let mut residual = f64::INFINITY;
    for iteration in 0..100 {
        let (g, dg) = g_and_dg(x);
        residual = g.abs();
        if g == 0.0 {
            return Ok(x);
        }
        if g < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - g / dg;
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        let step = (next - x).abs();
        if step <= f64::EPSILON * (1.0 + x.abs()) {
            if residual <= tol {
                return Ok(x);
            }
            return Err(Error::convergence(
                format!("branch solve stalled with residual {residual:e}"),
                iteration,
            ));
        }
        x = next;
    }
    if residual <= tol {
        Ok(x)
    } else {
        Err(Error::convergence(
            format!("branch solve residual {residual:e} above tolerance {tol:e}"),
            100,
        ))
    }
}

fn xi_direct(t: f64) -> Result<f64> {
    let b = solve_branches(t, DEFAULT_SOLVER_TOL)?;
    Ok(1.0 / (1.0 - (-b.v).exp()) + 1.0 / (1.0 - (-b.u).exp()))
}

fn xi_prime_direct(t: f64) -> Result<f64> {
    let b = solve_branches(t, DEFAULT_SOLVER_TOL)?;
    let ev = (-b.v).exp();
    let eu = (-b.u).exp();
    let dv = 1.0 - ev;
    let du = 1.0 - eu;
    Ok(-eu / (du * du * du) - ev / (dv * dv * dv))
}

/// ξ(t) for t ≥ 1: Taylor series inside |t−1| < [`SWITCH_RADIUS`], branch
/// formula 1/(1−e^{−v}) + 1/(1−e^{−u}) outside.
pub fn xi_eval(t: f64, table: &XiDerivativeTable) -> Result<f64> {
    if !(t >= 1.0) {
        return Err(Error::domain(format!("xi is evaluated for t >= 1, got {t}")));
    }
    if (t - 1.0).abs() < SWITCH_RADIUS {
        Ok(table.series_at(t))
    } else {
        xi_direct(t)
    }
}

/// ξ′(t) for t ≥ 1, by the differentiated branch formula
/// ξ′ = −e^{−u}/(1−e^{−u})³ − e^{−v}/(1−e^{−v})³ away from 1 and the Taylor
/// table near 1.
pub fn xi_prime_eval(t: f64, table: &XiDerivativeTable) -> Result<f64> {
    if !(t >= 1.0) {
        return Err(Error::domain(format!("xi' is evaluated for t >= 1, got {t}")));
    }
    if (t - 1.0).abs() < SWITCH_RADIUS {
        Ok(table.series_prime_at(t))
    } else {
        xi_prime_direct(t)
    }
}
