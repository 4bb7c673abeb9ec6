//! The auxiliary function ξ(t) = u′(t) + v′(t).
//!
//! u and v are the two inverse branches of f(z) = e⁻ᶻ + z on [1, ∞):
//! u(t) ≤ 0 ≤ v(t) with e^{−u(t)} + u(t) = e^{−v(t)} + v(t) = t. ξ increases
//! from 2/3 at t = 1 towards 1 and is concave on [1, ∞); its derivatives at
//! 1 drive every asymptotic expansion in this crate and the large-x behaviour
//! of Ramanujan's θ.
//!
//! [`table`] computes ξ⁽ᵏ⁾(1) exactly through the reversion of the
//! square-root series h; [`eval`] evaluates ξ and ξ′ on the real axis with a
//! hybrid Taylor/branch-solving scheme.

mod eval;
mod table;

pub use eval::{
    solve_branches, xi_eval, xi_prime_eval, BranchPair, DEFAULT_SOLVER_TOL, SWITCH_RADIUS,
};
pub use table::{xi_derivatives, XiDerivativeTable};
