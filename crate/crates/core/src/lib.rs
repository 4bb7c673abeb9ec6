//! Computation and verification toolkit for the median of the gamma
//! distribution.
//!
//! The crate has two halves that check each other:
//!
//! * **Exact half** — arbitrary-precision rational arithmetic over ℚ and
//!   ℚ(√2) and a truncated-power-series kernel ([`exact`]), used to compute
//!   the derivatives of the auxiliary function ξ at 1 ([`xi`]) and the
//!   asymptotic expansions of φ(x) = log(x/m(x)), m(x) and m′(x) at
//!   infinity ([`asym`]). Every coefficient is an exact fraction.
//!
//! * **Floating-point half** — the gamma-distribution median m(x) itself via
//!   incomplete-gamma inversion ([`median`], [`special`]), real-axis
//!   evaluation of ξ and ξ′ ([`xi`]), and Ramanujan's θ ([`ramanujan`]).
//!
//! The [`verify`] module runs every inequality and identity asserted about
//! these functions (Chen–Rubin bounds, monotonicity of xφ(x), the
//! Laplace-transform identity linking φ and ξ, expansion residual decay,
//! θ bounds) and produces machine-readable reports.

pub mod asym;
pub mod error;
pub mod exact;
pub mod median;
pub mod quad;
pub mod ramanujan;
pub mod special;
pub mod verify;
pub mod xi;

pub use error::{Error, Result};
