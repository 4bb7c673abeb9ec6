//! Acceptance suite: the ten end-to-end checks the project promises, each
//! printing one PASS/FAIL line (run with `--nocapture` to see them).

use std::sync::OnceLock;
use std::time::Instant;

use gamma_median::asym::{asymp_m, asymp_phi};
use gamma_median::median::{constants::LN_2, median};
use gamma_median::verify::{
    check_bounds, check_expansion_residuals, check_key_identity, golden, run_suite, CheckResult,
    CheckSpec, Grid, Spacing, Suite, VerifyConfig,
};
use gamma_median::xi::xi_derivatives;

fn conclude(criterion: u32, description: &str, pass: bool, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    println!("acceptance criterion {criterion:02} {status} - {description} ({detail})");
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn bounds_results() -> &'static Vec<CheckResult> {
    static RESULTS: OnceLock<Vec<CheckResult>> = OnceLock::new();
    RESULTS.get_or_init(|| {
        let spec = CheckSpec {
            name: "bounds".into(),
            grid: Grid::new(0.05, 100.0, 400, Spacing::Log),
            tolerance: 1e-12,
        };
        check_bounds(&spec)
    })
}

fn theta_results() -> &'static Vec<CheckResult> {
    static RESULTS: OnceLock<Vec<CheckResult>> = OnceLock::new();
    RESULTS.get_or_init(|| run_suite(Suite::Theta, &VerifyConfig::default()).checks)
}

fn subset_passes(results: &[CheckResult], names: &[&str]) -> (bool, String) {
    let mut pass = true;
    let mut detail = String::new();
    for name in names {
        let r = results
            .iter()
            .find(|r| r.name == *name)
            .unwrap_or_else(|| panic!("check {name} missing"));
        pass &= r.pass;
        if !detail.is_empty() {
            detail.push_str(", ");
        }
        detail.push_str(&format!("{}: {:.3e}", r.name, r.worst_violation));
        if let Some(e) = &r.error {
            detail.push_str(&format!(" [{e}]"));
        }
    }
    (pass, detail)
}

#[test]
fn criterion_01_exact_golden_tables() {
    let start = Instant::now();
    let xi = xi_derivatives(11).unwrap();
    let phi = asymp_phi(10).unwrap();
    let m = asymp_m(10).unwrap();

    let xi_ok = xi.values() == golden::xi_derivatives_11().as_slice();
    let phi_ok = phi.inv_coeffs() == golden::phi_coefficients_10().as_slice()
        && phi.is_pure_inverse();
    let m_ok = m.inv_coeffs() == golden::m_coefficients_9().as_slice()
        && m.linear_coeff() == &gamma_median::exact::Rational::one()
        && m.const_coeff() == &gamma_median::exact::Rational::new(-1, 3);
    let elapsed = start.elapsed();
    let in_time = elapsed.as_secs_f64() < 5.0;

    conclude(
        1,
        "xi_derivatives(11), asymp_phi(10), asymp_m(10) equal the exact tables",
        xi_ok && phi_ok && m_ok && in_time,
        &format!("xi {xi_ok}, phi {phi_ok}, m {m_ok}, elapsed {elapsed:.2?} (< 5 s)"),
    );
}

#[test]
fn criterion_02_median_at_one_is_log_two() {
    let r = median(1.0, 1e-12).unwrap();
    let delta = (r.m - LN_2).abs();
    conclude(
        2,
        "m(1) = log 2 within 1e-12",
        delta <= 1e-12,
        &format!("|m(1) - log 2| = {delta:.3e}"),
    );
}

#[test]
fn criterion_03_chen_rubin_bounds_on_grid() {
    let start = Instant::now();
    let grid = Grid::new(0.05, 100.0, 400, Spacing::Log).values().unwrap();
    let mut worst_lower = f64::INFINITY;
    let mut worst_upper = f64::INFINITY;
    let mut worst_sharp = f64::INFINITY;
    for &x in &grid {
        let m = median(x, 1e-12).unwrap().m;
        worst_upper = worst_upper.min(x - m);
        worst_sharp = worst_sharp.min(x - 1.0 / 3.0 + 1.0 / (18.0 * x) - m);
        if x > 1.0 / 3.0 {
            worst_lower = worst_lower.min(m - (x - 1.0 / 3.0));
        }
    }
    let elapsed = start.elapsed();
    let pass = worst_lower > 0.0
        && worst_upper > 0.0
        && worst_sharp > 0.0
        && elapsed.as_secs_f64() < 10.0;
    conclude(
        3,
        "x - 1/3 < m(x) < x and m(x) < x - 1/3 + 1/(18x) strictly on 400 log points in [0.05, 100]",
        pass,
        &format!(
            "min slacks: lower {worst_lower:.3e}, upper {worst_upper:.3e}, sharpened {worst_sharp:.3e}, elapsed {elapsed:.2?} (< 10 s)"
        ),
    );
}

#[test]
fn criterion_04_xphi_monotone_between_limits() {
    let (pass, detail) = subset_passes(
        bounds_results(),
        &[
            "xphi_range",
            "xphi_decreasing",
            "xphi_limit_small_x",
            "xphi_limit_large_x",
        ],
    );
    conclude(
        4,
        "1/3 < x*phi(x) < log 2, strictly decreasing, with the predicted endpoint behaviour",
        pass,
        &detail,
    );
}

#[test]
fn criterion_05_median_derivative_range_and_expansion() {
    let (pass, detail) = subset_passes(
        bounds_results(),
        &[
            "m_prime_range_finite_diff",
            "m_prime_range_diff_eq",
            "m_prime_expansion_agreement",
        ],
    );
    conclude(
        5,
        "0 < m'(x) < 1 on [0.2, 100] by both methods; matches 1 - 8/(405x^2) - 368/(25515x^3) to 5e-6 at x in {10, 20, 40}",
        pass,
        &detail,
    );
}

#[test]
fn criterion_06_key_identity() {
    let r = check_key_identity(&[0.5, 1.0, 2.0, 5.0], 1e-8);
    conclude(
        6,
        "2 * int_0^phi exp(-x(e^-u+u)) du = int_1^inf xi(t) e^{-xt} dt within 1e-8 at x in {0.5, 1, 2, 5}",
        r.pass,
        &format!("max |LHS - RHS| = {:.3e} at x = {}", r.worst_violation, r.worst_x),
    );
}

#[test]
fn criterion_07_theta_bounds_and_cross_checks() {
    let (pass, detail) = subset_passes(
        theta_results(),
        &[
            "theta_bounds",
            "theta_at_one",
            "theta_cross_method",
            "choi_identity",
        ],
    );
    conclude(
        7,
        "1/3 < theta(n) < 1/2 for n = 1..100; theta(1) = e/2 - 1 to 1e-12; sum-vs-integral to 1e-7; Choi residual to 1e-7",
        pass,
        &detail,
    );
}

#[test]
fn criterion_08_expansion_residual_decay() {
    let results = check_expansion_residuals(&[2, 3, 4], &[10.0, 20.0, 40.0, 80.0]);
    let pass = results.iter().all(|r| r.pass);
    let detail = results
        .iter()
        .map(|r| format!("{}: min drop {:.3e}", r.name, r.worst_violation))
        .collect::<Vec<_>>()
        .join(", ");
    conclude(
        8,
        "|m(x) - expansion_n(x)| * x^n decreases along x in {10, 20, 40, 80} for n in {2, 3, 4}",
        pass,
        &detail,
    );
}

#[test]
fn criterion_09_series_kernel_properties() {
    let report = run_suite(Suite::Coeffs, &VerifyConfig::default());
    let (pass, detail) = subset_passes(
        &report.checks,
        &["series_round_trip", "h_square_identity", "coefficient_parity"],
    );
    conclude(
        9,
        "h^{-1}(h(z)) = z exactly to order 24; h(z)^2 = e^{-z} + z - 1 exactly; coefficient parity holds",
        pass,
        &detail,
    );
}

#[test]
fn criterion_10_small_x_asymptotics() {
    let (pass, detail) = subset_passes(
        bounds_results(),
        &["small_x_power", "small_x_ratio_monotone"],
    );
    conclude(
        10,
        "m(x)^x in [0.45, 0.55] at x = 0.05 and m(x)/(e^-gamma 2^-1/x) -> 1 monotonically",
        pass,
        &detail,
    );
}
