//! `gamma-median`: exact coefficient tables, gamma-median numerics,
//! Ramanujan's theta, and the verification harness, from the shell.
//!
//! Exact rationals are always emitted as "p/q" strings; reports are
//! timestamp-free JSON so identical invocations produce identical bytes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use gamma_median::asym::{asymp_m, asymp_phi, differentiate_expansion, eval_expansion, AsymptoticExpansion};
use gamma_median::median::{median, median_prime, MedianPrimeMethod, DEFAULT_MEDIAN_TOL};
use gamma_median::ramanujan::{theta_integer, theta_real, theta_series};
use gamma_median::verify::{self, Grid, Suite, VerifyConfig};
use gamma_median::xi::{xi_derivatives, XiDerivativeTable};

#[derive(Parser)]
#[command(
    name = "gamma-median",
    version,
    about = "Median of the gamma distribution: exact series, numerics, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoeffTable {
    /// Derivatives of xi at 1.
    Xi,
    /// Coefficients of the phi(x) expansion at infinity.
    Phi,
    /// Coefficients of the m(x) expansion at infinity.
    M,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThetaMethodArg {
    /// Defining sum (integer arguments).
    Sum,
    /// Laplace transform of xi (any positive argument).
    Integral,
    /// Asymptotic partial sum.
    Series,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpandTarget {
    Phi,
    M,
    Mprime,
}

#[derive(Subcommand)]
enum Command {
    /// Print an exact coefficient table.
    Coeffs {
        table: CoeffTable,
        /// Number of entries (xi: derivatives 0..order-1; phi/m: expansion order).
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Median of the gamma distribution at a point or over a grid.
    Median {
        /// Shape parameter for a single evaluation.
        #[arg(long)]
        x: Option<f64>,
        /// Residual tolerance |P(x,m) - 1/2|.
        #[arg(long, default_value_t = DEFAULT_MEDIAN_TOL)]
        tol: f64,
        /// Also report m'(x) (finite differences).
        #[arg(long)]
        deriv: bool,
        /// Grid sweep XMIN:XMAX:POINTS writing CSV columns x,m,m_prime,phi,x_phi.
        #[arg(long, conflicts_with = "x")]
        grid: Option<String>,
        /// Grid spacing (for --grid).
        #[arg(long, default_value = "log")]
        spacing: String,
        /// Output file for --grid CSV (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ramanujan's theta.
    Theta {
        /// Integer argument, evaluated by the defining sum.
        #[arg(long, conflicts_with = "x")]
        n: Option<u32>,
        /// Real argument (requires --method).
        #[arg(long)]
        x: Option<f64>,
        #[arg(long, value_enum)]
        method: Option<ThetaMethodArg>,
        /// Series terms for --method series.
        #[arg(long)]
        terms: Option<usize>,
        /// Quadrature tolerance for --method integral.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Asymptotic expansion of phi, m or m' with optional evaluation.
    Expand {
        target: ExpandTarget,
        #[arg(long)]
        order: usize,
        /// Evaluate the truncated expansion at this point.
        #[arg(long)]
        eval: Option<f64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Run verification suites; exit code 0 iff every check passes.
    Verify {
        /// all | coeffs | bounds | identity | residuals | theta
        #[arg(long, default_value = "all")]
        suite: String,
        /// Flat key = value config file (see README for keys).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the JSON report here (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for plot-ready CSV tables.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Override the config grid minimum.
        #[arg(long)]
        grid_min: Option<f64>,
        /// Override the config grid maximum.
        #[arg(long)]
        grid_max: Option<f64>,
        /// Override the config grid point count.
        #[arg(long)]
        grid_points: Option<usize>,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Coeffs {
            table,
            order,
            format,
        } => coeffs(table, order, format),
        Command::Median {
            x,
            tol,
            deriv,
            grid,
            spacing,
            out,
        } => median_cmd(x, tol, deriv, grid, &spacing, out),
        Command::Theta {
            n,
            x,
            method,
            terms,
            tol,
        } => theta_cmd(n, x, method, terms, tol),
        Command::Expand {
            target,
            order,
            eval,
            format,
        } => expand_cmd(target, order, eval, format),
        Command::Verify {
            suite,
            config,
            out,
            csv,
            grid_min,
            grid_max,
            grid_points,
        } => verify_cmd(&suite, config, out, csv, grid_min, grid_max, grid_points),
    }
}

fn emit_expansion_json(
    target: &str,
    order: usize,
    e: &AsymptoticExpansion,
    eval: Option<f64>,
) -> Result<serde_json::Value> {
    let inv: Vec<String> = e.inv_coeffs().iter().map(|c| c.to_string()).collect();
    let mut value = json!({
        "target": target,
        "order": order,
        "linear": e.linear_coeff().to_string(),
        "constant": e.const_coeff().to_string(),
        "inv": inv,
    });
    if let Some(x) = eval {
        let v = eval_expansion(e, x)?;
        value["eval_x"] = json!(x);
        value["value"] = json!(v);
    }
    Ok(value)
}

fn expansion_csv(e: &AsymptoticExpansion) -> String {
    let mut out = String::from("x_power,coeff\n");
    out.push_str(&format!("1,{}\n", e.linear_coeff()));
    out.push_str(&format!("0,{}\n", e.const_coeff()));
    for (i, c) in e.inv_coeffs().iter().enumerate() {
        out.push_str(&format!("{},{}\n", -(i as i64 + 1), c));
    }
    out
}

fn coeffs(table: CoeffTable, order: usize, format: OutputFormat) -> Result<ExitCode> {
    match table {
        CoeffTable::Xi => {
            let t = xi_derivatives(order)?;
            match format {
                OutputFormat::Json => {
                    let values: Vec<String> = t.values().iter().map(|v| v.to_string()).collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "table": "xi",
                            "order": order,
                            "values": values,
                        }))?
                    );
                }
                OutputFormat::Csv => {
                    print!("derivative_order,value\n");
                    for (k, v) in t.values().iter().enumerate() {
                        println!("{k},{v}");
                    }
                }
            }
        }
        CoeffTable::Phi => {
            let e = asymp_phi(order)?;
            match format {
                OutputFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&emit_expansion_json("phi", order, &e, None)?)?
                    );
                }
                OutputFormat::Csv => print!("{}", expansion_csv(&e)),
            }
        }
        CoeffTable::M => {
            let e = asymp_m(order)?;
            match format {
                OutputFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&emit_expansion_json("m", order, &e, None)?)?
                    );
                }
                OutputFormat::Csv => print!("{}", expansion_csv(&e)),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn median_cmd(
    x: Option<f64>,
    tol: f64,
    deriv: bool,
    grid: Option<String>,
    spacing: &str,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    match (x, grid) {
        (Some(x), None) => {
            let r = median(x, tol)?;
            let mut value = json!({
                "x": r.x,
                "m": r.m,
                "log_m": r.log_m,
                "residual": r.residual,
                "iterations": r.iterations,
            });
            if deriv {
                value["m_prime"] = json!(median_prime(x, MedianPrimeMethod::FiniteDiff)?);
            }
            println!("{}", serde_json::to_string_pretty(&value)?);
            Ok(ExitCode::SUCCESS)
        }
        (None, Some(grid)) => {
            let parts: Vec<&str> = grid.split(':').collect();
            if parts.len() != 3 {
                bail!("--grid wants XMIN:XMAX:POINTS, got {grid:?}");
            }
            let config = VerifyConfig {
                grid: Grid::new(
                    parts[0].parse().context("grid XMIN")?,
                    parts[1].parse().context("grid XMAX")?,
                    parts[2].parse().context("grid POINTS")?,
                    spacing.parse()?,
                ),
                median_tol: tol,
                ..VerifyConfig::default()
            };
            let csv = verify::median_grid_csv(&config)?;
            match out {
                Some(path) => fs::write(&path, csv)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{csv}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        _ => bail!("median needs exactly one of --x or --grid"),
    }
}

fn theta_cmd(
    n: Option<u32>,
    x: Option<f64>,
    method: Option<ThetaMethodArg>,
    terms: Option<usize>,
    tol: f64,
) -> Result<ExitCode> {
    let result = match (n, x, method) {
        (Some(n), None, None | Some(ThetaMethodArg::Sum)) => theta_integer(n)?,
        (None, Some(x), Some(ThetaMethodArg::Sum)) => {
            if x.fract() != 0.0 || !(x >= 1.0) {
                bail!("--method sum needs a positive integer argument, got {x}");
            }
            theta_integer(x as u32)?
        }
        (None, Some(x), Some(ThetaMethodArg::Integral)) => theta_real(x, tol)?,
        (None, Some(x), Some(ThetaMethodArg::Series)) => {
            let table = XiDerivativeTable::standard();
            let k = terms.unwrap_or(4);
            let value = theta_series(x, k, table)?;
            // first omitted term as the (asymptotic) error scale
            let est = if k < table.len() {
                (table.get(k).to_f64() / (2.0 * x.powi(k as i32))).abs()
            } else {
                f64::NAN
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "argument": x,
                    "theta": value,
                    "method": "series",
                    "terms": k,
                    "est_error": est,
                }))?
            );
            return Ok(ExitCode::SUCCESS);
        }
        (None, Some(_), None) => bail!("--x needs --method sum|integral|series"),
        _ => bail!("theta needs either --n N or --x X --method ..."),
    };
    println!("{}", serde_json::to_string_pretty(&result)?);
    Ok(ExitCode::SUCCESS)
}

fn expand_cmd(
    target: ExpandTarget,
    order: usize,
    eval: Option<f64>,
    format: OutputFormat,
) -> Result<ExitCode> {
    let (name, e) = match target {
        ExpandTarget::Phi => ("phi", asymp_phi(order)?),
        ExpandTarget::M => ("m", asymp_m(order)?),
        ExpandTarget::Mprime => ("mprime", differentiate_expansion(&asymp_m(order)?)),
    };
    match format {
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&emit_expansion_json(name, order, &e, eval)?)?
        ),
        OutputFormat::Csv => {
            print!("{}", expansion_csv(&e));
            if let Some(x) = eval {
                println!("# value at {x}: {}", eval_expansion(&e, x)?);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    suite: &str,
    config_path: Option<PathBuf>,
    out: Option<PathBuf>,
    csv_dir: Option<PathBuf>,
    grid_min: Option<f64>,
    grid_max: Option<f64>,
    grid_points: Option<usize>,
) -> Result<ExitCode> {
    let suite: Suite = suite.parse()?;
    let mut config = match &config_path {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            VerifyConfig::parse(&text)?
        }
        None => VerifyConfig::default(),
    };
    if let Some(v) = grid_min {
        config.grid.xmin = v;
    }
    if let Some(v) = grid_max {
        config.grid.xmax = v;
    }
    if let Some(v) = grid_points {
        config.grid.points = v;
    }

    let report = verify::run_suite(suite, &config);
    for check in &report.checks {
        let status = if check.pass { "PASS" } else { "FAIL" };
        eprintln!(
            "{status} {} (worst {:.3e} at x = {})",
            check.name, check.worst_violation, check.worst_x
        );
        if let Some(err) = &check.error {
            eprintln!("      error: {err}");
        }
    }

    let json = serde_json::to_string_pretty(&report)?;
    match &out {
        Some(path) => {
            fs::write(path, json).with_context(|| format!("writing {}", path.display()))?
        }
        None => println!("{json}"),
    }

    if let Some(dir) = &csv_dir {
        write_csv_tables(dir, &config)?;
    }

    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn write_csv_tables(dir: &Path, config: &VerifyConfig) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    fs::write(dir.join("median_grid.csv"), verify::median_grid_csv(config)?)?;
    fs::write(dir.join("xi.csv"), verify::xi_curve_csv()?)?;
    fs::write(dir.join("xphi.csv"), verify::xphi_csv(config)?)?;
    fs::write(
        dir.join("residuals.csv"),
        verify::residuals_csv(&[2, 3, 4], &[10.0, 20.0, 40.0, 80.0])?,
    )?;
    Ok(())
}
