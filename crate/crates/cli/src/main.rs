//! `minorant` command-line front end.
//!
//! Exit codes: 0 success, 2 invalid input, 3 numerical failure,
//! 4 certification failure (budget exceeded or a pointwise violation),
//! 1 output could not be written.

mod config;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use minorant::bounds::{disc_certificate, power_content_budget};
use minorant::harnack::{
    ball_center_distance, ball_pair_upper, disc_pair_distance, poisson_ball_center_distance, poisson_disc_distance,
    HarnackBound,
};
use minorant::harness::run_verification;
use minorant::hcontent::{content_upper, CoverEstimate};
use minorant::{Dimension, Gauge, Point};
use num_complex::Complex64;
use serde::Serialize;

use config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] minorant::Error),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Core(minorant::Error::NumericFailure { .. }) => 3,
            CliError::Core(_) => 2,
            CliError::Certification(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "minorant", version, about = "Lower-bound certificates for subharmonic functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Harnack distance in a ball: closed form, triangle bound and oracle.
    Harnack(HarnackArgs),
    /// Certify a disc problem and verify it on a grid.
    Certify(CertifyArgs),
    /// Upper estimate of the h-content of a planar point set.
    Content(ContentArgs),
}

#[derive(Args)]
struct HarnackArgs {
    #[arg(long, default_value_t = 2)]
    d: u32,
    /// Ball radius.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Comma-separated coordinates.
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// Second point; the centre when omitted.
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    /// Angular bracket width for the oracle.
    #[arg(long, default_value_t = 1e-12)]
    tolerance: f64,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides the config. Without one the report goes
    /// to stdout and no series are written.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Relative tolerance of the pointwise check.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Args)]
struct ContentArgs {
    /// One point per line, `re,im`; blank lines and `#` comments ignored.
    #[arg(long)]
    points: PathBuf,
    /// Gauge multiplier.
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    /// Gauge exponent.
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Largest admissible cover radius.
    #[arg(long)]
    r: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code());
    }
    let result = match cli.command {
        Command::Harnack(a) => cmd_harnack(&a),
        Command::Certify(a) => cmd_certify(&a),
        Command::Content(a) => cmd_content(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("MINORANT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("MINORANT_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("cannot size thread pool: {e}")))
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("report types serialize");
    println!("{text}");
    Ok(())
}

fn parse_point(field: &str, raw: &str) -> Result<Point, CliError> {
    let coords: Result<Vec<f64>, _> = raw.split(',').map(|c| c.trim().parse::<f64>()).collect();
    match coords {
        Ok(c) if !c.is_empty() && c.iter().all(|v| v.is_finite()) => Ok(Point::new(c)),
        _ => Err(CliError::Config(format!(
            "invalid {field}: expected comma-separated finite numbers, got {raw:?}"
        ))),
    }
}

#[derive(Serialize)]
struct HarnackReport {
    d: u32,
    r: f64,
    x: Point,
    y: Point,
    closed_form: HarnackBound,
    triangle_upper: HarnackBound,
    oracle: Option<HarnackBound>,
    oracle_relative_delta: Option<f64>,
}

fn cmd_harnack(a: &HarnackArgs) -> Result<(), CliError> {
    let d = Dimension::new(a.d)?;
    let dim = a.d as usize;
    let x = parse_point("x", &a.x)?;
    let y = match &a.y {
        Some(raw) => parse_point("y", raw)?,
        None => Point::origin(dim),
    };
    for (name, p) in [("x", &x), ("y", &y)] {
        if p.dim() != dim {
            return Err(CliError::Config(format!("invalid {name}: has {} coordinates, d = {dim}", p.dim())));
        }
    }
    if !(a.r > 0.0 && a.r.is_finite()) {
        return Err(CliError::Config(format!("invalid r: must be positive, got {}", a.r)));
    }
    let triangle = ball_pair_upper(d, a.r, &x, &y)?;
    let (closed, oracle) = if y.norm() == 0.0 {
        let rho = x.norm();
        (
            ball_center_distance(d, a.r, rho)?,
            Some(poisson_ball_center_distance(d, rho / a.r, a.tolerance)?),
        )
    } else if x.norm() == 0.0 {
        let rho = y.norm();
        (
            ball_center_distance(d, a.r, rho)?,
            Some(poisson_ball_center_distance(d, rho / a.r, a.tolerance)?),
        )
    } else if dim == 2 {
        let to_c = |p: &Point| Complex64::new(p.coords()[0] / a.r, p.coords()[1] / a.r);
        (
            disc_pair_distance(to_c(&x), to_c(&y))?,
            Some(poisson_disc_distance(to_c(&x), to_c(&y), a.tolerance)?),
        )
    } else {
        (triangle, None)
    };
    print_json(&HarnackReport {
        d: a.d,
        r: a.r,
        x,
        y,
        closed_form: closed,
        triangle_upper: triangle,
        oracle_relative_delta: oracle.map(|o| (o.value - closed.value).abs() / closed.value),
        oracle,
    })
}

fn cmd_certify(a: &CertifyArgs) -> Result<(), CliError> {
    let cfg = RunConfig::load(&a.config)?;
    let seed = a.seed.or(cfg.seed).unwrap_or(0);
    let sample = cfg.sample(seed)?;
    let prob = cfg.problem(&sample)?;
    let cert = disc_certificate(&prob)?;
    let power_budget = match prob.gauge {
        Gauge::Power { .. } => Some(power_content_budget(&prob)?),
        Gauge::Tabulated { .. } => None,
    };
    let verification = run_verification(&sample, &prob, &cfg.grid(), a.tolerance)?;

    let out_dir: Option<&Path> = a.out.as_deref().or(cfg.out.as_deref());
    let series = out_dir.map(|_| report::Series {
        u_along_rays: report::U_ALONG_RAYS,
        bound_levels: report::BOUND_LEVELS,
        exceptional_points: report::EXCEPTIONAL_POINTS,
    });
    let full = report::CertifyReport {
        seed,
        sample: &sample,
        certificate: &cert,
        power_content_budget: power_budget,
        verification: &verification,
        series,
    };
    let text = serde_json::to_string_pretty(&full).expect("report types serialize") + "\n";
    match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
            report::write(dir, report::REPORT, &text)?;
            report::write(dir, report::U_ALONG_RAYS, &report::u_along_rays(&sample))?;
            report::write(dir, report::BOUND_LEVELS, &report::bound_levels(&cert, &verification))?;
            report::write(dir, report::EXCEPTIONAL_POINTS, &report::exceptional_points(&verification))?;
        }
        None => print!("{text}"),
    }

    if verification.pointwise_violations > 0 {
        return Err(CliError::Certification(format!(
            "{} pointwise violations",
            verification.pointwise_violations
        )));
    }
    if verification.budget_exceeded {
        return Err(CliError::Certification(format!(
            "measured content {} exceeds budget {}",
            verification.measured_content.value, verification.budget
        )));
    }
    Ok(())
}

fn read_points(path: &Path) -> Result<Vec<Point>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let p = parse_point(&format!("points line {}", i + 1), line)?;
        if p.dim() != 2 {
            return Err(CliError::Config(format!("invalid points line {}: expected re,im", i + 1)));
        }
        points.push(p);
    }
    Ok(points)
}

#[derive(Serialize)]
struct ContentReport {
    gauge: Gauge,
    r: f64,
    points: usize,
    estimate: CoverEstimate,
}

fn cmd_content(a: &ContentArgs) -> Result<(), CliError> {
    let points = read_points(&a.points)?;
    let gauge = Gauge::power(a.b, a.p)?;
    let estimate = content_upper(&points, &gauge, a.r)?;
    print_json(&ContentReport {
        gauge,
        r: a.r,
        points: points.len(),
        estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let numeric = minorant::Error::NumericFailure {
            message: "bisection cap".into(),
            lo: 0.0,
            hi: 1.0,
        };
        let domain = minorant::Error::OutOfDomain {
            what: "x".into(),
            domain: "ball".into(),
        };
        assert_eq!(CliError::Config("bad".into()).exit_code(), 2);
        assert_eq!(CliError::Core(domain).exit_code(), 2);
        assert_eq!(CliError::Core(numeric).exit_code(), 3);
        assert_eq!(CliError::Certification("violations".into()).exit_code(), 4);
        assert_eq!(CliError::Io("disk full".into()).exit_code(), 1);
    }
}
