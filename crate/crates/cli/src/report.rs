//! Certify report and plottable CSV series.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::Path;

use minorant::bounds::BoundCertificate;
use minorant::harness::{SubharmonicSample, VerificationReport};
use minorant::ExtendedReal;
use num_complex::Complex64;
use serde::Serialize;

use crate::CliError;

pub const RAYS: usize = 8;
pub const RAY_SAMPLES: usize = 200;

pub const U_ALONG_RAYS: &str = "u_along_rays.csv";
pub const BOUND_LEVELS: &str = "bound_levels.csv";
pub const EXCEPTIONAL_POINTS: &str = "exceptional_points.csv";
pub const REPORT: &str = "report.json";

#[derive(Debug, Serialize)]
pub struct Series {
    pub u_along_rays: &'static str,
    pub bound_levels: &'static str,
    pub exceptional_points: &'static str,
}

#[derive(Debug, Serialize)]
pub struct CertifyReport<'a> {
    pub seed: u64,
    pub sample: &'a SubharmonicSample,
    pub certificate: &'a BoundCertificate,
    pub power_content_budget: Option<f64>,
    pub verification: &'a VerificationReport,
    pub series: Option<Series>,
}

fn num(x: f64) -> String {
    match ExtendedReal::from_f64(x) {
        Some(ExtendedReal::Finite(v)) => format!("{v:.16e}"),
        Some(ExtendedReal::NegInf) => "-inf".into(),
        Some(ExtendedReal::PosInf) => "+inf".into(),
        None => "nan".into(),
    }
}

/// `u` on `RAYS` rays through the origin, at `RAY_SAMPLES` radii in `[0, 1)`.
pub fn u_along_rays(sample: &SubharmonicSample) -> String {
    let mut out = String::from("angle,radius,u\n");
    for k in 0..RAYS {
        let angle = TAU * k as f64 / RAYS as f64;
        for i in 0..RAY_SAMPLES {
            let radius = i as f64 / RAY_SAMPLES as f64;
            let u = sample.eval(Complex64::from_polar(radius, angle)).to_f64();
            let _ = writeln!(out, "{},{},{}", num(angle), num(radius), num(u));
        }
    }
    out
}

pub fn bound_levels(cert: &BoundCertificate, verification: &VerificationReport) -> String {
    let rows = [
        ("boundary_sup", verification.problem.boundary_sup),
        ("sup_on_inner_circle", verification.sup_on_inner_circle),
        ("harnack_term", cert.terms.harnack_term),
        ("annulus_term", cert.terms.annulus_term),
        ("gauge_term", cert.terms.gauge_term),
        ("lower_bound", cert.lower_bound.to_f64()),
        ("content_budget", cert.content_budget),
        ("simplified_budget_paper", cert.simplified_budget_paper),
        ("measured_content", verification.measured_content.value),
    ];
    let mut out = String::from("term,value\n");
    for (name, v) in rows {
        let _ = writeln!(out, "{name},{}", num(v));
    }
    out
}

pub fn exceptional_points(verification: &VerificationReport) -> String {
    let mut out = String::from("re,im\n");
    for p in &verification.exceptional_points {
        let _ = writeln!(out, "{},{}", num(p[0]), num(p[1]));
    }
    out
}

pub fn write(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}
