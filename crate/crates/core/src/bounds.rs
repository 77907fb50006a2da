//! Lower-bound certificates.
//!
//! Pointwise bound on a ball `D = B_0(R_D)` for `u` with `u(0) = 0`:
//!
//! ```text
//! u(x) >= -(dist_har(0, x) - 1) * sup_{dD} u - N_x(diam D)
//! ```
//!
//! Disc certificate for `D = R*disc`, `G = disc`, a set `S` inside
//! `|z| <= s0 < R` and a gauge `h`: outside an exceptional set `E`,
//!
//! ```text
//! u >= -( 2 s0/(R - s0)
//!         + ln(2R/r)/ln(1/R) * ((1+R)/(1-R))^2
//!         + N_0^h(r) ) * sup_{d disc} u
//! ```
//!
//! with `m_h^r(E) <= 25 ((1+R)/(1-R))^2 / ln(1/R)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::harnack::{ball_center_distance, punctured_disc_circle_bound};
use crate::potential::{gauge_constant, kernel, vitali_constant, Dimension, ExtendedReal, Gauge, Point};
use crate::quad::{integrate_with_breakpoints, QuadOptions};
use crate::riesz::{integrated_counting, AtomicMeasure};

/// `N_0^h(r) = d_hat * int_0^r h(s) / s^{d-1} ds`.
///
/// Closed form for power gauges; tabulated gauges are integrated exactly
/// segment by segment, since their interpolant is piecewise linear.
pub fn n0_gauge_integral(g: &Gauge, r: f64, d: Dimension) -> Result<f64> {
    check_radius(g, r)?;
    let excess = |p: f64| p - (d.get() as f64 - 2.0);
    match g {
        Gauge::Power { b, p } => {
            if excess(*p) <= 0.0 {
                return Err(Error::Divergent(format!(
                    "power gauge needs p > d - 2 = {}, got p = {p}",
                    d.get() as i32 - 2
                )));
            }
            if *b == 0.0 {
                return Ok(0.0);
            }
            let e = excess(*p);
            Ok(b * gauge_constant(*p) * d.d_hat() * r.powf(e) / e)
        }
        Gauge::Tabulated { t, h } => {
            let mut total = 0.0;
            for i in 0..t.len() - 1 {
                let (t0, t1) = (t[i], t[i + 1].min(r));
                if t0 >= t1 {
                    break;
                }
                let slope = (h[i + 1] - h[i]) / (t[i + 1] - t[i]);
                let intercept = h[i] - slope * t[i];
                total += linear_segment_integral(intercept, slope, t0, t1, d)?;
            }
            Ok(d.d_hat() * total)
        }
    }
}

// int_{t0}^{t1} (a + k s) s^{1-d} ds
fn linear_segment_integral(a: f64, k: f64, t0: f64, t1: f64, d: Dimension) -> Result<f64> {
    let n = d.get() as i32;
    // int s^m ds on [t0, t1] with m = exponent
    let power_integral = |m: i32| -> Result<f64> {
        if m == -1 {
            if t0 == 0.0 {
                return Err(Error::Divergent(
                    "tabulated gauge is not o(t^{d-2}) at 0".into(),
                ));
            }
            Ok((t1 / t0).ln())
        } else if m < -1 && t0 == 0.0 {
            Err(Error::Divergent("tabulated gauge is not o(t^{d-2}) at 0".into()))
        } else {
            let e = m + 1;
            Ok((t1.powi(e) - t0.powi(e)) / e as f64)
        }
    };
    let mut total = 0.0;
    if a != 0.0 {
        total += a * power_integral(1 - n)?;
    }
    if k != 0.0 {
        total += k * power_integral(2 - n)?;
    }
    Ok(total)
}

/// The same integral by adaptive quadrature, for cross-checking the
/// closed forms.
pub fn n0_gauge_integral_quadrature(g: &Gauge, r: f64, d: Dimension) -> Result<f64> {
    check_radius(g, r)?;
    let breaks: Vec<f64> = match g {
        Gauge::Tabulated { t, .. } => t.clone(),
        Gauge::Power { .. } => Vec::new(),
    };
    let dm1 = d.get() as i32 - 1;
    let opts = QuadOptions {
        abs_tol: 0.0,
        rel_tol: 1e-12,
        max_intervals: 100_000,
    };
    let res = integrate_with_breakpoints(|s| g.eval(s) / s.powi(dm1), 0.0, r, &breaks, opts)?;
    Ok(d.d_hat() * res.value)
}

fn check_radius(g: &Gauge, r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::validation("r", format!("must be positive, got {r}")));
    }
    if r > g.domain_max() {
        return Err(Error::validation(
            "gauge",
            format!("defined up to {} but r = {r}", g.domain_max()),
        ));
    }
    Ok(())
}

/// Pointwise lower bound for `u(x)` on the ball `B_0(d_radius)` given
/// `u(0) = 0`, the supremum of `u` over the sphere `|x| = d_radius` and the
/// Riesz measure restricted to the closed ball.
pub fn theorem1_pointwise_bound(
    d: Dimension,
    d_radius: f64,
    x: &Point,
    diam_d: f64,
    boundary_sup_d: f64,
    mu: &AtomicMeasure,
) -> Result<ExtendedReal> {
    if !(diam_d > 0.0) {
        return Err(Error::validation("diamD", "must be positive"));
    }
    let dist = ball_center_distance(d, d_radius, x.norm())?;
    let harnack = ExtendedReal::Finite((dist.value - 1.0) * boundary_sup_d);
    let counting = integrated_counting(mu, x, diam_d, d);
    Ok(-harnack - counting)
}

/// Generic annulus factor `(k(diam D) - k(r)) / (k(R + l) - k(R))` for
/// concentric balls with inner radius `R` and gap `l`.
pub fn annulus_factor(d: Dimension, diam_d: f64, r: f64, inner: f64, gap: f64) -> f64 {
    let num = kernel(d, diam_d) - kernel(d, r);
    let den = kernel(d, inner + gap) - kernel(d, inner);
    num.to_f64() / den.to_f64()
}

/// Generic exceptional-set budget `5^d / (k(R + l) - k(R)) * H`, where `H`
/// bounds the Harnack distance to the sphere `|x| = R` in the punctured
/// outer ball.
pub fn generic_content_budget(d: Dimension, inner: f64, gap: f64, punctured_distance: f64) -> f64 {
    let den = kernel(d, inner + gap) - kernel(d, inner);
    vitali_constant(d) / den.to_f64() * punctured_distance
}

/// The disc configuration: `D = R*disc` inside `G = disc`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscProblem {
    #[serde(rename = "R")]
    pub big_r: f64,
    pub s0: f64,
    pub r: f64,
    pub gauge: Gauge,
    /// Supremum (or an upper estimate of it) of `u` on the unit circle.
    pub boundary_sup: f64,
}

impl DiscProblem {
    pub fn new(big_r: f64, s0: f64, r: f64, gauge: Gauge, boundary_sup: f64) -> Result<Self> {
        let p = DiscProblem {
            big_r,
            s0,
            r,
            gauge,
            boundary_sup,
        };
        p.validate()?;
        Ok(p)
    }

    /// Checks `0 <= s0 < R < 1`, `0 < r <= 2R` and `boundary_sup >= 0`.
    pub fn validate(&self) -> Result<()> {
        let fail = |field: &str, rule: &str| Err(Error::validation(field, format!("violates {rule}")));
        if !(self.big_r > 0.0 && self.big_r < 1.0) {
            return fail("problem.R", "0 < R < 1");
        }
        if !(self.s0 >= 0.0) {
            return fail("problem.s0", "0 <= s0");
        }
        if !(self.s0 < self.big_r) {
            return fail("problem.s0", "s0 < R");
        }
        if !(self.r > 0.0) {
            return fail("problem.r", "0 < r");
        }
        if !(self.r <= 2.0 * self.big_r) {
            return fail("problem.r", "r <= 2R");
        }
        if !(self.boundary_sup >= 0.0 && self.boundary_sup.is_finite()) {
            return fail("problem.boundary_sup", "0 <= sup of u on the unit circle < inf");
        }
        Ok(())
    }

    /// Gap `l = 1 - R` between `D` and the complement of the unit disc.
    pub fn gap(&self) -> f64 {
        1.0 - self.big_r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertificateTerms {
    /// `dist_har(0, s0) - 1 = 2 s0 / (R - s0)`.
    pub harnack_term: f64,
    /// `ln(2R/r) / ln(1/R) * ((1+R)/(1-R))^2`.
    pub annulus_term: f64,
    /// `N_0^h(r)`.
    pub gauge_term: f64,
}

impl CertificateTerms {
    pub fn total(&self) -> f64 {
        self.harnack_term + self.annulus_term + self.gauge_term
    }
}

/// Named constants the certificate is assembled from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertificateConstants {
    pub gap_l: f64,
    pub punctured_circle_distance: f64,
    pub kernel_denominator: f64,
    pub annulus_factor: f64,
    pub vitali_constant: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCertificate {
    pub lower_bound: ExtendedReal,
    pub content_budget: f64,
    pub terms: CertificateTerms,
    pub constants: CertificateConstants,
    /// `100 / ((1-R) ln(1/R))`; reported for comparison, never certified.
    pub simplified_budget_paper: f64,
}

pub fn disc_certificate(prob: &DiscProblem) -> Result<BoundCertificate> {
    prob.validate()?;
    let plane = Dimension::PLANE;
    let big_r = prob.big_r;
    let gap = prob.gap();
    let punctured = punctured_disc_circle_bound(big_r)?.value;
    let kernel_denominator = -big_r.ln();
    let factor = (2.0 * big_r / prob.r).ln() / kernel_denominator;

    let terms = CertificateTerms {
        harnack_term: 2.0 * prob.s0 / (big_r - prob.s0),
        annulus_term: factor * punctured,
        gauge_term: n0_gauge_integral(&prob.gauge, prob.r, plane)?,
    };
    // `+ 0.0` turns -0 into 0 when the supremum vanishes
    let lower_bound = ExtendedReal::Finite(-terms.total() * prob.boundary_sup + 0.0);
    let vitali = vitali_constant(plane);
    Ok(BoundCertificate {
        lower_bound,
        content_budget: vitali * punctured / kernel_denominator,
        terms,
        constants: CertificateConstants {
            gap_l: gap,
            punctured_circle_distance: punctured,
            kernel_denominator,
            annulus_factor: factor,
            vitali_constant: vitali,
        },
        simplified_budget_paper: 100.0 / (gap * kernel_denominator),
    })
}

/// Certified budget for the `p`-dimensional content of the exceptional set
/// when the gauge is `B * h_p`: the disc budget divided by `B`.
pub fn power_content_budget(prob: &DiscProblem) -> Result<f64> {
    prob.validate()?;
    let Gauge::Power { b, p } = prob.gauge else {
        return Err(Error::UnsupportedGauge("power content budget needs a power gauge".into()));
    };
    if !(p > 0.0 && p <= 2.0) {
        return Err(Error::validation("gauge.p", format!("must lie in (0, 2], got {p}")));
    }
    if !(b > 0.0) {
        return Err(Error::validation("gauge.B", "must be positive"));
    }
    Ok(disc_certificate(prob)?.content_budget / b)
}
