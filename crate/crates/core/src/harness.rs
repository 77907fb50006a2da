//! Test families with known Riesz measures and end-to-end verification of
//! the lower bounds on polar grids.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::bounds::{disc_certificate, theorem1_pointwise_bound, DiscProblem};
use crate::error::{Error, Result};
use crate::hcontent::{content_upper_balls, CoverEstimate};
use crate::potential::{Ball, Dimension, ExtendedReal, Gauge, Point};
use crate::riesz::AtomicMeasure;

/// Grid points closer than this to a zero are moved.
const COLLISION_RADIUS: f64 = 1e-12;
/// Size of the move applied to a colliding grid point.
pub const COLLISION_SHIFT: f64 = 1e-9;
/// Arc budget for the circle supremum search.
const MAX_ARCS: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Zero {
    pub at: Complex64,
    pub multiplicity: u32,
}

impl Serialize for Zero {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(3)?;
        t.serialize_element(&self.at.re)?;
        t.serialize_element(&self.at.im)?;
        t.serialize_element(&self.multiplicity)?;
        t.end()
    }
}

/// `u(z) = sum m_k ln|z - a_k| - sum m_k ln|a_k|`, so `u(0) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubharmonicSample {
    zeros: Vec<Zero>,
    #[serde(skip)]
    shift: f64,
    #[serde(skip)]
    riesz: AtomicMeasure,
}

pub fn make_log_poly(zeros: Vec<(Complex64, u32)>) -> Result<SubharmonicSample> {
    for (a, m) in &zeros {
        if *a == Complex64::new(0.0, 0.0) {
            return Err(Error::validation("zeros", "zero at the origin makes u(0) = -inf"));
        }
        if !(a.re.is_finite() && a.im.is_finite()) {
            return Err(Error::validation("zeros", "non-finite location"));
        }
        if *m == 0 {
            return Err(Error::validation("zeros", "multiplicity must be positive"));
        }
    }
    let zeros: Vec<Zero> = zeros
        .into_iter()
        .map(|(at, multiplicity)| Zero { at, multiplicity })
        .collect();
    let shift = log_sum(&zeros, Complex64::new(0.0, 0.0));
    let riesz = AtomicMeasure::new(
        zeros
            .iter()
            .map(|z| (Point::from(z.at), f64::from(z.multiplicity)))
            .collect(),
    )?;
    Ok(SubharmonicSample { zeros, shift, riesz })
}

fn log_sum(zeros: &[Zero], w: Complex64) -> f64 {
    zeros
        .iter()
        .map(|z| f64::from(z.multiplicity) * (w - z.at).norm().ln())
        .sum()
}

impl SubharmonicSample {
    pub fn zeros(&self) -> &[Zero] {
        &self.zeros
    }

    pub fn riesz(&self) -> &AtomicMeasure {
        &self.riesz
    }

    pub fn eval(&self, w: Complex64) -> ExtendedReal {
        if self.zeros.iter().any(|z| z.at == w) {
            return ExtendedReal::NegInf;
        }
        ExtendedReal::Finite(log_sum(&self.zeros, w) - self.shift)
    }

    /// Upper bound for `u` on the arc of `|w| = radius` of half-width
    /// `half` around `mid`, the smaller of two rigorous bounds.
    ///
    /// First order: every point of the arc is within the chord
    /// `2 radius sin(half/2)` of the midpoint, so each `ln|w - a|` grows by
    /// at most `ln(1 + chord/|w_mid - a|)`.
    ///
    /// Second order: along the circle `d^2/dtheta^2 ln|w - a|` has modulus
    /// `radius |a| / |w - a|^2`, so Taylor's theorem at the midpoint gives
    /// `u(mid) + |u'(mid)| half + M half^2 / 2`. Only valid while the arc
    /// stays away from every zero.
    fn arc_upper(&self, radius: f64, mid: f64, half: f64) -> f64 {
        let w = Complex64::from_polar(radius, mid);
        let chord = 2.0 * radius * (half / 2.0).sin();
        let mut first = 0.0;
        let mut value = 0.0;
        let mut slope = 0.0;
        let mut curvature = 0.0;
        let mut second_valid = true;
        for z in &self.zeros {
            let m = f64::from(z.multiplicity);
            let diff = w - z.at;
            let dist = diff.norm();
            first += m * (dist + chord).ln();
            value += m * dist.ln();
            // d/dtheta ln|w - a| = Re(i w / (w - a))
            slope += m * (Complex64::i() * w / diff).re;
            let nearest = dist - chord;
            if nearest > 0.0 {
                curvature += m * radius * z.at.norm() / (nearest * nearest);
            } else {
                second_valid = false;
            }
        }
        let mut upper = first;
        if second_valid {
            upper = upper.min(value + slope.abs() * half + curvature * half * half / 2.0);
        }
        upper - self.shift
    }
}

struct Arc {
    upper: f64,
    mid: f64,
    half: f64,
}

impl PartialEq for Arc {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Arc {}
impl PartialOrd for Arc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Arc {
    fn cmp(&self, other: &Self) -> Ordering {
        self.upper
            .total_cmp(&other.upper)
            .then(other.mid.total_cmp(&self.mid))
    }
}

/// Upper estimate of `sup u` on the circle `|w| = radius`, within
/// `refine_tol` of the true value.
///
/// Branch and bound over arcs: each arc carries the rigorous bound of
/// `arc_upper`, and the arc with the largest bound is split until that bound
/// is within `refine_tol` of the best value actually attained. Zeros on the
/// circle need no special care since arcs near them just have low bounds.
pub fn circle_sup(sample: &SubharmonicSample, radius: f64, n_coarse: usize, refine_tol: f64) -> Result<f64> {
    if n_coarse < 64 {
        return Err(Error::validation("n_coarse", format!("must be at least 64, got {n_coarse}")));
    }
    if !(refine_tol > 0.0) {
        return Err(Error::validation("refine_tol", "must be positive"));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::validation("radius", "must be positive"));
    }
    if sample.zeros.is_empty() {
        return Ok(0.0);
    }
    let value_at = |angle: f64| sample.eval(Complex64::from_polar(radius, angle)).to_f64();
    let half = PI / n_coarse as f64;
    let mut best = f64::NEG_INFINITY;
    let mut heap = BinaryHeap::with_capacity(2 * n_coarse);
    for i in 0..n_coarse {
        let mid = (2 * i + 1) as f64 * half;
        best = best.max(value_at(mid));
        heap.push(Arc {
            upper: sample.arc_upper(radius, mid, half),
            mid,
            half,
        });
    }
    loop {
        let top = heap.pop().expect("arcs are only ever split");
        if top.upper <= best + refine_tol || heap.len() >= MAX_ARCS {
            return Ok(top.upper.max(best));
        }
        let half = top.half / 2.0;
        for mid in [top.mid - half, top.mid + half] {
            best = best.max(value_at(mid));
            heap.push(Arc {
                upper: sample.arc_upper(radius, mid, half),
                mid,
                half,
            });
        }
    }
}

/// Upper estimate of `sup u` on the unit circle.
pub fn boundary_sup(sample: &SubharmonicSample, n_coarse: usize, refine_tol: f64) -> Result<f64> {
    circle_sup(sample, 1.0, n_coarse, refine_tol)
}

/// Default settings for the circle supremum used by the verifier.
pub const SUP_COARSE: usize = 256;
pub const SUP_TOL: f64 = 1e-10;

/// Disc problem with `boundary_sup` filled in from the sample.
pub fn problem_for(sample: &SubharmonicSample, big_r: f64, s0: f64, r: f64, gauge: Gauge) -> Result<DiscProblem> {
    let sup = boundary_sup(sample, SUP_COARSE, SUP_TOL)?;
    DiscProblem::new(big_r, s0, r, gauge, sup)
}

/// Polar grid: `radii` rings (plus the centre) times `angles` rays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GridSpec {
    pub radii: usize,
    pub angles: usize,
}

impl GridSpec {
    fn validate(&self) -> Result<()> {
        if self.radii == 0 {
            return Err(Error::validation("grid.radii", "must be at least 1"));
        }
        if self.angles < 3 {
            return Err(Error::validation("grid.angles", "must be at least 3"));
        }
        Ok(())
    }

    /// Centre followed by rings at `outer * i / radii`, `i = 1..=radii`.
    fn closed_disc(&self, outer: f64) -> Vec<Complex64> {
        self.ring_points(outer, (1..=self.radii).map(|i| i as f64 / self.radii as f64))
    }

    /// Centre followed by rings at `outer * i / (radii + 1)`, strictly inside.
    fn open_disc(&self, outer: f64) -> Vec<Complex64> {
        let n = self.radii + 1;
        self.ring_points(outer, (1..n).map(|i| i as f64 / n as f64))
    }

    fn ring_points(&self, outer: f64, fractions: impl Iterator<Item = f64>) -> Vec<Complex64> {
        let mut pts = vec![Complex64::new(0.0, 0.0)];
        for f in fractions {
            for j in 0..self.angles {
                pts.push(Complex64::from_polar(outer * f, TAU * j as f64 / self.angles as f64));
            }
        }
        pts
    }

    /// Radius of a ball around each point of `closed_disc(outer)` covering
    /// its polar cell: half the diagonal of the cell at its outer edge.
    pub fn cell_radius(&self, outer: f64) -> f64 {
        let dr = outer / self.radii as f64;
        let arc = (outer + dr / 2.0) * TAU / self.angles as f64;
        (dr / 2.0).hypot(arc / 2.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Margins {
    /// `min (u(x) - bound(x))` over the grid of `D`.
    pub pointwise_worst_slack: f64,
    /// `min (u(z) - lower_bound)` over the grid of `S`; negative exactly
    /// when some point is flagged.
    pub certificate_worst_slack: f64,
    /// `budget - measured content`.
    pub content_slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub problem: DiscProblem,
    pub grid: GridSpec,
    pub tolerance: f64,
    /// Upper estimate of `sup u` on `|z| = R`, used by the pointwise check.
    pub sup_on_inner_circle: f64,
    pub pointwise_checked: usize,
    pub pointwise_violations: usize,
    pub grid_points_on_s: usize,
    pub perturbed_points: usize,
    pub lower_bound: ExtendedReal,
    pub exceptional_points: Vec<[f64; 2]>,
    pub cell_radius: f64,
    pub measured_content: CoverEstimate,
    pub budget: f64,
    pub budget_exceeded: bool,
    pub margins: Margins,
}

fn avoid_zeros(sample: &SubharmonicSample, mut w: Complex64) -> (Complex64, bool) {
    let mut moved = false;
    while sample.zeros.iter().any(|z| (w - z.at).norm() < COLLISION_RADIUS) {
        w += Complex64::new(COLLISION_SHIFT, 0.0);
        moved = true;
    }
    (w, moved)
}

/// Checks the pointwise bound on `D = R*disc` and the disc certificate on
/// `S = s0*disc` for one sample.
///
/// Pointwise: every grid point `x` strictly inside `D` must satisfy
/// `u(x) >= bound(x) - tolerance * (1 + |bound(x)|)`, where `bound` uses an
/// upper estimate of `sup u` on `|z| = R` and the Riesz measure restricted
/// to the closed disc.
///
/// Certificate: grid points of `S` with `u < lower_bound` are flagged; each
/// stands for the ball of radius `cell_radius` around it, and the gauge
/// content of that union is compared with the budget.
pub fn run_verification(
    sample: &SubharmonicSample,
    prob: &DiscProblem,
    grid: &GridSpec,
    tolerance: f64,
) -> Result<VerificationReport> {
    prob.validate()?;
    grid.validate()?;
    if !(tolerance >= 0.0 && tolerance.is_finite()) {
        return Err(Error::validation("tolerance", "must be nonnegative and finite"));
    }
    let unit_sup = boundary_sup(sample, SUP_COARSE, SUP_TOL)?;
    if prob.boundary_sup < unit_sup - SUP_TOL {
        return Err(Error::validation(
            "problem.boundary_sup",
            format!("{} is below the sample's supremum {unit_sup} on the unit circle", prob.boundary_sup),
        ));
    }
    let big_r = prob.big_r;
    let plane = Dimension::PLANE;

    let sup_d = circle_sup(sample, big_r, SUP_COARSE, SUP_TOL)?;
    let mu_d = sample.riesz.restrict_to_closed_ball(&Point::origin(2), big_r);
    let d_points = grid.open_disc(big_r);
    let pointwise: Vec<(f64, bool, bool)> = d_points
        .par_iter()
        .map(|&w| -> Result<(f64, bool, bool)> {
            let (w, moved) = avoid_zeros(sample, w);
            let bound = theorem1_pointwise_bound(plane, big_r, &Point::from(w), 2.0 * big_r, sup_d, &mu_d)?;
            let u = sample.eval(w);
            let slack = (u - bound).to_f64();
            let violated = match bound {
                ExtendedReal::Finite(b) => u.to_f64() < b - tolerance * (1.0 + b.abs()),
                ExtendedReal::NegInf => false,
                ExtendedReal::PosInf => true,
            };
            Ok((slack, violated, moved))
        })
        .collect::<Result<_>>()?;

    let cert = disc_certificate(prob)?;
    let lower = cert.lower_bound.to_f64();
    let s_points = grid.closed_disc(prob.s0);
    let on_s: Vec<(Complex64, f64, bool)> = s_points
        .par_iter()
        .map(|&w| {
            let (w, moved) = avoid_zeros(sample, w);
            (w, sample.eval(w).to_f64() - lower, moved)
        })
        .collect();

    let cell_radius = grid.cell_radius(prob.s0).min(prob.r);
    let flagged: Vec<Complex64> = on_s.iter().filter(|(_, slack, _)| *slack < 0.0).map(|t| t.0).collect();
    let balls: Vec<Ball> = flagged.iter().map(|&w| Ball::new(Point::from(w), cell_radius)).collect();
    let measured = content_upper_balls(&balls, &prob.gauge, prob.r)?;
    let budget = cert.content_budget;

    let min_of = |it: &mut dyn Iterator<Item = f64>| it.fold(f64::INFINITY, f64::min);
    Ok(VerificationReport {
        problem: prob.clone(),
        grid: *grid,
        tolerance,
        sup_on_inner_circle: sup_d,
        pointwise_checked: pointwise.len(),
        pointwise_violations: pointwise.iter().filter(|t| t.1).count(),
        grid_points_on_s: on_s.len(),
        perturbed_points: pointwise.iter().filter(|t| t.2).count() + on_s.iter().filter(|t| t.2).count(),
        lower_bound: cert.lower_bound,
        exceptional_points: flagged.iter().map(|w| [w.re, w.im]).collect(),
        cell_radius,
        budget_exceeded: measured.value > budget,
        margins: Margins {
            pointwise_worst_slack: min_of(&mut pointwise.iter().map(|t| t.0)),
            certificate_worst_slack: min_of(&mut on_s.iter().map(|t| t.1)),
            content_slack: budget - measured.value,
        },
        measured_content: measured,
        budget,
    })
}

/// Open annulus `inner < |z| < outer` in which random zeros are placed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Annulus {
    pub inner: f64,
    pub outer: f64,
}

impl Annulus {
    fn validate(&self) -> Result<()> {
        if !(self.inner > 0.0) {
            return Err(Error::validation("zone", "annulus must exclude the origin"));
        }
        if !(self.outer > self.inner && self.outer.is_finite()) {
            return Err(Error::validation("zone", "need inner < outer < inf"));
        }
        Ok(())
    }

    /// Uniform by area.
    fn sample(&self, rng: &mut ChaCha8Rng) -> Complex64 {
        let (a, b) = (self.inner * self.inner, self.outer * self.outer);
        let rho = rng.gen_range(a..b).sqrt();
        Complex64::from_polar(rho, rng.gen_range(0.0..TAU))
    }
}

/// Reproducible family: each sample has 1 to 6 zeros of multiplicity 1 to 3
/// placed uniformly in the zone.
pub fn random_family(seed: u64, count: usize, zone: Annulus) -> Result<Vec<SubharmonicSample>> {
    if count == 0 {
        return Err(Error::validation("count", "must be at least 1"));
    }
    zone.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=6);
            let zeros = (0..k).map(|_| (zone.sample(&mut rng), rng.gen_range(1..=3))).collect();
            make_log_poly(zeros)
        })
        .collect()
}

/// Reproducible stress family for a disc problem: 1 to 3 zeros of
/// multiplicity 5 to 40 inside `S`, plus up to 3 simple zeros elsewhere in
/// the unit disc.
pub fn stress_family(seed: u64, count: usize, s0: f64) -> Result<Vec<SubharmonicSample>> {
    if count == 0 {
        return Err(Error::validation("count", "must be at least 1"));
    }
    if !(s0 > 0.0 && s0 < 1.0) {
        return Err(Error::validation("s0", "stress zeros need 0 < s0 < 1"));
    }
    let inside = Annulus {
        inner: s0 * 1e-3,
        outer: s0,
    };
    let elsewhere = Annulus {
        inner: 0.05,
        outer: 0.99,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let heavy = rng.gen_range(1..=3);
            let light = rng.gen_range(0..=3);
            let mut zeros: Vec<(Complex64, u32)> =
                (0..heavy).map(|_| (inside.sample(&mut rng), rng.gen_range(5..=40))).collect();
            zeros.extend((0..light).map(|_| (elsewhere.sample(&mut rng), 1)));
            make_log_poly(zeros)
        })
        .collect()
}
