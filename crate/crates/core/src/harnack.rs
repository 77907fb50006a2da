//! Harnack distances on balls and on the punctured unit disc.
//!
//! Closed forms:
//!
//! * distance from the centre of `B_0(r)` in R^d:
//!   `(r + rho) r^{d-2} / (r - rho)^{d-1}`;
//! * pairs in a ball, via the centre as intermediate point (upper bound);
//! * pairs in the unit disc, exactly, by transporting one point to the
//!   centre with a disc automorphism;
//! * equal-modulus pairs in the punctured disc: `((1+R)/(1-R))^2`.
//!
//! The numerical oracle maximises ratios of Poisson kernels over the
//! boundary. Every positive harmonic function on a ball is the Poisson
//! integral of a positive boundary measure, so that supremum is the Harnack
//! distance itself.
//!
//! Poisson kernel convention for the disc:
//! `P(w, zeta) = (1 - |w|^2) / (2 pi |zeta - w|^2)`, so `P(0, .) = 1/(2 pi)`.
//! The constant cancels in every ratio the oracle computes.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::potential::{Dimension, ExtendedReal, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HarnackMethod {
    BallFormula,
    /// Disc pair distance through an automorphism moving one point to 0.
    Mobius,
    Triangle,
    PuncturedCircle,
    PoissonOracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HarnackBound {
    /// Always `>= 1`.
    pub value: f64,
    /// `true` for closed-form distances, `false` for upper bounds and
    /// numerical estimates.
    pub exact: bool,
    pub method: HarnackMethod,
}

impl HarnackBound {
    fn new(value: f64, exact: bool, method: HarnackMethod) -> Self {
        debug_assert!(value >= 1.0 - 1e-12, "Harnack distance below 1: {value}");
        HarnackBound {
            value: value.max(1.0),
            exact,
            method,
        }
    }
}

/// Harnack distance between the centre of `B_0(r)` in R^d and a point at
/// distance `rho` from it.
pub fn ball_center_distance(d: Dimension, r: f64, rho: f64) -> Result<HarnackBound> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::validation("r", format!("ball radius must be positive, got {r}")));
    }
    if !(rho >= 0.0) {
        return Err(Error::validation("rho", format!("must be >= 0, got {rho}")));
    }
    if rho >= r {
        return Err(Error::out_of_domain("x", "ball"));
    }
    let d = d.get() as i32;
    let value = (r + rho) * r.powi(d - 2) / (r - rho).powi(d - 1);
    Ok(HarnackBound::new(value, true, HarnackMethod::BallFormula))
}

/// Upper bound for the Harnack distance between two points of `B_0(r)`,
/// multiplying their distances to the centre.
pub fn ball_pair_upper(d: Dimension, r: f64, x: &Point, y: &Point) -> Result<HarnackBound> {
    let dx = ball_center_distance(d, r, x.norm()).map_err(|e| rename_point(e, "x"))?;
    let dy = ball_center_distance(d, r, y.norm()).map_err(|e| rename_point(e, "y"))?;
    Ok(HarnackBound::new(dx.value * dy.value, false, HarnackMethod::Triangle))
}

fn rename_point(e: Error, name: &str) -> Error {
    match e {
        Error::OutOfDomain { domain, .. } => Error::OutOfDomain {
            what: name.to_string(),
            domain,
        },
        other => other,
    }
}

/// Exact Harnack distance between two points of the unit disc:
/// `(1 + |phi|) / (1 - |phi|)` with `phi = (x - y) / (1 - conj(y) x)`.
pub fn disc_pair_distance(x: Complex64, y: Complex64) -> Result<HarnackBound> {
    check_in_disc(x, "x")?;
    check_in_disc(y, "y")?;
    let phi = ((x - y) / (Complex64::new(1.0, 0.0) - y.conj() * x)).norm();
    let value = (1.0 + phi) / (1.0 - phi);
    Ok(HarnackBound::new(value, true, HarnackMethod::Mobius))
}

/// Upper bound `((1+R)/(1-R))^2` for the Harnack distance in the punctured
/// unit disc between any two points of the circle `|w| = R`.
pub fn punctured_disc_circle_bound(big_r: f64) -> Result<HarnackBound> {
    if !(big_r > 0.0 && big_r < 1.0) {
        return Err(Error::out_of_domain("R", "(0, 1)"));
    }
    let q = (1.0 + big_r) / (1.0 - big_r);
    Ok(HarnackBound::new(q * q, false, HarnackMethod::PuncturedCircle))
}

fn check_in_disc(z: Complex64, name: &str) -> Result<()> {
    if !(z.norm() < 1.0) {
        return Err(Error::out_of_domain(name, "unit disc"));
    }
    Ok(())
}

/// Disc Poisson kernel `(1 - |w|^2) / (2 pi |zeta - w|^2)` for
/// `zeta = e^{i angle}`. Returns 0 on the circle away from `zeta`.
pub fn poisson_kernel(w: Complex64, angle: f64) -> f64 {
    let zeta = Complex64::from_polar(1.0, angle);
    let num = 1.0 - w.norm_sqr();
    if num == 0.0 {
        return 0.0;
    }
    num / (TAU * (zeta - w).norm_sqr())
}

/// Points in the coarse boundary scan that precedes local refinement.
pub const COARSE_SCAN: usize = 720;
const MAX_GOLDEN_STEPS: usize = 300;

/// Maximises `f` on `[lo, hi]` by a coarse scan followed by golden-section
/// refinement around the best sample. The refined bracket is narrowed to
/// width `tol`. With `periodic` the interval wraps around.
fn maximize<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, periodic: bool, tol: f64) -> Result<f64> {
    let n = COARSE_SCAN;
    let h = (hi - lo) / n as f64;
    let samples = if periodic { n } else { n + 1 };
    let (best_i, best) = (0..samples)
        .map(|i| (i, f(lo + i as f64 * h)))
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });

    let center = lo + best_i as f64 * h;
    let (mut a, mut b) = if periodic {
        (center - h, center + h)
    } else {
        ((center - h).max(lo), (center + h).min(hi))
    };
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut steps = 0;
    while b - a > tol {
        if steps == MAX_GOLDEN_STEPS {
            return Err(Error::NumericFailure {
                message: format!("boundary search did not reach tolerance {tol:e}"),
                lo: a,
                hi: b,
            });
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        steps += 1;
    }
    Ok(best.max(fc).max(fd).max(f(0.5 * (a + b))))
}

/// Harnack distance in the unit disc computed as
/// `max(sup P(x,.)/P(y,.), sup P(y,.)/P(x,.))` over the boundary circle.
/// `tol` is the angular width to which each supremum is bracketed.
pub fn poisson_disc_distance(x: Complex64, y: Complex64, tol: f64) -> Result<HarnackBound> {
    check_in_disc(x, "x")?;
    check_in_disc(y, "y")?;
    if !(tol > 0.0) {
        return Err(Error::validation("tolerance", "must be positive"));
    }
    if x == y {
        return Ok(HarnackBound::new(1.0, false, HarnackMethod::PoissonOracle));
    }
    let px = 1.0 - x.norm_sqr();
    let py = 1.0 - y.norm_sqr();
    let ratio = |theta: f64| {
        let zeta = Complex64::from_polar(1.0, theta);
        (px * (zeta - y).norm_sqr()) / (py * (zeta - x).norm_sqr())
    };
    let forward = maximize(ratio, 0.0, TAU, true, tol)?;
    let backward = maximize(|t| 1.0 / ratio(t), 0.0, TAU, true, tol)?;
    Ok(HarnackBound::new(
        forward.max(backward),
        false,
        HarnackMethod::PoissonOracle,
    ))
}

/// Harnack distance between the centre of the unit ball of R^d and a point
/// at distance `rho`, from the Poisson kernel
/// `(1 - rho^2) / |x - zeta|^d`. By rotational symmetry the boundary search
/// reduces to the polar angle between `x` and `zeta`.
pub fn poisson_ball_center_distance(d: Dimension, rho: f64, tol: f64) -> Result<HarnackBound> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::out_of_domain("x", "unit ball"));
    }
    if !(tol > 0.0) {
        return Err(Error::validation("tolerance", "must be positive"));
    }
    let half_d = d.get() as f64 / 2.0;
    // P(x, zeta) / P(0, zeta); the sphere-area constant cancels.
    let ratio = |phi: f64| (1.0 - rho * rho) / (1.0 - 2.0 * rho * phi.cos() + rho * rho).powf(half_d);
    let forward = maximize(ratio, 0.0, PI, false, tol)?;
    let backward = maximize(|p| 1.0 / ratio(p), 0.0, PI, false, tol)?;
    Ok(HarnackBound::new(
        forward.max(backward),
        false,
        HarnackMethod::PoissonOracle,
    ))
}

/// Finite positive measure on the unit circle, stored as atoms
/// `(angle, mass)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryAtomMeasure {
    atoms: Vec<(f64, f64)>,
}

impl BoundaryAtomMeasure {
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::validation("mu", "needs at least one atom"));
        }
        if let Some((_, m)) = atoms.iter().find(|(a, m)| !(*m > 0.0 && m.is_finite()) || !a.is_finite()) {
            return Err(Error::validation("mu", format!("atom masses must be positive, got {m}")));
        }
        Ok(BoundaryAtomMeasure { atoms })
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    /// Poisson integral at `w`, a positive harmonic function on the disc.
    pub fn poisson_integral(&self, w: Complex64) -> f64 {
        self.atoms.iter().map(|&(a, m)| m * poisson_kernel(w, a)).sum()
    }
}

/// `w -> b ln(1/|w|) + (Poisson integral of mu)(w)`, a positive harmonic
/// function on the punctured disc.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PuncturedHarmonic {
    pub b: f64,
    pub mu: BoundaryAtomMeasure,
}

pub fn punctured_harmonic_sample(b: f64, mu: BoundaryAtomMeasure) -> Result<PuncturedHarmonic> {
    if !(b >= 0.0 && b.is_finite()) {
        return Err(Error::validation("b", format!("must be >= 0, got {b}")));
    }
    Ok(PuncturedHarmonic { b, mu })
}

impl PuncturedHarmonic {
    /// Evaluates on the closed disc. The origin gives `+inf` when `b > 0`.
    pub fn eval(&self, w: Complex64) -> Result<ExtendedReal> {
        let modulus = w.norm();
        if modulus > 1.0 {
            return Err(Error::out_of_domain("w", "closed unit disc"));
        }
        let poisson = self.mu.poisson_integral(w);
        if modulus == 0.0 && self.b > 0.0 {
            return Ok(ExtendedReal::PosInf);
        }
        let log_part = if self.b == 0.0 { 0.0 } else { -self.b * modulus.ln() };
        Ok(ExtendedReal::Finite(log_part + poisson))
    }
}
