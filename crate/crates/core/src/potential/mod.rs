//! Dimension-dependent constants, the fundamental kernel and gauges.
//!
//! The kernel `k_{d-2}` is `t` for d = 1, `ln t` for d = 2 and `-t^{2-d}` for
//! d > 2. Divided by `s_{d-1} * d_hat` it is the fundamental solution of the
//! Laplacian, which fixes the normalisation of Riesz measures used
//! throughout the crate.

mod extended;
mod gamma;
mod gauge;
mod point;

pub use extended::ExtendedReal;
pub use gamma::gamma;
pub use gauge::Gauge;
pub use point::{Ball, Point};

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Dimension `d >= 1` of the ambient Euclidean space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dimension(u32);

impl Dimension {
    pub const PLANE: Dimension = Dimension(2);

    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::validation("d", "dimension must be >= 1"));
        }
        Ok(Dimension(d))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `d_hat = max{1, d - 2}`.
    pub fn d_hat(self) -> f64 {
        self.0.saturating_sub(2).max(1) as f64
    }
}

/// Area of the unit sphere in R^d: `s_{d-1} = 2 pi^{d/2} / Gamma(d/2)`.
pub fn sphere_area(d: Dimension) -> f64 {
    match d.get() {
        1 => 2.0,
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        n => {
            let half = n as f64 / 2.0;
            2.0 * PI.powf(half) / gamma(half)
        }
    }
}

/// The increasing kernel `k_{d-2}(t)` for `t >= 0`, with its limit at 0.
pub fn kernel(d: Dimension, t: f64) -> ExtendedReal {
    debug_assert!(t >= 0.0, "kernel needs t >= 0");
    match d.get() {
        1 => ExtendedReal::Finite(t),
        _ if t == 0.0 => ExtendedReal::NegInf,
        2 => ExtendedReal::Finite(t.ln()),
        n => ExtendedReal::Finite(-t.powi(-(n as i32 - 2))),
    }
}

/// Normalising constant of the power gauge: `c_p = pi^{p/2} / Gamma(p/2 + 1)`.
///
/// This is the volume of the unit ball of R^p when p is an integer.
pub fn gauge_constant(p: f64) -> f64 {
    debug_assert!(p >= 0.0);
    PI.powf(p / 2.0) / gamma(p / 2.0 + 1.0)
}

/// Covering constant `5^d` of the Vitali-type lemma behind the
/// exceptional-set budget.
pub fn vitali_constant(d: Dimension) -> f64 {
    5f64.powi(d.get() as i32)
}
