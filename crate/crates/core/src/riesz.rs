//! Atomic Riesz measures and their counting functions.
//!
//! For `u = sum_k m_k ln|z - a_k|` the Riesz measure is exactly
//! `sum_k m_k delta_{a_k}`, so test functions carry their measure with them
//! and no Laplacian is ever computed numerically.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::potential::{kernel, Dimension, ExtendedReal, Point};

/// Finite positive atomic measure on R^d.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct AtomicMeasure {
    atoms: Vec<(Point, f64)>,
}

impl AtomicMeasure {
    pub fn new(atoms: Vec<(Point, f64)>) -> Result<Self> {
        if let Some((_, m)) = atoms.iter().find(|(_, m)| !(*m > 0.0 && m.is_finite())) {
            return Err(Error::validation("mu", format!("atom masses must be positive and finite, got {m}")));
        }
        if let Some(first) = atoms.first() {
            let dim = first.0.dim();
            if atoms.iter().any(|(p, _)| p.dim() != dim) {
                return Err(Error::validation("mu", "atoms of mixed dimension"));
            }
        }
        Ok(AtomicMeasure { atoms })
    }

    pub fn empty() -> Self {
        AtomicMeasure::default()
    }

    pub fn atoms(&self) -> &[(Point, f64)] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|(_, m)| m).sum()
    }

    /// Restriction to the closed ball `|a - center| <= radius`.
    pub fn restrict_to_closed_ball(&self, center: &Point, radius: f64) -> AtomicMeasure {
        AtomicMeasure {
            atoms: self
                .atoms
                .iter()
                .filter(|(a, _)| a.dist(center) <= radius)
                .cloned()
                .collect(),
        }
    }

    /// Sum of two measures (atoms are concatenated, not merged).
    pub fn union(&self, other: &AtomicMeasure) -> AtomicMeasure {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        AtomicMeasure { atoms }
    }
}

/// `mu(closed ball of radius t about x)`.
pub fn radial_counting(mu: &AtomicMeasure, x: &Point, t: f64) -> f64 {
    debug_assert!(t >= 0.0);
    mu.atoms
        .iter()
        .filter(|(a, _)| a.dist(x) <= t)
        .map(|(_, m)| m)
        .sum()
}

/// Integrated counting function
/// `N_x(r) = d_hat * int_0^r mu_rad(t) / t^{d-1} dt`.
///
/// Each atom at distance `0 < rho <= r` contributes `m (k(r) - k(rho))`; an
/// atom sitting at `x` makes the integral diverge for d >= 2.
pub fn integrated_counting(mu: &AtomicMeasure, x: &Point, r: f64, d: Dimension) -> ExtendedReal {
    debug_assert!(r >= 0.0);
    if r == 0.0 {
        return ExtendedReal::ZERO;
    }
    let k_r = kernel(d, r);
    mu.atoms
        .iter()
        .filter_map(|(a, m)| {
            let rho = a.dist(x);
            (rho <= r).then(|| (k_r - kernel(d, rho)).scale(*m))
        })
        .fold(ExtendedReal::ZERO, |acc, term| acc + term)
}
