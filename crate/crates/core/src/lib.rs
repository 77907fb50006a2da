//! Explicit lower-bound certificates for subharmonic functions on balls and
//! discs.
//!
//! The crate is organised bottom-up:
//!
//! * [`potential`]: dimension constants, the fundamental kernel, gauges and
//!   extended reals.
//! * [`harnack`]: Harnack distances on balls and punctured discs, with a
//!   Poisson-kernel oracle.
//! * [`riesz`]: atomic Riesz measures and their counting functions.
//! * [`hcontent`]: upper estimates of Hausdorff h-content by covering.
//! * [`bounds`]: the pointwise and exceptional-set certificates.
//! * [`harness`]: test families with known Riesz measures and end-to-end
//!   verification of every certificate.

pub mod bounds;
pub mod error;
pub mod harnack;
pub mod harness;
pub mod hcontent;
pub mod potential;
pub mod quad;
pub mod riesz;

pub use error::{Error, Result};
pub use potential::{Dimension, ExtendedReal, Gauge, Point};
