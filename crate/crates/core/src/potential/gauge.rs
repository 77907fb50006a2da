use serde::Serialize;

use super::gauge_constant;
use crate::error::{Error, Result};

/// A covering gauge `h` with `h(0) = 0`, used to price balls in Hausdorff
/// content.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Gauge {
    /// `h(t) = b * c_p * t^p`.
    Power {
        #[serde(rename = "B")]
        b: f64,
        p: f64,
    },
    /// Samples `(t_i, h_i)` starting at `(0, 0)`, interpolated linearly.
    Tabulated { t: Vec<f64>, h: Vec<f64> },
}

impl Gauge {
    /// Power gauge. `p > 0` keeps `h(0) = 0`; `b = 0` gives the zero gauge.
    pub fn power(b: f64, p: f64) -> Result<Self> {
        if !(b.is_finite() && b >= 0.0) {
            return Err(Error::validation("gauge.B", format!("must be finite and >= 0, got {b}")));
        }
        if !(p.is_finite() && p > 0.0) {
            return Err(Error::validation("gauge.p", format!("must be finite and > 0, got {p}")));
        }
        Ok(Gauge::Power { b, p })
    }

    /// Tabulated gauge from samples. Abscissae must start at 0 and increase
    /// strictly; values must start at 0 and be nondecreasing.
    pub fn tabulated(t: Vec<f64>, h: Vec<f64>) -> Result<Self> {
        if t.len() != h.len() || t.len() < 2 {
            return Err(Error::validation(
                "gauge.table",
                "needs at least two (t, h) samples of equal length",
            ));
        }
        if t[0] != 0.0 || h[0] != 0.0 {
            return Err(Error::validation("gauge.table", "first sample must be (0, 0)"));
        }
        if t.windows(2).any(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
            return Err(Error::validation("gauge.table", "abscissae must increase strictly"));
        }
        if h.windows(2).any(|w| !(w[1] >= w[0]) || !w[1].is_finite()) {
            return Err(Error::validation("gauge.table", "values must be nondecreasing"));
        }
        Ok(Gauge::Tabulated { t, h })
    }

    /// Right end of the interval the gauge is defined on.
    pub fn domain_max(&self) -> f64 {
        match self {
            Gauge::Power { .. } => f64::INFINITY,
            Gauge::Tabulated { t, .. } => *t.last().unwrap(),
        }
    }

    /// Evaluates `h(t)` for `t >= 0`. Tabulated gauges are held constant
    /// past their last sample; callers check `domain_max` first.
    pub fn eval(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        match self {
            Gauge::Power { b, p } => {
                if *b == 0.0 || t == 0.0 {
                    0.0
                } else {
                    b * gauge_constant(*p) * t.powf(*p)
                }
            }
            Gauge::Tabulated { t: ts, h } => {
                let last = ts.len() - 1;
                if t >= ts[last] {
                    return h[last];
                }
                let i = ts.partition_point(|&x| x <= t) - 1;
                let w = (t - ts[i]) / (ts[i + 1] - ts[i]);
                h[i] + w * (h[i + 1] - h[i])
            }
        }
    }
}
