//! Run configuration for `certify`. Unknown keys are rejected.

use std::path::{Path, PathBuf};

use minorant::bounds::DiscProblem;
use minorant::harness::{self, Annulus, GridSpec, SubharmonicSample};
use minorant::Gauge;
use num_complex::Complex64;
use serde::Deserialize;

use crate::CliError;

/// Zone for the seeded sample drawn when a config lists no zeros.
pub const RANDOM_ZONE: Annulus = Annulus {
    inner: 0.05,
    outer: 0.99,
};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub problem: ProblemConfig,
    pub gauge: GaugeConfig,
    #[serde(default)]
    pub zeros: Option<Vec<(f64, f64, u32)>>,
    pub grid: GridConfig,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    #[serde(rename = "R")]
    pub big_r: f64,
    pub s0: f64,
    pub r: f64,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GaugeConfig {
    Power {
        #[serde(rename = "B")]
        b: f64,
        p: f64,
    },
    Tabulated {
        t: Vec<f64>,
        h: Vec<f64>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub radii: usize,
    pub angles: usize,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn gauge(&self) -> Result<Gauge, CliError> {
        let g = match &self.gauge {
            GaugeConfig::Power { b, p } => Gauge::power(*b, *p),
            GaugeConfig::Tabulated { t, h } => Gauge::tabulated(t.clone(), h.clone()),
        };
        Ok(g?)
    }

    /// The listed zeros, or one seeded random sample when none are listed.
    pub fn sample(&self, seed: u64) -> Result<SubharmonicSample, CliError> {
        match &self.zeros {
            Some(list) => {
                let zeros = list
                    .iter()
                    .map(|&(re, im, m)| (Complex64::new(re, im), m))
                    .collect();
                Ok(harness::make_log_poly(zeros)?)
            }
            None => Ok(harness::random_family(seed, 1, RANDOM_ZONE)?.remove(0)),
        }
    }

    pub fn problem(&self, sample: &SubharmonicSample) -> Result<DiscProblem, CliError> {
        let p = &self.problem;
        Ok(harness::problem_for(sample, p.big_r, p.s0, p.r, self.gauge()?)?)
    }

    pub fn grid(&self) -> GridSpec {
        GridSpec {
            radii: self.grid.radii,
            angles: self.grid.angles,
        }
    }
}
