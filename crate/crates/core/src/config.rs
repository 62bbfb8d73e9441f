use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::bounds::Mode;
use crate::error::{Error, Result};
use crate::stats::check_confidence;

pub const DEFAULT_SAMPLES_PER_K: u64 = 10_000_000;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_CHUNK_SIZE: u64 = 100_000;
pub const DEFAULT_CONFIDENCE: f64 = 0.95;
pub const DEFAULT_SEARCH_CAP: f64 = 1e3;
pub const DEFAULT_REL_ERROR_TARGET: f64 = 0.25;

/// Everything needed to reproduce a table and its bound.
///
/// `output_path` is not echoed into output files, so the same run written
/// to two places yields identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub d: usize,
    pub samples_per_k: u64,
    pub master_seed: u64,
    pub chunk_size: u64,
    pub confidence_level: f64,
    pub mode: Mode,
    pub search_cap: f64,
    pub curve_samples: usize,
    /// Relative standard error above which a Monte Carlo entry is flagged.
    pub rel_error_target: f64,
    #[serde(skip_serializing)]
    pub output_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            d: 2,
            samples_per_k: DEFAULT_SAMPLES_PER_K,
            master_seed: DEFAULT_SEED,
            chunk_size: DEFAULT_CHUNK_SIZE,
            confidence_level: DEFAULT_CONFIDENCE,
            mode: Mode::Mean,
            search_cap: DEFAULT_SEARCH_CAP,
            curve_samples: 0,
            rel_error_target: DEFAULT_REL_ERROR_TARGET,
            output_path: None,
        }
    }
}

impl RunConfig {
    pub fn for_dim(d: usize) -> Self {
        RunConfig {
            d,
            ..RunConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if self.samples_per_k == 0 {
            return Err(Error::InvalidArgument("samples_per_k must be positive".into()));
        }
        if self.chunk_size == 0 {
            return Err(Error::InvalidArgument("chunk_size must be positive".into()));
        }
        check_confidence(self.confidence_level)?;
        if !(self.search_cap.is_finite() && self.search_cap > crate::bounds::SEARCH_FLOOR) {
            return Err(Error::InvalidArgument(format!(
                "search_cap {} must be finite and above {}",
                self.search_cap,
                crate::bounds::SEARCH_FLOOR
            )));
        }
        if self.rel_error_target.is_nan() || self.rel_error_target <= 0.0 {
            return Err(Error::InvalidArgument(
                "rel_error_target must be positive".into(),
            ));
        }
        Ok(())
    }
}
