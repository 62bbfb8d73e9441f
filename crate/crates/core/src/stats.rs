//! Bernoulli hit-fraction estimates and their confidence intervals.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};
use statrs::function::beta::beta_reg;

use crate::error::{Error, Result};

/// Below this many hits the interval is the exact binomial one.
pub const NORMAL_APPROX_MIN_HITS: u64 = 100;

/// Numerator of the rule-of-three bound used when no hit was seen.
pub const RULE_OF_THREE: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub mean: f64,
    pub hits: u64,
    pub samples: u64,
    pub std_error: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub confidence_level: f64,
}

impl MCEstimate {
    pub fn from_counts(hits: u64, samples: u64, confidence_level: f64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::InvalidArgument("samples must be positive".into()));
        }
        if hits > samples {
            return Err(Error::InvalidArgument(format!(
                "hits {hits} exceed samples {samples}"
            )));
        }
        check_confidence(confidence_level)?;
        let n = samples as f64;
        let mean = hits as f64 / n;
        let std_error = (mean * (1.0 - mean) / n).sqrt();
        let (ci_low, ci_high) = if hits == 0 {
            (0.0, zero_hit_upper(samples, confidence_level))
        } else if hits < NORMAL_APPROX_MIN_HITS {
            clopper_pearson(hits, samples, confidence_level)
        } else {
            let z = normal_quantile(0.5 + confidence_level / 2.0);
            (
                (mean - z * std_error).max(0.0),
                (mean + z * std_error).min(1.0),
            )
        };
        Ok(MCEstimate {
            mean,
            hits,
            samples,
            std_error,
            ci_low: ci_low.min(mean),
            ci_high: ci_high.max(mean),
            confidence_level,
        })
    }

    /// Relative standard error, infinite when no hit was recorded.
    pub fn relative_error(&self) -> f64 {
        if self.hits == 0 {
            f64::INFINITY
        } else {
            self.std_error / self.mean
        }
    }
}

pub(crate) fn check_confidence(level: f64) -> Result<()> {
    if level > 0.0 && level < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "confidence level {level} must lie strictly between 0 and 1"
        )))
    }
}

fn normal_quantile(p: f64) -> f64 {
    Normal::standard().inverse_cdf(p)
}

/// Upper limit after zero hits in `samples` trials: 3/N at the 95% level,
/// the exact one-sided −ln(1−c)/N when the requested level is higher.
pub fn zero_hit_upper(samples: u64, confidence_level: f64) -> f64 {
    let numerator = RULE_OF_THREE.max(-(1.0 - confidence_level).ln());
    (numerator / samples as f64).min(1.0)
}

/// Exact two-sided binomial interval via beta quantiles.
pub fn clopper_pearson(hits: u64, samples: u64, confidence_level: f64) -> (f64, f64) {
    let alpha = 1.0 - confidence_level;
    let x = hits as f64;
    let n = samples as f64;
    let low = if hits == 0 {
        0.0
    } else {
        beta_quantile(alpha / 2.0, x, n - x + 1.0)
    };
    let high = if hits == samples {
        1.0
    } else {
        beta_quantile(1.0 - alpha / 2.0, x + 1.0, n - x)
    };
    (low, high)
}

/// Inverse of the regularized incomplete beta function by bisection.
fn beta_quantile(p: f64, a: f64, b: f64) -> f64 {
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if beta_reg(a, b, mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_std_error() {
        let e = MCEstimate::from_counts(2500, 10_000, 0.95).unwrap();
        assert_eq!(e.mean, 0.25);
        assert!((e.std_error - (0.25f64 * 0.75 / 1e4).sqrt()).abs() < 1e-15);
        let z = 1.959963984540054;
        assert!((e.ci_low - (0.25 - z * e.std_error)).abs() < 1e-9);
        assert!((e.ci_high - (0.25 + z * e.std_error)).abs() < 1e-9);
    }

    #[test]
    fn zero_hits_use_rule_of_three() {
        let e = MCEstimate::from_counts(0, 1_000_000, 0.95).unwrap();
        assert_eq!(e.mean, 0.0);
        assert_eq!(e.ci_low, 0.0);
        assert_eq!(e.ci_high, 3e-6);
        assert_eq!(e.std_error, 0.0);
        let strict = MCEstimate::from_counts(0, 1000, 0.999).unwrap();
        assert!((strict.ci_high - 1000f64.ln() / 1000.0).abs() < 1e-12);
    }

    #[test]
    fn clopper_pearson_matches_reference_values() {
        // 1 hit in 10: R binom.test gives (0.002528579, 0.445016117).
        let (lo, hi) = clopper_pearson(1, 10, 0.95);
        assert!((lo - 0.002528579).abs() < 1e-8, "{lo}");
        assert!((hi - 0.445016117).abs() < 1e-8, "{hi}");
        // Large-n limit approaches the Poisson interval (0.0253, 5.5716)/n.
        let n = 10_000_000;
        let (lo, hi) = clopper_pearson(1, n, 0.95);
        assert!((lo * n as f64 - 0.025318).abs() < 1e-4, "{}", lo * n as f64);
        assert!((hi * n as f64 - 5.571643).abs() < 1e-4, "{}", hi * n as f64);
    }

    #[test]
    fn low_hit_interval_brackets_mean() {
        for hits in [1, 5, 50, 99] {
            let e = MCEstimate::from_counts(hits, 1_000_000, 0.95).unwrap();
            assert!(e.ci_low < e.mean && e.mean < e.ci_high);
        }
        let all = MCEstimate::from_counts(20, 20, 0.95).unwrap();
        assert_eq!(all.ci_high, 1.0);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(MCEstimate::from_counts(0, 0, 0.95).is_err());
        assert!(MCEstimate::from_counts(5, 4, 0.95).is_err());
        assert!(MCEstimate::from_counts(1, 4, 1.0).is_err());
        assert!(MCEstimate::from_counts(1, 4, 0.0).is_err());
    }
}
