//! Normalized exclusion volumes g̃_d(k).
//!
//! g̃_d(k) is the probability that `k` independent uniform points in the
//! unit d-ball are pairwise more than distance 1 apart. Small cases have
//! closed forms; the rest are hit-or-miss Monte Carlo estimates.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::geometry::{sample_into, separated_from_all};
use crate::stats::{check_confidence, MCEstimate};
use crate::stream::{chunk_lengths, estimation_tag, substream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Exact,
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GTildeEntry {
    pub k: usize,
    pub value: f64,
    pub source: Source,
    pub estimate: Option<MCEstimate>,
    pub exact_form: Option<String>,
}

impl GTildeEntry {
    pub fn exact(k: usize, value: f64, form: impl Into<String>) -> Self {
        GTildeEntry {
            k,
            value,
            source: Source::Exact,
            estimate: None,
            exact_form: Some(form.into()),
        }
    }

    pub fn monte_carlo(k: usize, estimate: MCEstimate) -> Self {
        GTildeEntry {
            k,
            value: estimate.mean,
            source: Source::MonteCarlo,
            estimate: Some(estimate),
            exact_form: None,
        }
    }

    /// Upper confidence limit for Monte Carlo entries, the value otherwise.
    pub fn upper(&self) -> f64 {
        match &self.estimate {
            Some(e) => e.ci_high,
            None => self.value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GTildeTable {
    pub d: usize,
    pub entries: Vec<GTildeEntry>,
    pub k_max: usize,
    pub truncation_note: String,
    /// First Monte Carlo entry with zero hits, past `k_max`. Only the
    /// conservative bound uses it.
    pub zero_hit_entry: Option<GTildeEntry>,
}

impl GTildeTable {
    /// Table from given values, every entry marked exact.
    pub fn from_values(d: usize, values: &[f64], note: impl Into<String>) -> Result<Self> {
        let entries = values
            .iter()
            .enumerate()
            .map(|(k, &v)| GTildeEntry::exact(k, v, "supplied value"))
            .collect::<Vec<_>>();
        let table = GTildeTable {
            d,
            k_max: entries.len().saturating_sub(1),
            entries,
            truncation_note: note.into(),
            zero_hit_entry: None,
        };
        table.validate()?;
        Ok(table)
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn is_monotone(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].value >= w[1].value)
    }

    /// Structural checks applied to every table read from disk.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfiguration(msg));
        if self.d == 0 {
            return bad("d: must be at least 1".into());
        }
        if self.entries.len() < 2 {
            return bad("entries: need at least k = 0 and k = 1".into());
        }
        if self.k_max + 1 != self.entries.len() {
            return bad(format!(
                "k_max: {} does not match {} entries",
                self.k_max,
                self.entries.len()
            ));
        }
        for (i, e) in self.entries.iter().enumerate() {
            if e.k != i {
                return bad(format!("entries[{i}].k: expected {i}, found {}", e.k));
            }
            check_entry(e, &format!("entries[{i}]"))?;
        }
        for i in 0..2 {
            if self.entries[i].value != 1.0 {
                return bad(format!("entries[{i}].value: must equal 1"));
            }
        }
        if let Some(z) = &self.zero_hit_entry {
            if z.k != self.k_max + 1 {
                return bad(format!(
                    "zero_hit_entry.k: expected {}, found {}",
                    self.k_max + 1,
                    z.k
                ));
            }
            check_entry(z, "zero_hit_entry")?;
            if z.value != 0.0 || z.source != Source::MonteCarlo {
                return bad("zero_hit_entry: must be a Monte Carlo entry with value 0".into());
            }
        }
        Ok(())
    }
}

fn check_entry(e: &GTildeEntry, at: &str) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidConfiguration(msg));
    if !(0.0..=1.0).contains(&e.value) {
        return bad(format!("{at}.value: {} outside [0, 1]", e.value));
    }
    match (e.source, &e.estimate, &e.exact_form) {
        (Source::Exact, None, Some(_)) => Ok(()),
        (Source::MonteCarlo, Some(est), None) => {
            if est.mean != e.value {
                return bad(format!("{at}.value: differs from estimate.mean"));
            }
            if !(est.ci_low <= est.mean && est.mean <= est.ci_high && est.ci_high <= 1.0) {
                return bad(format!("{at}.estimate: interval does not bracket the mean"));
            }
            Ok(())
        }
        (Source::Exact, _, _) => bad(format!(
            "{at}.source: exact entries carry exact_form and no estimate"
        )),
        (Source::MonteCarlo, _, _) => bad(format!(
            "{at}.source: monte_carlo entries carry an estimate and no exact_form"
        )),
    }
}

/// g̃_2(2) = 3√3/(4π).
pub fn disk_pair_exact() -> f64 {
    3.0 * 3f64.sqrt() / (4.0 * PI)
}

fn exact_entry(d: usize, k: usize) -> Option<(f64, &'static str)> {
    match (d, k) {
        (0, _) => None,
        (_, 0) => Some((1.0, "1 (empty configuration)")),
        (_, 1) => Some((1.0, "1 (a single point covers the whole ball)")),
        (1, 2) => Some((0.25, "1/4")),
        (1, _) => Some((
            0.0,
            "0 (three points pairwise more than 1 apart need a span above 2)",
        )),
        (2, 2) => Some((disk_pair_exact(), "3*sqrt(3)/(4*pi)")),
        (2, k) if k >= 6 => Some((
            0.0,
            "0 (six points pairwise more than 1 apart do not fit in the closed unit disk)",
        )),
        _ => None,
    }
}

/// Closed-form value of g̃_d(k) when one is known.
pub fn exact_g_tilde(d: usize, k: usize) -> Option<f64> {
    exact_entry(d, k).map(|(v, _)| v)
}

/// Hit-or-miss estimate of g̃_d(k).
///
/// The samples are split into chunks of `chunk_size`; chunk `i` draws from
/// the substream `(master_seed, (d, k), i)`, so the result is the same for
/// any number of rayon workers.
pub fn estimate_g_tilde(
    d: usize,
    k: usize,
    samples: u64,
    master_seed: u64,
    chunk_size: u64,
    confidence_level: f64,
) -> Result<MCEstimate> {
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    if samples == 0 || chunk_size == 0 {
        return Err(Error::InvalidArgument(
            "samples and chunk_size must be positive".into(),
        ));
    }
    check_confidence(confidence_level)?;
    let hits = if k <= 1 {
        samples
    } else {
        let tag = estimation_tag(d, k);
        chunk_lengths(samples, chunk_size)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(chunk, len)| count_hits(d, k, len, master_seed, tag, chunk))
            .sum()
    };
    MCEstimate::from_counts(hits, samples, confidence_level)
}

fn count_hits(d: usize, k: usize, trials: u64, seed: u64, tag: u64, chunk: u64) -> u64 {
    let mut rng = substream(seed, tag, chunk);
    let mut buf = vec![0.0; d * k];
    let mut hits = 0;
    'trial: for _ in 0..trials {
        // Points are drawn one at a time; a trial ends at its first overlap.
        for j in 0..k {
            let (placed, rest) = buf.split_at_mut(j * d);
            let candidate = &mut rest[..d];
            sample_into(&mut rng, candidate);
            if !separated_from_all(placed, candidate) {
                continue 'trial;
            }
        }
        hits += 1;
    }
    hits
}

/// Largest k the builder will consider: 3^d points at most fit in the ball.
pub fn hard_cap(d: usize) -> usize {
    3usize.checked_pow(d as u32).unwrap_or(usize::MAX)
}

/// Build the table for k = 0, 1, ... until g̃ vanishes.
///
/// Stops at the first exact zero, or at the first Monte Carlo run with no
/// hit (kept as `zero_hit_entry`), or at the hard cap 3^d.
pub fn build_gtable(config: &RunConfig) -> Result<GTildeTable> {
    config.validate()?;
    let d = config.d;
    let cap = hard_cap(d);
    let mut entries = Vec::new();
    let mut zero_hit_entry = None;
    let mut warnings = Vec::new();
    let mut stop = None;

    for k in 0..=cap {
        if let Some((value, form)) = exact_entry(d, k) {
            if value == 0.0 {
                stop = Some(format!("g~_{d}({k}) = {form}; the sum stops at k_max = {}", k - 1));
                break;
            }
            entries.push(GTildeEntry::exact(k, value, form));
            continue;
        }
        let est = estimate_g_tilde(
            d,
            k,
            config.samples_per_k,
            config.master_seed,
            config.chunk_size,
            config.confidence_level,
        )?;
        if est.hits == 0 {
            stop = Some(format!(
                "no hit for k = {k} in {} samples; upper limit {:e} kept for conservative mode; \
                 k_max = {}",
                est.samples,
                est.ci_high,
                k - 1
            ));
            zero_hit_entry = Some(GTildeEntry::monte_carlo(k, est));
            break;
        }
        if est.relative_error() > config.rel_error_target {
            warnings.push(format!(
                "warning: k = {k} relative standard error {:.3} exceeds target {} ({} hits); \
                 raise the sample budget",
                est.relative_error(),
                config.rel_error_target,
                est.hits
            ));
        }
        entries.push(GTildeEntry::monte_carlo(k, est));
    }

    let mut note = stop.unwrap_or_else(|| format!("reached the hard cap k = 3^{d} = {cap}"));
    for w in warnings {
        note.push_str("; ");
        note.push_str(&w);
    }
    let table = GTildeTable {
        d,
        k_max: entries.len() - 1,
        entries,
        truncation_note: note,
        zero_hit_entry,
    };
    table.validate()?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_values() {
        assert_eq!(exact_g_tilde(5, 0), Some(1.0));
        assert_eq!(exact_g_tilde(7, 1), Some(1.0));
        assert_eq!(exact_g_tilde(1, 2), Some(0.25));
        assert_eq!(exact_g_tilde(1, 3), Some(0.0));
        assert_eq!(exact_g_tilde(2, 6), Some(0.0));
        assert_eq!(exact_g_tilde(2, 3), None);
        assert_eq!(exact_g_tilde(3, 2), None);
        assert!((exact_g_tilde(2, 2).unwrap() - 0.4134966715663).abs() < 1e-12);
    }

    #[test]
    fn trivial_k_needs_no_draws() {
        let e = estimate_g_tilde(3, 1, 1000, 1, 100, 0.95).unwrap();
        assert_eq!(e.hits, 1000);
        assert_eq!(e.mean, 1.0);
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| estimate_g_tilde(2, 3, 200_000, 9, 10_000, 0.95).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn one_dimensional_table() {
        let table = build_gtable(&RunConfig::for_dim(1)).unwrap();
        assert_eq!(table.values(), vec![1.0, 1.0, 0.25]);
        assert_eq!(table.k_max, 2);
        assert!(table.zero_hit_entry.is_none());
    }

    #[test]
    fn zero_hits_end_the_table() {
        let cfg = RunConfig {
            d: 3,
            samples_per_k: 20_000,
            chunk_size: 5_000,
            ..RunConfig::default()
        };
        let t = build_gtable(&cfg).unwrap();
        let z = t.zero_hit_entry.as_ref().expect("zero-hit entry");
        assert_eq!(z.k, t.k_max + 1);
        assert_eq!(z.upper(), 3.0 / 20_000.0);
        assert!(t.is_monotone());
        assert!(t.truncation_note.contains("no hit"));
    }

    #[test]
    fn validate_names_the_field() {
        let mut t = GTildeTable::from_values(2, &[1.0, 1.0, 0.5], "x").unwrap();
        t.entries[2].value = 1.5;
        let msg = t.validate().unwrap_err().to_string();
        assert!(msg.contains("entries[2].value"), "{msg}");
        t.entries[2].value = 0.5;
        t.k_max = 5;
        assert!(t.validate().unwrap_err().to_string().contains("k_max"));
        assert!(GTildeTable::from_values(2, &[1.0, 0.9], "x").is_err());
    }
}
