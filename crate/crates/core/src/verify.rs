//! Built-in oracle suite behind `hsgas verify`.

use std::fmt;

use rayon::prelude::*;

use crate::bounds::{optimize_a, pressure_series_tail, Mode};
use crate::combinatorics::{all_degree_sequences, cayley_count, prufer_enumerate};
use crate::geometry::sample_into;
use crate::gtable::{estimate_g_tilde, exact_g_tilde, GTildeTable};
use crate::oracle;
use crate::stream::{chunk_lengths, substream, TAG_SAMPLER};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {}: {}", self.name, self.detail)
    }
}

fn check(name: impl Into<String>, passed: bool, detail: String) -> Check {
    Check {
        name: name.into(),
        passed,
        detail,
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Value under test for g̃_2(2).
    pub disk_pair_value: f64,
    pub samples: u64,
    pub seed: u64,
    pub chunk_size: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            disk_pair_value: exact_g_tilde(2, 2).expect("closed form"),
            samples: 1_000_000,
            seed: 42,
            chunk_size: 100_000,
        }
    }
}

/// Mean of |X|² over `samples` uniform ball points and its standard error.
pub fn sampler_mean_sq_norm(d: usize, samples: u64, seed: u64, chunk_size: u64) -> (f64, f64) {
    let sums: Vec<(f64, f64)> = chunk_lengths(samples, chunk_size)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(chunk, len)| {
            let mut rng = substream(seed, TAG_SAMPLER - d as u64, chunk);
            let mut p = vec![0.0; d];
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in 0..len {
                sample_into(&mut rng, &mut p);
                let r2: f64 = p.iter().map(|x| x * x).sum();
                s += r2;
                s2 += r2 * r2;
            }
            (s, s2)
        })
        .collect();
    let (s, s2) = sums
        .iter()
        .fold((0.0, 0.0), |acc, x| (acc.0 + x.0, acc.1 + x.1));
    let n = samples as f64;
    let mean = s / n;
    let var = (s2 / n - mean * mean).max(0.0);
    (mean, (var / n).sqrt())
}

pub fn run(opts: &VerifyOptions) -> Vec<Check> {
    let mut out = Vec::new();

    for d in [1, 2, 3, 5] {
        let (mean, se) = sampler_mean_sq_norm(d, opts.samples, opts.seed, opts.chunk_size);
        let target = oracle::ball_mean_sq_norm(d);
        let z = (mean - target).abs() / se;
        out.push(check(
            format!("sampler_radial_moment_d{d}"),
            z <= 4.0,
            format!("mean |x|^2 = {mean:.6}, expected {target:.6}, {z:.2} standard errors"),
        ));
    }

    let exact = exact_g_tilde(1, 2).unwrap_or(f64::NAN);
    let grid = oracle::interval_pair_grid(1e-3);
    out.push(check(
        "d1_pair_closed_form_vs_grid",
        (exact - grid).abs() <= 2e-3,
        format!("closed form {exact}, grid quadrature {grid:.6}"),
    ));
    out.push(mc_check("d1_pair_closed_form_vs_mc", 1, 2, exact, opts));
    match estimate_g_tilde(1, 3, opts.samples, opts.seed, opts.chunk_size, 0.95) {
        Ok(e) => out.push(check(
            "d1_three_points_vanish",
            e.hits == 0 && exact_g_tilde(1, 3) == Some(0.0),
            format!("{} hits in {} samples", e.hits, e.samples),
        )),
        Err(e) => out.push(check("d1_three_points_vanish", false, e.to_string())),
    }

    let quad = oracle::disk_pair_quadrature();
    out.push(check(
        "disk_pair_closed_form_vs_quadrature",
        (opts.disk_pair_value - quad).abs() <= 1e-12,
        format!(
            "value {:.12}, radial quadrature {quad:.12}",
            opts.disk_pair_value
        ),
    ));
    out.push(mc_check("disk_pair_closed_form_vs_mc", 2, 2, opts.disk_pair_value, opts));

    for n in 2..=7 {
        out.push(cayley_check(n));
    }

    let worst = [0.1, 0.3, 0.5, 0.7, 0.9]
        .iter()
        .map(|&x| {
            let closed = pressure_series_tail(x).unwrap_or(f64::NAN);
            (closed - oracle::tail_partial_sum(x, 2000)).abs()
        })
        .fold(0.0, f64::max);
    out.push(check(
        "series_tail_closed_form",
        worst <= 1e-10,
        format!("max deviation from partial sums {worst:.2e}"),
    ));

    let s2 = 2f64.sqrt();
    out.push(optimizer_check("optimizer_synthetic_111", 2, &[1.0, 1.0, 1.0], s2, s2 - 1.0));
    out.push(optimizer_check(
        "optimizer_d1_exact",
        1,
        &[1.0, 1.0, 0.25],
        2.0 * s2,
        2.0 - s2,
    ));
    out
}

fn mc_check(name: &str, d: usize, k: usize, expected: f64, opts: &VerifyOptions) -> Check {
    match estimate_g_tilde(d, k, opts.samples, opts.seed, opts.chunk_size, 0.95) {
        Ok(e) => {
            let sigma = (expected * (1.0 - expected) / e.samples as f64).sqrt();
            let z = (e.mean - expected).abs() / sigma;
            check(
                name,
                z <= 5.0,
                format!("MC {:.6} vs {expected:.6}, {z:.2} sigma", e.mean),
            )
        }
        Err(e) => check(name, false, e.to_string()),
    }
}

fn cayley_check(n: usize) -> Check {
    let name = format!("cayley_vs_prufer_n{n}");
    let (hist, all) = match (prufer_enumerate(n), all_degree_sequences(n)) {
        (Ok(h), Ok(a)) => (h, a),
        (Err(e), _) | (_, Err(e)) => return check(name, false, e.to_string()),
    };
    let total: u64 = hist.values().sum();
    let expected_total = (n as u64).pow(n as u32 - 2);
    let mismatches = all
        .iter()
        .filter(|s| cayley_count(s).ok() != Some(hist.get(*s).copied().unwrap_or(0) as u128))
        .count();
    let stray = hist.len() != all.len();
    check(
        name,
        mismatches == 0 && !stray && total == expected_total,
        format!(
            "{} degree sequences, {mismatches} mismatches, total {total} (n^(n-2) = {expected_total})",
            all.len()
        ),
    )
}

fn optimizer_check(name: &str, d: usize, values: &[f64], a_star: f64, bound: f64) -> Check {
    let result = GTildeTable::from_values(d, values, "synthetic")
        .and_then(|t| optimize_a(&t, Mode::Mean, 1e3));
    match result {
        Ok(opt) => check(
            name,
            (opt.a_star - a_star).abs() <= 1e-8 && (opt.bound - bound).abs() <= 1e-8,
            format!(
                "a* = {:.12} (expected {a_star:.12}), bound = {:.12} (expected {bound:.12})",
                opt.a_star, opt.bound
            ),
        ),
        Err(e) => check(name, false, e.to_string()),
    }
}
