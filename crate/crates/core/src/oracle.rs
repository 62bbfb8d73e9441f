//! Reference computations that share no code with the estimators they check.

use std::f64::consts::PI;

/// E|X|² for X uniform in the unit d-ball: ∫₀¹ r² · d r^(d−1) dr.
pub fn ball_mean_sq_norm(d: usize) -> f64 {
    d as f64 / (d as f64 + 2.0)
}

/// Composite Simpson rule on [a, b] with `n` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n)
        .map(|i| {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            w * f(a + i as f64 * h)
        })
        .sum();
    (f(a) + f(b) + inner) * h / 3.0
}

/// Probability that two uniform points in the unit disk are more than 1
/// apart, by radial quadrature.
///
/// For the first point at radius r the second lands within distance 1 with
/// probability lens(r)/π, where lens(r) = 2·acos(r/2) − (r/2)·√(4 − r²) is
/// the overlap of two unit disks at center distance r.
pub fn disk_pair_quadrature() -> f64 {
    let lens = |r: f64| 2.0 * (r / 2.0).acos() - (r / 2.0) * (4.0 - r * r).sqrt();
    let close = simpson(|r| lens(r) / PI * 2.0 * r, 0.0, 1.0, 20_000);
    1.0 - close
}

/// Fraction of the square [−1, 1]² with |x − y| > 1, by midpoint grid.
pub fn interval_pair_grid(step: f64) -> f64 {
    let n = (2.0 / step).round() as usize;
    let h = 2.0 / n as f64;
    let mut count = 0u64;
    for i in 0..n {
        let x = -1.0 + (i as f64 + 0.5) * h;
        for j in 0..n {
            let y = -1.0 + (j as f64 + 0.5) * h;
            if (x - y).abs() > 1.0 {
                count += 1;
            }
        }
    }
    count as f64 / (n * n) as f64
}

/// Σ_{n=2}^{n_max} xⁿ / (n(n−1)).
pub fn tail_partial_sum(x: f64, n_max: u32) -> f64 {
    let mut power = x;
    let mut sum = 0.0;
    for n in 2..=n_max {
        power *= x;
        sum += power / (n as f64 * (n as f64 - 1.0));
    }
    sum
}
