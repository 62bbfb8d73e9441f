//! The improved analyticity bound max_a a / C_d(a) and its ingredients.
//!
//! C_d(a) = Σ_s g̃_d(s) a^s / s! has nonnegative coefficients, so log C is
//! convex in log a and t ↦ log(a/C(a)) with a = e^t is concave. The
//! maximizer is the unique root of
//!
//! ```text
//!     C(a) − a·C'(a) = 1 − Σ_{s≥2} (s − 1) g̃(s) a^s / s!,
//! ```
//!
//! which decreases strictly in a once any s ≥ 2 coefficient is positive.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::volume_unit_ball;
use crate::gtable::GTildeTable;

/// Lower end of the search bracket in a.
pub const SEARCH_FLOOR: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Point estimates of every g̃.
    #[default]
    Mean,
    /// Upper confidence limits of every Monte Carlo g̃.
    Conservative,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Mean => "mean",
            Mode::Conservative => "conservative",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean" => Ok(Mode::Mean),
            "conservative" => Ok(Mode::Conservative),
            other => Err(Error::InvalidArgument(format!(
                "unknown mode {other:?} (expected mean or conservative)"
            ))),
        }
    }
}

/// C_d(a) as its coefficient list g̃(s)/s!.
#[derive(Debug, Clone, PartialEq)]
pub struct CPolynomial {
    coeffs: Vec<f64>,
}

impl CPolynomial {
    pub fn new(table: &GTildeTable, mode: Mode) -> Self {
        let mut values: Vec<f64> = match mode {
            Mode::Mean => table.values(),
            Mode::Conservative => table.entries.iter().map(|e| e.upper()).collect(),
        };
        if mode == Mode::Conservative {
            if let Some(z) = &table.zero_hit_entry {
                values.push(z.upper());
            }
        }
        Self::from_values(&values)
    }

    /// From g̃(0), g̃(1), ...
    pub fn from_values(values: &[f64]) -> Self {
        let mut factorial = 1.0;
        let coeffs = values
            .iter()
            .enumerate()
            .map(|(s, v)| {
                if s > 0 {
                    factorial *= s as f64;
                }
                v / factorial
            })
            .collect();
        CPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, a: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * a + c)
    }

    /// a / C(a).
    pub fn ratio(&self, a: f64) -> f64 {
        a / self.eval(a)
    }

    /// C(a) − a·C'(a); positive below the maximizer, negative above.
    pub fn stationarity(&self, a: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .fold(0.0, |acc, (s, c)| acc * a + (1.0 - s as f64) * c)
    }

    fn is_degenerate(&self) -> bool {
        self.coeffs.iter().skip(2).all(|&c| c == 0.0)
    }
}

pub fn c_polynomial(table: &GTildeTable, a: f64, mode: Mode) -> Result<f64> {
    if a.is_nan() || a < 0.0 {
        return Err(Error::InvalidArgument(format!("a = {a} must be nonnegative")));
    }
    Ok(CPolynomial::new(table, mode).eval(a))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    pub a_star: f64,
    pub bound: f64,
}

/// Maximize a / C(a) over [SEARCH_FLOOR, search_cap].
///
/// Bisection in t = log a on the sign of the stationarity residual. This is
/// the derivative-sign form of ternary search on the concave log(a/C); it
/// keeps full precision where comparing nearly equal f values would stall
/// at √ε.
pub fn optimize_polynomial(poly: &CPolynomial, search_cap: f64) -> Result<Optimum> {
    if !(search_cap.is_finite() && search_cap > SEARCH_FLOOR) {
        return Err(Error::InvalidArgument(format!(
            "search cap {search_cap} must be finite and above {SEARCH_FLOOR}"
        )));
    }
    if poly.is_degenerate() {
        return Err(Error::DegenerateTable);
    }
    let residual = |t: f64| poly.stationarity(t.exp());
    let (mut lo, mut hi) = (SEARCH_FLOOR.ln(), search_cap.ln());
    let t_star = if residual(hi) >= 0.0 {
        hi
    } else if residual(lo) <= 0.0 {
        lo
    } else {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if residual(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let a_star = t_star.exp();
    Ok(Optimum {
        a_star,
        bound: poly.ratio(a_star),
    })
}

pub fn optimize_a(table: &GTildeTable, mode: Mode, search_cap: f64) -> Result<Optimum> {
    optimize_polynomial(&CPolynomial::new(table, mode), search_cap)
}

/// The textbook criterion |z|·V_d(R) < 1/e.
pub fn classical_bound() -> f64 {
    (-1.0f64).exp()
}

/// Convert a bound on |z|·V_d(R) into a bound on |z| for spheres of
/// diameter `radius`.
pub fn activity_bound(bound: f64, d: usize, radius: f64) -> Result<f64> {
    if radius.is_nan() || radius <= 0.0 {
        return Err(Error::InvalidArgument(format!("radius {radius} must be positive")));
    }
    Ok(bound / (volume_unit_ball(d)? * radius.powi(d as i32)))
}

/// Σ_{n≥2} xⁿ / (n(n−1)) = x + (1 − x)·ln(1 − x).
pub fn pressure_series_tail(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::InvalidArgument(format!("x = {x} must be nonnegative")));
    }
    if x >= 1.0 {
        return Err(Error::Divergence(x));
    }
    Ok(x + (1.0 - x) * (-x).ln_1p())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub d: usize,
    pub mode: Mode,
    pub a_star: f64,
    pub c_at_a_star: f64,
    pub bound: f64,
    pub classical: f64,
    pub improvement_ratio: f64,
    pub gtable_fingerprint: String,
    pub curve: Option<Vec<(f64, f64)>>,
}

pub fn bound_report(
    table: &GTildeTable,
    mode: Mode,
    curve_samples: usize,
    search_cap: f64,
) -> Result<BoundReport> {
    table.validate()?;
    let poly = CPolynomial::new(table, mode);
    let opt = optimize_polynomial(&poly, search_cap)?;
    let c_at_a_star = poly.eval(opt.a_star);
    let bound = opt.a_star / c_at_a_star;
    let classical = classical_bound();
    let curve = (curve_samples > 0).then(|| {
        log_grid(opt.a_star / 10.0, opt.a_star * 10.0, curve_samples)
            .map(|a| (a, poly.ratio(a)))
            .collect()
    });
    Ok(BoundReport {
        d: table.d,
        mode,
        a_star: opt.a_star,
        c_at_a_star,
        bound,
        classical,
        improvement_ratio: bound / classical,
        gtable_fingerprint: crate::io::fingerprint(table),
        curve,
    })
}

fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let (l, h) = (lo.ln(), hi.ln());
    (0..n).map(move |i| {
        if n == 1 {
            (0.5 * (l + h)).exp()
        } else {
            (l + (h - l) * i as f64 / (n - 1) as f64).exp()
        }
    })
}
