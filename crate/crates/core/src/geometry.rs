//! Uniform sampling in the unit d-ball and the hard-core predicate.
//!
//! Units are normalized so that the hard-core distance and the ball radius
//! are both 1.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Above this dimension the sampler switches from cube rejection to
/// direction-times-radius.
pub const REJECTION_MAX_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        Ok(Point { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn norm_squared(&self) -> f64 {
        self.coords.iter().map(|x| x * x).sum()
    }
}

/// A tuple of points, all in the same dimension. May be empty.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Configuration {
    points: Vec<Point>,
}

impl Configuration {
    pub fn new(points: Vec<Point>) -> Self {
        Configuration { points }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Volume of the unit ball in `d` dimensions, π^(d/2) / Γ(d/2 + 1).
///
/// Uses the recurrence V_d = 2π/d · V_{d−2} from V_0 = 1, V_1 = 2.
pub fn volume_unit_ball(d: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::InvalidDimension(d));
    }
    let (mut v, start) = if d.is_multiple_of(2) { (1.0, 2) } else { (2.0, 3) };
    let mut n = start;
    while n <= d {
        v *= 2.0 * PI / n as f64;
        n += 2;
    }
    Ok(v)
}

/// Fill `out` with a point drawn uniformly from the closed unit ball of
/// dimension `out.len()`.
pub fn sample_into<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    let d = out.len();
    if d <= REJECTION_MAX_DIM {
        loop {
            let mut r2 = 0.0;
            for x in out.iter_mut() {
                *x = 2.0 * rng.random::<f64>() - 1.0;
                r2 += *x * *x;
            }
            if r2 <= 1.0 {
                return;
            }
        }
    }
    loop {
        let mut r2 = 0.0;
        for x in out.iter_mut() {
            *x = rng.sample(StandardNormal);
            r2 += *x * *x;
        }
        if r2 > 0.0 {
            let radius = rng.random::<f64>().powf(1.0 / d as f64);
            let scale = radius / r2.sqrt();
            out.iter_mut().for_each(|x| *x *= scale);
            return;
        }
    }
}

pub fn sample_point_in_unit_ball<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<Point> {
    if d == 0 {
        return Err(Error::InvalidDimension(d));
    }
    let mut coords = vec![0.0; d];
    sample_into(rng, &mut coords);
    Ok(Point { coords })
}

#[inline]
pub(crate) fn dist_squared(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// True iff `candidate` is strictly farther than 1 from every point in
/// `placed`, a flat buffer of `d`-dimensional points.
#[inline]
pub(crate) fn separated_from_all(placed: &[f64], candidate: &[f64]) -> bool {
    placed
        .chunks_exact(candidate.len())
        .all(|p| dist_squared(p, candidate) > 1.0)
}

/// True iff every pair of points is strictly more than distance 1 apart.
pub fn is_hardcore_valid(config: &Configuration) -> Result<bool> {
    let Some(first) = config.points.first() else {
        return Ok(true);
    };
    let d = first.dim();
    if let Some(bad) = config.points.iter().find(|p| p.dim() != d) {
        return Err(Error::InvalidConfiguration(format!(
            "mixed dimensions {} and {}",
            d,
            bad.dim()
        )));
    }
    let pts = &config.points;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if dist_squared(&pts[i].coords, &pts[j].coords) <= 1.0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
