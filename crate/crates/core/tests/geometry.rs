use hsgas::geometry::{is_hardcore_valid, sample_into, Configuration, Point};
use hsgas::oracle::ball_mean_sq_norm;
use hsgas::stream::substream;
use hsgas::verify::sampler_mean_sq_norm;
use proptest::prelude::*;

fn config(points: &[Vec<f64>]) -> Configuration {
    Configuration::new(points.iter().map(|c| Point::new(c.clone()).unwrap()).collect())
}

/// Any pair within `eps` of the unit distance makes floating-point
/// comparisons after a rigid motion ambiguous.
fn near_tie(points: &[Vec<f64>], eps: f64) -> bool {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d2: f64 = points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            if (d2.sqrt() - 1.0).abs() < eps {
                return true;
            }
        }
    }
    false
}

/// Random orthogonal matrix by Gram–Schmidt on a random square matrix.
fn orthogonal(raw: &[f64], d: usize) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for i in 0..d {
        let mut v = raw[i * d..(i + 1) * d].to_vec();
        for r in &rows {
            let dot: f64 = v.iter().zip(r).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(r).for_each(|(x, y)| *x -= dot * y);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        rows.push(v);
    }
    rows
}

fn points_strategy(d: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-1.0f64..1.0, d), 0..7)
}

fn rigid_motion_case(d: usize) -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>, Vec<f64>)> {
    (
        points_strategy(d),
        prop::collection::vec(0.1f64..1.0, d * d).prop_map(move |mut v| {
            // Keep the matrix well conditioned: add the identity.
            for i in 0..d {
                v[i * d + i] += 2.0;
            }
            v
        }),
        prop::collection::vec(-5.0f64..5.0, d),
    )
}

fn check_invariance(points: &[Vec<f64>], raw: &[f64], shift: &[f64], d: usize) {
    let base = is_hardcore_valid(&config(points)).unwrap();

    let mut reversed = points.to_vec();
    reversed.reverse();
    assert_eq!(is_hardcore_valid(&config(&reversed)).unwrap(), base);
    if points.len() > 2 {
        let mut rotated = points.to_vec();
        rotated.rotate_left(1);
        assert_eq!(is_hardcore_valid(&config(&rotated)).unwrap(), base);
    }

    let q = orthogonal(raw, d);
    let moved: Vec<Vec<f64>> = points
        .iter()
        .map(|p| {
            (0..d)
                .map(|i| q[i].iter().zip(p).map(|(a, b)| a * b).sum::<f64>() + shift[i])
                .collect()
        })
        .collect();
    assert_eq!(is_hardcore_valid(&config(&moved)).unwrap(), base);
}

proptest! {
    #[test]
    fn predicate_invariant_d2((points, raw, shift) in rigid_motion_case(2)) {
        prop_assume!(!near_tie(&points, 1e-9));
        check_invariance(&points, &raw, &shift, 2);
    }

    #[test]
    fn predicate_invariant_d3((points, raw, shift) in rigid_motion_case(3)) {
        prop_assume!(!near_tie(&points, 1e-9));
        check_invariance(&points, &raw, &shift, 3);
    }
}

#[test]
fn coordinate_means_vanish() {
    let n = 1_000_000u64;
    for d in [2usize, 3, 5] {
        let mut rng = substream(11, 1000 + d as u64, 0);
        let mut p = vec![0.0; d];
        let mut sum = vec![0.0; d];
        let mut sum2 = vec![0.0; d];
        for _ in 0..n {
            sample_into(&mut rng, &mut p);
            for i in 0..d {
                sum[i] += p[i];
                sum2[i] += p[i] * p[i];
            }
        }
        for i in 0..d {
            let mean = sum[i] / n as f64;
            let se = ((sum2[i] / n as f64 - mean * mean) / n as f64).sqrt();
            assert!(mean.abs() <= 4.0 * se, "d={d} coord {i}: {mean} vs se {se}");
        }
    }
}

#[test]
fn radial_law_all_small_dims() {
    for d in 1..=6 {
        let (mean, se) = sampler_mean_sq_norm(d, 1_000_000, 5, 100_000);
        let target = ball_mean_sq_norm(d);
        assert!((mean - target).abs() <= 4.0 * se, "d={d}: {mean} vs {target}");
    }
}

#[test]
fn radial_moment_examples() {
    let (m2, _) = sampler_mean_sq_norm(2, 1_000_000, 42, 100_000);
    let (m3, _) = sampler_mean_sq_norm(3, 1_000_000, 42, 100_000);
    assert!((m2 - 0.5).abs() <= 1e-3, "{m2}");
    assert!((m3 - 0.6).abs() <= 1e-3, "{m3}");
}
