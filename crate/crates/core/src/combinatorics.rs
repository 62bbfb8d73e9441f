//! Labeled trees counted by degree sequence.
//!
//! `cayley_count` evaluates (n−2)!/Π(d_i−1)!; `prufer_enumerate` checks it
//! by decoding every Prüfer word into a tree and tallying degrees.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};

pub const PRUFER_MAX_N: usize = 9;

/// Vertex degrees (d_1, ..., d_n) of a labeled tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeSequence(Vec<u32>);

impl DegreeSequence {
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        let n = degrees.len();
        if n < 2 {
            return Err(Error::InvalidSequence(format!("need n >= 2 vertices, got {n}")));
        }
        if let Some(i) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::InvalidSequence(format!("vertex {} has degree 0", i + 1)));
        }
        let sum: u64 = degrees.iter().map(|&d| d as u64).sum();
        if sum != 2 * n as u64 - 2 {
            return Err(Error::InvalidSequence(format!(
                "degrees sum to {sum}, a tree on {n} vertices needs {}",
                2 * n - 2
            )));
        }
        Ok(DegreeSequence(degrees))
    }

    pub fn degrees(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }
}

/// Number of labeled trees on {1..n} with these degrees.
///
/// Built as a product of binomials so every intermediate value divides
/// exactly and stays as small as the answer allows.
pub fn cayley_count(seq: &DegreeSequence) -> Result<u128> {
    let n = seq.n();
    let overflow = || Error::Overflow(n);
    let mut count: u128 = 1;
    let mut placed: u128 = 0;
    for &d in seq.degrees() {
        for j in 1..d as u128 {
            placed += 1;
            count = count.checked_mul(placed).ok_or_else(overflow)? / j;
        }
    }
    Ok(count)
}

/// Every valid degree sequence for trees on `n` vertices.
pub fn all_degree_sequences(n: usize) -> Result<Vec<DegreeSequence>> {
    if n < 2 {
        return Err(Error::InvalidSequence(format!("need n >= 2 vertices, got {n}")));
    }
    fn fill(slots: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<DegreeSequence>) {
        if slots == 1 {
            prefix.push(remaining + 1);
            out.push(DegreeSequence(prefix.clone()));
            prefix.pop();
            return;
        }
        for extra in 0..=remaining {
            prefix.push(extra + 1);
            fill(slots - 1, remaining - extra, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(n, (n - 2) as u32, &mut Vec::with_capacity(n), &mut out);
    Ok(out)
}

/// Decode a Prüfer word over 0..n into the edges of its tree.
pub fn prufer_decode(word: &[usize], n: usize) -> Vec<(usize, usize)> {
    debug_assert_eq!(word.len() + 2, n);
    let mut remaining = vec![1u32; n];
    for &v in word {
        remaining[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in word {
        let leaf = (0..n).find(|&u| remaining[u] == 1).expect("a leaf always exists");
        edges.push((leaf, v));
        remaining[leaf] -= 1;
        remaining[v] -= 1;
    }
    let last: Vec<usize> = (0..n).filter(|&u| remaining[u] == 1).collect();
    edges.push((last[0], last[1]));
    edges
}

/// Histogram of degree sequences over all n^(n−2) labeled trees.
pub fn prufer_enumerate(n: usize) -> Result<BTreeMap<DegreeSequence, u64>> {
    if !(2..=PRUFER_MAX_N).contains(&n) {
        return Err(Error::UnsupportedSize(n));
    }
    let len = n - 2;
    let per_task = (n as u64).pow(len.saturating_sub(1) as u32);
    let tasks = if len == 0 { 1 } else { n };

    let partials: Vec<HashMap<Vec<u32>, u64>> = (0..tasks)
        .into_par_iter()
        .map(|first| {
            let mut hist = HashMap::new();
            let mut word = vec![0usize; len];
            for idx in 0..per_task {
                if len > 0 {
                    word[0] = first;
                    let mut rest = idx;
                    for slot in word[1..].iter_mut() {
                        *slot = (rest % n as u64) as usize;
                        rest /= n as u64;
                    }
                }
                let mut degrees = vec![0u32; n];
                for (u, v) in prufer_decode(&word, n) {
                    degrees[u] += 1;
                    degrees[v] += 1;
                }
                *hist.entry(degrees).or_insert(0) += 1;
            }
            hist
        })
        .collect();

    let mut merged = BTreeMap::new();
    for part in partials {
        for (degrees, count) in part {
            *merged.entry(DegreeSequence(degrees)).or_insert(0) += count;
        }
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(d: &[u32]) -> DegreeSequence {
        DegreeSequence::new(d.to_vec()).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(cayley_count(&seq(&[1, 2, 1])).unwrap(), 1);
        assert_eq!(cayley_count(&seq(&[3, 1, 1, 1])).unwrap(), 1);
        assert_eq!(cayley_count(&seq(&[2, 2, 1, 1])).unwrap(), 2);
        assert_eq!(cayley_count(&seq(&[1, 1])).unwrap(), 1);
    }

    #[test]
    fn invalid_sequences() {
        assert!(DegreeSequence::new(vec![1]).is_err());
        assert!(DegreeSequence::new(vec![2, 2]).is_err());
        assert!(DegreeSequence::new(vec![0, 2, 2]).is_err());
    }

    #[test]
    fn enumeration_small_cases() {
        let h2 = prufer_enumerate(2).unwrap();
        assert_eq!(h2.len(), 1);
        assert_eq!(h2[&seq(&[1, 1])], 1);
        assert_eq!(prufer_enumerate(4).unwrap().values().sum::<u64>(), 16);
        let h5 = prufer_enumerate(5).unwrap();
        assert_eq!(h5.values().sum::<u64>(), 125);
        for (s, &c) in &h5 {
            assert_eq!(cayley_count(s).unwrap(), c as u128);
        }
    }

    #[test]
    fn enumeration_size_limits() {
        assert!(matches!(prufer_enumerate(1), Err(Error::UnsupportedSize(1))));
        assert!(matches!(prufer_enumerate(10), Err(Error::UnsupportedSize(10))));
    }

    #[test]
    fn decoded_words_are_trees() {
        let n = 6;
        let word = [3, 3, 0, 5];
        let edges = prufer_decode(&word, n);
        assert_eq!(edges.len(), n - 1);
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        for (u, v) in edges {
            let (ru, rv) = (root(&mut parent, u), root(&mut parent, v));
            assert_ne!(ru, rv, "cycle");
            parent[ru] = rv;
        }
    }

    #[test]
    fn exact_through_n_twenty_and_beyond() {
        // A star is a single tree; path degrees (1, 2, ..., 2, 1) give (n−2)!.
        let mut star = vec![1u32; 20];
        star[0] = 19;
        assert_eq!(cayley_count(&seq(&star)).unwrap(), 1);
        let mut path = vec![2u32; 20];
        path[0] = 1;
        path[19] = 1;
        assert_eq!(cayley_count(&seq(&path)).unwrap(), 6_402_373_705_728_000);
        let mut long = vec![2u32; 36];
        long[0] = 1;
        long[35] = 1;
        assert_eq!(
            cayley_count(&seq(&long)).unwrap(),
            (1..=34u128).product::<u128>()
        );
        let mut huge = vec![2u32; 40];
        huge[0] = 1;
        huge[39] = 1;
        assert!(matches!(cayley_count(&seq(&huge)), Err(Error::Overflow(40))));
    }

    #[test]
    fn all_sequences_listed() {
        let all = all_degree_sequences(4).unwrap();
        // compositions of 2 into 4 parts: C(5, 3) = 10
        assert_eq!(all.len(), 10);
        assert!(all.iter().all(|s| s.degrees().iter().sum::<u32>() == 6));
    }
}
