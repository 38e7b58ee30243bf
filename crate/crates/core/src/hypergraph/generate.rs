use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Hypergraph;
use crate::error::{Error, Result};

fn validate_types(n: usize, types: &[usize]) -> Result<Vec<usize>> {
    let mut sorted = types.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&s) = sorted.iter().find(|&&s| s < 2) {
        return Err(Error::InvalidEdgeTypes(format!("edge size {s} is below 2")));
    }
    if let Some(&max) = sorted.last() {
        if max > n {
            return Err(Error::InvalidEdgeTypes(format!(
                "edge size {max} exceeds n = {n}"
            )));
        }
    }
    Ok(sorted)
}

/// Every `s`-subset of `[0, n)` for each `s` in `types`.
pub fn complete_r_graph(n: usize, types: &[usize]) -> Result<Hypergraph> {
    if n == 0 {
        return Err(Error::NoVertices);
    }
    let types = validate_types(n, types)?;
    let edges: Vec<Vec<usize>> = types.iter().flat_map(|&s| (0..n).combinations(s)).collect();
    Hypergraph::new(n, edges)
}

/// Includes each candidate `s`-subset (`s` in `types`) independently with
/// probability `p`. Candidates are visited by size, then lexicographically,
/// drawing one ChaCha8 sample each, so a seed fixes the result.
pub fn random_r_graph(n: usize, types: &[usize], p: f64, seed: u64) -> Result<Hypergraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    if n == 0 {
        return Err(Error::NoVertices);
    }
    let types = validate_types(n, types)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for &s in &types {
        for subset in (0..n).combinations(s) {
            if rng.gen_bool(p) {
                edges.push(subset);
            }
        }
    }
    Hypergraph::new(n, edges)
}
