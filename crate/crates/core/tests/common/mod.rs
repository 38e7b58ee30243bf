#![allow(dead_code)]

use hspec::{random_r_graph, Hypergraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Nonempty subsets of `pool`, in binary-counter order.
pub fn subsets(pool: &[usize]) -> Vec<Vec<usize>> {
    (1u32..1 << pool.len())
        .map(|mask| {
            pool.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &s)| s)
                .collect()
        })
        .collect()
}

/// A seeded random R-graph: R a nonempty subset of `pool`, `n` between
/// `max(R)` and `max_n`, `p` drawn from `probs`.
pub fn random_instance(seed: u64, max_n: usize, pool: &[usize], probs: &[f64]) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = subsets(pool);
    let types = all.choose(&mut rng).expect("nonempty pool").clone();
    let lo = types.iter().copied().max().unwrap().max(2);
    let n = rng.gen_range(lo..=max_n);
    let p = *probs.choose(&mut rng).unwrap();
    random_r_graph(n, &types, p, seed).expect("valid generator input")
}

pub fn positive_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.05..1.0)).collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// `2^n` scan for the largest clique.
pub fn brute_force_omega(g: &Hypergraph) -> usize {
    if g.is_edgeless() {
        return 1;
    }
    (1u32..1 << g.n())
        .filter_map(|mask| {
            let set: Vec<usize> = (0..g.n()).filter(|v| mask & (1 << v) != 0).collect();
            hspec::clique::is_clique(g, &set)
                .unwrap()
                .then_some(set.len())
        })
        .max()
        .unwrap_or(1)
}

/// Random R-graphs with `R` drawn from `pool` and at most `max_n` vertices.
pub fn arb_hypergraph(
    max_n: usize,
    pool: &'static [usize],
) -> impl proptest::strategy::Strategy<Value = Hypergraph> {
    use proptest::prelude::*;
    (any::<u64>(), 0.1f64..0.9).prop_map(move |(seed, p)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all = subsets(pool);
        let types = all.choose(&mut rng).unwrap().clone();
        let lo = types.iter().copied().max().unwrap().max(2);
        let n = rng.gen_range(lo..=max_n.max(lo));
        random_r_graph(n, &types, p, seed).unwrap()
    })
}

/// Same, but with at least one edge.
pub fn arb_nonempty_hypergraph(
    max_n: usize,
    pool: &'static [usize],
) -> impl proptest::strategy::Strategy<Value = Hypergraph> {
    use proptest::prelude::*;
    arb_hypergraph(max_n, pool).prop_filter("needs an edge", |g| !g.is_edgeless())
}
