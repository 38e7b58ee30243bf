//! Dense reference tensor, built straight from the entry definition.
//!
//! Every index tuple is visited; its entry is `s / alpha(s)` when the set of
//! distinct indices is an edge of size `s`, and zero otherwise. `alpha` here
//! is the literal composition sum, independent of the production path.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Default limit on `n^k` for [`DenseTensor`].
pub const DEFAULT_ORACLE_CAP: u128 = 10_000_000;

/// `sum over k_1 + ... + k_s = order, k_j >= 1 of order! / (k_1! ... k_s!)`,
/// by enumerating compositions.
pub fn alpha_by_compositions(order: usize, size: usize) -> u128 {
    fn factorial(n: usize) -> u128 {
        (1..=n as u128).product()
    }
    fn walk(remaining: usize, parts_left: usize, denom: u128, numer: u128, acc: &mut u128) {
        if parts_left == 0 {
            if remaining == 0 {
                *acc += numer / denom;
            }
            return;
        }
        // each remaining part needs at least one
        for part in 1..=remaining.saturating_sub(parts_left - 1) {
            walk(
                remaining - part,
                parts_left - 1,
                denom * factorial(part),
                numer,
                acc,
            );
        }
    }
    if size == 0 || size > order {
        return 0;
    }
    let mut acc = 0;
    walk(order, size, 1, factorial(order), &mut acc);
    acc
}

#[derive(Debug, Clone)]
pub struct DenseTensor {
    n: usize,
    order: usize,
    data: Vec<f64>,
}

impl DenseTensor {
    fn allocate(n: usize, order: usize, cap: u128) -> Result<Self> {
        let entries = (n as u128).checked_pow(order as u32).unwrap_or(u128::MAX);
        if entries > cap {
            return Err(Error::OracleCapExceeded { entries, cap });
        }
        Ok(Self {
            n,
            order,
            data: vec![0.0; entries as usize],
        })
    }

    /// `A(G)` with order `rank(G)`.
    pub fn adjacency(g: &Hypergraph, cap: u128) -> Result<Self> {
        let order = g.rank().ok_or(Error::EmptyEdgeSet)?;
        let mut t = Self::allocate(g.n(), order, cap)?;
        let weights: Vec<f64> = (0..=order)
            .map(|s| {
                let a = alpha_by_compositions(order, s);
                if a == 0 {
                    0.0
                } else {
                    s as f64 / a as f64
                }
            })
            .collect();
        let mut index = vec![0usize; order];
        let mut support = Vec::with_capacity(order);
        for flat in 0..t.data.len() {
            t.decode(flat, &mut index);
            support.clear();
            support.extend_from_slice(&index);
            support.sort_unstable();
            support.dedup();
            if support.len() >= 2 && g.contains_edge(&support) {
                t.data[flat] = weights[support.len()];
            }
        }
        Ok(t)
    }

    /// `Q(G) = D(G) + A(G)`.
    pub fn signless(g: &Hypergraph, cap: u128) -> Result<Self> {
        let mut t = Self::adjacency(g, cap)?;
        for v in 0..g.n() {
            let flat = t.flat(&vec![v; t.order]);
            t.data[flat] += g.degree(v) as f64;
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn entry(&self, index: &[usize]) -> f64 {
        self.data[self.flat(index)]
    }

    fn flat(&self, index: &[usize]) -> usize {
        index.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    pub fn decode(&self, mut flat: usize, index: &mut [usize]) {
        for slot in index.iter_mut().rev() {
            *slot = flat % self.n;
            flat /= self.n;
        }
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        Ok(())
    }

    /// `(T x^{k-1})_i = sum over i_2..i_k of t[i, i_2, .., i_k] x_{i_2} ... x_{i_k}`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x)?;
        let mut y = vec![0.0; self.n];
        let mut index = vec![0usize; self.order];
        for (flat, &a) in self.data.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            self.decode(flat, &mut index);
            let prod: f64 = index[1..].iter().map(|&i| x[i]).product();
            y[index[0]] += a * prod;
        }
        Ok(y)
    }

    /// `x^T (T x^{k-1})` by full enumeration.
    pub fn rayleigh(&self, x: &[f64]) -> Result<f64> {
        self.check_len(x)?;
        let mut index = vec![0usize; self.order];
        let mut total = 0.0;
        for (flat, &a) in self.data.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            self.decode(flat, &mut index);
            total += a * index.iter().map(|&i| x[i]).product::<f64>();
        }
        Ok(total)
    }
}
