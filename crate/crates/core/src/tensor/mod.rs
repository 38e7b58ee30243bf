//! Matrix-free arithmetic on the adjacency tensor `A(G)` and the signless
//! Laplacian tensor `Q(G) = D(G) + A(G)` of a general hypergraph.
//!
//! Both tensors have order `k = rank(G)`. An edge `e` of size `s` fills every
//! index tuple whose support is exactly `e` with the weight `s / alpha(s)`,
//! where `alpha(s)` counts such tuples. Nothing here materializes the tensor:
//! for an edge, the homogeneous polynomial
//!
//! ```text
//! P_e(x) = sum over k_1 + ... + k_s = k, k_j >= 1 of  k! / (k_1! ... k_s!) * prod x_j^{k_j}
//! ```
//!
//! is the coefficient `k! [t^k]` of `prod_{j in e} (exp(x_j t) - 1)`, which we
//! expand as a truncated exponential generating function. Every term is
//! nonnegative for nonnegative `x`, so the evaluation has no cancellation.
//! Since the tensor is symmetric, `(A(e) x^{k-1})_i = (1/k) (s/alpha(s)) dP_e/dx_i`.

mod maclaurin;
mod oracle;

pub use maclaurin::{maclaurin_means, MaclaurinChain};
pub use oracle::{alpha_by_compositions, DenseTensor, DEFAULT_ORACLE_CAP};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Largest tensor order for which `alpha` is computed exactly.
pub const MAX_ORDER: usize = 20;

/// Number of index tuples of length `order` over an `size`-set that use every
/// element, i.e. the number of surjections from an `order`-set onto a
/// `size`-set. Equals the composition sum of multinomials.
pub fn alpha(order: usize, size: usize) -> Result<u128> {
    if size == 0 || size > order {
        return Err(Error::AlphaDomain { order, size });
    }
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge(order));
    }
    // inclusion-exclusion: sum_j (-1)^j C(s, j) (s - j)^k
    let mut total: i128 = 0;
    let mut choose: i128 = 1;
    for j in 0..=size {
        let term = choose * (size as i128 - j as i128).pow(order as u32);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        choose = choose * (size - j) as i128 / (j as i128 + 1);
    }
    Ok(total as u128)
}

/// Binomial table `c[n][m]` for `n <= order`, as floats (exact below 2^53).
fn binomial_rows(order: usize) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut row = vec![1.0; n + 1];
        for m in 1..n {
            row[m] = rows[n - 1][m - 1] + rows[n - 1][m];
        }
        rows.push(row);
    }
    rows
}

/// Multiplies an EGF in place by `exp(v t) - 1`, truncated at `t^order`.
fn mul_exp_minus_one(egf: &mut [f64], v: f64, binom: &[Vec<f64>]) {
    let order = egf.len() - 1;
    let mut powers = vec![1.0; order + 1];
    for m in 1..=order {
        powers[m] = powers[m - 1] * v;
    }
    for d in (0..=order).rev() {
        let mut acc = 0.0;
        for m in 1..=d {
            acc += binom[d][m] * powers[m] * egf[d - m];
        }
        egf[d] = acc;
    }
}

fn egf_product(a: &[f64], b: &[f64], binom: &[Vec<f64>]) -> Vec<f64> {
    let order = a.len() - 1;
    (0..=order)
        .map(|d| (0..=d).map(|m| binom[d][m] * a[m] * b[d - m]).sum())
        .collect()
}

/// Edge polynomial evaluation on the gathered coordinates of one edge.
struct EdgePolyKernel {
    order: usize,
    binom: Vec<Vec<f64>>,
}

impl EdgePolyKernel {
    fn new(order: usize) -> Self {
        Self {
            order,
            binom: binomial_rows(order),
        }
    }

    fn value(&self, values: &[f64]) -> f64 {
        let mut egf = vec![0.0; self.order + 1];
        egf[0] = 1.0;
        for &v in values {
            mul_exp_minus_one(&mut egf, v, &self.binom);
        }
        egf[self.order]
    }

    /// Partial derivatives of `P_e` with respect to each coordinate of the edge.
    fn gradient(&self, values: &[f64]) -> Vec<f64> {
        let k = self.order;
        let s = values.len();
        let mut unit = vec![0.0; k + 1];
        unit[0] = 1.0;

        // prefix[i] = prod_{j < i}, suffix[i] = prod_{j >= i}
        let mut prefix = Vec::with_capacity(s + 1);
        prefix.push(unit.clone());
        for &v in values {
            let mut next = prefix.last().unwrap().clone();
            mul_exp_minus_one(&mut next, v, &self.binom);
            prefix.push(next);
        }
        let mut suffix = vec![unit; s + 1];
        for i in (0..s).rev() {
            let mut next = suffix[i + 1].clone();
            mul_exp_minus_one(&mut next, values[i], &self.binom);
            suffix[i] = next;
        }

        (0..s)
            .map(|i| {
                let others = egf_product(&prefix[i], &suffix[i + 1], &self.binom);
                // d/dv (exp(v t) - 1) = t exp(v t), EGF coefficients d * v^{d-1}
                let v = values[i];
                let mut acc = 0.0;
                let mut pow = 1.0;
                for d in 1..=k {
                    acc += self.binom[k][d] * d as f64 * pow * others[k - d];
                    pow *= v;
                }
                acc
            })
            .collect()
    }
}

fn check_edge(edge: &[usize], x: &[f64], order: usize) -> Result<()> {
    if edge.len() > order {
        return Err(Error::EdgeTooLarge {
            size: edge.len(),
            order,
        });
    }
    if let Some(&v) = edge.iter().find(|&&v| v >= x.len()) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: x.len(),
        });
    }
    Ok(())
}

/// `P_e(x)` for an edge of size at most `order`.
pub fn edge_poly_value(edge: &[usize], x: &[f64], order: usize) -> Result<f64> {
    check_edge(edge, x, order)?;
    let values: Vec<f64> = edge.iter().map(|&v| x[v]).collect();
    Ok(EdgePolyKernel::new(order).value(&values))
}

/// `dP_e/dx_v` for each `v` in the edge, as `(v, derivative)` pairs.
pub fn edge_poly_gradient(edge: &[usize], x: &[f64], order: usize) -> Result<Vec<(usize, f64)>> {
    check_edge(edge, x, order)?;
    let values: Vec<f64> = edge.iter().map(|&v| x[v]).collect();
    let grad = EdgePolyKernel::new(order).gradient(&values);
    Ok(edge.iter().copied().zip(grad).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorKind {
    Adjacency,
    SignlessLaplacian,
}

/// `A(G)` or `Q(G)` applied without materialization.
///
/// Sums run over edges in canonical order, so equal inputs give
/// bit-identical outputs.
pub struct ImplicitTensor<'g> {
    graph: &'g Hypergraph,
    kind: TensorKind,
    kernel: EdgePolyKernel,
    /// `s / alpha(s)` indexed by edge size.
    weights: Vec<f64>,
    /// `1 / alpha(s)` indexed by edge size.
    inv_alpha: Vec<f64>,
}

impl<'g> ImplicitTensor<'g> {
    pub fn new(graph: &'g Hypergraph, kind: TensorKind) -> Result<Self> {
        let order = graph.rank().ok_or(Error::EmptyEdgeSet)?;
        let mut weights = vec![0.0; order + 1];
        let mut inv_alpha = vec![0.0; order + 1];
        for &s in graph.edge_types() {
            let a = alpha(order, s)? as f64;
            weights[s] = s as f64 / a;
            inv_alpha[s] = 1.0 / a;
        }
        Ok(Self {
            graph,
            kind,
            kernel: EdgePolyKernel::new(order),
            weights,
            inv_alpha,
        })
    }

    pub fn adjacency(graph: &'g Hypergraph) -> Result<Self> {
        Self::new(graph, TensorKind::Adjacency)
    }

    pub fn signless(graph: &'g Hypergraph) -> Result<Self> {
        Self::new(graph, TensorKind::SignlessLaplacian)
    }

    pub fn order(&self) -> usize {
        self.kernel.order
    }

    pub fn kind(&self) -> TensorKind {
        self.kind
    }

    pub fn graph(&self) -> &'g Hypergraph {
        self.graph
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.graph.n() {
            return Err(Error::DimensionMismatch {
                expected: self.graph.n(),
                actual: x.len(),
            });
        }
        Ok(())
    }

    /// `y = T x^{k-1}`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x)?;
        let mut y = vec![0.0; x.len()];
        let all_edges: Vec<usize> = (0..self.graph.num_edges()).collect();
        let all_vertices: Vec<usize> = (0..self.graph.n()).collect();
        self.apply_restricted(&all_edges, &all_vertices, x, &mut y);
        Ok(y)
    }

    /// Accumulates the contribution of `edge_ids` into `y` and, for the
    /// signless tensor, the degree term of `vertices`. `vertices` must hold
    /// every vertex of those edges and `y` must start zeroed on them.
    pub(crate) fn apply_restricted(
        &self,
        edge_ids: &[usize],
        vertices: &[usize],
        x: &[f64],
        y: &mut [f64],
    ) {
        let k = self.order() as f64;
        let mut gathered = Vec::with_capacity(self.order());
        for &idx in edge_ids {
            let edge = self.graph.edges()[idx].vertices();
            gathered.clear();
            gathered.extend(edge.iter().map(|&v| x[v]));
            let scale = self.weights[edge.len()] / k;
            for (&v, g) in edge.iter().zip(self.kernel.gradient(&gathered)) {
                y[v] += scale * g;
            }
        }
        if self.kind == TensorKind::SignlessLaplacian {
            let pow = self.order() as i32 - 1;
            for &v in vertices {
                y[v] += self.graph.degree(v) as f64 * x[v].powi(pow);
            }
        }
    }

    /// `x^T (T x^{k-1})` evaluated edge by edge.
    pub fn rayleigh(&self, x: &[f64]) -> Result<f64> {
        self.check_len(x)?;
        let order = self.order() as i32;
        let mut total = 0.0;
        let mut gathered = Vec::with_capacity(self.order());
        for e in self.graph.edges() {
            gathered.clear();
            gathered.extend(e.vertices().iter().map(|&v| x[v]));
            let mut term = self.weights[e.size()] * self.kernel.value(&gathered);
            if self.kind == TensorKind::SignlessLaplacian {
                term += gathered.iter().map(|v| v.powi(order)).sum::<f64>();
            }
            total += term;
        }
        Ok(total)
    }

    /// `sum_e P_e(x) / alpha(|e|)`, the hypergraph Lagrangian polynomial.
    pub(crate) fn lagrangian_poly(&self, x: &[f64]) -> f64 {
        let mut gathered = Vec::with_capacity(self.order());
        let mut total = 0.0;
        for e in self.graph.edges() {
            gathered.clear();
            gathered.extend(e.vertices().iter().map(|&v| x[v]));
            total += self.inv_alpha[e.size()] * self.kernel.value(&gathered);
        }
        total
    }

    /// Gradient of [`Self::lagrangian_poly`].
    pub(crate) fn lagrangian_poly_gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut grad = vec![0.0; x.len()];
        let mut gathered = Vec::with_capacity(self.order());
        for e in self.graph.edges() {
            let edge = e.vertices();
            gathered.clear();
            gathered.extend(edge.iter().map(|&v| x[v]));
            let scale = self.inv_alpha[edge.len()];
            for (&v, g) in edge.iter().zip(self.kernel.gradient(&gathered)) {
                grad[v] += scale * g;
            }
        }
        grad
    }
}

/// `A(G) x^{k-1}`.
pub fn adjacency_apply(g: &Hypergraph, x: &[f64]) -> Result<Vec<f64>> {
    ImplicitTensor::adjacency(g)?.apply(x)
}

/// `Q(G) x^{k-1} = D(G) x^{k-1} + A(G) x^{k-1}`.
pub fn signless_apply(g: &Hypergraph, x: &[f64]) -> Result<Vec<f64>> {
    ImplicitTensor::signless(g)?.apply(x)
}

pub fn rayleigh_adjacency(g: &Hypergraph, x: &[f64]) -> Result<f64> {
    ImplicitTensor::adjacency(g)?.rayleigh(x)
}

pub fn rayleigh_signless(g: &Hypergraph, x: &[f64]) -> Result<f64> {
    ImplicitTensor::signless(g)?.rayleigh(x)
}
