//! The hypergraph Lagrangian
//!
//! ```text
//! L(G, x) = sum_{e in E} P_e(x) / alpha(|e|),    x on the standard simplex,
//! ```
//!
//! and a multi-start projected-gradient search for `L(G) = max_x L(G, x)`.
//! The search reports the best local maximum it finds; it never certifies
//! global optimality.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::clique::maximal_cliques;
use crate::error::{Error, Result};
use crate::hypergraph::{binomial, Hypergraph};
use crate::tensor::ImplicitTensor;

const SIMPLEX_TOL: f64 = 1e-9;

/// A nonnegative vector with unit 1-norm.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexVector(Vec<f64>);

impl SimplexVector {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::OffSimplex("empty vector".into()));
        }
        if let Some(&v) = x.iter().find(|&&v| v.is_nan() || v < -SIMPLEX_TOL) {
            return Err(Error::OffSimplex(format!("negative entry {v}")));
        }
        let sum: f64 = x.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::OffSimplex(format!("entries sum to {sum}")));
        }
        Ok(Self(x.into_iter().map(|v| v.max(0.0)).collect()))
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    /// Uniform on `support`, zero elsewhere.
    pub fn uniform_on(n: usize, support: &[usize]) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::OffSimplex("empty support".into()));
        }
        let mut x = vec![0.0; n];
        for &v in support {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            x[v] = 1.0 / support.len() as f64;
        }
        Ok(Self(x))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// `L(G, x)`. Zero for an edgeless hypergraph.
pub fn lagrangian_value(g: &Hypergraph, x: &SimplexVector) -> Result<f64> {
    if x.0.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            actual: x.0.len(),
        });
    }
    if g.is_edgeless() {
        return Ok(0.0);
    }
    Ok(ImplicitTensor::adjacency(g)?.lagrangian_poly(&x.0))
}

/// Gradient of `x -> L(G, x)` over all of `R^n_+`.
pub fn lagrangian_gradient(g: &Hypergraph, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            actual: x.len(),
        });
    }
    if g.is_edgeless() {
        return Ok(vec![0.0; x.len()]);
    }
    Ok(ImplicitTensor::adjacency(g)?.lagrangian_poly_gradient(x))
}

/// `L` at the uniform vector on a clique of `omega` vertices:
/// `sum_{s in R} C(omega, s) / omega^order`.
pub fn clique_support_value(omega: usize, edge_types: &[usize], order: usize) -> f64 {
    let denom = (omega as f64).powi(order as i32);
    edge_types
        .iter()
        .filter(|&&s| s <= omega)
        .map(|&s| binomial(omega, s).expect("small binomial") as f64 / denom)
        .sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LagrangianOptions {
    /// Seeded Dirichlet(1) starts in addition to the uniform start.
    pub random_starts: usize,
    /// Uniform-on-clique starts taken from the largest maximal cliques.
    pub clique_starts: usize,
    /// Extra uniform-on-set starts supplied by the caller.
    pub seed_sets: Vec<Vec<usize>>,
    /// Stop when `|proj(x + grad) - x|_inf` falls below this.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub backtrack: f64,
    pub seed: u64,
}

impl Default for LagrangianOptions {
    fn default() -> Self {
        Self {
            random_starts: 8,
            clique_starts: 4,
            seed_sets: Vec::new(),
            tolerance: 1e-10,
            max_iterations: 10_000,
            backtrack: 0.5,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LagrangianResult {
    /// Best value found (a heuristic maximum).
    pub value: f64,
    pub argmax: SimplexVector,
    pub starts: usize,
    /// First-order optimality violation at `argmax`.
    pub kkt_residual: f64,
    /// The winning start stopped on the projected-gradient tolerance.
    pub converged: bool,
}

/// Euclidean projection onto the standard simplex (sort-based).
pub fn project_to_simplex(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_unstable_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (i, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let candidate = (cumulative - 1.0) / (i + 1) as f64;
        if u - candidate > 0.0 {
            theta = candidate;
        }
    }
    let mut x: Vec<f64> = v.iter().map(|&u| (u - theta).max(0.0)).collect();
    let sum: f64 = x.iter().sum();
    for xi in &mut x {
        *xi /= sum;
    }
    x
}

/// Violation of the first-order conditions for a maximizer on the simplex:
/// with `lambda = max_i grad_i`, every support coordinate should have
/// `grad_i = lambda`.
pub fn kkt_residual(x: &[f64], grad: &[f64]) -> f64 {
    let lambda = grad.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    x.iter()
        .zip(grad)
        .filter(|(&xi, _)| xi > 1e-12)
        .map(|(_, &gi)| lambda - gi)
        .fold(0.0, f64::max)
}

/// Projected-gradient gap accepted as converged when the line search can no
/// longer find a strictly better value in floating point.
const STALL_GAP: f64 = 1e-7;

struct Ascent {
    value: f64,
    x: Vec<f64>,
    converged: bool,
}

fn ascend(tensor: &ImplicitTensor<'_>, start: Vec<f64>, opts: &LagrangianOptions) -> Ascent {
    let mut x = start;
    let mut value = tensor.lagrangian_poly(&x);
    let mut step: f64 = 1.0;
    for _ in 0..opts.max_iterations {
        let grad = tensor.lagrangian_poly_gradient(&x);
        let full: Vec<f64> = x.iter().zip(&grad).map(|(a, g)| a + g).collect();
        let projected = project_to_simplex(&full);
        let gap = projected
            .iter()
            .zip(&x)
            .map(|(p, a)| (p - a).abs())
            .fold(0.0, f64::max);
        if gap <= opts.tolerance {
            return Ascent {
                value,
                x,
                converged: true,
            };
        }

        let mut trial_step = (step * 2.0).min(1e6);
        let accepted = loop {
            let moved: Vec<f64> = x
                .iter()
                .zip(&grad)
                .map(|(a, g)| a + trial_step * g)
                .collect();
            let candidate = project_to_simplex(&moved);
            let predicted: f64 = candidate
                .iter()
                .zip(&x)
                .zip(&grad)
                .map(|((c, a), g)| g * (c - a))
                .sum();
            let candidate_value = tensor.lagrangian_poly(&candidate);
            if candidate_value >= value + 1e-4 * predicted && candidate_value > value {
                break Some((candidate, candidate_value));
            }
            trial_step *= opts.backtrack;
            if trial_step < 1e-16 {
                break None;
            }
        };
        match accepted {
            Some((candidate, candidate_value)) => {
                x = candidate;
                value = candidate_value;
                step = trial_step;
            }
            // no representable ascent left: the objective is flat to
            // rounding, which happens once the gap is around 1e-9
            None => {
                return Ascent {
                    value,
                    x,
                    converged: gap <= STALL_GAP,
                }
            }
        }
    }
    Ascent {
        value,
        x,
        converged: false,
    }
}

fn dirichlet_start(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let draws: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let sum: f64 = draws.iter().sum();
    draws.into_iter().map(|d| d / sum).collect()
}

/// Multi-start projected-gradient ascent: the uniform vector, uniform
/// vectors on the largest maximal cliques and on `opts.seed_sets`, then
/// seeded Dirichlet(1) draws. The best value wins; ties go to the
/// lexicographically smaller argmax.
pub fn maximize_lagrangian(g: &Hypergraph, opts: &LagrangianOptions) -> Result<LagrangianResult> {
    let n = g.n();
    if g.is_edgeless() {
        return Ok(LagrangianResult {
            value: 0.0,
            argmax: SimplexVector::uniform(n),
            starts: 0,
            kkt_residual: 0.0,
            converged: true,
        });
    }
    let bad_tolerance = opts.tolerance.is_nan() || opts.tolerance <= 0.0;
    let bad_backtrack = opts.backtrack.is_nan() || opts.backtrack <= 0.0 || opts.backtrack >= 1.0;
    if bad_tolerance || bad_backtrack {
        return Err(Error::InvalidOptions(
            "tolerance must be positive and backtrack in (0, 1)".into(),
        ));
    }
    let tensor = ImplicitTensor::adjacency(g)?;

    let mut starts: Vec<Vec<f64>> = vec![SimplexVector::uniform(n).into_inner()];
    if opts.clique_starts > 0 {
        let mut cliques = maximal_cliques(g, 4096);
        cliques.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        for c in cliques.into_iter().take(opts.clique_starts) {
            starts.push(SimplexVector::uniform_on(n, &c)?.into_inner());
        }
    }
    for set in &opts.seed_sets {
        starts.push(SimplexVector::uniform_on(n, set)?.into_inner());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.random_starts {
        starts.push(dirichlet_start(n, &mut rng));
    }

    let runs: Vec<Ascent> = starts
        .par_iter()
        .map(|s| ascend(&tensor, s.clone(), opts))
        .collect();
    let start_count = runs.len();
    let best = runs
        .into_iter()
        .reduce(|best, run| {
            let better = run.value > best.value
                || (run.value == best.value
                    && run
                        .x
                        .iter()
                        .zip(&best.x)
                        .map(|(a, b)| a.total_cmp(b))
                        .find(|o| o.is_ne())
                        == Some(std::cmp::Ordering::Less));
            if better {
                run
            } else {
                best
            }
        })
        .expect("at least the uniform start");

    let grad = tensor.lagrangian_poly_gradient(&best.x);
    Ok(LagrangianResult {
        value: best.value,
        kkt_residual: kkt_residual(&best.x, &grad),
        argmax: SimplexVector(best.x),
        starts: start_count,
        converged: best.converged,
    })
}
