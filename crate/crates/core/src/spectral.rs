//! Perron eigenpairs of `A(G)` and `Q(G)`.
//!
//! Each connected component is handled separately so that the restricted
//! operator is weakly irreducible. On a component we run the shifted power
//! iteration
//!
//! ```text
//! z = T x^{k-1} + x^{[k-1]},    x <- normalize_k(z^{[1/(k-1)]})
//! ```
//!
//! whose Collatz-Wielandt ratios `z_i / x_i^{k-1}` bracket the shifted Perron
//! value at every step. Iteration stops once the bracket is narrower than the
//! tolerance; the reported eigenvalue is the bracket midpoint minus the shift.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::tensor::{DenseTensor, ImplicitTensor, TensorKind};

#[derive(Debug, Clone, PartialEq)]
pub struct IterationOptions {
    /// Absolute width of the final eigenvalue bracket.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Iterations without a narrower bracket before a random restart.
    pub stall_window: usize,
    pub max_restarts: usize,
    /// Seed for restart vectors; the first start is always all-ones.
    pub seed: u64,
    /// Keep the per-iteration brackets in [`SpectralResult::brackets`].
    pub record_brackets: bool,
}

impl Default for IterationOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-10,
            max_iterations: 100_000,
            stall_window: 5_000,
            max_restarts: 2,
            seed: 0,
            record_brackets: false,
        }
    }
}

impl IterationOptions {
    pub fn validate(&self) -> Result<()> {
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::InvalidOptions(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidOptions(
                "max_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub value: f64,
    /// Perron vector of the dominant component with `sum x_i^k = 1`, zero
    /// elsewhere.
    pub vector: Vec<f64>,
    /// Total iterations over all components.
    pub iterations: usize,
    /// `max_i |(T x^{k-1})_i - value * x_i^{k-1}|`.
    pub residual: f64,
    pub converged: bool,
    /// Sum of the entries of `vector`.
    pub entry_sum: f64,
    /// Final eigenvalue bracket of the dominant component.
    pub lower: f64,
    pub upper: f64,
    /// Unshifted `(lower, upper)` per iteration of the dominant component,
    /// when requested.
    pub brackets: Vec<(f64, f64)>,
}

/// `rho(G)`, the spectral radius of the adjacency tensor.
pub fn spectral_radius(g: &Hypergraph, opts: &IterationOptions) -> Result<SpectralResult> {
    implicit_radius(g, TensorKind::Adjacency, opts)
}

/// `q(G)`, the spectral radius of the signless Laplacian tensor.
pub fn signless_spectral_radius(g: &Hypergraph, opts: &IterationOptions) -> Result<SpectralResult> {
    implicit_radius(g, TensorKind::SignlessLaplacian, opts)
}

/// `U`, the entry sum of a converged principal eigenvector.
pub fn principal_entry_sum(result: &SpectralResult) -> Result<f64> {
    if !result.converged {
        return Err(Error::Unconverged);
    }
    Ok(result.vector.iter().sum())
}

/// Same iteration driven by the dense reference tensor.
pub fn spectral_radius_dense(
    g: &Hypergraph,
    kind: TensorKind,
    opts: &IterationOptions,
    cap: u128,
) -> Result<SpectralResult> {
    opts.validate()?;
    let Some(order) = g.rank() else {
        return Ok(edgeless_result(g.n()));
    };
    let dense = match kind {
        TensorKind::Adjacency => DenseTensor::adjacency(g, cap)?,
        TensorKind::SignlessLaplacian => DenseTensor::signless(g, cap)?,
    };
    dominant_over_components(g, order, opts, |_, _, x, y| {
        let full = dense.apply(x).expect("dimension checked");
        y.copy_from_slice(&full);
    })
}

fn implicit_radius(
    g: &Hypergraph,
    kind: TensorKind,
    opts: &IterationOptions,
) -> Result<SpectralResult> {
    opts.validate()?;
    if g.is_edgeless() {
        return Ok(edgeless_result(g.n()));
    }
    let tensor = ImplicitTensor::new(g, kind)?;
    dominant_over_components(g, tensor.order(), opts, |edges, vertices, x, y| {
        tensor.apply_restricted(edges, vertices, x, y)
    })
}

fn edgeless_result(n: usize) -> SpectralResult {
    let mut vector = vec![0.0; n];
    vector[0] = 1.0;
    SpectralResult {
        value: 0.0,
        vector,
        iterations: 0,
        residual: 0.0,
        converged: true,
        entry_sum: 1.0,
        lower: 0.0,
        upper: 0.0,
        brackets: Vec::new(),
    }
}

/// Applies `T x^{k-1}` for one component: `(edge ids, vertices, x, y)`.
/// `y` arrives zeroed; only component entries are read back.
trait ComponentApply: FnMut(&[usize], &[usize], &[f64], &mut [f64]) {}
impl<F: FnMut(&[usize], &[usize], &[f64], &mut [f64])> ComponentApply for F {}

struct ComponentOutcome {
    value: f64,
    lower: f64,
    upper: f64,
    vector: Vec<f64>,
    applied: Vec<f64>,
    iterations: usize,
    brackets: Vec<(f64, f64)>,
}

fn dominant_over_components(
    g: &Hypergraph,
    order: usize,
    opts: &IterationOptions,
    mut apply: impl ComponentApply,
) -> Result<SpectralResult> {
    let mut best: Option<ComponentOutcome> = None;
    let mut total_iterations = 0;
    for (idx, component) in g.connected_components().into_iter().enumerate() {
        if component.len() < 2 {
            continue;
        }
        let mut edges: Vec<usize> = component
            .iter()
            .flat_map(|&v| g.incident_edges(v).iter().copied())
            .collect();
        edges.sort_unstable();
        edges.dedup();

        let outcome = iterate_component(
            g.n(),
            order,
            &component,
            &edges,
            opts,
            opts.seed.wrapping_add(idx as u64),
            &mut apply,
        )?;
        total_iterations += outcome.iterations;
        // ties keep the lowest-indexed component
        let replace = match &best {
            None => true,
            Some(b) => outcome.value > b.value + opts.tolerance,
        };
        if replace {
            best = Some(outcome);
        }
    }
    let best = best.expect("a hypergraph with edges has a component of size >= 2");

    let pow = order as i32 - 1;
    let residual = best
        .vector
        .iter()
        .zip(&best.applied)
        .map(|(&x, &y)| (y - best.value * x.powi(pow)).abs())
        .fold(0.0, f64::max);
    let entry_sum = best.vector.iter().sum();
    Ok(SpectralResult {
        value: best.value,
        vector: best.vector,
        iterations: total_iterations,
        residual,
        converged: true,
        entry_sum,
        lower: best.lower,
        upper: best.upper,
        brackets: best.brackets,
    })
}

fn normalize_k(x: &mut [f64], component: &[usize], order: i32) {
    let norm: f64 = component.iter().map(|&v| x[v].powi(order)).sum::<f64>();
    let scale = norm.powf(-1.0 / order as f64);
    for &v in component {
        x[v] *= scale;
    }
}

fn iterate_component(
    n: usize,
    order: usize,
    component: &[usize],
    edges: &[usize],
    opts: &IterationOptions,
    seed: u64,
    apply: &mut impl ComponentApply,
) -> Result<ComponentOutcome> {
    let pow = order as i32 - 1;
    let root = 1.0 / (order as f64 - 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut x = vec![0.0; n];
    for &v in component {
        x[v] = 1.0;
    }
    normalize_k(&mut x, component, order as i32);
    let mut y = vec![0.0; n];
    let mut brackets = Vec::new();

    let mut best_width = f64::INFINITY;
    let mut last_improvement = 0;
    let mut restarts = 0;
    let (mut lo, mut hi) = (f64::NAN, f64::NAN);

    for iteration in 1..=opts.max_iterations {
        for &v in component {
            y[v] = 0.0;
        }
        apply(edges, component, &x, &mut y);

        // Collatz-Wielandt ratios of the shifted operator T + I
        lo = f64::INFINITY;
        hi = f64::NEG_INFINITY;
        for &v in component {
            let xp = x[v].powi(pow);
            let ratio = (y[v] + xp) / xp;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        if opts.record_brackets {
            brackets.push((lo - 1.0, hi - 1.0));
        }

        let width = hi - lo;
        // below ~64 ulps of the eigenvalue the bracket is rounding noise
        let floor = 64.0 * f64::EPSILON * hi.abs();
        if width <= opts.tolerance.max(floor) {
            let value = 0.5 * (lo + hi) - 1.0;
            let mut vector = vec![0.0; n];
            let mut applied = vec![0.0; n];
            for &v in component {
                vector[v] = x[v];
                applied[v] = y[v];
            }
            return Ok(ComponentOutcome {
                value,
                lower: lo - 1.0,
                upper: hi - 1.0,
                vector,
                applied,
                iterations: iteration,
                brackets,
            });
        }

        if width < best_width {
            best_width = width;
            last_improvement = iteration;
        } else if iteration - last_improvement > opts.stall_window && restarts < opts.max_restarts {
            restarts += 1;
            for &v in component {
                x[v] = rng.gen_range(0.5..1.5);
            }
            normalize_k(&mut x, component, order as i32);
            best_width = f64::INFINITY;
            last_improvement = iteration;
            continue;
        }

        for &v in component {
            x[v] = (y[v] + x[v].powi(pow)).powf(root);
        }
        normalize_k(&mut x, component, order as i32);
    }

    Err(Error::NonConvergence {
        iterations: opts.max_iterations,
        lower: lo - 1.0,
        upper: hi - 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::complete_r_graph;
    use approx::assert_abs_diff_eq;

    fn opts() -> IterationOptions {
        IterationOptions::default()
    }

    #[test]
    fn complete_graphs() {
        let r = spectral_radius(&complete_r_graph(5, &[2]).unwrap(), &opts()).unwrap();
        assert_abs_diff_eq!(r.value, 4.0, epsilon = 1e-8);
        let r = spectral_radius(&complete_r_graph(4, &[2, 3]).unwrap(), &opts()).unwrap();
        assert_abs_diff_eq!(r.value, 6.0, epsilon = 1e-8);
        for k in 2..=6 {
            let edge: Vec<usize> = (0..k).collect();
            let g = Hypergraph::new(k, [edge]).unwrap();
            let r = spectral_radius(&g, &opts()).unwrap();
            assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn signless_complete_graphs() {
        let q = signless_spectral_radius(&complete_r_graph(5, &[2]).unwrap(), &opts()).unwrap();
        assert_abs_diff_eq!(q.value, 8.0, epsilon = 1e-8);
        let q = signless_spectral_radius(&complete_r_graph(4, &[2, 3]).unwrap(), &opts()).unwrap();
        assert_abs_diff_eq!(q.value, 12.0, epsilon = 1e-8);
    }

    #[test]
    fn regular_hypergraph_signless_is_twice_degree() {
        // the Fano plane: 3-uniform, every vertex in 3 lines
        let fano = Hypergraph::new(
            7,
            [
                vec![0, 1, 2],
                vec![0, 3, 4],
                vec![0, 5, 6],
                vec![1, 3, 5],
                vec![1, 4, 6],
                vec![2, 3, 6],
                vec![2, 4, 5],
            ],
        )
        .unwrap();
        let q = signless_spectral_radius(&fano, &opts()).unwrap();
        assert_abs_diff_eq!(q.value, 6.0, epsilon = 1e-8);
        let r = spectral_radius(&fano, &opts()).unwrap();
        assert_abs_diff_eq!(r.value, 3.0, epsilon = 1e-8);
    }

    #[test]
    fn entry_sums() {
        let k2 = Hypergraph::new(2, [vec![0, 1]]).unwrap();
        let r = spectral_radius(&k2, &opts()).unwrap();
        assert_abs_diff_eq!(
            principal_entry_sum(&r).unwrap(),
            2f64.sqrt(),
            epsilon = 1e-12
        );

        let g = complete_r_graph(4, &[2, 3]).unwrap();
        let r = spectral_radius(&g, &opts()).unwrap();
        assert_abs_diff_eq!(r.entry_sum, 4f64.powf(2.0 / 3.0), epsilon = 1e-12);

        let mut unconverged = r.clone();
        unconverged.converged = false;
        assert_eq!(principal_entry_sum(&unconverged), Err(Error::Unconverged));
    }

    #[test]
    fn disconnected_takes_dominant_component() {
        // triangle plus a disjoint K4
        let g = Hypergraph::new(
            7,
            [
                vec![0, 1],
                vec![1, 2],
                vec![0, 2],
                vec![3, 4],
                vec![3, 5],
                vec![3, 6],
                vec![4, 5],
                vec![4, 6],
                vec![5, 6],
            ],
        )
        .unwrap();
        let r = spectral_radius(&g, &opts()).unwrap();
        assert_abs_diff_eq!(r.value, 3.0, epsilon = 1e-8);
        assert_eq!(&r.vector[..3], &[0.0; 3]);
        let norm: f64 = r.vector.iter().map(|v| v * v).sum();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn ties_keep_first_component() {
        let tri = complete_r_graph(3, &[2]).unwrap();
        let g = tri.disjoint_union(&tri);
        let r = spectral_radius(&g, &opts()).unwrap();
        assert!(r.vector[..3].iter().all(|&v| v > 0.0));
        assert!(r.vector[3..].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn edgeless_convention() {
        let g = Hypergraph::empty(3).unwrap();
        let r = spectral_radius(&g, &opts()).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.converged);
        assert_eq!(r.iterations, 0);
        let q = signless_spectral_radius(&g, &opts()).unwrap();
        assert_eq!(q.value, 0.0);
    }

    #[test]
    fn non_convergence_reports_bracket() {
        let g = Hypergraph::new(5, [vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4]]).unwrap();
        let o = IterationOptions {
            max_iterations: 2,
            ..opts()
        };
        match spectral_radius(&g, &o) {
            Err(Error::NonConvergence {
                iterations,
                lower,
                upper,
            }) => {
                assert_eq!(iterations, 2);
                // P5 has spectral radius sqrt(3)
                assert!(lower <= 3f64.sqrt() && 3f64.sqrt() <= upper);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn invalid_options() {
        let g = complete_r_graph(3, &[2]).unwrap();
        let bad = IterationOptions {
            tolerance: -1.0,
            ..opts()
        };
        assert!(matches!(
            spectral_radius(&g, &bad),
            Err(Error::InvalidOptions(_))
        ));
        let bad = IterationOptions {
            max_iterations: 0,
            ..opts()
        };
        assert!(matches!(
            spectral_radius(&g, &bad),
            Err(Error::InvalidOptions(_))
        ));
    }
}
