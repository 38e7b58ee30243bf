//! Clique-number bounds on `rho(G)`, `q(G)` and `L(G)`, evaluated on a
//! concrete hypergraph.
//!
//! Record names in the report (`lemma_2_3`, `theorem_3_1`, ...) are the stable
//! JSON identifiers of the five inequalities:
//!
//! | name          | claim                                                                |
//! |---------------|----------------------------------------------------------------------|
//! | `lemma_2_3`   | `rho >= sum_{s in R} C(w-1, s-1)`, equality iff complete             |
//! | `theorem_3_1` | `q >= 2 sum_{s in R} C(w-1, s-1)`, equality iff complete             |
//! | `theorem_3_2` | `rho >= (w-c+1)^{c-1} (w-k+1)^{k-c} / (k-1)! + (w-c+1)^{c-1} / (c-1)!` |
//! | `theorem_3_3` | `L = sum_{s in R} C(w, s) / w^k` under the structural hypotheses     |
//! | `theorem_3_4` | `rho <= sum_{s in R} k (U/w)^k C(w, s)` under the same hypotheses     |
//!
//! with `w` the clique number, `k` the rank, `c` the corank and `U` the entry
//! sum of the principal eigenvector.

use serde::Serialize;

use crate::clique::{max_clique_with_cap, DEFAULT_NODE_CAP};
use crate::error::{Error, Result};
use crate::hypergraph::{binomial, Hypergraph};
use crate::lagrangian::{clique_support_value, maximize_lagrangian, LagrangianOptions};
use crate::spectral::{signless_spectral_radius, spectral_radius, IterationOptions};

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn choose(n: usize, k: usize) -> f64 {
    binomial(n, k).expect("bounded binomial") as f64
}

/// `sum_{s in R} C(omega - 1, s - 1)`.
pub fn clique_degree_lower(omega: usize, edge_types: &[usize]) -> f64 {
    assert!(omega >= 1, "clique number is at least 1");
    edge_types.iter().map(|&s| choose(omega - 1, s - 1)).sum()
}

/// `2 sum_{s in R} C(omega - 1, s - 1)`, the signless Laplacian counterpart.
pub fn signless_clique_lower(omega: usize, edge_types: &[usize]) -> f64 {
    2.0 * clique_degree_lower(omega, edge_types)
}

/// The rank/corank lower bound
/// `(w-c+1)^{c-1} (w-k+1)^{k-c} / (k-1)! + (w-c+1)^{c-1} / (c-1)!`,
/// evaluated literally for any `omega`.
pub fn rank_corank_lower(omega: usize, rank: usize, corank: usize) -> f64 {
    let w = omega as f64;
    let head = (w - corank as f64 + 1.0).powi(corank as i32 - 1);
    let tail = (w - rank as f64 + 1.0).powi((rank - corank) as i32);
    head * tail / factorial(rank - 1) + head / factorial(corank - 1)
}

/// `sum_{s in R} k (U / omega)^k C(omega, s)`.
pub fn eigvec_sum_upper(
    omega: usize,
    edge_types: &[usize],
    rank: usize,
    entry_sum: f64,
) -> Result<f64> {
    if entry_sum.is_nan() || entry_sum <= 0.0 {
        return Err(Error::NonPositive(entry_sum));
    }
    let scale = rank as f64 * (entry_sum / omega as f64).powi(rank as i32);
    Ok(edge_types.iter().map(|&s| scale * choose(omega, s)).sum())
}

/// Hypotheses under which the Lagrangian equals its clique value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LagrangianCondition {
    pub is_complete: bool,
    /// First (lexicographic) nonadjacent pair with equal edge-type multisets.
    pub witness_pair: Option<(usize, usize)>,
}

impl LagrangianCondition {
    pub fn holds(&self) -> bool {
        self.is_complete || self.witness_pair.is_some()
    }
}

pub fn lagrangian_condition(g: &Hypergraph) -> LagrangianCondition {
    if g.is_complete_r_graph() {
        return LagrangianCondition {
            is_complete: true,
            witness_pair: None,
        };
    }
    let types: Vec<Vec<usize>> = (0..g.n())
        .map(|v| g.edge_type_multiset(v).expect("in range"))
        .collect();
    let witness_pair = (0..g.n())
        .flat_map(|v| (v + 1..g.n()).map(move |u| (v, u)))
        .find(|&(v, u)| !g.adjacent(v, u) && types[v] == types[u]);
    LagrangianCondition {
        is_complete: false,
        witness_pair,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
    Equality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordStatus {
    /// Evaluated and counted.
    Verified,
    /// The clique search hit its node cap, so `omega` is not exact.
    Unverified,
    /// Outside the inequality's stated hypotheses; shown, not counted.
    NotApplicable,
    /// Evaluated on request outside its hypotheses; not counted.
    Informational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Standard,
    EmptyEdgeSet,
    /// Clique number below the rank: factors like `w - k + 1` may be
    /// non-positive and the bound is evaluated literally.
    VacuousRegime,
    SingleEdgeType,
    HypothesesAbsent,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRecord {
    pub name: &'static str,
    pub kind: BoundKind,
    pub bound: Option<f64>,
    pub measured: f64,
    /// `measured - bound` for lower bounds, `bound - measured` for upper
    /// bounds, `-|measured - bound|` for equalities.
    pub slack: Option<f64>,
    pub holds: Option<bool>,
    pub equality: Option<bool>,
    pub status: RecordStatus,
    pub regime: Regime,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputSummary {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "R")]
    pub edge_types: Vec<usize>,
    pub k: Option<usize>,
    pub c: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quantities {
    pub rho: f64,
    pub q: f64,
    pub omega: usize,
    pub lagrangian: f64,
    #[serde(rename = "U")]
    pub entry_sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Conditions {
    pub is_complete_r_graph: bool,
    pub has_nonadjacent_equal_rv_pair: bool,
    pub witness_pair: Option<(usize, usize)>,
    pub omega_exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    pub rho_iterations: usize,
    pub rho_residual: f64,
    pub q_iterations: usize,
    pub q_residual: f64,
    pub clique_nodes: u64,
    pub lagrangian_starts: usize,
    pub lagrangian_kkt_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub input: InputSummary,
    pub quantities: Quantities,
    pub bounds: Vec<BoundRecord>,
    pub conditions: Conditions,
    pub diagnostics: Diagnostics,
}

impl BoundReport {
    pub fn record(&self, name: &str) -> Option<&BoundRecord> {
        self.bounds.iter().find(|r| r.name == name)
    }

    /// Counted records whose inequality fails.
    pub fn violations(&self) -> Vec<&BoundRecord> {
        self.bounds
            .iter()
            .filter(|r| r.status == RecordStatus::Verified && r.holds == Some(false))
            .collect()
    }

    pub fn all_hold(&self) -> bool {
        self.violations().is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundOptions {
    pub spectral: IterationOptions,
    pub lagrangian: LagrangianOptions,
    pub node_cap: u64,
    /// A record holds when `slack >= -holds_tolerance`.
    pub holds_tolerance: f64,
    /// Equality is flagged when `|slack| <= equality_tolerance`.
    pub equality_tolerance: f64,
    /// Evaluate the eigenvector-sum upper bound even without its hypotheses.
    pub ungated_upper: bool,
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self {
            spectral: IterationOptions::default(),
            lagrangian: LagrangianOptions::default(),
            node_cap: DEFAULT_NODE_CAP,
            holds_tolerance: 1e-7,
            equality_tolerance: 1e-6,
            ungated_upper: false,
        }
    }
}

struct RecordBuilder<'a> {
    opts: &'a BoundOptions,
    omega_exact: bool,
}

impl RecordBuilder<'_> {
    fn build(
        &self,
        name: &'static str,
        kind: BoundKind,
        bound: f64,
        measured: f64,
        status: RecordStatus,
        regime: Regime,
    ) -> BoundRecord {
        if !self.omega_exact {
            return BoundRecord {
                name,
                kind,
                bound: None,
                measured,
                slack: None,
                holds: None,
                equality: None,
                status: RecordStatus::Unverified,
                regime,
            };
        }
        let slack = match kind {
            BoundKind::Lower => measured - bound,
            BoundKind::Upper => bound - measured,
            BoundKind::Equality => -(measured - bound).abs(),
        };
        let holds_tol = match kind {
            BoundKind::Equality => self.opts.equality_tolerance,
            _ => self.opts.holds_tolerance,
        };
        let holds = slack >= -holds_tol;
        let counted = matches!(status, RecordStatus::Verified | RecordStatus::Informational);
        BoundRecord {
            name,
            kind,
            bound: Some(bound),
            measured,
            slack: Some(slack),
            holds: counted.then_some(holds),
            equality: counted.then_some(holds && slack.abs() <= self.opts.equality_tolerance),
            status,
            regime,
        }
    }
}

/// Computes every quantity and evaluates all five bounds.
pub fn check_all(g: &Hypergraph, opts: &BoundOptions) -> Result<BoundReport> {
    let edge_types: Vec<usize> = g.edge_types().iter().copied().collect();
    let rank = g.rank();
    let corank = g.corank();

    let rho = spectral_radius(g, &opts.spectral)?;
    let q = signless_spectral_radius(g, &opts.spectral)?;
    let clique = max_clique_with_cap(g, opts.node_cap);
    let omega = clique.omega;

    let mut lag_opts = opts.lagrangian.clone();
    if !g.is_edgeless() {
        lag_opts.seed_sets.push(clique.vertices.clone());
    }
    let lagrangian = maximize_lagrangian(g, &lag_opts)?;
    let condition = lagrangian_condition(g);
    let entry_sum = rho.entry_sum;

    let builder = RecordBuilder {
        opts,
        omega_exact: clique.optimal,
    };
    let empty_regime = |r: Regime| {
        if g.is_edgeless() {
            Regime::EmptyEdgeSet
        } else {
            r
        }
    };
    let mut bounds = Vec::with_capacity(5);

    bounds.push(builder.build(
        "lemma_2_3",
        BoundKind::Lower,
        clique_degree_lower(omega, &edge_types),
        rho.value,
        RecordStatus::Verified,
        empty_regime(Regime::Standard),
    ));
    bounds.push(builder.build(
        "theorem_3_1",
        BoundKind::Lower,
        signless_clique_lower(omega, &edge_types),
        q.value,
        RecordStatus::Verified,
        empty_regime(Regime::Standard),
    ));

    let rank_corank = match (rank, corank) {
        (Some(k), Some(c)) => {
            let regime = if edge_types.len() < 2 {
                Regime::SingleEdgeType
            } else if omega < k {
                Regime::VacuousRegime
            } else {
                Regime::Standard
            };
            let status = if edge_types.len() < 2 {
                RecordStatus::NotApplicable
            } else {
                RecordStatus::Verified
            };
            builder.build(
                "theorem_3_2",
                BoundKind::Lower,
                rank_corank_lower(omega, k, c),
                rho.value,
                status,
                regime,
            )
        }
        _ => builder.build(
            "theorem_3_2",
            BoundKind::Lower,
            0.0,
            rho.value,
            RecordStatus::Verified,
            Regime::EmptyEdgeSet,
        ),
    };
    bounds.push(rank_corank);

    let closed_form = rank.map_or(0.0, |k| clique_support_value(omega, &edge_types, k));
    bounds.push(if condition.holds() {
        builder.build(
            "theorem_3_3",
            BoundKind::Equality,
            closed_form,
            lagrangian.value,
            RecordStatus::Verified,
            empty_regime(Regime::Standard),
        )
    } else {
        // uniform weight on a maximum clique always attains the closed form
        builder.build(
            "theorem_3_3",
            BoundKind::Lower,
            closed_form,
            lagrangian.value,
            RecordStatus::Verified,
            Regime::HypothesesAbsent,
        )
    });

    if condition.holds() || opts.ungated_upper {
        let upper = match rank {
            Some(k) => eigvec_sum_upper(omega, &edge_types, k, entry_sum)?,
            None => 0.0,
        };
        let (status, regime) = if condition.holds() {
            (RecordStatus::Verified, empty_regime(Regime::Standard))
        } else {
            (RecordStatus::Informational, Regime::HypothesesAbsent)
        };
        bounds.push(builder.build(
            "theorem_3_4",
            BoundKind::Upper,
            upper,
            rho.value,
            status,
            regime,
        ));
    }

    Ok(BoundReport {
        input: InputSummary {
            n: g.n(),
            m: g.num_edges(),
            edge_types,
            k: rank,
            c: corank,
        },
        quantities: Quantities {
            rho: rho.value,
            q: q.value,
            omega,
            lagrangian: lagrangian.value,
            entry_sum,
        },
        bounds,
        conditions: Conditions {
            is_complete_r_graph: condition.is_complete,
            has_nonadjacent_equal_rv_pair: condition.witness_pair.is_some(),
            witness_pair: condition.witness_pair,
            omega_exact: clique.optimal,
        },
        diagnostics: Diagnostics {
            rho_iterations: rho.iterations,
            rho_residual: rho.residual,
            q_iterations: q.iterations,
            q_residual: q.residual,
            clique_nodes: clique.nodes_explored,
            lagrangian_starts: lagrangian.starts,
            lagrangian_kkt_residual: lagrangian.kkt_residual,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::complete_r_graph;
    use approx::assert_abs_diff_eq;

    #[test]
    fn closed_form_bounds() {
        assert_eq!(clique_degree_lower(5, &[2]), 4.0);
        assert_eq!(clique_degree_lower(4, &[2, 3]), 6.0);
        assert_eq!(clique_degree_lower(1, &[2, 3, 4]), 0.0);
        assert_eq!(signless_clique_lower(5, &[2]), 8.0);
        assert_eq!(signless_clique_lower(4, &[2, 3]), 12.0);
        assert_eq!(signless_clique_lower(1, &[2]), 0.0);
    }

    #[test]
    fn rank_corank_examples() {
        assert_abs_diff_eq!(rank_corank_lower(4, 3, 2), 6.0, epsilon = 1e-15);
        // c = k: the middle factor has exponent zero
        for (w, k) in [(5, 3), (6, 4), (3, 2)] {
            let base = (w as f64 - k as f64 + 1.0).powi(k as i32 - 1) / factorial(k - 1);
            assert_abs_diff_eq!(rank_corank_lower(w, k, k), 2.0 * base, epsilon = 1e-12);
        }
    }

    #[test]
    fn eigvec_sum_examples() {
        assert_abs_diff_eq!(
            eigvec_sum_upper(4, &[2], 2, 2.0).unwrap(),
            3.0,
            epsilon = 1e-15
        );
        let u = 4f64.powf(2.0 / 3.0);
        assert_abs_diff_eq!(
            eigvec_sum_upper(4, &[2, 3], 3, u).unwrap(),
            7.5,
            epsilon = 1e-12
        );
        for k in 2..6 {
            let u = (k as f64).powf((k as f64 - 1.0) / k as f64);
            assert_abs_diff_eq!(
                eigvec_sum_upper(k, &[k], k, u).unwrap(),
                1.0,
                epsilon = 1e-12
            );
        }
        assert_eq!(
            eigvec_sum_upper(3, &[2], 2, 0.0),
            Err(Error::NonPositive(0.0))
        );
    }

    #[test]
    fn conditions() {
        let c = lagrangian_condition(&complete_r_graph(5, &[2, 3]).unwrap());
        assert!(c.is_complete && c.holds());

        let tri = complete_r_graph(3, &[2]).unwrap();
        let c = lagrangian_condition(&tri.disjoint_union(&tri));
        assert_eq!(c.witness_pair, Some((0, 3)));

        let p3 = Hypergraph::new(3, [vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(lagrangian_condition(&p3).witness_pair, Some((0, 2)));

        let star_plus =
            Hypergraph::new(3, [vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 1, 2]]).unwrap();
        assert!(lagrangian_condition(&star_plus).is_complete);
    }

    #[test]
    fn complete_graph_report() {
        let g = complete_r_graph(4, &[2, 3]).unwrap();
        let report = check_all(&g, &BoundOptions::default()).unwrap();
        assert_eq!(report.bounds.len(), 5);
        assert!(report.all_hold());
        assert_eq!(report.record("lemma_2_3").unwrap().equality, Some(true));
        assert_eq!(report.record("theorem_3_1").unwrap().equality, Some(true));
        assert_eq!(report.quantities.omega, 4);
    }

    #[test]
    fn cycle_report() {
        let c5 = Hypergraph::new(5, (0..5).map(|i| vec![i, (i + 1) % 5])).unwrap();
        let report = check_all(&c5, &BoundOptions::default()).unwrap();
        assert_abs_diff_eq!(report.quantities.rho, 2.0, epsilon = 1e-8);
        assert_abs_diff_eq!(report.quantities.q, 4.0, epsilon = 1e-8);
        assert_eq!(report.quantities.omega, 2);
        let degree = report.record("lemma_2_3").unwrap();
        assert_eq!(
            (degree.bound, degree.holds, degree.equality),
            (Some(1.0), Some(true), Some(false))
        );
        let signless = report.record("theorem_3_1").unwrap();
        assert_eq!(signless.bound, Some(2.0));
        assert_eq!(signless.equality, Some(false));
        assert!(report.all_hold());
    }

    #[test]
    fn edgeless_report() {
        let g = Hypergraph::empty(3).unwrap();
        let report = check_all(&g, &BoundOptions::default()).unwrap();
        assert_eq!(report.quantities.rho, 0.0);
        assert_eq!(report.quantities.q, 0.0);
        assert_eq!(report.quantities.lagrangian, 0.0);
        assert_eq!(report.quantities.omega, 1);
        for r in &report.bounds {
            assert_eq!(r.bound, Some(0.0), "{}", r.name);
            assert_eq!(r.holds, Some(true));
            assert_eq!(r.equality, Some(true));
        }
    }

    #[test]
    fn capped_clique_marks_records_unverified() {
        let g = crate::hypergraph::random_r_graph(30, &[2], 0.5, 1).unwrap();
        let opts = BoundOptions {
            node_cap: 2,
            ..BoundOptions::default()
        };
        let report = check_all(&g, &opts).unwrap();
        assert!(!report.conditions.omega_exact);
        assert!(report
            .bounds
            .iter()
            .all(|r| r.status == RecordStatus::Unverified && r.holds.is_none()));
    }

    #[test]
    fn single_edge_type_skips_rank_corank() {
        let g = complete_r_graph(4, &[2]).unwrap();
        let report = check_all(&g, &BoundOptions::default()).unwrap();
        let r = report.record("theorem_3_2").unwrap();
        assert_eq!(r.status, RecordStatus::NotApplicable);
        assert_eq!(r.holds, None);
    }
}
