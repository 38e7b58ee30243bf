mod common;

use approx::assert_abs_diff_eq;
use hspec::clique::max_clique_exact;
use hspec::lagrangian::{
    clique_support_value, lagrangian_gradient, lagrangian_value, maximize_lagrangian,
    project_to_simplex, LagrangianOptions, SimplexVector,
};
use hspec::{complete_r_graph, Hypergraph};
use proptest::prelude::*;

use common::{arb_hypergraph, arb_nonempty_hypergraph};

fn arb_simplex(n: usize) -> impl Strategy<Value = SimplexVector> {
    prop::collection::vec(0.0f64..1.0, n)
        .prop_map(|v| SimplexVector::new(project_to_simplex(&v)).unwrap())
}

#[test]
fn double_triangle_pair_reaches_the_clique_value() {
    let tri = complete_r_graph(3, &[2, 3]).unwrap();
    let g = tri.disjoint_union(&tri);
    let r = maximize_lagrangian(&g, &LagrangianOptions::default()).unwrap();
    assert_abs_diff_eq!(r.value, clique_support_value(3, &[2, 3], 3), epsilon = 1e-6);
}

#[test]
fn fewer_vertices_than_the_rank_gives_zero() {
    let g = Hypergraph::new(5, [vec![0, 1, 2, 3, 4]]).unwrap();
    assert_eq!(clique_support_value(1, &[5], 5), 0.0);
    let r = maximize_lagrangian(&g, &LagrangianOptions::default()).unwrap();
    // the single edge at uniform weights: 5!/5^5 / 5! = 5^-5
    assert_abs_diff_eq!(r.value, 5f64.powi(-5), epsilon = 1e-12);
}

#[test]
fn deterministic_across_runs() {
    let g = hspec::random_r_graph(8, &[2, 3], 0.4, 11).unwrap();
    let a = maximize_lagrangian(&g, &LagrangianOptions::default()).unwrap();
    let b = maximize_lagrangian(&g, &LagrangianOptions::default()).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gradient_matches_finite_differences(g in arb_nonempty_hypergraph(7, &[2, 3, 4]), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<f64> = (0..g.n()).map(|_| rng.gen_range(0.05..1.0)).collect();
        let grad = lagrangian_gradient(&g, &x).unwrap();
        let eval = |y: &[f64]| {
            // L is defined on the simplex but the polynomial extends to all x
            let s: f64 = y.iter().sum();
            let k = g.rank().unwrap() as i32;
            let scaled: Vec<f64> = y.iter().map(|v| v / s).collect();
            lagrangian_value(&g, &SimplexVector::new(scaled).unwrap()).unwrap() * s.powi(k)
        };
        for v in 0..g.n() {
            let h = 1e-6;
            let mut up = x.clone();
            let mut down = x.clone();
            up[v] += h;
            down[v] -= h;
            let fd = (eval(&up) - eval(&down)) / (2.0 * h);
            prop_assert!((fd - grad[v]).abs() <= 1e-5 * grad[v].abs().max(1e-3), "{v}: {} vs {fd}", grad[v]);
        }
    }

    #[test]
    fn optimizer_beats_the_clique_certificate(g in arb_hypergraph(8, &[2, 3, 4])) {
        let omega = max_clique_exact(&g).omega;
        let r = maximize_lagrangian(&g, &LagrangianOptions::default()).unwrap();
        let floor = g.rank().map_or(0.0, |k| {
            let types: Vec<usize> = g.edge_types().iter().copied().collect();
            clique_support_value(omega, &types, k)
        });
        prop_assert!(r.value >= floor - 1e-9, "{} < {floor}", r.value);
    }

    #[test]
    fn argmax_is_feasible_and_consistent(g in arb_nonempty_hypergraph(8, &[2, 3, 4])) {
        let r = maximize_lagrangian(&g, &LagrangianOptions::default()).unwrap();
        let x = r.argmax.as_slice();
        prop_assert!(x.iter().all(|&v| v >= -1e-14));
        prop_assert!((x.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert!((lagrangian_value(&g, &r.argmax).unwrap() - r.value).abs() <= 1e-12);
        prop_assert!(r.kkt_residual <= 1e-6);
    }

    #[test]
    fn zero_mass_vertex_can_be_deleted(g in arb_nonempty_hypergraph(7, &[2, 3]), v in 0usize..7, x in arb_simplex(7)) {
        let v = v % g.n();
        let mut y: Vec<f64> = x.as_slice()[..g.n()].to_vec();
        y[v] = 0.0;
        prop_assume!(y.iter().sum::<f64>() > 0.1);
        let s: f64 = y.iter().sum();
        y.iter_mut().for_each(|t| *t /= s);
        let h = g.without_vertex(v).unwrap();
        prop_assume!(h.rank() == g.rank());
        let full = lagrangian_value(&g, &SimplexVector::new(y.clone()).unwrap()).unwrap();
        let mut rest = y;
        rest.remove(v);
        let reduced = lagrangian_value(&h, &SimplexVector::new(rest).unwrap()).unwrap();
        prop_assert!((full - reduced).abs() <= 1e-14);
    }

    #[test]
    fn projection_lands_on_the_simplex(v in prop::collection::vec(-5.0f64..5.0, 1..12)) {
        let p = project_to_simplex(&v);
        prop_assert!(p.iter().all(|&t| t >= 0.0));
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }
}
