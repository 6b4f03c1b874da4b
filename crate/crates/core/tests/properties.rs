mod common;

use common::{dense_hamiltonian, jacobi_eigenvalues, small_corpus};
use graph_agmon::agmon::{agmon_distance, agmon_distance_to, allowed_region, is_allowed};
use graph_agmon::bounds::{verify_refined, verify_theorem, TargetDistances};
use graph_agmon::graph::{gen_random_connected, Graph, Potential};
use graph_agmon::io::{graph_from_json, graph_to_json, load_graph, save_graph};
use graph_agmon::spectral::{assemble, eig_all, eig_smallest};
use proptest::prelude::*;

/// A connected graph on `4..=max_n` vertices with `W` in `[0, 20]`.
fn instance(max_n: usize) -> impl Strategy<Value = (Graph, Potential)> {
    (4..=max_n, any::<u64>(), 0.25f64..0.9)
        .prop_flat_map(|(n, seed, p)| (Just(n), Just(seed), Just(p), prop::collection::vec(0.0f64..=20.0, n)))
        .prop_map(|(n, seed, p, w)| (gen_random_connected(n, p, seed).unwrap(), Potential::new(w).unwrap()))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eigenvectors_orthonormal((g, w) in instance(40)) {
        let pairs = eig_all(&assemble(&g, &w).unwrap()).unwrap();
        for (i, a) in pairs.iter().enumerate() {
            for (j, b) in pairs.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                prop_assert!((dot(&a.eigenvector, &b.eigenvector) - expected).abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn ground_energy_at_least_min_potential((g, w) in instance(40)) {
        let pairs = eig_all(&assemble(&g, &w).unwrap()).unwrap();
        prop_assert!(w.min() <= pairs[0].eigenvalue + 1e-12);
        prop_assert!(!allowed_region(&w, pairs[0].eigenvalue).is_empty());
    }

    #[test]
    fn dense_matches_jacobi((g, w) in instance(24)) {
        let pairs = eig_all(&assemble(&g, &w).unwrap()).unwrap();
        let oracle = jacobi_eigenvalues(dense_hamiltonian(&g, &w));
        for (p, e) in pairs.iter().zip(&oracle) {
            prop_assert!((p.eigenvalue - e).abs() <= 1e-9, "{} vs {}", p.eigenvalue, e);
        }
    }

    #[test]
    fn iterative_matches_dense((g, w) in instance(60), count in 1usize..4) {
        let h = assemble(&g, &w).unwrap();
        let dense = eig_all(&h).unwrap();
        let lanczos = eig_smallest(&h, count).unwrap();
        for (a, b) in dense.iter().zip(&lanczos) {
            prop_assert!((a.eigenvalue - b.eigenvalue).abs() <= 1e-8);
        }
    }

    #[test]
    fn rho_is_monotone_in_energy((g, w) in instance(30), e in 0.0f64..20.0, de in 0.0f64..5.0) {
        prop_assume!(!allowed_region(&w, e).is_empty());
        let low = agmon_distance(&g, &w, e).unwrap();
        let high = agmon_distance(&g, &w, e + de).unwrap();
        for v in 0..g.n() {
            prop_assert!(high.rho[v] <= low.rho[v]);
        }
    }

    #[test]
    fn rho_satisfies_bellman_equation((g, w) in instance(30), e in 0.0f64..20.0) {
        prop_assume!(!allowed_region(&w, e).is_empty());
        let f = agmon_distance(&g, &w, e).unwrap();
        for v in 0..g.n() {
            if is_allowed(&w, e, v) {
                prop_assert_eq!(f.rho[v], 0.0);
                continue;
            }
            let best = g.neighbors(v).iter().map(|&u| f.rho[u]).fold(f64::INFINITY, f64::min);
            prop_assert!((f.rho[v] - (f.node_cost[v] + best)).abs() <= 1e-12);
            // the witness path realises the distance
            let path = f.witness_path(v);
            let sum: f64 = path.iter().map(|&u| f.node_cost[u]).sum();
            prop_assert!((sum - f.rho[v]).abs() <= 1e-12);
            prop_assert!(is_allowed(&w, e, *path.last().unwrap()));
            prop_assert!(path.windows(2).all(|p| g.has_edge(p[0], p[1])));
        }
    }

    #[test]
    fn nearest_target_recovers_rho((g, w) in instance(30), e in 0.0f64..20.0) {
        prop_assume!(!allowed_region(&w, e).is_empty());
        let f = agmon_distance(&g, &w, e).unwrap();
        let targets = TargetDistances::compute(&g, &w, e).unwrap();
        for (v, d) in targets.nearest().iter().enumerate() {
            prop_assert!((d - f.rho[v]).abs() <= 1e-12);
        }
        for &t in &targets.targets {
            let single = agmon_distance_to(&g, &w, e, t).unwrap();
            prop_assert_eq!(single[t], 0.0);
        }
    }

    #[test]
    fn refined_never_exceeds_theorem((g, w) in instance(30)) {
        let pairs = eig_all(&assemble(&g, &w).unwrap()).unwrap();
        for pair in pairs.iter().take(4) {
            let field = agmon_distance(&g, &w, pair.eigenvalue).unwrap();
            let theorem = verify_theorem(&g, &w, pair, &field).unwrap();
            let targets = TargetDistances::compute(&g, &w, pair.eigenvalue).unwrap();
            let refined = verify_refined(&g, &w, pair, &targets).unwrap();
            prop_assert!(refined.holds);
            for (r, t) in refined.rows.iter().zip(&theorem.rows) {
                prop_assert!(r.bound <= t.bound);
            }
        }
    }

    #[test]
    fn allowed_pendant_keeps_zero_distance((g, w) in instance(20), attach in 0usize..20, e in 0.0f64..20.0) {
        prop_assume!(!allowed_region(&w, e).is_empty());
        let before = agmon_distance(&g, &w, e).unwrap();
        let n = g.n();
        let attach = attach % n;
        let mut edges: Vec<(usize, usize)> = g.edges().collect();
        edges.push((attach, n));
        let bigger = Graph::from_edges(n + 1, &edges).unwrap();
        let mut values = w.values().to_vec();
        values.push(e.min(0.0));
        let wb = Potential::new(values).unwrap();
        let after = agmon_distance(&bigger, &wb, e).unwrap();
        for v in 0..n {
            if is_allowed(&w, e, v) {
                prop_assert_eq!(after.rho[v], 0.0);
            }
            // a new allowed vertex can only bring the region closer
            prop_assert!(after.rho[v] <= before.rho[v] + 1e-12);
        }
        prop_assert_eq!(after.rho[n], 0.0);
    }

    #[test]
    fn random_generator_is_deterministic(n in 4usize..40, seed in any::<u64>()) {
        let a = gen_random_connected(n, 0.4, seed).unwrap();
        let b = gen_random_connected(n, 0.4, seed).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn json_round_trip((g, w) in instance(30)) {
        let (g2, w2) = graph_from_json(&graph_to_json(&g, &w).unwrap()).unwrap();
        prop_assert_eq!(&g, &g2);
        prop_assert_eq!(w.values(), w2.values());
    }
}

#[test]
fn file_round_trip_on_corpus() {
    let dir = tempfile::tempdir().unwrap();
    for case in common::corpus() {
        let path = dir.path().join(format!("g{}.json", case.index));
        save_graph(&case.graph, &case.potential, &path).unwrap();
        let (g, w) = load_graph(&path).unwrap();
        assert_eq!(g, case.graph);
        assert_eq!(w.values(), case.potential.values());
    }
}

#[test]
fn corpus_has_small_graphs_and_is_connected() {
    let cases = common::corpus();
    assert!(cases.len() >= 50);
    assert!(small_corpus().len() >= 10);
    for case in &cases {
        assert!((4..=64).contains(&case.graph.n()));
        assert!(case.graph.validate().is_ok());
        assert!(case.potential.values().iter().all(|x| (0.0..=20.0).contains(x)));
    }
}
