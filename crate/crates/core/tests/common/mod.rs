//! Shared fixtures and brute-force oracles for the integration tests.
//!
//! Nothing here calls into the solver or distance code under test: the
//! oracles are exhaustive path enumeration and a cyclic Jacobi eigensolver.

#![allow(dead_code)]

use graph_agmon::graph::{gen_random_connected, Graph, Potential};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x5eed_c0de;
pub const CORPUS_SIZE: usize = 60;
/// Graphs `0..SMALL_COUNT` have `n <= 8`.
pub const SMALL_COUNT: usize = 16;

pub struct Case {
    pub index: usize,
    pub seed: u64,
    pub graph: Graph,
    pub potential: Potential,
}

/// Edge probability that keeps `G(n, p)` connected with high probability.
pub fn edge_prob(n: usize) -> f64 {
    (2.0 * (n as f64).ln() / n as f64).clamp(0.35, 1.0)
}

/// Random connected graphs with `n` in `[4, 64]` and `W` uniform on `[0, 20]`.
pub fn corpus() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE)
        .map(|index| {
            let n = if index < SMALL_COUNT { rng.gen_range(4..=8) } else { rng.gen_range(9..=64) };
            let seed: u64 = rng.gen();
            let graph = gen_random_connected(n, edge_prob(n), seed).expect("corpus graph");
            let potential = Potential::new((0..n).map(|_| rng.gen_range(0.0..=20.0)).collect()).unwrap();
            Case { index, seed, graph, potential }
        })
        .collect()
}

pub fn small_corpus() -> Vec<Case> {
    corpus().into_iter().filter(|c| c.graph.n() <= 8).collect()
}

fn brute_node_cost(graph: &Graph, w: &Potential, e: f64, v: usize) -> f64 {
    let excess = if w[v] > e { w[v] - e } else { 0.0 };
    (1.0 + excess / graph.degree(v) as f64).ln()
}

/// Visits every simple path starting at `start`, calling `visit(path)`.
fn each_simple_path(graph: &Graph, start: usize, visit: &mut dyn FnMut(&[usize])) {
    fn rec(graph: &Graph, path: &mut Vec<usize>, seen: &mut [bool], visit: &mut dyn FnMut(&[usize])) {
        visit(path);
        let last = *path.last().unwrap();
        for &w in graph.neighbors(last) {
            if !seen[w] {
                seen[w] = true;
                path.push(w);
                rec(graph, path, seen, visit);
                path.pop();
                seen[w] = false;
            }
        }
    }
    let mut seen = vec![false; graph.n()];
    seen[start] = true;
    rec(graph, &mut vec![start], &mut seen, visit);
}

/// Minimum over simple paths from `v` ending in `{W <= E}` of the summed
/// node costs of every vertex on the path.
pub fn brute_agmon(graph: &Graph, w: &Potential, e: f64) -> Vec<f64> {
    (0..graph.n())
        .map(|v| {
            let mut best = f64::INFINITY;
            each_simple_path(graph, v, &mut |path| {
                if w[*path.last().unwrap()] <= e {
                    let cost: f64 = path.iter().map(|&u| brute_node_cost(graph, w, e, u)).sum();
                    best = best.min(cost);
                }
            });
            best
        })
        .collect()
}

/// Same enumeration with the edge costs `log(1 + ((W(u)-E)₊(W(v)-E)₊)^{1/4})`.
pub fn brute_fmt(graph: &Graph, w: &Potential, e: f64) -> Vec<f64> {
    let excess = |u: usize| if w[u] > e { w[u] - e } else { 0.0 };
    (0..graph.n())
        .map(|v| {
            let mut best = f64::INFINITY;
            each_simple_path(graph, v, &mut |path| {
                if w[*path.last().unwrap()] <= e {
                    let cost: f64 =
                        path.windows(2).map(|p| (1.0 + (excess(p[0]) * excess(p[1])).powf(0.25)).ln()).sum();
                    best = best.min(cost);
                }
            });
            best
        })
        .collect()
}

/// Dense `L + diag(W)` built straight from the edge list.
pub fn dense_hamiltonian(graph: &Graph, w: &Potential) -> Vec<Vec<f64>> {
    let n = graph.n();
    let mut h = vec![vec![0.0; n]; n];
    for (u, v) in graph.edges() {
        h[u][v] -= 1.0;
        h[v][u] -= 1.0;
        h[u][u] += 1.0;
        h[v][v] += 1.0;
    }
    for v in 0..n {
        h[v][v] += w[v];
    }
    h
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let total: f64 = a.iter().flatten().map(|x| x * x).sum();
        if off <= 1e-30 * total.max(1e-300) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Eigenvalues of the two-vertex path with potential `(a, b)`.
pub fn p2_eigenvalues(a: f64, b: f64) -> (f64, f64) {
    let mean = (a + b + 2.0) / 2.0;
    let half_gap = ((a - b) * (a - b) + 4.0).sqrt() / 2.0;
    (mean - half_gap, mean + half_gap)
}

/// `Σ_{uv ∈ E} (f(u) - f(v))² + Σ_v W(v) f(v)²`.
pub fn dirichlet_form(graph: &Graph, w: &Potential, f: &[f64]) -> f64 {
    let edges: f64 = graph.edges().map(|(u, v)| (f[u] - f[v]).powi(2)).sum();
    let diag: f64 = (0..graph.n()).map(|v| w[v] * f[v] * f[v]).sum();
    edges + diag
}

/// Passes or fails one criterion, printing a single summary line either way.
pub fn report(name: &str, ok: bool, detail: &str) {
    println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
}
