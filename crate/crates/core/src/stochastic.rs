//! Random-walk form of the decay bound.
//!
//! Let `X_0 = u` and let `X_{k+1}` be a uniformly chosen neighbor of `X_k`,
//! stopped at the first time `τ` with `W(X_τ) <= E`. If
//! `(W(v) - E)/deg(v) >= δ` on the forbidden region then
//! `|φ(u)| <= E[(1 + δ)^{-τ}] ‖φ‖_∞`.
//!
//! The moment `f(u) = E[(1 + δ)^{-τ}]` satisfies `f = 1` on the allowed
//! region and `f(u) = (1 + δ)^{-1} mean_{w~u} f(w)` elsewhere; [`exact_moment`]
//! solves that linear system and [`mc_moment`] estimates it by simulation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::agmon::{agmon_distance, allowed_region, is_allowed, node_cost};
use crate::bounds::{build_report, BoundKind, BoundReport, DEFAULT_TOL_VERIFY};
use crate::error::{Error, Result};
use crate::graph::{Graph, Potential};
use crate::spectral::EigenPair;

pub const DEFAULT_STEP_CAP: u64 = 1_000_000;
/// Target for the moment system's fixed-point residual.
pub const MOMENT_RESIDUAL_TOL: f64 = 1e-12;

/// `δ = min_{W(u) > E} (W(u) - E)/deg(u)`.
pub fn compute_delta(graph: &Graph, potential: &Potential, energy: f64) -> Result<f64> {
    potential.check_size(graph)?;
    (0..graph.n())
        .filter(|&u| !is_allowed(potential, energy, u))
        .map(|u| (potential[u] - energy) / graph.degree(u) as f64)
        .min_by(f64::total_cmp)
        .ok_or(Error::NoForbiddenRegion)
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidParameter(format!("delta must be positive and finite, got {delta}")));
    }
    Ok(())
}

/// `max_u |f(u) - target(u)|` where `target = 1` on the allowed region and
/// `(1 + δ)^{-1} mean_{w~u} f(w)` elsewhere.
pub fn moment_residual(graph: &Graph, potential: &Potential, energy: f64, delta: f64, f: &[f64]) -> f64 {
    (0..graph.n())
        .map(|u| {
            let target = if is_allowed(potential, energy, u) {
                1.0
            } else {
                let sum: f64 = graph.neighbors(u).iter().map(|&w| f[w]).sum();
                sum / (graph.degree(u) as f64 * (1.0 + delta))
            };
            (f[u] - target).abs()
        })
        .fold(0.0, f64::max)
}

/// Solves the forbidden block of the moment system by Gaussian elimination
/// with partial pivoting, then polishes with Gauss-Seidel sweeps until the
/// residual is at most [`MOMENT_RESIDUAL_TOL`].
pub fn exact_moment(graph: &Graph, potential: &Potential, energy: f64, delta: f64) -> Result<Vec<f64>> {
    potential.check_size(graph)?;
    check_delta(delta)?;
    if allowed_region(potential, energy).is_empty() {
        return Err(Error::EmptyAllowedRegion { energy, min_potential: potential.min() });
    }
    let n = graph.n();
    let forbidden: Vec<usize> = (0..n).filter(|&u| !is_allowed(potential, energy, u)).collect();
    let mut slot = vec![usize::MAX; n];
    for (i, &u) in forbidden.iter().enumerate() {
        slot[u] = i;
    }

    let m = forbidden.len();
    let mut a = vec![0.0; m * m];
    let mut b = vec![0.0; m];
    for (i, &u) in forbidden.iter().enumerate() {
        let weight = 1.0 / (graph.degree(u) as f64 * (1.0 + delta));
        a[i * m + i] = 1.0;
        for &w in graph.neighbors(u) {
            if slot[w] == usize::MAX {
                b[i] += weight;
            } else {
                a[i * m + slot[w]] -= weight;
            }
        }
    }
    let x = solve_dense(a, b, m);

    let mut f = vec![1.0; n];
    for (i, &u) in forbidden.iter().enumerate() {
        f[u] = x[i];
    }
    for _ in 0..100 {
        if moment_residual(graph, potential, energy, delta, &f) <= MOMENT_RESIDUAL_TOL {
            break;
        }
        for &u in &forbidden {
            let sum: f64 = graph.neighbors(u).iter().map(|&w| f[w]).sum();
            f[u] = sum / (graph.degree(u) as f64 * (1.0 + delta));
        }
    }
    Ok(f)
}

/// `A x = b` for a nonsingular row-major `m x m` matrix.
fn solve_dense(mut a: Vec<f64>, mut b: Vec<f64>, m: usize) -> Vec<f64> {
    for col in 0..m {
        let pivot =
            (col..m).max_by(|&i, &j| a[i * m + col].abs().total_cmp(&a[j * m + col].abs())).expect("nonempty range");
        if pivot != col {
            for k in 0..m {
                a.swap(col * m + k, pivot * m + k);
            }
            b.swap(col, pivot);
        }
        let diag = a[col * m + col];
        for row in col + 1..m {
            let factor = a[row * m + col] / diag;
            if factor == 0.0 {
                continue;
            }
            for k in col..m {
                a[row * m + k] -= factor * a[col * m + k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; m];
    for row in (0..m).rev() {
        let tail: f64 = (row + 1..m).map(|k| a[row * m + k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row * m + row];
    }
    x
}

/// Monte Carlo estimate of `E[(1 + δ)^{-τ}]` from one start vertex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
}

/// Simulated moments for every start vertex with the default step cap.
pub fn mc_moment(
    graph: &Graph,
    potential: &Potential,
    energy: f64,
    delta: f64,
    samples: usize,
    seed: u64,
) -> Result<Vec<McEstimate>> {
    mc_moment_with(graph, potential, energy, delta, samples, seed, DEFAULT_STEP_CAP)
}

/// Simulated moments for every start vertex.
///
/// Start vertex `u` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream
/// `u`, so results do not depend on how vertices are scheduled across
/// threads. A walk longer than `step_cap` steps aborts the whole run with
/// [`Error::StepCapExceeded`].
pub fn mc_moment_with(
    graph: &Graph,
    potential: &Potential,
    energy: f64,
    delta: f64,
    samples: usize,
    seed: u64,
    step_cap: u64,
) -> Result<Vec<McEstimate>> {
    potential.check_size(graph)?;
    check_delta(delta)?;
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    if allowed_region(potential, energy).is_empty() {
        return Err(Error::EmptyAllowedRegion { energy, min_potential: potential.min() });
    }
    let growth = 1.0 + delta;
    let results: Vec<Option<McEstimate>> = (0..graph.n())
        .into_par_iter()
        .map(|u| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(u as u64);
            // Welford running mean and sum of squared deviations
            let (mut mean, mut m2) = (0.0, 0.0);
            for i in 1..=samples {
                let mut cur = u;
                let mut tau: u64 = 0;
                while !is_allowed(potential, energy, cur) {
                    if tau == step_cap {
                        return None;
                    }
                    let nbrs = graph.neighbors(cur);
                    cur = nbrs[rng.gen_range(0..nbrs.len())];
                    tau += 1;
                }
                let x = 1.0 / growth.powi(tau.min(i32::MAX as u64) as i32);
                let d = x - mean;
                mean += d / i as f64;
                m2 += d * (x - mean);
            }
            let std_error = if samples > 1 { (m2 / (samples - 1) as f64 / samples as f64).sqrt() } else { 0.0 };
            Some(McEstimate { estimate: mean, std_error })
        })
        .collect();
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, r)| r.is_none()).map(|(u, _)| u).collect();
    if !failed.is_empty() {
        return Err(Error::StepCapExceeded { cap: step_cap, vertices: failed });
    }
    Ok(results.into_iter().map(Option::unwrap).collect())
}

/// Random-walk bound data at one energy.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkBound {
    pub energy: f64,
    pub delta: f64,
    pub exact_moment: Vec<f64>,
    pub mc_moment: Option<Vec<McEstimate>>,
    pub sample_count: usize,
    pub seed: u64,
}

impl WalkBound {
    /// `δ` and the exact moments; no simulation.
    pub fn compute(graph: &Graph, potential: &Potential, energy: f64) -> Result<Self> {
        let delta = compute_delta(graph, potential, energy)?;
        let exact = exact_moment(graph, potential, energy, delta)?;
        Ok(Self { energy, delta, exact_moment: exact, mc_moment: None, sample_count: 0, seed: 0 })
    }

    pub fn with_monte_carlo(mut self, graph: &Graph, potential: &Potential, samples: usize, seed: u64) -> Result<Self> {
        self.mc_moment = Some(mc_moment(graph, potential, self.energy, self.delta, samples, seed)?);
        self.sample_count = samples;
        self.seed = seed;
        Ok(self)
    }
}

/// Checks `|φ(u)| <= E[(1 + δ)^{-τ}] ‖φ‖_∞` using the exact moments. Rows
/// carry the theorem bound alongside for comparison.
pub fn verify_walk_bound(
    graph: &Graph,
    potential: &Potential,
    pair: &EigenPair,
    walk: &WalkBound,
) -> Result<BoundReport> {
    verify_walk_bound_with(graph, potential, pair, walk, DEFAULT_TOL_VERIFY)
}

pub fn verify_walk_bound_with(
    graph: &Graph,
    potential: &Potential,
    pair: &EigenPair,
    walk: &WalkBound,
    tol_verify: f64,
) -> Result<BoundReport> {
    potential.check_size(graph)?;
    if pair.eigenvector.len() != graph.n() {
        return Err(Error::SizeMismatch { graph: graph.n(), other: pair.eigenvector.len() });
    }
    if pair.eigenvalue.to_bits() != walk.energy.to_bits() {
        return Err(Error::EnergyMismatch { eigenvalue: pair.eigenvalue, field: walk.energy });
    }
    let field = agmon_distance(graph, potential, pair.eigenvalue)?;
    let costs: Vec<f64> = (0..graph.n()).map(|v| node_cost(graph, potential, pair.eigenvalue, v)).collect();
    let sup = pair.sup_norm();
    Ok(build_report(BoundKind::RandomWalk, potential, pair, tol_verify, &field.rho, &costs, |v| {
        walk.exact_moment[v] * sup
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_path, gen_tree_hub};

    fn p3() -> (Graph, Potential) {
        (gen_path(3).unwrap(), Potential::new(vec![0.0, 10.0, 0.0]).unwrap())
    }

    #[test]
    fn delta_on_p3() {
        let (g, w) = p3();
        assert_eq!(compute_delta(&g, &w, 1.0).unwrap(), 4.5);
        let zero = Potential::zeros(3);
        assert_eq!(compute_delta(&g, &zero, 0.0).unwrap_err(), Error::NoForbiddenRegion);
    }

    #[test]
    fn delta_on_tree_hub_sits_at_internal_vertices() {
        let (g, hub) = gen_tree_hub(3, 2).unwrap();
        let mut wv = vec![1e4; g.n()];
        wv[hub] = 0.0;
        let w = Potential::new(wv).unwrap();
        let e = 8.5;
        // degrees: root 3, level 1 four, level 2 two
        assert_eq!(compute_delta(&g, &w, e).unwrap(), (1e4 - e) / 4.0);
    }

    #[test]
    fn exact_moment_on_p3() {
        let (g, w) = p3();
        let f = exact_moment(&g, &w, 1.0, 4.5).unwrap();
        assert_eq!(f[0], 1.0);
        assert_eq!(f[2], 1.0);
        assert!((f[1] - 2.0 / 11.0).abs() < 1e-15);
        assert!(moment_residual(&g, &w, 1.0, 4.5, &f) <= MOMENT_RESIDUAL_TOL);
    }

    #[test]
    fn exact_moment_on_corridor_matches_series() {
        // 0 - 1 - 2 with 0 allowed only: τ from 1 is 1 + 2 Geom-like excursions.
        // f1 = a (1 + f2)/2, f2 = a f1, a = 1/(1+δ)  =>  f1 = a / (2 - a²)
        let g = gen_path(3).unwrap();
        let w = Potential::new(vec![0.0, 3.0, 2.0]).unwrap();
        let delta = compute_delta(&g, &w, 0.0).unwrap();
        assert_eq!(delta, 1.5);
        let f = exact_moment(&g, &w, 0.0, delta).unwrap();
        let a = 1.0 / (1.0 + delta);
        assert!((f[1] - a / (2.0 - a * a)).abs() < 1e-15);
        assert!((f[2] - a * a / (2.0 - a * a)).abs() < 1e-15);
    }

    #[test]
    fn moment_errors() {
        let (g, w) = p3();
        assert!(matches!(exact_moment(&g, &w, 1.0, 0.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(exact_moment(&g, &w, -1.0, 1.0), Err(Error::EmptyAllowedRegion { .. })));
        assert!(matches!(mc_moment(&g, &w, 1.0, 4.5, 0, 1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn monte_carlo_on_p3() {
        let (g, w) = p3();
        let mc = mc_moment(&g, &w, 1.0, 4.5, 1000, 42).unwrap();
        assert_eq!(mc[0], McEstimate { estimate: 1.0, std_error: 0.0 });
        // τ ≡ 1 from the middle vertex
        assert_eq!(mc[1].estimate, 2.0 / 11.0);
        assert_eq!(mc[1].std_error, 0.0);
        assert_eq!(mc, mc_moment(&g, &w, 1.0, 4.5, 1000, 42).unwrap());
    }

    #[test]
    fn step_cap_is_reported() {
        let g = gen_path(6).unwrap();
        let w = Potential::new(vec![0.0, 1.0, 1.0, 1.0, 1.0, 1.0]).unwrap();
        let err = mc_moment_with(&g, &w, 0.0, 0.5, 10, 1, 2).unwrap_err();
        match err {
            Error::StepCapExceeded { cap, vertices } => {
                assert_eq!(cap, 2);
                assert!(vertices.contains(&5));
                assert!(!vertices.contains(&0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
