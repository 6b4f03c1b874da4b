//! The sharpness example: a complete `q`-ary tree of depth `k` whose leaves
//! all connect to a hub `v*`, with `W(v*) = 0` and a large constant `W`
//! everywhere else.
//!
//! The ground state concentrates on the hub and decays by a factor of about
//! `q / W` per tree level, matching the per-vertex Agmon cost
//! `log(1 + (W - E)/(q + 1)) ≈ log(W / q)` to leading order.

use crate::agmon::AgmonField;
use crate::error::{Error, Result};
use crate::graph::{gen_tree_hub, tree_level_ranges, Graph, Potential};
use crate::spectral::{assemble, eig_all, eig_smallest, refine_forbidden, EigenPair, DEFAULT_DENSE_CAP};

const REFINE_SWEEPS: usize = 1000;

#[derive(Debug, Clone)]
pub struct TreeExperiment {
    pub q: usize,
    pub k: usize,
    pub w_mag: f64,
    pub hub: usize,
    pub graph: Graph,
    pub potential: Potential,
    /// Ground state with forbidden entries refined through the eigen-equation.
    pub ground: EigenPair,
    pub lambda1: f64,
    /// Mean `|φ|` over each level `0..=k`.
    pub level_profile: Vec<f64>,
    /// `(max - min) / mean` of `|φ|` within each level.
    pub level_spread: Vec<f64>,
    pub hub_value: f64,
    /// `φ_i / φ_{i+1}` for interior levels `i = 1..=k-2`.
    pub ratios: Vec<f64>,
}

impl TreeExperiment {
    pub fn max_level_spread(&self) -> f64 {
        self.level_spread.iter().copied().fold(0.0, f64::max)
    }

    /// `q^k`, the Rayleigh quotient of the hub indicator.
    pub fn hub_bound(&self) -> f64 {
        (self.q as f64).powi(self.k as i32)
    }
}

/// Builds the instance, computes its ground state and extracts the level
/// profile. Requires `q >= 2`, `k >= 2` and `w_mag > q^k`.
pub fn run_tree_experiment(q: usize, k: usize, w_mag: f64) -> Result<TreeExperiment> {
    if q < 2 || k < 2 {
        return Err(Error::InvalidParameter(format!("tree experiment needs q >= 2 and k >= 2, got q = {q}, k = {k}")));
    }
    let hub_bound = (q as f64).powi(k as i32);
    if !w_mag.is_finite() || w_mag <= hub_bound {
        return Err(Error::InvalidParameter(format!("W = {w_mag} must exceed q^k = {hub_bound}")));
    }
    let (graph, hub) = gen_tree_hub(q, k)?;
    let mut values = vec![w_mag; graph.n()];
    values[hub] = 0.0;
    let potential = Potential::new(values)?;

    let h = assemble(&graph, &potential)?;
    let raw =
        if graph.n() <= DEFAULT_DENSE_CAP { eig_all(&h)?.swap_remove(0) } else { eig_smallest(&h, 1)?.swap_remove(0) };
    let ground = refine_forbidden(&h, &raw, REFINE_SWEEPS);
    let lambda1 = ground.eigenvalue;

    let levels = tree_level_ranges(q, k);
    let mut level_profile = Vec::with_capacity(k + 1);
    let mut level_spread = Vec::with_capacity(k + 1);
    for range in &levels {
        let abs: Vec<f64> = ground.eigenvector[range.clone()].iter().map(|x| x.abs()).collect();
        let mean = abs.iter().sum::<f64>() / abs.len() as f64;
        let (lo, hi) = abs.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &x| (lo.min(x), hi.max(x)));
        level_profile.push(mean);
        level_spread.push(if mean > 0.0 { (hi - lo) / mean } else { 0.0 });
    }
    let ratios = (1..k.saturating_sub(1)).map(|i| level_profile[i] / level_profile[i + 1]).collect();
    let hub_value = ground.eigenvector[hub].abs();

    Ok(TreeExperiment {
        q,
        k,
        w_mag,
        hub,
        graph,
        potential,
        ground,
        lambda1,
        level_profile,
        level_spread,
        hub_value,
        ratios,
    })
}

/// Largest relative residual of `(W - λ₁ + q + 1) φ_i = q φ_{i+1} + φ_{i-1}`
/// over interior levels `1 <= i <= k-1`, each scaled by `W · φ_i`.
pub fn check_level_recurrence(exp: &TreeExperiment) -> f64 {
    level_recurrence_residual(exp, exp.lambda1)
}

/// [`check_level_recurrence`] evaluated at an arbitrary `energy`.
pub fn level_recurrence_residual(exp: &TreeExperiment, energy: f64) -> f64 {
    let q = exp.q as f64;
    let phi = &exp.level_profile;
    (1..exp.k)
        .map(|i| {
            let lhs = (exp.w_mag - energy + q + 1.0) * phi[i];
            let rhs = q * phi[i + 1] + phi[i - 1];
            let scale = exp.w_mag * phi[i];
            (lhs - rhs).abs() / scale
        })
        .fold(0.0, f64::max)
}

/// Per-level Agmon costs against the observed decay of the ground state.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayComparison {
    /// Node cost at each level `0..=k`.
    pub level_node_cost: Vec<f64>,
    /// Mean `ρ_E` at each level `0..=k`.
    pub level_rho: Vec<f64>,
    /// `-log(φ_i / φ_{i+1})` for `i = 1..=k-2`.
    pub empirical_rate: Vec<f64>,
    /// `level_node_cost[i] / empirical_rate` for the same `i`.
    pub rate_ratio: Vec<f64>,
    pub root_rho: f64,
    /// `-log(|φ(root)| / ‖φ‖_∞)`.
    pub root_log_decay: f64,
    /// `root_log_decay / root_rho`; 1 means the theorem bound is exact at the root.
    pub sharpness_ratio: f64,
}

pub fn compare_decay_rates(exp: &TreeExperiment, field: &AgmonField) -> Result<DecayComparison> {
    if field.energy.to_bits() != exp.lambda1.to_bits() {
        return Err(Error::EnergyMismatch { eigenvalue: exp.lambda1, field: field.energy });
    }
    let levels = tree_level_ranges(exp.q, exp.k);
    let level_mean = |values: &[f64]| -> Vec<f64> {
        levels.iter().map(|r| values[r.clone()].iter().sum::<f64>() / r.len() as f64).collect()
    };
    let level_node_cost = level_mean(&field.node_cost);
    let level_rho = level_mean(&field.rho);
    let empirical_rate: Vec<f64> = exp.ratios.iter().map(|r| -r.ln()).collect();
    let rate_ratio = empirical_rate.iter().enumerate().map(|(j, rate)| level_node_cost[j + 1] / rate).collect();
    let root_rho = field.rho[0];
    let root_log_decay = -(exp.ground.eigenvector[0].abs() / exp.ground.sup_norm()).ln();
    Ok(DecayComparison {
        level_node_cost,
        level_rho,
        empirical_rate,
        rate_ratio,
        root_rho,
        root_log_decay,
        sharpness_ratio: root_log_decay / root_rho,
    })
}
