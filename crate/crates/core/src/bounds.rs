//! Pointwise decay bounds for eigenvectors of `L + W`, checked vertex by
//! vertex.
//!
//! For an eigenpair `(E, φ)` every vertex satisfies
//! `|φ(v)| <= exp(-ρ_E(v)) ‖φ‖_∞`. The proof walks from `v` to a neighbor of
//! maximal `|φ|` until it reaches the allowed region; [`greedy_path`]
//! reproduces that walk so its claims can be checked on real data.

use serde::Serialize;

use crate::agmon::{agmon_distance_to, allowed_region, is_allowed, node_cost, AgmonField};
use crate::error::{Error, Result};
use crate::graph::{Graph, Potential};
use crate::spectral::EigenPair;

/// Default verification tolerance, relative to `‖φ‖_∞`.
pub const DEFAULT_TOL_VERIFY: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// `exp(-ρ_E(v)) ‖φ‖_∞`
    Theorem,
    /// `max_w exp(-d(v → w)) |φ(w)|` over allowed targets `w`
    Refined,
    /// `E[(1 + δ)^{-τ}] ‖φ‖_∞` for the absorbing random walk
    RandomWalk,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundRow {
    pub vertex: usize,
    pub abs_phi: f64,
    pub rho: f64,
    pub node_cost: f64,
    /// `exp(-ρ_E(v)) ‖φ‖_∞`, reported for every kind so variants can be compared.
    pub theorem_bound: f64,
    /// The bound of the report's kind.
    pub bound: f64,
    /// `bound - |φ(v)|`.
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub energy: f64,
    pub sup_norm: f64,
    /// Absolute tolerance on slack.
    pub tolerance: f64,
    pub rows: Vec<BoundRow>,
    pub argmax: usize,
    pub argmax_allowed: bool,
    /// Every slack is `>= -tolerance` (and, for refined reports, the refined
    /// bound never exceeds the theorem bound).
    pub holds: bool,
}

impl BoundReport {
    pub fn min_slack(&self) -> f64 {
        self.rows.iter().map(|r| r.slack).fold(f64::INFINITY, f64::min)
    }

    /// Vertex with the smallest slack (lowest index on ties).
    pub fn worst_vertex(&self) -> usize {
        let mut worst = 0;
        for (i, r) in self.rows.iter().enumerate() {
            if r.slack < self.rows[worst].slack {
                worst = i;
            }
        }
        self.rows[worst].vertex
    }

    /// `max(0, -min_slack)`.
    pub fn max_violation(&self) -> f64 {
        (-self.min_slack()).max(0.0)
    }

    /// Vertices where this report's bound is strictly below the theorem bound.
    pub fn tighter_than_theorem(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| r.bound < r.theorem_bound).map(|r| r.vertex).collect()
    }
}

fn check_inputs(graph: &Graph, potential: &Potential, pair: &EigenPair) -> Result<()> {
    potential.check_size(graph)?;
    if pair.eigenvector.len() != graph.n() {
        return Err(Error::SizeMismatch { graph: graph.n(), other: pair.eigenvector.len() });
    }
    Ok(())
}

fn check_energy(pair: &EigenPair, field_energy: f64) -> Result<()> {
    if pair.eigenvalue.to_bits() != field_energy.to_bits() {
        return Err(Error::EnergyMismatch { eigenvalue: pair.eigenvalue, field: field_energy });
    }
    Ok(())
}

pub(crate) fn build_report(
    kind: BoundKind,
    potential: &Potential,
    pair: &EigenPair,
    tol_verify: f64,
    rho: &[f64],
    node_costs: &[f64],
    bound_of: impl Fn(usize) -> f64,
) -> BoundReport {
    let sup = pair.sup_norm();
    let tolerance = tol_verify * sup;
    let rows: Vec<BoundRow> = (0..pair.eigenvector.len())
        .map(|v| {
            let abs_phi = pair.eigenvector[v].abs();
            let bound = bound_of(v);
            BoundRow {
                vertex: v,
                abs_phi,
                rho: rho[v],
                node_cost: node_costs[v],
                theorem_bound: (-rho[v]).exp() * sup,
                bound,
                slack: bound - abs_phi,
            }
        })
        .collect();
    let argmax = pair.argmax();
    let holds = rows.iter().all(|r| r.slack >= -tolerance);
    BoundReport {
        kind,
        energy: pair.eigenvalue,
        sup_norm: sup,
        tolerance,
        rows,
        argmax,
        argmax_allowed: is_allowed(potential, pair.eigenvalue, argmax),
        holds,
    }
}

/// Checks `|φ(v)| <= exp(-ρ_E(v)) ‖φ‖_∞` at every vertex.
pub fn verify_theorem(
    graph: &Graph,
    potential: &Potential,
    pair: &EigenPair,
    field: &AgmonField,
) -> Result<BoundReport> {
    verify_theorem_with(graph, potential, pair, field, DEFAULT_TOL_VERIFY)
}

pub fn verify_theorem_with(
    graph: &Graph,
    potential: &Potential,
    pair: &EigenPair,
    field: &AgmonField,
    tol_verify: f64,
) -> Result<BoundReport> {
    check_inputs(graph, potential, pair)?;
    check_energy(pair, field.energy)?;
    let sup = pair.sup_norm();
    Ok(build_report(BoundKind::Theorem, potential, pair, tol_verify, &field.rho, &field.node_cost, |v| {
        (-field.rho[v]).exp() * sup
    }))
}

/// Node-cost distances from every vertex to each allowed target.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetDistances {
    pub energy: f64,
    pub targets: Vec<usize>,
    /// `distances[i][v]` is the cheapest cost from `v` to `targets[i]`.
    pub distances: Vec<Vec<f64>>,
}

impl TargetDistances {
    pub fn compute(graph: &Graph, potential: &Potential, energy: f64) -> Result<Self> {
        let targets = allowed_region(potential, energy);
        if targets.is_empty() {
            return Err(Error::EmptyAllowedRegion { energy, min_potential: potential.min() });
        }
        let distances =
            targets.iter().map(|&t| agmon_distance_to(graph, potential, energy, t)).collect::<Result<Vec<_>>>()?;
        Ok(Self { energy, targets, distances })
    }

    /// `min` over targets; coincides with `ρ_E`.
    pub fn nearest(&self) -> Vec<f64> {
        let n = self.distances[0].len();
        (0..n).map(|v| self.distances.iter().map(|d| d[v]).fold(f64::INFINITY, f64::min)).collect()
    }
}

/// Checks `|φ(u)| <= max_w exp(-d(u → w)) |φ(w)|` over allowed targets `w`,
/// and that this refined bound never exceeds the theorem bound.
pub fn verify_refined(
    graph: &Graph,
    potential: &Potential,
    pair: &EigenPair,
    targets: &TargetDistances,
) -> Result<BoundReport> {
    verify_refined_with(graph, potential, pair, targets, DEFAULT_TOL_VERIFY)
}

pub fn verify_refined_with(
    graph: &Graph,
    potential: &Potential,
    pair: &EigenPair,
    targets: &TargetDistances,
    tol_verify: f64,
) -> Result<BoundReport> {
    check_inputs(graph, potential, pair)?;
    check_energy(pair, targets.energy)?;
    let rho = targets.nearest();
    let costs: Vec<f64> = (0..graph.n()).map(|v| node_cost(graph, potential, pair.eigenvalue, v)).collect();
    let phi = &pair.eigenvector;
    let mut report = build_report(BoundKind::Refined, potential, pair, tol_verify, &rho, &costs, |v| {
        targets.targets.iter().zip(&targets.distances).map(|(&w, d)| (-d[v]).exp() * phi[w].abs()).fold(0.0, f64::max)
    });
    report.holds &= report.rows.iter().all(|r| r.bound <= r.theorem_bound);
    Ok(report)
}

/// The proof's walk from a forbidden vertex along neighbors of maximal `|φ|`.
#[derive(Debug, Clone, PartialEq)]
pub struct GreedyPath {
    pub vertices: Vec<usize>,
    pub abs_phi: Vec<f64>,
    pub reached_allowed: bool,
}

impl GreedyPath {
    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn terminal(&self) -> usize {
        *self.vertices.last().expect("path is never empty")
    }

    /// `Π [1 + (W(v_i) - E)/deg(v_i)]^{-1}` over the forbidden vertices of
    /// the path (all but the terminal one).
    pub fn collected_factor(&self, graph: &Graph, potential: &Potential, energy: f64) -> f64 {
        self.vertices[..self.vertices.len() - 1]
            .iter()
            .map(|&v| 1.0 / (1.0 + (potential[v] - energy) / graph.degree(v) as f64))
            .product()
    }

    /// `collected_factor * |φ(terminal)|`, which bounds `|φ(start)|`.
    pub fn factor_bound(&self, graph: &Graph, potential: &Potential, energy: f64) -> f64 {
        self.collected_factor(graph, potential, energy) * self.abs_phi[self.abs_phi.len() - 1]
    }
}

/// Follows neighbors of maximal `|φ|` (lowest index on ties) from a forbidden
/// `start` with `φ(start) != 0` until the allowed region is reached.
///
/// Fails with [`Error::GreedyStalled`] if `|φ|` does not strictly increase at
/// some step, which cannot happen for an exact eigenvector.
pub fn greedy_path(graph: &Graph, potential: &Potential, pair: &EigenPair, start: usize) -> Result<GreedyPath> {
    check_inputs(graph, potential, pair)?;
    let energy = pair.eigenvalue;
    let phi = &pair.eigenvector;
    if is_allowed(potential, energy, start) {
        return Err(Error::StartNotForbidden(start));
    }
    if phi[start] == 0.0 {
        return Err(Error::ZeroAmplitudeStart(start));
    }
    let mut vertices = vec![start];
    let mut abs_phi = vec![phi[start].abs()];
    let mut cur = start;
    while !is_allowed(potential, energy, cur) {
        let mut best = graph.neighbors(cur)[0];
        for &w in graph.neighbors(cur) {
            if phi[w].abs() > phi[best].abs() {
                best = w;
            }
        }
        if phi[best].abs() <= phi[cur].abs() {
            return Err(Error::GreedyStalled(cur));
        }
        vertices.push(best);
        abs_phi.push(phi[best].abs());
        cur = best;
    }
    Ok(GreedyPath { vertices, abs_phi, reached_allowed: true })
}

/// `|[1 + (W(u) - E)/deg(u)] φ(u) - (1/deg(u)) Σ_{w~u} φ(w)|`, the per-vertex
/// eigen-equation in the form the proof divides through.
pub fn local_identity_residual(graph: &Graph, potential: &Potential, pair: &EigenPair, u: usize) -> f64 {
    let deg = graph.degree(u) as f64;
    let phi = &pair.eigenvector;
    let mean: f64 = graph.neighbors(u).iter().map(|&w| phi[w]).sum::<f64>() / deg;
    ((1.0 + (potential[u] - pair.eigenvalue) / deg) * phi[u] - mean).abs()
}
