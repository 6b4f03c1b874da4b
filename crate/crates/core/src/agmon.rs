//! Agmon-type distances to the allowed region `{v : W(v) <= E}`.
//!
//! The Agmon distance `ρ_E(v)` is the cheapest path from `v` into the allowed
//! region where each vertex on the path costs
//! `log(1 + (W(v) - E)₊ / deg(v))`. Allowed vertices cost nothing, so `ρ_E`
//! vanishes there. The comparison distance [`fmt_distance`] instead charges
//! each edge `log(1 + ((W(u) - E)₊ (W(v) - E)₊)^{1/4})`.
//!
//! All three distances are multi- or single-source Dijkstra searches with a
//! lazily-pruned binary heap.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{Graph, Potential};

/// `log(1 + (W(v) - E)₊ / deg(v))`.
pub fn node_cost(graph: &Graph, potential: &Potential, energy: f64, v: usize) -> f64 {
    let excess = (potential[v] - energy).max(0.0);
    (excess / graph.degree(v) as f64).ln_1p()
}

/// `log(1 + ((W(u) - E)₊ (W(v) - E)₊)^{1/4})`.
pub fn fmt_edge_cost(potential: &Potential, energy: f64, u: usize, v: usize) -> f64 {
    let a = (potential[u] - energy).max(0.0);
    let b = (potential[v] - energy).max(0.0);
    (a * b).sqrt().sqrt().ln_1p()
}

pub fn is_allowed(potential: &Potential, energy: f64, v: usize) -> bool {
    potential[v] <= energy
}

/// Allowed vertices in increasing order.
pub fn allowed_region(potential: &Potential, energy: f64) -> Vec<usize> {
    (0..potential.len()).filter(|&v| is_allowed(potential, energy, v)).collect()
}

/// Agmon distance `ρ_E` at one energy, with node costs and a witness.
#[derive(Debug, Clone, PartialEq)]
pub struct AgmonField {
    pub energy: f64,
    pub node_cost: Vec<f64>,
    /// `ρ_E(v)`; `f64::INFINITY` when no allowed vertex is reachable.
    pub rho: Vec<f64>,
    /// Next vertex on a cheapest path toward the allowed region; `None` on
    /// the allowed region itself.
    pub next_hop: Vec<Option<usize>>,
}

impl AgmonField {
    /// The field when the allowed region is empty: every distance is `+∞`.
    pub fn unreachable(graph: &Graph, potential: &Potential, energy: f64) -> Self {
        let n = graph.n();
        Self {
            energy,
            node_cost: (0..n).map(|v| node_cost(graph, potential, energy, v)).collect(),
            rho: vec![f64::INFINITY; n],
            next_hop: vec![None; n],
        }
    }

    /// Cheapest path from `v` into the allowed region, ending at its first
    /// allowed vertex.
    pub fn witness_path(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(next) = self.next_hop[cur] {
            path.push(next);
            cur = next;
        }
        path
    }
}

#[derive(Copy, Clone, PartialEq)]
struct State {
    cost: f64,
    vertex: usize,
}

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap by cost, then by vertex
        other.cost.total_cmp(&self.cost).then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra from `sources` (all at distance 0) where stepping `from -> to`
/// costs `step(from, to) >= 0`. Returns distances and predecessors, where the
/// predecessor of `to` is the `from` it was reached through.
fn dijkstra(graph: &Graph, sources: &[usize], step: impl Fn(usize, usize) -> f64) -> (Vec<f64>, Vec<Option<usize>>) {
    let n = graph.n();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![None; n];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        dist[s] = 0.0;
        heap.push(State { cost: 0.0, vertex: s });
    }
    while let Some(State { cost, vertex }) = heap.pop() {
        if cost > dist[vertex] {
            continue;
        }
        for &next in graph.neighbors(vertex) {
            let candidate = cost + step(vertex, next);
            if candidate < dist[next] {
                dist[next] = candidate;
                pred[next] = Some(vertex);
                heap.push(State { cost: candidate, vertex: next });
            }
        }
    }
    (dist, pred)
}

fn require_allowed(potential: &Potential, energy: f64) -> Result<Vec<usize>> {
    let allowed = allowed_region(potential, energy);
    if allowed.is_empty() {
        return Err(Error::EmptyAllowedRegion { energy, min_potential: potential.min() });
    }
    Ok(allowed)
}

/// `ρ_E` at every vertex by multi-source Dijkstra from the allowed region.
///
/// Returns [`Error::EmptyAllowedRegion`] when `E < min W`; use
/// [`AgmonField::unreachable`] to represent that case.
pub fn agmon_distance(graph: &Graph, potential: &Potential, energy: f64) -> Result<AgmonField> {
    potential.check_size(graph)?;
    let allowed = require_allowed(potential, energy)?;
    let costs: Vec<f64> = (0..graph.n()).map(|v| node_cost(graph, potential, energy, v)).collect();
    // reaching `to` from the allowed side adds the cost of `to` itself
    let (rho, next_hop) = dijkstra(graph, &allowed, |_, to| costs[to]);
    Ok(AgmonField { energy, node_cost: costs, rho, next_hop })
}

/// Cheapest node-cost path from every vertex to one allowed `target`.
/// Allowed vertices on the way are free.
pub fn agmon_distance_to(graph: &Graph, potential: &Potential, energy: f64, target: usize) -> Result<Vec<f64>> {
    potential.check_size(graph)?;
    if !is_allowed(potential, energy, target) {
        return Err(Error::TargetNotAllowed(target));
    }
    let costs: Vec<f64> = (0..graph.n()).map(|v| node_cost(graph, potential, energy, v)).collect();
    Ok(dijkstra(graph, &[target], |_, to| costs[to]).0)
}

/// The edge-cost comparison distance to the allowed region. Edges with an
/// allowed endpoint cost nothing.
pub fn fmt_distance(graph: &Graph, potential: &Potential, energy: f64) -> Result<Vec<f64>> {
    potential.check_size(graph)?;
    let allowed = require_allowed(potential, energy)?;
    Ok(dijkstra(graph, &allowed, |from, to| fmt_edge_cost(potential, energy, from, to)).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_cycle, gen_grid, gen_path};

    fn p3_barrier() -> (Graph, Potential) {
        (gen_path(3).unwrap(), Potential::new(vec![0.0, 10.0, 0.0]).unwrap())
    }

    #[test]
    fn node_cost_values() {
        let g = gen_path(3).unwrap();
        let w = Potential::new(vec![1.0, 10.0, 3.0]).unwrap();
        assert_eq!(node_cost(&g, &w, 1.0, 0), 0.0);
        // W - E = deg = 2 at vertex 1 -> log 2
        assert!((node_cost(&g, &w, 8.0, 1) - 2f64.ln()).abs() < 1e-15);
        assert!((node_cost(&g, &w, 1.0, 1) - 5.5f64.ln()).abs() < 1e-15);
        assert!((node_cost(&g, &w, 1.0, 1) - 1.704_748_092_238_424_6).abs() < 1e-12);
    }

    #[test]
    fn zero_potential_gives_zero_distance() {
        let g = gen_grid(3, 4).unwrap();
        let w = Potential::zeros(g.n());
        let field = agmon_distance(&g, &w, 0.0).unwrap();
        assert!(field.rho.iter().all(|&r| r == 0.0));
        assert!(fmt_distance(&g, &w, 0.0).unwrap().iter().all(|&r| r == 0.0));
    }

    #[test]
    fn p3_barrier_distances() {
        let (g, w) = p3_barrier();
        let field = agmon_distance(&g, &w, 1.0).unwrap();
        assert_eq!(field.rho, vec![0.0, 5.5f64.ln(), 0.0]);
        assert_eq!(field.witness_path(1), vec![1, 0]);
        assert_eq!(fmt_distance(&g, &w, 1.0).unwrap(), vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn single_target_on_p3() {
        let (g, w) = p3_barrier();
        let to0 = agmon_distance_to(&g, &w, 1.0, 0).unwrap();
        assert_eq!(to0[0], 0.0);
        assert_eq!(to0[1], 5.5f64.ln());
        assert_eq!(to0[2], 5.5f64.ln());
        assert_eq!(agmon_distance_to(&g, &w, 1.0, 1).unwrap_err(), Error::TargetNotAllowed(1));
    }

    #[test]
    fn empty_allowed_region() {
        let g = gen_cycle(5).unwrap();
        let w = Potential::constant(5, 3.0).unwrap();
        let err = agmon_distance(&g, &w, 2.0).unwrap_err();
        assert_eq!(err, Error::EmptyAllowedRegion { energy: 2.0, min_potential: 3.0 });
        assert!(matches!(fmt_distance(&g, &w, 2.0), Err(Error::EmptyAllowedRegion { .. })));
        let field = AgmonField::unreachable(&g, &w, 2.0);
        assert!(field.rho.iter().all(|r| r.is_infinite()));
    }

    #[test]
    fn corridor_distance_accumulates() {
        // 0 - 1 - 2 - 3 - 4 with allowed ends
        let g = gen_path(5).unwrap();
        let w = Potential::new(vec![0.0, 4.0, 4.0, 4.0, 0.0]).unwrap();
        let field = agmon_distance(&g, &w, 0.0).unwrap();
        let c = 3f64.ln();
        assert!((field.rho[1] - c).abs() < 1e-15);
        assert!((field.rho[2] - 2.0 * c).abs() < 1e-15);
        assert!((field.rho[3] - c).abs() < 1e-15);
        assert_eq!(field.witness_path(2), vec![2, 1, 0]);
    }
}
