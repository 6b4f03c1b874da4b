//! Finite simple connected graphs, vertex potentials, and the generator
//! families used throughout the crate.
//!
//! Vertices are `0..n`. A [`Graph`] can only be obtained through a
//! validating constructor, so every `Graph` value is symmetric, loop-free,
//! duplicate-free, connected and has `n >= 2`.

use std::collections::VecDeque;
use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Number of resamples attempted by [`gen_random_connected`].
pub const RANDOM_GRAPH_RETRIES: usize = 1000;

/// An undirected simple connected graph stored as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from raw per-vertex neighbor lists.
    ///
    /// The lists may be unsorted; they are validated (see [`validate_adjacency`])
    /// and then sorted.
    pub fn from_adjacency(mut adjacency: Vec<Vec<usize>>) -> Result<Self> {
        validate_adjacency(&adjacency)?;
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Self { adjacency })
    }

    /// Builds a graph on `n` vertices from an undirected edge list, each
    /// unordered pair listed once.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for (a, b) in [(u, v), (v, u)] {
                if a >= n {
                    return Err(Error::VertexOutOfRange { vertex: b, neighbor: a, n });
                }
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Self::from_adjacency(adjacency)
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Re-checks every structural invariant.
    pub fn validate(&self) -> Result<()> {
        validate_adjacency(&self.adjacency)
    }
}

/// Checks raw adjacency data against the [`Graph`] invariants.
///
/// Checks run in a fixed order (range, self-loops, duplicates, symmetry,
/// isolated vertices, connectivity) and the first failure is reported.
/// A single vertex is rejected as isolated.
pub fn validate_adjacency(adjacency: &[Vec<usize>]) -> Result<()> {
    let n = adjacency.len();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    for (v, nbrs) in adjacency.iter().enumerate() {
        for &w in nbrs {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: v, neighbor: w, n });
            }
            if w == v {
                return Err(Error::SelfLoop(v));
            }
        }
        let mut sorted = nbrs.clone();
        sorted.sort_unstable();
        if let Some(pair) = sorted.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::DuplicateEdge(v.min(pair[0]), v.max(pair[0])));
        }
    }
    for (v, nbrs) in adjacency.iter().enumerate() {
        for &w in nbrs {
            if !adjacency[w].contains(&v) {
                return Err(Error::AsymmetricAdjacency(v, w));
            }
        }
    }
    if let Some(v) = adjacency.iter().position(Vec::is_empty) {
        return Err(Error::IsolatedVertex(v));
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adjacency[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    match seen.iter().position(|s| !s) {
        Some(unreached) => Err(Error::Disconnected { unreached }),
        None => Ok(()),
    }
}

/// A finite real potential `W` on the vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    values: Vec<f64>,
}

impl Potential {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(v) = values.iter().position(|w| !w.is_finite()) {
            return Err(Error::NonFinitePotential(v));
        }
        Ok(Self { values })
    }

    pub fn zeros(n: usize) -> Self {
        Self { values: vec![0.0; n] }
    }

    pub fn constant(n: usize, value: f64) -> Result<Self> {
        Self::new(vec![value; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Errors unless the potential has one value per vertex of `graph`.
    pub fn check_size(&self, graph: &Graph) -> Result<()> {
        if self.len() != graph.n() {
            return Err(Error::SizeMismatch { graph: graph.n(), other: self.len() });
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for Potential {
    type Output = f64;

    fn index(&self, v: usize) -> &f64 {
        &self.values[v]
    }
}

pub fn gen_path(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::SizeTooSmall(format!("path needs n >= 2, got {n}")));
    }
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges)
}

pub fn gen_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::SizeTooSmall(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// `rows x cols` grid; vertex `(r, c)` has index `r * cols + c`.
pub fn gen_grid(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 || rows * cols < 2 {
        return Err(Error::SizeTooSmall(format!("grid {rows}x{cols} has fewer than 2 vertices")));
    }
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::from_edges(rows * cols, &edges)
}

/// Index ranges of levels `0..=k` of the `q`-ary tree built by
/// [`gen_tree_hub`]. The hub is the single vertex after the last range.
pub fn tree_level_ranges(q: usize, k: usize) -> Vec<Range<usize>> {
    let mut ranges = Vec::with_capacity(k + 1);
    let (mut start, mut width) = (0, 1);
    for _ in 0..=k {
        ranges.push(start..start + width);
        start += width;
        width *= q;
    }
    ranges
}

/// A complete `q`-ary tree of depth `k` whose `q^k` leaves are all joined to
/// one extra hub vertex `v*`. Returns the graph and the hub index.
///
/// Vertices are numbered breadth-first: the root is 0, the children of `j`
/// are `q*j + 1 ..= q*j + q`, and the hub is the last vertex.
pub fn gen_tree_hub(q: usize, k: usize) -> Result<(Graph, usize)> {
    if q < 2 {
        return Err(Error::SizeTooSmall(format!("tree branching q must be >= 2, got {q}")));
    }
    if k < 1 {
        return Err(Error::SizeTooSmall("tree depth k must be >= 1".into()));
    }
    let levels = tree_level_ranges(q, k);
    let tree_size = levels[k].end;
    let hub = tree_size;
    let mut edges = Vec::with_capacity(tree_size + levels[k].len());
    for parent in 0..levels[k].start {
        for child in q * parent + 1..=q * parent + q {
            edges.push((parent, child));
        }
    }
    for leaf in levels[k].clone() {
        edges.push((leaf, hub));
    }
    Ok((Graph::from_edges(tree_size + 1, &edges)?, hub))
}

/// Erdős–Rényi `G(n, p)` conditioned on connectivity.
///
/// Uses ChaCha8 seeded with `ChaCha8Rng::seed_from_u64(seed)`. Each attempt
/// draws one `f64` in `[0, 1)` per pair `(u, v)`, `u < v`, in lexicographic
/// order and keeps the edge when the draw is `< p`. Disconnected samples are
/// discarded and redrawn from the same stream, up to
/// [`RANDOM_GRAPH_RETRIES`] attempts.
pub fn gen_random_connected(n: usize, edge_prob: f64, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::SizeTooSmall(format!("random graph needs n >= 2, got {n}")));
    }
    if !(edge_prob > 0.0 && edge_prob <= 1.0) {
        return Err(Error::InvalidParameter(format!("edge probability {edge_prob} not in (0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_GRAPH_RETRIES {
        let mut adjacency = vec![Vec::new(); n];
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen::<f64>() < edge_prob {
                    adjacency[u].push(v);
                    adjacency[v].push(u);
                }
            }
        }
        if let Ok(g) = Graph::from_adjacency(adjacency) {
            return Ok(g);
        }
    }
    Err(Error::RetriesExhausted { n, p: edge_prob, retries: RANDOM_GRAPH_RETRIES })
}
