//! Pointwise exponential decay of eigenvectors of graph Schrödinger
//! operators.
//!
//! For a finite connected graph with Laplacian `L = D - A` and a vertex
//! potential `W`, every eigenpair `(L + W) φ = E φ` satisfies
//!
//! ```text
//! |φ(v)| <= exp(-ρ_E(v)) · ‖φ‖_∞
//! ```
//!
//! where `ρ_E(v)` is the cheapest path from `v` into the allowed region
//! `{W <= E}` and a vertex on the path costs `log(1 + (W(v) - E)₊ / deg(v))`.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`graph`] | graphs, potentials, generators |
//! | [`io`] | JSON and edge-list graph files |
//! | [`spectral`] | `H = L + diag(W)`, dense and Lanczos eigensolvers |
//! | [`agmon`] | Agmon distance, single-target variant, edge-cost comparison distance |
//! | [`bounds`] | theorem and refined bound checks, the greedy path of the proof |
//! | [`stochastic`] | random-walk bound, exact and Monte Carlo |
//! | [`experiments`] | tree-with-hub sharpness experiment |
//! | [`report`] | JSON/CSV output |
//! | [`cli`] | the `agmon` command |
//!
//! ```
//! use graph_agmon::{agmon, bounds, graph, spectral};
//!
//! let g = graph::gen_path(3).unwrap();
//! let w = graph::Potential::new(vec![0.0, 10.0, 0.0]).unwrap();
//! let h = spectral::assemble(&g, &w).unwrap();
//! let ground = spectral::eig_all(&h).unwrap().remove(0);
//! let field = agmon::agmon_distance(&g, &w, ground.eigenvalue).unwrap();
//! let report = bounds::verify_theorem(&g, &w, &ground, &field).unwrap();
//! assert!(report.holds);
//! ```

pub mod agmon;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod report;
pub mod spectral;
pub mod stochastic;

pub use error::{Error, Result};
