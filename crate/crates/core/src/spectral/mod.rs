//! The Schrödinger operator `H = L + diag(W)` with `L = D - A`, and its
//! eigenpairs.

mod dense;
mod lanczos;

pub use dense::{symmetric_eigen, tridiagonal_eigen};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Potential};

/// Default cap on `n` for the dense solver.
pub const DEFAULT_DENSE_CAP: usize = 2000;
/// Default eigen-residual tolerance, relative to `‖H‖_∞`.
pub const DEFAULT_TOL_EIG: f64 = 1e-10;

/// `H = D - A + diag(W)` viewed through its graph; never stored densely
/// unless [`Hamiltonian::to_dense`] is called.
#[derive(Debug, Clone, Copy)]
pub struct Hamiltonian<'a> {
    graph: &'a Graph,
    potential: &'a Potential,
}

pub fn assemble<'a>(graph: &'a Graph, potential: &'a Potential) -> Result<Hamiltonian<'a>> {
    potential.check_size(graph)?;
    Ok(Hamiltonian { graph, potential })
}

impl<'a> Hamiltonian<'a> {
    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn potential(&self) -> &'a Potential {
        self.potential
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn diagonal(&self, v: usize) -> f64 {
        self.graph.degree(v) as f64 + self.potential[v]
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diagonal(i)
        } else if self.graph.has_edge(i, j) {
            -1.0
        } else {
            0.0
        }
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.n();
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            m[i * n + i] = self.diagonal(i);
            for &j in self.graph.neighbors(i) {
                m[i * n + j] = -1.0;
            }
        }
        m
    }

    /// Maximum absolute row sum; bounds the spectral norm.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n()).map(|i| self.diagonal(i).abs() + self.graph.degree(i) as f64).fold(0.0, f64::max)
    }

    /// `H f`.
    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        (0..self.n())
            .map(|i| {
                let off: f64 = self.graph.neighbors(i).iter().map(|&j| f[j]).sum();
                self.diagonal(i) * f[i] - off
            })
            .collect()
    }

    /// `Σ_{(u,v)∈E} (f(u) - f(v))² + Σ_v W(v) f(v)²`.
    pub fn quadratic_form(&self, f: &[f64]) -> f64 {
        let edges: f64 = self.graph.edges().map(|(u, v)| (f[u] - f[v]).powi(2)).sum();
        let potential: f64 = f.iter().zip(self.potential.values()).map(|(x, w)| w * x * x).sum();
        edges + potential
    }

    /// `‖H x - E x‖₂`.
    pub fn residual(&self, x: &[f64], energy: f64) -> f64 {
        self.apply(x).iter().zip(x).map(|(hx, xi)| (hx - energy * xi).powi(2)).sum::<f64>().sqrt()
    }

    pub(crate) fn rayleigh_unchecked(&self, f: &[f64]) -> f64 {
        self.quadratic_form(f) / f.iter().map(|x| x * x).sum::<f64>()
    }
}

/// An eigenvalue with its unit eigenvector and the residual `‖Hφ - Eφ‖₂`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub eigenvalue: f64,
    pub eigenvector: Vec<f64>,
    pub residual: f64,
}

impl EigenPair {
    /// `‖φ‖_∞`.
    pub fn sup_norm(&self) -> f64 {
        self.eigenvector.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Lowest index attaining `‖φ‖_∞`.
    pub fn argmax(&self) -> usize {
        argmax_abs(&self.eigenvector)
    }
}

fn argmax_abs(x: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in x.iter().enumerate() {
        if v.abs() > x[best].abs() {
            best = i;
        }
    }
    best
}

/// Flips `x` so that its entry of largest magnitude (lowest index on ties)
/// is positive.
pub fn normalize_sign(x: &mut [f64]) {
    if x.is_empty() {
        return;
    }
    if x[argmax_abs(x)] < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
}

/// Solver knobs shared by [`eig_all_with`] and [`eig_smallest_with`].
#[derive(Debug, Clone, Copy)]
pub struct EigOptions {
    pub dense_cap: usize,
    /// Residual tolerance relative to `‖H‖_∞`.
    pub tol_eig: f64,
}

impl Default for EigOptions {
    fn default() -> Self {
        Self { dense_cap: DEFAULT_DENSE_CAP, tol_eig: DEFAULT_TOL_EIG }
    }
}

impl EigOptions {
    pub fn absolute_tol(&self, h: &Hamiltonian<'_>) -> f64 {
        self.tol_eig * h.norm_inf().max(1.0)
    }
}

fn certify(h: &Hamiltonian<'_>, eigenvalue: f64, mut eigenvector: Vec<f64>, tol: f64) -> Result<EigenPair> {
    normalize_sign(&mut eigenvector);
    let residual = h.residual(&eigenvector, eigenvalue);
    if residual.is_nan() || residual > tol {
        return Err(Error::ConvergenceFailure { residual });
    }
    Ok(EigenPair { eigenvalue, eigenvector, residual })
}

/// Full spectrum, ascending, by the dense solver.
pub fn eig_all(h: &Hamiltonian<'_>) -> Result<Vec<EigenPair>> {
    eig_all_with(h, &EigOptions::default())
}

pub fn eig_all_with(h: &Hamiltonian<'_>, opts: &EigOptions) -> Result<Vec<EigenPair>> {
    let n = h.n();
    if n > opts.dense_cap {
        return Err(Error::SizeCapExceeded { n, cap: opts.dense_cap });
    }
    let (values, vectors) = symmetric_eigen(&h.to_dense(), n)?;
    let tol = opts.absolute_tol(h);
    values
        .iter()
        .enumerate()
        .map(|(j, &lam)| {
            let column = (0..n).map(|row| vectors[row * n + j]).collect();
            certify(h, lam, column, tol)
        })
        .collect()
}

/// The `count` lowest eigenpairs by Lanczos iteration; eigenvalues are
/// Rayleigh quotients of the returned vectors.
pub fn eig_smallest(h: &Hamiltonian<'_>, count: usize) -> Result<Vec<EigenPair>> {
    eig_smallest_with(h, count, &EigOptions::default())
}

pub fn eig_smallest_with(h: &Hamiltonian<'_>, count: usize, opts: &EigOptions) -> Result<Vec<EigenPair>> {
    let n = h.n();
    if count == 0 || count > n {
        return Err(Error::TooManyEigenpairs { requested: count, n });
    }
    let tol = opts.absolute_tol(h);
    let vectors = lanczos::lowest_eigenvectors(h, count, tol)?;
    let mut pairs = vectors
        .into_iter()
        .map(|x| {
            let lam = h.rayleigh_unchecked(&x);
            certify(h, lam, x, tol)
        })
        .collect::<Result<Vec<_>>>()?;
    pairs.sort_by(|a, b| a.eigenvalue.total_cmp(&b.eigenvalue));
    Ok(pairs)
}

/// `⟨f, Hf⟩ / ⟨f, f⟩`, evaluated through the edge-sum form.
pub fn rayleigh_quotient(h: &Hamiltonian<'_>, f: &[f64]) -> Result<f64> {
    if f.len() != h.n() {
        return Err(Error::SizeMismatch { graph: h.n(), other: f.len() });
    }
    if f.iter().all(|&x| x == 0.0) {
        return Err(Error::ZeroVector);
    }
    Ok(h.rayleigh_unchecked(f))
}

/// Recomputes the forbidden-region entries (`W(u) > E`) of an eigenvector
/// from the eigen-equation `φ(u) = Σ_{w~u} φ(w) / (deg(u) + W(u) - E)` by
/// Gauss-Seidel sweeps, holding the allowed entries fixed.
///
/// The forbidden block of `H - E` is strictly diagonally dominant, so the
/// sweeps contract. When the forbidden gap `W - E` is large the refined
/// entries carry relative accuracy far below the dense solver's absolute
/// accuracy of about `ε‖H‖`. The vector is renormalized and the residual
/// recomputed.
pub fn refine_forbidden(h: &Hamiltonian<'_>, pair: &EigenPair, max_sweeps: usize) -> EigenPair {
    let energy = pair.eigenvalue;
    let g = h.graph();
    let forbidden: Vec<usize> = (0..h.n()).filter(|&u| h.potential()[u] > energy).collect();
    let mut phi = pair.eigenvector.clone();
    for _ in 0..max_sweeps {
        let mut changed = false;
        for &u in &forbidden {
            let sum: f64 = g.neighbors(u).iter().map(|&w| phi[w]).sum();
            let updated = sum / (h.diagonal(u) - energy);
            if (updated - phi[u]).abs() > 4.0 * f64::EPSILON * updated.abs() {
                changed = true;
            }
            phi[u] = updated;
        }
        if !changed {
            break;
        }
    }
    let norm = phi.iter().map(|x| x * x).sum::<f64>().sqrt();
    phi.iter_mut().for_each(|x| *x /= norm);
    normalize_sign(&mut phi);
    let residual = h.residual(&phi, energy);
    EigenPair { eigenvalue: energy, eigenvector: phi, residual }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_cycle, gen_path, gen_tree_hub};

    fn dense_of(g: &Graph, w: &[f64]) -> Vec<f64> {
        let pot = Potential::new(w.to_vec()).unwrap();
        assemble(g, &pot).unwrap().to_dense()
    }

    #[test]
    fn assemble_small_operators() {
        let p2 = gen_path(2).unwrap();
        assert_eq!(dense_of(&p2, &[0.0, 0.0]), vec![1.0, -1.0, -1.0, 1.0]);
        assert_eq!(dense_of(&p2, &[0.0, 3.0]), vec![1.0, -1.0, -1.0, 4.0]);
        let c3 = gen_cycle(3).unwrap();
        assert_eq!(dense_of(&c3, &[0.0; 3]), vec![2.0, -1.0, -1.0, -1.0, 2.0, -1.0, -1.0, -1.0, 2.0]);
        let w = Potential::zeros(3);
        assert_eq!(assemble(&p2, &w).unwrap_err(), Error::SizeMismatch { graph: 2, other: 3 });
    }

    #[test]
    fn p2_spectrum() {
        let g = gen_path(2).unwrap();
        let w = Potential::zeros(2);
        let h = assemble(&g, &w).unwrap();
        let pairs = eig_all(&h).unwrap();
        assert!(pairs[0].eigenvalue.abs() < 1e-15);
        assert!((pairs[1].eigenvalue - 2.0).abs() < 1e-15);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((pairs[0].eigenvector[0] - s).abs() < 1e-15);
        assert!((pairs[0].eigenvector[1] - s).abs() < 1e-15);

        let ground = eig_smallest(&h, 1).unwrap();
        assert!(ground[0].eigenvalue.abs() < 1e-12);
    }

    #[test]
    fn c4_spectrum() {
        let g = gen_cycle(4).unwrap();
        let w = Potential::zeros(4);
        let h = assemble(&g, &w).unwrap();
        let vals: Vec<f64> = eig_all(&h).unwrap().iter().map(|p| p.eigenvalue).collect();
        for (got, want) in vals.iter().zip([0.0, 2.0, 2.0, 4.0]) {
            assert!((got - want).abs() < 1e-13, "{vals:?}");
        }
        let low: Vec<f64> = eig_smallest(&h, 4).unwrap().iter().map(|p| p.eigenvalue).collect();
        for (got, want) in low.iter().zip([0.0, 2.0, 2.0, 4.0]) {
            assert!((got - want).abs() < 1e-10, "{low:?}");
        }
    }

    #[test]
    fn rayleigh_quotients() {
        let (g, hub) = gen_tree_hub(3, 2).unwrap();
        let mut w = vec![1e4; g.n()];
        w[hub] = 0.0;
        let w = Potential::new(w).unwrap();
        let h = assemble(&g, &w).unwrap();
        let mut f = vec![0.0; g.n()];
        f[hub] = 1.0;
        assert_eq!(rayleigh_quotient(&h, &f).unwrap(), 9.0);

        let z = Potential::zeros(g.n());
        let h0 = assemble(&g, &z).unwrap();
        assert_eq!(rayleigh_quotient(&h0, &vec![1.0; g.n()]).unwrap(), 0.0);
        assert_eq!(rayleigh_quotient(&h0, &vec![0.0; g.n()]).unwrap_err(), Error::ZeroVector);
        assert!(matches!(rayleigh_quotient(&h0, &[1.0]), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn size_cap_and_count_errors() {
        let g = gen_path(5).unwrap();
        let w = Potential::zeros(5);
        let h = assemble(&g, &w).unwrap();
        let opts = EigOptions { dense_cap: 4, ..Default::default() };
        assert_eq!(eig_all_with(&h, &opts).unwrap_err(), Error::SizeCapExceeded { n: 5, cap: 4 });
        assert!(matches!(eig_smallest(&h, 6), Err(Error::TooManyEigenpairs { .. })));
        assert!(matches!(eig_smallest(&h, 0), Err(Error::TooManyEigenpairs { .. })));
    }

    #[test]
    fn sign_convention() {
        let mut x = vec![0.1, -0.9, 0.3];
        normalize_sign(&mut x);
        assert_eq!(x, vec![-0.1, 0.9, -0.3]);
        let mut tie = vec![-0.5, 0.5];
        normalize_sign(&mut tie);
        assert_eq!(tie, vec![0.5, -0.5]);
    }

    #[test]
    fn refinement_keeps_an_exact_pair() {
        let g = gen_path(3).unwrap();
        let w = Potential::new(vec![0.0, 10.0, 0.0]).unwrap();
        let h = assemble(&g, &w).unwrap();
        let pair = eig_all(&h).unwrap().remove(0);
        let refined = refine_forbidden(&h, &pair, 100);
        assert!(refined.residual <= 1e-12);
        for (a, b) in refined.eigenvector.iter().zip(&pair.eigenvector) {
            assert!((a - b).abs() < 1e-13);
        }
    }
}
