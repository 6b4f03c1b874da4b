//! Lowest eigenpairs by Lanczos iteration with full reorthogonalization.
//!
//! Eigenpairs are found one at a time. Each converged vector is locked and
//! every later Krylov basis is kept orthogonal to the locked set, so repeated
//! eigenvalues are recovered with their multiplicity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dense::tridiagonal_eigen;
use super::Hamiltonian;
use crate::error::{Error, Result};

const START_SEED: u64 = 0x1a2c_0de5;
const MAX_RESTARTS: usize = 50;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Two passes of classical Gram-Schmidt against every vector in `sets`.
fn orthogonalize(w: &mut [f64], sets: &[&[Vec<f64>]]) {
    for _ in 0..2 {
        for set in sets {
            for q in set.iter() {
                let c = dot(q, w);
                axpy(-c, q, w);
            }
        }
    }
}

/// A unit vector orthogonal to `locked`, drawn from a fixed stream.
fn start_vector(n: usize, locked: &[Vec<f64>], rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
        orthogonalize(&mut v, &[locked]);
        let nv = norm(&v);
        if nv > 1e-8 {
            v.iter_mut().for_each(|x| *x /= nv);
            return v;
        }
    }
}

/// Smallest Ritz pair of the current basis: `(theta, ritz vector, residual estimate)`.
fn smallest_ritz(basis: &[Vec<f64>], alphas: &[f64], betas: &[f64], beta_next: f64) -> Result<(f64, Vec<f64>, f64)> {
    let m = alphas.len();
    let (vals, vecs) = tridiagonal_eigen(alphas, &betas[..m - 1])?;
    let s: Vec<f64> = (0..m).map(|row| vecs[row * m]).collect();
    let mut x = vec![0.0; basis[0].len()];
    for (q, &si) in basis.iter().zip(&s) {
        axpy(si, q, &mut x);
    }
    Ok((vals[0], x, (beta_next * s[m - 1]).abs()))
}

/// One locked eigenpair: the lowest eigenvector of `h` restricted to the
/// orthogonal complement of `locked`.
fn next_pair(h: &Hamiltonian<'_>, locked: &[Vec<f64>], tol: f64, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
    let n = h.n();
    let free_dim = n - locked.len();
    let max_basis = free_dim.min(300);
    let mut start = start_vector(n, locked, rng);
    let mut best_residual = f64::INFINITY;

    for _ in 0..MAX_RESTARTS {
        let mut basis: Vec<Vec<f64>> = vec![start.clone()];
        let mut alphas = Vec::new();
        let mut betas: Vec<f64> = Vec::new();
        loop {
            let k = basis.len() - 1;
            let mut w = h.apply(&basis[k]);
            let alpha = dot(&basis[k], &w);
            axpy(-alpha, &basis[k], &mut w);
            if k > 0 {
                axpy(-betas[k - 1], &basis[k - 1], &mut w);
            }
            orthogonalize(&mut w, &[locked, &basis]);
            alphas.push(alpha);
            let beta = norm(&w);
            let exhausted = basis.len() == max_basis || beta <= 1e-14 * h.norm_inf();
            let check = exhausted || k < 40 || k.is_multiple_of(8);
            if check {
                let (_, mut x, estimate) = smallest_ritz(&basis, &alphas, &betas, beta)?;
                if estimate <= 0.1 * tol || exhausted {
                    orthogonalize(&mut x, &[locked]);
                    let nx = norm(&x);
                    x.iter_mut().for_each(|xi| *xi /= nx);
                    let residual = h.residual(&x, h.rayleigh_unchecked(&x));
                    if residual <= tol {
                        return Ok(x);
                    }
                    best_residual = best_residual.min(residual);
                    start = x;
                    break;
                }
            }
            w.iter_mut().for_each(|wi| *wi /= beta);
            betas.push(beta);
            basis.push(w);
        }
    }
    Err(Error::ConvergenceFailure { residual: best_residual })
}

/// The `count` lowest unit eigenvectors of `h`, each with residual at most `tol`.
pub fn lowest_eigenvectors(h: &Hamiltonian<'_>, count: usize, tol: f64) -> Result<Vec<Vec<f64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
    let mut locked: Vec<Vec<f64>> = Vec::with_capacity(count);
    for _ in 0..count {
        let x = next_pair(h, &locked, tol, &mut rng)?;
        locked.push(x);
    }
    Ok(locked)
}
