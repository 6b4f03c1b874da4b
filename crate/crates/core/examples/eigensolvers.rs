//! Dense and iterative eigensolvers side by side on a random potential over
//! a grid, plus the Rayleigh quotient of the ground state.

use std::time::Instant;

use graph_agmon::graph::{gen_grid, Potential};
use graph_agmon::spectral::{assemble, eig_all, eig_smallest, rayleigh_quotient};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> graph_agmon::Result<()> {
    let side: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(20);
    let graph = gen_grid(side, side)?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let potential = Potential::new((0..graph.n()).map(|_| rng.gen_range(0.0..20.0)).collect())?;
    let h = assemble(&graph, &potential)?;

    let t = Instant::now();
    let dense = eig_all(&h)?;
    let dense_time = t.elapsed();
    let t = Instant::now();
    let lanczos = eig_smallest(&h, 6)?;
    let lanczos_time = t.elapsed();

    println!("n = {}: dense {:.2?}, Lanczos {:.2?}", graph.n(), dense_time, lanczos_time);
    for (a, b) in dense.iter().zip(&lanczos) {
        println!("  {:.12}  {:.12}  residuals {:.1e} {:.1e}", a.eigenvalue, b.eigenvalue, a.residual, b.residual);
    }
    println!("Rayleigh quotient of the ground state: {:.12}", rayleigh_quotient(&h, &lanczos[0].eigenvector)?);
    Ok(())
}
