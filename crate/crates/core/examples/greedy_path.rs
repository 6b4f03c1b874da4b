//! The step-by-step argument behind the bound: from a forbidden vertex,
//! move to the neighbor of largest |phi| until the allowed region is
//! reached, collecting a factor of 1 / (1 + (W - E)/deg) at every step.

use graph_agmon::agmon::is_allowed;
use graph_agmon::bounds::greedy_path;
use graph_agmon::graph::{gen_random_connected, Potential};
use graph_agmon::spectral::{assemble, eig_all};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> graph_agmon::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 24;
    let graph = gen_random_connected(n, 0.15, 3)?;
    let potential = Potential::new((0..n).map(|_| rng.gen_range(0.0..=20.0)).collect())?;
    let ground = eig_all(&assemble(&graph, &potential)?)?.remove(0);
    let e = ground.eigenvalue;
    println!("ground energy {e:.6}");

    for start in (0..n).filter(|&v| !is_allowed(&potential, e, v)) {
        let path = greedy_path(&graph, &potential, &ground, start)?;
        println!(
            "{start:2}: {:?}  |phi(start)| = {:.3e} <= {:.3e}",
            path.vertices,
            path.abs_phi[0],
            path.factor_bound(&graph, &potential, e)
        );
    }
    Ok(())
}
