//! Checks the decay bound for every eigenpair of a batch of random graphs
//! and reports the tightest vertex seen.
//!
//!     cargo run --release --example corpus_theorem -- [graphs] [seed]

use graph_agmon::agmon::agmon_distance;
use graph_agmon::bounds::verify_theorem;
use graph_agmon::graph::{gen_random_connected, Potential};
use graph_agmon::spectral::{assemble, eig_all};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> graph_agmon::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let graphs = args.first().copied().unwrap_or(50) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(args.get(1).copied().unwrap_or(1));

    let (mut pairs, mut failures) = (0, 0);
    let mut tightest = (0.0, 0, 0, 0);
    for i in 0..graphs {
        let n = rng.gen_range(4..=64);
        let p = (2.0 * (n as f64).ln() / n as f64).clamp(0.35, 1.0);
        let graph = gen_random_connected(n, p, rng.gen())?;
        let potential = Potential::new((0..n).map(|_| rng.gen_range(0.0..=20.0)).collect())?;
        let h = assemble(&graph, &potential)?;
        for (j, pair) in eig_all(&h)?.iter().enumerate() {
            let field = agmon_distance(&graph, &potential, pair.eigenvalue)?;
            let report = verify_theorem(&graph, &potential, pair, &field)?;
            pairs += 1;
            if !report.holds || !report.argmax_allowed {
                failures += 1;
            }
            // tightest vertex that is not already at the maximum
            for row in report.rows.iter().filter(|r| r.rho > 0.0) {
                let ratio = row.abs_phi / row.bound;
                if ratio > tightest.0 {
                    tightest = (ratio, i, j, row.vertex);
                }
            }
        }
    }
    println!("{graphs} graphs, {pairs} eigenpairs, {failures} failures");
    let (ratio, i, j, v) = tightest;
    println!("largest |phi|/bound off the allowed region: {ratio:.4} (graph {i}, pair {j}, vertex {v})");
    Ok(())
}
