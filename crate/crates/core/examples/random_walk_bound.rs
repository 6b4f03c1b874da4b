//! The random-walk form of the bound on a corridor of forbidden vertices
//! between two wells: exact moments of (1 + delta)^-tau, a Monte Carlo
//! estimate of the same quantity, and the resulting bound next to the
//! Agmon one.

use graph_agmon::agmon::agmon_distance;
use graph_agmon::bounds::verify_theorem;
use graph_agmon::graph::{gen_path, Potential};
use graph_agmon::spectral::{assemble, eig_all};
use graph_agmon::stochastic::{verify_walk_bound, WalkBound};

fn main() -> graph_agmon::Result<()> {
    let len = 20;
    let graph = gen_path(len + 2)?;
    let mut values = vec![3.0; len + 2];
    values[0] = 0.0;
    values[len + 1] = 0.0;
    let potential = Potential::new(values)?;

    let ground = eig_all(&assemble(&graph, &potential)?)?.remove(0);
    let walk =
        WalkBound::compute(&graph, &potential, ground.eigenvalue)?.with_monte_carlo(&graph, &potential, 100_000, 7)?;
    let mc = walk.mc_moment.as_ref().expect("simulated");
    let walk_report = verify_walk_bound(&graph, &potential, &ground, &walk)?;
    let field = agmon_distance(&graph, &potential, ground.eigenvalue)?;
    let agmon_report = verify_theorem(&graph, &potential, &ground, &field)?;

    println!("E = {:.6}, delta = {:.6}", ground.eigenvalue, walk.delta);
    println!(" v   |phi|       exact       simulated (se)          walk bound  agmon bound");
    for v in 0..graph.n() {
        println!(
            "{v:2}  {:.4e}  {:.4e}  {:.4e} ({:.1e})  {:.4e}  {:.4e}",
            ground.eigenvector[v].abs(),
            walk.exact_moment[v],
            mc[v].estimate,
            mc[v].std_error,
            walk_report.rows[v].bound,
            agmon_report.rows[v].bound
        );
    }
    println!("walk bound holds: {}, agmon bound holds: {}", walk_report.holds, agmon_report.holds);
    Ok(())
}
