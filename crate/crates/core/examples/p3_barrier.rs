//! The smallest interesting case: two wells joined through one barrier
//! vertex. Prints every eigenpair with its Agmon distances and the bound.

use graph_agmon::agmon::agmon_distance;
use graph_agmon::bounds::verify_theorem;
use graph_agmon::graph::{gen_path, Potential};
use graph_agmon::spectral::{assemble, eig_all};

fn main() -> graph_agmon::Result<()> {
    let height: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(10.0);
    let graph = gen_path(3)?;
    let potential = Potential::new(vec![0.0, height, 0.0])?;
    let h = assemble(&graph, &potential)?;

    for (j, pair) in eig_all(&h)?.iter().enumerate() {
        let field = agmon_distance(&graph, &potential, pair.eigenvalue)?;
        let report = verify_theorem(&graph, &potential, pair, &field)?;
        println!("pair {j}: E = {:.6}, holds = {}", pair.eigenvalue, report.holds);
        for row in &report.rows {
            println!(
                "  v{}  |phi| = {:.6}  rho = {:.6}  bound = {:.6}  slack = {:.3e}",
                row.vertex, row.abs_phi, row.rho, row.bound, row.slack
            );
        }
    }
    Ok(())
}
