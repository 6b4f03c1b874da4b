//! Agmon distance against the edge-cost comparison distance on a grid with
//! a single well in one corner and a tall plateau elsewhere.

use graph_agmon::agmon::{agmon_distance, fmt_distance};
use graph_agmon::graph::{gen_grid, Potential};

fn main() -> graph_agmon::Result<()> {
    let (rows, cols) = (6, 8);
    let graph = gen_grid(rows, cols)?;
    let mut values = vec![50.0; rows * cols];
    values[0] = 0.0;
    let potential = Potential::new(values)?;
    let energy = 1.0;

    let field = agmon_distance(&graph, &potential, energy)?;
    let fmt = fmt_distance(&graph, &potential, energy)?;
    println!("rho_E (Agmon) at E = {energy}:");
    for r in 0..rows {
        let line: Vec<String> = (0..cols).map(|c| format!("{:6.2}", field.rho[r * cols + c])).collect();
        println!("  {}", line.join(" "));
    }
    println!("edge-cost distance:");
    for r in 0..rows {
        let line: Vec<String> = (0..cols).map(|c| format!("{:6.2}", fmt[r * cols + c])).collect();
        println!("  {}", line.join(" "));
    }
    let far = rows * cols - 1;
    println!("cheapest path from the far corner: {:?}", field.witness_path(far));
    Ok(())
}
