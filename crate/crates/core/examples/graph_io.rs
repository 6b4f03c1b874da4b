//! Writing and reading graph files: JSON with an embedded potential, and a
//! plain edge list with the potential kept in a separate file.

use graph_agmon::graph::{gen_cycle, Potential};
use graph_agmon::io::{graph_to_json, load_edge_list, load_graph, save_graph};

fn main() -> graph_agmon::Result<()> {
    let dir = std::env::temp_dir().join(format!("graph-io-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)
        .map_err(|e| graph_agmon::Error::Io { path: dir.display().to_string(), message: e.to_string() })?;

    let graph = gen_cycle(5)?;
    let potential = Potential::new(vec![0.0, 4.0, 8.0, 4.0, 0.5])?;
    print!("{}", graph_to_json(&graph, &potential)?);

    let json = dir.join("cycle.json");
    save_graph(&graph, &potential, &json)?;
    let (g, w) = load_graph(&json)?;
    println!("\nJSON round trip equal: {}", g == graph && w == potential);

    let edges: String = graph.edges().map(|(u, v)| format!("{u} {v}\n")).collect();
    let values: String = potential.values().iter().map(|x| format!("{x}\n")).collect();
    let write = |name: &str, text: &str| {
        std::fs::write(dir.join(name), text)
            .map_err(|e| graph_agmon::Error::Io { path: name.into(), message: e.to_string() })
    };
    write("cycle.edges", &format!("# 5-cycle\n{edges}"))?;
    write("cycle.w", &values)?;
    let (g, w) = load_edge_list(dir.join("cycle.edges"), dir.join("cycle.w"))?;
    println!("edge list round trip equal: {}", g == graph && w == potential);

    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}
