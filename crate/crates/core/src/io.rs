//! Graph files.
//!
//! The JSON form is
//!
//! ```text
//! {"n": 3, "edges": [[0, 1], [1, 2]], "potential": [0.0, 10.0, 0.0]}
//! ```
//!
//! with each unordered edge listed once as `[u, v]`, `u < v`. The plain-text
//! form is an edge list (one `u v` pair per line) next to a potential file
//! (one value per line). Blank lines and lines starting with `#` are skipped
//! in both.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Potential};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    n: usize,
    edges: Vec<(usize, usize)>,
    potential: Vec<f64>,
}

pub(crate) fn io_error(path: &Path, err: std::io::Error) -> Error {
    Error::Io { path: path.display().to_string(), message: err.to_string() }
}

/// Writes `contents` to `path` through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::Io { path: path.display().to_string(), message: "not a file path".into() })?;
    let tmp = path.with_file_name(format!(".{}.tmp{}", file_name.to_string_lossy(), std::process::id()));
    fs::write(&tmp, contents).map_err(|e| io_error(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| io_error(path, e))
}

/// Serializes a graph and its potential to the JSON graph format.
pub fn graph_to_json(graph: &Graph, potential: &Potential) -> Result<String> {
    potential.check_size(graph)?;
    let file = GraphFile { n: graph.n(), edges: graph.edges().collect(), potential: potential.values().to_vec() };
    serde_json::to_string_pretty(&file).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses the JSON graph format. Syntax errors map to [`Error::Parse`],
/// structural ones to [`Error::SchemaViolation`], and the result is then
/// validated as a [`Graph`].
pub fn graph_from_json(text: &str) -> Result<(Graph, Potential)> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| {
        use serde_json::error::Category;
        match e.classify() {
            Category::Data => Error::SchemaViolation(e.to_string()),
            _ => Error::Parse(e.to_string()),
        }
    })?;
    if file.potential.len() != file.n {
        return Err(Error::SchemaViolation(format!(
            "field `potential` has {} entries, expected n = {}",
            file.potential.len(),
            file.n
        )));
    }
    for (i, &(u, v)) in file.edges.iter().enumerate() {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if u > v {
            return Err(Error::SchemaViolation(format!("edges[{i}] = [{u}, {v}] must satisfy u < v")));
        }
    }
    let graph = Graph::from_edges(file.n, &file.edges)?;
    let potential = Potential::new(file.potential)?;
    Ok((graph, potential))
}

pub fn save_graph(graph: &Graph, potential: &Potential, path: impl AsRef<Path>) -> Result<()> {
    let json = graph_to_json(graph, potential)?;
    write_atomic(path.as_ref(), json.as_bytes())
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<(Graph, Potential)> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    graph_from_json(&text)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses the plain-text pair: an edge list and a potential list. The vertex
/// count is the number of potential values.
pub fn graph_from_edge_list(edges_text: &str, potential_text: &str) -> Result<(Graph, Potential)> {
    let mut values = Vec::new();
    for (line, content) in content_lines(potential_text) {
        let w: f64 =
            content.parse().map_err(|_| Error::Parse(format!("potential line {line}: `{content}` is not a number")))?;
        values.push(w);
    }
    let n = values.len();
    let mut edges = Vec::new();
    for (line, content) in content_lines(edges_text) {
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::SchemaViolation(format!("edge line {line}: expected `u v`, got `{content}`")));
        }
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse(format!("edge line {line}: `{s}` is not a vertex index")))
        };
        let (u, v) = (parse(fields[0])?, parse(fields[1])?);
        if u.max(v) >= n {
            return Err(Error::SchemaViolation(format!(
                "edge line {line}: vertex {} out of range for {n} potential values",
                u.max(v)
            )));
        }
        edges.push((u, v));
    }
    let graph = Graph::from_edges(n, &edges)?;
    Ok((graph, Potential::new(values)?))
}

pub fn load_edge_list(edges_path: impl AsRef<Path>, potential_path: impl AsRef<Path>) -> Result<(Graph, Potential)> {
    let (ep, pp) = (edges_path.as_ref(), potential_path.as_ref());
    let edges = fs::read_to_string(ep).map_err(|e| io_error(ep, e))?;
    let potential = fs::read_to_string(pp).map_err(|e| io_error(pp, e))?;
    graph_from_edge_list(&edges, &potential)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_path;

    #[test]
    fn round_trip_path() {
        let g = gen_path(3).unwrap();
        let w = Potential::new(vec![0.0, 1.0, 0.0]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p3.json");
        save_graph(&g, &w, &path).unwrap();
        let (g2, w2) = load_graph(&path).unwrap();
        assert_eq!(g, g2);
        assert_eq!(w, w2);
    }

    #[test]
    fn self_loop_in_file() {
        let err = graph_from_json(r#"{"n": 2, "edges": [[0,0]], "potential": [0, 0]}"#).unwrap_err();
        assert_eq!(err, Error::SelfLoop(0));
    }

    #[test]
    fn missing_potential_is_schema_violation() {
        let err = graph_from_json(r#"{"n": 2, "edges": [[0,1]]}"#).unwrap_err();
        assert!(matches!(err, Error::SchemaViolation(ref m) if m.contains("potential")), "{err:?}");
    }

    #[test]
    fn malformed_json_is_parse_error() {
        assert!(matches!(graph_from_json("{\"n\": 2,"), Err(Error::Parse(_))));
    }

    #[test]
    fn schema_checks() {
        let wrong_len = r#"{"n": 2, "edges": [[0,1]], "potential": [0]}"#;
        assert!(matches!(graph_from_json(wrong_len), Err(Error::SchemaViolation(_))));
        let reversed = r#"{"n": 2, "edges": [[1,0]], "potential": [0, 0]}"#;
        assert!(matches!(graph_from_json(reversed), Err(Error::SchemaViolation(_))));
        let extra = r#"{"n": 2, "edges": [[0,1]], "potential": [0, 0], "weights": []}"#;
        assert!(matches!(graph_from_json(extra), Err(Error::SchemaViolation(_))));
        let disconnected = r#"{"n": 4, "edges": [[0,1],[2,3]], "potential": [0,0,0,0]}"#;
        assert!(matches!(graph_from_json(disconnected), Err(Error::Disconnected { .. })));
    }

    #[test]
    fn edge_list_format() {
        let edges = "# path\n0 1\n\n1 2\n";
        let potential = "0\n10\n0\n";
        let (g, w) = graph_from_edge_list(edges, potential).unwrap();
        assert_eq!(g, gen_path(3).unwrap());
        assert_eq!(w.values(), &[0.0, 10.0, 0.0]);

        assert!(matches!(graph_from_edge_list("0 1 2\n", "0\n0\n0\n"), Err(Error::SchemaViolation(_))));
        assert!(matches!(graph_from_edge_list("0 3\n", "0\n0\n"), Err(Error::SchemaViolation(_))));
        assert!(matches!(graph_from_edge_list("0 x\n", "0\n0\n"), Err(Error::Parse(_))));
        assert!(matches!(graph_from_edge_list("0 1\n", "0\nabc\n"), Err(Error::Parse(_))));
        assert_eq!(graph_from_edge_list("0 1\n", "0\ninf\n").unwrap_err(), Error::NonFinitePotential(1));
    }
}
