//! DIMACS .col graph files: 1-indexed on disk, 0-indexed in memory.
//!
//! Accepted lines: `c <comment>`, `p edge <V> <E>`, `e <u> <v>`. The writer
//! emits edges in lexicographic order so identical graphs always serialize
//! to identical bytes.

use std::fs;
use std::path::Path;

use graphca_core::graph::Graph;

use crate::CliError;

pub fn read_col(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    parse_col(&text, &path.display().to_string())
}

pub fn parse_col(text: &str, source: &str) -> Result<Graph, CliError> {
    let mut graph: Option<Graph> = None;
    let mut declared_edges = 0usize;
    let mut seen_edges = 0usize;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |msg: String| CliError::usage(format!("{source}:{}: {msg}", lineno + 1));
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if graph.is_some() {
                    return Err(err("duplicate problem line".into()));
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(err("expected: p edge <vertices> <edges>".into()));
                }
                let v: usize = fields[2]
                    .parse()
                    .map_err(|_| err(format!("bad vertex count {:?}", fields[2])))?;
                declared_edges = fields[3]
                    .parse()
                    .map_err(|_| err(format!("bad edge count {:?}", fields[3])))?;
                graph = Some(Graph::new(v));
            }
            "e" => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| err("edge before problem line".into()))?;
                if fields.len() != 3 {
                    return Err(err("expected: e <u> <v>".into()));
                }
                let u: usize = fields[1]
                    .parse()
                    .map_err(|_| err(format!("bad endpoint {:?}", fields[1])))?;
                let v: usize = fields[2]
                    .parse()
                    .map_err(|_| err(format!("bad endpoint {:?}", fields[2])))?;
                if u == 0 || v == 0 {
                    return Err(err("vertices are 1-indexed on disk".into()));
                }
                g.add_edge(u - 1, v - 1)
                    .map_err(|e| err(format!("{e}")))?;
                seen_edges += 1;
            }
            other => return Err(err(format!("unrecognized line type {other:?}"))),
        }
    }

    let graph = graph.ok_or_else(|| CliError::usage(format!("{source}: no problem line")))?;
    if seen_edges != declared_edges {
        return Err(CliError::usage(format!(
            "{source}: problem line declares {declared_edges} edges, found {seen_edges}"
        )));
    }
    Ok(graph)
}

pub fn format_col(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "p edge {} {}\n",
        g.vertex_count(),
        g.edge_count()
    ));
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

pub fn write_col(path: &Path, g: &Graph) -> Result<(), CliError> {
    fs::write(path, format_col(g))
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use graphca_core::graph::{make_graph, GraphFamily};

    #[test]
    fn roundtrip_is_byte_exact() {
        let g = make_graph(&GraphFamily::Cycle(5)).unwrap();
        let text = format_col(&g);
        let back = parse_col(&text, "test").unwrap();
        assert_eq!(format_col(&back), text);
        assert_eq!(back.edge_count(), 5);
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let g = parse_col("c hello\n\np edge 3 1\nc mid\ne 1 3\n", "test").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert!(g.has_edge(0, 2));
    }

    #[test]
    fn errors_name_the_line() {
        let err = parse_col("p edge 3 1\ne 0 2\n", "bad.col").unwrap_err();
        assert!(err.to_string().contains("bad.col:2"));
        let err = parse_col("p edge 3 2\ne 1 2\n", "bad.col").unwrap_err();
        assert!(err.to_string().contains("declares 2 edges"));
    }
}
