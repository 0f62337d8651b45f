//! Covering-array files: a header `ca <k> <n> <g>` followed by k rows of
//! `<label> <n space-separated symbols>`. Labels are the bound vertex
//! labels; arrays bound to unlabelled graphs use the vertex index.

use std::fs;
use std::path::Path;

use graphca_core::ca::CoveringArray;
use graphca_core::graph::Graph;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaFile {
    pub symbols: usize,
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<usize>>,
}

impl CaFile {
    /// Binds the parsed rows to a graph: by label when the graph is
    /// labelled, by index otherwise.
    pub fn bind_to(&self, graph: &Graph) -> Result<CoveringArray, CliError> {
        if self.matrix.len() != graph.vertex_count() {
            return Err(CliError::usage(format!(
                "array has {} rows, graph has {} vertices",
                self.matrix.len(),
                graph.vertex_count()
            )));
        }
        let mut binding = Vec::with_capacity(self.labels.len());
        for label in &self.labels {
            // Match vertex labels first, then fall back to a plain index.
            let by_name = graph
                .labels()
                .and_then(|names| names.iter().position(|n| n == label));
            let vertex = match by_name {
                Some(v) => v,
                None => label
                    .parse::<usize>()
                    .ok()
                    .filter(|&v| v < graph.vertex_count())
                    .ok_or_else(|| {
                        CliError::usage(format!("row label {label:?} is not a graph vertex"))
                    })?,
            };
            binding.push(vertex);
        }
        CoveringArray::new(self.symbols, self.matrix.clone())
            .and_then(|ca| ca.with_binding(binding))
            .map_err(|e| CliError::usage(format!("{e}")))
    }

}

pub fn read_ca(path: &Path) -> Result<CaFile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    parse_ca(&text, &path.display().to_string())
}

pub fn parse_ca(text: &str, source: &str) -> Result<CaFile, CliError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| CliError::usage(format!("{source}: empty file")))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "ca" {
        return Err(CliError::usage(format!(
            "{source}:1: expected header: ca <rows> <size> <symbols>"
        )));
    }
    let rows: usize = fields[1]
        .parse()
        .map_err(|_| CliError::usage(format!("{source}:1: bad row count")))?;
    let size: usize = fields[2]
        .parse()
        .map_err(|_| CliError::usage(format!("{source}:1: bad size")))?;
    let symbols: usize = fields[3]
        .parse()
        .map_err(|_| CliError::usage(format!("{source}:1: bad symbol count")))?;

    let mut labels = Vec::with_capacity(rows);
    let mut matrix = Vec::with_capacity(rows);
    for (lineno, raw) in lines {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| CliError::usage(format!("{source}:{}: {msg}", lineno + 1));
        let mut tokens = line.split_whitespace();
        let label = tokens.next().unwrap().to_string();
        let row: Vec<usize> = tokens
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| err(format!("bad symbol {t:?}")))
            })
            .collect::<Result<_, _>>()?;
        if row.len() != size {
            return Err(err(format!("row has {} symbols, header says {size}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= symbols) {
            return Err(err(format!("symbol {bad} outside Z_{symbols}")));
        }
        labels.push(label);
        matrix.push(row);
    }
    if matrix.len() != rows {
        return Err(CliError::usage(format!(
            "{source}: header declares {rows} rows, found {}",
            matrix.len()
        )));
    }
    Ok(CaFile {
        symbols,
        labels,
        matrix,
    })
}

/// Serializes a bound array. Row labels come from the bound graph's vertex
/// labels when available, the vertex index otherwise.
pub fn format_ca(ca: &CoveringArray, graph_labels: Option<&[String]>) -> String {
    let mut out = format!("ca {} {} {}\n", ca.rows(), ca.size(), ca.symbols());
    let binding = ca.binding();
    for r in 0..ca.rows() {
        let vertex = binding.map_or(r, |b| b[r]);
        let label = match graph_labels {
            Some(names) => names[vertex].clone(),
            None => vertex.to_string(),
        };
        let symbols: Vec<String> = ca.row(r).iter().map(usize::to_string).collect();
        out.push_str(&format!("{label} {}\n", symbols.join(" ")));
    }
    out
}

pub fn write_ca(
    path: &Path,
    ca: &CoveringArray,
    graph_labels: Option<&[String]>,
) -> Result<(), CliError> {
    fs::write(path, format_ca(ca, graph_labels))
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}
