//! Covering arrays and the qualitative-independence verifier, the oracle
//! every construction in this crate is checked against.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::oa::bush_oa;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A k x n array over `Z_g`, optionally bound row-by-row to the vertices of
/// a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringArray {
    symbols: usize,
    matrix: Vec<Vec<usize>>,
    /// `binding[row]` is the graph vertex the row belongs to. `None` means
    /// unbound; constructions bind rows to vertices identically.
    binding: Option<Vec<usize>>,
}

impl CoveringArray {
    pub fn new(symbols: usize, matrix: Vec<Vec<usize>>) -> Result<Self> {
        if symbols < 2 {
            return Err(Error::InvalidAlphabet(symbols));
        }
        let width = matrix.first().map_or(0, Vec::len);
        for row in &matrix {
            if row.len() != width {
                return Err(Error::LengthMismatch(width, row.len()));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= symbols) {
                return Err(Error::InvalidSymbol {
                    symbol: bad,
                    symbols,
                });
            }
        }
        Ok(CoveringArray {
            symbols,
            matrix,
            binding: None,
        })
    }

    /// Binds row r to vertex r of a graph with as many vertices as rows.
    pub fn with_identity_binding(mut self) -> Self {
        self.binding = Some((0..self.rows()).collect());
        self
    }

    pub fn with_binding(mut self, binding: Vec<usize>) -> Result<Self> {
        if binding.len() != self.rows() {
            return Err(Error::InvalidBinding(alloc::format!(
                "{} binding entries for {} rows",
                binding.len(),
                self.rows()
            )));
        }
        self.binding = Some(binding);
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    /// The size of the array: its number of columns.
    pub fn size(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn matrix(&self) -> &[Vec<usize>] {
        &self.matrix
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.matrix[r]
    }

    pub fn binding(&self) -> Option<&[usize]> {
        self.binding.as_deref()
    }

    /// The row bound to `vertex`, when a binding exists.
    pub fn row_of_vertex(&self, vertex: usize) -> Result<&[usize]> {
        let binding = self.binding.as_ref().ok_or(Error::NotBound)?;
        let r = binding
            .iter()
            .position(|&v| v == vertex)
            .ok_or_else(|| Error::InvalidBinding(alloc::format!("no row for vertex {vertex}")))?;
        Ok(&self.matrix[r])
    }
}

/// True iff every ordered pair over `Z_g` occurs in some column of `(x, y)`.
pub fn qualitatively_independent(x: &[usize], y: &[usize], g: usize) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let mut seen = vec![false; g * g];
    let mut remaining = g * g;
    for (&a, &b) in x.iter().zip(y) {
        if a >= g || b >= g {
            return Err(Error::InvalidSymbol {
                symbol: a.max(b),
                symbols: g,
            });
        }
        let idx = a * g + b;
        if !seen[idx] {
            seen[idx] = true;
            remaining -= 1;
            if remaining == 0 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// An edge whose row pair misses at least one ordered symbol pair, with the
/// first missing pair in (a, b) lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailingEdge {
    pub u: usize,
    pub v: usize,
    pub missing_pair: (usize, usize),
}

/// Outcome of verifying a covering array against a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    pub failing_edges: Vec<FailingEdge>,
}

/// Checks that the rows at the two ends of every edge are qualitatively
/// independent. The array must be bound to the graph: one row per vertex,
/// bijectively.
pub fn verify_ca(ca: &CoveringArray, graph: &Graph) -> Result<VerifyReport> {
    let binding = ca.binding().ok_or(Error::NotBound)?;
    let n = graph.vertex_count();
    if ca.rows() != n {
        return Err(Error::InvalidBinding(alloc::format!(
            "{} rows for {} vertices",
            ca.rows(),
            n
        )));
    }
    let mut row_of = vec![usize::MAX; n];
    for (r, &v) in binding.iter().enumerate() {
        if v >= n || row_of[v] != usize::MAX {
            return Err(Error::InvalidBinding(alloc::format!(
                "binding is not a bijection at row {r}"
            )));
        }
        row_of[v] = r;
    }

    let g = ca.symbols();
    let mut failing_edges = Vec::new();
    for (u, v) in graph.edges() {
        let (x, y) = (ca.row(row_of[u]), ca.row(row_of[v]));
        if let Some(missing) = first_missing_pair(x, y, g)? {
            failing_edges.push(FailingEdge {
                u,
                v,
                missing_pair: missing,
            });
        }
    }
    Ok(VerifyReport {
        ok: failing_edges.is_empty(),
        failing_edges,
    })
}

fn first_missing_pair(x: &[usize], y: &[usize], g: usize) -> Result<Option<(usize, usize)>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let mut seen = vec![false; g * g];
    for (&a, &b) in x.iter().zip(y) {
        if a >= g || b >= g {
            return Err(Error::InvalidSymbol {
                symbol: a.max(b),
                symbols: g,
            });
        }
        seen[a * g + b] = true;
    }
    Ok(seen
        .iter()
        .position(|&s| !s)
        .map(|idx| (idx / g, idx % g)))
}

/// Standardizes on symbol 0: per row, swaps the row's first symbol with 0
/// so the first column becomes constant zero. Per-row symbol permutations
/// preserve qualitative independence, so any verify result is unchanged.
pub fn standardize(ca: &CoveringArray) -> Result<CoveringArray> {
    let rows: Vec<usize> = (0..ca.rows()).collect();
    standardize_on_symbol(ca, &rows, 0)
}

/// Standardizes the given rows on symbol `v`: each listed row gets the
/// transposition swapping its first symbol with `v`.
pub fn standardize_on_symbol(
    ca: &CoveringArray,
    rows: &[usize],
    v: usize,
) -> Result<CoveringArray> {
    if v >= ca.symbols() {
        return Err(Error::InvalidSymbol {
            symbol: v,
            symbols: ca.symbols(),
        });
    }
    let mut matrix = ca.matrix().to_vec();
    for &r in rows {
        let row = &mut matrix[r];
        if row.is_empty() {
            continue;
        }
        let first = row[0];
        if first == v {
            continue;
        }
        for cell in row.iter_mut() {
            if *cell == first {
                *cell = v;
            } else if *cell == v {
                *cell = first;
            }
        }
    }
    let mut out = CoveringArray::new(ca.symbols(), matrix)?;
    if let Some(b) = ca.binding() {
        out = out.with_binding(b.to_vec())?;
    }
    Ok(out)
}

/// A covering array on the complete graph K_k: any two distinct rows are
/// qualitatively independent. Rows are the first k horizontal
/// concatenations of u rows of OA(s, g) in lexicographic tuple order, where
/// s comes from the composite orthogonal-array construction and u is the
/// smallest exponent with s^u >= k (at least 1). Size u * g^2.
pub fn generic_ca(k: usize, g: usize) -> Result<CoveringArray> {
    if k == 0 {
        return Err(Error::InvalidBinding("need at least one row".into()));
    }
    let oa = bush_oa(g)?;
    let s = oa.rows();
    let mut u = 1usize;
    let mut reach = s;
    while reach < k {
        u += 1;
        reach *= s;
    }
    let mut matrix = Vec::with_capacity(k);
    let mut tuple = vec![0usize; u];
    for _ in 0..k {
        let mut row = Vec::with_capacity(u * g * g);
        for &t in &tuple {
            row.extend_from_slice(&oa.matrix[t]);
        }
        matrix.push(row);
        // Advance the tuple lexicographically (last position fastest).
        for pos in (0..u).rev() {
            tuple[pos] += 1;
            if tuple[pos] < s {
                break;
            }
            tuple[pos] = 0;
        }
    }
    CoveringArray::new(g, matrix)
}
