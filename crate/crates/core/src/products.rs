//! The four graph products (Cartesian, direct, strong, lexicographic) for
//! arbitrary arity, built directly from their k-ary adjacency rules.
//!
//! Product vertices are numbered row-major over factor tuples: the last
//! coordinate varies fastest. Note that for k > 2 the strong product is
//! *not* the union of the Cartesian and direct edge sets; it comes from the
//! per-coordinate adjacent-or-equal rule.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Which product operation a [`ProductGraph`] was built with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductKind {
    Cartesian,
    Direct,
    Strong,
    Lexicographic,
}

impl ProductKind {
    pub fn name(self) -> &'static str {
        match self {
            ProductKind::Cartesian => "cartesian",
            ProductKind::Direct => "direct",
            ProductKind::Strong => "strong",
            ProductKind::Lexicographic => "lexicographic",
        }
    }
}

/// A product graph together with its factor list and the row-major
/// coordinate bijection.
#[derive(Debug, Clone)]
pub struct ProductGraph {
    pub graph: Graph,
    pub factors: Vec<Graph>,
    pub op: ProductKind,
}

impl ProductGraph {
    /// Coordinates of product vertex `v`, one entry per factor.
    pub fn coords(&self, v: usize) -> Vec<usize> {
        let mut rem = v;
        let mut out = alloc::vec![0usize; self.factors.len()];
        for (i, f) in self.factors.iter().enumerate().rev() {
            out[i] = rem % f.vertex_count();
            rem /= f.vertex_count();
        }
        out
    }

    /// Product vertex index of a coordinate tuple.
    pub fn vertex_of(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&c, f)| acc * f.vertex_count() + c)
    }

    /// The projection onto factor `i`: `map[v]` is coordinate `i` of `v`.
    /// A homomorphism for the direct product, a weak homomorphism for the
    /// Cartesian and strong products.
    pub fn projection(&self, i: usize) -> Result<Vec<usize>> {
        if i >= self.factors.len() {
            return Err(Error::FactorIndexOutOfRange {
                index: i,
                count: self.factors.len(),
            });
        }
        Ok((0..self.graph.vertex_count())
            .map(|v| self.coords(v)[i])
            .collect())
    }
}

/// Builds the `op`-product of `factors`. Requires at least two factors,
/// each with at least one vertex.
pub fn product(op: ProductKind, factors: &[Graph]) -> Result<ProductGraph> {
    if factors.len() < 2 {
        return Err(Error::InvalidFactor(alloc::format!(
            "need at least 2 factors, got {}",
            factors.len()
        )));
    }
    for (i, f) in factors.iter().enumerate() {
        if f.vertex_count() == 0 {
            return Err(Error::InvalidFactor(alloc::format!(
                "factor {i} has no vertices"
            )));
        }
    }
    let total: usize = factors.iter().map(|f| f.vertex_count()).product();
    let mut graph = Graph::new(total);

    let coords_of = |v: usize| -> Vec<usize> {
        let mut rem = v;
        let mut out = alloc::vec![0usize; factors.len()];
        for (i, f) in factors.iter().enumerate().rev() {
            out[i] = rem % f.vertex_count();
            rem /= f.vertex_count();
        }
        out
    };

    for u in 0..total {
        let cu = coords_of(u);
        for v in (u + 1)..total {
            let cv = coords_of(v);
            if adjacent(op, factors, &cu, &cv) {
                graph.add_edge(u, v)?;
            }
        }
    }

    Ok(ProductGraph {
        graph,
        factors: factors.to_vec(),
        op,
    })
}

fn adjacent(op: ProductKind, factors: &[Graph], x: &[usize], y: &[usize]) -> bool {
    match op {
        ProductKind::Cartesian => {
            let mut changed = 0;
            for (i, f) in factors.iter().enumerate() {
                if x[i] == y[i] {
                    continue;
                }
                if !f.has_edge(x[i], y[i]) {
                    return false;
                }
                changed += 1;
            }
            changed == 1
        }
        ProductKind::Direct => factors
            .iter()
            .enumerate()
            .all(|(i, f)| f.has_edge(x[i], y[i])),
        ProductKind::Strong => {
            // Distinctness is guaranteed by the caller iterating u < v.
            factors
                .iter()
                .enumerate()
                .all(|(i, f)| x[i] == y[i] || f.has_edge(x[i], y[i]))
        }
        ProductKind::Lexicographic => {
            for (i, f) in factors.iter().enumerate() {
                if x[i] == y[i] {
                    continue;
                }
                return f.has_edge(x[i], y[i]);
            }
            false
        }
    }
}
