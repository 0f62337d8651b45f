//! Approximation pipeline for covering arrays on connected graphs: compute
//! the composite orthogonal-array row count s for the alphabet, factor the
//! graph over the Cartesian product, build a block-concatenated array on
//! the largest prime factor, and lift it to the whole graph by summing
//! factor coordinates modulo the largest factor's size. The output costs
//! u * g^2 columns with u logarithmic in the largest factor, against the
//! universal g^2 lower bound.

use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::oa::bush_parameter;
use crate::ca::{generic_ca, verify_ca, CoveringArray};
use crate::error::{Error, Result};
use crate::factorization::{factorize, Factorization};
use crate::graph::{is_connected, Graph};

/// Result of the approximation pipeline, with the certificate inputs.
#[derive(Debug, Clone)]
pub struct ApproxResult {
    /// The covering array, bound to the input graph's vertices.
    pub ca: CoveringArray,
    /// Row count of the composite orthogonal array for this alphabet.
    pub s: usize,
    /// Block multiplier: smallest u with s^u >= v1.
    pub u: usize,
    /// Vertex count of the largest prime factor.
    pub v1: usize,
    /// Number of prime factors found.
    pub factor_count: usize,
    /// The factorization used for coordinate labels.
    pub factorization: Factorization,
    /// True when the input graph is prime; the construction still works but
    /// the ratio guarantee degenerates.
    pub prime_input: bool,
}

impl ApproxResult {
    /// Upper bound on the approximation multiplier: the smallest t with
    /// s^t * 2^(k-1) >= |V|.
    pub fn ratio_bound(&self, vertex_count: usize) -> usize {
        let mut t = 0usize;
        let mut reach = 1usize << (self.factor_count - 1);
        while reach < vertex_count {
            t += 1;
            reach = reach.saturating_mul(self.s);
        }
        t
    }
}

/// Size-ratio certificate: the array costs `u` times the universal lower
/// bound, and `u` never exceeds the logarithmic bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioCertificate {
    /// Achieved multiplier: output size divided by g^2.
    pub achieved_multiplier: usize,
    /// The logarithmic bound on the multiplier.
    pub bound: usize,
    pub within_bound: bool,
    pub prime_input: bool,
    pub notes: Vec<String>,
}

/// Runs the pipeline on a connected graph with at least one edge.
pub fn approx_ca(graph: &Graph, g: usize) -> Result<ApproxResult> {
    if g < 2 {
        return Err(Error::InvalidAlphabet(g));
    }
    if !is_connected(graph) {
        return Err(Error::NotConnected);
    }
    if graph.vertex_count() < 2 || graph.edge_count() == 0 {
        return Err(Error::InvalidFactor(
            "need at least 2 vertices and 1 edge".into(),
        ));
    }

    let (_, s) = bush_parameter(g)?;
    let factorization = factorize(graph)?;
    let v1 = factorization.factors[0].vertex_count();
    let factor_count = factorization.factors.len();

    // Covering array on the largest factor: the first v1 lexicographic
    // block concatenations of orthogonal-array rows.
    let c1 = generic_ca(v1, g)?;
    let u = c1.size() / (g * g);

    // Lift: the row of a vertex is the row of the sum of its factor
    // coordinates modulo v1. Adjacent vertices differ in exactly one
    // coordinate by less than v1, so they always land on distinct rows.
    let matrix: Vec<Vec<usize>> = (0..graph.vertex_count())
        .map(|v| {
            let sum: usize = factorization.coords[v].iter().sum();
            c1.row(sum % v1).to_vec()
        })
        .collect();
    let ca = CoveringArray::new(g, matrix)?.with_identity_binding();

    let check = verify_ca(&ca, graph)?;
    if !check.ok {
        return Err(Error::OutputVerificationFailed(alloc::format!(
            "{} edges uncovered",
            check.failing_edges.len()
        )));
    }

    Ok(ApproxResult {
        ca,
        s,
        u,
        v1,
        factor_count,
        factorization,
        prime_input: factor_count == 1,
    })
}

/// Builds the certificate for an approximation result.
pub fn ratio_certificate(res: &ApproxResult, graph: &Graph) -> RatioCertificate {
    let bound = res.ratio_bound(graph.vertex_count());
    let mut notes = Vec::new();
    if res.prime_input {
        notes.push(String::from(
            "input graph is prime: the ratio bound degenerates to log_s |V|",
        ));
    }
    RatioCertificate {
        achieved_multiplier: res.u,
        bound,
        within_bound: res.u <= bound,
        prime_input: res.prime_input,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_graph, GraphFamily};
    use crate::products::{product, ProductKind};

    fn k(n: usize) -> Graph {
        make_graph(&GraphFamily::Complete(n)).unwrap()
    }

    fn c(n: usize) -> Graph {
        make_graph(&GraphFamily::Cycle(n)).unwrap()
    }

    fn cart(fs: &[Graph]) -> Graph {
        product(ProductKind::Cartesian, fs).unwrap().graph
    }

    #[test]
    fn c4_box_k3_meets_the_lower_bound() {
        let g = cart(&[c(4), k(3)]);
        let res = approx_ca(&g, 2).unwrap();
        assert_eq!(res.s, 3);
        assert_eq!(res.factor_count, 3); // C4 splits into K2 x K2
        assert_eq!(res.v1, 3);
        assert_eq!(res.u, 1);
        assert_eq!(res.ca.size(), 4);

        let cert = ratio_certificate(&res, &g);
        assert_eq!(cert.bound, 1); // ceil(log_3(12 / 4))
        assert!(cert.within_bound);
    }

    #[test]
    fn k5_box_k2_needs_two_blocks() {
        let g = cart(&[k(5), k(2)]);
        let res = approx_ca(&g, 2).unwrap();
        assert_eq!((res.v1, res.s, res.u), (5, 3, 2));
        assert_eq!(res.ca.size(), 8);
        let cert = ratio_certificate(&res, &g);
        assert_eq!(cert.bound, 2); // ceil(log_3 5)
        assert!(cert.within_bound);
    }

    #[test]
    fn composite_alphabet_uses_the_composite_row_count() {
        let g = cart(&[c(4), k(3)]);
        let res = approx_ca(&g, 6).unwrap();
        assert_eq!(res.s, 3);
        assert_eq!(res.ca.size(), 36);
    }

    #[test]
    fn prime_graph_falls_back_with_a_warning() {
        let res = approx_ca(&c(5), 2).unwrap();
        assert!(res.prime_input);
        assert_eq!(res.v1, 5);
        assert_eq!(res.u, 2);
        let cert = ratio_certificate(&res, &c(5));
        assert!(cert.within_bound);
        assert!(!cert.notes.is_empty());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(approx_ca(&c(4), 1), Err(Error::InvalidAlphabet(1))));
        let disjoint = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(approx_ca(&disjoint, 2), Err(Error::NotConnected)));
        assert!(matches!(
            approx_ca(&Graph::new(1), 2),
            Err(Error::InvalidFactor(_))
        ));
    }

    #[test]
    fn adjacent_vertices_get_distinct_rows() {
        let g = cart(&[k(2), k(2), k(3)]);
        let res = approx_ca(&g, 2).unwrap();
        for (u, v) in g.edges() {
            let su: usize = res.factorization.coords[u].iter().sum();
            let sv: usize = res.factorization.coords[v].iter().sum();
            assert_ne!(su % res.v1, sv % res.v1, "edge ({u}, {v})");
        }
    }
}
