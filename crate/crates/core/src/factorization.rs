//! Prime factorization of connected graphs with respect to the Cartesian
//! product.
//!
//! The algorithm is edge-class refinement via the square property: every
//! pair of incident edges that does not lie in exactly one chordless
//! 4-cycle is merged into one class, opposite edges of every chordless
//! 4-cycle are merged, and the transitive closure of these merges yields
//! the candidate product colouring. Factors are the layers through a base
//! vertex, coordinates are assigned by BFS, and the result is certified by
//! reconstructing the product and comparing edge sets; a mismatch is
//! reported as an error, never silently returned as "prime".
//!
//! [`brute_force_factor_oracle`] independently recovers the factorization
//! by exhaustion over candidate factor graphs and is the test oracle for
//! the refinement.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{are_isomorphic, is_connected, ordering_key, Graph};
use crate::products::{product, ProductKind};

/// Vertex guard for the exhaustive oracle.
pub const ORACLE_VERTEX_LIMIT: usize = 12;

/// A certified Cartesian factorization: `product(cartesian, factors)` with
/// `coords` reproduces the source graph exactly.
#[derive(Debug, Clone)]
pub struct Factorization {
    /// Prime factors, sorted by descending vertex count (ties by canonical
    /// form). A prime input yields a single factor equal to the input.
    pub factors: Vec<Graph>,
    /// `coords[v]` is the tuple of factor-vertex indices for source vertex
    /// `v`; one entry per factor, in `factors` order.
    pub coords: Vec<Vec<usize>>,
}

impl Factorization {
    /// Row-major product-vertex index of source vertex `v`.
    pub fn product_index(&self, v: usize) -> usize {
        self.coords[v]
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&c, f)| acc * f.vertex_count() + c)
    }
}

/// Factors a connected graph into primes over the Cartesian product.
pub fn factorize(g: &Graph) -> Result<Factorization> {
    if !is_connected(g) {
        return Err(Error::NotConnected);
    }
    let n = g.vertex_count();
    if n <= 1 || g.edge_count() == 0 {
        return Ok(Factorization {
            factors: vec![g.clone()],
            coords: (0..n).map(|v| vec![v]).collect(),
        });
    }

    let classes = square_property_classes(g);
    if classes.len() == 1 {
        return Ok(trivial_factorization(g));
    }

    match factorization_from_classes(g, &classes) {
        Ok(mut f) => {
            sort_factors(&mut f);
            Ok(f)
        }
        Err(e) => Err(e),
    }
}

fn trivial_factorization(g: &Graph) -> Factorization {
    Factorization {
        factors: vec![g.clone()],
        coords: (0..g.vertex_count()).map(|v| vec![v]).collect(),
    }
}

/// Edge classes under the transitive closure of the square-property
/// relation. Returns the classes as edge lists.
fn square_property_classes(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let index: BTreeMap<(usize, usize), usize> = edges
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i))
        .collect();
    let mut dsu = Dsu::new(edges.len());
    let neighbors: Vec<Vec<usize>> = (0..g.vertex_count()).map(|u| g.neighbors(u)).collect();

    // Incident pairs: edges (u,v), (v,w) sharing vertex v. Merge unless
    // they lie in exactly one chordless square u-v-w-x.
    for v in 0..g.vertex_count() {
        let nv = &neighbors[v];
        for (a, &u) in nv.iter().enumerate() {
            for &w in nv.iter().skip(a + 1) {
                let e = index[&norm(u, v)];
                let f = index[&norm(v, w)];
                let squares = if g.has_edge(u, w) {
                    // A triangle corner: every 4-cycle through u,v,w has the
                    // chord u-w.
                    0
                } else {
                    neighbors[u]
                        .iter()
                        .filter(|&&x| x != v && g.has_edge(x, w) && !g.has_edge(x, v))
                        .count()
                };
                if squares != 1 {
                    dsu.union(e, f);
                }
            }
        }
    }

    // Opposite edges of every chordless square u-v-w-x.
    for u in 0..g.vertex_count() {
        for w in (u + 1)..g.vertex_count() {
            if g.has_edge(u, w) {
                continue;
            }
            let common: Vec<usize> = neighbors[u]
                .iter()
                .copied()
                .filter(|&x| g.has_edge(x, w))
                .collect();
            for (a, &v) in common.iter().enumerate() {
                for &x in common.iter().skip(a + 1) {
                    if g.has_edge(v, x) {
                        continue;
                    }
                    dsu.union(index[&norm(u, v)], index[&norm(w, x)]);
                    dsu.union(index[&norm(v, w)], index[&norm(x, u)]);
                }
            }
        }
    }

    let mut by_root: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, &e) in edges.iter().enumerate() {
        by_root.entry(dsu.find(i)).or_default().push(e);
    }
    by_root.into_values().collect()
}

fn norm(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Builds factors and coordinates from candidate edge classes, then
/// certifies by reconstruction. Any structural failure is an
/// `InternalFactorizationError`.
fn factorization_from_classes(
    g: &Graph,
    classes: &[Vec<(usize, usize)>],
) -> Result<Factorization> {
    let n = g.vertex_count();
    let base = 0usize;
    let k = classes.len();

    // Layer of the base vertex inside each class, labelled by BFS order.
    let mut factors = Vec::with_capacity(k);
    let mut layer_label: Vec<BTreeMap<usize, usize>> = Vec::with_capacity(k);
    for class in classes {
        let adj = class_adjacency(n, class);
        let layer = bfs_order(&adj, base);
        let label: BTreeMap<usize, usize> =
            layer.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut f = Graph::new(layer.len());
        for &(u, v) in class {
            if let (Some(&lu), Some(&lv)) = (label.get(&u), label.get(&v)) {
                f.add_edge(lu, lv)
                    .map_err(|_| internal("layer edge out of range"))?;
            }
        }
        factors.push(f);
        layer_label.push(label);
    }

    let size_product: usize = factors.iter().map(|f| f.vertex_count()).product();
    if size_product != n {
        return Err(internal("layer sizes do not multiply to the vertex count"));
    }

    // Coordinate i of v: the unique base-layer vertex of class i reachable
    // from v without using class-i edges.
    let mut coords = vec![vec![0usize; k]; n];
    for (i, class) in classes.iter().enumerate() {
        let class_set: BTreeSet<(usize, usize)> = class.iter().copied().collect();
        let mut others: Vec<(usize, usize)> = Vec::new();
        for e in g.edges() {
            if !class_set.contains(&e) {
                others.push(e);
            }
        }
        let adj = class_adjacency(n, &others);
        let comp = components(&adj, n);
        // Map each component to the base-layer vertex it contains.
        let mut comp_coord: BTreeMap<usize, usize> = BTreeMap::new();
        for (&layer_vertex, &label) in &layer_label[i] {
            let c = comp[layer_vertex];
            if comp_coord.insert(c, label).is_some() {
                return Err(internal("two base-layer vertices share a component"));
            }
        }
        for v in 0..n {
            match comp_coord.get(&comp[v]) {
                Some(&label) => coords[v][i] = label,
                None => return Err(internal("vertex component misses the base layer")),
            }
        }
    }

    let f = Factorization { factors, coords };
    certify(g, &f)?;
    Ok(f)
}

/// Checks that the coordinates biject onto the tuple space and that the
/// Cartesian product of the factors reproduces the source edge set exactly.
fn certify(g: &Graph, f: &Factorization) -> Result<()> {
    let n = g.vertex_count();
    if f.factors.len() == 1 {
        // Trivial factorization: the single factor must be the input itself
        // under the identity coordinates.
        let same_graph = f.factors[0].vertex_count() == n
            && f.factors[0].edge_count() == g.edge_count()
            && f.factors[0].edges().eq(g.edges());
        let identity = (0..n).all(|v| f.coords[v].as_slice() == [v]);
        if same_graph && identity {
            return Ok(());
        }
        return Err(internal("trivial factorization does not match the input"));
    }
    let reconstructed = product(ProductKind::Cartesian, &f.factors)
        .map_err(|_| internal("reconstruction product failed"))?;
    if reconstructed.graph.vertex_count() != n {
        return Err(internal("reconstruction vertex count mismatch"));
    }
    let mut seen = vec![false; n];
    for v in 0..n {
        let idx = f.product_index(v);
        if idx >= n || seen[idx] {
            return Err(internal("coordinates are not a bijection"));
        }
        seen[idx] = true;
    }
    if g.edge_count() != reconstructed.graph.edge_count() {
        return Err(internal("reconstruction edge count mismatch"));
    }
    for (u, v) in g.edges() {
        if !reconstructed
            .graph
            .has_edge(f.product_index(u), f.product_index(v))
        {
            return Err(internal("source edge missing from reconstruction"));
        }
    }
    Ok(())
}

fn internal(msg: &str) -> Error {
    Error::InternalFactorizationError(msg.into())
}

fn class_adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for row in &mut adj {
        row.sort_unstable();
    }
    adj
}

fn bfs_order(adj: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut seen: BTreeSet<usize> = [start].into_iter().collect();
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if seen.insert(v) {
                order.push(v);
                queue.push_back(v);
            }
        }
    }
    order
}

fn components(adj: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = next;
                    queue.push_back(v);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Sorts factors by descending vertex count, ties by canonical ordering key,
/// keeping coordinates aligned with the new factor order.
fn sort_factors(f: &mut Factorization) {
    let keys: Vec<_> = f.factors.iter().map(ordering_key).collect();
    let mut order: Vec<usize> = (0..f.factors.len()).collect();
    order.sort_by(|&a, &b| {
        keys[b]
            .0
            .cmp(&keys[a].0)
            .then_with(|| keys[a].cmp(&keys[b]))
            .then(a.cmp(&b))
    });
    f.factors = order.iter().map(|&i| f.factors[i].clone()).collect();
    for tuple in &mut f.coords {
        let reordered: Vec<usize> = order.iter().map(|&i| tuple[i]).collect();
        *tuple = reordered;
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Exhaustive factorization oracle for graphs with at most
/// [`ORACLE_VERTEX_LIMIT`] vertices: tries every split of the vertex count
/// and every pair of connected candidate factors up to isomorphism, checking
/// product isomorphism directly, and recurses into the found factors.
pub fn brute_force_factor_oracle(g: &Graph) -> Result<Factorization> {
    let n = g.vertex_count();
    if n > ORACLE_VERTEX_LIMIT {
        return Err(Error::SizeLimitExceeded {
            size: n,
            limit: ORACLE_VERTEX_LIMIT,
        });
    }
    if !is_connected(g) {
        return Err(Error::NotConnected);
    }
    let mut f = oracle_recurse(g)?;
    sort_factors(&mut f);
    certify(g, &f)?;
    Ok(f)
}

fn oracle_recurse(g: &Graph) -> Result<Factorization> {
    let n = g.vertex_count();
    if n <= 1 {
        return Ok(trivial_factorization(g));
    }
    for a_size in 2..=n {
        if !n.is_multiple_of(a_size) {
            continue;
        }
        let b_size = n / a_size;
        if b_size < 2 || a_size > b_size {
            break;
        }
        let a_candidates = connected_graphs_up_to_iso(a_size);
        let b_candidates = connected_graphs_up_to_iso(b_size);
        for a in &a_candidates {
            for b in &b_candidates {
                let p = product(ProductKind::Cartesian, &[a.clone(), b.clone()])
                    .expect("candidate factors are nonempty");
                if let Some(mapping) = isomorphism(g, &p.graph) {
                    let fa = oracle_recurse(a)?;
                    let fb = oracle_recurse(b)?;
                    let mut coords = Vec::with_capacity(n);
                    for &image in &mapping {
                        let c = p.coords(image);
                        let mut tuple = fa.coords[c[0]].clone();
                        tuple.extend_from_slice(&fb.coords[c[1]]);
                        coords.push(tuple);
                    }
                    let mut factors = fa.factors;
                    factors.extend(fb.factors);
                    return Ok(Factorization { factors, coords });
                }
            }
        }
    }
    Ok(trivial_factorization(g))
}

/// All connected graphs on `n` labelled vertices, deduplicated by canonical
/// form. Exponential in the edge slots; callers keep `n <= 6`.
fn connected_graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << slots.len()) {
        let edges = slots
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        let g = Graph::from_edges(n, edges).unwrap();
        if !is_connected(&g) {
            continue;
        }
        let canon = crate::graph::canonical_form(&g).unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

/// Explicit isomorphism `g -> h` as a vertex map, if one exists.
fn isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let n = g.vertex_count();
    let dg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let dh: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let mut sg = dg.clone();
    let mut sh = dh.clone();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| core::cmp::Reverse(dg[v]));
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if iso_map(g, h, &dg, &dh, &order, 0, &mut mapping, &mut used) {
        Some(mapping)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn iso_map(
    g: &Graph,
    h: &Graph,
    dg: &[usize],
    dh: &[usize],
    order: &[usize],
    depth: usize,
    mapping: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    'candidates: for w in 0..h.vertex_count() {
        if used[w] || dg[u] != dh[w] {
            continue;
        }
        for &prev in &order[..depth] {
            if g.has_edge(u, prev) != h.has_edge(w, mapping[prev]) {
                continue 'candidates;
            }
        }
        mapping[u] = w;
        used[w] = true;
        if iso_map(g, h, dg, dh, order, depth + 1, mapping, used) {
            return true;
        }
        used[w] = false;
        mapping[u] = usize::MAX;
    }
    false
}

/// True when two factor lists agree as multisets up to isomorphism.
pub fn same_factor_multiset(a: &[Graph], b: &[Graph]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut remaining: Vec<&Graph> = b.iter().collect();
    for fa in a {
        match remaining.iter().position(|fb| are_isomorphic(fa, fb)) {
            Some(i) => {
                remaining.swap_remove(i);
            }
            None => return false,
        }
    }
    true
}
