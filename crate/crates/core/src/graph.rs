//! Labelled simple undirected graphs with 0-indexed vertices, the standard
//! small generators, and the structural analyses the constructions need:
//! greedy (DSATUR) and exact colouring, maximum clique, bipartiteness,
//! connectivity, and exhaustive canonical forms for small-graph equality.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default vertex guard for exhaustive chromatic-number search.
pub const DEFAULT_CHROMATIC_LIMIT: usize = 16;
/// Default vertex guard for exhaustive maximum-clique search.
pub const DEFAULT_CLIQUE_LIMIT: usize = 20;
/// Canonical forms are computed exhaustively only up to this many vertices.
pub const CANONICAL_FORM_LIMIT: usize = 10;

/// A simple undirected graph. Edges are stored normalized as `(min, max)`
/// pairs; self-loops and duplicates are rejected at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// An edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            vertex_count: n,
            edges: BTreeSet::new(),
            labels: None,
        }
    }

    /// Builds a graph from an edge list, normalizing and deduplicating.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v || u >= self.vertex_count || v >= self.vertex_count {
            return Err(Error::InvalidEdge(u, v));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Neighbours of `u` in ascending order.
    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.vertex_count)
            .filter(|&v| self.has_edge(u, v))
            .collect()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors(u).len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count)
            .map(|u| self.degree(u))
            .max()
            .unwrap_or(0)
    }

    /// Per-vertex text labels; `None` means rows are addressed by index.
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.vertex_count {
            return Err(Error::InvalidBinding(alloc::format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count
            )));
        }
        self.labels = Some(labels);
        Ok(())
    }

    /// Adjacency matrix as bit rows; vertex `v`'s row has bit `w` set iff
    /// `v ~ w`. Only valid for graphs with at most 64 vertices, which covers
    /// every exhaustive-search path in this crate.
    fn adjacency_bits(&self) -> Option<Vec<u64>> {
        if self.vertex_count > 64 {
            return None;
        }
        let mut rows = vec![0u64; self.vertex_count];
        for (u, v) in self.edges() {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        Some(rows)
    }
}

/// Named graph families understood by [`make_graph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFamily {
    /// Path on `m` vertices.
    Path(usize),
    /// Cycle on `n` vertices, `n >= 3`.
    Cycle(usize),
    /// Complete graph on `k` vertices.
    Complete(usize),
    /// Edgeless graph on `n` vertices.
    Edgeless(usize),
    /// Circulant graph on `Z_n` with connection set `S`.
    Circulant(usize, BTreeSet<usize>),
}

/// Builds one of the named families. For `Circulant(n, S)` the set must
/// satisfy `0 ∉ S` and `S = -S (mod n)`; vertex `i` is adjacent to `j` iff
/// `(i - j) mod n ∈ S`.
pub fn make_graph(family: &GraphFamily) -> Result<Graph> {
    match family {
        GraphFamily::Path(m) => {
            let mut g = Graph::new(*m);
            for i in 1..*m {
                g.add_edge(i - 1, i)?;
            }
            Ok(g)
        }
        GraphFamily::Cycle(n) => {
            if *n < 3 {
                return Err(Error::InvalidFactor(alloc::format!(
                    "cycle needs >= 3 vertices, got {n}"
                )));
            }
            let mut g = Graph::new(*n);
            for i in 0..*n {
                g.add_edge(i, (i + 1) % n)?;
            }
            Ok(g)
        }
        GraphFamily::Complete(k) => {
            let mut g = Graph::new(*k);
            for u in 0..*k {
                for v in (u + 1)..*k {
                    g.add_edge(u, v)?;
                }
            }
            Ok(g)
        }
        GraphFamily::Edgeless(n) => Ok(Graph::new(*n)),
        GraphFamily::Circulant(n, conn) => circulant(*n, conn),
    }
}

fn circulant(n: usize, conn: &BTreeSet<usize>) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidFactor("circulant on 0 vertices".into()));
    }
    for &s in conn {
        if s == 0 || s >= n {
            return Err(Error::InvalidConnectionSet(alloc::format!(
                "element {s} outside 1..{n}"
            )));
        }
        if !conn.contains(&((n - s) % n)) {
            return Err(Error::InvalidConnectionSet(alloc::format!(
                "set is not inverse-closed: missing {}",
                (n - s) % n
            )));
        }
    }
    let mut g = Graph::new(n);
    for i in 0..n {
        for &s in conn {
            g.add_edge(i, (i + s) % n)?;
        }
    }
    Ok(g)
}

/// A proper vertex colouring. `colors[v]` is the colour of vertex `v`;
/// `color_count` is the number of distinct colours used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperColoring {
    pub colors: Vec<usize>,
    pub color_count: usize,
}

impl ProperColoring {
    /// Checks the edge constraint and the colour-count bookkeeping against
    /// `g`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        if self.colors.len() != g.vertex_count() {
            return false;
        }
        if g.edges().any(|(u, v)| self.colors[u] == self.colors[v]) {
            return false;
        }
        let distinct: BTreeSet<usize> = self.colors.iter().copied().collect();
        distinct.len() == self.color_count
    }

    fn from_colors(colors: Vec<usize>) -> Self {
        let distinct: BTreeSet<usize> = colors.iter().copied().collect();
        ProperColoring {
            color_count: distinct.len(),
            colors,
        }
    }
}

/// Greedy colouring in DSATUR order: repeatedly colour the uncoloured vertex
/// with the most distinctly-coloured neighbours, ties broken by lowest
/// vertex index, assigning the smallest free colour. Deterministic, and
/// never uses more than `max_degree + 1` colours.
pub fn greedy_coloring(g: &Graph) -> ProperColoring {
    let n = g.vertex_count();
    let mut colors: Vec<Option<usize>> = vec![None; n];
    let neighbors: Vec<Vec<usize>> = (0..n).map(|u| g.neighbors(u)).collect();

    for _ in 0..n {
        let pick = (0..n)
            .filter(|&v| colors[v].is_none())
            .max_by_key(|&v| {
                let sat: BTreeSet<usize> =
                    neighbors[v].iter().filter_map(|&w| colors[w]).collect();
                // Reverse the index so that max_by_key keeps the lowest
                // vertex among equal saturations.
                (sat.len(), core::cmp::Reverse(v))
            })
            .expect("an uncoloured vertex exists");
        let used: BTreeSet<usize> = neighbors[pick].iter().filter_map(|&w| colors[w]).collect();
        let c = (0..).find(|c| !used.contains(c)).unwrap();
        colors[pick] = Some(c);
    }

    ProperColoring::from_colors(colors.into_iter().map(|c| c.unwrap()).collect())
}

/// Exact chromatic number by branch and bound, seeded with the greedy upper
/// bound. Guarded by `vertex_limit` because the search is exhaustive.
pub fn exact_chromatic_number(g: &Graph, vertex_limit: usize) -> Result<usize> {
    Ok(exact_coloring(g, vertex_limit)?.color_count)
}

/// Like [`exact_chromatic_number`] but returns an optimal colouring.
pub fn exact_coloring(g: &Graph, vertex_limit: usize) -> Result<ProperColoring> {
    let n = g.vertex_count();
    if n > vertex_limit {
        return Err(Error::SizeLimitExceeded {
            size: n,
            limit: vertex_limit,
        });
    }
    if n == 0 {
        return Ok(ProperColoring {
            colors: vec![],
            color_count: 0,
        });
    }
    let greedy = greedy_coloring(g);
    let ub = greedy.color_count;
    let neighbors: Vec<Vec<usize>> = (0..n).map(|u| g.neighbors(u)).collect();
    // Static order: descending degree, then index. Good enough for the
    // desk-scale instances the guard admits.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(neighbors[v].len()), v));

    for t in 1..ub {
        let mut colors: Vec<Option<usize>> = vec![None; n];
        if try_color(&order, &neighbors, &mut colors, 0, t, 0) {
            let assigned: Vec<usize> = colors.into_iter().map(|c| c.unwrap()).collect();
            return Ok(ProperColoring::from_colors(assigned));
        }
    }
    Ok(greedy)
}

/// Backtracking t-colourability. `used` is the number of colours already
/// introduced; a new vertex may open at most one fresh colour, which prunes
/// colour-permutation symmetry.
fn try_color(
    order: &[usize],
    neighbors: &[Vec<usize>],
    colors: &mut Vec<Option<usize>>,
    depth: usize,
    t: usize,
    used: usize,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    let forbidden: BTreeSet<usize> = neighbors[v].iter().filter_map(|&w| colors[w]).collect();
    let cap = t.min(used + 1);
    for c in 0..cap {
        if forbidden.contains(&c) {
            continue;
        }
        colors[v] = Some(c);
        let next_used = used.max(c + 1);
        if try_color(order, neighbors, colors, depth + 1, t, next_used) {
            return true;
        }
        colors[v] = None;
    }
    false
}

/// Maximum clique size by branch and bound, guarded by `vertex_limit`.
pub fn max_clique(g: &Graph, vertex_limit: usize) -> Result<usize> {
    let n = g.vertex_count();
    if n > vertex_limit {
        return Err(Error::SizeLimitExceeded {
            size: n,
            limit: vertex_limit,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let adj = g
        .adjacency_bits()
        .expect("guarded graphs fit in 64-bit rows");
    let all: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut best = 0usize;
    clique_search(&adj, all, 0, &mut best);
    Ok(best)
}

/// Enumerates cliques in increasing vertex order; `candidates` holds the
/// vertices adjacent to everything chosen so far and greater than the last
/// chosen vertex.
fn clique_search(adj: &[u64], candidates: u64, depth: usize, best: &mut usize) {
    *best = (*best).max(depth);
    let mut rest = candidates;
    while rest != 0 {
        if depth + rest.count_ones() as usize <= *best {
            return;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        clique_search(adj, rest & adj[v], depth + 1, best);
    }
}

/// Returns a 2-colouring when the graph has no odd cycle, `None` otherwise.
pub fn bipartition(g: &Graph) -> Option<ProperColoring> {
    let n = g.vertex_count();
    let mut colors: Vec<Option<usize>> = vec![None; n];
    for start in 0..n {
        if colors[start].is_some() {
            continue;
        }
        colors[start] = Some(0);
        let mut queue = alloc::collections::VecDeque::new();
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            let cu = colors[u].unwrap();
            for v in g.neighbors(u) {
                match colors[v] {
                    None => {
                        colors[v] = Some(1 - cu);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(ProperColoring::from_colors(
        colors.into_iter().map(|c| c.unwrap()).collect(),
    ))
}

pub fn is_bipartite(g: &Graph) -> bool {
    bipartition(g).is_some()
}

/// BFS reachability from vertex 0. Graphs with at most one vertex count as
/// connected.
pub fn is_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n <= 1 {
        return true;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = alloc::collections::VecDeque::from([0usize]);
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    count == n
}

/// Canonical form: the lexicographically greatest upper-triangle adjacency
/// code over all vertex relabelings. Entry `d` packs the adjacencies of the
/// vertex placed at position `d` to the vertices placed before it, so the
/// code grows one well-defined chunk per placement and branch-and-bound can
/// prune on prefixes. Exhaustive, so guarded at [`CANONICAL_FORM_LIMIT`].
pub fn canonical_form(g: &Graph) -> Result<Vec<u64>> {
    let n = g.vertex_count();
    if n > CANONICAL_FORM_LIMIT {
        return Err(Error::SizeLimitExceeded {
            size: n,
            limit: CANONICAL_FORM_LIMIT,
        });
    }
    let adj = g.adjacency_bits().unwrap();
    let mut best: Option<Vec<u64>> = None;
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut code = Vec::with_capacity(n);
    canon_search(&adj, n, &mut perm, &mut used, &mut code, &mut best);
    Ok(best.unwrap_or_default())
}

fn canon_search(
    adj: &[u64],
    n: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    code: &mut Vec<u64>,
    best: &mut Option<Vec<u64>>,
) {
    let depth = perm.len();
    if depth == n {
        if best.as_ref().is_none_or(|b| code.as_slice() > b.as_slice()) {
            *best = Some(code.clone());
        }
        return;
    }
    for v in 0..n {
        if used[v] {
            continue;
        }
        let mut chunk = 0u64;
        for (j, &w) in perm.iter().enumerate() {
            if adj[v] >> w & 1 == 1 {
                chunk |= 1 << j;
            }
        }
        code.push(chunk);
        // A prefix that falls below the incumbent's prefix cannot recover.
        let viable = best
            .as_ref()
            .is_none_or(|b| code.as_slice() >= &b[..code.len()]);
        if viable {
            perm.push(v);
            used[v] = true;
            canon_search(adj, n, perm, used, code, best);
            perm.pop();
            used[v] = false;
        }
        code.pop();
    }
}

/// Backtracking isomorphism test with degree-sequence screening. Intended
/// for the small, highly structured graphs this crate factors and compares.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.vertex_count();
    if n == 0 {
        return true;
    }
    let mut deg_a: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut deg_b: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    let da = deg_a.clone();
    let db = deg_b.clone();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return false;
    }
    // Map vertices of `a` in descending-degree order; constrained vertices
    // first keeps the branching shallow.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| core::cmp::Reverse(da[v]));
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    iso_search(a, b, &da, &db, &order, 0, &mut mapping, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn iso_search(
    a: &Graph,
    b: &Graph,
    da: &[usize],
    db: &[usize],
    order: &[usize],
    depth: usize,
    mapping: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    'candidates: for w in 0..b.vertex_count() {
        if used[w] || da[u] != db[w] {
            continue;
        }
        for &prev in &order[..depth] {
            if a.has_edge(u, prev) != b.has_edge(w, mapping[prev]) {
                continue 'candidates;
            }
        }
        mapping[u] = w;
        used[w] = true;
        if iso_search(a, b, da, db, order, depth + 1, mapping, used) {
            return true;
        }
        used[w] = false;
        mapping[u] = usize::MAX;
    }
    false
}

/// Comparison key for deterministic factor ordering: vertex count, edge
/// count, canonical form when available, then the sorted degree sequence
/// and raw edge list.
pub type OrderingKey = (usize, usize, Vec<u64>, Vec<usize>, Vec<(usize, usize)>);

pub fn ordering_key(g: &Graph) -> OrderingKey {
    let canon = if g.vertex_count() <= CANONICAL_FORM_LIMIT {
        canonical_form(g).unwrap_or_default()
    } else {
        Vec::new()
    };
    let mut degrees: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    degrees.sort_unstable();
    (
        g.vertex_count(),
        g.edge_count(),
        canon,
        degrees,
        g.edges().collect(),
    )
}
