//! Finite groups given by multiplication tables, connection sets, and
//! Cayley graphs.
//!
//! Built-in families cover the groups the Cayley constructions are known to
//! work on: cyclic groups, dihedral groups, the quaternion group, and the
//! symmetric groups up to S4. Explicit tables are validated against the
//! full group axioms (the order guard keeps the associativity check cheap).

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest group order accepted for table validation.
pub const MAX_GROUP_ORDER: usize = 64;

/// A finite group as a validated multiplication table over element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    names: Vec<String>,
}

/// Group families understood by [`build_group`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    /// Z_m under addition.
    Cyclic(usize),
    /// Dihedral group of the given (even) order.
    Dihedral(usize),
    /// The quaternion group {±1, ±i, ±j, ±k}.
    Quaternion8,
    /// S_m for m <= 4, elements in lexicographic one-line order.
    Symmetric(usize),
    /// Caller-provided names and table, validated.
    Explicit {
        names: Vec<String>,
        table: Vec<Vec<usize>>,
    },
}

impl FiniteGroup {
    /// Validates a multiplication table: Latin square, associativity,
    /// identity, inverses.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let m = table.len();
        if m == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if m > MAX_GROUP_ORDER {
            return Err(Error::SizeLimitExceeded {
                size: m,
                limit: MAX_GROUP_ORDER,
            });
        }
        if names.len() != m {
            return Err(Error::NotAGroup(format!(
                "{} names for {} elements",
                names.len(),
                m
            )));
        }
        for row in &table {
            if row.len() != m || row.iter().any(|&x| x >= m) {
                return Err(Error::NotAGroup("table is not m x m over 0..m".into()));
            }
        }
        // Latin square: every row and column is a permutation.
        for (i, table_row) in table.iter().enumerate() {
            let row: BTreeSet<usize> = table_row.iter().copied().collect();
            let col: BTreeSet<usize> = (0..m).map(|j| table[j][i]).collect();
            if row.len() != m || col.len() != m {
                return Err(Error::NotAGroup(format!(
                    "row or column {i} is not a permutation"
                )));
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let identity = (0..m)
            .find(|&e| (0..m).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let mut inverse = vec![0usize; m];
        for x in 0..m {
            inverse[x] = (0..m)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {x} has no inverse")))?;
        }
        Ok(FiniteGroup {
            order: m,
            table,
            identity,
            inverse,
            names,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Order of an element: the smallest t >= 1 with x^t = id.
    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut t = 1;
        while acc != self.identity {
            acc = self.mul(acc, x);
            t += 1;
        }
        t
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// Builds one of the named families or validates an explicit table.
pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Cyclic(m) => {
            if *m == 0 {
                return Err(Error::NotAGroup("cyclic group of order 0".into()));
            }
            let table = (0..*m)
                .map(|a| (0..*m).map(|b| (a + b) % m).collect())
                .collect();
            let names = (0..*m).map(|x| x.to_string()).collect();
            FiniteGroup::from_table(names, table)
        }
        GroupSpec::Dihedral(order) => {
            if order % 2 != 0 || *order < 2 {
                return Err(Error::NotAGroup(format!(
                    "dihedral order must be even and positive, got {order}"
                )));
            }
            let m = order / 2;
            // Element 2i is the rotation r^i, element 2i+1 the reflection
            // s r^i, with s r^i s = r^-i.
            let encode = |refl: bool, i: usize| -> usize { 2 * i + refl as usize };
            let mul = |x: usize, y: usize| -> usize {
                let (rx, ix) = (x % 2 == 1, x / 2);
                let (ry, iy) = (y % 2 == 1, y / 2);
                match (rx, ry) {
                    (false, false) => encode(false, (ix + iy) % m),
                    (false, true) => encode(true, (iy + m - ix % m) % m),
                    (true, false) => encode(true, (ix + iy) % m),
                    (true, true) => encode(false, (iy + m - ix % m) % m),
                }
            };
            let table = (0..*order)
                .map(|a| (0..*order).map(|b| mul(a, b)).collect())
                .collect();
            let names = (0..*order)
                .map(|x| {
                    let (refl, i) = (x % 2 == 1, x / 2);
                    if refl {
                        format!("sr{i}")
                    } else {
                        format!("r{i}")
                    }
                })
                .collect();
            FiniteGroup::from_table(names, table)
        }
        GroupSpec::Quaternion8 => {
            let names: Vec<String> = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            // Axis products with sign: 0 = 1, 1 = i, 2 = j, 3 = k.
            let axis_mul = |a: usize, b: usize| -> (bool, usize) {
                match (a, b) {
                    (0, x) => (false, x),
                    (x, 0) => (false, x),
                    (x, y) if x == y => (true, 0),
                    (1, 2) => (false, 3),
                    (2, 1) => (true, 3),
                    (2, 3) => (false, 1),
                    (3, 2) => (true, 1),
                    (3, 1) => (false, 2),
                    (1, 3) => (true, 2),
                    _ => unreachable!(),
                }
            };
            let mul = |x: usize, y: usize| -> usize {
                let (sx, ax) = (x % 2 == 1, x / 2);
                let (sy, ay) = (y % 2 == 1, y / 2);
                let (sp, az) = axis_mul(ax, ay);
                let sign = sx ^ sy ^ sp;
                2 * az + sign as usize
            };
            let table = (0..8).map(|a| (0..8).map(|b| mul(a, b)).collect()).collect();
            FiniteGroup::from_table(names, table)
        }
        GroupSpec::Symmetric(m) => {
            if *m == 0 || *m > 4 {
                return Err(Error::NotAGroup(format!(
                    "symmetric group exposed only for 1 <= m <= 4, got {m}"
                )));
            }
            let perms = permutations(*m);
            let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
            let table = perms
                .iter()
                .map(|a| {
                    perms
                        .iter()
                        .map(|b| {
                            // (a ∘ b)(x) = a(b(x))
                            let composed: Vec<usize> = (0..*m).map(|x| a[b[x]]).collect();
                            index(&composed)
                        })
                        .collect()
                })
                .collect();
            let names = perms
                .iter()
                .map(|p| p.iter().map(|d| d.to_string()).collect::<String>())
                .collect();
            FiniteGroup::from_table(names, table)
        }
        GroupSpec::Explicit { names, table } => {
            FiniteGroup::from_table(names.clone(), table.clone())
        }
    }
}

/// All permutations of 0..m in lexicographic one-line order.
fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut used = vec![false; m];
    permute_rec(m, &mut current, &mut used, &mut out);
    out
}

fn permute_rec(m: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
    if current.len() == m {
        out.push(current.clone());
        return;
    }
    for x in 0..m {
        if !used[x] {
            used[x] = true;
            current.push(x);
            permute_rec(m, current, used, out);
            current.pop();
            used[x] = false;
        }
    }
}

/// Permutation indices in S_m that are a single cycle of even length.
/// These are odd permutations, and the set is closed under inverse.
pub fn symmetric_even_cycle_set(grp: &FiniteGroup, m: usize) -> Result<BTreeSet<usize>> {
    let perms = permutations(m);
    if perms.len() != grp.order() {
        return Err(Error::NotAGroup(
            "group is not the symmetric group of the stated degree".into(),
        ));
    }
    let mut set = BTreeSet::new();
    for (idx, p) in perms.iter().enumerate() {
        let moved: Vec<usize> = (0..m).filter(|&x| p[x] != x).collect();
        if moved.is_empty() {
            continue;
        }
        // Walk the cycle through the first moved point; a single cycle
        // covers every moved point.
        let mut len = 0;
        let mut x = moved[0];
        loop {
            x = p[x];
            len += 1;
            if x == moved[0] {
                break;
            }
        }
        if len == moved.len() && len % 2 == 0 {
            set.insert(idx);
        }
    }
    Ok(set)
}

/// An inverse-closed, identity-free subset of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionSet {
    elements: BTreeSet<usize>,
}

impl ConnectionSet {
    pub fn new(grp: &FiniteGroup, elements: BTreeSet<usize>) -> Result<Self> {
        for &s in &elements {
            if s >= grp.order() {
                return Err(Error::InvalidConnectionSet(format!(
                    "element {s} outside the group"
                )));
            }
            if s == grp.identity() {
                return Err(Error::InvalidConnectionSet(
                    "contains the identity".into(),
                ));
            }
            if !elements.contains(&grp.inv(s)) {
                return Err(Error::InvalidConnectionSet(format!(
                    "not inverse-closed: missing inverse of {}",
                    grp.name(s)
                )));
            }
        }
        Ok(ConnectionSet { elements })
    }

    pub fn elements(&self) -> &BTreeSet<usize> {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Per-condition report for a candidate connection set. Pair conditions
/// carry the lexicographically first witness when they hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionSetReport {
    pub inverse_closed: bool,
    pub generates: bool,
    pub conjugation_closed: bool,
    /// Some((s1, s2)) with s1 != s2 and s1*s2 in S.
    pub pair_s1s2: Option<(usize, usize)>,
    /// Some((s1, s2)) with s1 != s2 and both s1*s2 and s1*s2^-1 in S.
    pub pair_s1s2_and_s1s2_inv: Option<(usize, usize)>,
}

/// Evaluates the Cayley-construction conditions on `set`. The set must not
/// contain the identity.
pub fn check_connection_set(
    grp: &FiniteGroup,
    set: &BTreeSet<usize>,
) -> Result<ConnectionSetReport> {
    if set.contains(&grp.identity()) {
        return Err(Error::InvalidConnectionSet("contains the identity".into()));
    }
    if let Some(&bad) = set.iter().find(|&&s| s >= grp.order()) {
        return Err(Error::InvalidConnectionSet(format!(
            "element {bad} outside the group"
        )));
    }

    let inverse_closed = set.iter().all(|&s| set.contains(&grp.inv(s)));

    // Closure of S under multiplication, seeded at the identity.
    let mut reached: BTreeSet<usize> = [grp.identity()].into_iter().collect();
    let mut frontier = vec![grp.identity()];
    while let Some(x) = frontier.pop() {
        for &s in set {
            let next = grp.mul(s, x);
            if reached.insert(next) {
                frontier.push(next);
            }
        }
    }
    let generates = reached.len() == grp.order();

    let conjugation_closed = set.iter().all(|&s| {
        set.iter()
            .all(|&t| set.contains(&grp.mul(grp.mul(s, t), grp.inv(s))))
    });

    let mut pair_s1s2 = None;
    let mut pair_both = None;
    'outer: for &s1 in set {
        for &s2 in set {
            if s1 == s2 {
                continue;
            }
            if set.contains(&grp.mul(s1, s2)) {
                if pair_s1s2.is_none() {
                    pair_s1s2 = Some((s1, s2));
                }
                if set.contains(&grp.mul(s1, grp.inv(s2))) {
                    pair_both = Some((s1, s2));
                    break 'outer;
                }
            }
        }
    }
    Ok(ConnectionSetReport {
        inverse_closed,
        generates,
        conjugation_closed,
        pair_s1s2,
        pair_s1s2_and_s1s2_inv: pair_both,
    })
}

/// Cay(H, S): group elements as vertices, x adjacent to s*x for every s in
/// S. The set must be identity-free and inverse-closed; the graph is
/// |S|-regular, and connected exactly when S generates H.
pub fn cayley_graph(grp: &FiniteGroup, set: &ConnectionSet) -> Result<Graph> {
    let mut g = Graph::new(grp.order());
    for x in 0..grp.order() {
        for &s in set.elements() {
            g.add_edge(x, grp.mul(s, x))
                .map_err(|_| Error::InvalidConnectionSet("produces a self loop".into()))?;
        }
    }
    let mut labels = Vec::with_capacity(grp.order());
    for x in 0..grp.order() {
        labels.push(grp.name(x).to_string());
    }
    g.set_labels(labels)?;
    Ok(g)
}
