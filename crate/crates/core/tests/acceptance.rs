//! Acceptance suite: one test per criterion, each printing a pass line.
//! All checks are exact combinatorial assertions with zero tolerance; the
//! expected values are recomputed independently inside this file wherever a
//! formula is involved.

use std::collections::BTreeSet;
use std::time::Instant;

use graphca_core::algebra::group::{build_group, cayley_graph, ConnectionSet, GroupSpec};
use graphca_core::algebra::oa::{bush_oa, oa_prime_power, OrthogonalArray};
use graphca_core::approx::{approx_ca, ratio_certificate};
use graphca_core::ca::{verify_ca, CoveringArray};
use graphca_core::constructions::{
    cayley_box_2color, cayley_box_3color, cayley_box_4color, circulant_shift,
    coloring_construction, direct_min, lex_concat, strong_concat,
};
use graphca_core::factorization::{brute_force_factor_oracle, factorize, same_factor_multiset};
use graphca_core::graph::{
    are_isomorphic, exact_chromatic_number, make_graph, Graph, GraphFamily,
};
use graphca_core::products::{product, ProductKind};

fn k(n: usize) -> Graph {
    make_graph(&GraphFamily::Complete(n)).unwrap()
}

fn c(n: usize) -> Graph {
    make_graph(&GraphFamily::Cycle(n)).unwrap()
}

fn p(n: usize) -> Graph {
    make_graph(&GraphFamily::Path(n)).unwrap()
}

fn cart(fs: &[Graph]) -> Graph {
    product(ProductKind::Cartesian, fs).unwrap().graph
}

/// Independent exactly-once check, written directly against the definition.
fn exactly_once_everywhere(oa: &OrthogonalArray) -> bool {
    let g = oa.symbols;
    let rows = &oa.matrix;
    for i in 0..rows.len() {
        for j in (i + 1)..rows.len() {
            let mut counts = vec![0usize; g * g];
            for (&a, &b) in rows[i].iter().zip(&rows[j]) {
                counts[a * g + b] += 1;
            }
            if counts.iter().any(|&x| x != 1) {
                return false;
            }
        }
    }
    true
}

/// Independent per-edge pair-coverage scan, bypassing the library verifier.
fn broken_edges(ca: &CoveringArray, graph: &Graph) -> BTreeSet<(usize, usize)> {
    let g = ca.symbols();
    let binding = ca.binding().expect("bound array");
    let row_of = |v: usize| {
        let r = binding.iter().position(|&b| b == v).unwrap();
        ca.row(r)
    };
    let mut out = BTreeSet::new();
    for (u, v) in graph.edges() {
        let (x, y) = (row_of(u), row_of(v));
        let mut seen = vec![false; g * g];
        for (&a, &b) in x.iter().zip(y) {
            seen[a * g + b] = true;
        }
        if seen.iter().any(|&s| !s) {
            out.insert((u, v));
        }
    }
    out
}

/// Independent standard-form factorization for the composite-array row
/// formula.
fn min_prime_power_component(mut g: usize) -> usize {
    let mut best = usize::MAX;
    let mut p = 2;
    while g > 1 {
        if g.is_multiple_of(p) {
            let mut q = 1;
            while g.is_multiple_of(p) {
                q *= p;
                g /= p;
            }
            best = best.min(q);
        }
        p += 1;
    }
    best
}

/// Smallest u >= 1 with s^u >= target.
fn log_ceil(s: usize, target: usize) -> usize {
    let mut u = 1;
    let mut reach = s;
    while reach < target {
        u += 1;
        reach *= s;
    }
    u
}

#[test]
fn criterion_01_prime_power_orthogonal_arrays() {
    for q in [2usize, 3, 4, 5, 7, 8, 9] {
        let oa = oa_prime_power(q).unwrap();
        assert_eq!(oa.rows(), q + 1, "OA({q}) row count");
        assert_eq!(oa.columns(), q * q, "OA({q}) column count");
        assert!(exactly_once_everywhere(&oa), "OA({q}) exactly-once check");
    }
    println!("criterion 1 pass: OA(q+1, q) strength-2 for q in {{2,3,4,5,7,8,9}}");
}

#[test]
fn criterion_02_composite_array_rows_match_the_formula() {
    for g in 2..=30usize {
        let oa = bush_oa(g).unwrap();
        let r = min_prime_power_component(g);
        assert_eq!(oa.rows(), 1 + r.max(2), "row count for g={g}");
        assert!(exactly_once_everywhere(&oa), "exactly-once for g={g}");
    }
    assert_eq!(bush_oa(6).unwrap().rows(), 3);
    assert_eq!(bush_oa(12).unwrap().rows(), 4);
    println!("criterion 2 pass: composite OA rows = 1 + max(2, r) for g in 2..=30");
}

fn theorem_pairs() -> Vec<(Graph, Graph)> {
    vec![(k(3), k(3)), (k(2), k(3)), (c(5), c(5))]
}

#[test]
fn criterion_03_strong_product_concatenation() {
    for (g1, g2) in theorem_pairs() {
        for g in [2usize, 3] {
            let ca1 = coloring_construction(&g1, g, None).unwrap().ca;
            let ca2 = coloring_construction(&g2, g, None).unwrap().ca;
            let (n1, n2) = (ca1.size(), ca2.size());
            let built = strong_concat(
                &[g1.clone(), g2.clone()],
                &[ca1, ca2],
                g,
            )
            .unwrap();
            assert_eq!(built.ca.size(), n1 + n2 - 2);
            let expected = product(ProductKind::Strong, &[g1.clone(), g2.clone()]).unwrap();
            assert_eq!(built.graph, expected.graph);
            assert!(verify_ca(&built.ca, &built.graph).unwrap().ok);
        }
    }
    println!("criterion 3 pass: strong concatenation sizes n1+n2-2 and verifies");
}

#[test]
fn criterion_04_lexicographic_concatenation() {
    for (g1, g2) in theorem_pairs() {
        for g in [2usize, 3] {
            let ca1 = coloring_construction(&g1, g, None).unwrap().ca;
            let ca2 = coloring_construction(&g2, g, None).unwrap().ca;
            let (n1, n2) = (ca1.size(), ca2.size());
            let built = lex_concat(&[g1.clone(), g2.clone()], &[ca1, ca2], g).unwrap();
            assert_eq!(built.ca.size(), n1 + n2 - 1);
            let expected =
                product(ProductKind::Lexicographic, &[g1.clone(), g2.clone()]).unwrap();
            assert_eq!(built.graph, expected.graph);
            assert!(verify_ca(&built.ca, &built.graph).unwrap().ok);
        }
    }
    println!("criterion 4 pass: lexicographic concatenation sizes n1+n2-1 and verifies");
}

#[test]
fn criterion_05_direct_product_minimum() {
    for (g1, g2) in theorem_pairs() {
        for g in [2usize, 3] {
            let ca1 = coloring_construction(&g1, g, None).unwrap().ca;
            let ca2 = coloring_construction(&g2, g, None).unwrap().ca;
            let (n1, n2) = (ca1.size(), ca2.size());
            let built = direct_min(&[g1.clone(), g2.clone()], &[ca1, ca2], g).unwrap();
            assert_eq!(built.ca.size(), n1.min(n2));
            let expected = product(ProductKind::Direct, &[g1.clone(), g2.clone()]).unwrap();
            assert_eq!(built.graph, expected.graph);
            assert!(verify_ca(&built.ca, &built.graph).unwrap().ok);
        }
    }
    println!("criterion 5 pass: direct-product arrays size min(n1, n2) and verify");
}

#[test]
fn criterion_06_coloring_construction_examples() {
    // P3 box C5 is 3-chromatic, so one orthogonal-array block suffices.
    let pg = cart(&[p(3), c(5)]);
    for g in [2usize, 3, 4, 5] {
        let built = coloring_construction(&pg, g, None).unwrap();
        assert_eq!(built.ca.size(), g * g, "P3 box C5 with g={g}");
        assert!(verify_ca(&built.ca, &pg).unwrap().ok);
    }
    // Any two bipartite factors with g = 3 give size 9.
    for (a, b) in [(p(4), c(6)), (k(2), p(3))] {
        let pg = cart(&[a, b]);
        let built = coloring_construction(&pg, 3, None).unwrap();
        assert_eq!(built.ca.size(), 9);
        assert!(verify_ca(&built.ca, &pg).unwrap().ok);
    }
    println!("criterion 6 pass: colouring construction reproduces the g^2 examples");
}

#[test]
fn criterion_07_chromatic_number_of_cartesian_products() {
    let pool = [k(2), k(3), c(5), p(4)];
    for a in &pool {
        for b in &pool {
            let chi_a = exact_chromatic_number(a, 16).unwrap();
            let chi_b = exact_chromatic_number(b, 16).unwrap();
            let pg = cart(&[a.clone(), b.clone()]);
            let chi = exact_chromatic_number(&pg, 25).unwrap();
            assert_eq!(chi, chi_a.max(chi_b), "chi identity fails on a product");
        }
    }
    println!("criterion 7 pass: chi(G box H) = max(chi G, chi H) on the sample pool");
}

#[test]
fn criterion_08_cayley_two_color_construction() {
    let g1 = make_graph(&GraphFamily::Circulant(5, [1, 4].into_iter().collect())).unwrap();
    let ca1 = coloring_construction(&g1, 2, None).unwrap().ca;
    let n1 = ca1.size();
    let phi = circulant_shift(5, 1);
    for g2 in [k(2), p(4), c(6)] {
        let built = cayley_box_2color(&g1, &ca1, &phi, &g2, 2).unwrap();
        assert_eq!(built.ca.size(), n1);
        let expected = product(ProductKind::Cartesian, &[g1.clone(), g2.clone()]).unwrap();
        assert_eq!(built.graph, expected.graph);
        assert!(verify_ca(&built.ca, &built.graph).unwrap().ok);
    }
    println!("criterion 8 pass: circulant shift construction keeps size n1 on C5 box G2");
}

#[test]
fn criterion_09_cayley_three_and_four_color_constructions() {
    let grp = build_group(&GroupSpec::Quaternion8).unwrap();
    let by_names = |names: &[&str]| -> ConnectionSet {
        ConnectionSet::new(
            &grp,
            names.iter().map(|n| grp.index_of(n).unwrap()).collect(),
        )
        .unwrap()
    };

    // S = {±i, ±j, ±k}, witness (i, j), second factor C5.
    let set = by_names(&["i", "-i", "j", "-j", "k", "-k"]);
    let g1 = cayley_graph(&grp, &set).unwrap();
    let ca1 = coloring_construction(&g1, 2, None).unwrap().ca;
    let witness = (grp.index_of("i").unwrap(), grp.index_of("j").unwrap());
    let built = cayley_box_3color(&grp, &set, &ca1, witness, &c(5), 2).unwrap();
    assert_eq!(built.ca.size(), ca1.size());
    assert!(verify_ca(&built.ca, &built.graph).unwrap().ok);

    // S = {-1, ±i, ±j}, witness (-1, i), second factor K4.
    let set = by_names(&["-1", "i", "-i", "j", "-j"]);
    let g1 = cayley_graph(&grp, &set).unwrap();
    let ca1 = coloring_construction(&g1, 2, None).unwrap().ca;
    let witness = (grp.index_of("-1").unwrap(), grp.index_of("i").unwrap());
    let built = cayley_box_4color(&grp, &set, &ca1, witness, &k(4), 2).unwrap();
    assert_eq!(built.ca.size(), ca1.size());
    assert!(verify_ca(&built.ca, &built.graph).unwrap().ok);

    println!("criterion 9 pass: quaternion 3- and 4-colour constructions keep size n1");
}

#[test]
fn criterion_10_factorization_recovers_factor_multisets() {
    let start = Instant::now();
    let pool = [k(2), k(3), p(3), c(5), k(4)];

    let mut cases: Vec<Vec<Graph>> = Vec::new();
    for i in 0..pool.len() {
        for j in i..pool.len() {
            cases.push(vec![pool[i].clone(), pool[j].clone()]);
            for l in j..pool.len() {
                cases.push(vec![pool[i].clone(), pool[j].clone(), pool[l].clone()]);
            }
        }
    }

    let mut checked = 0;
    for fs in cases {
        let vertices: usize = fs.iter().map(Graph::vertex_count).product();
        if vertices > 60 {
            continue;
        }
        let g = cart(&fs);
        let f = factorize(&g).unwrap();
        assert!(
            same_factor_multiset(&f.factors, &fs),
            "multiset not recovered on {vertices} vertices"
        );
        if vertices <= 12 {
            let oracle = brute_force_factor_oracle(&g).unwrap();
            assert_eq!(f.factors.len(), oracle.factors.len());
            for (a, b) in f.factors.iter().zip(&oracle.factors) {
                assert!(are_isomorphic(a, b), "oracle order mismatch");
            }
        }
        checked += 1;
    }
    assert!(checked > 20, "sweep unexpectedly small: {checked}");

    for prime in [c(5), c(6), c(7), k(4)] {
        let f = factorize(&prime).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0], prime);
        let oracle = brute_force_factor_oracle(&prime).unwrap();
        assert_eq!(oracle.factors.len(), 1);
    }

    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 30,
        "sweep took {elapsed:?}, budget is 30 s"
    );
    println!("criterion 10 pass: {checked} products factored correctly in {elapsed:?}");
}

#[test]
fn criterion_11_approximation_end_to_end() {
    // (graph, largest prime factor size, prime factor count)
    let instances = [
        (cart(&[c(4), k(3)]), 3usize, 3usize),
        (cart(&[k(5), k(2)]), 5, 2),
        (cart(&[k(2), k(2), k(3)]), 3, 3),
    ];
    for (graph, v1, factor_count) in &instances {
        for g in [2usize, 6] {
            let res = approx_ca(graph, g).unwrap();
            assert_eq!(res.v1, *v1);
            assert_eq!(res.factor_count, *factor_count);
            let s = 1 + min_prime_power_component(g).max(2);
            assert_eq!(res.s, s);
            let u = log_ceil(s, *v1);
            assert_eq!(res.u, u);
            assert_eq!(res.ca.size(), u * g * g);
            assert!(verify_ca(&res.ca, graph).unwrap().ok);
            // u <= ceil(log_s(V / 2^(k-1))), via s^t * 2^(k-1) >= V.
            let cert = ratio_certificate(&res, graph);
            let mut bound = 0usize;
            let mut reach = 1usize << (factor_count - 1);
            while reach < graph.vertex_count() {
                bound += 1;
                reach *= s;
            }
            assert_eq!(cert.bound, bound);
            assert!(cert.within_bound);
            assert!(u <= bound);
        }
    }
    // The first instance meets the g^2 lower bound exactly at g = 2.
    let res = approx_ca(&instances[0].0, 2).unwrap();
    assert_eq!(res.u, 1);
    assert_eq!(res.ca.size(), 4);
    println!("criterion 11 pass: approximation pipeline verifies with u within its bound");
}

#[test]
fn criterion_12_verifier_soundness_under_mutation() {
    let k4 = k(4);
    let base_k4 = coloring_construction(&k4, 2, None).unwrap().ca;
    let c5k2 = cart(&[c(5), k(2)]);
    let base_c5k2 = {
        let g1 = c(5);
        let ca1 = coloring_construction(&g1, 2, None).unwrap().ca;
        cayley_box_2color(&g1, &ca1, &circulant_shift(5, 1), &k(2), 2)
            .unwrap()
            .ca
    };

    let mut rng_state = 0x9e3779b97f4a7c15u64;
    let mut next = move |bound: usize| {
        rng_state = rng_state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((rng_state >> 33) as usize) % bound
    };

    let cases: [(&CoveringArray, &Graph); 2] = [(&base_k4, &k4), (&base_c5k2, &c5k2)];
    for trial in 0..200 {
        let (base, graph) = &cases[trial % 2];
        let mut matrix: Vec<Vec<usize>> = base.matrix().to_vec();
        let r = next(base.rows());
        let col = next(base.size());
        let delta = 1 + next(base.symbols() - 1);
        matrix[r][col] = (matrix[r][col] + delta) % base.symbols();
        let mutated = CoveringArray::new(base.symbols(), matrix)
            .unwrap()
            .with_identity_binding();

        let report = verify_ca(&mutated, graph).unwrap();
        let flagged: BTreeSet<(usize, usize)> = report
            .failing_edges
            .iter()
            .map(|f| (f.u, f.v))
            .collect();
        let actual = broken_edges(&mutated, graph);
        assert_eq!(
            flagged, actual,
            "verifier flags must match the independent scan exactly (trial {trial})"
        );
        assert_eq!(report.ok, actual.is_empty());
    }
    println!("criterion 12 pass: 200 single-cell mutations, verifier matches the oracle");
}
