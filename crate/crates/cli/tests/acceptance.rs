//! Acceptance suite. Each test checks one criterion and prints one
//! `criterion N: PASS|FAIL` line (visible with `-- --nocapture`).

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;

use itertools::Itertools;
use num_rational::Ratio;
use petgraph::unionfind::UnionFind;

use windigraph::descent::{descendant_window, layer_profile, shallowest_interior, P3Verdict};
use windigraph::generators::{
    gen_desc_of_line, gen_dmm, gen_line_z, gen_random_layered_dag, gen_regular_tree, gen_rooted_out_tree, gen_sigma,
};
use windigraph::reachability::{alternets, class_c_membership, reach_classes, reach_partition, universality_signal, UniversalitySignal};
use windigraph::relations::{delta_n_partition, delta_n_window_partition};
use windigraph::structure::{pq_consistency, z_labeling, PqBranch, PqOutcome, ZVerdict, REASON_P3_FAILS};
use windigraph::symmetry::{automorphism_orbits, check_distance_transitive, check_edge_transitive, is_isomorphic, IsoConstraints};
use windigraph::{quotient, Digraph, Edge, Partition, VertexId, Window};

const CAP: usize = 64;

fn report(n: u32, failures: &[String], detail: &str) {
    if failures.is_empty() {
        println!("criterion {n}: PASS {detail}");
    } else {
        println!("criterion {n}: FAIL {detail}");
        for f in failures {
            println!("  - {f}");
        }
    }
    assert!(failures.is_empty(), "criterion {n} failed: {failures:?}");
}

/// C(n, k) by the multiplicative formula, independent of the library.
fn choose(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

// Criterion 1 ---------------------------------------------------------------

const STRUCTURE_WINDOWS: [(usize, usize, usize); 4] = [(1, 2, 3), (2, 2, 3), (2, 3, 3), (3, 4, 2)];

#[test]
fn criterion_01_dmm_structure() {
    let mut failures = Vec::new();
    let mut checked_classes = 0;
    for (m, big_m, l) in STRUCTURE_WINDOWS {
        let w = gen_dmm(m, big_m, l).unwrap();
        let level = w.level.as_ref().unwrap();
        if let Some((u, v)) = w.graph.edges().find(|&(u, v)| level[v] != level[u] + 1) {
            failures.push(format!("D({m},{big_m}) L={l}: level contract broken on ({u},{v})"));
        }
        for v in w.interior_vertices() {
            if w.graph.out_degree(v) != m {
                failures.push(format!("D({m},{big_m}) L={l}: interior {v} has out-valency {}", w.graph.out_degree(v)));
            }
        }
        let p = delta_n_window_partition(&w, 1).unwrap();
        let q = quotient(&w.graph, &p).unwrap();
        let k = choose(big_m, m);
        for (i, class) in q.classes.classes().iter().enumerate() {
            if !class.iter().all(|&v| w.interior[v]) {
                continue;
            }
            checked_classes += 1;
            let (out, inn) = (q.graph.out_degree(i), q.graph.in_degree(i));
            if out != 1 || inn != k {
                failures.push(format!("D({m},{big_m}) L={l}: class {class:?} has out {out}, in {inn}; want 1, {k}"));
            }
        }
        if q.dropped_self_edges != 0 {
            failures.push(format!("D({m},{big_m}) L={l}: {} edges inside δ₁ classes", q.dropped_self_edges));
        }
    }
    if checked_classes == 0 {
        failures.push("no interior δ₁ classes".into());
    }
    report(1, &failures, &format!("({checked_classes} interior δ₁ classes checked)"));
}

// Criterion 2 ---------------------------------------------------------------

fn alternets_are_sigma(windows: &[(usize, usize, usize)]) -> (Vec<String>, Vec<String>) {
    let mut failures = Vec::new();
    let mut tested = Vec::new();
    for &(m, big_m, l) in windows {
        let w = gen_dmm(m, big_m, l).unwrap();
        let sigma = gen_sigma(m, big_m).unwrap();
        let mut count = 0;
        for a in alternets(&w).alternets.into_iter().filter(|a| a.complete) {
            count += 1;
            let b = a.to_bipartite();
            let iso = is_isomorphic(&b.graph, &sigma.graph, &IsoConstraints::default(), CAP).unwrap();
            if !iso.is_isomorphic() {
                failures.push(format!("D({m},{big_m}) L={l}: alternet with sinks {:?} is not Σ({m},{big_m})", a.sinks));
            }
            let c = class_c_membership(&a).unwrap();
            if !c.member || c.sink_count != big_m || c.delta_class_sizes.iter().any(|&s| s != big_m) {
                failures.push(format!("D({m},{big_m}) L={l}: class 𝒞 report {c:?}"));
            }
        }
        if count == 0 && l >= 3 {
            failures.push(format!("D({m},{big_m}) L={l}: no complete alternet"));
        }
        tested.push(format!("D({m},{big_m}) L={l}: {count}"));
    }
    (failures, tested)
}

#[test]
fn criterion_02_alternets_are_sigma() {
    // (3,4,2) has no complete alternet; (3,4,3) is checked alongside it
    let (failures, tested) = alternets_are_sigma(&[(2, 2, 3), (2, 3, 3), (3, 4, 2), (3, 4, 3)]);
    report(2, &failures, &format!("(complete alternets: {})", tested.join(", ")));
}

/// Same check on D(1,2). With out-valency 1 each alternet is a connected star
/// K_{2,1}, while Σ(1,2) has two blocks on two sinks and is disconnected.
#[test]
fn criterion_02_alternets_are_sigma_out_valency_one() {
    let (failures, tested) = alternets_are_sigma(&[(1, 2, 3)]);
    report(2, &failures, &format!("(complete alternets: {})", tested.join(", ")));
}

// Criterion 3 ---------------------------------------------------------------

fn case_one_triple(m: usize, big_m: usize) -> Vec<String> {
    let mut failures = Vec::new();
    let w = gen_dmm(m, big_m, 5).unwrap();
    if !matches!(z_labeling(&w.graph).verdict, ZVerdict::Labeled(_)) {
        failures.push(format!("D({m},{big_m}): no Z labeling"));
    }
    if universality_signal(&w.graph) != UniversalitySignal::NoTwoArcInWindow {
        failures.push(format!("D({m},{big_m}): 2-arc inside one reachability class"));
    }
    if !delta_n_partition(&w, 1, &w.interior_vertices()).unwrap().is_nontrivial() {
        failures.push(format!("D({m},{big_m}): δ₁ trivial"));
    }
    let gamma = descendant_window(&w, shallowest_interior(&w).unwrap(), 4).unwrap();
    let p = layer_profile(&gamma);
    if p.p3 != P3Verdict::FailsAt(2) {
        failures.push(format!("D({m},{big_m}): P3 verdict {:?}, layer sizes {:?}", p.p3, p.layer_sizes));
    }
    for i in 2..=4 {
        if p.r(i) != Some(m) {
            failures.push(format!("D({m},{big_m}): r_{i} = {:?}, want {m}", p.r(i)));
        }
    }
    failures
}

#[test]
fn criterion_03_case_one_triple() {
    let failures: Vec<String> = [(2, 2), (2, 3), (3, 4)]
        .into_iter()
        .flat_map(|(m, big_m)| case_one_triple(m, big_m))
        .collect();
    report(3, &failures, "(D(2,2), D(2,3), D(3,4) at L=5, depth 4)");
}

/// Same check on D(1,2). Its descendant subdigraph is a directed path, so
/// layer 1 already fails to grow; the required FailsAt(2) is not attainable.
#[test]
fn criterion_03_case_one_triple_out_valency_one() {
    report(3, &case_one_triple(1, 2), "(D(1,2) at L=5, depth 4)");
}

// Criterion 4 ---------------------------------------------------------------

#[test]
fn criterion_04_counting_identity() {
    let mut failures = Vec::new();
    let mut windows: Vec<(String, Window, usize)> = Vec::new();
    for b in 1..=3 {
        for depth in 1..=6 {
            windows.push((format!("tree b={b} depth={depth}"), gen_rooted_out_tree(b, depth).unwrap(), depth));
        }
    }
    for (m, big_m) in [(1, 2), (2, 2), (2, 3), (3, 4), (2, 4), (6, 6)] {
        windows.push((format!("D({m},{big_m})"), gen_dmm(m, big_m, 5).unwrap(), 4));
    }
    windows.push(("regular tree 2/2".into(), gen_regular_tree(2, 2, 6).unwrap(), 3));
    let mut identities = 0;
    for (name, w, depth) in &windows {
        // trees and the regular-tree ball are rooted at vertex 0
        let root = if name.starts_with("D(") { shallowest_interior(w).unwrap() } else { 0 };
        let gamma = descendant_window(w, root, *depth).unwrap();
        let g = &gamma.window.graph;
        let m = g.out_degree(gamma.root);
        for i in 0..gamma.depth {
            // count edges from Γ^i to Γ^{i+1} directly
            let next: BTreeSet<VertexId> = gamma.layers[i + 1].iter().copied().collect();
            let edges: usize = gamma.layers[i]
                .iter()
                .map(|&u| g.out_neighbors(u).iter().filter(|v| next.contains(v)).count())
                .sum();
            let this: BTreeSet<VertexId> = gamma.layers[i].iter().copied().collect();
            let r: BTreeSet<usize> = gamma.layers[i + 1]
                .iter()
                .map(|&v| g.in_neighbors(v).iter().filter(|u| this.contains(u)).count())
                .collect();
            let size_i = gamma.layers[i].len();
            let size_next = gamma.layers[i + 1].len();
            identities += 1;
            if r.len() != 1 {
                failures.push(format!("{name}: layer {} in-valencies {r:?}", i + 1));
                continue;
            }
            let r = *r.iter().next().unwrap();
            if size_i * m != edges || edges != size_next * r {
                failures.push(format!("{name}: layer {i}: {size_i}·{m} vs {size_next}·{r} ({edges} edges)"));
            }
        }
        let p = layer_profile(&gamma);
        if !p.counting_identity_failures().is_empty() {
            failures.push(format!("{name}: profile reports failures at {:?}", p.counting_identity_failures()));
        }
    }
    report(4, &failures, &format!("({} windows, {identities} layer identities)", windows.len()));
}

// Criterion 5 ---------------------------------------------------------------

#[test]
fn criterion_05_descendants_of_a_line() {
    let mut failures = Vec::new();
    let f = gen_desc_of_line(2, 3, 3).unwrap();
    let interior = f.interior_vertices();
    if interior.is_empty() {
        failures.push("F has no interior vertices".into());
    }
    for v in interior {
        if f.graph.in_degree(v) != 2 {
            failures.push(format!("interior {v} of F has in-valency {}", f.graph.in_degree(v)));
        }
    }
    let full = gen_dmm(2, 2, 3).unwrap();
    let g = gen_desc_of_line(2, 2, 3).unwrap();
    if g.graph != full.graph || g.interior != full.interior || g.level != full.level {
        failures.push("descendants of the line in D(2,2) differ from the whole window".into());
    }
    report(5, &failures, &format!("(F has {} of {} vertices)", f.vertex_count(), gen_dmm(2, 3, 3).unwrap().vertex_count()));
}

// Criterion 6 ---------------------------------------------------------------

const PROBABILITIES: [(u64, u64); 4] = [(1, 3), (1, 2), (2, 3), (1, 1)];

/// `count` seeded random layered DAGs whose shape `(levels, width)` is drawn
/// from `shapes`.
fn random_corpus(count: usize, shapes: &[(usize, usize)]) -> Vec<Digraph> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        let (levels, width) = shapes[(seed as usize) % shapes.len()];
        let (p, q) = PROBABILITIES[(seed as usize / shapes.len()) % PROBABILITIES.len()];
        if let Ok(w) = gen_random_layered_dag(levels, width, Ratio::new(p, q), seed) {
            out.push(w.graph);
        }
        seed += 1;
    }
    out
}

fn small_shapes() -> Vec<(usize, usize)> {
    (2..=4).flat_map(|l| (1..=3).map(move |w| (l, w))).collect()
}

/// All edges reachable from `e` by explicit alternating walks.
fn walk_oracle(g: &Digraph) -> Partition<Edge> {
    let mut classes = Vec::new();
    let mut done = BTreeSet::new();
    for e in g.edges() {
        if done.contains(&e) {
            continue;
        }
        // state: edge and whether the next edge shares its head
        let mut seen = BTreeSet::from([(e, true)]);
        let mut stack = vec![(e, true)];
        while let Some(((a, b), head)) = stack.pop() {
            let next: Vec<Edge> = if head {
                g.edges().filter(|f| f.1 == b).collect()
            } else {
                g.edges().filter(|f| f.0 == a).collect()
            };
            for f in next {
                if seen.insert((f, !head)) {
                    stack.push((f, !head));
                }
            }
        }
        let class: BTreeSet<Edge> = seen.into_iter().map(|s| s.0).collect();
        done.extend(class.iter().copied());
        classes.push(class.into_iter().collect());
    }
    Partition::from_classes(classes).unwrap()
}

/// Endpoints of all s-arcs, by explicit enumeration.
fn arcs_oracle(g: &Digraph, u: VertexId, s: usize) -> BTreeSet<VertexId> {
    let mut walks = vec![vec![u]];
    for _ in 0..s {
        walks = walks
            .into_iter()
            .flat_map(|w| {
                let cur = *w.last().unwrap();
                let prev = w.len().checked_sub(2).map(|i| w[i]);
                g.out_neighbors(cur)
                    .iter()
                    .filter(move |&&x| Some(x) != prev)
                    .map(move |&x| {
                        let mut w2 = w.clone();
                        w2.push(x);
                        w2
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    walks.into_iter().map(|w| *w.last().unwrap()).collect()
}

/// δ_n by comparing every pair of vertices.
fn delta_oracle(g: &Digraph, n: usize) -> Partition<VertexId> {
    let sets: Vec<BTreeSet<VertexId>> = g.vertices().map(|v| arcs_oracle(g, v, n)).collect();
    let mut class_of: Vec<Option<usize>> = vec![None; g.vertex_count()];
    let mut classes: Vec<Vec<VertexId>> = Vec::new();
    for u in g.vertices() {
        if class_of[u].is_some() {
            continue;
        }
        let mut class = vec![u];
        class_of[u] = Some(classes.len());
        for v in u + 1..g.vertex_count() {
            if class_of[v].is_none() && sets[u] == sets[v] {
                class_of[v] = Some(classes.len());
                class.push(v);
            }
        }
        classes.push(class);
    }
    Partition::from_classes(classes).unwrap()
}

/// Vertex and edge orbits from every permutation that is an automorphism.
fn permutation_oracle(g: &Digraph) -> (Partition<VertexId>, Partition<Edge>) {
    let n = g.vertex_count();
    let edges: Vec<Edge> = g.edges().collect();
    let mut uv = UnionFind::<usize>::new(n);
    let mut ue = UnionFind::<usize>::new(edges.len());
    for perm in (0..n).permutations(n) {
        if !edges.iter().all(|&(u, v)| g.has_edge(perm[u], perm[v])) {
            continue;
        }
        for (x, &y) in perm.iter().enumerate() {
            uv.union(x, y);
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            let j = edges.iter().position(|&e| e == (perm[u], perm[v])).unwrap();
            ue.union(i, j);
        }
    }
    let lv = uv.into_labeling();
    let le = ue.into_labeling();
    let vertex_orbits = Partition::by_key(0..n, |&v| lv[v]);
    let edge_orbits = Partition::by_key(0..edges.len(), |&i| le[i])
        .classes()
        .iter()
        .map(|c| c.iter().map(|&i| edges[i]).collect())
        .collect();
    (vertex_orbits, Partition::from_classes(edge_orbits).unwrap())
}

#[test]
fn criterion_06_oracle_equivalences() {
    let mut failures = Vec::new();
    let corpus = random_corpus(200, &small_shapes());
    for (i, g) in corpus.iter().enumerate() {
        assert!(g.vertex_count() <= 12);
        if reach_partition(g) != walk_oracle(g) {
            failures.push(format!("(a) instance {i}: reachability classes differ"));
        }
        let w = Window::complete(g.clone());
        let all: Vec<VertexId> = g.vertices().collect();
        for n in 1..=2 {
            let d = delta_n_partition(&w, n, &all).unwrap();
            if !d.excluded.is_empty() || d.partition != delta_oracle(g, n) {
                failures.push(format!("(b) instance {i}: δ_{n} classes differ"));
            }
        }
    }
    let tiny: Vec<(usize, usize)> = vec![(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (7, 1)];
    let tiny_corpus = random_corpus(200, &tiny);
    for (i, g) in tiny_corpus.iter().enumerate() {
        assert!(g.vertex_count() <= 7);
        let o = automorphism_orbits(g, CAP).unwrap();
        let (v, e) = permutation_oracle(g);
        if o.vertex_orbits != v || o.edge_orbits != e {
            failures.push(format!("(c) instance {i}: orbits differ"));
        }
    }
    report(6, &failures, "(200 DAGs ≤ 12 vertices for (a)(b); 200 DAGs ≤ 7 vertices for (c))");
}

// Criterion 7 ---------------------------------------------------------------

fn cycle(n: usize) -> Digraph {
    Digraph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
}

fn doubled_complete(n: usize) -> Digraph {
    let edges: Vec<Edge> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    Digraph::from_edges(n, &edges).unwrap()
}

fn path(n: usize) -> Digraph {
    Digraph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
}

#[test]
fn criterion_07_transitivity() {
    let mut failures = Vec::new();
    for n in 2..=8 {
        if !check_distance_transitive(&cycle(n), CAP).unwrap() {
            failures.push(format!("directed {n}-cycle not distance-transitive"));
        }
    }
    for n in 2..=5 {
        if !check_distance_transitive(&doubled_complete(n), CAP).unwrap() {
            failures.push(format!("doubled K_{n} not distance-transitive"));
        }
    }
    for n in 2..=8 {
        if check_distance_transitive(&path(n), CAP).unwrap() {
            failures.push(format!("path on {n} vertices reported distance-transitive"));
        }
    }
    let mut corpus: Vec<(String, Digraph)> = Vec::new();
    corpus.extend((2..=8).map(|n| (format!("C{n}"), cycle(n))));
    corpus.extend((2..=5).map(|n| (format!("K{n} doubled"), doubled_complete(n))));
    corpus.extend((2..=8).map(|n| (format!("P{n}"), path(n))));
    corpus.extend((1..=4).map(|n| (format!("edgeless {n}"), Digraph::edgeless(n))));
    for (m, big_m) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 3)] {
        corpus.push((format!("Σ({m},{big_m})"), gen_sigma(m, big_m).unwrap().graph));
    }
    for (b, d) in [(1, 3), (2, 2), (2, 3), (3, 2)] {
        corpus.push((format!("tree {b},{d}"), gen_rooted_out_tree(b, d).unwrap().graph));
    }
    for (i, g) in random_corpus(40, &small_shapes()).into_iter().enumerate() {
        corpus.push((format!("random {i}"), g));
    }
    let mut dt_count = 0;
    for (name, g) in &corpus {
        let dt = check_distance_transitive(g, CAP).unwrap();
        let et = check_edge_transitive(g, CAP).unwrap();
        dt_count += usize::from(dt);
        if dt && !et {
            failures.push(format!("{name}: distance-transitive but not edge-transitive"));
        }
    }
    report(7, &failures, &format!("({} corpus digraphs, {dt_count} distance-transitive)", corpus.len()));
}

// Criterion 8 ---------------------------------------------------------------

#[test]
fn criterion_08_pq_checker() {
    let mut failures = Vec::new();
    for (p, q) in [(2, 2), (3, 3), (2, 3), (2, 5), (3, 5)] {
        let t = gen_rooted_out_tree(p * q, 3).unwrap();
        let gamma = descendant_window(&t, 0, 3).unwrap();
        let r = pq_consistency(&gamma, p, q).unwrap();
        if r.outcome != PqOutcome::Consistent(PqBranch::Tree) {
            failures.push(format!("{}-ary tree with p={p}, q={q}: {:?}", p * q, r.outcome));
        }
    }
    let w = gen_dmm(6, 6, 5).unwrap();
    let gamma = descendant_window(&w, shallowest_interior(&w).unwrap(), 4).unwrap();
    let r = pq_consistency(&gamma, 2, 3).unwrap();
    if r.outcome != PqOutcome::Inapplicable(REASON_P3_FAILS.into()) {
        failures.push(format!("D(6,6) with p=2, q=3: {:?}", r.outcome));
    }
    report(8, &failures, "(p²- and pq-ary trees, D(6,6))");
}

// Criterion 9 ---------------------------------------------------------------

#[test]
fn criterion_09_property_z_window_lemma() {
    let mut failures = Vec::new();
    let mut corpus: Vec<(String, Digraph)> = Vec::new();
    for (m, big_m, l) in [(1, 2, 3), (2, 2, 3), (2, 3, 3), (3, 4, 2), (2, 3, 4)] {
        corpus.push((format!("D({m},{big_m}) L={l}"), gen_dmm(m, big_m, l).unwrap().graph));
    }
    corpus.push(("F(2,3,3)".into(), gen_desc_of_line(2, 3, 3).unwrap().graph));
    corpus.push(("line".into(), gen_line_z(5).unwrap().graph));
    corpus.push(("regular tree".into(), gen_regular_tree(2, 3, 3).unwrap().graph));
    corpus.push(("tree".into(), gen_rooted_out_tree(2, 4).unwrap().graph));
    corpus.push(("Σ(2,3)".into(), gen_sigma(2, 3).unwrap().graph));
    corpus.push(("C4".into(), cycle(4)));
    for (i, g) in random_corpus(200, &small_shapes()).into_iter().enumerate() {
        corpus.push((format!("random {i}"), g));
    }
    let mut labeled = 0;
    for (name, g) in &corpus {
        let ZVerdict::Labeled(f) = z_labeling(g).verdict else { continue };
        if let Some((u, v)) = g.edges().find(|&(u, v)| f[v] != f[u] + 1) {
            failures.push(format!("{name}: labeling broken on ({u},{v})"));
        }
        let spanned: BTreeSet<i64> = f.iter().copied().collect();
        if spanned.len() < 2 {
            continue;
        }
        labeled += 1;
        let (classes, _) = reach_classes(g);
        for class in classes.classes() {
            let pairs: BTreeSet<(i64, i64)> = class.iter().map(|&(u, v)| (f[u], f[v])).collect();
            if pairs.len() != 1 {
                failures.push(format!("{name}: a reachability class spans level pairs {pairs:?}"));
            }
        }
    }
    // a -> b, a -> c, c -> d, d -> b
    let conflict = Digraph::from_edges(4, &[(0, 1), (0, 2), (2, 3), (3, 1)]).unwrap();
    match z_labeling(&conflict).verdict {
        ZVerdict::Conflict(walk) => {
            let closed = walk.vertices.first() == walk.vertices.last();
            let steps_ok = walk.vertices.windows(2).zip(&walk.forward).all(|(s, &fwd)| {
                if fwd {
                    conflict.has_edge(s[0], s[1])
                } else {
                    conflict.has_edge(s[1], s[0])
                }
            });
            let fwd = walk.forward.iter().filter(|&&x| x).count();
            let bwd = walk.forward.len() - fwd;
            if !(closed && steps_ok && fwd != bwd && walk.verify(&conflict)) {
                failures.push(format!("conflict witness not verified: {walk:?}"));
            }
        }
        ZVerdict::Labeled(f) => failures.push(format!("conflict digraph labeled {f:?}")),
    }
    report(9, &failures, &format!("({labeled} labeled digraphs spanning ≥ 2 levels)"));
}

// Criterion 10 --------------------------------------------------------------

fn run_pipeline(dir: &Path) {
    let bin = env!("CARGO_BIN_EXE_windigraph");
    let steps: [&[&str]; 5] = [
        &["generate", "dmm", "--m", "2", "--M", "3", "--levels", "3", "-o", "g.json"],
        &["analyze", "g.json", "--delta", "1", "--depth", "2", "--report", "report.json"],
        &["export-dot", "g.json", "--color-by", "level", "-o", "level.dot"],
        &["export-dot", "g.json", "--color-by", "delta", "-o", "delta.dot"],
        &["export-dot", "g.json", "--color-by", "alternet", "-o", "alternet.dot"],
    ];
    for args in steps {
        let status = Command::new(bin).args(args).current_dir(dir).output().unwrap();
        assert!(status.status.success(), "{args:?}: {}", String::from_utf8_lossy(&status.stderr));
    }
}

#[test]
fn criterion_10_determinism() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run_pipeline(a.path());
    run_pipeline(b.path());
    let mut failures = Vec::new();
    let files = ["g.json", "report.json", "level.dot", "delta.dot", "alternet.dot"];
    for f in files {
        let x = std::fs::read(a.path().join(f)).unwrap();
        let y = std::fs::read(b.path().join(f)).unwrap();
        if x != y {
            failures.push(format!("{f} differs between runs"));
        }
    }
    report(10, &failures, &format!("({} files compared)", files.len()));
}
