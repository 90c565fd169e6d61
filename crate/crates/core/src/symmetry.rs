//! Exact isomorphism and automorphism search for small digraphs.
//!
//! Both searches refine vertex colours by iterated signatures
//! `(colour, sorted out-colours, sorted in-colours)`, computed jointly on the
//! two graphs so that colour ids are comparable, then individualise one
//! vertex of the smallest non-singleton cell and backtrack. Every map found
//! at a leaf is checked edge by edge before it is returned.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::descent::RootedWindow;
use crate::error::{Error, Result};
use crate::graph::{Digraph, Edge, VertexId};
use crate::partition::Partition;

pub const DEFAULT_ISO_CAP: usize = 64;

type Colors = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IsoVerdict {
    /// `map[v]` is the image in the second digraph of vertex `v` of the first.
    Isomorphic(Vec<VertexId>),
    NotIsomorphic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoResult {
    pub verdict: IsoVerdict,
    pub nodes_explored: u64,
}

impl IsoResult {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self.verdict, IsoVerdict::Isomorphic(_))
    }
}

/// Optional vertex colours that an isomorphism must preserve, one vector per
/// digraph (for example a root flag, or levels).
#[derive(Clone, Debug, Default)]
pub struct IsoConstraints {
    pub colors: Option<(Vec<i64>, Vec<i64>)>,
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::IsoCapExceeded { vertices: n, cap })
    } else {
        Ok(())
    }
}

fn histogram(c: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &x in c {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

fn class_count(c: &[usize]) -> usize {
    histogram(c).len()
}

type Signature = (usize, Vec<usize>, Vec<usize>);

fn signatures(g: &Digraph, c: &[usize]) -> Vec<Signature> {
    g.vertices()
        .map(|v| {
            let mut outs: Vec<usize> = g.out_neighbors(v).iter().map(|&w| c[w]).collect();
            let mut ins: Vec<usize> = g.in_neighbors(v).iter().map(|&w| c[w]).collect();
            outs.sort_unstable();
            ins.sort_unstable();
            (c[v], outs, ins)
        })
        .collect()
}

/// Joint colour refinement to a stable partition. Returns `None` as soon as
/// the colour histograms of the two sides differ.
fn refine(g1: &Digraph, c1: &[usize], g2: &Digraph, c2: &[usize]) -> Option<(Colors, Colors)> {
    if histogram(c1) != histogram(c2) {
        return None;
    }
    let mut c1 = c1.to_vec();
    let mut c2 = c2.to_vec();
    let mut classes = class_count(&c1);
    loop {
        let s1 = signatures(g1, &c1);
        let s2 = signatures(g2, &c2);
        let mut all: Vec<&Signature> = s1.iter().chain(&s2).collect();
        all.sort();
        all.dedup();
        let id = |s: &Signature| all.binary_search(&s).unwrap();
        let n1: Colors = s1.iter().map(id).collect();
        let n2: Colors = s2.iter().map(id).collect();
        if histogram(&n1) != histogram(&n2) {
            return None;
        }
        let now = class_count(&n1);
        c1 = n1;
        c2 = n2;
        if now == classes {
            return Some((c1, c2));
        }
        classes = now;
    }
}

/// First colour (smallest class, then smallest id) with more than one vertex.
fn target_cell(c: &[usize]) -> Option<usize> {
    histogram(c)
        .into_iter()
        .filter(|&(_, size)| size > 1)
        .min_by_key(|&(color, size)| (size, color))
        .map(|(color, _)| color)
}

fn individualize(c: &[usize], v: VertexId) -> Colors {
    let fresh = c.iter().max().map_or(0, |m| m + 1);
    let mut out = c.to_vec();
    out[v] = fresh;
    out
}

fn verify(g1: &Digraph, g2: &Digraph, map: &[VertexId]) -> bool {
    let n = g1.vertex_count();
    if map.len() != n || g2.vertex_count() != n || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let mut hit = vec![false; n];
    for &x in map {
        if x >= n || std::mem::replace(&mut hit[x], true) {
            return false;
        }
    }
    g1.edges().all(|(u, v)| g2.has_edge(map[u], map[v]))
}

struct Search<'a> {
    g1: &'a Digraph,
    g2: &'a Digraph,
    nodes: u64,
}

impl Search<'_> {
    /// Any isomorphism mapping colour classes of `c1` onto those of `c2`.
    fn find(&mut self, c1: &[usize], c2: &[usize]) -> Option<Vec<VertexId>> {
        self.nodes += 1;
        let (c1, c2) = refine(self.g1, c1, self.g2, c2)?;
        match target_cell(&c1) {
            None => {
                // discrete: colours are bijective on both sides
                let mut by_color = vec![0; c2.len()];
                for (w, &c) in c2.iter().enumerate() {
                    by_color[c] = w;
                }
                let map: Vec<VertexId> = c1.iter().map(|&c| by_color[c]).collect();
                verify(self.g1, self.g2, &map).then_some(map)
            }
            Some(cell) => {
                let v = c1.iter().position(|&c| c == cell).unwrap();
                let next1 = individualize(&c1, v);
                for w in (0..c2.len()).filter(|&w| c2[w] == cell) {
                    if let Some(map) = self.find(&next1, &individualize(&c2, w)) {
                        return Some(map);
                    }
                }
                None
            }
        }
    }
}

fn initial_colors(n: usize, given: Option<&Vec<i64>>, partner: Option<&Vec<i64>>) -> Colors {
    match given {
        None => vec![0; n],
        Some(col) => {
            // rank jointly with the partner's values so ids agree across graphs
            let mut values: Vec<i64> = col.iter().chain(partner.into_iter().flatten()).copied().collect();
            values.sort_unstable();
            values.dedup();
            col.iter().map(|x| values.binary_search(x).unwrap()).collect()
        }
    }
}

/// Exact isomorphism test. With constraints, the map must also preserve the
/// given vertex colours.
pub fn is_isomorphic(g1: &Digraph, g2: &Digraph, constraints: &IsoConstraints, cap: usize) -> Result<IsoResult> {
    check_cap(g1.vertex_count().max(g2.vertex_count()), cap)?;
    let not = IsoResult {
        verdict: IsoVerdict::NotIsomorphic,
        nodes_explored: 0,
    };
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(not);
    }
    let (k1, k2) = match &constraints.colors {
        Some((a, b)) => {
            if a.len() != g1.vertex_count() || b.len() != g2.vertex_count() {
                return Err(Error::InvalidParameters("constraint colours have the wrong length".into()));
            }
            (initial_colors(a.len(), Some(a), Some(b)), initial_colors(b.len(), Some(b), Some(a)))
        }
        None => (vec![0; g1.vertex_count()], vec![0; g2.vertex_count()]),
    };
    let mut search = Search { g1, g2, nodes: 0 };
    let found = search.find(&k1, &k2);
    let verdict = match found {
        Some(map) if k1.iter().enumerate().all(|(v, &c)| k2[map[v]] == c) => IsoVerdict::Isomorphic(map),
        _ => IsoVerdict::NotIsomorphic,
    };
    Ok(IsoResult {
        verdict,
        nodes_explored: search.nodes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitStructure {
    /// Automorphisms as vertex maps; each has been verified.
    pub generators: Vec<Vec<VertexId>>,
    pub vertex_orbits: Partition<VertexId>,
    pub edge_orbits: Partition<Edge>,
    pub nodes_explored: u64,
}

impl OrbitStructure {
    /// Orbits on ordered vertex pairs, as `n * u + v` indices.
    pub fn pair_orbit_labels(&self, n: usize) -> Vec<usize> {
        let mut uf = UnionFind::<usize>::new(n * n);
        for gen in &self.generators {
            for u in 0..n {
                for v in 0..n {
                    uf.union(u * n + v, gen[u] * n + gen[v]);
                }
            }
        }
        uf.into_labeling()
    }
}

struct AutSearch<'a> {
    g: &'a Digraph,
    generators: Vec<Vec<VertexId>>,
    nodes: u64,
}

impl AutSearch<'_> {
    /// Collects generators of the pointwise stabiliser of the prefix encoded
    /// in `c`. Returns the number of generators found in this subtree.
    fn collect(&mut self, c: &[usize]) -> usize {
        self.nodes += 1;
        let Some((c, _)) = refine(self.g, c, self.g, c) else {
            return 0;
        };
        let Some(cell) = target_cell(&c) else {
            return 0;
        };
        let start = self.generators.len();
        let v = c.iter().position(|&x| x == cell).unwrap();
        let left = individualize(&c, v);
        self.collect(&left);
        let n = c.len();
        for w in (0..n).filter(|&w| c[w] == cell && w != v) {
            // orbit of v under the generators that fix this prefix
            let mut uf = UnionFind::<usize>::new(n);
            for gen in &self.generators[start..] {
                for x in 0..n {
                    uf.union(x, gen[x]);
                }
            }
            if uf.equiv(v, w) {
                continue;
            }
            let mut search = Search {
                g1: self.g,
                g2: self.g,
                nodes: 0,
            };
            let found = search.find(&left, &individualize(&c, w));
            self.nodes += search.nodes;
            if let Some(map) = found {
                self.generators.push(map);
            }
        }
        self.generators.len() - start
    }
}

/// Generators of `Aut(g)` (respecting optional initial colours) and the
/// resulting vertex and edge orbits.
pub fn automorphism_orbits_colored(g: &Digraph, colors: Option<&Vec<i64>>, cap: usize) -> Result<OrbitStructure> {
    let n = g.vertex_count();
    check_cap(n, cap)?;
    let c = initial_colors(n, colors, None);
    let mut search = AutSearch {
        g,
        generators: Vec::new(),
        nodes: 0,
    };
    search.collect(&c);
    for gen in &search.generators {
        assert!(verify(g, g, gen), "search produced a non-automorphism");
    }
    let mut uf = UnionFind::<usize>::new(n);
    for gen in &search.generators {
        for x in 0..n {
            uf.union(x, gen[x]);
        }
    }
    let labels = uf.into_labeling();
    let vertex_orbits = Partition::by_key(0..n, |&v| labels[v]);

    let m = g.edge_count();
    let mut ue = UnionFind::<usize>::new(m);
    for gen in &search.generators {
        for (i, (u, v)) in g.edges().enumerate() {
            ue.union(i, g.edge_index(gen[u], gen[v]).expect("automorphism maps edges to edges"));
        }
    }
    let elabels = ue.into_labeling();
    let edges: Vec<Edge> = g.edges().collect();
    let edge_orbits = Partition::by_key(edges.iter().copied(), |e| elabels[g.edge_index(e.0, e.1).unwrap()]);
    Ok(OrbitStructure {
        generators: search.generators,
        vertex_orbits,
        edge_orbits,
        nodes_explored: search.nodes,
    })
}

pub fn automorphism_orbits(g: &Digraph, cap: usize) -> Result<OrbitStructure> {
    automorphism_orbits_colored(g, None, cap)
}

/// `Aut(g)` is transitive on edges (vacuously so without edges).
pub fn check_edge_transitive(g: &Digraph, cap: usize) -> Result<bool> {
    Ok(automorphism_orbits(g, cap)?.edge_orbits.len() <= 1)
}

/// Directed distances from `u`; `usize::MAX` where unreachable.
fn distances_from(g: &Digraph, u: VertexId) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[u] = 0;
    let mut queue = std::collections::VecDeque::from([u]);
    while let Some(v) = queue.pop_front() {
        for &w in g.out_neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// For every `s ≥ 0`, the ordered pairs at directed distance exactly `s`
/// form a single orbit of `Aut(g)`.
pub fn check_distance_transitive(g: &Digraph, cap: usize) -> Result<bool> {
    let n = g.vertex_count();
    let orbits = automorphism_orbits(g, cap)?;
    let labels = orbits.pair_orbit_labels(n);
    let mut orbit_by_distance: BTreeMap<usize, usize> = BTreeMap::new();
    for u in 0..n {
        for (v, d) in distances_from(g, u).into_iter().enumerate() {
            if d == usize::MAX {
                continue;
            }
            let label = labels[u * n + v];
            if *orbit_by_distance.entry(d).or_insert(label) != label {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerTransitivityDiagnostic {
    /// Orbits of the window's root- and flag-preserving automorphisms, per layer.
    pub orbit_counts: Vec<usize>,
    pub nodes_explored: u64,
}

/// Orbit counts per layer under automorphisms of the window `Γ` fixing the
/// root and preserving layers and interior flags. Window automorphisms need
/// not extend to the infinite digraph; a count of 1 is only consistent with
/// layer transitivity.
pub fn layer_transitivity_diagnostic(gamma: &RootedWindow, cap: usize) -> Result<LayerTransitivityDiagnostic> {
    let layer_of = gamma.layer_of();
    let colors: Vec<i64> = gamma
        .window
        .graph
        .vertices()
        .map(|v| {
            let root = i64::from(v == gamma.root);
            let interior = i64::from(gamma.window.interior[v]);
            (layer_of[v] as i64) * 4 + interior * 2 + root
        })
        .collect();
    let orbits = automorphism_orbits_colored(&gamma.window.graph, Some(&colors), cap)?;
    let idx = orbits.vertex_orbits.class_index();
    let orbit_counts = gamma
        .layers
        .iter()
        .map(|layer| {
            let mut seen: Vec<usize> = layer.iter().map(|v| idx[v]).collect();
            seen.sort_unstable();
            seen.dedup();
            seen.len()
        })
        .collect();
    Ok(LayerTransitivityDiagnostic {
        orbit_counts,
        nodes_explored: orbits.nodes_explored,
    })
}
