//! The reachability relation 𝒜 on edges, alternets, the digraph of
//! alternets and membership in the class 𝒞 of finite alternet types.
//!
//! Two edges are 𝒜-related when an alternating walk (edges alternately
//! traversed forwards and backwards) leads from one to the other. Edges with
//! a common head, or a common tail, are one step apart, and any chain of such
//! steps can be rearranged into an alternating walk, so 𝒜 is the union
//! closure of the two incidences.

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Digraph, Edge, VertexId};
use crate::partition::Partition;
use crate::relations::group_by_signature;
use crate::symmetry::{check_edge_transitive, DEFAULT_ISO_CAP};
use crate::window::Window;

/// A digraph with a declared source/sink bipartition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteDigraph {
    pub graph: Digraph,
    pub sources: Vec<VertexId>,
    pub sinks: Vec<VertexId>,
}

impl BipartiteDigraph {
    pub fn into_window(self) -> Window {
        Window::complete(self.graph)
    }
}

/// Edge classes of 𝒜, plus the class index of every edge in lexicographic
/// edge order.
pub fn reach_classes(g: &Digraph) -> (Partition<Edge>, Vec<usize>) {
    let offsets = g.edge_offsets();
    let m = g.edge_count();
    let mut uf = UnionFind::<usize>::new(m);
    for v in g.vertices() {
        // out-edges of v are contiguous; in-edges need lookups
        for i in offsets[v] + 1..offsets[v + 1] {
            uf.union(offsets[v], i);
        }
        let ins: Vec<usize> = g
            .in_neighbors(v)
            .iter()
            .map(|&u| g.edge_index(u, v).expect("edge exists"))
            .collect();
        for pair in ins.windows(2) {
            uf.union(pair[0], pair[1]);
        }
    }
    let labels = uf.into_labeling();
    let edges: Vec<Edge> = g.edges().collect();
    let partition = Partition::by_key(edges, |e| labels[g.edge_index(e.0, e.1).unwrap()]);
    let idx = partition.class_index();
    let class_of = g.edges().map(|e| idx[&e]).collect();
    (partition, class_of)
}

/// 𝒜 as a partition of the edge set.
pub fn reach_partition(g: &Digraph) -> Partition<Edge> {
    reach_classes(g).0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Alternet {
    pub edges: Vec<Edge>,
    pub sources: Vec<VertexId>,
    pub sinks: Vec<VertexId>,
    /// Every member vertex is interior.
    pub complete: bool,
    /// Sources and sinks do not overlap.
    pub bipartite: bool,
}

impl Alternet {
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut all: Vec<_> = self.sources.iter().chain(&self.sinks).copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// The alternet as a standalone digraph; returns the digraph and the
    /// bipartition in its ids (local ids follow ascending original ids).
    pub fn to_bipartite(&self) -> BipartiteDigraph {
        let verts = self.vertices();
        let local = |v: VertexId| verts.binary_search(&v).unwrap();
        let edges: Vec<Edge> = self.edges.iter().map(|&(u, v)| (local(u), local(v))).collect();
        BipartiteDigraph {
            graph: Digraph::from_edges(verts.len(), &edges).expect("edges of a loop-free digraph"),
            sources: self.sources.iter().map(|&v| local(v)).collect(),
            sinks: self.sinks.iter().map(|&v| local(v)).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "signal")]
pub enum UniversalitySignal {
    /// The 2-arc `u -> v -> x` has both edges in one 𝒜-class, so 𝒜 is
    /// universal on any digraph containing this window.
    TwoArcInClass { u: VertexId, v: VertexId, x: VertexId },
    /// No such 2-arc inside the window; says nothing beyond it.
    NoTwoArcInWindow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlternetAnalysis {
    pub alternets: Vec<Alternet>,
    pub signal: UniversalitySignal,
}

fn signal_from(g: &Digraph, class_of: &[usize]) -> UniversalitySignal {
    let offsets = g.edge_offsets();
    for u in g.vertices() {
        for (i, &v) in g.out_neighbors(u).iter().enumerate() {
            let c = class_of[offsets[u] + i];
            for (j, &x) in g.out_neighbors(v).iter().enumerate() {
                if x != u && class_of[offsets[v] + j] == c {
                    return UniversalitySignal::TwoArcInClass { u, v, x };
                }
            }
        }
    }
    UniversalitySignal::NoTwoArcInWindow
}

/// Scans every 2-arc for both edges lying in one 𝒜-class.
pub fn universality_signal(g: &Digraph) -> UniversalitySignal {
    signal_from(g, &reach_classes(g).1)
}

/// One alternet per 𝒜-class, in the canonical class order.
pub fn alternets(w: &Window) -> AlternetAnalysis {
    let (classes, class_of) = reach_classes(&w.graph);
    let alternets = classes
        .classes()
        .iter()
        .map(|edges| {
            let mut sources: Vec<VertexId> = edges.iter().map(|e| e.0).collect();
            let mut sinks: Vec<VertexId> = edges.iter().map(|e| e.1).collect();
            sources.sort_unstable();
            sources.dedup();
            sinks.sort_unstable();
            sinks.dedup();
            let complete = sources.iter().chain(&sinks).all(|&v| w.interior[v]);
            let bipartite = sources.iter().all(|v| sinks.binary_search(v).is_err());
            Alternet {
                edges: edges.clone(),
                sources,
                sinks,
                complete,
                bipartite,
            }
        })
        .collect();
    AlternetAnalysis {
        alternets,
        signal: signal_from(&w.graph, &class_of),
    }
}

/// The digraph of alternets `Al(D)` on the complete alternets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlternetGraph {
    /// Indices (into the alternet list) of the complete alternets.
    pub vertices: Vec<usize>,
    /// `(A, B)` pairs of alternet indices, sorted.
    pub edges: Vec<(usize, usize)>,
    /// `|Y_A ∩ X_B|` for each edge.
    pub attachment_sizes: Vec<usize>,
    /// Alternets left out because they touch the boundary.
    pub excluded: Vec<usize>,
    /// Every attachment has size at most 1 (vacuously true without edges).
    pub loose_attachment: bool,
}

impl AlternetGraph {
    pub fn in_degree(&self, a: usize) -> usize {
        self.edges.iter().filter(|e| e.1 == a).count()
    }

    pub fn out_degree(&self, a: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == a).count()
    }
}

pub fn alternet_graph(w: &Window, alts: &[Alternet]) -> AlternetGraph {
    let n = w.vertex_count();
    let mut sink_of = vec![None; n];
    let mut source_of = vec![None; n];
    for (i, a) in alts.iter().enumerate() {
        for &y in &a.sinks {
            sink_of[y] = Some(i);
        }
        for &x in &a.sources {
            source_of[x] = Some(i);
        }
    }
    let mut counts: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
    for v in 0..n {
        if let (Some(a), Some(b)) = (sink_of[v], source_of[v]) {
            if a != b && alts[a].complete && alts[b].complete {
                *counts.entry((a, b)).or_insert(0) += 1;
            }
        }
    }
    let vertices = (0..alts.len()).filter(|&i| alts[i].complete).collect();
    let excluded = (0..alts.len()).filter(|&i| !alts[i].complete).collect();
    let loose_attachment = counts.values().all(|&c| c <= 1);
    AlternetGraph {
        vertices,
        edges: counts.keys().copied().collect(),
        attachment_sizes: counts.values().copied().collect(),
        excluded,
        loose_attachment,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCReport {
    pub finite_nonempty: bool,
    pub edge_transitive: bool,
    pub delta_nontrivial: bool,
    /// Sizes of the equal-out-neighbourhood classes of the sources.
    pub delta_class_sizes: Vec<usize>,
    pub sink_count: usize,
    /// Every δ-class of the sources has exactly `|Y|` members.
    pub sinks_match_delta_classes: bool,
    pub member: bool,
}

/// Evaluates the defining conditions of the class 𝒞 on a complete alternet.
pub fn class_c_membership(alt: &Alternet) -> Result<ClassCReport> {
    class_c_membership_with_cap(alt, DEFAULT_ISO_CAP)
}

pub fn class_c_membership_with_cap(alt: &Alternet, cap: usize) -> Result<ClassCReport> {
    if !alt.complete {
        return Err(Error::IncompleteAlternet);
    }
    let b = alt.to_bipartite();
    let finite_nonempty = !b.sources.is_empty() && !b.sinks.is_empty();
    let edge_transitive = check_edge_transitive(&b.graph, cap)?;
    let delta = group_by_signature(
        b.sources
            .iter()
            .map(|&x| (x, b.graph.out_neighbors(x).to_vec())),
    );
    let mut delta_class_sizes: Vec<usize> = delta.classes().iter().map(Vec::len).collect();
    delta_class_sizes.sort_unstable();
    let sink_count = b.sinks.len();
    let sinks_match = delta_class_sizes.iter().all(|&s| s == sink_count);
    let delta_nontrivial = !delta.is_trivial();
    Ok(ClassCReport {
        finite_nonempty,
        edge_transitive,
        delta_nontrivial,
        delta_class_sizes,
        sink_count,
        sinks_match_delta_classes: sinks_match,
        member: finite_nonempty && edge_transitive && delta_nontrivial && sinks_match,
    })
}
