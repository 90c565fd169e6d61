//! Immutable loop-free digraphs on dense vertex ids.
//!
//! Vertices are `0..n`. Both adjacency directions are stored as sorted,
//! deduplicated lists so that membership tests are binary searches and edge
//! iteration order is lexicographic.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type Edge = (VertexId, VertexId);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    out_adj: Vec<Vec<VertexId>>,
    in_adj: Vec<Vec<VertexId>>,
    edge_count: usize,
}

/// Outcome of [`build_digraph`]: the graph plus how many repeated edges were dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Built {
    pub graph: Digraph,
    pub duplicates: usize,
}

/// Builds a digraph on `0..vertex_count`, rejecting loops and out-of-range
/// endpoints and silently merging repeated edges (they are counted).
pub fn build_digraph(vertex_count: usize, edges: &[Edge]) -> Result<Built> {
    let mut out_adj = vec![Vec::new(); vertex_count];
    for &(u, v) in edges {
        if u >= vertex_count || v >= vertex_count {
            return Err(Error::EndpointOutOfRange { u, v, vertex_count });
        }
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        out_adj[u].push(v);
    }
    let mut duplicates = 0;
    for list in &mut out_adj {
        let before = list.len();
        list.sort_unstable();
        list.dedup();
        duplicates += before - list.len();
    }
    Ok(Built {
        graph: Digraph::from_sorted_out(out_adj),
        duplicates,
    })
}

impl Digraph {
    /// Empty digraph on `n` vertices.
    pub fn edgeless(n: usize) -> Self {
        Self::from_sorted_out(vec![Vec::new(); n])
    }

    /// Shorthand for tests and generators whose edges are known to be valid.
    pub fn from_edges(vertex_count: usize, edges: &[Edge]) -> Result<Self> {
        build_digraph(vertex_count, edges).map(|b| b.graph)
    }

    // `out_adj` lists must already be sorted, deduplicated and loop-free.
    fn from_sorted_out(out_adj: Vec<Vec<VertexId>>) -> Self {
        let n = out_adj.len();
        let mut in_adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, outs) in out_adj.iter().enumerate() {
            edge_count += outs.len();
            for &v in outs {
                in_adj[v].push(u);
            }
        }
        // pushed in increasing u, so already sorted
        Self {
            out_adj,
            in_adj,
            edge_count,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_count()
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.vertex_count() && self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v < self.vertex_count()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    /// Position of `(u, v)` in the lexicographic edge order.
    pub fn edge_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let pos = self.out_adj.get(u)?.binary_search(&v).ok()?;
        Some(self.edge_offsets()[u] + pos)
    }

    /// `offsets[u]` is the index of the first edge with tail `u`.
    pub fn edge_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.vertex_count() + 1);
        let mut acc = 0;
        for outs in &self.out_adj {
            offsets.push(acc);
            acc += outs.len();
        }
        offsets.push(acc);
        offsets
    }

    /// Undirected neighbours (union of in- and out-neighbours), sorted.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut all: Vec<_> = self.out_adj[v]
            .iter()
            .chain(self.in_adj[v].iter())
            .copied()
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[VertexId]) -> Self {
        let n = self.vertex_count();
        let mut out_adj = vec![Vec::new(); n];
        for (u, v) in self.edges() {
            out_adj[perm[u]].push(perm[v]);
        }
        for list in &mut out_adj {
            list.sort_unstable();
        }
        Self::from_sorted_out(out_adj)
    }
}

/// Full induced subdigraph on `subset`. New ids follow the ascending order of
/// the original ids; the returned vector maps new id to original id.
pub fn induced_subdigraph(g: &Digraph, subset: &[VertexId]) -> Result<(Digraph, Vec<VertexId>)> {
    let mut keep: Vec<VertexId> = subset.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if let Some(&bad) = keep.iter().find(|&&v| !g.contains(v)) {
        return Err(Error::UnknownVertex(bad));
    }
    let mut new_id = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in keep.iter().enumerate() {
        new_id[v] = i;
    }
    let out_adj = keep
        .iter()
        .map(|&v| {
            g.out_neighbors(v)
                .iter()
                .filter_map(|&w| (new_id[w] != usize::MAX).then_some(new_id[w]))
                .collect()
        })
        .collect();
    Ok((Digraph::from_sorted_out(out_adj), keep))
}

/// Connected components of the underlying undirected graph of `g` with the
/// vertices of `removed` deleted. Components are sorted internally and listed
/// by smallest member.
pub fn components_after_removal(g: &Digraph, removed: &[VertexId]) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let mut gone = vec![false; n];
    for &v in removed {
        if v < n {
            gone[v] = true;
        }
    }
    let mut seen = gone.clone();
    let mut components = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &w in g.out_neighbors(v).iter().chain(g.in_neighbors(v)) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components
}
