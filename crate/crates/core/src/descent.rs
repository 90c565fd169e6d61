//! Descendant and ancestor sets, descendant windows and layer statistics.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Digraph, VertexId};
use crate::window::Window;

/// A vertex set together with a flag saying whether its computation
/// expanded a boundary vertex (whose neighbourhood may be incomplete).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    pub vertices: Vec<VertexId>,
    pub window_limited: bool,
}

#[derive(Clone, Copy)]
enum Dir {
    Out,
    In,
}

fn step(g: &Digraph, v: VertexId, dir: Dir) -> &[VertexId] {
    match dir {
        Dir::Out => g.out_neighbors(v),
        Dir::In => g.in_neighbors(v),
    }
}

/// Endpoints of `s`-arcs from `u`. The search runs over `(previous, current)`
/// states so that the no-backtracking rule `u_{i-1} != u_{i+1}` is applied
/// literally.
fn arc_endpoints(w: &Window, u: VertexId, s: usize, dir: Dir) -> Result<VertexSet> {
    if !w.graph.contains(u) {
        return Err(Error::UnknownVertex(u));
    }
    let mut states: BTreeSet<(Option<VertexId>, VertexId)> = BTreeSet::from([(None, u)]);
    let mut limited = false;
    for _ in 0..s {
        let mut next = BTreeSet::new();
        for &(prev, cur) in &states {
            limited |= !w.interior[cur];
            for &x in step(&w.graph, cur, dir) {
                if Some(x) != prev {
                    next.insert((Some(cur), x));
                }
            }
        }
        states = next;
    }
    let vertices: BTreeSet<VertexId> = states.into_iter().map(|(_, v)| v).collect();
    Ok(VertexSet {
        vertices: vertices.into_iter().collect(),
        window_limited: limited,
    })
}

/// `D^s(u)`: vertices reachable from `u` by an `s`-arc.
pub fn desc_s(w: &Window, u: VertexId, s: usize) -> Result<VertexSet> {
    arc_endpoints(w, u, s, Dir::Out)
}

/// `D^{-s}(u)`: vertices from which `u` is reachable by an `s`-arc.
pub fn anc_s(w: &Window, u: VertexId, s: usize) -> Result<VertexSet> {
    arc_endpoints(w, u, s, Dir::In)
}

fn closure(g: &Digraph, start: &[VertexId], dir: Dir) -> Vec<VertexId> {
    let mut seen = vec![false; g.vertex_count()];
    let mut stack: Vec<VertexId> = start.to_vec();
    while let Some(v) = stack.pop() {
        if !seen[v] {
            seen[v] = true;
            stack.extend(step(g, v, dir).iter().copied().filter(|&x| !seen[x]));
        }
    }
    g.vertices().filter(|&v| seen[v]).collect()
}

/// All descendants of `start` (including `start`). A vertex reachable by a
/// directed path is reachable by an arc, so plain reachability suffices.
pub fn descendants(g: &Digraph, start: &[VertexId]) -> Vec<VertexId> {
    closure(g, start, Dir::Out)
}

/// All ancestors of `start` (including `start`).
pub fn ancestors(g: &Digraph, start: &[VertexId]) -> Vec<VertexId> {
    closure(g, start, Dir::In)
}

/// Interior vertex with the smallest `(level, id)`; on a `D(m, M)` window this
/// is the vertex with the deepest descendant window.
pub fn shallowest_interior(w: &Window) -> Option<VertexId> {
    w.interior_vertices()
        .into_iter()
        .min_by_key(|&v| (w.level_of(v).unwrap_or(0), v))
}

/// The descendant subdigraph `Γ(α)` cut at depth `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedWindow {
    pub window: Window,
    pub root: VertexId,
    /// `layers[i]` is `Γ^i(α)` in the ids of `window`.
    pub layers: Vec<Vec<VertexId>>,
    pub depth: usize,
    /// Maps ids of `window` back to the ids of the source window.
    pub source: Vec<VertexId>,
}

impl RootedWindow {
    /// True iff no vertex lies in two layers.
    pub fn layers_disjoint(&self) -> bool {
        let total: usize = self.layers.iter().map(Vec::len).sum();
        total == self.window.vertex_count()
    }

    /// Smallest layer index containing each vertex.
    pub fn layer_of(&self) -> Vec<usize> {
        let mut of = vec![usize::MAX; self.window.vertex_count()];
        for (i, layer) in self.layers.iter().enumerate() {
            for &v in layer {
                of[v] = of[v].min(i);
            }
        }
        of
    }

    pub fn out_valency(&self) -> usize {
        self.window.graph.out_degree(self.root)
    }
}

/// Extracts `Γ(α)` to depth `d`: the induced subdigraph on `D^i(α)`, `i ≤ d`.
/// Every layer above `d` must consist of interior vertices, so that the next
/// layer is complete. Vertices at depth `< d` keep their interior flag; the
/// last layer is boundary.
pub fn descendant_window(w: &Window, alpha: VertexId, d: usize) -> Result<RootedWindow> {
    if !w.graph.contains(alpha) {
        return Err(Error::UnknownVertex(alpha));
    }
    if d == 0 {
        return Err(Error::InvalidParameters("depth must be at least 1".into()));
    }
    let mut layers_src = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let layer = desc_s(w, alpha, i)?.vertices;
        if i < d {
            if let Some(&bad) = layer.iter().find(|&&v| !w.interior[v]) {
                return Err(Error::WindowTooSmall { depth: i, vertex: bad });
            }
        }
        layers_src.push(layer);
    }
    let all: Vec<VertexId> = layers_src.iter().flatten().copied().collect();
    let (mut sub, source) = w.induced(&all)?;
    let mut new_id = vec![usize::MAX; w.vertex_count()];
    for (i, &v) in source.iter().enumerate() {
        new_id[v] = i;
    }
    let layers: Vec<Vec<VertexId>> = layers_src
        .iter()
        .map(|l| l.iter().map(|&v| new_id[v]).collect())
        .collect();
    let rooted = RootedWindow {
        root: new_id[alpha],
        layers,
        depth: d,
        source,
        window: sub.clone(),
    };
    let layer_of = rooted.layer_of();
    for v in sub.graph.vertices() {
        sub.interior[v] = sub.interior[v] && layer_of[v] < d;
    }
    // levels only make sense when every vertex sits in exactly one layer
    sub.level = None;
    sub.spec = None;
    if rooted.layers_disjoint() {
        let level: Vec<i64> = layer_of.iter().map(|&l| l as i64).collect();
        let candidate = Window {
            level: Some(level),
            ..sub.clone()
        };
        if candidate.check_levels().is_ok() {
            sub = candidate;
        }
    }
    Ok(RootedWindow {
        window: sub,
        ..rooted
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "layer")]
pub enum P3Verdict {
    /// Layer sizes strictly increase through the given depth.
    HoldsToDepth(usize),
    /// First layer `i ≥ 1` with `|Γ^i| ≤ |Γ^{i-1}|`.
    FailsAt(usize),
    Inconclusive,
}

/// Two vertices of one layer with different in-valency inside `Γ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonUniformLayer {
    pub layer: usize,
    pub u: VertexId,
    pub in_u: usize,
    pub v: VertexId,
    pub in_v: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerProfile {
    pub depth: usize,
    pub out_valency: usize,
    pub layer_sizes: Vec<usize>,
    /// `in_valencies[i - 1]` is `r_i`; stops before the first non-uniform layer.
    pub in_valencies: Vec<usize>,
    #[serde(rename = "N")]
    pub stabilization: Option<usize>,
    #[serde(rename = "r_N")]
    pub ultimate_in_valency: Option<usize>,
    #[serde(rename = "P3")]
    pub p3: P3Verdict,
    pub refutation: Option<NonUniformLayer>,
}

impl LayerProfile {
    /// `r_i` for `1 ≤ i`, if determined.
    pub fn r(&self, i: usize) -> Option<usize> {
        i.checked_sub(1).and_then(|j| self.in_valencies.get(j)).copied()
    }

    /// Layers `i` where `|Γ^i|·m ≠ |Γ^{i+1}|·r_{i+1}`.
    pub fn counting_identity_failures(&self) -> Vec<usize> {
        (0..self.in_valencies.len())
            .filter(|&i| {
                self.layer_sizes[i] * self.out_valency
                    != self.layer_sizes[i + 1] * self.in_valencies[i]
            })
            .collect()
    }
}

/// Layer sizes, in-valency sequence, stabilisation index and the P3 verdict
/// of a descendant window.
///
/// `r_i` counts in-neighbours in `Γ^{i-1}`; these are complete because every
/// layer above the cut is interior. `N` is reported only when the sequence is
/// constant on a final segment of at least three terms.
pub fn layer_profile(gamma: &RootedWindow) -> LayerProfile {
    let g = &gamma.window.graph;
    let depth = gamma.depth;
    let layer_sizes: Vec<usize> = gamma.layers.iter().map(Vec::len).collect();
    let mut in_layer = vec![false; g.vertex_count()];
    let mut in_valencies = Vec::new();
    let mut refutation = None;
    for i in 1..=depth {
        in_layer.iter_mut().for_each(|b| *b = false);
        for &u in &gamma.layers[i - 1] {
            in_layer[u] = true;
        }
        let counts: Vec<(VertexId, usize)> = gamma.layers[i]
            .iter()
            .map(|&v| (v, g.in_neighbors(v).iter().filter(|&&u| in_layer[u]).count()))
            .collect();
        let (u, in_u) = counts[0];
        if let Some(&(v, in_v)) = counts.iter().find(|c| c.1 != in_u) {
            refutation = Some(NonUniformLayer {
                layer: i,
                u,
                in_u,
                v,
                in_v,
            });
            break;
        }
        in_valencies.push(in_u);
    }

    let mut stabilization = None;
    if refutation.is_none() {
        if let Some(&last) = in_valencies.last() {
            let start = in_valencies
                .iter()
                .rposition(|&r| r != last)
                .map_or(0, |p| p + 1);
            if in_valencies.len() - start >= 3 {
                stabilization = Some(start + 1);
            }
        }
    }

    let p3 = if depth == 0 {
        P3Verdict::Inconclusive
    } else {
        match (1..=depth).find(|&i| layer_sizes[i] <= layer_sizes[i - 1]) {
            Some(i) => P3Verdict::FailsAt(i),
            None => P3Verdict::HoldsToDepth(depth),
        }
    };

    LayerProfile {
        depth,
        out_valency: gamma.out_valency(),
        layer_sizes,
        ultimate_in_valency: stabilization.map(|n| in_valencies[n - 1]),
        in_valencies,
        stabilization,
        p3,
        refutation,
    }
}
