//! The equivalences δ_n (equal n-step descendant sets), ρ (equal ancestor
//! sets `k - 1` layers up) and R (sink set of one alternet meeting the source
//! set of the next).

use std::collections::{BTreeMap, HashMap};
use std::hash::Hasher;

use fnv::FnvHasher;
use serde::Serialize;

use crate::descent::{ancestors, desc_s, descendants, RootedWindow};
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::partition::Partition;
use crate::reachability::{alternet_graph, alternets};
use crate::window::Window;

fn signature_hash(sig: &[VertexId]) -> u64 {
    let mut h = FnvHasher::default();
    h.write_usize(sig.len());
    for &v in sig {
        h.write_u64(v as u64);
    }
    h.finish()
}

/// Groups items by their signature: bucketed by a 64-bit FNV hash, then
/// separated by exact comparison inside each bucket.
pub fn group_by_signature(items: impl IntoIterator<Item = (VertexId, Vec<VertexId>)>) -> Partition<VertexId> {
    let mut buckets: HashMap<u64, Vec<(Vec<VertexId>, Vec<VertexId>)>> = HashMap::new();
    for (v, sig) in items {
        let bucket = buckets.entry(signature_hash(&sig)).or_default();
        match bucket.iter_mut().find(|(s, _)| *s == sig) {
            Some((_, members)) => members.push(v),
            None => bucket.push((sig, vec![v])),
        }
    }
    let classes = buckets
        .into_values()
        .flat_map(|b| b.into_iter().map(|(_, members)| members))
        .collect();
    Partition::from_classes(classes).expect("each vertex grouped once")
}

/// δ_n classes together with the domain vertices that had to be left out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaPartition {
    pub n: usize,
    pub partition: Partition<VertexId>,
    /// Vertices whose `n`-step cone leaves the interior of the window.
    pub excluded: Vec<VertexId>,
}

impl DeltaPartition {
    pub fn is_nontrivial(&self) -> bool {
        !self.partition.is_trivial()
    }
}

/// δ_n on `domain`: `u ~ v` iff `D^n(u) = D^n(v)`. Vertices whose cone
/// reaches through a boundary vertex before depth `n` are excluded.
pub fn delta_n_partition(w: &Window, n: usize, domain: &[VertexId]) -> Result<DeltaPartition> {
    if n == 0 {
        return Err(Error::InvalidParameters("δ_n needs n >= 1".into()));
    }
    let mut items = Vec::new();
    let mut excluded = Vec::new();
    let mut domain = domain.to_vec();
    domain.sort_unstable();
    domain.dedup();
    for v in domain {
        let d = desc_s(w, v, n)?;
        if d.window_limited {
            excluded.push(v);
        } else {
            items.push((v, d.vertices));
        }
    }
    Ok(DeltaPartition {
        n,
        partition: group_by_signature(items),
        excluded,
    })
}

/// δ_n on every vertex, reading the window's adjacency as it stands. Boundary
/// vertices are grouped by their truncated cones; this is the partition used
/// for quotients and colourings of a whole window.
pub fn delta_n_window_partition(w: &Window, n: usize) -> Result<Partition<VertexId>> {
    if n == 0 {
        return Err(Error::InvalidParameters("δ_n needs n >= 1".into()));
    }
    let items = w
        .graph
        .vertices()
        .map(|v| desc_s(w, v, n).map(|d| (v, d.vertices)))
        .collect::<Result<Vec<_>>>()?;
    Ok(group_by_signature(items))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityReport {
    pub n: usize,
    pub pairs_checked: usize,
    /// Pairs related by δ_n but not by δ_{n+1}.
    pub violations: Vec<(VertexId, VertexId)>,
    pub excluded: Vec<VertexId>,
}

/// Checks `δ_n(u, v) ⇒ δ_{n+1}(u, v)` on the domain vertices whose cones fit
/// to depth `n + 1`.
pub fn delta_monotonicity_check(w: &Window, n: usize, domain: &[VertexId]) -> Result<MonotonicityReport> {
    let next = delta_n_partition(w, n + 1, domain)?;
    let fitting: Vec<VertexId> = next.partition.domain();
    let here = delta_n_partition(w, n, &fitting)?;
    let next_idx = next.partition.class_index();
    let mut pairs_checked = 0;
    let mut violations = Vec::new();
    for class in here.partition.classes() {
        for (i, &u) in class.iter().enumerate() {
            for &v in &class[i + 1..] {
                pairs_checked += 1;
                if next_idx[&u] != next_idx[&v] {
                    violations.push((u, v));
                }
            }
        }
    }
    Ok(MonotonicityReport {
        n,
        pairs_checked,
        violations,
        excluded: next.excluded,
    })
}

/// One row of the G3 table: does every `z ∈ Γ(x)` share `x`'s first-layer
/// ancestors, for all `x` in this layer?
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct G3Row {
    pub layer: usize,
    pub holds: bool,
    /// `(x, z)` with differing first-layer ancestor sets.
    pub witness: Option<(VertexId, VertexId)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct G3Result {
    /// Smallest `k` such that every tested layer `l` with `k ≤ l ≤ depth - 1`
    /// holds. `None` is a statement about this window only.
    pub k: Option<usize>,
    pub table: Vec<G3Row>,
}

fn first_layer_ancestors(gamma: &RootedWindow, first: &[bool], v: VertexId) -> Vec<VertexId> {
    ancestors(&gamma.window.graph, &[v])
        .into_iter()
        .filter(|&a| first[a])
        .collect()
}

/// Window-minimal G3 constant of a descendant window.
pub fn find_g3_k(gamma: &RootedWindow) -> G3Result {
    let g = &gamma.window.graph;
    let mut first = vec![false; g.vertex_count()];
    if let Some(l1) = gamma.layers.get(1) {
        for &v in l1 {
            first[v] = true;
        }
    }
    let anc1: Vec<Vec<VertexId>> = g
        .vertices()
        .map(|v| first_layer_ancestors(gamma, &first, v))
        .collect();
    let mut table = Vec::new();
    for layer in 1..gamma.depth {
        let mut witness = None;
        'scan: for &x in &gamma.layers[layer] {
            for z in descendants(g, &[x]) {
                if anc1[z] != anc1[x] {
                    witness = Some((x, z));
                    break 'scan;
                }
            }
        }
        table.push(G3Row {
            layer,
            holds: witness.is_none(),
            witness,
        });
    }
    // rows are layers 1..depth-1; k is where the final run of passing rows starts
    let k = match table.iter().rposition(|r| !r.holds) {
        None => Some(1),
        Some(p) if p + 1 < table.len() => Some(table[p + 1].layer),
        Some(_) => None,
    };
    G3Result { k, table }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RhoContext {
    pub k: usize,
    pub base_layer: usize,
}

/// ρ on layer `Γ^l(α)`: `x ~ y` iff they have the same ancestors in layer
/// `l - k + 1`.
pub fn rho_partition(gamma: &RootedWindow, ctx: RhoContext) -> Result<Partition<VertexId>> {
    let (k, l) = (ctx.k, ctx.base_layer);
    if k == 0 || l < k || l > gamma.depth {
        return Err(Error::LayerOutOfRange {
            layer: l,
            min: k.max(1),
            max: gamma.depth,
        });
    }
    let g = &gamma.window.graph;
    let mut target = vec![false; g.vertex_count()];
    for &v in &gamma.layers[l - k + 1] {
        target[v] = true;
    }
    let items = gamma.layers[l].iter().map(|&x| {
        let sig: Vec<VertexId> = ancestors(g, &[x]).into_iter().filter(|&a| target[a]).collect();
        (x, sig)
    });
    Ok(group_by_signature(items))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoTreeReport {
    pub k: usize,
    pub base_layer: usize,
    /// Every ρ-class above the base layer has exactly one parent class.
    pub is_tree_to_window: bool,
    /// Out-valency (number of child classes) of each class below the cut,
    /// as `valency -> count`.
    pub out_valency_multiset: BTreeMap<usize, usize>,
    pub constant_out_valency: Option<usize>,
    /// `(x, w)`: `w` descends from the ρ-class of `x` but its own class does not.
    pub containment_violations: Vec<(VertexId, VertexId)>,
    pub class_count: usize,
}

/// Builds the quotient of layers `2k - 1 ..= depth` by ρ and checks that it
/// is a forest of rooted trees, recording the out-valency of each class.
/// Also checks that for a ρ-class `v` and `w ∈ Γ(v)`, `[w]_ρ ⊆ Γ(v)`.
pub fn rho_quotient_tree_check(gamma: &RootedWindow, k: usize) -> Result<RhoTreeReport> {
    let base = 2 * k - 1;
    if k == 0 || base > gamma.depth {
        return Err(Error::LayerOutOfRange {
            layer: base,
            min: 1,
            max: gamma.depth,
        });
    }
    let g = &gamma.window.graph;
    let n = g.vertex_count();
    // per layer, the ρ-classes and a vertex -> (layer, class) map
    let mut layer_classes: Vec<Vec<Vec<VertexId>>> = Vec::new();
    let mut class_of: Vec<Option<(usize, usize)>> = vec![None; n];
    for l in base..=gamma.depth {
        let p = rho_partition(gamma, RhoContext { k, base_layer: l })?;
        for (c, class) in p.classes().iter().enumerate() {
            for &v in class {
                class_of[v] = Some((l, c));
            }
        }
        layer_classes.push(p.classes().to_vec());
    }

    let mut is_tree = true;
    let mut multiset = BTreeMap::new();
    let mut class_count = 0;
    for (i, classes) in layer_classes.iter().enumerate() {
        let l = base + i;
        class_count += classes.len();
        for class in classes {
            if l > base {
                let mut parents: Vec<usize> = class
                    .iter()
                    .flat_map(|&v| g.in_neighbors(v))
                    .filter_map(|&u| class_of[u].filter(|&(lu, _)| lu + 1 == l).map(|c| c.1))
                    .collect();
                parents.sort_unstable();
                parents.dedup();
                is_tree &= parents.len() == 1;
            }
            if l < gamma.depth {
                let mut children: Vec<usize> = class
                    .iter()
                    .flat_map(|&v| g.out_neighbors(v))
                    .filter_map(|&w| class_of[w].filter(|&(lw, _)| lw == l + 1).map(|c| c.1))
                    .collect();
                children.sort_unstable();
                children.dedup();
                *multiset.entry(children.len()).or_insert(0) += 1;
            }
        }
    }
    let constant_out_valency = match multiset.len() {
        1 => multiset.keys().next().copied(),
        _ => None,
    };

    let mut containment_violations = Vec::new();
    for classes in &layer_classes {
        for class in classes {
            let below = descendants(g, class);
            let mut inside = vec![false; n];
            for &v in &below {
                inside[v] = true;
            }
            for &w in &below {
                let Some((lw, cw)) = class_of[w] else { continue };
                let w_class = &layer_classes[lw - base][cw];
                if w_class.iter().any(|&y| !inside[y]) {
                    containment_violations.push((class[0], w));
                }
            }
        }
    }

    Ok(RhoTreeReport {
        k,
        base_layer: base,
        is_tree_to_window: is_tree,
        out_valency_multiset: multiset,
        constant_out_valency,
        containment_violations,
        class_count,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RPartition {
    pub partition: Partition<VertexId>,
    /// Interior vertices not covered by an edge of the alternet digraph
    /// between complete alternets.
    pub excluded: Vec<VertexId>,
}

/// R-classes: `Y_A ∩ X_B` over edges `(A, B)` of the alternet digraph,
/// restricted to complete alternets.
pub fn r_partition(w: &Window) -> RPartition {
    let alts = alternets(w);
    let al = alternet_graph(w, &alts.alternets);
    let mut classes = Vec::new();
    let mut covered = vec![false; w.vertex_count()];
    for &(a, b) in &al.edges {
        let ya = &alts.alternets[a].sinks;
        let xb = &alts.alternets[b].sources;
        let meet: Vec<VertexId> = ya.iter().copied().filter(|v| xb.binary_search(v).is_ok()).collect();
        for &v in &meet {
            covered[v] = true;
        }
        classes.push(meet);
    }
    let excluded = w
        .interior_vertices()
        .into_iter()
        .filter(|&v| !covered[v])
        .collect();
    RPartition {
        partition: Partition::from_classes(classes).expect("a vertex is a sink of one alternet and a source of one"),
        excluded,
    }
}
