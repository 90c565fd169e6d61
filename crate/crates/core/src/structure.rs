//! Property-Z labelings and the structural checks on descendant windows:
//! gradedness (P0), self-similarity (P1), strict layer growth (P3), the
//! splitting condition C, block systems in the first layer and the
//! consistency checker for out-valency `p·q`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::descent::{desc_s, descendant_window, descendants, layer_profile, P3Verdict, RootedWindow};
use crate::error::{Error, Result};
use crate::graph::{components_after_removal, induced_subdigraph, Digraph, VertexId};
use crate::relations::delta_n_partition;
use crate::symmetry::{is_isomorphic, IsoConstraints};

/// A closed walk in the underlying graph; `forward[i]` says whether step
/// `vertices[i] -> vertices[i + 1]` follows an edge in its direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConflictWalk {
    pub vertices: Vec<VertexId>,
    pub forward: Vec<bool>,
    pub forward_count: usize,
    pub backward_count: usize,
}

impl ConflictWalk {
    /// The walk is closed, each step is an edge in the stated direction, and
    /// the two counts differ.
    pub fn verify(&self, g: &Digraph) -> bool {
        let v = &self.vertices;
        if v.len() < 2 || v.first() != v.last() || self.forward.len() != v.len() - 1 {
            return false;
        }
        let steps_ok = v.windows(2).zip(&self.forward).all(|(p, &fwd)| {
            if fwd {
                g.has_edge(p[0], p[1])
            } else {
                g.has_edge(p[1], p[0])
            }
        });
        let fc = self.forward.iter().filter(|&&f| f).count();
        steps_ok && fc == self.forward_count && self.forward.len() - fc == self.backward_count && fc != self.backward_count
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "value")]
pub enum ZVerdict {
    /// `f(v) = f(u) + 1` on every edge; each component's minimum is 0.
    Labeled(Vec<i64>),
    Conflict(ConflictWalk),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZLabeling {
    pub verdict: ZVerdict,
    pub components: usize,
}

impl ZLabeling {
    pub fn labels(&self) -> Option<&[i64]> {
        match &self.verdict {
            ZVerdict::Labeled(f) => Some(f),
            ZVerdict::Conflict(_) => None,
        }
    }
}

/// Breadth-first potentials over the underlying graph. Labels are exact on
/// the window; a conflict walk is a sound obstruction for any digraph
/// containing the window.
pub fn z_labeling(g: &Digraph) -> ZLabeling {
    let n = g.vertex_count();
    let mut f: Vec<Option<i64>> = vec![None; n];
    // parent vertex and whether the tree edge runs parent -> child
    let mut parent: Vec<Option<(VertexId, bool)>> = vec![None; n];
    let mut components = 0;
    for root in 0..n {
        if f[root].is_some() {
            continue;
        }
        components += 1;
        f[root] = Some(0);
        let mut members = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let fu = f[u].unwrap();
            let moves = g
                .out_neighbors(u)
                .iter()
                .map(|&v| (v, true))
                .chain(g.in_neighbors(u).iter().map(|&v| (v, false)));
            for (v, fwd) in moves {
                let want = if fwd { fu + 1 } else { fu - 1 };
                match f[v] {
                    None => {
                        f[v] = Some(want);
                        parent[v] = Some((u, fwd));
                        members.push(v);
                        queue.push_back(v);
                    }
                    Some(fv) if fv != want => {
                        return ZLabeling {
                            verdict: ZVerdict::Conflict(conflict_walk(&parent, u, v, fwd)),
                            components,
                        };
                    }
                    Some(_) => {}
                }
            }
        }
        let min = members.iter().map(|&v| f[v].unwrap()).min().unwrap();
        for &v in &members {
            f[v] = f[v].map(|x| x - min);
        }
    }
    ZLabeling {
        verdict: ZVerdict::Labeled(f.into_iter().map(Option::unwrap).collect()),
        components,
    }
}

/// Tree path to `u`, the offending step `u - v`, and the tree path back from
/// `v`, trimmed to start at the lowest common ancestor.
fn conflict_walk(parent: &[Option<(VertexId, bool)>], u: VertexId, v: VertexId, fwd: bool) -> ConflictWalk {
    // root-to-x path as (vertex, direction of the step into it)
    let path = |mut x: VertexId| {
        let mut p = vec![(x, true)];
        while let Some((y, d)) = parent[x] {
            p.last_mut().unwrap().1 = d;
            p.push((y, true));
            x = y;
        }
        p.reverse();
        p
    };
    let pu = path(u);
    let pv = path(v);
    let common = pu.iter().zip(&pv).take_while(|(a, b)| a.0 == b.0).count();
    let lca = common - 1;
    let mut vertices = vec![pu[lca].0];
    let mut forward = Vec::new();
    // pu[i].1 is the direction of the step pu[i - 1] -> pu[i]
    for i in lca + 1..pu.len() {
        vertices.push(pu[i].0);
        forward.push(pu[i].1);
    }
    vertices.push(v);
    forward.push(fwd);
    // back up from v to the lca: reversing a tree step flips its direction
    for i in (lca..pv.len() - 1).rev() {
        vertices.push(pv[i].0);
        forward.push(!pv[i + 1].1);
    }
    let forward_count = forward.iter().filter(|&&x| x).count();
    ConflictWalk {
        backward_count: forward.len() - forward_count,
        forward_count,
        vertices,
        forward,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct P0Verdict {
    pub holds: bool,
    pub out_valency: Option<usize>,
    /// A vertex found in two layers, with both layer indices.
    pub layer_overlap: Option<(VertexId, usize, usize)>,
    /// Two interior vertices with different out-valency.
    pub valency_mismatch: Option<(VertexId, usize, VertexId, usize)>,
}

/// Layers pairwise disjoint and a common positive out-valency on interior
/// vertices.
pub fn check_p0(gamma: &RootedWindow) -> P0Verdict {
    let n = gamma.window.vertex_count();
    let mut first_layer = vec![None; n];
    let mut layer_overlap = None;
    'outer: for (i, layer) in gamma.layers.iter().enumerate() {
        for &v in layer {
            match first_layer[v] {
                Some(j) => {
                    layer_overlap = Some((v, j, i));
                    break 'outer;
                }
                None => first_layer[v] = Some(i),
            }
        }
    }
    let g = &gamma.window.graph;
    let interior = gamma.window.interior_vertices();
    let out_valency = interior.first().map(|&v| g.out_degree(v));
    let valency_mismatch = interior.first().and_then(|&u| {
        interior
            .iter()
            .find(|&&v| g.out_degree(v) != g.out_degree(u))
            .map(|&v| (u, g.out_degree(u), v, g.out_degree(v)))
    });
    let holds = layer_overlap.is_none() && valency_mismatch.is_none() && out_valency.is_some_and(|m| m > 0);
    P0Verdict {
        holds,
        out_valency,
        layer_overlap,
        valency_mismatch,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "vertex")]
pub enum P1Status {
    /// Every eligible vertex was tested and matched.
    Holds,
    /// `Γ(u)` cut at the test depth differs from `Γ(α)`.
    Fails(VertexId),
    /// The budget ran out before all eligible vertices were tested; all
    /// tested vertices matched.
    Partial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct P1Verdict {
    pub status: P1Status,
    pub depth: usize,
    pub tested: Vec<VertexId>,
    pub eligible: usize,
}

fn layer_colors(gamma: &RootedWindow) -> Vec<i64> {
    gamma.layer_of().into_iter().map(|l| l as i64).collect()
}

/// Compares `Γ(u)` and `Γ(α)`, both cut at depth `d`, by rooted,
/// layer-preserving isomorphism, for interior `u` whose cone fits inside the
/// window. At most `budget` vertices are tested.
pub fn check_p1(gamma: &RootedWindow, d: usize, budget: usize, cap: usize) -> Result<P1Verdict> {
    let reference = descendant_window(&gamma.window, gamma.root, d)?;
    let ref_colors = layer_colors(&reference);
    let layer_of = gamma.layer_of();
    let mut eligible: Vec<VertexId> = gamma
        .window
        .interior_vertices()
        .into_iter()
        .filter(|&u| layer_of[u] + d <= gamma.depth)
        .collect();
    eligible.sort_by_key(|&u| (layer_of[u], u));
    let mut tested = Vec::new();
    for &u in eligible.iter().take(budget) {
        let cone = descendant_window(&gamma.window, u, d)?;
        let constraints = IsoConstraints {
            colors: Some((ref_colors.clone(), layer_colors(&cone))),
        };
        tested.push(u);
        if !is_isomorphic(&reference.window.graph, &cone.window.graph, &constraints, cap)?.is_isomorphic() {
            return Ok(P1Verdict {
                status: P1Status::Fails(u),
                depth: d,
                tested,
                eligible: eligible.len(),
            });
        }
    }
    let status = if tested.len() < eligible.len() {
        P1Status::Partial
    } else {
        P1Status::Holds
    };
    Ok(P1Verdict {
        status,
        depth: d,
        tested,
        eligible: eligible.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum ConditionC {
    /// `desc(U) ∩ desc(V) = ∅` within depth `depth` of `x`.
    DisjointToDepth { u: Vec<VertexId>, v: Vec<VertexId>, depth: usize },
    /// The given split fails: `witness` descends from both sides.
    Intersects { u: Vec<VertexId>, v: Vec<VertexId>, witness: VertexId },
    NoSplit,
}

/// Largest first layer for which the pairwise fallback search is run.
pub const CONDITION_C_FALLBACK_MAX: usize = 6;

struct Cone {
    graph: Digraph,
    /// cone id -> window id
    map: Vec<VertexId>,
    root: VertexId,
}

fn cone(gamma: &RootedWindow, x: VertexId, d: usize) -> Result<Cone> {
    let w = &gamma.window;
    let mut all = Vec::new();
    for i in 0..=d {
        all.extend(desc_s(w, x, i)?.vertices);
    }
    let (graph, map) = induced_subdigraph(&w.graph, &all)?;
    let root = map.binary_search(&x).unwrap();
    Ok(Cone { graph, map, root })
}

/// Searches for non-empty `U, V ⊆ Γ¹(x)` with disjoint descendant sets inside
/// the depth-`d` cone of `x`. First layer vertices are grouped by the
/// connected components of the cone minus `x`; two or more groups give a
/// split directly. Otherwise, for small first layers, every pair is tested
/// (a split exists iff some pair of first-layer vertices has disjoint cones).
pub fn condition_c(gamma: &RootedWindow, x: VertexId, d: usize) -> Result<ConditionC> {
    if !gamma.window.graph.contains(x) {
        return Err(Error::UnknownVertex(x));
    }
    let c = cone(gamma, x, d)?;
    let first: Vec<VertexId> = c.graph.out_neighbors(c.root).to_vec();
    let to_window = |s: &[VertexId]| s.iter().map(|&v| c.map[v]).collect::<Vec<_>>();
    let comps = components_after_removal(&c.graph, &[c.root]);
    let groups: Vec<Vec<VertexId>> = comps
        .iter()
        .map(|comp| first.iter().copied().filter(|v| comp.binary_search(v).is_ok()).collect::<Vec<_>>())
        .filter(|g| !g.is_empty())
        .collect();
    if groups.len() >= 2 {
        let rest: Vec<VertexId> = groups[1..].iter().flatten().copied().collect();
        return Ok(ConditionC::DisjointToDepth {
            u: to_window(&groups[0]),
            v: to_window(&rest),
            depth: d,
        });
    }
    if first.len() >= 2 && first.len() <= CONDITION_C_FALLBACK_MAX {
        let cones: Vec<Vec<VertexId>> = first.iter().map(|&a| descendants(&c.graph, &[a])).collect();
        for i in 0..first.len() {
            for j in i + 1..first.len() {
                if cones[i].iter().all(|v| cones[j].binary_search(v).is_err()) {
                    return Ok(ConditionC::DisjointToDepth {
                        u: to_window(&[first[i]]),
                        v: to_window(&[first[j]]),
                        depth: d,
                    });
                }
            }
        }
    }
    Ok(ConditionC::NoSplit)
}

/// Tests one given split `U, V` inside the depth-`d` cone of `x`.
pub fn condition_c_for_split(
    gamma: &RootedWindow,
    x: VertexId,
    u: &[VertexId],
    v: &[VertexId],
    d: usize,
) -> Result<ConditionC> {
    let c = cone(gamma, x, d)?;
    let local = |s: &[VertexId]| -> Result<Vec<VertexId>> {
        s.iter()
            .map(|a| c.map.binary_search(a).map_err(|_| Error::UnknownVertex(*a)))
            .collect()
    };
    let du = descendants(&c.graph, &local(u)?);
    let dv = descendants(&c.graph, &local(v)?);
    Ok(match du.iter().find(|a| dv.binary_search(a).is_ok()) {
        Some(&w) => ConditionC::Intersects {
            u: u.to_vec(),
            v: v.to_vec(),
            witness: c.map[w],
        },
        None => ConditionC::DisjointToDepth {
            u: u.to_vec(),
            v: v.to_vec(),
            depth: d,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<VertexId>>,
    pub s: usize,
}

/// `Γ¹(α)` grouped by the connected components of `Γ \ {α}` in the window.
pub fn block_system(gamma: &RootedWindow) -> BlockSystem {
    let first = gamma.layers.get(1).cloned().unwrap_or_default();
    let comps = components_after_removal(&gamma.window.graph, &[gamma.root]);
    let blocks: Vec<Vec<VertexId>> = comps
        .iter()
        .map(|comp| first.iter().copied().filter(|v| comp.binary_search(v).is_ok()).collect::<Vec<_>>())
        .filter(|b| !b.is_empty())
        .collect();
    BlockSystem { s: blocks.len(), blocks }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PqBranch {
    /// `p = q`, or a tree was measured: every `r_i` is 1.
    Tree,
    /// `p < q`: `p` blocks of size `q`, `r_i = 1` before `N` and `p` from `N` on.
    Blocks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "detail")]
pub enum PqOutcome {
    Consistent(PqBranch),
    Inconsistent { branch: PqBranch, field: String },
    Inapplicable(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PqRecord {
    pub m: usize,
    pub p: usize,
    pub q: usize,
    pub outcome: PqOutcome,
    pub measured_s: usize,
    pub measured_block_sizes: Vec<usize>,
    pub measured_in_valencies: Vec<usize>,
}

pub const REASON_P3_FAILS: &str = "P3 fails";
pub const REASON_DELTA: &str = "δ_{N-1} nontrivial";
pub const REASON_WINDOW: &str = "window too small";

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Compares a descendant window of out-valency `m = p·q` with the structure
/// predicted for that case: a tree when `p = q`; otherwise either a tree or
/// `p` blocks of size `q` with `r_i = 1` for `i < N` and `r_i = p` from `N`.
pub fn pq_consistency(gamma: &RootedWindow, p: usize, q: usize) -> Result<PqRecord> {
    let m = gamma.out_valency();
    if !(is_prime(p) && is_prime(q) && p <= q && p * q == m) {
        return Err(Error::NotPrimeProduct { m, p, q });
    }
    let profile = layer_profile(gamma);
    let blocks = block_system(gamma);
    let mut block_sizes: Vec<usize> = blocks.blocks.iter().map(Vec::len).collect();
    block_sizes.sort_unstable();
    let record = |outcome| PqRecord {
        m,
        p,
        q,
        outcome,
        measured_s: blocks.s,
        measured_block_sizes: block_sizes.clone(),
        measured_in_valencies: profile.in_valencies.clone(),
    };
    let inapplicable = |why: &str| Ok(record(PqOutcome::Inapplicable(why.to_string())));

    match profile.p3 {
        P3Verdict::FailsAt(_) => return inapplicable(REASON_P3_FAILS),
        P3Verdict::Inconclusive => return inapplicable(REASON_WINDOW),
        P3Verdict::HoldsToDepth(_) => {}
    }
    if profile.refutation.is_some() {
        return inapplicable("in-valency not uniform on a layer");
    }
    let Some(n) = profile.stabilization else {
        return inapplicable(REASON_WINDOW);
    };
    if n >= 2 {
        let domain: Vec<VertexId> = gamma.window.interior_vertices();
        let delta = delta_n_partition(&gamma.window, n - 1, &domain)?;
        if delta.is_nontrivial() {
            return inapplicable(REASON_DELTA);
        }
    }

    let all_one = profile.in_valencies.iter().all(|&r| r == 1);
    if p == q || all_one {
        let outcome = if all_one {
            PqOutcome::Consistent(PqBranch::Tree)
        } else {
            PqOutcome::Inconsistent {
                branch: PqBranch::Tree,
                field: "in_valencies".into(),
            }
        };
        return Ok(record(outcome));
    }
    let outcome = if blocks.s != p {
        PqOutcome::Inconsistent {
            branch: PqBranch::Blocks,
            field: "s".into(),
        }
    } else if block_sizes.iter().any(|&b| b != q) {
        PqOutcome::Inconsistent {
            branch: PqBranch::Blocks,
            field: "block_sizes".into(),
        }
    } else if profile
        .in_valencies
        .iter()
        .enumerate()
        .any(|(j, &r)| r != if j + 1 < n { 1 } else { p })
    {
        PqOutcome::Inconsistent {
            branch: PqBranch::Blocks,
            field: "in_valencies".into(),
        }
    } else {
        PqOutcome::Consistent(PqBranch::Blocks)
    };
    Ok(record(outcome))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_dmm, gen_regular_tree, gen_rooted_out_tree};
    use crate::window::Window;

    fn top(w: &Window) -> VertexId {
        w.interior_vertices()
            .into_iter()
            .min_by_key(|&v| (w.level_of(v), v))
            .unwrap()
    }

    #[test]
    fn dmm_labels_are_levels() {
        let w = gen_dmm(2, 3, 3).unwrap();
        let z = z_labeling(&w.graph);
        assert_eq!(z.labels().unwrap(), w.level.as_deref().unwrap());
        assert_eq!(z.components, 1);
    }

    #[test]
    fn single_edge_label() {
        let g = Digraph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(z_labeling(&g).labels().unwrap(), &[0, 1]);
    }

    #[test]
    fn conflict_example() {
        // a -> b, a -> c, c -> d, d -> b
        let g = Digraph::from_edges(4, &[(0, 1), (0, 2), (2, 3), (3, 1)]).unwrap();
        let ZVerdict::Conflict(walk) = z_labeling(&g).verdict else {
            panic!("expected a conflict")
        };
        assert!(walk.verify(&g));
        assert_eq!((walk.forward_count, walk.backward_count), (3, 1));
    }

    #[test]
    fn two_cycle_conflicts() {
        let g = Digraph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        let ZVerdict::Conflict(walk) = z_labeling(&g).verdict else { panic!() };
        assert!(walk.verify(&g));
    }

    #[test]
    fn components_are_normalised_separately() {
        let g = Digraph::from_edges(4, &[(1, 0), (2, 3)]).unwrap();
        let z = z_labeling(&g);
        assert_eq!(z.labels().unwrap(), &[1, 0, 0, 1]);
        assert_eq!(z.components, 2);
    }

    #[test]
    fn p0_verdicts() {
        let t = gen_rooted_out_tree(2, 4).unwrap();
        let v = check_p0(&descendant_window(&t, 0, 3).unwrap());
        assert!(v.holds);
        assert_eq!(v.out_valency, Some(2));

        let w = gen_dmm(2, 3, 5).unwrap();
        let v = check_p0(&descendant_window(&w, top(&w), 4).unwrap());
        assert!(v.holds);
        assert_eq!(v.out_valency, Some(2));

        // 0 -> 1 -> 2 -> 3 -> 1
        let g = Digraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 1)]).unwrap();
        let v = check_p0(&descendant_window(&Window::complete(g), 0, 4).unwrap());
        assert!(!v.holds);
        assert_eq!(v.layer_overlap, Some((1, 1, 4)));
    }

    #[test]
    fn p1_verdicts() {
        let r = gen_regular_tree(2, 1, 6).unwrap();
        let gamma = descendant_window(&r, 0, 4).unwrap();
        assert_eq!(check_p1(&gamma, 2, 32, 64).unwrap().status, P1Status::Holds);

        let w = gen_dmm(2, 2, 6).unwrap();
        let gamma = descendant_window(&w, top(&w), 4).unwrap();
        let v = check_p1(&gamma, 2, 32, 64).unwrap();
        assert_eq!(v.status, P1Status::Holds);
        assert!(!v.tested.is_empty());
        let v = check_p1(&gamma, 2, 1, 64).unwrap();
        assert_eq!(v.status, P1Status::Partial);

        // root with out-valency 2 whose child 1 has out-valency 3
        let g = Digraph::from_edges(
            8,
            &[(0, 1), (0, 2), (1, 3), (1, 4), (1, 5), (2, 6), (2, 7)],
        )
        .unwrap();
        let w = Window::new(g, vec![true, true, true, false, false, false, false, false], None).unwrap();
        let gamma = descendant_window(&w, 0, 2).unwrap();
        assert_eq!(check_p1(&gamma, 1, 32, 64).unwrap().status, P1Status::Fails(1));
    }

    #[test]
    fn condition_c_verdicts() {
        let t = gen_rooted_out_tree(2, 4).unwrap();
        let gamma = descendant_window(&t, 0, 3).unwrap();
        match condition_c(&gamma, gamma.root, 3).unwrap() {
            ConditionC::DisjointToDepth { u, v, .. } => {
                assert_eq!(u.len(), 1);
                assert_eq!(v.len(), 1);
            }
            other => panic!("{other:?}"),
        }

        let w = gen_dmm(2, 3, 5).unwrap();
        let gamma = descendant_window(&w, top(&w), 4).unwrap();
        assert_eq!(condition_c(&gamma, gamma.root, 2).unwrap(), ConditionC::NoSplit);
        let first = gamma.layers[1].clone();
        assert!(matches!(
            condition_c_for_split(&gamma, gamma.root, &first[..1], &first[1..], 2).unwrap(),
            ConditionC::Intersects { .. }
        ));

        let p = gen_dmm(1, 1, 5).unwrap();
        let gamma = descendant_window(&p, top(&p), 3).unwrap();
        assert_eq!(condition_c(&gamma, gamma.root, 3).unwrap(), ConditionC::NoSplit);
    }

    #[test]
    fn block_systems() {
        let t = gen_rooted_out_tree(3, 3).unwrap();
        let b = block_system(&descendant_window(&t, 0, 2).unwrap());
        assert_eq!(b.s, 3);
        assert!(b.blocks.iter().all(|x| x.len() == 1));

        let w = gen_dmm(2, 3, 5).unwrap();
        let b = block_system(&descendant_window(&w, top(&w), 3).unwrap());
        assert_eq!(b.s, 1);
        assert_eq!(b.blocks[0].len(), 2);

        let g = Digraph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (2, 4)]).unwrap();
        let w = Window::new(g, vec![true, true, true, false, false], None).unwrap();
        assert_eq!(block_system(&descendant_window(&w, 0, 2).unwrap()).s, 2);
    }

    #[test]
    fn pq_branches() {
        let t4 = gen_rooted_out_tree(4, 3).unwrap();
        let r = pq_consistency(&descendant_window(&t4, 0, 3).unwrap(), 2, 2).unwrap();
        assert_eq!(r.outcome, PqOutcome::Consistent(PqBranch::Tree));

        let t6 = gen_rooted_out_tree(6, 3).unwrap();
        let r = pq_consistency(&descendant_window(&t6, 0, 3).unwrap(), 2, 3).unwrap();
        assert_eq!(r.outcome, PqOutcome::Consistent(PqBranch::Tree));

        let w = gen_dmm(6, 6, 5).unwrap();
        let r = pq_consistency(&descendant_window(&w, top(&w), 4).unwrap(), 2, 3).unwrap();
        assert_eq!(r.outcome, PqOutcome::Inapplicable(REASON_P3_FAILS.into()));

        let gamma = descendant_window(&t6, 0, 3).unwrap();
        assert!(matches!(pq_consistency(&gamma, 2, 2), Err(Error::NotPrimeProduct { .. })));
        assert!(matches!(pq_consistency(&gamma, 1, 6), Err(Error::NotPrimeProduct { .. })));
    }
}
