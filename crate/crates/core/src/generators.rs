//! Deterministic constructors for the digraph families under study, each
//! returned as a [`Window`] with interior flags and levels.
//!
//! `D(m, M)` is built as a full in-tree `T` of depth `L` hanging above a sink
//! `t_L`, with every `T`-vertex `t` blown up to `{t} × Ω`, `|Ω| = M`. The
//! in-neighbours of each `T`-vertex are matched with the `m`-subsets of `Ω`
//! in lexicographic order; if `t_i → t` in `T` and `t_i` carries the subset
//! `S`, then `(t_i, c) → (t, a)` for every `c ∈ Ω`, `a ∈ S`.

use std::collections::VecDeque;

use itertools::Itertools;
use num_rational::Ratio;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Digraph, Edge, VertexId};
use crate::reachability::BipartiteDigraph;
use crate::window::Window;

/// Largest window any generator will materialise.
pub const MAX_VERTICES: usize = 4_000_000;

/// Largest `C(M, m)` accepted as the in-valency of `T`.
pub const MAX_BINOMIAL: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Dmm {
        m: usize,
        #[serde(rename = "M")]
        big_m: usize,
        levels: usize,
    },
    Sigma {
        m: usize,
        #[serde(rename = "M")]
        big_m: usize,
    },
    RootedOutTree {
        b: usize,
        depth: usize,
    },
    RegularTree {
        out_valency: usize,
        in_valency: usize,
        radius: usize,
    },
    LineZ {
        length: usize,
    },
    DescOfLine {
        m: usize,
        #[serde(rename = "M")]
        big_m: usize,
        levels: usize,
    },
    RandomLayeredDag {
        levels: usize,
        width: usize,
        /// Written as `"p/q"`.
        edge_prob: String,
        seed: u64,
    },
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Window> {
        match *self {
            GeneratorSpec::Dmm { m, big_m, levels } => gen_dmm(m, big_m, levels),
            GeneratorSpec::Sigma { m, big_m } => gen_sigma(m, big_m).map(|s| s.into_window()),
            GeneratorSpec::RootedOutTree { b, depth } => gen_rooted_out_tree(b, depth),
            GeneratorSpec::RegularTree {
                out_valency,
                in_valency,
                radius,
            } => gen_regular_tree(out_valency, in_valency, radius),
            GeneratorSpec::LineZ { length } => gen_line_z(length),
            GeneratorSpec::DescOfLine { m, big_m, levels } => gen_desc_of_line(m, big_m, levels),
            GeneratorSpec::RandomLayeredDag {
                levels,
                width,
                ref edge_prob,
                seed,
            } => {
                let p: Ratio<u64> = edge_prob
                    .parse()
                    .map_err(|_| Error::InvalidParameters(format!("edge_prob {edge_prob:?}")))?;
                gen_random_layered_dag(levels, width, p, seed)
            }
        }
    }
}

/// `C(n, k)`, rejected once it passes [`MAX_BINOMIAL`].
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let overflow = Error::BinomialOverflow {
        n,
        k,
        bound: MAX_BINOMIAL,
    };
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(MAX_BINOMIAL) {
            return Err(overflow);
        }
    }
    Ok(acc as u64)
}

fn check_cap(requested: u128) -> Result<usize> {
    if requested > MAX_VERTICES as u128 {
        Err(Error::SizeCap {
            requested,
            cap: MAX_VERTICES,
        })
    } else {
        Ok(requested as usize)
    }
}

/// `1 + k + k² + … + k^depth`, or an error once it passes the size cap.
fn tree_size(k: u64, depth: usize, blowup: u64) -> Result<usize> {
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=depth {
        total += layer;
        check_cap(total * u128::from(blowup))?;
        layer *= u128::from(k);
    }
    check_cap(total * u128::from(blowup))
}

fn check_dmm_params(m: usize, big_m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidParameters("m must be at least 1".into()));
    }
    if big_m < m {
        return Err(Error::InvalidParameters(format!("M < m ({big_m} < {m})")));
    }
    Ok(())
}

/// The in-tree `T` above the sink, in breadth-first order from the sink.
struct InTree {
    /// `(parent, subset index, depth)`; the sink has no parent.
    nodes: Vec<(Option<usize>, usize, usize)>,
    paths: Vec<String>,
}

fn build_in_tree(k: usize, depth: usize) -> InTree {
    let mut nodes = vec![(None, 0, 0)];
    let mut paths = vec!["t".to_string()];
    let mut head = 0;
    while head < nodes.len() {
        let (_, _, d) = nodes[head];
        if d < depth {
            for s in 0..k {
                nodes.push((Some(head), s, d + 1));
                paths.push(format!("{}.{s}", paths[head]));
            }
        }
        head += 1;
    }
    InTree { nodes, paths }
}

/// Window of `D(m, M)`: the in-tree of `T` of depth `levels` above a sink.
/// Interior vertices lie over `T`-vertices at depth `1..levels`; the level of
/// a vertex over depth `j` is `levels - j`.
pub fn gen_dmm(m: usize, big_m: usize, levels: usize) -> Result<Window> {
    check_dmm_params(m, big_m)?;
    if levels == 0 {
        return Err(Error::InvalidParameters("levels must be at least 1".into()));
    }
    let k = binomial(big_m as u64, m as u64)?;
    let n = tree_size(k, levels, big_m as u64)?;
    let subsets: Vec<Vec<usize>> = (0..big_m).combinations(m).collect();
    let tree = build_in_tree(k as usize, levels);
    debug_assert_eq!(tree.nodes.len() * big_m, n);

    let mut edges: Vec<Edge> = Vec::with_capacity(n * m);
    for (t, &(parent, s, _)) in tree.nodes.iter().enumerate() {
        let Some(p) = parent else { continue };
        for c in 0..big_m {
            for &a in &subsets[s] {
                edges.push((t * big_m + c, p * big_m + a));
            }
        }
    }
    let graph = Digraph::from_edges(n, &edges)?;
    let mut interior = Vec::with_capacity(n);
    let mut level = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for (t, &(_, _, depth)) in tree.nodes.iter().enumerate() {
        for a in 0..big_m {
            interior.push(depth >= 1 && depth < levels);
            level.push((levels - depth) as i64);
            labels.push(Some(format!("({},{a})", tree.paths[t])));
        }
    }
    Ok(Window::new(graph, interior, Some(level))?
        .with_labels(labels)
        .with_spec(GeneratorSpec::Dmm { m, big_m, levels }))
}

/// `Σ(m, M)`: sinks `Y = Ω`, sources `X` made of `C(M, m)` blocks of `M`
/// vertices, block `i` wired completely onto the `i`-th `m`-subset of `Y`.
/// Sources come first (`0..|X|`), then sinks.
pub fn gen_sigma(m: usize, big_m: usize) -> Result<BipartiteDigraph> {
    check_dmm_params(m, big_m)?;
    let k = binomial(big_m as u64, m as u64)? as usize;
    let xs = check_cap(k as u128 * big_m as u128)?;
    check_cap(xs as u128 + big_m as u128)?;
    let mut edges = Vec::with_capacity(xs * m);
    for (i, subset) in (0..big_m).combinations(m).enumerate() {
        for c in 0..big_m {
            for &a in &subset {
                edges.push((i * big_m + c, xs + a));
            }
        }
    }
    let graph = Digraph::from_edges(xs + big_m, &edges)?;
    Ok(BipartiteDigraph {
        graph,
        sources: (0..xs).collect(),
        sinks: (xs..xs + big_m).collect(),
    })
}

/// Rooted out-tree: every vertex above depth `depth` has `b` children.
pub fn gen_rooted_out_tree(b: usize, depth: usize) -> Result<Window> {
    if b == 0 || depth == 0 {
        return Err(Error::InvalidParameters("b and depth must be at least 1".into()));
    }
    let n = tree_size(b as u64, depth, 1)?;
    let mut edges = Vec::with_capacity(n);
    let mut level = vec![0i64; n];
    // breadth-first numbering: children of v are b*v+1 ..= b*v+b
    for v in 1..n {
        let parent = (v - 1) / b;
        edges.push((parent, v));
        level[v] = level[parent] + 1;
    }
    let interior = level.iter().map(|&l| (l as usize) < depth).collect();
    let graph = Digraph::from_edges(n, &edges)?;
    Ok(Window::new(graph, interior, Some(level))?
        .with_spec(GeneratorSpec::RootedOutTree { b, depth }))
}

/// Ball of undirected radius `radius` around a vertex of the regular directed
/// tree with the given out- and in-valency. Levels are shifted to start at 0.
pub fn gen_regular_tree(out_valency: usize, in_valency: usize, radius: usize) -> Result<Window> {
    if out_valency == 0 || in_valency == 0 || radius == 0 {
        return Err(Error::InvalidParameters(
            "valencies and radius must be at least 1".into(),
        ));
    }
    // rough size bound before building
    let branch = (out_valency + in_valency) as u64;
    tree_size(branch, radius, 1)?;

    // (distance, level, arrived via an out-edge of the parent?)
    let mut info: Vec<(usize, i64, Option<bool>)> = vec![(0, 0, None)];
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let (dist, lvl, via) = info[v];
        if dist == radius {
            continue;
        }
        let children = out_valency - usize::from(via == Some(false));
        let parents = in_valency - usize::from(via == Some(true));
        for _ in 0..children {
            let w = info.len();
            info.push((dist + 1, lvl + 1, Some(true)));
            edges.push((v, w));
            queue.push_back(w);
        }
        for _ in 0..parents {
            let w = info.len();
            info.push((dist + 1, lvl - 1, Some(false)));
            edges.push((w, v));
            queue.push_back(w);
        }
    }
    let n = info.len();
    let min_level = info.iter().map(|i| i.1).min().unwrap_or(0);
    let level = info.iter().map(|i| i.1 - min_level).collect();
    let interior = info.iter().map(|i| i.0 < radius).collect();
    let graph = Digraph::from_edges(n, &edges)?;
    Ok(Window::new(graph, interior, Some(level))?.with_spec(GeneratorSpec::RegularTree {
        out_valency,
        in_valency,
        radius,
    }))
}

/// Window of the two-way infinite directed path: `length + 1` vertices.
pub fn gen_line_z(length: usize) -> Result<Window> {
    if length == 0 {
        return Err(Error::InvalidParameters("length must be at least 1".into()));
    }
    let n = check_cap(length as u128 + 1)?;
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    let interior = (0..n).map(|i| i > 0 && i + 1 < n).collect();
    let level = (0..n as i64).collect();
    let graph = Digraph::from_edges(n, &edges)?;
    Ok(Window::new(graph, interior, Some(level))?.with_spec(GeneratorSpec::LineZ { length }))
}

/// Descendant set of a directed line inside the `D(m, M)` window.
///
/// The line runs through `(b_j, 0)` where `b_j` is the base ray of `T` (the
/// all-zero subset path). It continues above the window along the same ray,
/// so the top-level vertices `(b_L, a)`, `a` in the first `m`-subset, are its
/// descendants too. The resulting set is closed under descendants inside the
/// window; interior flags are inherited because every in-neighbour of an
/// interior vertex is in the window.
pub fn gen_desc_of_line(m: usize, big_m: usize, levels: usize) -> Result<Window> {
    let w = gen_dmm(m, big_m, levels)?;
    let k = binomial(big_m as u64, m as u64)? as usize;
    // base ray T-vertex at depth j has index 1 + k + ... + k^(j-1)
    let mut base = Vec::with_capacity(levels + 1);
    let mut idx = 0usize;
    let mut layer = 1usize;
    for _ in 0..=levels {
        base.push(idx);
        idx += layer;
        layer *= k;
    }
    let mut in_set = vec![false; w.vertex_count()];
    let mut stack: Vec<VertexId> = base.iter().map(|&t| t * big_m).collect();
    let top = base[levels];
    stack.extend((0..m).map(|a| top * big_m + a));
    while let Some(v) = stack.pop() {
        if in_set[v] {
            continue;
        }
        in_set[v] = true;
        stack.extend(w.graph.out_neighbors(v).iter().copied().filter(|&x| !in_set[x]));
    }
    let keep: Vec<VertexId> = (0..w.vertex_count()).filter(|&v| in_set[v]).collect();
    let (f, _) = w.induced(&keep)?;
    Ok(f.with_spec(GeneratorSpec::DescOfLine { m, big_m, levels }))
}

/// Seeded random layered digraph. Each possible edge between consecutive
/// levels is kept with probability `edge_prob`, drawn from SplitMix64;
/// isolated vertices are pruned. The result is a complete window.
pub fn gen_random_layered_dag(
    levels: usize,
    width: usize,
    edge_prob: Ratio<u64>,
    seed: u64,
) -> Result<Window> {
    if levels < 2 || width == 0 {
        return Err(Error::InvalidParameters("need levels >= 2 and width >= 1".into()));
    }
    let (num, den) = (*edge_prob.numer(), *edge_prob.denom());
    if num == 0 || num > den {
        return Err(Error::InvalidParameters("edge_prob must lie in (0, 1]".into()));
    }
    let n = check_cap(levels as u128 * width as u128)?;
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut edges = Vec::new();
    for lvl in 0..levels - 1 {
        for a in 0..width {
            for b in 0..width {
                // floor(x * den / 2^64) is uniform on 0..den up to 2^-64 bias
                let draw = (u128::from(rng.next_u64()) * u128::from(den)) >> 64;
                if draw < u128::from(num) {
                    edges.push((lvl * width + a, (lvl + 1) * width + b));
                }
            }
        }
    }
    let mut used = vec![false; n];
    for &(u, v) in &edges {
        used[u] = true;
        used[v] = true;
    }
    let keep: Vec<VertexId> = (0..n).filter(|&v| used[v]).collect();
    if keep.is_empty() {
        return Err(Error::EmptyAfterPruning);
    }
    let graph = Digraph::from_edges(n, &edges)?;
    let level = (0..n).map(|v| (v / width) as i64).collect();
    let full = Window::new(graph, vec![true; n], Some(level))?;
    let (w, _) = full.induced(&keep)?;
    Ok(w.with_spec(GeneratorSpec::RandomLayeredDag {
        levels,
        width,
        edge_prob: format!("{num}/{den}"),
        seed,
    }))
}
