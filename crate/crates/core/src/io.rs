//! JSON digraph files and DOT export.
//!
//! File layout:
//!
//! ```json
//! {"meta": {...},
//!  "vertices": [{"id": 0, "interior": true, "level": 0, "label": "(t,0)"}, ...],
//!  "edges": [[0, 1], ...]}
//! ```
//!
//! Edges are written in lexicographic order; `level` is present on every
//! vertex or on none.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::GeneratorSpec;
use crate::graph::{build_digraph, Edge};
use crate::window::Window;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FileMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<GeneratorSpec>,
    #[serde(default)]
    pub vertex_count: usize,
    #[serde(default)]
    pub edge_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FileVertex {
    pub id: usize,
    pub interior: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DigraphFile {
    #[serde(default)]
    pub meta: FileMeta,
    pub vertices: Vec<FileVertex>,
    pub edges: Vec<[usize; 2]>,
}

/// A parsed file: the window plus the number of repeated edges merged away.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loaded {
    pub window: Window,
    pub duplicate_edges: usize,
}

pub fn to_file(w: &Window) -> DigraphFile {
    DigraphFile {
        meta: FileMeta {
            spec: w.spec.clone(),
            vertex_count: w.vertex_count(),
            edge_count: w.graph.edge_count(),
        },
        vertices: w
            .graph
            .vertices()
            .map(|v| FileVertex {
                id: v,
                interior: w.interior[v],
                level: w.level_of(v),
                label: w.labels[v].clone(),
            })
            .collect(),
        edges: w.graph.edges().map(|(u, v)| [u, v]).collect(),
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn write_json(w: &Window) -> String {
    let mut s = serde_json::to_string_pretty(&to_file(w)).expect("file types serialise");
    s.push('\n');
    s
}

pub fn from_file(file: DigraphFile) -> Result<Loaded> {
    let n = file.vertices.len();
    let mut slots: Vec<Option<FileVertex>> = vec![None; n];
    for v in file.vertices {
        if v.id >= n {
            return Err(Error::Format(format!("vertex id {} outside 0..{n}", v.id)));
        }
        let id = v.id;
        if slots[id].replace(v).is_some() {
            return Err(Error::Format(format!("vertex id {id} listed twice")));
        }
    }
    let vertices: Vec<FileVertex> = slots.into_iter().map(Option::unwrap).collect();
    let with_level = vertices.iter().filter(|v| v.level.is_some()).count();
    if with_level != 0 && with_level != n {
        return Err(Error::Format("level must be given on every vertex or on none".into()));
    }
    let edges: Vec<Edge> = file.edges.iter().map(|e| (e[0], e[1])).collect();
    let built = build_digraph(n, &edges)?;
    let level = (with_level == n && n > 0).then(|| vertices.iter().map(|v| v.level.unwrap()).collect());
    let interior = vertices.iter().map(|v| v.interior).collect();
    let labels = vertices.iter().map(|v| v.label.clone()).collect();
    let mut window = Window::new(built.graph, interior, level)?.with_labels(labels);
    window.spec = file.meta.spec;
    Ok(Loaded {
        window,
        duplicate_edges: built.duplicates,
    })
}

/// Parses a JSON digraph; syntax errors carry line and column.
pub fn read_json(text: &str) -> Result<Loaded> {
    let file: DigraphFile = serde_json::from_str(text)
        .map_err(|e| Error::Format(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    from_file(file)
}

/// Fill colour of the `i`-th class: the 12-colour Brewer set first, then
/// golden-ratio hues.
pub fn palette_color(i: usize) -> String {
    if i < 12 {
        format!("/set312/{}", i + 1)
    } else {
        let hue = ((i - 12) as f64 * 0.618_033_988_749_895).fract();
        format!("{hue:.3} 0.600 0.850")
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Per-vertex and per-edge class indices used to colour a DOT export.
/// Edge classes follow lexicographic edge order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DotColoring {
    pub vertex_class: Option<Vec<usize>>,
    pub edge_class: Option<Vec<usize>>,
}

/// DOT text with vertices in ascending id order and edges in lexicographic
/// order.
pub fn to_dot(w: &Window, coloring: &DotColoring) -> String {
    let mut out = String::from("digraph G {\n  node [style=filled, fillcolor=white];\n");
    for v in w.graph.vertices() {
        let label = w.labels[v].clone().unwrap_or_else(|| v.to_string());
        let _ = write!(out, "  {v} [label=\"{}\"", escape(&label));
        if !w.interior[v] {
            out.push_str(", shape=box");
        }
        if let Some(c) = &coloring.vertex_class {
            let _ = write!(out, ", fillcolor=\"{}\"", palette_color(c[v]));
        }
        out.push_str("];\n");
    }
    for (i, (u, v)) in w.graph.edges().enumerate() {
        let _ = write!(out, "  {u} -> {v}");
        if let Some(c) = &coloring.edge_class {
            let _ = write!(out, " [color=\"{}\"]", palette_color(c[i]));
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}
