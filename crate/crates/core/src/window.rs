//! Finite views of infinite digraphs.
//!
//! A [`Window`] is a finite digraph in which some vertices are *interior*:
//! every edge of the modelled infinite digraph incident to an interior vertex
//! is present. Boundary vertices may be missing neighbours, so any statistic
//! that reads a full neighbourhood is only trusted on interior vertices.

use crate::error::{Error, Result};
use crate::generators::GeneratorSpec;
use crate::graph::{induced_subdigraph, Digraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub graph: Digraph,
    pub interior: Vec<bool>,
    pub level: Option<Vec<i64>>,
    pub labels: Vec<Option<String>>,
    pub spec: Option<GeneratorSpec>,
}

impl Window {
    /// Wraps `graph`, checking flag lengths and the level contract.
    pub fn new(graph: Digraph, interior: Vec<bool>, level: Option<Vec<i64>>) -> Result<Self> {
        let n = graph.vertex_count();
        if interior.len() != n {
            return Err(Error::Format(format!(
                "{} interior flags for {n} vertices",
                interior.len()
            )));
        }
        if let Some(lv) = &level {
            if lv.len() != n {
                return Err(Error::Format(format!("{} levels for {n} vertices", lv.len())));
            }
        }
        let w = Self {
            graph,
            interior,
            level,
            labels: vec![None; n],
            spec: None,
        };
        w.check_levels()?;
        Ok(w)
    }

    /// A finite digraph viewed as a complete window: every vertex is interior.
    pub fn complete(graph: Digraph) -> Self {
        let n = graph.vertex_count();
        Self {
            graph,
            interior: vec![true; n],
            level: None,
            labels: vec![None; n],
            spec: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Self {
        assert_eq!(labels.len(), self.graph.vertex_count());
        self.labels = labels;
        self
    }

    pub fn with_spec(mut self, spec: GeneratorSpec) -> Self {
        self.spec = Some(spec);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn is_interior(&self, v: VertexId) -> bool {
        self.interior[v]
    }

    pub fn interior_vertices(&self) -> Vec<VertexId> {
        self.graph.vertices().filter(|&v| self.interior[v]).collect()
    }

    pub fn level_of(&self, v: VertexId) -> Option<i64> {
        self.level.as_ref().map(|l| l[v])
    }

    /// Every edge `(u, v)` must satisfy `level(v) = level(u) + 1`.
    pub fn check_levels(&self) -> Result<()> {
        let Some(level) = &self.level else {
            return Ok(());
        };
        for (u, v) in self.graph.edges() {
            if level[v] != level[u] + 1 {
                return Err(Error::LevelContract {
                    u,
                    v,
                    lu: level[u],
                    lv: level[v],
                });
            }
        }
        Ok(())
    }

    /// Restricts the window to `subset`, keeping flags, levels and labels.
    /// Returns the new window and the new-to-old id map.
    pub fn induced(&self, subset: &[VertexId]) -> Result<(Window, Vec<VertexId>)> {
        let (graph, map) = induced_subdigraph(&self.graph, subset)?;
        let interior = map.iter().map(|&v| self.interior[v]).collect();
        let level = self
            .level
            .as_ref()
            .map(|l| map.iter().map(|&v| l[v]).collect());
        let labels = map.iter().map(|&v| self.labels[v].clone()).collect();
        Ok((
            Window {
                graph,
                interior,
                level,
                labels,
                spec: None,
            },
            map,
        ))
    }
}
