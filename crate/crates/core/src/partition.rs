//! Equivalence partitions and quotient digraphs.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Digraph, VertexId};

/// A partition of a finite domain into disjoint non-empty classes.
///
/// Stored canonically: each class sorted ascending, classes ordered by their
/// smallest member. Two partitions of the same domain are equal as values iff
/// they are the same partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition<T: Ord> {
    classes: Vec<Vec<T>>,
}

impl<T: Ord + Clone> Partition<T> {
    pub fn from_classes(classes: Vec<Vec<T>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut canon = Vec::with_capacity(classes.len());
        for mut class in classes {
            if class.is_empty() {
                return Err(Error::InvalidPartition("empty class".into()));
            }
            class.sort();
            for x in &class {
                if !seen.insert(x.clone()) {
                    return Err(Error::InvalidPartition("overlapping classes".into()));
                }
            }
            canon.push(class);
        }
        canon.sort_by(|a, b| a[0].cmp(&b[0]));
        Ok(Self { classes: canon })
    }

    /// Singleton classes over `domain`.
    pub fn discrete(domain: impl IntoIterator<Item = T>) -> Self {
        Self::from_classes(domain.into_iter().map(|x| vec![x]).collect())
            .expect("distinct domain elements")
    }

    /// Groups `domain` by key; elements with equal keys share a class.
    pub fn by_key<K: Ord>(domain: impl IntoIterator<Item = T>, mut key: impl FnMut(&T) -> K) -> Self {
        let mut groups: BTreeMap<K, Vec<T>> = BTreeMap::new();
        for x in domain {
            groups.entry(key(&x)).or_default().push(x);
        }
        Self::from_classes(groups.into_values().collect()).expect("keys group distinct elements")
    }

    pub fn classes(&self) -> &[Vec<T>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn domain_size(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    /// All elements, sorted.
    pub fn domain(&self) -> Vec<T> {
        let mut all: Vec<T> = self.classes.iter().flatten().cloned().collect();
        all.sort();
        all
    }

    /// True iff every class is a singleton.
    pub fn is_trivial(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    pub fn class_index(&self) -> BTreeMap<T, usize> {
        self.classes
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |x| (x.clone(), i)))
            .collect()
    }

    /// True iff every class of `self` lies inside some class of `coarser`.
    pub fn refines(&self, coarser: &Partition<T>) -> bool {
        let idx = coarser.class_index();
        self.classes.iter().all(|c| {
            let first = idx.get(&c[0]);
            first.is_some() && c.iter().all(|x| idx.get(x) == first)
        })
    }
}

/// The quotient digraph `g / p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientDigraph {
    pub classes: Partition<VertexId>,
    pub graph: Digraph,
    /// `class_map[v]` is the class index of vertex `v`.
    pub class_map: Vec<usize>,
    /// Edges of `g` with both ends in one class; they are dropped from the quotient.
    pub dropped_self_edges: usize,
}

/// `(A, B)` is an edge iff some `a ∈ A`, `b ∈ B`, `A ≠ B` have `(a, b) ∈ E(g)`.
pub fn quotient(g: &Digraph, p: &Partition<VertexId>) -> Result<QuotientDigraph> {
    let n = g.vertex_count();
    if p.domain_size() != n || p.domain().into_iter().ne(0..n) {
        return Err(Error::PartitionMismatch(format!(
            "partition covers {} elements, digraph has {n} vertices",
            p.domain_size()
        )));
    }
    let mut class_map = vec![0; n];
    for (i, class) in p.classes().iter().enumerate() {
        for &v in class {
            class_map[v] = i;
        }
    }
    let mut edges = Vec::new();
    let mut dropped = 0;
    for (u, v) in g.edges() {
        let (a, b) = (class_map[u], class_map[v]);
        if a == b {
            dropped += 1;
        } else {
            edges.push((a, b));
        }
    }
    let graph = Digraph::from_edges(p.len(), &edges)?;
    Ok(QuotientDigraph {
        classes: p.clone(),
        graph,
        class_map,
        dropped_self_edges: dropped,
    })
}
