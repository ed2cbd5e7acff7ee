//! Immutable simple undirected graphs with stable vertex labels.
//!
//! Every mutating operation returns a fresh [`Graph`]; the receiver is never
//! changed. Vertices are dense indices `0..n`, each carrying a unique string
//! label that survives deletions and contractions, so that subgraphs shared
//! between several graphs can be matched up by name.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex index.
pub type Vertex = usize;

/// An undirected edge, stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: Vertex, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge {0}-{1} already present")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge {0}-{1} not present")]
    MissingEdge(Vertex, Vertex),
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
}

/// A simple undirected graph on vertices `0..n` with unique labels.
#[derive(Clone)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, Vertex>,
    adj: Vec<FixedBitSet>,
    size: usize,
}

/// Per-degree vertex counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCensus {
    pub counts: BTreeMap<usize, usize>,
    pub cubic_count: usize,
}

impl DegreeCensus {
    pub fn count(&self, degree: usize) -> usize {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.counts.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|v| v.to_string()).collect()
}

impl Graph {
    /// Edgeless graph on `n` vertices labelled `"0"`, `"1"`, ...
    pub fn empty(n: usize) -> Self {
        Graph::with_labels(default_labels(n)).expect("default labels are unique")
    }

    /// Edgeless graph with the given vertex labels.
    pub fn with_labels(labels: Vec<String>) -> Result<Self, GraphError> {
        let mut index = HashMap::with_capacity(labels.len());
        for (v, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), v).is_some() {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        Ok(Graph {
            labels,
            index,
            adj: vec![FixedBitSet::with_capacity(n); n],
            size: 0,
        })
    }

    /// Builds a graph on `n` default-labelled vertices from an edge list.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from labelled edges; vertices appear in first-seen order.
    pub fn from_labeled_edges<S: AsRef<str>>(edges: &[(S, S)]) -> Result<Self, GraphError> {
        let mut labels: Vec<String> = Vec::new();
        let mut seen: HashMap<String, Vertex> = HashMap::new();
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let mut idx = |s: &str| -> Vertex {
                if let Some(&v) = seen.get(s) {
                    return v;
                }
                let v = labels.len();
                labels.push(s.to_string());
                seen.insert(s.to_string(), v);
                v
            };
            let u = idx(a.as_ref());
            let v = idx(b.as_ref());
            pairs.push((u, v));
        }
        let mut g = Graph::with_labels(labels)?;
        for (u, v) in pairs {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    fn check(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.order() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    // Internal in-place insertion used while a value is still under construction.
    pub(crate) fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adj[u].contains(v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.size += 1;
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Option<Vertex> {
        self.index.get(label).copied()
    }

    pub fn vertex_or_err(&self, label: &str) -> Result<Vertex, GraphError> {
        self.vertex(label)
            .ok_or_else(|| GraphError::UnknownLabel(label.to_string()))
    }

    pub fn adjacency(&self, v: Vertex) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].ones()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.order() && v < self.order() && self.adj[u].contains(v)
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.size);
        for u in 0..self.order() {
            out.extend(self.adj[u].ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn degree_census(&self) -> DegreeCensus {
        let mut counts = BTreeMap::new();
        for v in 0..self.order() {
            *counts.entry(self.degree(v)).or_insert(0) += 1;
        }
        let cubic_count = counts.get(&3).copied().unwrap_or(0);
        DegreeCensus { counts, cubic_count }
    }

    pub fn is_regular(&self, degree: usize) -> bool {
        (0..self.order()).all(|v| self.degree(v) == degree)
    }

    /// Subgraph induced by `keep`, in the given order. Labels are preserved.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Result<Graph, GraphError> {
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            self.check(v)?;
            pos[v] = i;
        }
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let mut g = Graph::with_labels(labels)?;
        for (i, &v) in keep.iter().enumerate() {
            for w in self.adj[v].ones() {
                let j = pos[w];
                if j != usize::MAX && i < j {
                    g.insert_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    pub fn delete_vertex(&self, v: Vertex) -> Result<Graph, GraphError> {
        self.check(v)?;
        let keep: Vec<Vertex> = (0..self.order()).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    pub fn delete_vertices(&self, remove: &[Vertex]) -> Result<Graph, GraphError> {
        let mut drop = vec![false; self.order()];
        for &v in remove {
            self.check(v)?;
            drop[v] = true;
        }
        let keep: Vec<Vertex> = (0..self.order()).filter(|&u| !drop[u]).collect();
        self.induced_subgraph(&keep)
    }

    pub fn add_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.insert_edge(u, v)?;
        Ok(g)
    }

    pub fn delete_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u.min(v), u.max(v)));
        }
        let mut g = self.clone();
        g.adj[u].set(v, false);
        g.adj[v].set(u, false);
        g.size -= 1;
        Ok(g)
    }

    /// Appends an isolated vertex and returns it together with the new graph.
    pub fn add_vertex(&self, label: impl Into<String>) -> Result<(Graph, Vertex), GraphError> {
        let label = label.into();
        if self.index.contains_key(&label) {
            return Err(GraphError::DuplicateLabel(label));
        }
        let n = self.order() + 1;
        let mut labels = self.labels.clone();
        labels.push(label.clone());
        let mut index = self.index.clone();
        index.insert(label, n - 1);
        let mut adj = self.adj.clone();
        for row in adj.iter_mut() {
            row.grow(n);
        }
        adj.push(FixedBitSet::with_capacity(n));
        Ok((
            Graph {
                labels,
                index,
                adj,
                size: self.size,
            },
            n - 1,
        ))
    }

    /// Contracts every edge in `edges`, merging endpoints and simplifying.
    ///
    /// Each merged class keeps the label of its lowest-index member; classes
    /// are ordered by that index. Loops vanish and parallel edges collapse.
    pub fn contract_edges(&self, edges: &[Edge]) -> Result<Graph, GraphError> {
        for &(u, v) in edges {
            self.check(u)?;
            self.check(v)?;
            if !self.has_edge(u, v) {
                return Err(GraphError::MissingEdge(u.min(v), u.max(v)));
            }
        }
        self.merge(edges)
    }

    /// Identifies each pair of vertices, adjacent or not. Edges inside a
    /// merged class vanish and parallel edges collapse.
    pub fn identify(&self, pairs: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        for &(u, v) in pairs {
            self.check(u)?;
            self.check(v)?;
        }
        self.merge(pairs)
    }

    fn merge(&self, pairs: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        let n = self.order();
        let mut parent: Vec<Vertex> = (0..n).collect();
        fn find(parent: &mut [Vertex], mut x: Vertex) -> Vertex {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, v) in pairs {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                // keep the smaller index as the root so labels are deterministic
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
            }
        }
        let mut class = vec![usize::MAX; n];
        let mut labels = Vec::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            if r == v {
                class[v] = labels.len();
                labels.push(self.labels[v].clone());
            }
        }
        for v in 0..n {
            let r = find(&mut parent, v);
            class[v] = class[r];
        }
        let mut g = Graph::with_labels(labels)?;
        for (u, v) in self.edges() {
            let (a, b) = (class[u], class[v]);
            if a != b && !g.adj[a].contains(b) {
                g.insert_edge(a, b)?;
            }
        }
        Ok(g)
    }

    /// Relabels vertex indices: vertex `v` moves to position `perm[v]`.
    pub fn permute(&self, perm: &[Vertex]) -> Graph {
        let n = self.order();
        assert_eq!(perm.len(), n, "permutation length must equal the order");
        let mut labels = vec![String::new(); n];
        for v in 0..n {
            labels[perm[v]] = self.labels[v].clone();
        }
        let mut g = Graph::with_labels(labels).expect("permutation keeps labels unique");
        for (u, v) in self.edges() {
            g.insert_edge(perm[u], perm[v])
                .expect("permutation maps a simple graph to a simple graph");
        }
        g
    }

    /// Same adjacency with fresh labels.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Graph, GraphError> {
        assert_eq!(labels.len(), self.order());
        let mut g = Graph::with_labels(labels)?;
        g.adj = self.adj.clone();
        g.size = self.size;
        Ok(g)
    }

    /// Same adjacency with every label prefixed by `prefix`.
    pub fn prefixed(&self, prefix: &str) -> Graph {
        let labels = self.labels.iter().map(|l| format!("{prefix}{l}")).collect();
        self.relabeled(labels).expect("prefixing keeps labels unique")
    }

    /// Disjoint union; fails only if the two label sets intersect.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let off = self.order();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut g = Graph::with_labels(labels)?;
        for (u, v) in self.edges() {
            g.insert_edge(u, v)?;
        }
        for (u, v) in other.edges() {
            g.insert_edge(u + off, v + off)?;
        }
        Ok(g)
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for w in self.adj[u].ones() {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.components().len() == 1
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("size", &self.size)
            .field("edges", &self.edges())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn census_of_k4() {
        let c = named::complete(4).degree_census();
        assert_eq!(c.cubic_count, 4);
        assert_eq!(c.count(3), 4);
        assert_eq!(c.counts.len(), 1);
    }

    #[test]
    fn deleting_from_c5_gives_p4() {
        let c5 = named::cycle(5);
        for v in 0..5 {
            let p = c5.delete_vertex(v).unwrap();
            assert_eq!(p.order(), 4);
            assert_eq!(p.size(), 3);
            assert!(p.is_connected());
            let c = p.degree_census();
            assert_eq!((c.count(1), c.count(2)), (2, 2));
        }
    }

    #[test]
    fn deleting_from_k4_gives_triangle() {
        let t = named::complete(4).delete_vertex(2).unwrap();
        assert_eq!((t.order(), t.size()), (3, 3));
        assert_eq!(t.labels(), &["0", "1", "3"]);
    }

    #[test]
    fn deleting_from_petersen() {
        let p = named::petersen();
        for v in 0..10 {
            let h = p.delete_vertex(v).unwrap();
            assert_eq!((h.order(), h.size()), (9, 12));
        }
    }

    #[test]
    fn delete_out_of_range() {
        assert_eq!(
            named::cycle(5).delete_vertex(7),
            Err(GraphError::VertexOutOfRange { vertex: 7, order: 5 })
        );
    }

    #[test]
    fn contract_single_k4_edge() {
        let t = named::complete(4).contract_edges(&[(0, 1)]).unwrap();
        assert_eq!((t.order(), t.size()), (3, 3));
        assert_eq!(t.labels(), &["0", "2", "3"]);
    }

    #[test]
    fn contract_all_k4_edges() {
        let k4 = named::complete(4);
        let one = k4.contract_edges(&k4.edges()).unwrap();
        assert_eq!((one.order(), one.size()), (1, 0));
    }

    #[test]
    fn contract_missing_edge() {
        assert_eq!(
            named::cycle(5).contract_edges(&[(0, 2)]),
            Err(GraphError::MissingEdge(0, 2))
        );
    }

    #[test]
    fn add_edge_closes_path() {
        let p3 = named::path(3);
        let c3 = p3.add_edge(0, 2).unwrap();
        assert_eq!(c3.size(), 3);
        assert!(c3.is_regular(2));
        assert_eq!(p3.add_edge(0, 1), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(p3.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn chord_in_c4() {
        let g = named::cycle(4).add_edge(0, 2).unwrap();
        assert_eq!(g.size(), 5);
        let c = g.degree_census();
        assert_eq!((c.count(2), c.count(3)), (2, 2));
    }

    #[test]
    fn labelled_edges_and_lookup() {
        let g = Graph::from_labeled_edges(&[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(g.vertex("c"), Some(2));
        assert!(g.has_edge(0, 1));
        assert!(matches!(
            g.vertex_or_err("z"),
            Err(GraphError::UnknownLabel(_))
        ));
        assert!(Graph::with_labels(vec!["x".into(), "x".into()]).is_err());
    }

    #[test]
    fn add_vertex_then_edge() {
        let (g, v) = named::cycle(3).add_vertex("hub").unwrap();
        assert_eq!(v, 3);
        let g = g.add_edge(0, v).unwrap();
        assert_eq!(g.degree(v), 1);
        assert!(named::cycle(3).add_vertex("1").is_err());
    }

    #[test]
    fn permute_preserves_structure() {
        let p = named::petersen();
        let perm: Vec<usize> = (0..10).rev().collect();
        let q = p.permute(&perm);
        assert_eq!(q.size(), 15);
        assert_eq!(q.label(9), "0");
        assert!(q.has_edge(9, 8) == p.has_edge(0, 1));
    }
}
