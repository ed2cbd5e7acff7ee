//! Planarity, faces, girth and the crossing-number-one test.

mod embedding;
mod lr;

pub use embedding::{EmbeddingError, FaceProfile, PlanarEmbedding};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of `K5` or `K3,3` contained in the graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuratowskiObstruction {
    pub kind: KuratowskiKind,
    /// Vertices of degree at least three in the subdivision.
    pub branch_vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone)]
pub enum Planarity {
    Planar(PlanarEmbedding),
    NonPlanar(KuratowskiObstruction),
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }

    pub fn embedding(&self) -> Option<&PlanarEmbedding> {
        match self {
            Planarity::Planar(e) => Some(e),
            Planarity::NonPlanar(_) => None,
        }
    }
}

/// Plane embedding computed by the left-right test, or `None` if non-planar.
pub fn planar_embedding(g: &Graph) -> Option<PlanarEmbedding> {
    let rotation = lr::lr_planarity(g)?;
    Some(
        PlanarEmbedding::from_rotation(g.clone(), rotation)
            .expect("left-right test returned an invalid rotation system"),
    )
}

pub fn is_planar_graph(g: &Graph) -> bool {
    lr::lr_planarity(g).is_some()
}

/// Planarity decision with a witness either way.
pub fn is_planar(g: &Graph) -> Planarity {
    match planar_embedding(g) {
        Some(e) => Planarity::Planar(e),
        None => Planarity::NonPlanar(kuratowski_subgraph(g)),
    }
}

/// Greedy edge deletion down to a minimal non-planar subgraph, which is a
/// Kuratowski subdivision.
fn kuratowski_subgraph(g: &Graph) -> KuratowskiObstruction {
    let mut current = g.clone();
    for (u, v) in g.edges() {
        let trial = current.delete_edge(u, v).expect("edge still present");
        if !is_planar_graph(&trial) {
            current = trial;
        }
    }
    let branch_vertices: Vec<Vertex> = (0..current.order())
        .filter(|&v| current.degree(v) >= 3)
        .collect();
    let kind = if branch_vertices.iter().any(|&v| current.degree(v) == 4) {
        KuratowskiKind::K5
    } else {
        KuratowskiKind::K33
    };
    KuratowskiObstruction {
        kind,
        branch_vertices,
        edges: current.edges(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GirthError {
    #[error("graph is a forest")]
    Forest,
}

/// Length of a shortest cycle, by breadth-first search from every vertex.
pub fn girth(g: &Graph) -> Result<usize, GirthError> {
    let n = g.order();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = Vec::with_capacity(n);
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        queue.clear();
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.push(root);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Err(GirthError::Forest)
    } else {
        Ok(best)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CrossingVerdict {
    Planar,
    /// Replacing the two edges by a degree-4 crossing vertex gives a planar graph.
    OneCrossing { first: Edge, second: Edge },
    More,
}

/// Replaces independent edges `ab`, `cd` with a new vertex adjacent to `a, b, c, d`.
pub fn planarize_crossing(g: &Graph, first: Edge, second: Edge) -> Graph {
    let (a, b) = first;
    let (c, d) = second;
    let h = g
        .delete_edge(a, b)
        .and_then(|h| h.delete_edge(c, d))
        .expect("crossing edges must be present");
    let mut label = String::from("x");
    while h.vertex(&label).is_some() {
        label.push('\'');
    }
    let (mut h, x) = h.add_vertex(label).expect("fresh label");
    for y in [a, b, c, d] {
        h = h.add_edge(x, y).expect("crossing vertex is new");
    }
    h
}

/// Decides `cr(g) == 0`, `cr(g) == 1` or `cr(g) >= 2` by trying every pair of
/// independent edges as the single crossing. The reported pair is the
/// lexicographically first that works.
pub fn crossing_number_at_most_one(g: &Graph) -> CrossingVerdict {
    if is_planar_graph(g) {
        return CrossingVerdict::Planar;
    }
    let edges = g.edges();
    let mut pairs = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a != c && a != d && b != c && b != d {
                pairs.push((edges[i], edges[j]));
            }
        }
    }
    match pairs
        .par_iter()
        .find_first(|&&(e1, e2)| is_planar_graph(&planarize_crossing(g, e1, e2)))
    {
        Some(&(first, second)) => CrossingVerdict::OneCrossing { first, second },
        None => CrossingVerdict::More,
    }
}
