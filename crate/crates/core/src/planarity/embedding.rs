//! Rotation systems and the faces they induce.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("rotation has {got} entries, graph has {expected} vertices")]
    WrongLength { expected: usize, got: usize },
    #[error("rotation at vertex {vertex} is not a permutation of its neighbours")]
    NotAPermutation { vertex: Vertex },
    #[error("Euler check failed: V - E + F = {lhs}, expected {expected}")]
    Euler { lhs: i64, expected: i64 },
}

/// Face-size multiset of an embedding.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceProfile {
    pub f_counts: BTreeMap<usize, usize>,
}

impl FaceProfile {
    pub fn from_sizes<I: IntoIterator<Item = usize>>(sizes: I) -> Self {
        let mut f_counts = BTreeMap::new();
        for s in sizes {
            *f_counts.entry(s).or_insert(0) += 1;
        }
        FaceProfile { f_counts }
    }

    pub fn face_count(&self) -> usize {
        self.f_counts.values().sum()
    }

    pub fn count(&self, size: usize) -> usize {
        self.f_counts.get(&size).copied().unwrap_or(0)
    }

    /// Sum of `size * count`; equals twice the number of edges.
    pub fn dart_total(&self) -> usize {
        self.f_counts.iter().map(|(s, c)| s * c).sum()
    }
}

impl std::fmt::Display for FaceProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .f_counts
            .iter()
            .map(|(s, c)| format!("{s}:{c}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A combinatorial plane embedding: clockwise neighbour order at every vertex
/// together with the derived face walks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarEmbedding {
    graph: Graph,
    rotation: Vec<Vec<Vertex>>,
    // position of w in rotation[v], indexed densely by v then by neighbour slot
    faces: Vec<Vec<Vertex>>,
    dart_face: Vec<Vec<usize>>,
    outer_face: usize,
}

impl PlanarEmbedding {
    /// Validates `rotation` against `graph` and traces its faces.
    ///
    /// Fails unless every rotation is a permutation of the neighbourhood and
    /// the traced faces satisfy Euler's formula for each component.
    pub fn from_rotation(graph: Graph, rotation: Vec<Vec<Vertex>>) -> Result<Self, EmbeddingError> {
        let n = graph.order();
        if rotation.len() != n {
            return Err(EmbeddingError::WrongLength {
                expected: n,
                got: rotation.len(),
            });
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            let nbrs: Vec<Vertex> = graph.neighbors(v).collect();
            if sorted != nbrs {
                return Err(EmbeddingError::NotAPermutation { vertex: v });
            }
        }
        let (faces, dart_face) = trace_faces(&rotation);
        let isolated = (0..n).filter(|&v| graph.degree(v) == 0).count();
        let components = graph.components().len() as i64;
        let lhs = n as i64 - graph.size() as i64 + faces.len() as i64 + isolated as i64;
        if lhs != 2 * components {
            return Err(EmbeddingError::Euler {
                lhs,
                expected: 2 * components,
            });
        }
        let outer_face = faces
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.len().cmp(&b.1.len()).then(b.0.cmp(&a.0)))
            .map(|(i, _)| i)
            .unwrap_or(0);
        Ok(PlanarEmbedding {
            graph,
            rotation,
            faces,
            dart_face,
            outer_face,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Clockwise neighbour order around `v`.
    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rotation
    }

    /// Face walks; face `i` lists the tail of each of its darts in order.
    pub fn faces(&self) -> &[Vec<Vertex>] {
        &self.faces
    }

    pub fn outer_face(&self) -> usize {
        self.outer_face
    }

    pub fn with_outer_face(mut self, face: usize) -> Self {
        assert!(face < self.faces.len());
        self.outer_face = face;
        self
    }

    /// Face to which the dart `u -> v` belongs.
    pub fn dart_face(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let i = self.rotation[u].iter().position(|&w| w == v)?;
        Some(self.dart_face[u][i])
    }

    /// The two faces on either side of edge `uv`.
    pub fn edge_faces(&self, u: Vertex, v: Vertex) -> Option<(usize, usize)> {
        Some((self.dart_face(u, v)?, self.dart_face(v, u)?))
    }

    /// Faces incident to `v`, one entry per incident dart, in rotation order.
    pub fn faces_around(&self, v: Vertex) -> &[usize] {
        &self.dart_face[v]
    }

    pub fn face_profile(&self) -> FaceProfile {
        FaceProfile::from_sizes(self.faces.iter().map(Vec::len))
    }

    /// Index of a face whose boundary walk is exactly the given cycle.
    pub fn find_face(&self, cycle: &[Vertex]) -> Option<usize> {
        let mut want = cycle.to_vec();
        want.sort_unstable();
        self.faces.iter().position(|f| {
            let mut got = f.clone();
            got.sort_unstable();
            got == want && f.len() == cycle.len()
        })
    }

    /// Mirror image: every rotation reversed.
    pub fn mirrored(&self) -> Self {
        let rotation = self
            .rotation
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        PlanarEmbedding::from_rotation(self.graph.clone(), rotation)
            .expect("mirror of a valid embedding is valid")
    }
}

/// Traces the orbits of `u -> v  =>  v -> succ_v(u)`.
fn trace_faces(rotation: &[Vec<Vertex>]) -> (Vec<Vec<Vertex>>, Vec<Vec<usize>>) {
    let n = rotation.len();
    let mut pos: Vec<std::collections::HashMap<Vertex, usize>> = Vec::with_capacity(n);
    for rot in rotation {
        pos.push(rot.iter().enumerate().map(|(i, &w)| (w, i)).collect());
    }
    let mut dart_face: Vec<Vec<usize>> = rotation.iter().map(|r| vec![usize::MAX; r.len()]).collect();
    let mut faces = Vec::new();
    for u in 0..n {
        for i in 0..rotation[u].len() {
            if dart_face[u][i] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let (mut a, mut slot) = (u, i);
            while dart_face[a][slot] == usize::MAX {
                dart_face[a][slot] = id;
                walk.push(a);
                let b = rotation[a][slot];
                let back = pos[b][&a];
                let next = (back + 1) % rotation[b].len();
                a = b;
                slot = next;
            }
            faces.push(walk);
        }
    }
    (faces, dart_face)
}
