//! Small named graphs used as fixtures and construction inputs.

use crate::graph::Graph;

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("complete graph is simple")
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v)));
    Graph::from_edges(a + b, edges).expect("complete bipartite graph is simple")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
}

/// `K_{1,k}` with the centre at vertex 0.
pub fn star(k: usize) -> Graph {
    Graph::from_edges(k + 1, (1..=k).map(|i| (0, i))).expect("star is simple")
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Graph::from_edges(10, edges).expect("Petersen graph is simple")
}

/// Circular ladder `C_k x K_2`: cubic, planar, order `2k`.
pub fn prism(k: usize) -> Graph {
    assert!(k >= 3);
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((i, (i + 1) % k));
        edges.push((k + i, k + (i + 1) % k));
        edges.push((i, k + i));
    }
    Graph::from_edges(2 * k, edges).expect("prism is simple")
}

/// The 3-cube `Q3`.
pub fn cube() -> Graph {
    let edges = (0..8usize).flat_map(|u| {
        (0..3)
            .map(move |b| (u, u ^ (1 << b)))
            .filter(|&(u, v)| u < v)
    });
    Graph::from_edges(8, edges).expect("cube is simple")
}

/// The dodecahedron as the generalized Petersen graph `GP(10, 2)`.
pub fn dodecahedron() -> Graph {
    let mut edges = Vec::new();
    for i in 0..10 {
        edges.push((i, (i + 1) % 10));
        edges.push((i, 10 + i));
        let (a, b) = (10 + i, 10 + (i + 2) % 10);
        edges.push((a.min(b), a.max(b)));
    }
    edges.sort();
    edges.dedup();
    Graph::from_edges(20, edges).expect("dodecahedron is simple")
}

/// The 42-vertex planar hypohamiltonian graph of Wiener and Araya.
///
/// Built from four concentric rings of sizes 4, 12, 20 and 6 that are then
/// rewired; vertex `ring.i` is labelled `r{ring}.{i}`.
pub fn wiener_araya() -> Graph {
    use std::collections::BTreeSet;
    let id = |ring: usize, i: usize| format!("r{ring}.{i}");
    let mut edges: BTreeSet<(String, String)> = BTreeSet::new();
    let key = |a: String, b: String| if a < b { (a, b) } else { (b, a) };
    for (ring, len) in [(0usize, 4usize), (1, 12), (2, 20), (3, 6)] {
        for i in 0..len {
            edges.insert(key(id(ring, i), id(ring, (i + 1) % len)));
        }
    }
    for i in 0..4 {
        edges.remove(&key(id(1, 3 * i), id(1, 3 * i + 1)));
        edges.insert(key(id(1, 3 * i), id(0, i)));
        edges.insert(key(id(1, 3 * i + 1), id(0, i)));
        edges.insert(key(id(2, 5 * i + 2), id(1, 3 * i)));
        edges.insert(key(id(2, 5 * i + 3), id(1, 3 * i + 1)));
        edges.insert(key(id(2, (5 * i + 5) % 20), id(1, 3 * i + 2)));
        let inner = i + usize::from(i >= 1) + usize::from(i >= 3);
        edges.insert(key(id(2, (5 * i + 1) % 20), id(3, inner)));
        edges.insert(key(id(2, (5 * i + 4) % 20), id(3, inner)));
    }
    edges.remove(&key(id(3, 1), id(3, 0)));
    edges.insert(key(id(3, 1), id(2, 4)));
    edges.remove(&key(id(3, 4), id(3, 3)));
    edges.insert(key(id(3, 4), id(2, 14)));
    edges.insert(key(id(3, 1), id(3, 4)));

    let mut labels: Vec<String> = Vec::new();
    for (ring, len) in [(0usize, 4usize), (1, 12), (2, 20), (3, 6)] {
        labels.extend((0..len).map(|i| id(ring, i)));
    }
    let mut g = Graph::with_labels(labels).expect("ring labels are unique");
    for (a, b) in &edges {
        let (u, v) = (g.vertex(a).unwrap(), g.vertex(b).unwrap());
        g.insert_edge(u, v).expect("edge set has no duplicates");
    }
    g
}
