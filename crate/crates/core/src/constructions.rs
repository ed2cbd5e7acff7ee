//! Graph-building operations: the Th expansion of a 4-cycle, insertion into
//! cubic hosts, the four-graph hypotraceable join, H-relations and the order
//! ladder.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, GraphError, Vertex};
use crate::hamiltonicity::{classify_with, ClassifyOptions, ClassificationReport, Decision};
use crate::planarity::{is_planar_graph, planar_embedding};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{0:?} is not a 4-cycle")]
    NotAFourCycle([Vertex; 4]),
    #[error("edge {0}-{1} must be present to be deleted")]
    MissingEdge(Vertex, Vertex),
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubicVertex { vertex: Vertex, degree: usize },
    #[error("host graph is not 3-regular")]
    NotCubicHost,
    #[error("invalid shared-subgraph map: {0}")]
    InvalidMap(String),
    #[error("ladder needs n >= 40, got {0}")]
    OrderTooSmall(usize),
    #[error("no base graph of order {0} is available")]
    BaseUnavailable(usize),
    #[error("base of order {order} has no 4-cycle whose expansion verifies")]
    NoUsableCycle { order: usize },
    #[error("ladder step produced a graph that failed verification at order {0}")]
    VerificationFailed(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A 4-cycle `v1 v2 v3 v4` in cyclic order. Th removes `v1v2` and `v3v4`
/// unless `keep_edges` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FourCycleSpec {
    pub cycle: [Vertex; 4],
    pub keep_edges: bool,
}

impl FourCycleSpec {
    pub fn new(cycle: [Vertex; 4], keep_edges: bool) -> Self {
        FourCycleSpec { cycle, keep_edges }
    }

    pub fn validate(&self, g: &Graph) -> Result<(), ConstructionError> {
        let c = self.cycle;
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| c[i] != c[j]));
        if !distinct || c.iter().any(|&v| v >= g.order()) {
            return Err(ConstructionError::NotAFourCycle(c));
        }
        for i in 0..4 {
            if !g.has_edge(c[i], c[(i + 1) % 4]) {
                return Err(ConstructionError::NotAFourCycle(c));
            }
        }
        Ok(())
    }
}

fn fresh_label(g: &Graph, base: &str) -> String {
    let mut label = format!("{base}'");
    while g.vertex(&label).is_some() {
        label.push('\'');
    }
    label
}

/// Result of Th together with the new 4-cycle `v'1 v'2 v'3 v'4`, whose
/// vertices are cubic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub graph: Graph,
    pub fresh: [Vertex; 4],
}

/// Th(G, C): add a 4-cycle `v'1..v'4` joined by `v_i v'_i`, deleting
/// `v1v2` and `v3v4` in the default variant.
pub fn th(g: &Graph, spec: &FourCycleSpec) -> Result<Expansion, ConstructionError> {
    spec.validate(g)?;
    let c = spec.cycle;
    let mut h = g.clone();
    if !spec.keep_edges {
        for (a, b) in [(c[0], c[1]), (c[2], c[3])] {
            h = h.delete_edge(a, b).map_err(|_| ConstructionError::MissingEdge(a, b))?;
        }
    }
    let mut fresh = [0; 4];
    for i in 0..4 {
        let label = fresh_label(&h, g.label(c[i]));
        let (next, v) = h.add_vertex(label)?;
        h = next;
        fresh[i] = v;
    }
    for i in 0..4 {
        h.insert_edge(fresh[i], fresh[(i + 1) % 4])?;
        h.insert_edge(c[i], fresh[i])?;
    }
    Ok(Expansion { graph: h, fresh })
}

fn require_cubic(g: &Graph, v: Vertex) -> Result<[Vertex; 3], ConstructionError> {
    if v >= g.order() {
        return Err(GraphError::VertexOutOfRange {
            vertex: v,
            order: g.order(),
        }
        .into());
    }
    let mut nbrs: Vec<Vertex> = g.neighbors(v).collect();
    if nbrs.len() != 3 {
        return Err(ConstructionError::NotCubicVertex {
            vertex: v,
            degree: nbrs.len(),
        });
    }
    nbrs.sort_by(|&a, &b| g.label(a).cmp(g.label(b)).then(a.cmp(&b)));
    Ok([nbrs[0], nbrs[1], nbrs[2]])
}

/// Copy of `g - w` with labels prefixed; returns the graph and the index in
/// the copy of each vertex of `g` (`None` for `w`).
fn punctured(g: &Graph, w: Vertex, prefix: &str) -> (Graph, Vec<Option<Vertex>>) {
    let h = g.delete_vertex(w).expect("vertex in range").prefixed(prefix);
    let index = (0..g.order())
        .map(|v| match v.cmp(&w) {
            std::cmp::Ordering::Less => Some(v),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(v - 1),
        })
        .collect();
    (h, index)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Insertion {
    pub graph: Graph,
    /// One edge per host edge, joining copies of neighbours of `w`.
    pub host_edges: Vec<Edge>,
}

/// Replaces every vertex of the cubic `host` by a copy of `g - w`. A host
/// vertex's incident edges, sorted by the other endpoint, are attached in
/// turn to the neighbours of `w` sorted by label.
pub fn insert(g: &Graph, w: Vertex, host: &Graph) -> Result<Insertion, ConstructionError> {
    let stubs = require_cubic(g, w)?;
    if !host.is_regular(3) {
        return Err(ConstructionError::NotCubicHost);
    }
    let block = g.order() - 1;
    let mut out = Graph::empty(0);
    let mut index = Vec::new();
    for x in 0..host.order() {
        let (copy, idx) = punctured(g, w, &format!("{}.", host.label(x)));
        out = out.disjoint_union(&copy)?;
        index = idx;
    }
    let at = |x: Vertex, v: Vertex| x * block + index[v].expect("stub is not w");
    let slot = |x: Vertex, y: Vertex| {
        let mut inc: Vec<Vertex> = host.neighbors(x).collect();
        inc.sort_unstable();
        inc.iter().position(|&z| z == y).expect("host edge")
    };
    let mut host_edges = Vec::with_capacity(host.size());
    for (x, y) in host.edges() {
        let a = at(x, stubs[slot(x, y)]);
        let b = at(y, stubs[slot(y, x)]);
        out.insert_edge(a, b)?;
        host_edges.push((a.min(b), a.max(b)));
    }
    Ok(Insertion {
        graph: out,
        host_edges,
    })
}

/// Joins four graphs at cubic vertices `w_i` with sorted neighbours
/// `a_i, b_i, c_i`: delete each `w_i`, identify `a1` with `a2` and `a3`
/// with `a4`, then add `b1b3, c1c3, b2b4, c2c4`. Order is the total minus 6.
/// `stubs` overrides the neighbour order per graph.
pub fn combine_four(
    parts: [(&Graph, Vertex); 4],
    stubs: Option<[[Vertex; 3]; 4]>,
) -> Result<Graph, ConstructionError> {
    let mut ends = [[0usize; 3]; 4];
    let mut out = Graph::empty(0);
    for (i, &(g, w)) in parts.iter().enumerate() {
        let mut s = require_cubic(g, w)?;
        if let Some(given) = stubs {
            let mut want = given[i];
            want.sort_unstable();
            let mut have = s;
            have.sort_unstable();
            if want != have {
                return Err(ConstructionError::InvalidMap(format!(
                    "stubs of part {i} are not the neighbours of w"
                )));
            }
            s = given[i];
        }
        let offset = out.order();
        let (copy, idx) = punctured(g, w, &format!("g{}.", i + 1));
        out = out.disjoint_union(&copy)?;
        for k in 0..3 {
            ends[i][k] = offset + idx[s[k]].expect("stub is not w");
        }
    }
    for (b, c) in [(0, 2), (1, 3)] {
        for k in 1..3 {
            out.insert_edge(ends[b][k], ends[c][k])?;
        }
    }
    let merged = out.identify(&[(ends[0][0], ends[1][0]), (ends[2][0], ends[3][0])])?;
    Ok(merged)
}

/// Images of `V(H)` in two host graphs: `first[h]` and `second[h]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharedSubgraphMap {
    pub first: Vec<Vertex>,
    pub second: Vec<Vertex>,
}

impl SharedSubgraphMap {
    pub fn identity(n: usize) -> Self {
        SharedSubgraphMap {
            first: (0..n).collect(),
            second: (0..n).collect(),
        }
    }

    /// Matches vertices of `h` to equally labelled vertices of `g1`, `g2`.
    pub fn by_label(g1: &Graph, g2: &Graph, h: &Graph) -> Result<Self, ConstructionError> {
        let find = |g: &Graph| -> Result<Vec<Vertex>, ConstructionError> {
            h.labels()
                .iter()
                .map(|l| {
                    g.vertex(l)
                        .ok_or_else(|| ConstructionError::InvalidMap(format!("label {l:?} missing")))
                })
                .collect()
        };
        Ok(SharedSubgraphMap {
            first: find(g1)?,
            second: find(g2)?,
        })
    }
}

fn check_embedding(g: &Graph, h: &Graph, map: &[Vertex]) -> Result<(), ConstructionError> {
    if map.len() != h.order() {
        return Err(ConstructionError::InvalidMap(format!(
            "map has {} entries for {} vertices",
            map.len(),
            h.order()
        )));
    }
    let mut used = vec![false; g.order()];
    for &v in map {
        if v >= g.order() || used[v] {
            return Err(ConstructionError::InvalidMap(format!("image {v} repeats or is out of range")));
        }
        used[v] = true;
    }
    for (a, b) in h.edges() {
        if !g.has_edge(map[a], map[b]) {
            return Err(ConstructionError::InvalidMap(format!(
                "edge {}-{} has no image",
                h.label(a),
                h.label(b)
            )));
        }
    }
    Ok(())
}

fn excess(g: &Graph, h: &Graph) -> (i64, i64) {
    (
        g.order() as i64 - h.order() as i64,
        g.size() as i64 - h.size() as i64,
    )
}

/// `g1 =_H g2`: both contain `h` and exceed it by the same numbers of
/// vertices and edges.
pub fn h_equivalent(
    g1: &Graph,
    g2: &Graph,
    h: &Graph,
    maps: &SharedSubgraphMap,
) -> Result<bool, ConstructionError> {
    check_embedding(g1, h, &maps.first)?;
    check_embedding(g2, h, &maps.second)?;
    Ok(excess(g1, h) == excess(g2, h))
}

/// `g1 >_H g2`: `g1` exceeds `h` by strictly more vertices and strictly
/// more edges than `g2` does.
pub fn h_strictly_bigger(
    g1: &Graph,
    g2: &Graph,
    h: &Graph,
    maps: &SharedSubgraphMap,
) -> Result<bool, ConstructionError> {
    check_embedding(g1, h, &maps.first)?;
    check_embedding(g2, h, &maps.second)?;
    let (v1, e1) = excess(g1, h);
    let (v2, e2) = excess(g2, h);
    Ok(v1 > v2 && e1 > e2)
}

/// 4-cycles bounding faces of a plane embedding of `g`, as Th specs in both
/// orientations, those with more cubic vertices first. Cycles without a
/// cubic vertex are kept: the ladder verifies every expansion anyway.
pub fn facial_four_cycles(g: &Graph) -> Vec<FourCycleSpec> {
    let Some(e) = planar_embedding(g) else {
        return Vec::new();
    };
    let mut specs: Vec<(usize, FourCycleSpec)> = Vec::new();
    for f in e.faces() {
        if f.len() != 4 {
            continue;
        }
        let c = [f[0], f[1], f[2], f[3]];
        if (0..4).any(|i| (i + 1..4).any(|j| c[i] == c[j])) {
            continue;
        }
        let cubic = c.iter().filter(|&&v| g.degree(v) == 3).count();
        for rot in [c, [c[1], c[2], c[3], c[0]]] {
            specs.push((cubic, FourCycleSpec::new(rot, false)));
        }
    }
    specs.sort_by_key(|&(cubic, s)| (std::cmp::Reverse(cubic), s.cycle));
    specs.into_iter().map(|(_, s)| s).collect()
}

#[derive(Debug, Clone)]
pub struct LadderStep {
    pub order: usize,
    pub spec: FourCycleSpec,
}

#[derive(Debug, Clone)]
pub struct Ladder {
    pub base_order: usize,
    pub steps: Vec<LadderStep>,
    pub graph: Graph,
    pub report: ClassificationReport,
}

fn verified(g: &Graph, opts: &ClassifyOptions) -> Option<ClassificationReport> {
    if !is_planar_graph(g) {
        return None;
    }
    let r = classify_with(g, opts);
    (r.hypohamiltonian == Decision::Yes).then_some(r)
}

/// Planar hypohamiltonian graph of order `n >= 40`: the base of order
/// `40 + (n mod 4)` followed by Th steps on the newest 4-cycle. The first
/// 4-cycle is the first facial one whose expansion verifies.
pub fn build_order(
    n: usize,
    bases: &dyn Fn(usize) -> Option<Graph>,
    opts: &ClassifyOptions,
) -> Result<Ladder, ConstructionError> {
    if n < 40 {
        return Err(ConstructionError::OrderTooSmall(n));
    }
    let base_order = 40 + (n - 40) % 4;
    let base = bases(base_order).ok_or(ConstructionError::BaseUnavailable(base_order))?;
    if base.order() != base_order {
        return Err(ConstructionError::BaseUnavailable(base_order));
    }
    let k = (n - base_order) / 4;
    if k == 0 {
        let report = verified(&base, opts).ok_or(ConstructionError::VerificationFailed(n))?;
        return Ok(Ladder {
            base_order,
            steps: Vec::new(),
            graph: base,
            report,
        });
    }
    let mut first = None;
    for spec in facial_four_cycles(&base) {
        let step = th(&base, &spec)?;
        if let Some(report) = verified(&step.graph, opts) {
            first = Some((spec, step, report));
            break;
        }
    }
    let (spec, mut current, mut report) =
        first.ok_or(ConstructionError::NoUsableCycle { order: base_order })?;
    let mut steps = vec![LadderStep {
        order: current.graph.order(),
        spec,
    }];
    for _ in 1..k {
        let spec = FourCycleSpec::new(current.fresh, false);
        current = th(&current.graph, &spec)?;
        steps.push(LadderStep {
            order: current.graph.order(),
            spec,
        });
    }
    if k > 1 {
        report = verified(&current.graph, opts)
            .ok_or(ConstructionError::VerificationFailed(current.graph.order()))?;
    }
    Ok(Ladder {
        base_order,
        steps,
        graph: current.graph,
        report,
    })
}
