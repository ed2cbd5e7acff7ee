//! Grinberg's condition for Hamiltonian cycles in plane graphs.
//!
//! A Hamiltonian cycle splits the faces into inside and outside. Writing
//! `f_i` and `f'_i` for the numbers of inside and outside faces of size `i`,
//! every such cycle satisfies `sum (i - 2)(f_i - f'_i) = 0`. An edge lies on
//! the cycle exactly when its two faces are on different sides.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Vertex;
use crate::planarity::{FaceProfile, PlanarEmbedding};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrinbergError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("{faces} faces exceed the exact-search cap of {cap}; use the residue screen")]
    TooManyFaces { faces: usize, cap: usize },
    #[error("sequence is not a Hamiltonian cycle of the embedded graph")]
    NotACycle,
}

/// Per-face weights `size - 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrinbergSignature {
    pub contributions: Vec<i64>,
}

impl GrinbergSignature {
    pub fn of(e: &PlanarEmbedding) -> Self {
        GrinbergSignature {
            contributions: e.faces().iter().map(|f| f.len() as i64 - 2).collect(),
        }
    }

    pub fn total(&self) -> i64 {
        self.contributions.iter().sum()
    }

    /// Weighted difference `sum c_f [inside] - sum c_f [outside]`.
    pub fn weighted_sum(&self, inside: &[bool]) -> i64 {
        self.contributions
            .iter()
            .zip(inside)
            .map(|(&c, &i)| if i { c } else { -c })
            .sum()
    }
}

/// Inside and outside face counts per face size.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Split {
    /// size -> (inside, outside)
    pub counts: BTreeMap<usize, (usize, usize)>,
}

impl Split {
    pub fn inside(&self, size: usize) -> usize {
        self.counts.get(&size).map_or(0, |c| c.0)
    }

    pub fn outside(&self, size: usize) -> usize {
        self.counts.get(&size).map_or(0, |c| c.1)
    }

    pub fn weighted_sum(&self) -> i64 {
        self.counts
            .iter()
            .map(|(&s, &(i, o))| (s as i64 - 2) * (i as i64 - o as i64))
            .sum()
    }

    fn of(e: &PlanarEmbedding, inside: &[bool]) -> Split {
        let mut counts = BTreeMap::new();
        for (f, &side) in e.faces().iter().zip(inside) {
            let c = counts.entry(f.len()).or_insert((0, 0));
            if side {
                c.0 += 1;
            } else {
                c.1 += 1;
            }
        }
        Split { counts }
    }
}

impl std::fmt::Display for Split {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(s, (i, o))| format!("f{s}={i}/f'{s}={o}"))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Every split of the face counts whose weighted sum vanishes modulo
/// `modulus`.
pub fn residue_screen(p: &FaceProfile, modulus: u64) -> Result<Vec<Split>, GrinbergError> {
    if modulus < 2 {
        return Err(GrinbergError::BadModulus(modulus));
    }
    let m = modulus as i64;
    let sizes: Vec<(usize, usize)> = p.f_counts.iter().map(|(&s, &c)| (s, c)).collect();
    let mut out = Vec::new();
    let mut current = BTreeMap::new();
    fn go(
        sizes: &[(usize, usize)],
        k: usize,
        m: i64,
        residue: i64,
        current: &mut BTreeMap<usize, (usize, usize)>,
        out: &mut Vec<Split>,
    ) {
        if k == sizes.len() {
            if residue == 0 {
                out.push(Split {
                    counts: current.clone(),
                });
            }
            return;
        }
        let (s, c) = sizes[k];
        for inside in 0..=c {
            let term = (s as i64 - 2) * (2 * inside as i64 - c as i64);
            current.insert(s, (inside, c - inside));
            go(sizes, k + 1, m, (residue + term).rem_euclid(m), current, out);
        }
        current.remove(&s);
    }
    go(&sizes, 0, m, 0, &mut current, &mut out);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactOptions {
    pub max_faces: usize,
    /// Modulus of the residue screen recorded in the verdict.
    pub modulus: u64,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            max_faces: 30,
            modulus: 3,
        }
    }
}

/// Negative certificate: the screen survivors and the exhaustion record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub profile: FaceProfile,
    pub modulus: u64,
    pub screen: Vec<Split>,
    pub faces: usize,
    pub nodes: u64,
    pub statement: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GrinbergVerdict {
    Infeasible {
        transcript: Transcript,
    },
    Feasible {
        modulus: u64,
        /// Distinct count splits realised by cycle-shaped assignments.
        splits: Vec<Split>,
        /// One realising assignment, `true` for inside.
        inside: Vec<bool>,
        /// The Hamiltonian cycle that assignment induces.
        cycle: Vec<Vertex>,
    },
}

impl GrinbergVerdict {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, GrinbergVerdict::Infeasible { .. })
    }
}

struct Problem<'a> {
    e: &'a PlanarEmbedding,
    weights: Vec<i64>,
    /// faces in search order; `order[0]` is the outer face
    order: Vec<usize>,
    /// vertices all of whose faces are assigned once `order[k]` is
    completes: Vec<Vec<Vertex>>,
    /// per vertex, the face pair of each incident edge
    edges_at: Vec<Vec<(usize, usize)>>,
    suffix_weight: Vec<i64>,
}

impl<'a> Problem<'a> {
    fn new(e: &'a PlanarEmbedding) -> Self {
        let g = e.graph();
        let f = e.faces().len();
        let weights = GrinbergSignature::of(e).contributions;
        // breadth-first over the dual so vertices close early
        let mut dual: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); f];
        for (u, v) in g.edges() {
            let (a, b) = e.edge_faces(u, v).expect("edge is embedded");
            dual[a].insert(b);
            dual[b].insert(a);
        }
        let mut order = Vec::with_capacity(f);
        let mut seen = vec![false; f];
        for root in std::iter::once(e.outer_face()).chain(0..f) {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                order.push(x);
                for &y in &dual[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        let mut rank = vec![0usize; f];
        for (k, &x) in order.iter().enumerate() {
            rank[x] = k;
        }
        let mut completes = vec![Vec::new(); f];
        let mut edges_at = Vec::with_capacity(g.order());
        for v in 0..g.order() {
            if let Some(last) = e.faces_around(v).iter().map(|&x| rank[x]).max() {
                completes[last].push(v);
            }
            edges_at.push(
                e.rotation(v)
                    .iter()
                    .map(|&w| e.edge_faces(v, w).expect("edge is embedded"))
                    .collect(),
            );
        }
        let mut suffix_weight = vec![0i64; f + 1];
        for k in (0..f).rev() {
            suffix_weight[k] = suffix_weight[k + 1] + weights[order[k]];
        }
        Problem {
            e,
            weights,
            order,
            completes,
            edges_at,
            suffix_weight,
        }
    }

    fn degree_ok(&self, v: Vertex, side: &[Option<bool>]) -> bool {
        let d = self.edges_at[v]
            .iter()
            .filter(|&&(a, b)| side[a] != side[b])
            .count();
        d == 2
    }

    /// Vertices and edges of the induced edge set form one spanning cycle.
    fn connected(&self, side: &[Option<bool>]) -> bool {
        let n = self.e.graph().order();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for (i, &w) in self.e.rotation(v).iter().enumerate() {
                let (a, b) = self.edges_at[v][i];
                if side[a] != side[b] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    fn search(
        &self,
        k: usize,
        sum: i64,
        side: &mut Vec<Option<bool>>,
        forced: &[Option<bool>],
        nodes: &AtomicU64,
        found: &mut Vec<Vec<bool>>,
    ) {
        nodes.fetch_add(1, Ordering::Relaxed);
        if k == self.order.len() {
            if sum == 0 && self.connected(side) {
                found.push(side.iter().map(|s| s.unwrap_or(false)).collect());
            }
            return;
        }
        if sum.abs() > self.suffix_weight[k] {
            return;
        }
        let x = self.order[k];
        let choices: &[bool] = match forced.get(k).copied().flatten() {
            Some(true) => &[true],
            Some(false) => &[false],
            None => &[false, true],
        };
        for &inside in choices {
            side[x] = Some(inside);
            if self.completes[k].iter().all(|&v| self.degree_ok(v, side)) {
                let w = self.weights[x];
                self.search(k + 1, sum + if inside { w } else { -w }, side, forced, nodes, found);
            }
        }
        side[x] = None;
    }
}

/// Walks the induced edge set from vertex 0.
fn induced_cycle(e: &PlanarEmbedding, inside: &[bool]) -> Vec<Vertex> {
    let n = e.graph().order();
    let mut cycle = vec![0];
    let mut prev = usize::MAX;
    let mut cur = 0;
    while cycle.len() < n {
        let next = e
            .rotation(cur)
            .iter()
            .copied()
            .find(|&w| {
                let (a, b) = e.edge_faces(cur, w).expect("edge is embedded");
                inside[a] != inside[b] && w != prev
            })
            .expect("induced edge set is 2-regular");
        prev = cur;
        cur = next;
        cycle.push(cur);
    }
    cycle
}

/// Exhaustive search over inside/outside assignments with the outer face
/// outside. An assignment counts when its induced edge set is a spanning
/// connected 2-regular subgraph and the Grinberg sum vanishes.
pub fn exact_feasibility(
    e: &PlanarEmbedding,
    opts: &ExactOptions,
) -> Result<GrinbergVerdict, GrinbergError> {
    let f = e.faces().len();
    if f > opts.max_faces {
        return Err(GrinbergError::TooManyFaces {
            faces: f,
            cap: opts.max_faces,
        });
    }
    if opts.modulus < 2 {
        return Err(GrinbergError::BadModulus(opts.modulus));
    }
    let problem = Problem::new(e);
    let depth = f.saturating_sub(1).min(8);
    let nodes = AtomicU64::new(0);
    let mut found: Vec<Vec<bool>> = (0u32..1 << depth)
        .into_par_iter()
        .flat_map_iter(|mask| {
            let mut forced = vec![Some(false)];
            forced.extend((0..depth).map(|i| Some(mask >> i & 1 == 1)));
            let mut side = vec![None; f];
            let mut local = Vec::new();
            problem.search(0, 0, &mut side, &forced, &nodes, &mut local);
            local
        })
        .collect();
    found.sort();
    let nodes = nodes.into_inner();
    if found.is_empty() {
        let profile = e.face_profile();
        let screen = residue_screen(&profile, opts.modulus)?;
        let statement = format!(
            "all {} inside/outside assignments with the outer face outside were exhausted; \
             none induces a Hamiltonian cycle",
            1u64 << f.saturating_sub(1)
        );
        return Ok(GrinbergVerdict::Infeasible {
            transcript: Transcript {
                profile,
                modulus: opts.modulus,
                screen,
                faces: f,
                nodes,
                statement,
            },
        });
    }
    let splits: BTreeSet<Split> = found.iter().map(|s| Split::of(e, s)).collect();
    let inside = found.swap_remove(0);
    let cycle = induced_cycle(e, &inside);
    Ok(GrinbergVerdict::Feasible {
        modulus: opts.modulus,
        splits: splits.into_iter().collect(),
        cycle,
        inside,
    })
}

/// Sides of the faces relative to a Hamiltonian cycle given as a vertex
/// sequence: faces reachable from the outer face without crossing the cycle
/// are outside.
pub fn face_partition(e: &PlanarEmbedding, cycle: &[Vertex]) -> Result<Vec<bool>, GrinbergError> {
    let g = e.graph();
    if cycle.len() != g.order() || cycle.len() < 3 {
        return Err(GrinbergError::NotACycle);
    }
    let mut on_cycle = HashSet::new();
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        if !g.has_edge(u, v) {
            return Err(GrinbergError::NotACycle);
        }
        on_cycle.insert((u.min(v), u.max(v)));
    }
    let f = e.faces().len();
    let mut outside = vec![false; f];
    outside[e.outer_face()] = true;
    let mut stack = vec![e.outer_face()];
    let mut crossings: Vec<Vec<usize>> = vec![Vec::new(); f];
    for (u, v) in g.edges() {
        if !on_cycle.contains(&(u, v)) {
            let (a, b) = e.edge_faces(u, v).expect("edge is embedded");
            crossings[a].push(b);
            crossings[b].push(a);
        }
    }
    while let Some(x) = stack.pop() {
        for &y in &crossings[x] {
            if !outside[y] {
                outside[y] = true;
                stack.push(y);
            }
        }
    }
    Ok(outside.into_iter().map(|o| !o).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::hamiltonicity::{check_sequence, hamiltonian_cycle, Budget};
    use crate::named;
    use crate::planarity::planar_embedding;

    #[test]
    fn screen_on_five_faces() {
        let p = FaceProfile::from_sizes(std::iter::repeat(5).take(12));
        assert_eq!(residue_screen(&p, 3).unwrap().len(), 13);
        assert_eq!(residue_screen(&p, 1), Err(GrinbergError::BadModulus(1)));
    }

    #[test]
    fn screen_on_four_and_five_faces() {
        let mut sizes = vec![4; 5];
        sizes.extend(std::iter::repeat(5).take(18));
        let p = FaceProfile::from_sizes(sizes);
        let outside: BTreeSet<usize> =
            residue_screen(&p, 3).unwrap().iter().map(|s| s.outside(4)).collect();
        assert_eq!(outside, BTreeSet::from([1, 4]));
    }

    #[test]
    fn bookkeeping_identity() {
        for g in [named::complete(4), named::cube(), named::dodecahedron(), named::wiener_araya()] {
            let e = planar_embedding(&g).unwrap();
            let sig = GrinbergSignature::of(&e);
            assert_eq!(sig.total(), 2 * g.size() as i64 - 2 * e.faces().len() as i64);
        }
    }

    #[test]
    fn hamiltonian_solids_are_feasible() {
        for g in [named::complete(4), named::cube(), named::dodecahedron(), named::prism(5)] {
            let e = planar_embedding(&g).unwrap();
            match exact_feasibility(&e, &ExactOptions::default()).unwrap() {
                GrinbergVerdict::Feasible { splits, cycle, inside, .. } => {
                    check_sequence(&g, &cycle, true, &[]).unwrap();
                    assert!(splits.iter().all(|s| s.weighted_sum() == 0));
                    assert_eq!(face_partition(&e, &cycle).unwrap(), inside);
                }
                v => panic!("expected feasible, got {v:?}"),
            }
        }
    }

    /// Rhombic dodecahedron: cube vertices joined to the centres of their
    /// faces. Bipartite with sides 8 and 6, so non-Hamiltonian.
    fn rhombic_dodecahedron() -> Graph {
        let mut edges = Vec::new();
        for axis in 0..3 {
            for bit in 0..2 {
                let centre = 8 + 2 * axis + bit;
                for v in (0..8).filter(|v| (v >> axis) & 1 == bit) {
                    edges.push((v, centre));
                }
            }
        }
        Graph::from_edges(14, edges).unwrap()
    }

    #[test]
    fn non_hamiltonian_planar_graphs_are_infeasible() {
        for g in [rhombic_dodecahedron(), named::complete_bipartite(2, 3)] {
            let e = planar_embedding(&g).unwrap();
            let v = exact_feasibility(&e, &ExactOptions::default()).unwrap();
            assert!(v.is_infeasible(), "{v:?}");
            assert!(hamiltonian_cycle(&g, &Budget::default()).unwrap().is_exhausted());
            if let GrinbergVerdict::Infeasible { transcript } = v {
                assert_eq!(transcript.faces, e.faces().len());
            }
        }
    }

    #[test]
    fn search_cycles_satisfy_the_identity() {
        for g in [named::cube(), named::dodecahedron(), named::prism(7)] {
            let e = planar_embedding(&g).unwrap();
            let c = hamiltonian_cycle(&g, &Budget::default()).unwrap();
            let inside = face_partition(&e, &c.sequence).unwrap();
            assert_eq!(GrinbergSignature::of(&e).weighted_sum(&inside), 0);
        }
    }

    #[test]
    fn face_cap_refuses() {
        let e = planar_embedding(&named::prism(40)).unwrap();
        assert_eq!(
            exact_feasibility(&e, &ExactOptions::default()),
            Err(GrinbergError::TooManyFaces { faces: 42, cap: 30 })
        );
        assert!(face_partition(&e, &[0, 1, 2]).is_err());
    }

}
