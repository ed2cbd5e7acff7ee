//! Canonical labelling, isomorphism and automorphism group order by colour
//! refinement and individualisation.
//!
//! Every node of the search tree is an equitable ordered partition. Children
//! individualise one vertex of the smallest non-singleton cell (first such
//! cell on ties). A discrete partition is a leaf; its certificate is the
//! adjacency bit string in graph6 order under the leaf's vertex ordering.
//!
//! The group order is the product, along the first path, of the orbit of the
//! individualised vertex under the pointwise stabiliser of its predecessors.
//! Each orbit is completed by searching sibling subtrees for a leaf whose
//! certificate equals the first leaf's.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::formats::emit_graph6_string;
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalForm {
    /// `labeling[v]` is the canonical position of vertex `v`.
    pub labeling: Vec<Vertex>,
    pub graph6: String,
    #[serde(serialize_with = "decimal")]
    pub group_order: BigUint,
}

fn decimal<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

type Colors = Vec<u32>;

struct Tree<'a> {
    adj: &'a [Vec<Vertex>],
    n: usize,
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv(mut h: u64, x: u64) -> u64 {
    for b in x.to_le_bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

impl<'a> Tree<'a> {
    /// Refines to the coarsest equitable partition finer than `colors`,
    /// renumbering colours by rank. Returns a hash of the quotient.
    fn refine(&self, colors: &mut Colors) -> u64 {
        let n = self.n;
        let mut cells = count_colors(colors);
        let mut keyed: Vec<(u32, Vec<u32>, Vertex)> = Vec::with_capacity(n);
        loop {
            keyed.clear();
            for v in 0..n {
                let mut sig: Vec<u32> = self.adj[v].iter().map(|&w| colors[w]).collect();
                sig.sort_unstable();
                keyed.push((colors[v], sig, v));
            }
            keyed.sort_unstable();
            let mut rank = 0u32;
            for i in 0..n {
                if i > 0 && (keyed[i].0 != keyed[i - 1].0 || keyed[i].1 != keyed[i - 1].1) {
                    rank += 1;
                }
                colors[keyed[i].2] = rank;
            }
            let now = if n == 0 { 0 } else { rank as usize + 1 };
            if now == cells {
                break;
            }
            cells = now;
        }
        let mut h = fnv(FNV_OFFSET, n as u64);
        for i in 0..n {
            if i == 0 || keyed[i].0 != keyed[i - 1].0 {
                h = fnv(h, u64::from(keyed[i].0));
                h = fnv(h, keyed[i].1.len() as u64);
                for &c in &keyed[i].1 {
                    h = fnv(h, u64::from(c));
                }
            }
            h = fnv(h, 0xff);
        }
        h
    }

    /// Smallest non-singleton cell, lowest colour on ties; `None` if discrete.
    fn target_cell(&self, colors: &Colors) -> Option<Vec<Vertex>> {
        let k = count_colors(colors);
        if k == self.n {
            return None;
        }
        let mut size = vec![0usize; k];
        for &c in colors {
            size[c as usize] += 1;
        }
        let best = (0..k).filter(|&c| size[c] > 1).min_by_key(|&c| (size[c], c))?;
        Some((0..self.n).filter(|&v| colors[v] as usize == best).collect())
    }

    fn individualise(&self, colors: &Colors, v: Vertex) -> (Colors, u64) {
        let c = colors[v];
        let mut next: Colors = colors
            .iter()
            .enumerate()
            .map(|(w, &x)| 2 * x + u32::from(x == c && w != v))
            .collect();
        let h = self.refine(&mut next);
        (next, h)
    }

    /// Adjacency bits in graph6 column order under the leaf ordering,
    /// most significant bit first.
    fn certificate(&self, colors: &Colors) -> Vec<u64> {
        let n = self.n;
        let mut at = vec![0usize; n];
        for v in 0..n {
            at[colors[v] as usize] = v;
        }
        let total = n * n.saturating_sub(1) / 2;
        let mut bits = vec![0u64; total.div_ceil(64)];
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if self.adj[at[i]].contains(&at[j]) {
                    bits[k >> 6] |= 1 << (63 - (k & 63));
                }
                k += 1;
            }
        }
        bits
    }
}

fn count_colors(colors: &Colors) -> usize {
    colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
}

struct Orbits {
    parent: Vec<Vertex>,
}

impl Orbits {
    fn new(n: usize) -> Self {
        Orbits {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, mut v: Vertex) -> Vertex {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }
    fn union(&mut self, a: Vertex, b: Vertex) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}

fn orbits_fixing(n: usize, gens: &[Vec<Vertex>], fixed: &[Vertex]) -> Orbits {
    let mut o = Orbits::new(n);
    for p in gens.iter().filter(|p| fixed.iter().all(|&v| p[v] == v)) {
        for v in 0..n {
            o.union(v, p[v]);
        }
    }
    o
}

/// Automorphism taking leaf `from` to leaf `to` (both discrete colourings
/// with equal certificates).
fn leaf_map(from: &Colors, to: &Colors) -> Vec<Vertex> {
    let n = from.len();
    let mut at = vec![0usize; n];
    for v in 0..n {
        at[to[v] as usize] = v;
    }
    (0..n).map(|v| at[from[v] as usize]).collect()
}

struct FirstPath {
    colors: Vec<Colors>,
    hashes: Vec<u64>,
    cells: Vec<Vec<Vertex>>,
    chosen: Vec<Vertex>,
    leaf: Colors,
    cert: Vec<u64>,
}

impl<'a> Tree<'a> {
    fn first_path(&self) -> FirstPath {
        let mut colors = vec![0u32; self.n];
        let h = self.refine(&mut colors);
        let mut fp = FirstPath {
            colors: vec![colors.clone()],
            hashes: vec![h],
            cells: Vec::new(),
            chosen: Vec::new(),
            leaf: Vec::new(),
            cert: Vec::new(),
        };
        while let Some(cell) = self.target_cell(&colors) {
            let v = cell[0];
            let (next, h) = self.individualise(&colors, v);
            fp.cells.push(cell);
            fp.chosen.push(v);
            fp.colors.push(next.clone());
            fp.hashes.push(h);
            colors = next;
        }
        fp.cert = self.certificate(&colors);
        fp.leaf = colors;
        fp
    }

    /// Leaf below `colors` (at depth `level`) equivalent to the first leaf.
    fn find_equivalent(&self, fp: &FirstPath, colors: &Colors, level: usize) -> Option<Colors> {
        match self.target_cell(colors) {
            None => (self.certificate(colors) == fp.cert).then(|| colors.clone()),
            Some(cell) => {
                if level >= fp.cells.len() || cell.len() != fp.cells[level].len() {
                    return None;
                }
                for v in cell {
                    let (next, h) = self.individualise(colors, v);
                    if h != fp.hashes[level + 1] {
                        continue;
                    }
                    if let Some(leaf) = self.find_equivalent(fp, &next, level + 1) {
                        return Some(leaf);
                    }
                }
                None
            }
        }
    }

    /// Generators of the automorphism group and its order.
    fn group(&self, fp: &FirstPath) -> (Vec<Vec<Vertex>>, BigUint) {
        let mut gens: Vec<Vec<Vertex>> = Vec::new();
        let mut order = BigUint::from(1u32);
        for level in (0..fp.cells.len()).rev() {
            let prefix = &fp.chosen[..level];
            let base = fp.chosen[level];
            let mut orbits = orbits_fixing(self.n, &gens, prefix);
            for &u in &fp.cells[level] {
                if orbits.find(u) == orbits.find(base) {
                    continue;
                }
                let (next, h) = self.individualise(&fp.colors[level], u);
                if h != fp.hashes[level + 1] {
                    continue;
                }
                if let Some(leaf) = self.find_equivalent(fp, &next, level + 1) {
                    let p = leaf_map(&fp.leaf, &leaf);
                    for v in 0..self.n {
                        orbits.union(v, p[v]);
                    }
                    gens.push(p);
                }
            }
            let root = orbits.find(base);
            let size = fp.cells[level]
                .iter()
                .filter(|&&u| orbits.find(u) == root)
                .count();
            order *= BigUint::from(size);
        }
        (gens, order)
    }
}

struct Best {
    hashes: Vec<u64>,
    cert: Vec<u64>,
    leaf: Colors,
}

impl<'a> Tree<'a> {
    /// Depth-first search for the smallest leaf, ordering paths first by
    /// their node invariants and then by certificate. Children in one orbit
    /// of the known automorphisms fixing the prefix are explored once.
    fn canonical(
        &self,
        gens: &[Vec<Vertex>],
        colors: &Colors,
        prefix: &mut Vec<Vertex>,
        trace: &mut Vec<u64>,
        best: &mut Option<Best>,
    ) {
        let level = trace.len() - 1;
        if let Some(b) = best.as_ref() {
            // compare invariant trace with the best path so far
            match trace[level].cmp(&b.hashes[level.min(b.hashes.len() - 1)]) {
                std::cmp::Ordering::Greater => return,
                std::cmp::Ordering::Less => *best = None,
                std::cmp::Ordering::Equal => {}
            }
        }
        match self.target_cell(colors) {
            None => {
                let cert = self.certificate(colors);
                let better = match best.as_ref() {
                    None => true,
                    Some(b) => cert < b.cert,
                };
                if better {
                    *best = Some(Best {
                        hashes: trace.clone(),
                        cert,
                        leaf: colors.clone(),
                    });
                }
            }
            Some(cell) => {
                let mut orbits = orbits_fixing(self.n, gens, prefix);
                let mut seen: Vec<Vertex> = Vec::new();
                for v in cell {
                    let r = orbits.find(v);
                    if seen.contains(&r) {
                        continue;
                    }
                    seen.push(r);
                    let (next, h) = self.individualise(colors, v);
                    prefix.push(v);
                    trace.push(h);
                    self.canonical(gens, &next, prefix, trace, best);
                    trace.pop();
                    prefix.pop();
                }
            }
        }
    }
}

fn adjacency(g: &Graph) -> Vec<Vec<Vertex>> {
    (0..g.order()).map(|v| g.neighbors(v).collect()).collect()
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let adj = adjacency(g);
    let tree = Tree { adj: &adj, n: g.order() };
    let fp = tree.first_path();
    let (gens, group_order) = tree.group(&fp);
    let mut best = None;
    let mut root = vec![0u32; tree.n];
    let h = tree.refine(&mut root);
    tree.canonical(&gens, &root, &mut Vec::new(), &mut vec![h], &mut best);
    let leaf = best.expect("the search tree has a leaf").leaf;
    let labeling: Vec<Vertex> = leaf.iter().map(|&c| c as usize).collect();
    let graph6 = emit_graph6_string(&g.permute(&labeling));
    CanonicalForm {
        labeling,
        graph6,
        group_order,
    }
}

pub fn automorphism_group_order(g: &Graph) -> BigUint {
    let adj = adjacency(g);
    let tree = Tree { adj: &adj, n: g.order() };
    let fp = tree.first_path();
    tree.group(&fp).1
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order()
        && a.size() == b.size()
        && a.degree_census() == b.degree_census()
        && canonical_form(a).graph6 == canonical_form(b).graph6
}

/// `Ok(())` if no two graphs are isomorphic, otherwise the first colliding
/// pair of indices.
pub fn pairwise_distinct(gs: &[Graph]) -> Result<(), (usize, usize)> {
    let forms: Vec<String> = gs.par_iter().map(|g| canonical_form(g).graph6).collect();
    for j in 0..forms.len() {
        for i in 0..j {
            if forms[i] == forms[j] {
                return Err((i, j));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn order(g: &Graph) -> u64 {
        automorphism_group_order(g).try_into().unwrap()
    }

    #[test]
    fn known_group_orders() {
        assert_eq!(order(&named::complete(4)), 24);
        assert_eq!(order(&named::cycle(6)), 12);
        assert_eq!(order(&named::cycle(5)), 10);
        assert_eq!(order(&named::petersen()), 120);
        assert_eq!(order(&named::cube()), 48);
        assert_eq!(order(&named::dodecahedron()), 120);
        assert_eq!(order(&named::complete_bipartite(3, 3)), 72);
        assert_eq!(order(&named::path(5)), 2);
        assert_eq!(order(&named::star(4)), 24);
        assert_eq!(order(&Graph::empty(5)), 120);
        assert_eq!(order(&Graph::empty(0)), 1);
        assert_eq!(order(&named::complete(7)), 5040);
    }

    #[test]
    fn relabelled_cycles_share_a_form() {
        let c5 = named::cycle(5);
        let shuffled = c5.permute(&[3, 0, 4, 1, 2]);
        assert_eq!(canonical_form(&c5).graph6, canonical_form(&shuffled).graph6);
        assert_eq!(pairwise_distinct(&[c5.clone(), shuffled]), Err((0, 1)));
        assert_eq!(pairwise_distinct(&[c5, named::path(5)]), Ok(()));
    }

    #[test]
    fn labeling_reproduces_graph6() {
        let g = named::petersen();
        let f = canonical_form(&g);
        assert_eq!(emit_graph6_string(&g.permute(&f.labeling)), f.graph6);
    }

    #[test]
    fn non_isomorphic_cospectral_pair() {
        // K1,4 and C4 + K1 share a spectrum but not a form
        let star = named::star(4);
        let c4k1 = named::cycle(4).add_vertex("z").unwrap().0;
        assert!(!is_isomorphic(&star, &c4k1));
    }
}
