//! Left-right planarity test (de Fraysseix-Rosenstiehl criterion, in the
//! formulation of Brandes) producing a clockwise rotation system on success.

use std::collections::HashMap;

use crate::graph::{Graph, Vertex};

type EdgeId = usize;
const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Default)]
struct Interval {
    low: Option<EdgeId>,
    high: Option<EdgeId>,
}

impl Interval {
    fn new(low: EdgeId, high: EdgeId) -> Self {
        Interval {
            low: Some(low),
            high: Some(high),
        }
    }

    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default)]
struct ConflictPair {
    id: usize,
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

/// Per-vertex doubly linked cyclic neighbour list, clockwise.
#[derive(Default, Clone)]
struct Rotation {
    cw: HashMap<Vertex, Vertex>,
    ccw: HashMap<Vertex, Vertex>,
    first: Option<Vertex>,
}

impl Rotation {
    fn add_cw(&mut self, w: Vertex, reference: Option<Vertex>) {
        match reference {
            None => {
                self.cw.insert(w, w);
                self.ccw.insert(w, w);
                self.first = Some(w);
            }
            Some(r) => {
                let after = self.cw[&r];
                self.cw.insert(r, w);
                self.cw.insert(w, after);
                self.ccw.insert(after, w);
                self.ccw.insert(w, r);
            }
        }
    }

    fn add_ccw(&mut self, w: Vertex, reference: Option<Vertex>) {
        match reference {
            None => self.add_cw(w, None),
            Some(r) => {
                let before = self.ccw[&r];
                self.add_cw(w, Some(before));
                if self.first == Some(r) {
                    self.first = Some(w);
                }
            }
        }
    }

    fn add_first(&mut self, w: Vertex) {
        let r = self.first;
        self.add_ccw(w, r);
    }

    fn to_vec(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.cw.len());
        if let Some(start) = self.first {
            let mut cur = start;
            loop {
                out.push(cur);
                cur = self.cw[&cur];
                if cur == start {
                    break;
                }
            }
        }
        out
    }
}

struct LrState<'g> {
    graph: &'g Graph,
    // oriented edges
    src: Vec<Vertex>,
    dst: Vec<Vertex>,
    out: Vec<Vec<EdgeId>>,
    oriented: HashMap<(Vertex, Vertex), EdgeId>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    refs: Vec<usize>,
    side: Vec<i64>,
    lowpt_edge: Vec<usize>,
    stack_bottom: Vec<Option<usize>>,
    stack: Vec<ConflictPair>,
    next_pair_id: usize,
    roots: Vec<Vertex>,
    left_ref: Vec<Vertex>,
    right_ref: Vec<Vertex>,
    rot: Vec<Rotation>,
}

/// Runs the test; returns the clockwise rotation of each vertex if planar.
pub(crate) fn lr_planarity(graph: &Graph) -> Option<Vec<Vec<Vertex>>> {
    let n = graph.order();
    let m = graph.size();
    if n > 2 && m > 3 * n - 6 {
        return None;
    }
    let mut st = LrState {
        graph,
        src: Vec::with_capacity(m),
        dst: Vec::with_capacity(m),
        out: vec![Vec::new(); n],
        oriented: HashMap::with_capacity(2 * m),
        height: vec![NONE; n],
        parent_edge: vec![NONE; n],
        lowpt: Vec::with_capacity(m),
        lowpt2: Vec::with_capacity(m),
        nesting: Vec::with_capacity(m),
        refs: Vec::new(),
        side: Vec::new(),
        lowpt_edge: Vec::new(),
        stack_bottom: Vec::new(),
        stack: Vec::new(),
        next_pair_id: 0,
        roots: Vec::new(),
        left_ref: vec![NONE; n],
        right_ref: vec![NONE; n],
        rot: vec![Rotation::default(); n],
    };
    for v in 0..n {
        if st.height[v] == NONE {
            st.height[v] = 0;
            st.roots.push(v);
            st.dfs_orientation(v);
        }
    }
    let e = st.src.len();
    st.refs = vec![NONE; e];
    st.side = vec![1; e];
    st.lowpt_edge = vec![NONE; e];
    st.stack_bottom = vec![None; e];

    for v in 0..n {
        let nesting = &st.nesting;
        st.out[v].sort_by_key(|&e| nesting[e]);
    }
    for r in st.roots.clone() {
        if !st.dfs_testing(r) {
            return None;
        }
    }
    for e in 0..st.src.len() {
        let s = st.sign(e);
        st.nesting[e] *= s;
    }
    for v in 0..n {
        let nesting = &st.nesting;
        st.out[v].sort_by_key(|&e| nesting[e]);
        let mut prev = None;
        for i in 0..st.out[v].len() {
            let w = st.dst[st.out[v][i]];
            st.rot[v].add_cw(w, prev);
            prev = Some(w);
        }
    }
    for r in st.roots.clone() {
        st.dfs_embedding(r);
    }
    Some(st.rot.iter().map(Rotation::to_vec).collect())
}

impl<'g> LrState<'g> {
    fn dfs_orientation(&mut self, v: Vertex) {
        let parent = self.parent_edge[v];
        let nbrs: Vec<Vertex> = self.graph.neighbors(v).collect();
        for w in nbrs {
            if self.oriented.contains_key(&(v, w)) || self.oriented.contains_key(&(w, v)) {
                continue;
            }
            let vw = self.src.len();
            self.src.push(v);
            self.dst.push(w);
            self.out[v].push(vw);
            self.oriented.insert((v, w), vw);
            self.lowpt.push(self.height[v]);
            self.lowpt2.push(self.height[v]);
            self.nesting.push(0);
            if self.height[w] == NONE {
                self.parent_edge[w] = vw;
                self.height[w] = self.height[v] + 1;
                self.dfs_orientation(w);
            } else {
                self.lowpt[vw] = self.height[w];
            }
            self.nesting[vw] = 2 * self.lowpt[vw] as i64;
            if self.lowpt2[vw] < self.height[v] {
                self.nesting[vw] += 1;
            }
            if parent != NONE {
                let e = parent;
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn top_id(&self) -> Option<usize> {
        self.stack.last().map(|p| p.id)
    }

    fn push_pair(&mut self, mut p: ConflictPair) {
        p.id = self.next_pair_id;
        self.next_pair_id += 1;
        self.stack.push(p);
    }

    fn conflicting(&self, iv: &Interval, b: EdgeId) -> bool {
        !iv.is_empty() && iv.high.map(|h| self.lowpt[h] > self.lowpt[b]).unwrap_or(false)
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low.expect("non-empty pair")];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low.expect("non-empty pair")];
        }
        self.lowpt[p.left.low.unwrap()].min(self.lowpt[p.right.low.unwrap()])
    }

    fn dfs_testing(&mut self, v: Vertex) -> bool {
        let e = self.parent_edge[v];
        let outs = self.out[v].clone();
        for (i, &ei) in outs.iter().enumerate() {
            let w = self.dst[ei];
            self.stack_bottom[ei] = self.top_id();
            if ei == self.parent_edge[w] {
                if !self.dfs_testing(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = ei;
                let p = ConflictPair {
                    id: 0,
                    left: Interval::default(),
                    right: Interval::new(ei, ei),
                };
                self.push_pair(p);
            }
            if self.lowpt[ei] < self.height[v] {
                if i == 0 {
                    if e != NONE {
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    }
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if e != NONE {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: EdgeId, e: EdgeId) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let mut q = match self.stack.pop() {
                Some(q) => q,
                None => break,
            };
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let qlow = q.right.low.expect("right interval is non-empty");
            if self.lowpt[qlow] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else if let Some(pl) = p.right.low {
                    self.refs[pl] = q.right.high.unwrap_or(NONE);
                }
                p.right.low = q.right.low;
            } else {
                self.refs[qlow] = self.lowpt_edge[e];
            }
            if self.top_id() == self.stack_bottom[ei] {
                break;
            }
        }
        loop {
            let top = match self.stack.last() {
                Some(t) => *t,
                None => break,
            };
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(pl) = p.right.low {
                self.refs[pl] = q.right.high.unwrap_or(NONE);
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(pl) = p.left.low {
                self.refs[pl] = q.left.high.unwrap_or(NONE);
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.push_pair(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: EdgeId) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = opt(self.refs[h]);
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.refs[l] = p.right.low.unwrap_or(NONE);
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = opt(self.refs[h]);
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.refs[r] = p.left.low.unwrap_or(NONE);
                    self.side[r] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            if let Some(top) = self.stack.last() {
                let hl = top.left.high;
                let hr = top.right.high;
                let pick_left = match (hl, hr) {
                    (Some(l), Some(r)) => self.lowpt[l] > self.lowpt[r],
                    (Some(_), None) => true,
                    _ => false,
                };
                self.refs[e] = if pick_left {
                    hl.unwrap()
                } else {
                    hr.unwrap_or(NONE)
                };
            }
        }
    }

    fn sign(&mut self, e: EdgeId) -> i64 {
        // iterative resolution of the reference chain
        let mut chain = vec![e];
        while self.refs[*chain.last().unwrap()] != NONE {
            let next = self.refs[*chain.last().unwrap()];
            chain.push(next);
        }
        let mut acc = self.side[*chain.last().unwrap()];
        for &x in chain.iter().rev().skip(1) {
            self.side[x] *= acc;
            self.refs[x] = NONE;
            acc = self.side[x];
        }
        self.side[e]
    }

    fn dfs_embedding(&mut self, v: Vertex) {
        let outs = self.out[v].clone();
        for ei in outs {
            let w = self.dst[ei];
            if ei == self.parent_edge[w] {
                self.rot[w].add_first(v);
                self.left_ref[v] = w;
                self.right_ref[v] = w;
                self.dfs_embedding(w);
            } else if self.side[ei] == 1 {
                let r = self.right_ref[w];
                self.rot[w].add_cw(v, Some(r));
            } else {
                let r = self.left_ref[w];
                self.rot[w].add_ccw(v, Some(r));
                self.left_ref[w] = v;
            }
        }
    }
}

fn opt(e: usize) -> Option<usize> {
    if e == NONE {
        None
    } else {
        Some(e)
    }
}
