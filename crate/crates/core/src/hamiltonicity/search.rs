//! Depth-first Hamiltonian cycle search over vertex sequences.
//!
//! The path grows from a fixed start `s` at its free end `e`. At every node
//! the unvisited set `U` is checked against three necessary conditions:
//!
//! * every `u` in `U` keeps at least two usable neighbours (in `U`, or the
//!   ends `e` and `s`); a vertex with exactly two is *forced* onto both;
//! * the end `e` can absorb at most one forced neighbour, and so can `s`;
//! * `U` induces a connected subgraph with at most two vertices of degree
//!   below two inside `U` (those must be the joints to `e` and `s`).
//!
//! Each cycle is found in one direction only: after the first step `s -> a`
//! only neighbours of `s` ranked after `a` may close the cycle.

use std::time::Instant;

use crate::graph::{Graph, Vertex};

use super::{Budget, SearchStats};

pub(crate) enum Outcome {
    Found(Vec<Vertex>),
    Exhausted,
    Timeout,
}

struct Bits {
    words: usize,
}

impl Bits {
    #[inline]
    fn get(set: &[u64], v: usize) -> bool {
        set[v >> 6] >> (v & 63) & 1 == 1
    }
    #[inline]
    fn set(set: &mut [u64], v: usize) {
        set[v >> 6] |= 1 << (v & 63);
    }
    #[inline]
    fn clear(set: &mut [u64], v: usize) {
        set[v >> 6] &= !(1 << (v & 63));
    }
    #[inline]
    fn and_count(a: &[u64], b: &[u64]) -> u32 {
        a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
    }
    fn iter(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
        set.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            })
        })
    }
}

struct Engine<'a> {
    bits: Bits,
    adj: Vec<u64>,
    // neighbours of the start still allowed to close the cycle
    closers: Vec<u64>,
    unvisited: Vec<u64>,
    path: Vec<Vertex>,
    budget: &'a Budget,
    began: Instant,
    nodes: u64,
    timed_out: bool,
    // scratch
    frontier: Vec<u64>,
    reach: Vec<u64>,
    next: Vec<u64>,
    avail: Vec<u32>,
}

impl<'a> Engine<'a> {
    fn out_of_budget(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        if let Some(max) = self.budget.max_nodes {
            if self.nodes >= max {
                self.timed_out = true;
                return true;
            }
        }
        if self.nodes & 1023 == 0 {
            if let Some(limit) = self.budget.max_time {
                if self.began.elapsed() >= limit {
                    self.timed_out = true;
                    return true;
                }
            }
        }
        false
    }

    /// Runs the feasibility checks; returns `Err(())` when the node is dead,
    /// otherwise the forced successor of the end, if any.
    fn propagate(&mut self, end: Vertex) -> Result<Option<Vertex>, ()> {
        let w = self.bits.words;
        let remaining: u32 = self.unvisited.iter().map(|x| x.count_ones()).sum();
        if remaining == 1 {
            let u = Bits::iter(&self.unvisited).next().unwrap();
            let ok = Bits::get(&self.adj[u * w..(u + 1) * w], end) && Bits::get(&self.closers, u);
            return if ok { Ok(Some(u)) } else { Err(()) };
        }
        let mut forced_end: Option<Vertex> = None;
        let mut forced_start = 0u32;
        let mut low_inner = 0u32;
        let mut end_has = false;
        let mut start_has = false;
        for u in Bits::iter(&self.unvisited) {
            let row = &self.adj[u * w..(u + 1) * w];
            let inner = Bits::and_count(row, &self.unvisited);
            let to_end = Bits::get(row, end);
            let to_start = Bits::get(&self.closers, u);
            end_has |= to_end;
            start_has |= to_start;
            if inner == 0 {
                return Err(());
            }
            if inner == 1 {
                low_inner += 1;
                if low_inner > 2 {
                    return Err(());
                }
            }
            let avail = inner + u32::from(to_end) + u32::from(to_start);
            self.avail[u] = avail;
            if avail < 2 {
                return Err(());
            }
            if avail == 2 {
                if to_end {
                    if forced_end.is_some() {
                        return Err(());
                    }
                    forced_end = Some(u);
                }
                if to_start {
                    forced_start += 1;
                    if forced_start > 1 {
                        return Err(());
                    }
                }
            }
        }
        if !end_has || !start_has {
            return Err(());
        }
        // connectivity of the unvisited region
        let first = Bits::iter(&self.unvisited).next().unwrap();
        self.reach.iter_mut().for_each(|x| *x = 0);
        self.frontier.iter_mut().for_each(|x| *x = 0);
        Bits::set(&mut self.reach, first);
        Bits::set(&mut self.frontier, first);
        loop {
            let mut grew = false;
            self.next.iter_mut().for_each(|x| *x = 0);
            for v in Bits::iter(&self.frontier) {
                let row = &self.adj[v * w..(v + 1) * w];
                for i in 0..w {
                    self.next[i] |= row[i];
                }
            }
            for i in 0..w {
                self.next[i] &= self.unvisited[i] & !self.reach[i];
                if self.next[i] != 0 {
                    grew = true;
                }
                self.reach[i] |= self.next[i];
            }
            self.frontier.copy_from_slice(&self.next);
            if !grew {
                break;
            }
        }
        if self.reach != self.unvisited {
            return Err(());
        }
        Ok(forced_end)
    }

    fn extend(&mut self) -> Outcome {
        self.nodes += 1;
        if self.out_of_budget() {
            return Outcome::Timeout;
        }
        let end = *self.path.last().unwrap();
        if self.unvisited.iter().all(|&x| x == 0) {
            return if Bits::get(&self.closers, end) {
                Outcome::Found(self.path.clone())
            } else {
                Outcome::Exhausted
            };
        }
        let forced = match self.propagate(end) {
            Ok(f) => f,
            Err(()) => return Outcome::Exhausted,
        };
        let mut candidates: Vec<Vertex> = match forced {
            Some(u) => vec![u],
            None => {
                let w = self.bits.words;
                let row = &self.adj[end * w..(end + 1) * w];
                let mut c: Vec<Vertex> = (0..w)
                    .flat_map(|i| {
                        let word = row[i] & self.unvisited[i];
                        Bits::iter(std::slice::from_ref(&word))
                            .map(move |b| i * 64 + b)
                            .collect::<Vec<_>>()
                    })
                    .collect();
                let avail = &self.avail;
                c.sort_by_key(|&u| avail[u]);
                c
            }
        };
        let first_step = self.path.len() == 1;
        for u in candidates.drain(..) {
            let saved_closers = if first_step {
                let saved = self.closers.clone();
                // only neighbours ranked after the first step may close
                for v in 0..=u {
                    Bits::clear(&mut self.closers, v);
                }
                Some(saved)
            } else {
                None
            };
            Bits::clear(&mut self.unvisited, u);
            self.path.push(u);
            let out = self.extend();
            self.path.pop();
            Bits::set(&mut self.unvisited, u);
            if let Some(saved) = saved_closers {
                self.closers = saved;
            }
            match out {
                Outcome::Exhausted => continue,
                other => return other,
            }
        }
        Outcome::Exhausted
    }
}

/// Searches `g` for a Hamiltonian cycle starting from `start`.
pub(crate) fn search_cycle(g: &Graph, start: Vertex, budget: &Budget) -> (Outcome, SearchStats) {
    let n = g.order();
    let words = n.div_ceil(64).max(1);
    let mut adj = vec![0u64; n * words];
    for (u, v) in g.edges() {
        Bits::set(&mut adj[u * words..(u + 1) * words], v);
        Bits::set(&mut adj[v * words..(v + 1) * words], u);
    }
    let mut unvisited = vec![0u64; words];
    for v in 0..n {
        if v != start {
            Bits::set(&mut unvisited, v);
        }
    }
    let closers = adj[start * words..(start + 1) * words].to_vec();
    let mut engine = Engine {
        bits: Bits { words },
        adj,
        closers,
        unvisited,
        path: vec![start],
        budget,
        began: Instant::now(),
        nodes: 0,
        timed_out: false,
        frontier: vec![0; words],
        reach: vec![0; words],
        next: vec![0; words],
        avail: vec![0; n],
    };
    let outcome = engine.extend();
    let stats = SearchStats {
        nodes: engine.nodes,
        elapsed: engine.began.elapsed(),
    };
    (outcome, stats)
}
