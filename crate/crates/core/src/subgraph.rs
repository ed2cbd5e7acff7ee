//! Subgraph monomorphism (not necessarily induced) by backtracking.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};
use crate::hamiltonicity::Budget;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "image", rename_all = "snake_case")]
pub enum Embedding {
    /// `image[p]` is the host vertex receiving pattern vertex `p`.
    Found(Vec<Vertex>),
    Absent,
    Timeout,
}

struct Search<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    /// pattern vertices in matching order; each after at least one
    /// neighbour whenever its component allows
    order: Vec<Vertex>,
    /// for `order[i]`, the earlier pattern neighbours
    back: Vec<Vec<Vertex>>,
    image: Vec<Option<Vertex>>,
    used: Vec<bool>,
    budget: Budget,
    began: Instant,
    nodes: u64,
    timed_out: bool,
}

impl Search<'_> {
    fn out_of_budget(&mut self) -> bool {
        self.nodes += 1;
        if self.budget.max_nodes.is_some_and(|m| self.nodes > m) {
            self.timed_out = true;
        }
        if self.nodes % 1024 == 0 && self.budget.max_time.is_some_and(|t| self.began.elapsed() > t) {
            self.timed_out = true;
        }
        self.timed_out
    }

    fn extend(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        if self.out_of_budget() {
            return false;
        }
        let p = self.order[i];
        let need = self.pattern.degree(p);
        let candidates: Vec<Vertex> = match self.back[i].first() {
            Some(&q) => self.host.neighbors(self.image[q].expect("mapped")).collect(),
            None => (0..self.host.order()).collect(),
        };
        for h in candidates {
            if self.used[h] || self.host.degree(h) < need {
                continue;
            }
            let fits = self.back[i]
                .iter()
                .all(|&q| self.host.has_edge(h, self.image[q].expect("mapped")));
            if !fits {
                continue;
            }
            self.image[p] = Some(h);
            self.used[h] = true;
            if self.extend(i + 1) {
                return true;
            }
            self.used[h] = false;
            self.image[p] = None;
            if self.timed_out {
                return false;
            }
        }
        false
    }
}

fn matching_order(pattern: &Graph) -> Vec<Vertex> {
    let n = pattern.order();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        // most links to placed vertices, then highest degree
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], pattern.degree(v), std::cmp::Reverse(v)))
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
        for u in pattern.neighbors(next) {
            links[u] += 1;
        }
    }
    order
}

/// Finds an injective map of pattern vertices to host vertices carrying
/// every pattern edge onto a host edge.
pub fn find_subgraph(pattern: &Graph, host: &Graph, budget: &Budget) -> Embedding {
    if pattern.order() > host.order() || pattern.size() > host.size() {
        return Embedding::Absent;
    }
    let order = matching_order(pattern);
    let mut rank = vec![0; pattern.order()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let back = order
        .iter()
        .enumerate()
        .map(|(i, &v)| pattern.neighbors(v).filter(|&u| rank[u] < i).collect())
        .collect();
    let mut s = Search {
        pattern,
        host,
        order,
        back,
        image: vec![None; pattern.order()],
        used: vec![false; host.order()],
        budget: *budget,
        began: Instant::now(),
        nodes: 0,
        timed_out: false,
    };
    if s.extend(0) {
        Embedding::Found(s.image.into_iter().map(|h| h.expect("complete")).collect())
    } else if s.timed_out {
        Embedding::Timeout
    } else {
        Embedding::Absent
    }
}

/// Checks that `image` is injective and carries every pattern edge to a host edge.
pub fn is_subgraph_image(pattern: &Graph, host: &Graph, image: &[Vertex]) -> bool {
    if image.len() != pattern.order() || image.iter().any(|&h| h >= host.order()) {
        return false;
    }
    let mut seen = vec![false; host.order()];
    for &h in image {
        if std::mem::replace(&mut seen[h], true) {
            return false;
        }
    }
    pattern
        .edges()
        .into_iter()
        .all(|(u, v)| host.has_edge(image[u], image[v]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn found(pattern: &Graph, host: &Graph) -> bool {
        match find_subgraph(pattern, host, &Budget::unlimited()) {
            Embedding::Found(image) => {
                assert!(is_subgraph_image(pattern, host, &image));
                true
            }
            Embedding::Absent => false,
            Embedding::Timeout => unreachable!(),
        }
    }

    #[test]
    fn small_cases() {
        assert!(found(&named::cycle(5), &named::petersen()));
        assert!(!found(&named::cycle(4), &named::petersen()));
        assert!(!found(&named::complete(3), &named::petersen()));
        assert!(found(&named::cycle(4), &named::cube()));
        assert!(found(&named::path(10), &named::petersen()));
        assert!(!found(&named::cycle(10), &named::petersen()));
        assert!(found(&named::petersen().delete_vertex(0).unwrap(), &named::petersen()));
        assert!(found(&Graph::empty(0), &named::cube()));
    }

    #[test]
    fn disconnected_pattern() {
        let two_triangles = named::complete(3).disjoint_union(&named::complete(3).prefixed("b")).unwrap();
        assert!(found(&two_triangles, &named::complete(6)));
        assert!(!found(&two_triangles, &named::complete(5)));
    }

    #[test]
    fn budget_is_reported() {
        assert_eq!(
            find_subgraph(&named::cycle(10), &named::petersen(), &Budget::nodes(3)),
            Embedding::Timeout
        );
    }
}
