//! Exact Hamiltonian cycle and path decisions with checkable certificates,
//! and the vertex-deletion classifiers built on them.

mod classify;
mod search;

pub use classify::{
    classify, classify_with, AlmostHypo, ClassificationReport, ClassifyOptions, Decision,
    VertexCheck,
};

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use search::Outcome;

/// Limits for one search. `None` means unlimited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    #[serde(with = "opt_millis")]
    pub max_time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: Some(20_000_000_000),
            max_time: Some(Duration::from_secs(600)),
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_nodes: None,
            max_time: None,
        }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            max_time: None,
        }
    }
}

mod opt_millis {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
        d.map(|d| d.as_millis() as u64).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Duration>, D::Error> {
        Ok(Option::<u64>::deserialize(d)?.map(Duration::from_millis))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    #[serde(rename = "elapsed_us", with = "micros")]
    pub elapsed: Duration,
}

mod micros {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        (d.as_micros() as u64).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_micros(u64::deserialize(d)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Cycle,
    Path,
    Exhausted,
    Timeout,
}

/// Outcome of one search. `sequence` is non-empty exactly for `Cycle` and
/// `Path`, and is expressed in the vertex numbering of the searched graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub sequence: Vec<Vertex>,
    pub stats: SearchStats,
}

impl Certificate {
    pub fn is_positive(&self) -> bool {
        matches!(self.kind, CertificateKind::Cycle | CertificateKind::Path)
    }

    pub fn is_exhausted(&self) -> bool {
        self.kind == CertificateKind::Exhausted
    }

    pub fn is_timeout(&self) -> bool {
        self.kind == CertificateKind::Timeout
    }

    /// Renames the vertices: `map[v]` is the new name of `v`.
    pub fn mapped(&self, map: &[Vertex]) -> Certificate {
        Certificate {
            sequence: self.sequence.iter().map(|&v| map[v]).collect(),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HamiltonicityError {
    #[error("cycle search needs at least 3 vertices, got {0}")]
    TooFewForCycle(usize),
    #[error("path search needs at least 2 vertices, got {0}")]
    TooFewForPath(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidCertificate {
    #[error("certificate of kind {0:?} carries no sequence to check")]
    NotPositive(CertificateKind),
    #[error("sequence covers {got} vertices, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("vertex {0} repeats or is outside the vertex set")]
    BadVertex(Vertex),
    #[error("{0} and {1} are consecutive but not adjacent")]
    NotAdjacent(Vertex, Vertex),
}

/// Checks that `seq` lists every vertex of `g` not in `skip` exactly once,
/// with consecutive entries adjacent (cyclically if `closed`).
pub fn check_sequence(
    g: &Graph,
    seq: &[Vertex],
    closed: bool,
    skip: &[Vertex],
) -> Result<(), InvalidCertificate> {
    let n = g.order();
    let expected = n - skip.iter().filter(|&&v| v < n).count();
    if seq.len() != expected {
        return Err(InvalidCertificate::WrongLength {
            got: seq.len(),
            expected,
        });
    }
    let mut seen = vec![false; n];
    for &v in skip {
        if v < n {
            seen[v] = true;
        }
    }
    for &v in seq {
        if v >= n || seen[v] {
            return Err(InvalidCertificate::BadVertex(v));
        }
        seen[v] = true;
    }
    for pair in seq.windows(2) {
        if !g.has_edge(pair[0], pair[1]) {
            return Err(InvalidCertificate::NotAdjacent(pair[0], pair[1]));
        }
    }
    if closed {
        let (a, b) = (seq[seq.len() - 1], seq[0]);
        if seq.len() < 3 || !g.has_edge(a, b) {
            return Err(InvalidCertificate::NotAdjacent(a, b));
        }
    }
    Ok(())
}

/// Re-validates a positive certificate against `g`, independently of the
/// search that produced it. `skip` lists vertices the certificate avoids.
pub fn validate(g: &Graph, cert: &Certificate, skip: &[Vertex]) -> Result<(), InvalidCertificate> {
    match cert.kind {
        CertificateKind::Cycle => check_sequence(g, &cert.sequence, true, skip),
        CertificateKind::Path => check_sequence(g, &cert.sequence, false, skip),
        k => Err(InvalidCertificate::NotPositive(k)),
    }
}

fn max_degree_vertex(g: &Graph) -> Vertex {
    (0..g.order())
        .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
        .unwrap_or(0)
}

fn certificate(outcome: Outcome, stats: SearchStats, positive: CertificateKind) -> Certificate {
    match outcome {
        Outcome::Found(sequence) => Certificate {
            kind: positive,
            sequence,
            stats,
        },
        Outcome::Exhausted => Certificate {
            kind: CertificateKind::Exhausted,
            sequence: Vec::new(),
            stats,
        },
        Outcome::Timeout => Certificate {
            kind: CertificateKind::Timeout,
            sequence: Vec::new(),
            stats,
        },
    }
}

pub fn hamiltonian_cycle(g: &Graph, budget: &Budget) -> Result<Certificate, HamiltonicityError> {
    let n = g.order();
    if n < 3 {
        return Err(HamiltonicityError::TooFewForCycle(n));
    }
    if !g.is_connected() || (0..n).any(|v| g.degree(v) < 2) {
        return Ok(certificate(Outcome::Exhausted, SearchStats::default(), CertificateKind::Cycle));
    }
    let (outcome, stats) = search::search_cycle(g, max_degree_vertex(g), budget);
    Ok(certificate(outcome, stats, CertificateKind::Cycle))
}

/// Hamiltonian path search, reduced to a cycle search in `g` plus one vertex
/// joined to everything.
pub fn hamiltonian_path(g: &Graph, budget: &Budget) -> Result<Certificate, HamiltonicityError> {
    let n = g.order();
    if n < 2 {
        return Err(HamiltonicityError::TooFewForPath(n));
    }
    if !g.is_connected() || (0..n).filter(|&v| g.degree(v) < 2).count() > 2 {
        return Ok(certificate(Outcome::Exhausted, SearchStats::default(), CertificateKind::Path));
    }
    let mut cone = Graph::from_edges(n + 1, g.edges()).expect("edges of a simple graph");
    for v in 0..n {
        cone.insert_edge(v, n).expect("apex is new");
    }
    let (outcome, stats) = search::search_cycle(&cone, n, budget);
    let outcome = match outcome {
        // the apex opens the cycle; dropping it leaves the path
        Outcome::Found(seq) => Outcome::Found(seq[1..].to_vec()),
        other => other,
    };
    Ok(certificate(outcome, stats, CertificateKind::Path))
}
