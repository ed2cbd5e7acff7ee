use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{DegreeCensus, Graph, Vertex};
use crate::planarity::{girth, is_planar_graph};
use crate::symmetry::automorphism_group_order;

use super::{hamiltonian_cycle, hamiltonian_path, Budget, Certificate, CertificateKind};

/// Three-valued outcome; `Unknown` means some search ran out of budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

impl Decision {
    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }

    fn of(cert: &Certificate) -> Decision {
        match cert.kind {
            CertificateKind::Cycle | CertificateKind::Path => Decision::Yes,
            CertificateKind::Exhausted => Decision::No,
            CertificateKind::Timeout => Decision::Unknown,
        }
    }
}

impl std::fmt::Display for Decision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Decision::Yes => "yes",
            Decision::No => "no",
            Decision::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlmostHypo {
    pub decision: Decision,
    pub exceptional: Option<Vertex>,
}

/// Searches in `g - vertex`, with sequences in the numbering of `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCheck {
    pub vertex: Vertex,
    pub label: String,
    pub cycle: Option<Certificate>,
    pub path: Option<Certificate>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    pub budget: Budget,
    /// Whether almost hypohamiltonian graphs must themselves be non-Hamiltonian.
    pub almost_requires_non_hamiltonian: bool,
    pub traceability: bool,
    pub automorphisms: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            budget: Budget::default(),
            almost_requires_non_hamiltonian: true,
            traceability: true,
            automorphisms: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub order: usize,
    pub size: usize,
    pub planar: bool,
    pub girth: Option<usize>,
    pub degree_census: DegreeCensus,
    pub hamiltonian: Decision,
    pub traceable: Decision,
    pub hypohamiltonian: Decision,
    pub hypotraceable: Decision,
    pub almost_hypohamiltonian: AlmostHypo,
    /// Decimal string; absent when not requested.
    pub automorphism_group_order: Option<String>,
    pub cycle: Option<Certificate>,
    pub path: Option<Certificate>,
    pub vertex_deleted: Vec<VertexCheck>,
    pub warnings: Vec<String>,
}

pub fn classify(g: &Graph, budget: &Budget) -> ClassificationReport {
    classify_with(
        g,
        &ClassifyOptions {
            budget: *budget,
            ..ClassifyOptions::default()
        },
    )
}

fn lift(cert: Certificate, v: Vertex) -> Certificate {
    // g - v renumbers w > v to w - 1
    let map: Vec<Vertex> = (0..cert.sequence.iter().max().map_or(0, |m| m + 1))
        .map(|w| if w >= v { w + 1 } else { w })
        .collect();
    cert.mapped(&map)
}

fn open_cycle(c: &Certificate) -> Certificate {
    Certificate {
        kind: CertificateKind::Path,
        ..c.clone()
    }
}

/// A Hamiltonian cycle of `g - v` entered from `v` is a Hamiltonian path of `g`.
fn through_vertex(g: &Graph, check: &VertexCheck) -> Option<Certificate> {
    let c = check.cycle.as_ref().filter(|c| c.is_positive())?;
    let i = c.sequence.iter().position(|&u| g.has_edge(check.vertex, u))?;
    let mut sequence = vec![check.vertex];
    sequence.extend(c.sequence[i..].iter().chain(&c.sequence[..i]));
    Some(Certificate {
        kind: CertificateKind::Path,
        sequence,
        stats: c.stats,
    })
}

fn run_cycle(g: &Graph, budget: &Budget) -> Option<Certificate> {
    hamiltonian_cycle(g, budget).ok()
}

fn run_path(g: &Graph, budget: &Budget) -> Option<Certificate> {
    hamiltonian_path(g, budget).ok()
}

fn all_of(ds: impl Iterator<Item = Decision>) -> Decision {
    let mut out = Decision::Yes;
    for d in ds {
        match d {
            Decision::No => return Decision::No,
            Decision::Unknown => out = Decision::Unknown,
            Decision::Yes => {}
        }
    }
    out
}

fn negate(d: Decision) -> Decision {
    match d {
        Decision::Yes => Decision::No,
        Decision::No => Decision::Yes,
        Decision::Unknown => Decision::Unknown,
    }
}

fn and(a: Decision, b: Decision) -> Decision {
    all_of([a, b].into_iter())
}

pub fn classify_with(g: &Graph, opts: &ClassifyOptions) -> ClassificationReport {
    let n = g.order();
    let budget = &opts.budget;
    let cycle = run_cycle(g, budget);
    // a graph too small for a cycle is not Hamiltonian
    let hamiltonian = cycle.as_ref().map_or(Decision::No, Decision::of);

    let mut vertex_deleted: Vec<VertexCheck> = (0..n)
        .into_par_iter()
        .map(|v| {
            let h = g.delete_vertex(v).expect("vertex in range");
            VertexCheck {
                vertex: v,
                label: g.label(v).to_string(),
                cycle: run_cycle(&h, budget).map(|c| lift(c, v)),
                path: None,
            }
        })
        .collect();
    let deleted_cycle = |c: &VertexCheck| c.cycle.as_ref().map_or(Decision::No, Decision::of);

    let hypohamiltonian = if n < 4 {
        Decision::No
    } else {
        and(negate(hamiltonian), all_of(vertex_deleted.iter().map(deleted_cycle)))
    };

    let failing: Vec<Vertex> = vertex_deleted
        .iter()
        .filter(|c| deleted_cycle(c) == Decision::No)
        .map(|c| c.vertex)
        .collect();
    let undecided = vertex_deleted
        .iter()
        .any(|c| deleted_cycle(c) == Decision::Unknown);
    let base = if opts.almost_requires_non_hamiltonian {
        negate(hamiltonian)
    } else {
        Decision::Yes
    };
    let almost_hypohamiltonian = if n < 4 || failing.len() > 1 {
        AlmostHypo {
            decision: Decision::No,
            exceptional: None,
        }
    } else if undecided {
        AlmostHypo {
            decision: and(base, Decision::Unknown),
            exceptional: None,
        }
    } else if failing.len() == 1 {
        let decision = base;
        AlmostHypo {
            decision,
            exceptional: decision.is_yes().then_some(failing[0]),
        }
    } else {
        AlmostHypo {
            decision: Decision::No,
            exceptional: None,
        }
    };

    let mut path = None;
    let mut traceable = Decision::Unknown;
    let mut hypotraceable = Decision::Unknown;
    if opts.traceability {
        path = cycle
            .as_ref()
            .filter(|c| c.is_positive())
            .map(open_cycle)
            .or_else(|| vertex_deleted.iter().find_map(|c| through_vertex(g, c)));
        traceable = if path.is_some() || n < 2 {
            Decision::Yes
        } else {
            path = run_path(g, budget);
            path.as_ref().map_or(Decision::Unknown, Decision::of)
        };
        hypotraceable = if n < 3 {
            Decision::No
        } else if traceable != Decision::No {
            negate(traceable)
        } else {
            vertex_deleted.par_iter_mut().for_each(|check| {
                if !deleted_cycle(check).is_yes() {
                    let h = g.delete_vertex(check.vertex).expect("vertex in range");
                    check.path = run_path(&h, budget).map(|c| lift(c, check.vertex));
                }
            });
            all_of(vertex_deleted.iter().map(|c| {
                if deleted_cycle(c).is_yes() {
                    Decision::Yes
                } else {
                    c.path.as_ref().map_or(Decision::No, Decision::of)
                }
            }))
        };
    }

    let mut warnings = Vec::new();
    let census = g.degree_census();
    if hypohamiltonian.is_yes() && census.min_degree().unwrap_or(0) < 3 {
        warnings.push("hypohamiltonian graph with a vertex of degree below 3".to_string());
    }
    if hamiltonian == Decision::Unknown {
        warnings.push("Hamiltonicity search ran out of budget".to_string());
    }
    if vertex_deleted.iter().any(|c| c.cycle.as_ref().is_some_and(Certificate::is_timeout)) {
        warnings.push("some vertex-deleted searches ran out of budget".to_string());
    }

    ClassificationReport {
        order: n,
        size: g.size(),
        planar: is_planar_graph(g),
        girth: girth(g).ok(),
        degree_census: census,
        hamiltonian,
        traceable,
        hypohamiltonian,
        hypotraceable,
        almost_hypohamiltonian,
        automorphism_group_order: opts
            .automorphisms
            .then(|| automorphism_group_order(g).to_string()),
        cycle,
        path,
        vertex_deleted,
        warnings,
    }
}
