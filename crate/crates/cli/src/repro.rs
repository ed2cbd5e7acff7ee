//! The reproduction report: one row per checkable claim, each computed
//! from scratch, plus the verified witnesses that feed the bounds ledger.

use std::collections::BTreeSet;
use std::fmt::Display;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use hypoham_core::constructions::{
    build_order, combine_four, facial_four_cycles, insert, th, FourCycleSpec,
};
use hypoham_core::grinberg::{exact_feasibility, residue_screen, ExactOptions};
use hypoham_core::hamiltonicity::{
    classify_with, hamiltonian_path, validate, Budget, ClassificationReport, ClassifyOptions,
    Decision,
};
use hypoham_core::planarity::{
    crossing_number_at_most_one, is_planar_graph, planar_embedding, CrossingVerdict,
    PlanarEmbedding,
};
use hypoham_core::subgraph::{find_subgraph, Embedding};
use hypoham_core::symmetry::{canonical_form, is_isomorphic};
use hypoham_core::{named, Graph, Vertex};
use hypoham_hog::{manifest, Claim, HogClient, HogError};

use crate::ledger::{c23_chain, p13_chain, p23_chain, BoundsLedger, Expr, LedgerError, Symbol};

pub const SCHEMA: &str = "hypoham.repro/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Quick,
    Full,
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quick" => Ok(Scope::Quick),
            "full" => Ok(Scope::Full),
            _ => Err(format!("unknown scope {s:?}, expected quick or full")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    #[serde(rename = "match")]
    Match,
    #[serde(rename = "mismatch")]
    Mismatch,
    #[serde(rename = "skipped(budget)")]
    SkippedBudget,
    #[serde(rename = "skipped(offline)")]
    SkippedOffline,
}

impl Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::SkippedBudget => "skipped(budget)",
            Status::SkippedOffline => "skipped(offline)",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub id: String,
    /// Acceptance criterion this row belongs to, if any.
    pub criterion: Option<u8>,
    pub claimed: String,
    pub computed: String,
    pub status: Status,
    /// Best-effort rows may end in `skipped(budget)` without failing their criterion.
    pub required: bool,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    PlanarHypohamiltonian,
    PlanarAlmostHypohamiltonian,
}

/// A graph whose properties this run verified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub artifact: String,
    pub kind: WitnessKind,
    pub order: usize,
    pub girth: Option<usize>,
    pub cubic_vertices: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReproReport {
    pub schema: &'static str,
    pub scope: Scope,
    pub rows: Vec<Row>,
    pub witnesses: Vec<Witness>,
    pub ledger: Option<BoundsLedger>,
}

impl ReproReport {
    pub fn has_mismatch(&self) -> bool {
        self.rows.iter().any(|r| r.status == Status::Mismatch)
    }

    pub fn rows_for(&self, criterion: u8) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(move |r| r.criterion == Some(criterion))
    }

    /// Every required row matched and every best-effort row matched or ran
    /// out of budget. A criterion without rows does not pass.
    pub fn criterion_passed(&self, criterion: u8) -> bool {
        let mut any = false;
        for r in self.rows_for(criterion) {
            any = true;
            let ok = r.status == Status::Match || (!r.required && r.status == Status::SkippedBudget);
            if !ok {
                return false;
            }
        }
        any
    }

    pub fn row(&self, id: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.id == id)
    }
}

/// Why a graph could not be obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unavailable {
    /// Network forbidden or unreachable and no local copy.
    Offline(String),
    /// The source answered but the data is wrong or missing.
    Failed(String),
}

pub type Accept<'a> = &'a (dyn Fn(&Graph) -> bool + Sync);

pub trait Provider: Sync {
    fn hog(&self, id: u64) -> Result<Graph, Unavailable>;
    fn named(&self, name: &str, order: usize, query: &str, accept: Accept) -> Result<Graph, Unavailable>;
    /// A hand-transcribed embedding shipped next to the named graph.
    fn embedding(&self, name: &str) -> Option<Result<PlanarEmbedding, String>>;
}

pub struct HogProvider<'a> {
    pub client: &'a HogClient,
}

fn unavailable(e: HogError) -> Unavailable {
    if e.is_environmental() {
        Unavailable::Offline(e.to_string())
    } else {
        Unavailable::Failed(e.to_string())
    }
}

impl Provider for HogProvider<'_> {
    fn hog(&self, id: u64) -> Result<Graph, Unavailable> {
        self.client.fetch(id).map_err(unavailable)
    }

    fn named(&self, name: &str, order: usize, query: &str, accept: Accept) -> Result<Graph, Unavailable> {
        match self.client.resolve_named(name, query, order, accept) {
            Ok(Some(f)) => Ok(f.graph),
            Ok(None) => Err(Unavailable::Failed(format!(
                "no search result for {query:?} verified as {name}"
            ))),
            Err(e) => Err(match unavailable(e) {
                Unavailable::Offline(why) => Unavailable::Offline(format!("no {name}.g6 fixture and {why}")),
                failed => failed,
            }),
        }
    }

    fn embedding(&self, name: &str) -> Option<Result<PlanarEmbedding, String>> {
        let dir = self.client.config().fixtures.as_ref()?.dir();
        let path = dir.join(format!("{name}.emb"));
        let text = std::fs::read_to_string(&path).ok()?;
        Some(hypoham_core::formats::parse_embedding(&text).map_err(|e| format!("{}: {e}", path.display())))
    }
}

#[derive(Debug, Clone)]
struct Skip {
    status: Status,
    reason: String,
}

impl From<Unavailable> for Skip {
    fn from(u: Unavailable) -> Self {
        match u {
            Unavailable::Offline(reason) => Skip {
                status: Status::SkippedOffline,
                reason: format!("fixture unavailable offline: {reason}"),
            },
            Unavailable::Failed(reason) => Skip {
                status: Status::Mismatch,
                reason,
            },
        }
    }
}

struct Outcome {
    computed: String,
    status: Status,
}

impl Outcome {
    fn check(ok: bool, computed: impl Display) -> Outcome {
        Outcome {
            computed: computed.to_string(),
            status: if ok { Status::Match } else { Status::Mismatch },
        }
    }

    fn equal<T: PartialEq + Display>(computed: T, want: T) -> Outcome {
        Outcome::check(computed == want, computed)
    }

    fn decision(d: Decision, want: Decision) -> Outcome {
        Outcome {
            computed: d.to_string(),
            status: match d {
                Decision::Unknown => Status::SkippedBudget,
                d if d == want => Status::Match,
                _ => Status::Mismatch,
            },
        }
    }
}

/// A graph together with its classification, computed once.
struct Classified {
    graph: Graph,
    planar: bool,
    report: ClassificationReport,
}

type Src<T> = Result<T, Skip>;

pub struct Options {
    pub scope: Scope,
    pub budget: Budget,
    /// Cap for best-effort searches on large graphs.
    pub best_effort: Duration,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            scope: Scope::Full,
            budget: Budget::default(),
            best_effort: Duration::from_secs(60),
        }
    }
}

struct Runner<'a> {
    p: &'a dyn Provider,
    opts: &'a Options,
    rows: Vec<Row>,
    witnesses: Vec<Witness>,
}

const QUERY: &str = "planar hypohamiltonian graph";

impl<'a> Runner<'a> {
    fn classify_opts(&self, automorphisms: bool) -> ClassifyOptions {
        ClassifyOptions {
            budget: self.opts.budget,
            traceability: false,
            automorphisms,
            ..ClassifyOptions::default()
        }
    }

    fn classified(&mut self, name: &str, graph: Graph) -> Classified {
        let report = classify_with(&graph, &self.classify_opts(true));
        let planar = report.planar;
        if planar {
            let kind = if report.hypohamiltonian.is_yes() {
                Some(WitnessKind::PlanarHypohamiltonian)
            } else if report.almost_hypohamiltonian.decision.is_yes() {
                Some(WitnessKind::PlanarAlmostHypohamiltonian)
            } else {
                None
            };
            if let Some(kind) = kind {
                let w = Witness {
                    artifact: name.to_string(),
                    kind,
                    order: graph.order(),
                    girth: report.girth,
                    cubic_vertices: report.degree_census.cubic_count,
                };
                if !self.witnesses.contains(&w) {
                    self.witnesses.push(w);
                }
            }
        }
        Classified {
            graph,
            planar,
            report,
        }
    }

    fn claim<T>(
        &mut self,
        src: &Src<T>,
        id: impl Into<String>,
        criterion: Option<u8>,
        claimed: impl Display,
        required: bool,
        f: impl FnOnce(&T) -> Outcome,
    ) {
        let began = Instant::now();
        let out = match src {
            Ok(x) => f(x),
            Err(skip) => Outcome {
                computed: skip.reason.clone(),
                status: skip.status,
            },
        };
        self.rows.push(Row {
            id: id.into(),
            criterion,
            claimed: claimed.to_string(),
            computed: out.computed,
            status: out.status,
            required,
            elapsed_ms: began.elapsed().as_millis() as u64,
        });
    }

    fn petersen(&mut self) {
        let p = Ok(self.classified("petersen", named::petersen()));
        self.claim(&p, "petersen.order", Some(1), 10, true, |c| {
            Outcome::equal(c.graph.order(), 10)
        });
        self.claim(&p, "petersen.hypohamiltonian", Some(1), "yes", true, |c| {
            Outcome::decision(c.report.hypohamiltonian, Decision::Yes)
        });
        self.claim(&p, "petersen.vertex_deleted_certificates", Some(1), "10 validated 9-cycles", true, |c| {
            let ok = certificates_valid(c, 9);
            Outcome::check(ok == 10, format!("{ok} validated 9-cycles"))
        });
        let k4 = Ok(named::complete(4));
        self.claim(&k4, "k4.cubic_vertices", None, 4, true, |g| {
            Outcome::equal(g.degree_census().cubic_count, 4)
        });
        let opts = self.classify_opts(false);
        self.claim(&k4, "k4.hamiltonian", None, "yes", true, |g| {
            let r = classify_with(g, &opts);
            Outcome::decision(r.hamiltonian, Decision::Yes)
        });
    }

    fn g34(&mut self) -> (Src<Classified>, Src<Classified>) {
        let accept = planar_hypo(self.classify_opts(false));
        let g7 = self.p.named("G7", 34, QUERY, &accept).map_err(Skip::from);
        let g8 = match &g7 {
            Ok(g7) => {
                let distinct = |g: &Graph| accept(g) && !is_isomorphic(g, g7);
                self.p.named("G8", 34, QUERY, &distinct).map_err(Skip::from)
            }
            Err(skip) => Err(skip.clone()),
        };
        let g7 = g7.map(|g| self.classified("G7", g));
        let g8 = g8.map(|g| self.classified("G8", g));
        (g7, g8)
    }

    fn g34_quick(&mut self, g7: &Src<Classified>, emb: &Src<PlanarEmbedding>) {
        self.claim(g7, "G7.order", Some(4), 34, true, |c| Outcome::equal(c.graph.order(), 34));
        self.claim(g7, "G7.cubic_vertices", Some(4), 26, true, |c| {
            Outcome::equal(c.report.degree_census.cubic_count, 26)
        });
        self.claim(g7, "G7.other_degrees", Some(4), "8 of degree 4, none other", true, |c| {
            let d = &c.report.degree_census;
            let others = c.graph.order() - d.count(3) - d.count(4);
            Outcome::check(
                d.count(4) == 8 && others == 0,
                format!("{} of degree 4, {others} other", d.count(4)),
            )
        });
        self.claim(g7, "G7.planar", Some(4), "yes", true, |c| Outcome::check(c.planar, c.planar));
        self.claim(emb, "G7.grinberg_screen", Some(5), "f′4 ∈ {1, 4}", true, |e| {
            match residue_screen(&e.face_profile(), 3) {
                Ok(splits) => {
                    let outside: BTreeSet<usize> = splits.iter().map(|s| s.outside(4)).collect();
                    let shown = format!(
                        "f′4 ∈ {{{}}}",
                        outside.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
                    );
                    Outcome::check(outside == BTreeSet::from([1, 4]), shown)
                }
                Err(e) => Outcome::check(false, e),
            }
        });
    }

    fn g34_full(&mut self, g7: &Src<Classified>, g8: &Src<Classified>, emb: &Src<PlanarEmbedding>) {
        for (name, g) in [("G7", g7), ("G8", g8)] {
            if name == "G8" {
                self.claim(g, "G8.order", Some(4), 34, true, |c| Outcome::equal(c.graph.order(), 34));
                self.claim(g, "G8.planar", Some(4), "yes", true, |c| Outcome::check(c.planar, c.planar));
                self.claim(g, "G8.cubic_vertices", Some(4), 26, true, |c| {
                    Outcome::equal(c.report.degree_census.cubic_count, 26)
                });
            }
            self.claim(g, format!("{name}.girth"), Some(4), 4, true, |c| {
                Outcome::check(c.report.girth == Some(4), format!("{:?}", c.report.girth))
            });
            self.claim(g, format!("{name}.hypohamiltonian"), Some(4), "yes", true, |c| {
                Outcome::decision(c.report.hypohamiltonian, Decision::Yes)
            });
            self.claim(g, format!("{name}.automorphisms"), Some(4), "nontrivial", true, |c| {
                let order = c.report.automorphism_group_order.clone().unwrap_or_default();
                Outcome::check(order != "1", format!("group order {order}"))
            });
        }
        let pair: Src<(&Classified, &Classified)> = match (g7, g8) {
            (Ok(a), Ok(b)) => Ok((a, b)),
            (Err(s), _) | (_, Err(s)) => Err(s.clone()),
        };
        self.claim(&pair, "G7_G8.non_isomorphic", Some(4), "yes", true, |(a, b)| {
            let iso = is_isomorphic(&a.graph, &b.graph);
            Outcome::check(!iso, !iso)
        });

        self.claim(emb, "G7.face_profile", Some(5), "{4:5, 5:18}", true, |e| {
            let p = e.face_profile();
            Outcome::check(p.count(4) == 5 && p.count(5) == 18 && p.face_count() == 23, p)
        });
        let exact = emb.as_ref().map_err(Skip::clone).map(|e| exact_feasibility(e, &ExactOptions::default()));
        self.claim(&exact, "G7.grinberg_exact", Some(5), "infeasible", true, |v| match v {
            Ok(v) => Outcome::check(v.is_infeasible(), if v.is_infeasible() { "infeasible" } else { "feasible" }),
            Err(e) => Outcome::check(false, e),
        });
        let both: Src<(&Classified, bool)> = match (g7, &exact) {
            (Ok(c), Ok(Ok(v))) => Ok((c, v.is_infeasible())),
            (Err(s), _) => Err(s.clone()),
            (_, Err(s)) => Err(s.clone()),
            (Ok(_), Ok(Err(e))) => Err(Skip {
                status: Status::Mismatch,
                reason: e.to_string(),
            }),
        };
        self.claim(&both, "G7.grinberg_agrees_with_search", Some(5), "both non-Hamiltonian", true, |(c, infeasible)| {
            let searched = c.report.hamiltonian;
            Outcome {
                computed: format!("grinberg infeasible={infeasible}, search hamiltonian={searched}"),
                status: match searched {
                    Decision::Unknown => Status::SkippedBudget,
                    Decision::No if *infeasible => Status::Match,
                    _ => Status::Mismatch,
                },
            }
        });
        self.claim(g7, "G7.vertex_deleted_certificates", Some(6), "34 validated 33-cycles", true, |c| {
            let ok = certificates_valid(c, 33);
            Outcome::check(ok == 34, format!("{ok} validated 33-cycles"))
        });
    }

    fn th_search(&mut self, name: &str, g: &Graph) -> Option<(FourCycleSpec, Classified)> {
        let (spec, h) = find_th(g, &self.classify_opts(false))?;
        let tag = if spec.keep_edges { "th_keep" } else { "th" };
        Some((spec, self.classified(&format!("{tag}({name})"), h)))
    }

    fn th_rows(&mut self, g7: &Src<Classified>) -> Src<Graph> {
        let found38 = match g7 {
            Ok(c) => {
                let g = c.graph.clone();
                Ok(self.th_search("G7", &g))
            }
            Err(s) => Err(s.clone()),
        };
        self.claim(&found38, "th.G7_keep_edges", Some(7), "38-vertex planar hypohamiltonian", true, |f| match f {
            Some((spec, c)) if spec.keep_edges => Outcome::check(c.graph.order() == 38, describe_th(c, spec)),
            Some((spec, c)) => Outcome::check(false, format!("only the edge-deleting variant verified: {}", describe_th(c, spec))),
            None => Outcome::check(false, "no 4-cycle of G7 expands to a planar hypohamiltonian graph"),
        });

        let base37 = source37(self.p, &self.classify_opts(false));
        let found41 = match &base37 {
            Ok((name, g)) => Ok(self.th_search(name, g)),
            Err(s) => Err(s.clone()),
        };
        self.claim(&found41, "th.37_to_41", Some(7), "41-vertex planar hypohamiltonian", true, |f| match f {
            Some((spec, c)) => Outcome::check(c.graph.order() == 41, describe_th(c, spec)),
            None => Outcome::check(false, "no 4-cycle of the 37-vertex graph expands to a planar hypohamiltonian graph"),
        });
        match found41 {
            Ok(Some((_, c))) => Ok(c.graph),
            Ok(None) => Err(Skip {
                status: Status::Mismatch,
                reason: "no verified 41-vertex graph".into(),
            }),
            Err(s) => Err(s),
        }
    }

    fn manifest_rows(&mut self) -> Src<Graph> {
        let h4 = self.p.hog(51085).map_err(Skip::from);
        for entry in manifest() {
            let id = entry.hog_id;
            let criterion = match id {
                1431 => Some(2),
                17030 | 17052 => Some(3),
                _ => None,
            };
            let fetched = self.p.hog(id).map_err(Skip::from);
            let c = fetched.map(|g| self.classified(&format!("hog:{id}"), g));
            let want = match &entry.expected_order {
                hypoham_hog::ExpectedOrder::Exact(n) => n.to_string(),
                hypoham_hog::ExpectedOrder::OneOf(ns) => format!("one of {ns:?}"),
                hypoham_hog::ExpectedOrder::Unknown => "any".into(),
            };
            self.claim(&c, format!("hog:{id}.order"), criterion, want, true, |c| {
                Outcome::check(entry.expected_order.admits(c.graph.order()), c.graph.order())
            });
            for claim in entry.expected_properties {
                let rid = format!("hog:{id}.{}", claim_name(claim));
                match claim {
                    Claim::ContainsH4 => {
                        let both: Src<(&Classified, &Graph)> = match (&c, &h4) {
                            (Ok(c), Ok(h)) => Ok((c, h)),
                            (Err(s), _) | (_, Err(s)) => Err(s.clone()),
                        };
                        let budget = self.opts.budget;
                        self.claim(&both, rid, criterion, "contains H4", true, |(c, h)| {
                            match find_subgraph(h, &c.graph, &budget) {
                                Embedding::Found(_) => Outcome::check(true, "H4 found"),
                                Embedding::Absent => Outcome::check(false, "no subgraph isomorphic to H4"),
                                Embedding::Timeout => Outcome {
                                    computed: "search ran out of budget".into(),
                                    status: Status::SkippedBudget,
                                },
                            }
                        });
                    }
                    _ => self.claim(&c, rid, criterion, claim_value(claim), true, |c| check_claim(c, claim)),
                }
            }
        }
        self.p.hog(17030).or_else(|_| self.p.hog(17052)).map_err(Skip::from)
    }

    fn ladder_rows(&mut self, base40: &Src<Graph>, base41: &Src<Graph>) {
        let base42 = self.p.hog(1431).map_err(Skip::from);
        let base43 = match self.p.hog(51107) {
            Ok(g) if g.order() == 43 => Ok(g),
            Ok(g) => Err(Skip {
                status: Status::SkippedOffline,
                reason: format!("no 43-vertex base (51107 has order {})", g.order()),
            }),
            Err(u) => Err(Skip::from(u)),
        };
        let bases = [base40, base41, &base42, &base43];
        let lookup = |n: usize| -> Option<Graph> { bases.get(n.checked_sub(40)?)?.as_ref().ok().cloned() };
        let opts = self.classify_opts(false);
        for n in 40..=48 {
            let base = bases[(n - 40) % 4];
            let result = match base {
                Ok(_) => Ok(build_order(n, &lookup, &opts)),
                Err(s) => Err(s.clone()),
            };
            let mut verified = None;
            self.claim(&result, format!("ladder.{n}"), Some(8), "planar hypohamiltonian", true, |r| match r {
                Ok(l) => {
                    verified = Some(l.graph.clone());
                    Outcome::check(
                        l.graph.order() == n && l.report.hypohamiltonian.is_yes(),
                        format!("verified: base {} plus {} Th step(s)", l.base_order, l.steps.len()),
                    )
                }
                Err(e) => Outcome::check(false, e),
            });
            if let Some(g) = verified {
                self.classified(&format!("ladder({n})"), g);
            }
        }
    }

    fn fig8_rows(&mut self, g7: &Src<Classified>) {
        let opts = self.classify_opts(false);
        let found = g7.as_ref().map_err(Skip::clone).map(|c| one_edge_crossing_family(&c.graph, &opts));
        self.claim(&found, "fig8.family", Some(9), "6 pairwise non-isomorphic graphs G7 + e", true, |f| {
            Outcome::check(f.len() >= 6, format!("{} found", f.len()))
        });
        let six: Src<Vec<Graph>> = found.map(|f| f.into_iter().take(6).map(|(_, g)| g).collect());
        self.claim(&six, "fig8.nonplanar", Some(9), "all nonplanar", true, |gs| {
            let k = gs.iter().filter(|g| !is_planar_graph(g)).count();
            Outcome::check(k == 6, format!("{k} of {} nonplanar", gs.len()))
        });
        self.claim(&six, "fig8.one_crossing", Some(9), "one-crossing planarization exists", true, |gs| {
            let k = gs
                .par_iter()
                .filter(|g| matches!(crossing_number_at_most_one(g), CrossingVerdict::OneCrossing { .. }))
                .count();
            Outcome::check(k == 6, format!("{k} of {} pass", gs.len()))
        });
        self.claim(&six, "fig8.hypohamiltonian", Some(9), "all hypohamiltonian", true, |gs| {
            let k = gs.par_iter().filter(|g| classify_with(g, &opts).hypohamiltonian.is_yes()).count();
            Outcome::check(k == 6, format!("{k} of {} hypohamiltonian", gs.len()))
        });
        self.claim(&six, "fig8.pairwise_non_isomorphic", Some(9), "yes", true, |gs| {
            let ok = gs.len() == 6 && hypoham_core::symmetry::pairwise_distinct(gs).is_ok();
            Outcome::check(ok, ok)
        });
    }

    fn combine_rows(&mut self, g7: &Src<Classified>, g8: &Src<Classified>) {
        let p = named::petersen();
        let joined = combine_four([(&p, 0), (&p, 0), (&p, 0), (&p, 0)], None).map_err(|e| Skip {
            status: Status::Mismatch,
            reason: e.to_string(),
        });
        self.claim(&joined, "combine.petersen4.order", Some(10), "4·10 − 6 = 34", true, |g| {
            Outcome::equal(g.order(), 34)
        });
        let budget = self.opts.budget;
        self.claim(&joined, "combine.petersen4.hypotraceable", Some(10), "yes", true, |g| {
            Outcome::decision(hypotraceable(g, &budget), Decision::Yes)
        });

        let parts: Src<[Graph; 4]> = match (g7, g8) {
            (Ok(a), Ok(b)) => Ok([a.graph.clone(), b.graph.clone(), a.graph.clone(), b.graph.clone()]),
            (Ok(a), Err(_)) => Ok([a.graph.clone(), a.graph.clone(), a.graph.clone(), a.graph.clone()]),
            (Err(s), _) => Err(s.clone()),
        };
        let composed = parts.map(|ps| planar_composition(&ps));
        self.claim(&composed, "combine.g34x4.order", Some(10), "4·34 − 6 = 130", true, |c| match c {
            Some(g) => Outcome::equal(g.order(), 130),
            None => Outcome::check(false, "no planar composition found"),
        });
        self.claim(&composed, "combine.g34x4.planar", Some(10), "yes", true, |c| {
            let planar = c.as_ref().is_some_and(is_planar_graph);
            Outcome::check(planar, planar)
        });
        let capped = Budget {
            max_nodes: budget.max_nodes,
            max_time: Some(budget.max_time.map_or(self.opts.best_effort, |t| t.min(self.opts.best_effort))),
        };
        self.claim(&composed, "combine.g34x4.hypotraceable", Some(10), "yes (best effort)", false, |c| match c {
            Some(g) => Outcome::decision(hypotraceable(g, &capped), Decision::Yes),
            None => Outcome::check(false, "no composition"),
        });
    }

    fn ledger_rows(&mut self, g7: &Src<Classified>) -> BoundsLedger {
        let inserted = g7.as_ref().map_err(Skip::clone).map(|c| {
            let w = (0..c.graph.order()).find(|&v| c.graph.degree(v) == 3);
            w.and_then(|w| insert(&c.graph, w, &named::complete(4)).ok())
        });
        self.claim(&inserted, "insert.G7_into_K4.order", Some(11), "4·(34 − 1) = 132", true, |i| match i {
            Some(i) => Outcome::equal(i.graph.order(), 132),
            None => Outcome::check(false, "insertion failed"),
        });

        let ledger = update_ledger(&self.witnesses);
        let missing = g7.as_ref().err().filter(|s| s.status == Status::SkippedOffline).cloned();
        let l: Src<BoundsLedger> = ledger.map_err(|e| Skip {
            status: Status::Mismatch,
            reason: e.to_string(),
        });
        let status_for = |ok: bool| match (&missing, ok) {
            (_, true) => Status::Match,
            (Some(_), false) => Status::SkippedOffline,
            (None, false) => Status::Mismatch,
        };
        let suffix = missing.as_ref().map(|s| format!(" ({})", s.reason)).unwrap_or_default();
        let bounds: [(Symbol, &str, Option<u64>, u64); 6] = [
            (Symbol::H4, "27 ≤ h4 ≤ 34", Some(27), 34),
            (Symbol::Alpha0, "ᾱ0 ≤ 34", None, 34),
            (Symbol::C13, "C̄¹₃ ≤ 34", None, 34),
            (Symbol::C23, "C̄²₃ ≤ 2205", None, 2205),
            (Symbol::P13, "P̄¹₃ ≤ 132", None, 132),
            (Symbol::P23, "P̄²₃ ≤ 8694", None, 8694),
        ];
        for (symbol, claimed, lower, upper) in bounds {
            self.claim(&l, format!("ledger.{symbol:?}"), Some(11), claimed, true, |l| {
                let b = l.get(symbol);
                let ok = b.upper_value() == Some(upper) && lower.is_none_or(|x| b.lower_value() == Some(x));
                Outcome {
                    computed: format!("{symbol} {b}{}", if ok { String::new() } else { suffix.clone() }),
                    status: status_for(ok),
                }
            });
        }
        let chains: [(Symbol, &str, u64, u64); 3] = [
            (Symbol::C23, "2310 − 105", 2310, 105),
            (Symbol::P13, "4·33", 4, 33),
            (Symbol::P23, "9108 − 414", 9108, 414),
        ];
        for (symbol, claimed, a, b) in chains {
            self.claim(&l, format!("ledger.chain.{symbol:?}"), Some(11), claimed, true, |l| {
                let derived = l.get(symbol).upper.as_ref().and_then(|u| match &u.justification {
                    crate::ledger::Justification::Derived { chain } => Some(chain.clone()),
                    crate::ledger::Justification::Imported { .. } => None,
                });
                match derived {
                    Some(chain) => {
                        let ok = match &chain {
                            Expr::Sub { a: x, b: y } | Expr::Mul { a: x, b: y } => {
                                x.eval() == Some(a) && y.eval() == Some(b)
                            }
                            _ => false,
                        } && l.check().is_ok();
                        Outcome {
                            computed: format!("{chain} = {}", chain.eval().unwrap_or(0)),
                            status: status_for(ok),
                        }
                    }
                    None => Outcome {
                        computed: format!("imported bound {}{suffix}", l.get(symbol)),
                        status: status_for(false),
                    },
                }
            });
        }
        update_ledger(&self.witnesses).unwrap_or_else(|_| BoundsLedger::literature())
    }
}

fn planar_hypo(opts: ClassifyOptions) -> impl Fn(&Graph) -> bool + Sync {
    move |g: &Graph| is_planar_graph(g) && classify_with(g, &opts).hypohamiltonian.is_yes()
}

/// First Th expansion of `g` on a facial 4-cycle that verifies as planar
/// hypohamiltonian, trying the keep-edges variant first.
pub fn find_th(g: &Graph, opts: &ClassifyOptions) -> Option<(FourCycleSpec, Graph)> {
    let specs = facial_four_cycles(g);
    for keep in [true, false] {
        for s in &specs {
            let spec = FourCycleSpec::new(s.cycle, keep);
            let Ok(step) = th(g, &spec) else { continue };
            if is_planar_graph(&step.graph) && classify_with(&step.graph, opts).hypohamiltonian.is_yes() {
                return Some((spec, step.graph));
            }
        }
    }
    None
}

/// A 37-vertex planar hypohamiltonian graph: the named figures first, then
/// the listed House of Graphs entries.
fn source37(p: &dyn Provider, opts: &ClassifyOptions) -> Src<(String, Graph)> {
    let accept = planar_hypo(*opts);
    let mut out = Err(Skip {
        status: Status::SkippedOffline,
        reason: "fixture unavailable offline: no 37-vertex graph".into(),
    });
    for name in ["G9", "G10"] {
        if let Ok(g) = p.named(name, 37, QUERY, &accept) {
            return Ok((name.to_string(), g));
        }
    }
    for id in [51093, 51094, 51095, 51096] {
        match p.hog(id) {
            Ok(g) if g.order() == 37 => return Ok((format!("hog:{id}"), g)),
            Ok(_) => {}
            Err(u) => {
                let skip = Skip::from(u);
                if skip.status == Status::Mismatch {
                    out = Err(skip);
                }
            }
        }
    }
    out
}

/// Base graphs for [`build_order`]: orders 40, 41, 42 and 43.
pub fn ladder_bases(p: &dyn Provider, opts: &ClassifyOptions) -> [Option<Graph>; 4] {
    let b40 = p.hog(17030).or_else(|_| p.hog(17052)).ok();
    let b41 = source37(p, opts).ok().and_then(|(_, g)| find_th(&g, opts)).map(|(_, g)| g);
    let b42 = p.hog(1431).ok();
    let b43 = p.hog(51107).ok().filter(|g| g.order() == 43);
    [b40, b41, b42, b43]
}

fn describe_th(c: &Classified, spec: &FourCycleSpec) -> String {
    let labels: Vec<&str> = spec.cycle.iter().map(|&v| c.graph.label(v)).collect();
    format!(
        "order {} from 4-cycle {}{}",
        c.graph.order(),
        labels.join("-"),
        if spec.keep_edges { " keeping its edges" } else { "" }
    )
}

fn certificates_valid(c: &Classified, length: usize) -> usize {
    c.report
        .vertex_deleted
        .iter()
        .filter(|check| {
            check.cycle.as_ref().is_some_and(|cert| {
                cert.is_positive()
                    && cert.sequence.len() == length
                    && validate(&c.graph, cert, &[check.vertex]).is_ok()
            })
        })
        .count()
}

fn claim_name(c: &Claim) -> String {
    match c {
        Claim::Planar => "planar".into(),
        Claim::Hypohamiltonian => "hypohamiltonian".into(),
        Claim::AlmostHypohamiltonian => "almost_hypohamiltonian".into(),
        Claim::Girth(_) => "girth".into(),
        Claim::CubicVertices(_) => "cubic_vertices".into(),
        Claim::TrivialAutomorphisms | Claim::NontrivialAutomorphisms => "automorphisms".into(),
        Claim::ContainsH4 => "contains_h4".into(),
    }
}

fn claim_value(c: &Claim) -> String {
    match c {
        Claim::Planar | Claim::Hypohamiltonian | Claim::AlmostHypohamiltonian => "yes".into(),
        Claim::Girth(g) => g.to_string(),
        Claim::CubicVertices(k) => k.to_string(),
        Claim::TrivialAutomorphisms => "group order 1".into(),
        Claim::NontrivialAutomorphisms => "nontrivial".into(),
        Claim::ContainsH4 => "contains H4".into(),
    }
}

fn check_claim(c: &Classified, claim: &Claim) -> Outcome {
    let aut = c.report.automorphism_group_order.clone().unwrap_or_default();
    match claim {
        Claim::Planar => Outcome::check(c.planar, c.planar),
        Claim::Hypohamiltonian => Outcome::decision(c.report.hypohamiltonian, Decision::Yes),
        Claim::AlmostHypohamiltonian => {
            let a = &c.report.almost_hypohamiltonian;
            let mut out = Outcome::decision(a.decision, Decision::Yes);
            if let Some(w) = a.exceptional {
                out.computed = format!("yes, exceptional vertex {}", c.graph.label(w));
            }
            out
        }
        Claim::Girth(g) => Outcome::check(c.report.girth == Some(*g), format!("{:?}", c.report.girth)),
        Claim::CubicVertices(k) => Outcome::equal(c.report.degree_census.cubic_count, *k),
        Claim::TrivialAutomorphisms => Outcome::check(aut == "1", format!("group order {aut}")),
        Claim::NontrivialAutomorphisms => Outcome::check(aut != "1", format!("group order {aut}")),
        Claim::ContainsH4 => unreachable!("handled with the H4 fixture"),
    }
}

/// Exact hypotraceability: no Hamiltonian path, and one in every
/// vertex-deleted subgraph.
pub fn hypotraceable(g: &Graph, budget: &Budget) -> Decision {
    if g.order() < 3 {
        return Decision::No;
    }
    let Ok(top) = hamiltonian_path(g, budget) else {
        return Decision::No;
    };
    if top.is_positive() {
        return Decision::No;
    }
    if top.is_timeout() {
        return Decision::Unknown;
    }
    let each: Vec<Decision> = (0..g.order())
        .into_par_iter()
        .map(|v| {
            let h = g.delete_vertex(v).expect("vertex in range");
            match hamiltonian_path(&h, budget) {
                Ok(c) if c.is_positive() => Decision::Yes,
                Ok(c) if c.is_timeout() => Decision::Unknown,
                _ => Decision::No,
            }
        })
        .collect();
    if each.contains(&Decision::No) {
        Decision::No
    } else if each.contains(&Decision::Unknown) {
        Decision::Unknown
    } else {
        Decision::Yes
    }
}

/// Non-isomorphic graphs `g + e` that are nonplanar, hypohamiltonian and
/// drawable with a single crossing, in order of the added edge.
pub fn one_edge_crossing_family(g: &Graph, opts: &ClassifyOptions) -> Vec<((Vertex, Vertex), Graph)> {
    let n = g.order();
    let missing: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    let hits: Vec<((Vertex, Vertex), Graph, String)> = missing
        .par_iter()
        .filter_map(|&(u, v)| {
            let h = g.add_edge(u, v).ok()?;
            if is_planar_graph(&h) || !classify_with(&h, opts).hypohamiltonian.is_yes() {
                return None;
            }
            if !matches!(crossing_number_at_most_one(&h), CrossingVerdict::OneCrossing { .. }) {
                return None;
            }
            let form = canonical_form(&h).graph6;
            Some(((u, v), h, form))
        })
        .collect();
    let mut seen = BTreeSet::new();
    hits.into_iter()
        .filter(|(_, _, form)| seen.insert(form.clone()))
        .map(|(e, h, _)| (e, h))
        .collect()
}

fn stub_orders(g: &Graph, w: Vertex, e: Option<&PlanarEmbedding>) -> Vec<[Vertex; 3]> {
    let rot: Vec<Vertex> = match e {
        Some(e) => e.rotation(w).to_vec(),
        None => g.neighbors(w).collect(),
    };
    if rot.len() != 3 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for k in 0..3 {
        let r = [rot[k], rot[(k + 1) % 3], rot[(k + 2) % 3]];
        out.push(r);
        out.push([r[0], r[2], r[1]]);
    }
    out
}

/// Searches cubic vertices and stub orders for a planar four-graph join.
pub fn planar_composition(parts: &[Graph; 4]) -> Option<Graph> {
    let embeddings: Vec<Option<PlanarEmbedding>> = parts.iter().map(planar_embedding).collect();
    let cubic: Vec<Vec<Vertex>> = parts
        .iter()
        .map(|g| (0..g.order()).filter(|&v| g.degree(v) == 3).take(4).collect())
        .collect();
    let rounds = cubic.iter().map(Vec::len).min().unwrap_or(0);
    for r in 0..rounds {
        let ws: Vec<Vertex> = cubic.iter().map(|c| c[r]).collect();
        let orders: Vec<Vec<[Vertex; 3]>> = (0..4)
            .map(|i| stub_orders(&parts[i], ws[i], embeddings[i].as_ref()))
            .collect();
        let combos: Vec<[usize; 4]> = (0..orders[0].len())
            .flat_map(|a| (0..orders[1].len()).map(move |b| (a, b)))
            .flat_map(|(a, b)| (0..orders[2].len()).map(move |c| (a, b, c)))
            .flat_map(|(a, b, c)| (0..orders[3].len()).map(move |d| [a, b, c, d]))
            .collect();
        let hit = combos.par_iter().find_map_first(|idx| {
            let stubs = [orders[0][idx[0]], orders[1][idx[1]], orders[2][idx[2]], orders[3][idx[3]]];
            let g = combine_four(
                [(&parts[0], ws[0]), (&parts[1], ws[1]), (&parts[2], ws[2]), (&parts[3], ws[3])],
                Some(stubs),
            )
            .ok()?;
            is_planar_graph(&g).then_some(g)
        });
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// Tightens the literature bounds with every verified witness.
pub fn update_ledger(witnesses: &[Witness]) -> Result<BoundsLedger, LedgerError> {
    let mut l = BoundsLedger::literature();
    let mut sorted: Vec<&Witness> = witnesses.iter().collect();
    sorted.sort_by_key(|w| (w.order, w.artifact.clone()));
    let mut hypo_orders = BTreeSet::new();
    for w in sorted {
        let n = w.order as u64;
        let src = format!("order of verified {}", w.artifact);
        match w.kind {
            WitnessKind::PlanarHypohamiltonian => {
                hypo_orders.insert(w.order);
                for s in [Symbol::H, Symbol::Alpha0, Symbol::C13] {
                    l.tighten(s, Expr::lit(n, &src))?;
                }
                match w.girth {
                    Some(4) => {
                        for s in [Symbol::H4, Symbol::Alpha0Girth4] {
                            l.tighten(s, Expr::lit(n, &src))?;
                        }
                    }
                    Some(5) => {
                        l.tighten(Symbol::H5, Expr::lit(n, &src))?;
                    }
                    _ => {}
                }
                l.tighten(
                    Symbol::CubicMin,
                    Expr::lit(w.cubic_vertices as u64, format!("cubic vertices of verified {}", w.artifact)),
                )?;
                l.tighten(Symbol::C23, c23_chain(n, &src))?;
                l.tighten(Symbol::P13, p13_chain(n, &src))?;
                l.tighten(Symbol::P23, p23_chain(n, &src))?;
            }
            WitnessKind::PlanarAlmostHypohamiltonian => {
                l.tighten(Symbol::Alpha1, Expr::lit(n, &src))?;
                if w.girth == Some(4) {
                    l.tighten(Symbol::Alpha1Girth4, Expr::lit(n, &src))?;
                }
            }
        }
    }
    // Th adds 4 to the order and preserves planar hypohamiltonicity, so four
    // consecutive verified orders reaching the known threshold lower it.
    if let Some(current) = l.get(Symbol::N0).upper_value() {
        let current = current as usize;
        for &m in hypo_orders.iter().filter(|&&m| m < current) {
            let top = (m + 3).max(current - 1);
            if (m..=top).all(|k| hypo_orders.contains(&k)) {
                l.tighten(
                    Symbol::N0,
                    Expr::lit(m as u64, format!("verified planar hypohamiltonian orders {m}..={top}")),
                )?;
                break;
            }
        }
    }
    l.check()?;
    Ok(l)
}

pub fn reproduce(p: &dyn Provider, opts: &Options) -> ReproReport {
    let mut r = Runner {
        p,
        opts,
        rows: Vec::new(),
        witnesses: Vec::new(),
    };
    r.petersen();
    let (g7, g8) = r.g34();
    let emb: Src<PlanarEmbedding> = match &g7 {
        Ok(c) => match p.embedding("G7") {
            Some(Ok(e)) if is_isomorphic(e.graph(), &c.graph) => Ok(e),
            Some(Ok(_)) => Err(Skip {
                status: Status::Mismatch,
                reason: "transcribed embedding is not a drawing of G7".into(),
            }),
            Some(Err(e)) => Err(Skip {
                status: Status::Mismatch,
                reason: e,
            }),
            // 3-connected planar graphs have a unique embedding
            None => planar_embedding(&c.graph).ok_or_else(|| Skip {
                status: Status::Mismatch,
                reason: "G7 is not planar".into(),
            }),
        },
        Err(s) => Err(s.clone()),
    };
    r.g34_quick(&g7, &emb);
    let mut ledger = None;
    if opts.scope == Scope::Full {
        let base40 = r.manifest_rows();
        r.g34_full(&g7, &g8, &emb);
        let base41 = r.th_rows(&g7);
        r.ladder_rows(&base40, &base41);
        r.fig8_rows(&g7);
        r.combine_rows(&g7, &g8);
        ledger = Some(r.ledger_rows(&g7));
    }
    ReproReport {
        schema: SCHEMA,
        scope: opts.scope,
        rows: r.rows,
        witnesses: r.witnesses,
        ledger,
    }
}
