//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria 2-11 come from the full reproduction report. Criteria 1 and 12
//! add exhaustive oracles written here. Set `HYPOHAM_ONLINE=1` to let the
//! client reach House of Graphs; otherwise only bundled fixtures are used.
//!
//! The process fails on any wrong answer. A criterion whose only unmet rows
//! are `skipped(offline)` prints FAIL with the reason but does not fail the
//! process, because a missing input is not a wrong answer.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use hypoham_cli::repro::{reproduce, HogProvider, Options, ReproReport, Scope, Status};
use hypoham_core::constructions::{th, FourCycleSpec};
use hypoham_core::formats::{emit_graph6_string, parse_graph6};
use hypoham_core::hamiltonicity::{classify, hamiltonian_cycle, hamiltonian_path, validate, Budget, Decision};
use hypoham_core::named;
use hypoham_core::planarity::{planar_embedding, PlanarEmbedding};
use hypoham_core::symmetry::canonical_form;
use hypoham_core::Graph;
use hypoham_hog::{ClientConfig, DiskCache, FixtureStore, HogClient};

#[derive(PartialEq)]
enum Verdict {
    Pass,
    Blocked(String),
    Fail(String),
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Tries all n! vertex orders.
fn brute(g: &Graph, closed: bool) -> bool {
    let n = g.order();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        if p.windows(2).all(|w| g.has_edge(w[0], w[1])) && (!closed || (n >= 3 && g.has_edge(p[n - 1], p[0]))) {
            return true;
        }
        if !next_permutation(&mut p) {
            return false;
        }
    }
}

fn random_graph(rng: &mut StdRng, n: usize, density: f64) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let kept: Vec<_> = edges.filter(|_| rng.gen_bool(density)).collect();
    Graph::from_edges(n, kept).unwrap()
}

fn euler_holds(e: &PlanarEmbedding) -> bool {
    let g = e.graph();
    let n = g.order() as i64;
    let isolated = (0..g.order()).filter(|&v| g.degree(v) == 0).count() as i64;
    let c = g.components().len() as i64;
    n - g.size() as i64 + e.faces().len() as i64 + isolated == 2 * c
}

fn criterion_1() -> Verdict {
    let g = named::petersen();
    let r = classify(&g, &Budget::default());
    let oracle_hypo = !brute(&g, true) && (0..10).all(|v| brute(&g.delete_vertex(v).unwrap(), true));
    if !oracle_hypo {
        return Verdict::Fail("brute force disagrees with the classical result".into());
    }
    if r.hypohamiltonian != Decision::Yes {
        return Verdict::Fail(format!("classifier says {}", r.hypohamiltonian));
    }
    for c in &r.vertex_deleted {
        if validate(&g, c.cycle.as_ref().unwrap(), &[c.vertex]).is_err() {
            return Verdict::Fail(format!("certificate for vertex {} does not validate", c.vertex));
        }
    }
    Verdict::Pass
}

fn criterion_12() -> Verdict {
    let mut rng = StdRng::seed_from_u64(2024);
    for i in 0..1000 {
        let n = rng.gen_range(0..=64);
        let d = rng.gen_range(0.0..1.0);
        let g = random_graph(&mut rng, n, d);
        let back = parse_graph6(emit_graph6_string(&g).as_bytes()).unwrap();
        if back.edges() != g.edges() {
            return Verdict::Fail(format!("graph6 round trip {i}"));
        }
    }
    for i in 0..500 {
        let n = rng.gen_range(1..=20);
        let d = rng.gen_range(0.05..0.6);
        let g = random_graph(&mut rng, n, d);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let (a, b) = (canonical_form(&g), canonical_form(&g.permute(&perm)));
        if a.graph6 != b.graph6 || a.group_order != b.group_order {
            return Verdict::Fail(format!("relabelling changed the canonical form, sample {i}"));
        }
    }
    // every embedding this run produces, including constructions
    let mut planar: Vec<Graph> = vec![named::cube(), named::dodecahedron(), named::wiener_araya(), named::complete(4)];
    planar.push(th(&named::cube(), &FourCycleSpec::new([0, 1, 3, 2], false)).unwrap().graph);
    planar.push(th(&named::cube(), &FourCycleSpec::new([0, 1, 3, 2], true)).unwrap().graph);
    for _ in 0..300 {
        let n = rng.gen_range(1..=16);
        let d = rng.gen_range(0.1..0.5);
        planar.push(random_graph(&mut rng, n, d));
    }
    for g in &planar {
        if let Some(e) = planar_embedding(g) {
            if !euler_holds(&e) {
                return Verdict::Fail(format!("Euler fails on {}", emit_graph6_string(g)));
            }
        }
    }
    for i in 0..200 {
        let n = rng.gen_range(3..=9);
        let d = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, d);
        let budget = Budget::unlimited();
        let c = hamiltonian_cycle(&g, &budget).unwrap().is_positive();
        let p = hamiltonian_path(&g, &budget).unwrap().is_positive();
        if c != brute(&g, true) || p != brute(&g, false) {
            return Verdict::Fail(format!("search disagrees with brute force, sample {i}"));
        }
    }
    Verdict::Pass
}

fn from_report(r: &ReproReport, criterion: u8) -> Verdict {
    if r.criterion_passed(criterion) {
        return Verdict::Pass;
    }
    let unmet: Vec<_> = r
        .rows_for(criterion)
        .filter(|row| !(row.status == Status::Match || (!row.required && row.status == Status::SkippedBudget)))
        .collect();
    if unmet.is_empty() {
        return Verdict::Fail("no rows produced".into());
    }
    let total = r.rows_for(criterion).count();
    if unmet.iter().all(|row| row.status == Status::SkippedOffline) {
        let reasons: BTreeSet<&str> = unmet
            .iter()
            .map(|row| offline_reason(&row.computed))
            .collect();
        let reasons: Vec<&str> = reasons.into_iter().collect();
        Verdict::Blocked(format!(
            "fixture unavailable offline ({} of {total} rows blocked: {})",
            unmet.len(),
            reasons.join("; ")
        ))
    } else {
        let why: Vec<String> = unmet.iter().map(|row| format!("{} [{}]: {}", row.id, row.status, row.computed)).collect();
        Verdict::Fail(why.join("; "))
    }
}

fn offline_reason(computed: &str) -> &str {
    let tail = computed.rsplit("fixture unavailable offline: ").next().unwrap_or(computed);
    tail.trim_end_matches(')')
}

fn main() -> ExitCode {
    let cache = tempfile::tempdir().expect("temp dir");
    let online = std::env::var("HYPOHAM_ONLINE").is_ok_and(|v| v == "1");
    let client = HogClient::new(ClientConfig {
        cache: DiskCache::new(cache.path()),
        fixtures: Some(FixtureStore::bundled()),
        offline: !online,
        ..ClientConfig::default()
    })
    .expect("client");

    let started = Instant::now();
    let report = reproduce(
        &HogProvider { client: &client },
        &Options {
            scope: Scope::Full,
            best_effort: Duration::from_secs(60),
            ..Options::default()
        },
    );

    let mut verdicts = vec![(1u8, criterion_1())];
    verdicts.extend((2..=11).map(|c| (c, from_report(&report, c))));
    verdicts.push((12, criterion_12()));

    let mut wrong = report.has_mismatch();
    for (c, v) in &verdicts {
        match v {
            Verdict::Pass => println!("PASS criterion {c}"),
            Verdict::Blocked(why) => println!("FAIL criterion {c}: {why}"),
            Verdict::Fail(why) => {
                wrong = true;
                println!("FAIL criterion {c}: {why}");
            }
        }
    }
    let passed = verdicts.iter().filter(|(_, v)| *v == Verdict::Pass).count();
    println!(
        "acceptance: {passed}/{} passed, {} blocked on missing inputs, {:.1} s",
        verdicts.len(),
        verdicts.iter().filter(|(_, v)| matches!(v, Verdict::Blocked(_))).count(),
        started.elapsed().as_secs_f64()
    );
    if wrong {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
