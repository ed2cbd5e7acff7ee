use hypoham_cli::repro::{reproduce, Accept, Options, Provider, Scope, Status, Unavailable};
use hypoham_core::named;
use hypoham_core::planarity::PlanarEmbedding;
use hypoham_core::Graph;

/// Serves Wiener-Araya for every request, ignoring the acceptance filter.
struct Impostor;

impl Provider for Impostor {
    fn hog(&self, _: u64) -> Result<Graph, Unavailable> {
        Ok(named::wiener_araya())
    }

    fn named(&self, _: &str, _: usize, _: &str, _: Accept) -> Result<Graph, Unavailable> {
        Ok(named::wiener_araya())
    }

    fn embedding(&self, _: &str) -> Option<Result<PlanarEmbedding, String>> {
        None
    }
}

/// Answers, but never with a graph.
struct Broken;

impl Provider for Broken {
    fn hog(&self, id: u64) -> Result<Graph, Unavailable> {
        Err(Unavailable::Failed(format!("graph {id} has a corrupt payload")))
    }

    fn named(&self, name: &str, _: usize, _: &str, _: Accept) -> Result<Graph, Unavailable> {
        Err(Unavailable::Failed(format!("no verified {name}")))
    }

    fn embedding(&self, _: &str) -> Option<Result<PlanarEmbedding, String>> {
        None
    }
}

fn quick() -> Options {
    Options {
        scope: Scope::Quick,
        ..Options::default()
    }
}

#[test]
fn wrong_graphs_are_mismatches() {
    let r = reproduce(&Impostor, &quick());
    assert!(r.has_mismatch());
    let order = r.row("G7.order").unwrap();
    assert_eq!(order.status, Status::Mismatch);
    assert_eq!(order.computed, "42");
    // WA is planar, so that row matches regardless
    assert_eq!(r.row("G7.planar").unwrap().status, Status::Match);
    assert!(!r.criterion_passed(4));
    assert!(r.criterion_passed(1));
}

#[test]
fn failed_sources_are_mismatches_not_skips() {
    let r = reproduce(
        &Broken,
        &Options {
            scope: Scope::Full,
            ..Options::default()
        },
    );
    assert!(r.rows.iter().all(|row| row.status != Status::SkippedOffline), "{:#?}", r.rows);
    assert_eq!(r.row("hog:1431.order").unwrap().status, Status::Mismatch);
    assert_eq!(r.row("G7.order").unwrap().status, Status::Mismatch);
}

#[test]
fn every_criterion_has_rows_in_full_scope() {
    let r = reproduce(
        &Broken,
        &Options {
            scope: Scope::Full,
            ..Options::default()
        },
    );
    for c in 1..=11 {
        assert!(r.rows_for(c).next().is_some(), "criterion {c}");
    }
    let ids: std::collections::HashSet<&str> = r.rows.iter().map(|row| row.id.as_str()).collect();
    assert_eq!(ids.len(), r.rows.len(), "row ids are unique");
}
