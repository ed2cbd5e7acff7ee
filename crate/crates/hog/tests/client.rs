use std::sync::Arc;
use std::thread;

use hypoham_core::formats::emit_graph6_string;
use hypoham_core::named;
use hypoham_hog::{
    manifest, parse_graph_payload, parse_search_payload, ClientConfig, DiskCache, FakeTransport,
    FixtureStore, HogClient, HogError, Response, Source,
};

const BASE: &str = "http://hog.test/api";

fn config(dir: &std::path::Path, fixtures: Option<FixtureStore>) -> ClientConfig {
    ClientConfig {
        base_url: BASE.into(),
        cache: DiskCache::new(dir.join("cache")),
        fixtures,
        offline: false,
        ..ClientConfig::default()
    }
}

fn petersen_json() -> String {
    format!(
        r#"{{"graphId": 660, "canonicalForm": "{}", "name": "Petersen"}}"#,
        emit_graph6_string(&named::petersen())
    )
}

#[test]
fn second_fetch_hits_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let fake = Arc::new(FakeTransport::new().route(format!("{BASE}/graphs/660"), Response::ok(petersen_json())));
    let client = HogClient::with_transport(config(dir.path(), None), fake.clone());
    let first = client.fetch_with_source(660).unwrap();
    assert_eq!(first.source, Source::Network);
    assert_eq!(fake.calls(), 1);
    let second = client.fetch_with_source(660).unwrap();
    assert_eq!(second.source, Source::Cache);
    assert_eq!(fake.calls(), 1);
    assert_eq!(first.graph, second.graph);
    assert_eq!(first.graph.edges(), named::petersen().edges());

    // a fresh client over the same directory needs no network either
    let offline = HogClient::with_transport(
        ClientConfig {
            offline: true,
            ..config(dir.path(), None)
        },
        Arc::new(FakeTransport::new()),
    );
    assert_eq!(offline.fetch(660).unwrap(), first.graph);
}

#[test]
fn error_kinds_are_distinct() {
    let dir = tempfile::tempdir().unwrap();
    let fake = Arc::new(
        FakeTransport::new()
            .failing(format!("{BASE}/graphs/1"), "connection refused")
            .route(format!("{BASE}/graphs/3"), Response::ok(r#"{"canonicalForm": "not graph6 at all!"}"#))
            .route(
                format!("{BASE}/graphs/4"),
                Response {
                    status: 503,
                    body: vec![],
                },
            ),
    );
    let client = HogClient::with_transport(config(dir.path(), None), fake);
    assert!(matches!(client.fetch(1), Err(HogError::Network { .. })));
    assert!(matches!(client.fetch(2), Err(HogError::UnknownId(2))));
    assert!(matches!(client.fetch(3), Err(HogError::Parse { .. })));
    assert!(matches!(client.fetch(4), Err(HogError::Status { status: 503, .. })));
    // nothing was cached for failures
    assert!(matches!(client.fetch(2), Err(HogError::UnknownId(2))));
}

#[test]
fn offline_mode_refuses_the_network() {
    let dir = tempfile::tempdir().unwrap();
    let fake = Arc::new(FakeTransport::new().route(format!("{BASE}/graphs/660"), Response::ok(petersen_json())));
    let client = HogClient::with_transport(
        ClientConfig {
            offline: true,
            ..config(dir.path(), None)
        },
        fake.clone(),
    );
    assert!(matches!(client.fetch(660), Err(HogError::Offline(_))));
    assert!(matches!(client.search("x"), Err(HogError::Offline(_))));
    assert_eq!(fake.calls(), 0);
}

#[test]
fn bundled_fixture_serves_wiener_araya() {
    let dir = tempfile::tempdir().unwrap();
    let client = HogClient::with_transport(
        ClientConfig {
            offline: true,
            ..config(dir.path(), Some(FixtureStore::bundled()))
        },
        Arc::new(FakeTransport::new()),
    );
    let f = client.fetch_with_source(1431).unwrap();
    assert_eq!(f.source, Source::Fixture);
    assert_eq!(f.graph.edges(), named::wiener_araya().edges());
    let expected = manifest::entry(1431).unwrap().expected_order.exact().unwrap();
    assert_eq!(f.graph.order(), expected);
    assert_eq!(client.fetch_with_source(1431).unwrap().source, Source::Cache);
}

#[test]
fn concurrent_fetches_fill_the_cache_once() {
    let dir = tempfile::tempdir().unwrap();
    let mut fake = FakeTransport::new();
    for id in 0..8u64 {
        let g = named::cycle(3 + id as usize);
        fake = fake.route(format!("{BASE}/graphs/{id}"), Response::ok(emit_graph6_string(&g)));
    }
    let fake = Arc::new(fake);
    let client = Arc::new(HogClient::with_transport(config(dir.path(), None), fake.clone()));
    let handles: Vec<_> = (0..32u64)
        .map(|i| {
            let client = client.clone();
            thread::spawn(move || client.fetch(i % 8).unwrap())
        })
        .collect();
    for (i, h) in handles.into_iter().enumerate() {
        assert_eq!(h.join().unwrap().order(), 3 + i % 8);
    }
    assert_eq!(fake.calls(), 8);
}

#[test]
fn tolerant_payloads() {
    let g6 = emit_graph6_string(&named::petersen());
    for body in [
        g6.clone(),
        format!("{g6}\n"),
        format!(r#"{{"graph6": "{g6}"}}"#),
        format!(r#"{{"data": {{"canonical_form": "{g6}"}}}}"#),
        format!(r#""{g6}""#),
    ] {
        let g = parse_graph_payload(body.as_bytes(), "test").unwrap();
        assert_eq!(g.edges(), named::petersen().edges(), "{body}");
    }
    assert!(matches!(
        parse_graph_payload(br#"{"name": "x"}"#, "test"),
        Err(HogError::Payload { .. })
    ));
    assert_eq!(parse_search_payload(b"[1, 2, 3]", "t").unwrap(), [1, 2, 3]);
    assert_eq!(
        parse_search_payload(br#"{"results": [{"graphId": 7}, {"id": 9}, {"x": 1}]}"#, "t").unwrap(),
        [7, 9]
    );
    assert!(parse_search_payload(b"{}", "t").is_err());
}

#[test]
fn resolve_named_verifies_search_hits() {
    let dir = tempfile::tempdir().unwrap();
    let client_fake = FakeTransport::new();
    let probe = HogClient::with_transport(config(dir.path(), None), Arc::new(FakeTransport::new()));
    let search = probe.search_url("planar hypohamiltonian graph");
    let fake = Arc::new(
        client_fake
            .route(search, Response::ok(r#"[{"graphId": 10}, {"graphId": 11}, {"graphId": 12}]"#))
            .route(format!("{BASE}/graphs/10"), Response::ok(emit_graph6_string(&named::cube())))
            .route(format!("{BASE}/graphs/11"), Response::ok(emit_graph6_string(&named::cycle(10))))
            .route(format!("{BASE}/graphs/12"), Response::ok(emit_graph6_string(&named::petersen()))),
    );
    let client = HogClient::with_transport(config(dir.path(), None), fake.clone());
    // order 10 admits both C10 and Petersen; only Petersen has cubic vertices
    let accept = |g: &hypoham_core::Graph| g.degree_census().cubic_count == 10;
    let hit = client
        .resolve_named("Stand_in", "planar hypohamiltonian graph", 10, &accept)
        .unwrap()
        .unwrap();
    assert_eq!(hit.graph.edges(), named::petersen().edges());
    let calls = fake.calls();
    let again = client
        .resolve_named("Stand_in", "planar hypohamiltonian graph", 10, &accept)
        .unwrap()
        .unwrap();
    assert_eq!(again.source, Source::Cache);
    assert_eq!(fake.calls(), calls);
    let none = client
        .resolve_named("Other", "planar hypohamiltonian graph", 99, &accept)
        .unwrap();
    assert!(none.is_none());
}

#[test]
fn cache_writes_are_whole_files() {
    let dir = tempfile::tempdir().unwrap();
    let cache = DiskCache::new(dir.path());
    let g = named::dodecahedron();
    let path = cache.put("hog-5", &g).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap().trim(), emit_graph6_string(&g));
    assert_eq!(cache.get("hog-5").unwrap().unwrap(), g);
    assert!(cache.get("hog-6").unwrap().is_none());
    assert!(matches!(cache.put("../evil", &g), Err(HogError::InvalidKey(_))));
    let leftovers = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(leftovers, 1);
}
