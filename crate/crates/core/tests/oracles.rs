//! Agreement of the exact engines with exhaustive reference implementations.

use std::collections::HashSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use hypoham_core::formats::{emit_graph6_string, parse_graph6};
use hypoham_core::grinberg::{exact_feasibility, face_partition, ExactOptions, GrinbergSignature};
use hypoham_core::hamiltonicity::{
    classify, hamiltonian_cycle, hamiltonian_path, validate, Budget, Decision,
};
use hypoham_core::named;
use hypoham_core::planarity::{
    crossing_number_at_most_one, is_planar_graph, planar_embedding, CrossingVerdict,
};
use hypoham_core::symmetry::{automorphism_group_order, canonical_form};
use hypoham_core::Graph;

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

/// Tries every vertex order.
fn brute_hamiltonian(g: &Graph, closed: bool) -> bool {
    let n = g.order();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        let ok = p.windows(2).all(|w| g.has_edge(w[0], w[1]))
            && (!closed || (n >= 3 && g.has_edge(p[n - 1], p[0])));
        if ok {
            return true;
        }
        if !next_permutation(&mut p) {
            return false;
        }
    }
}

fn brute_aut(g: &Graph) -> u64 {
    let n = g.order();
    let mut p: Vec<usize> = (0..n).collect();
    let edges = g.edges();
    let mut count = 0;
    loop {
        if edges.iter().all(|&(u, v)| g.has_edge(p[u], p[v])) {
            count += 1;
        }
        if !next_permutation(&mut p) {
            return count;
        }
    }
}

fn random_graph(rng: &mut StdRng, n: usize, density: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn shuffled(g: &Graph, rng: &mut StdRng) -> Graph {
    let mut perm: Vec<usize> = (0..g.order()).collect();
    perm.shuffle(rng);
    g.permute(&perm)
}

#[test]
fn search_agrees_with_brute_force() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..200 {
        let n = rng.gen_range(3..=9);
        let density = rng.gen_range(0.25..0.75);
        let g = random_graph(&mut rng, n, density);
        let c = hamiltonian_cycle(&g, &Budget::unlimited()).unwrap();
        assert_eq!(c.is_positive(), brute_hamiltonian(&g, true), "{}", emit_graph6_string(&g));
        if c.is_positive() {
            validate(&g, &c, &[]).unwrap();
        }
        let p = hamiltonian_path(&g, &Budget::unlimited()).unwrap();
        assert_eq!(p.is_positive(), brute_hamiltonian(&g, false), "{}", emit_graph6_string(&g));
        if p.is_positive() {
            validate(&g, &p, &[]).unwrap();
        }
    }
}

#[test]
fn petersen_matches_brute_force_at_ten() {
    let g = named::petersen();
    assert!(!brute_hamiltonian(&g, true));
    assert!(brute_hamiltonian(&g, false));
    let r = classify(&g, &Budget::default());
    assert_eq!(r.hamiltonian, Decision::No);
    assert_eq!(r.traceable, Decision::Yes);
    for v in 0..10 {
        assert!(brute_hamiltonian(&g.delete_vertex(v).unwrap(), true));
    }
    assert_eq!(r.hypohamiltonian, Decision::Yes);
}

#[test]
fn adding_an_edge_keeps_a_cycle() {
    let mut rng = StdRng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 50 {
        let n = rng.gen_range(5..=12);
        let g = random_graph(&mut rng, n, 0.4);
        if g.size() == n * (n - 1) / 2 {
            continue;
        }
        if !hamiltonian_cycle(&g, &Budget::unlimited()).unwrap().is_positive() {
            continue;
        }
        let missing: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        let &(u, v) = missing.choose(&mut rng).unwrap();
        let h = g.add_edge(u, v).unwrap();
        assert!(hamiltonian_cycle(&h, &Budget::unlimited()).unwrap().is_positive());
        checked += 1;
    }
}

#[test]
fn group_orders_match_brute_force() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..150 {
        let n = rng.gen_range(1..=8);
        let density = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, density);
        let fast: u64 = automorphism_group_order(&g).try_into().unwrap();
        assert_eq!(fast, brute_aut(&g), "{}", emit_graph6_string(&g));
    }
}

#[test]
fn group_order_counts_relabellings_fixing_the_form() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..40 {
        let n = rng.gen_range(2..=7);
        let g = random_graph(&mut rng, n, 0.5);
        let form = canonical_form(&g);
        let canon = parse_graph6(form.graph6.as_bytes()).unwrap();
        let mut p: Vec<usize> = (0..n).collect();
        let mut fixing = 0u64;
        loop {
            if emit_graph6_string(&canon.permute(&p)) == form.graph6 {
                fixing += 1;
            }
            if !next_permutation(&mut p) {
                break;
            }
        }
        assert_eq!(form.group_order, fixing.into());
    }
}

#[test]
fn relabelling_invariance() {
    let mut rng = StdRng::seed_from_u64(13);
    let fixed = [
        named::petersen(),
        named::dodecahedron(),
        named::wiener_araya(),
        named::prism(9),
        named::cube(),
    ];
    for i in 0..500 {
        let g = if i < 100 {
            fixed[i % fixed.len()].clone()
        } else {
            let n = rng.gen_range(1..=24);
            {
                let d = rng.gen_range(0.05..0.6);
                random_graph(&mut rng, n, d)
            }
        };
        let h = shuffled(&g, &mut rng);
        let (a, b) = (canonical_form(&g), canonical_form(&h));
        assert_eq!(a.graph6, b.graph6);
        assert_eq!(a.group_order, b.group_order);
    }
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let m = pairs.len();
    (0u64..1 << m).map(move |mask| {
        Graph::from_edges(n, (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i])).unwrap()
    })
}

#[test]
fn census_of_small_graphs() {
    // numbers of graphs and of planar graphs up to isomorphism
    let graphs = [1, 2, 4, 11, 34, 156];
    let planar = [1, 2, 4, 11, 33, 142];
    for n in 1..=6 {
        let mut forms = HashSet::new();
        let mut planar_forms = HashSet::new();
        for g in all_graphs(n) {
            let f = canonical_form(&g).graph6;
            if forms.insert(f.clone()) && is_planar_graph(&g) {
                planar_forms.insert(f);
            }
        }
        assert_eq!(forms.len(), graphs[n - 1], "graphs on {n} vertices");
        assert_eq!(planar_forms.len(), planar[n - 1], "planar graphs on {n} vertices");
    }
}

#[test]
fn embeddings_satisfy_euler() {
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..300 {
        let n = rng.gen_range(1..=14);
        let d = rng.gen_range(0.1..0.5);
        let g = random_graph(&mut rng, n, d);
        if let Some(e) = planar_embedding(&g) {
            let c = g.components().len() as i64;
            let isolated = (0..n).filter(|&v| g.degree(v) == 0).count() as i64;
            let f = e.faces().len() as i64;
            assert_eq!(n as i64 - g.size() as i64 + f + isolated, 2 * c);
            assert_eq!(e.face_profile().dart_total(), 2 * g.size());
            assert_eq!(crossing_number_at_most_one(&g), CrossingVerdict::Planar);
        } else {
            assert_ne!(crossing_number_at_most_one(&g), CrossingVerdict::Planar);
        }
    }
}

#[test]
fn graph6_round_trips() {
    let mut rng = StdRng::seed_from_u64(19);
    for _ in 0..1000 {
        let n = rng.gen_range(0..=80);
        let d = rng.gen_range(0.0..1.0);
        let g = random_graph(&mut rng, n, d);
        let s = emit_graph6_string(&g);
        let back = parse_graph6(s.as_bytes()).unwrap();
        assert_eq!(back.edges(), g.edges());
    }
}

#[test]
fn grinberg_never_contradicts_search() {
    let mut fixtures = vec![
        named::complete(4),
        named::cube(),
        named::dodecahedron(),
        named::prism(5),
        named::prism(8),
        named::complete_bipartite(2, 3),
        named::complete_bipartite(2, 5),
    ];
    let mut rng = StdRng::seed_from_u64(23);
    while fixtures.len() < 40 {
        let n = rng.gen_range(5..=11);
        let g = random_graph(&mut rng, n, 0.45);
        if g.is_connected() && is_planar_graph(&g) && g.size() + 2 <= n + 30 {
            fixtures.push(g);
        }
    }
    for g in &fixtures {
        let e = planar_embedding(g).unwrap();
        let verdict = exact_feasibility(&e, &ExactOptions::default()).unwrap();
        let cycle = hamiltonian_cycle(g, &Budget::unlimited()).unwrap();
        assert_eq!(verdict.is_infeasible(), cycle.is_exhausted(), "{}", emit_graph6_string(g));
        if cycle.is_positive() {
            let inside = face_partition(&e, &cycle.sequence).unwrap();
            assert_eq!(GrinbergSignature::of(&e).weighted_sum(&inside), 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_a_complete_invariant(seed in any::<u64>(), n in 1usize..10) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.5);
        let h = shuffled(&g, &mut rng);
        let canon = parse_graph6(canonical_form(&g).graph6.as_bytes()).unwrap();
        // the canonical graph is isomorphic to the input
        prop_assert_eq!(canonical_form(&canon).graph6, canonical_form(&h).graph6);
        prop_assert_eq!(canon.size(), g.size());
    }
}
