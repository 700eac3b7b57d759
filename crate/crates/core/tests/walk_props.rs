use std::collections::BTreeSet;

use proptest::prelude::*;

use lollipop_core::engine::{lollipop_neighbors, run_thomason, LogLevel, WalkOptions};
use lollipop_core::graph::named::{cube, k33, k4, two_diamonds};
use lollipop_core::graph::{canonical_cycle, check_three_connected, CubicGraph, Edge, OrientedHamPath};
use lollipop_core::oracle::{build_lollipop_graph, count_cycles_containing, enumerate_ham_cycles, ComponentKind, OracleConfig};

/// Hamiltonian cubic graph: the cycle 0..m plus a chord matching, rejected if a chord
/// doubles a cycle edge.
fn hamiltonian_cubic() -> impl Strategy<Value = CubicGraph> {
    (2usize..=5)
        .prop_flat_map(|k| Just((0..2 * k).collect::<Vec<usize>>()).prop_shuffle())
        .prop_filter_map("chord repeats a cycle edge", |perm| {
            let m = perm.len();
            let mut edges: Vec<(usize, usize)> = (0..m).map(|i| (i, (i + 1) % m)).collect();
            for pair in perm.chunks(2) {
                let (a, b) = (pair[0], pair[1]);
                if (a + 1) % m == b || (b + 1) % m == a {
                    return None;
                }
                edges.push((a, b));
            }
            CubicGraph::from_edges(m, &edges).ok()
        })
}

/// Counts Hamiltonian cycles by trying every vertex order that fixes vertex 0, with no
/// pruning; each cycle is seen once per direction.
fn brute_force_cycles(g: &CubicGraph) -> BTreeSet<Vec<usize>> {
    fn rec(g: &CubicGraph, order: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut BTreeSet<Vec<usize>>) {
        let n = g.n_vertices();
        if order.len() == n {
            let ok = order.windows(2).all(|w| g.has_edge(w[0], w[1])) && g.has_edge(order[n - 1], order[0]);
            if ok {
                out.insert(canonical_cycle(order));
            }
            return;
        }
        for v in 1..n {
            if !used[v] {
                used[v] = true;
                order.push(v);
                rec(g, order, used, out);
                order.pop();
                used[v] = false;
            }
        }
    }
    let mut out = BTreeSet::new();
    let mut used = vec![false; g.n_vertices()];
    used[0] = true;
    rec(g, &mut vec![0], &mut used, &mut out);
    out
}

fn config() -> OracleConfig {
    OracleConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cycle_enumeration_matches_brute_force(g in hamiltonian_cubic()) {
        let fast: BTreeSet<Vec<usize>> = enumerate_ham_cycles(&g, &config())
            .unwrap()
            .cycles()
            .iter()
            .map(|c| canonical_cycle(c.as_slice()))
            .collect();
        prop_assert_eq!(fast, brute_force_cycles(&g));
    }

    #[test]
    fn every_edge_lies_on_an_even_number_of_cycles(g in hamiltonian_cubic()) {
        let cycles = enumerate_ham_cycles(&g, &config()).unwrap();
        for e in g.edges() {
            prop_assert_eq!(count_cycles_containing(&cycles, e) % 2, 0, "edge {}", e);
        }
    }

    #[test]
    fn lollipop_degree_is_two_minus_closable(g in hamiltonian_cubic()) {
        let view = build_lollipop_graph(&g, None, &config()).unwrap();
        for i in 0..view.n_nodes() {
            let p = view.node(i);
            let closable = g.has_edge(p[0], p[p.len() - 1]);
            prop_assert_eq!(view.degree(i), 2 - usize::from(closable));
            let path = OrientedHamPath::new(&g, p.to_vec()).unwrap();
            prop_assert_eq!(lollipop_neighbors(&g, &path).moves.len(), view.degree(i));
        }
        let cycles = enumerate_ham_cycles(&g, &config()).unwrap();
        prop_assert_eq!(view.degree_one_count(), cycles.len() * view.nodes_per_cycle());
        for c in view.components() {
            prop_assert_eq!(c.kind == ComponentKind::Path, c.ends.is_some());
        }
    }

    #[test]
    fn walk_follows_its_lollipop_component(g in hamiltonian_cubic(), pick in any::<prop::sample::Index>()) {
        let cycles = enumerate_ham_cycles(&g, &config()).unwrap();
        prop_assume!(!cycles.is_empty());
        let c = pick.get(cycles.cycles());
        let origin = c.as_slice()[0];
        let next = c.as_slice()[1];
        let edge = Edge::new(origin, next);
        let opts = WalkOptions { log: LogLevel::Full, ..WalkOptions::default() };
        let trace = run_thomason(&g, c, origin, edge, &opts).unwrap();
        prop_assert!(trace.completed);
        prop_assert!(trace.end_cycle != *c);
        prop_assert!(trace.end_cycle.contains_edge(edge));

        let view = build_lollipop_graph(&g, Some(origin), &config()).unwrap();
        let start = view.index_of(c.open_at(origin, next).unwrap().as_slice()).unwrap();
        let oracle: Vec<Vec<usize>> = view.trace_from(start).unwrap().into_iter().map(|i| view.node(i).to_vec()).collect();
        let engine: Vec<Vec<usize>> = trace.path_log.unwrap().into_iter().map(|p| p.into_vec()).collect();
        prop_assert_eq!(trace.steps as usize + 1, oracle.len());
        prop_assert_eq!(engine, oracle);
    }
}

#[test]
fn named_graphs() {
    assert_eq!(enumerate_ham_cycles(&k4(), &config()).unwrap().len(), 3);
    assert_eq!(enumerate_ham_cycles(&cube(), &config()).unwrap().len(), 6);
    assert_eq!(enumerate_ham_cycles(&k33(), &config()).unwrap().len(), 6);
    assert!(check_three_connected(&cube()));
    assert!(!check_three_connected(&two_diamonds()));
    for g in [k4(), cube(), k33(), two_diamonds()] {
        assert_eq!(brute_force_cycles(&g).len(), enumerate_ham_cycles(&g, &config()).unwrap().len());
    }
}

#[test]
fn oracle_refuses_large_graphs() {
    let small = OracleConfig { max_vertices: 6, ..config() };
    assert!(enumerate_ham_cycles(&cube(), &small).is_err());
}
