use proptest::prelude::*;

use lollipop_core::family::{
    build, component_of, search_gadget_wirings, GadgetWiring, PortMap, WiringSnapshot, SNAPSHOT_JSON,
};
use lollipop_core::graph::{check_planarity, check_three_connected};
use lollipop_core::oracle::{count_cycles_containing, enumerate_ham_cycles, OracleConfig};

fn oracle() -> OracleConfig {
    OracleConfig {
        max_vertices: usize::MAX,
        ..OracleConfig::default()
    }
}

#[test]
fn shape_of_g_n() {
    let w = GadgetWiring::canonical();
    for n in 1..=12 {
        let g = build(n, &w).unwrap();
        assert_eq!(g.graph.n_vertices(), 2 * n + 6, "n={n}");
        assert_eq!(g.graph.n_edges(), 3 * n + 9, "n={n}");
        assert!(check_three_connected(&g.graph), "n={n}");
        let p = check_planarity(&g.graph).unwrap();
        assert!(p.planar, "n={n}");
        assert_eq!(p.faces, n + 5, "n={n}");
        assert_eq!(g.gadget_vertices.len(), n);
    }
}

#[test]
fn three_cycles_and_the_distinguished_pair() {
    let w = GadgetWiring::canonical();
    for n in 1..=10 {
        let g = build(n, &w).unwrap();
        let cycles = enumerate_ham_cycles(&g.graph, &oracle()).unwrap();
        assert_eq!(cycles.len(), 3, "n={n}");
        assert_eq!(count_cycles_containing(&cycles, g.green_edge), 2);
        assert!(g.c0.contains_edge(g.green_edge) && g.c0.contains_edge(g.red_edge));
        assert!(g.c1.contains_edge(g.green_edge) && !g.c1.contains_edge(g.red_edge));
        assert!(g.green_edge.contains(g.lambda) && g.red_edge.contains(g.lambda));
    }
}

#[test]
fn each_cut_is_crossed_by_exactly_its_three_edges() {
    let w = GadgetWiring::canonical();
    for n in 1..=8 {
        let g = build(n, &w).unwrap();
        assert_eq!(g.cut_edges().len(), n + 1);
        for (j, cut) in g.cut_edges().iter().enumerate() {
            let mut crossing: Vec<_> = g
                .graph
                .edges()
                .into_iter()
                .filter(|e| {
                    let (u, v) = e.endpoints();
                    let (cu, cv) = (component_of(n, u), component_of(n, v));
                    cu.min(cv) <= j && j < cu.max(cv)
                })
                .collect();
            let mut listed = cut.to_vec();
            crossing.sort();
            listed.sort();
            assert_eq!(crossing, listed, "n={n} cut {j}");
        }
    }
}

#[test]
fn snapshot_is_reproduced_by_the_search() {
    let outcome = search_gadget_wirings(8).unwrap();
    let fresh = WiringSnapshot::from_outcome(&outcome);
    assert_eq!(&fresh, WiringSnapshot::embedded());
    assert_eq!(fresh.to_json(), SNAPSHOT_JSON);
    assert_eq!(fresh.canonical().wiring, GadgetWiring::canonical());
    // every port map is a survivor, equivalent to one, or rejected
    let mut covered: Vec<PortMap> = fresh.rejected.iter().map(|r| r.ports).collect();
    for e in &fresh.entries {
        covered.extend(e.equivalent.iter().copied());
    }
    for p in PortMap::all() {
        assert!(covered.contains(&p), "{p:?} not accounted for");
    }
}

#[test]
fn snapshot_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wiring.json");
    std::fs::write(&path, SNAPSHOT_JSON).unwrap();
    assert_eq!(&WiringSnapshot::load(&path).unwrap(), WiringSnapshot::embedded());
    assert!(WiringSnapshot::load(&dir.path().join("missing.json")).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn component_of_partitions_the_vertices(n in 1usize..40) {
        let mut sizes = vec![0usize; n + 2];
        for v in 0..2 * n + 6 {
            sizes[component_of(n, v)] += 1;
        }
        prop_assert_eq!(sizes[0], 3);
        prop_assert_eq!(sizes[n + 1], 3);
        prop_assert!(sizes[1..=n].iter().all(|&s| s == 2));
    }

    #[test]
    fn larger_members_stay_cubic_planar_and_three_connected(n in 13usize..32) {
        let g = build(n, &GadgetWiring::canonical()).unwrap();
        prop_assert!(check_three_connected(&g.graph));
        prop_assert!(check_planarity(&g.graph).unwrap().planar);
        for v in 0..g.graph.n_vertices() {
            prop_assert_eq!(g.graph.neighbors(v).len(), 3);
        }
    }
}
