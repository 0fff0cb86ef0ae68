use extlab_core::extendability::{
    classify_extendable_graphs, extendability_number, is_k_extendable, is_k_extendable_with,
    torus_orbit_representatives, ExtendOptions,
};
use extlab_core::generators::{
    bowtie, cartesian_product, complete, complete_bipartite, cycle, grid_product, path, petersen,
    Factor,
};
use extlab_core::graph::connectivity;
use extlab_core::Graph;
use proptest::prelude::*;

fn extendable(g: &Graph, k: usize) -> bool {
    let r = is_k_extendable(g, k).unwrap();
    assert!(r.complete);
    r.verdict
}

fn corpus() -> Vec<(String, Graph)> {
    let mut out = vec![("petersen".to_string(), petersen())];
    for n in 2..=8 {
        out.push((format!("K{n}"), complete(n).unwrap()));
    }
    for n in 4..=10 {
        out.push((format!("C{n}"), cycle(n).unwrap()));
    }
    for a in 1..=5 {
        out.push((format!("K{a},{a}"), complete_bipartite(a, a).unwrap()));
    }
    for (m, n) in [(4, 5), (4, 4), (6, 5), (3, 4)] {
        out.push((
            format!("C{m}xC{n}"),
            grid_product(Factor::Cycle(m), Factor::Cycle(n)).unwrap(),
        ));
        out.push((
            format!("P{m}xC{n}"),
            grid_product(Factor::Path(m), Factor::Cycle(n)).unwrap(),
        ));
    }
    for n in 3..=5 {
        out.push((format!("bowtie(6,{n})"), bowtie(6, n).unwrap()));
    }
    out
}

#[test]
fn monotone_in_k() {
    for (name, g) in corpus() {
        for k in 1..=3 {
            if extendable(&g, k) {
                assert!(
                    extendable(&g, k - 1),
                    "{name} is {k}- but not {}-extendable",
                    k - 1
                );
            }
        }
    }
}

#[test]
fn extendable_graphs_are_highly_connected() {
    for (name, g) in corpus() {
        if !g.is_connected() {
            continue;
        }
        let number = extendability_number(&g).unwrap();
        if number >= 0 {
            let kappa = connectivity(&g).unwrap() as i64;
            assert!(
                kappa > number,
                "{name}: connectivity {kappa}, extendability {number}"
            );
        }
    }
}

#[test]
fn product_with_a_connected_graph_gains_one() {
    let cases: Vec<(Graph, usize, Graph)> = vec![
        (path(2).unwrap(), 0, cycle(5).unwrap()),
        (cycle(4).unwrap(), 1, path(2).unwrap()),
        (cycle(6).unwrap(), 1, path(3).unwrap()),
        (complete(4).unwrap(), 1, path(2).unwrap()),
        (complete_bipartite(3, 3).unwrap(), 2, path(2).unwrap()),
        (petersen(), 1, path(2).unwrap()),
    ];
    for (g1, k, g2) in cases {
        assert!(extendable(&g1, k));
        assert!(g2.is_connected());
        let p = cartesian_product(&g1, &g2).unwrap();
        assert!(
            extendable(&p, k + 1),
            "order {} product is not {}-extendable",
            p.order(),
            k + 1
        );
    }
}

#[test]
fn product_of_extendable_graphs() {
    let k2 = path(2).unwrap();
    let c4 = cycle(4).unwrap();
    let k4 = complete(4).unwrap();
    let cases: Vec<(&Graph, usize, &Graph, usize)> = vec![
        (&k2, 0, &k2, 0),
        (&c4, 1, &k2, 0),
        (&k4, 1, &k2, 0),
        (&c4, 1, &c4, 1),
        (&k4, 1, &c4, 1),
    ];
    for (a, k, b, l) in cases {
        assert!(extendable(a, k) && extendable(b, l));
        let p = cartesian_product(a, b).unwrap();
        assert!(
            extendable(&p, k + l + 1),
            "order {} product is not {}-extendable",
            p.order(),
            k + l + 1
        );
    }
}

#[test]
fn small_extendable_graphs_are_bipartite_or_2k_connected() {
    for (order, k) in [(4, 1), (6, 2), (8, 2), (8, 3)] {
        for g in classify_extendable_graphs(order, k).unwrap() {
            let kappa = connectivity(&g).unwrap();
            assert!(
                g.is_bipartite().is_some() || kappa >= 2 * k,
                "order {order}, k {k}: {:?}",
                g.edges()
            );
        }
    }
}

#[test]
fn orbit_hint_matches_unreduced_run() {
    for (m, n, expected) in [(6, 5, true), (4, 5, false)] {
        let g = grid_product(Factor::Cycle(m), Factor::Cycle(n)).unwrap();
        let full = is_k_extendable(&g, 3).unwrap();
        let opts = ExtendOptions {
            orbit_representatives: Some(torus_orbit_representatives(&g, m, n).unwrap()),
            ..Default::default()
        };
        let reduced = is_k_extendable_with(&g, 3, &opts).unwrap();
        assert_eq!(full.verdict, expected);
        assert_eq!(reduced.verdict, full.verdict);
        assert!(reduced.matchings_checked <= full.matchings_checked);
        if !expected {
            assert!(reduced.witness_holds(&g));
        }
    }
}

fn arb_graph(max_order: usize) -> impl Strategy<Value = Graph> {
    (2..=max_order).prop_flat_map(|n| {
        prop::collection::vec(prop::bool::weighted(0.6), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_graphs_respect_monotonicity_and_witnesses(g in arb_graph(10)) {
        let mut previous = true;
        for k in 0..=3 {
            let r = is_k_extendable(&g, k).unwrap();
            prop_assert!(previous || !r.verdict);
            if r.witness.is_some() {
                prop_assert!(r.witness_holds(&g));
            }
            previous = r.verdict;
        }
    }
}
