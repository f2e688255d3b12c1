use gaincurv_core::cover::{
    derived_graph, is_trivial_covering, lift_circuit, ordinary_derived_graph,
    predicted_lift_length, preserves_circuits, Covering,
};
use gaincurv_core::gain::{GainEnumerator, GainFunction, DEFAULT_GAIN_CAP};
use gaincurv_core::graph::{enumerate_circuits, families, triangles_and_squares, Graph};
use gaincurv_core::group::{AbelianGroupSpec, GroupElement, GroupSpec, Order};
use proptest::prelude::*;

mod common;
use common::random_connected_graph;

fn z(q: u64) -> GroupSpec {
    GroupSpec::Abelian(AbelianGroupSpec::cyclic(q))
}

fn random_gain(g: &Graph, group: &GroupSpec, picks: &[usize]) -> GainFunction {
    let elems = group.elements().unwrap();
    let values = (0..g.edge_count())
        .map(|e| elems[picks[e % picks.len()] % elems.len()].clone())
        .collect();
    GainFunction::new(g.clone(), group.clone(), values).unwrap()
}

fn check_covering(cov: &Covering) {
    // re-validating through the constructor exercises the full invariant check
    let again = Covering::new(
        cov.base().clone(),
        cov.total().clone(),
        cov.projection().to_vec(),
    )
    .unwrap();
    let sheets = again.sheets();
    for v in 0..cov.base().vertex_count() {
        assert_eq!(again.fiber(v).len(), sheets);
    }
}

#[test]
fn balance_is_preservation_for_binary_gains() {
    let mut checked = 0;
    for g in families::connected_graphs_up_to(6)
        .into_iter()
        .filter(|g| g.edge_count() <= 7 && g.cyclomatic_number() > 0)
    {
        let circuits = enumerate_circuits(&g, 6).unwrap();
        let ts = triangles_and_squares(&g);
        let group = z(2);
        for phi in
            GainEnumerator::all_edges(&g, &group, group.elements().unwrap(), DEFAULT_GAIN_CAP)
                .unwrap()
        {
            let cov = ordinary_derived_graph(&phi).unwrap();
            check_covering(&cov);
            for c in &circuits {
                let single = std::slice::from_ref(c);
                assert_eq!(
                    preserves_circuits(&cov, single).unwrap(),
                    phi.is_balanced_on(c).unwrap()
                );
            }
            let balanced_ts = ts.iter().all(|c| phi.is_balanced_on(c).unwrap());
            assert_eq!(preserves_circuits(&cov, &ts).unwrap(), balanced_ts);
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn unbalanced_extension_gives_nontrivial_preserving_cover() {
    let mut witnessed = 0;
    for g in families::connected_graphs_up_to(6)
        .into_iter()
        .filter(|g| g.edge_count() <= 8)
    {
        let circuits = enumerate_circuits(&g, 6).unwrap();
        let ts = triangles_and_squares(&g);
        for q in [2u64, 3] {
            let group = z(q);
            let tree = gaincurv_core::graph::SpanningTree::bfs(&g).unwrap();
            for phi in GainEnumerator::gauge_fixed(
                &g,
                &group,
                &tree,
                group.elements().unwrap(),
                DEFAULT_GAIN_CAP,
            )
            .unwrap()
            {
                let on_ts = ts.iter().all(|c| phi.is_balanced_on(c).unwrap());
                let everywhere = circuits.iter().all(|c| phi.is_balanced_on(c).unwrap());
                if on_ts && !everywhere {
                    let cov = ordinary_derived_graph(&phi).unwrap();
                    assert!(preserves_circuits(&cov, &ts).unwrap());
                    assert!(!is_trivial_covering(&cov));
                    witnessed += 1;
                }
                if everywhere {
                    assert!(is_trivial_covering(&ordinary_derived_graph(&phi).unwrap()));
                }
            }
        }
    }
    assert!(witnessed > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lifts_have_order_times_length(g in random_connected_graph(6), q in 2u64..5, picks in prop::collection::vec(0usize..8, 15)) {
        prop_assume!(g.cyclomatic_number() > 0);
        let phi = random_gain(&g, &z(q), &picks);
        let cov = ordinary_derived_graph(&phi).unwrap();
        check_covering(&cov);
        for c in enumerate_circuits(&g, 6).unwrap() {
            let report = lift_circuit(&cov, &c).unwrap();
            let expect = predicted_lift_length(&phi, &c).unwrap().unwrap();
            prop_assert!(report.lengths.iter().all(|&l| l == expect));
            prop_assert_eq!(report.lengths.iter().sum::<usize>(), c.len() * q as usize);
        }
    }

    #[test]
    fn permutation_covers_are_coverings(g in random_connected_graph(5), picks in prop::collection::vec(0usize..6, 10)) {
        let phi = random_gain(&g, &GroupSpec::Symmetric(3), &picks);
        let cov = derived_graph(&phi).unwrap();
        check_covering(&cov);
        prop_assert_eq!(cov.sheets(), 3);
    }

    #[test]
    fn circuit_order_ignores_rotation(g in random_connected_graph(6), picks in prop::collection::vec(0usize..6, 15)) {
        let phi = random_gain(&g, &GroupSpec::Symmetric(3), &picks);
        for c in enumerate_circuits(&g, 6).unwrap() {
            let base = phi.circuit_order(&c).unwrap();
            for k in 0..c.len() {
                prop_assert_eq!(phi.circuit_order(&c.rotated(k)).unwrap(), base);
                prop_assert_eq!(phi.circuit_order(&c.rotated(k).reversed()).unwrap(), base);
            }
        }
    }
}

#[test]
fn integer_gains_have_infinite_orders() {
    let g = families::cycle(5);
    let group = GroupSpec::Abelian(AbelianGroupSpec::integers());
    let mut values = vec![GroupElement::Abelian(vec![0]); 5];
    values[2] = GroupElement::Abelian(vec![1]);
    let phi = GainFunction::new(g.clone(), group, values).unwrap();
    let c = enumerate_circuits(&g, 5).unwrap().remove(0);
    assert_eq!(phi.circuit_order(&c).unwrap(), Order::Infinite);
    assert!(predicted_lift_length(&phi, &c).unwrap().is_none());
    assert!(ordinary_derived_graph(&phi).is_err());
}
