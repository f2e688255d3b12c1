use gaincurv_core::algebra::FieldSpec;
use gaincurv_core::cycle_space::{
    det_of_circuit_set, det_of_circuit_set_with_tree, is_abelian_circuit_generator,
    is_combinatorial_generator, is_f_cycle_basis, is_f_cycle_basis_by_rank, is_weakly_fundamental,
};
use gaincurv_core::gain::{balance_masks, circuit_set_mask, masks_force_balance, DEFAULT_GAIN_CAP};
use gaincurv_core::graph::{enumerate_circuits, families, Graph, SpanningTree};
use gaincurv_core::group::{AbelianGroupSpec, GroupSpec};
use proptest::prelude::*;

mod common;
use common::{cyclomatic_sets, random_connected_graph};

const FIELDS: [FieldSpec; 4] = [
    FieldSpec::Rationals,
    FieldSpec::Prime(2),
    FieldSpec::Prime(3),
    FieldSpec::Prime(5),
];

fn small_classes() -> Vec<Graph> {
    families::connected_graphs_up_to(6)
        .into_iter()
        .filter(|g| g.cyclomatic_number() > 0)
        .collect()
}

#[test]
fn det_route_matches_rank_route() {
    for g in small_classes() {
        let circuits = enumerate_circuits(&g, 6).unwrap();
        for b in cyclomatic_sets(&circuits, g.cyclomatic_number(), 150) {
            for f in FIELDS {
                assert_eq!(
                    is_f_cycle_basis(&b, &g, f).unwrap(),
                    is_f_cycle_basis_by_rank(&b, &g, f).unwrap(),
                    "{:?} over {:?}",
                    b,
                    f
                );
            }
        }
    }
}

#[test]
fn prime_field_bases_are_exactly_prime_gain_generators() {
    for g in small_classes().into_iter().filter(|g| g.edge_count() <= 8) {
        let circuits = enumerate_circuits(&g, 6).unwrap();
        let full = if circuits.len() == 128 {
            u128::MAX
        } else {
            (1u128 << circuits.len()) - 1
        };
        for p in [2u64, 3] {
            let group = GroupSpec::Abelian(AbelianGroupSpec::cyclic(p));
            let masks = balance_masks(
                &g,
                &group,
                group.elements().unwrap(),
                &circuits,
                DEFAULT_GAIN_CAP,
            )
            .unwrap();
            for b in cyclomatic_sets(&circuits, g.cyclomatic_number(), 400) {
                let mask = circuit_set_mask(&b, &circuits).unwrap();
                assert_eq!(
                    is_f_cycle_basis(&b, &g, FieldSpec::Prime(p)).unwrap(),
                    masks_force_balance(&masks, mask, full),
                    "{b:?} over Z_{p}"
                );
            }
        }
    }
}

#[test]
fn weakly_fundamental_sets_generate_and_generators_are_abelian_generators() {
    let groups = [
        AbelianGroupSpec::cyclic(2),
        AbelianGroupSpec::cyclic(3),
        AbelianGroupSpec::integers(),
    ];
    let mut weakly = 0;
    let mut generators = 0;
    for g in small_classes() {
        let circuits = enumerate_circuits(&g, 6).unwrap();
        for b in cyclomatic_sets(&circuits, g.cyclomatic_number(), 60) {
            let comb = is_combinatorial_generator(&b, &g, 6).unwrap();
            if is_weakly_fundamental(&b, &g).unwrap() {
                weakly += 1;
                assert!(
                    comb,
                    "weakly fundamental but not a combinatorial generator: {b:?}"
                );
            }
            if comb {
                generators += 1;
                for a in &groups {
                    assert!(
                        is_abelian_circuit_generator(&b, &g, a).unwrap(),
                        "{b:?} fails for {a}"
                    );
                }
            }
        }
    }
    assert!(weakly > 100 && generators >= weakly);
}

#[test]
fn products_generate_iff_factors_do() {
    let product = AbelianGroupSpec::new(vec![2, 3, 0]);
    for g in small_classes() {
        let circuits = enumerate_circuits(&g, 6).unwrap();
        for b in cyclomatic_sets(&circuits, g.cyclomatic_number(), 40) {
            let whole = is_abelian_circuit_generator(&b, &g, &product).unwrap();
            let parts = product
                .factors()
                .iter()
                .all(|f| is_abelian_circuit_generator(&b, &g, f).unwrap());
            assert_eq!(whole, parts);
        }
    }
    // the same statement through brute-force masks on K4 for Z2 x Z3
    let k4 = families::complete(4);
    let circuits = enumerate_circuits(&k4, 4).unwrap();
    let full = (1u128 << circuits.len()) - 1;
    let masks_of = |q: u64| {
        let gs = GroupSpec::Abelian(AbelianGroupSpec::cyclic(q));
        balance_masks(
            &k4,
            &gs,
            gs.elements().unwrap(),
            &circuits,
            DEFAULT_GAIN_CAP,
        )
        .unwrap()
    };
    let (m2, m3) = (masks_of(2), masks_of(3));
    let prod = GroupSpec::Abelian(AbelianGroupSpec::new(vec![2, 3]));
    let m6 = balance_masks(
        &k4,
        &prod,
        prod.elements().unwrap(),
        &circuits,
        DEFAULT_GAIN_CAP,
    )
    .unwrap();
    assert_eq!(m6, gaincurv_core::gain::product_masks(&m2, &m3));
    for b in cyclomatic_sets(&circuits, 3, 1000) {
        let mask = circuit_set_mask(&b, &circuits).unwrap();
        assert_eq!(
            masks_force_balance(&m6, mask, full),
            masks_force_balance(&m2, mask, full) && masks_force_balance(&m3, mask, full)
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_does_not_depend_on_the_tree(g in random_connected_graph(7), seed in 0usize..1000) {
        prop_assume!(g.cyclomatic_number() > 0);
        let circuits = enumerate_circuits(&g, 7).unwrap();
        let sets = cyclomatic_sets(&circuits, g.cyclomatic_number(), 8);
        let b = &sets[seed % sets.len()];
        let bfs = det_of_circuit_set_with_tree(b, &g, &SpanningTree::bfs(&g).unwrap()).unwrap();
        let dfs = det_of_circuit_set_with_tree(b, &g, &SpanningTree::dfs(&g).unwrap()).unwrap();
        prop_assert_eq!(&bfs, &dfs);
        prop_assert_eq!(bfs, det_of_circuit_set(b, &g).unwrap());
    }
}
