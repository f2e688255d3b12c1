use gaincurv_core::algebra::FieldSpec;
use gaincurv_core::graph::{families, triangles_and_squares, Graph};
use gaincurv_core::path_homology::{
    boundary, boundary_matrix, h1_integer, h1_via_cycle_quotient, homology, restricted_boundary,
    span_rank, QuotientMode,
};
use num_traits::Zero;
use proptest::prelude::*;

mod common;
use common::{random_connected_graph, random_graph};

const FIELDS: [FieldSpec; 2] = [FieldSpec::Rationals, FieldSpec::Prime(3)];

fn check_chain_complex(g: &Graph, f: FieldSpec) {
    let d1 = boundary_matrix(g, 1, f).unwrap();
    assert!(d1
        .mul(&restricted_boundary(g, 2, f).unwrap())
        .unwrap()
        .is_zero());
    let b2 = boundary(g, 2, f).unwrap();
    let r3 = restricted_boundary(g, 3, f).unwrap();
    assert!(b2.allowed.mul(&r3).unwrap().is_zero());
    assert!(b2.outside.mul(&r3).unwrap().is_zero());
}

fn check_rank_identities(g: &Graph, f: FieldSpec) {
    let h = homology(g, f).unwrap();
    let (n, m, c) = (g.vertex_count(), g.edge_count(), g.component_count());
    assert_eq!(h.ker_d1, m + (m + c - n));
    assert_eq!(
        h.im_d2,
        m + span_rank(g, &triangles_and_squares(g), f).unwrap()
    );
    assert_eq!(
        h.h1,
        h1_via_cycle_quotient(g, f, QuotientMode::Path).unwrap()
    );
    assert_eq!(h.h0, c);
}

#[test]
fn exhaustive_small_classes() {
    for g in families::connected_graphs_up_to(6) {
        for f in FIELDS {
            check_chain_complex(&g, f);
            check_rank_identities(&g, f);
        }
        let free = h1_integer(&g)
            .unwrap()
            .iter()
            .filter(|d| d.is_zero())
            .count();
        assert_eq!(free, homology(&g, FieldSpec::Rationals).unwrap().h1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn seven_vertex_graphs(g in random_connected_graph(7)) {
        for f in FIELDS {
            check_rank_identities(&g, f);
        }
        let free = h1_integer(&g).unwrap().iter().filter(|d| d.is_zero()).count();
        prop_assert_eq!(free, homology(&g, FieldSpec::Rationals).unwrap().h1);
    }

    #[test]
    fn boundaries_compose_to_zero(g in random_graph(6)) {
        for f in [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(5)] {
            check_chain_complex(&g, f);
        }
    }

    #[test]
    fn h0_counts_components(g in random_graph(8)) {
        prop_assert_eq!(homology(&g, FieldSpec::Rationals).unwrap().h0, g.component_count());
    }
}
