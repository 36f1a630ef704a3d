mod common;

use common::{arb_tree, example};
use proptest::prelude::*;
use treealg::trees::{parse_tree, Edge, Forest, MultiIndex, Tree};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn product_is_commutative_associative_unital(a in arb_tree(), b in arb_tree(), c in arb_tree()) {
        let one = Tree::one(1);
        prop_assert_eq!(a.mul(&b).canonical_key(), b.mul(&a).canonical_key());
        prop_assert_eq!(a.mul(&b).mul(&c).canonical_key(), a.mul(&b.mul(&c)).canonical_key());
        prop_assert_eq!(a.mul(&one), a.clone());
    }
}

proptest! {
    #[test]
    fn degree_is_additive(a in arb_tree(), b in arb_tree()) {
        let sc = example();
        prop_assert_eq!(sc.deg(&a.mul(&b)), sc.deg(&a) + sc.deg(&b));
    }

    #[test]
    fn planting_adds_the_edge_degree(c in arb_tree(), p in 0u32..=2) {
        let sc = example();
        let e = Edge::new("t", MultiIndex::new(vec![p]));
        let planted = sc.plant(e.clone(), c.clone()).unwrap();
        prop_assert_eq!(sc.deg(&planted), sc.deg(&c) + sc.edge_degree(&e).unwrap());
        prop_assert_eq!(sc.planted_deg(&e, &c), sc.deg(&planted));
    }

    #[test]
    fn printing_then_parsing_is_the_identity(a in arb_tree()) {
        let text = a.to_string();
        prop_assert_eq!(parse_tree(&text, 1).unwrap(), a.clone());
        prop_assert_eq!(example().parse(&text).unwrap(), a);
    }

    #[test]
    fn forests_are_sorted_multisets(v in prop::collection::vec(arb_tree(), 0..5)) {
        let f = Forest::new(v.clone());
        let mut rev = v.clone();
        rev.reverse();
        prop_assert_eq!(&f, &Forest::new(rev));
        prop_assert!(f.trees().windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(f.trees().iter().all(|t| !t.is_one()));
        let (a, b) = v.split_at(v.len() / 2);
        prop_assert_eq!(Forest::new(a.to_vec()).mul(&Forest::new(b.to_vec())), f);
    }

    #[test]
    fn positive_trees_are_closed_under_products(a in arb_tree(), b in arb_tree()) {
        let sc = example();
        if sc.is_positive(&a) && sc.is_positive(&b) {
            prop_assert!(sc.is_positive(&a.mul(&b)));
        }
    }
}

#[test]
fn noise_above_a_non_trivial_tree_is_rejected() {
    let sc = example();
    let e = Edge::new("l", MultiIndex::new(vec![0]));
    assert!(sc.plant(e, Tree::x(1, 0)).is_err());
}

#[test]
fn forest_literals_round_trip() {
    let sc = example();
    let f = sc.parse_forest("I[l,0](1) . I[t,0](X)").unwrap();
    assert_eq!(f.len(), 2);
    assert_eq!(sc.parse_forest(&f.to_string()).unwrap(), f);
}
