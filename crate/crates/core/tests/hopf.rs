mod common;

use common::{arb_tree, example};
use proptest::prelude::*;
use treealg::hopf::ck::{ck_antipode, ck_coassociative, ck_coproduct, CkForest, CkSum, CkTree};
use treealg::hopf::{
    antipode_plus, coaction_compose_check, delta_plus, left_counit, right_counit, AntipodeEngine,
    AntipodeVariant, CoproductMode, PlusEngine,
};
use treealg::trees::{parse_tree, sum_mul, Tree, TreeSum};
use treealg::Q;

fn small_tree() -> impl Strategy<Value = Tree> {
    arb_tree().prop_filter("at most five edges", |t| t.edge_count() <= 5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hat_has_a_right_counit(t in small_tree()) {
        let sc = example();
        let d = delta_plus(&sc, &t, CoproductMode::Hat).unwrap();
        prop_assert_eq!(right_counit(&d), TreeSum::single(t));
    }

    #[test]
    fn hat_is_a_comodule(t in small_tree()) {
        prop_assert!(coaction_compose_check(&example(), &t).unwrap());
    }

    #[test]
    fn bar_is_counital_with_an_antipode(t in small_tree()) {
        let sc = example();
        prop_assume!(sc.is_positive(&t));
        let anti = AntipodeEngine::new(&sc);
        let bar = anti.plus().bar(&t).unwrap();
        let id = TreeSum::single(t.clone());
        prop_assert_eq!(left_counit(&bar), id.clone());
        prop_assert_eq!(right_counit(&bar), id);
        let mut lhs = TreeSum::zero();
        for ((a, b), c) in bar.iter() {
            let s = anti.eval(a, AntipodeVariant::Bar);
            lhs.add_scaled(&sum_mul(&s, &TreeSum::single(b.clone())), c);
        }
        let unit = if t.is_one() { TreeSum::single(t.clone()) } else { TreeSum::zero() };
        prop_assert_eq!(lhs, unit);
    }

    #[test]
    fn antipode_is_multiplicative(a in small_tree(), b in small_tree()) {
        let sc = example();
        prop_assume!(sc.is_positive(&a) && sc.is_positive(&b));
        prop_assume!(a.edge_count() + b.edge_count() <= 5);
        let anti = AntipodeEngine::new(&sc);
        let ab = anti.eval(&a.mul(&b), AntipodeVariant::Bar);
        let split = sum_mul(
            &anti.eval(&a, AntipodeVariant::Bar),
            &anti.eval(&b, AntipodeVariant::Bar),
        );
        prop_assert_eq!(&*ab, &split);
    }

    #[test]
    fn engines_agree_with_one_shot_calls(t in small_tree()) {
        let sc = example();
        let eng = PlusEngine::new(&sc);
        prop_assert_eq!(&*eng.hat(&t), &delta_plus(&sc, &t, CoproductMode::Hat).unwrap());
        let truncated = delta_plus(&sc, &t, CoproductMode::FullTruncated(Q::from_integer(3))).unwrap();
        prop_assert_eq!(right_counit(&truncated), TreeSum::single(t));
    }
}

#[test]
fn truncated_coproduct_grows_with_the_cutoff() {
    let sc = example();
    let t = parse_tree("I[t,0](X)", 1).unwrap();
    let sizes: Vec<usize> = [0, 1, 2, 4]
        .iter()
        .map(|&c| {
            delta_plus(&sc, &t, CoproductMode::FullTruncated(Q::from_integer(c)))
                .unwrap()
                .len()
        })
        .collect();
    assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "{sizes:?}");
    assert!(delta_plus(&sc, &t, CoproductMode::FullTruncated(Q::from_integer(-1))).is_err());
}

#[test]
fn planted_tree_coproduct_has_three_terms() {
    let sc = example();
    let t = parse_tree("I[t,0](1)", 1).unwrap();
    assert_eq!(delta_plus(&sc, &t, CoproductMode::Hat).unwrap().len(), 3);
}

#[test]
fn twisted_antipode_needs_a_positive_tree() {
    let sc = example();
    let t = parse_tree("I[l,0](1)", 1).unwrap();
    assert!(antipode_plus(&sc, &t, AntipodeVariant::Twisted).is_err());
}

#[test]
fn connes_kreimer_axioms_up_to_five_vertices() {
    for n in 1..=5 {
        for t in CkTree::all_with_vertices(n) {
            let f = CkForest::single(t);
            assert!(ck_coassociative(&f));
            let mut acc = CkSum::zero();
            for ((a, b), c) in ck_coproduct(&f).iter() {
                for (sa, ca) in ck_antipode(a).iter() {
                    acc.add_term(sa.mul(b), c * ca);
                }
            }
            assert!(acc.is_zero(), "antipode identity on {n} vertices");
        }
    }
}
