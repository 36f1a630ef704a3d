use treealg::linear::LinComb;
use treealg::negative::{
    bar_coproduct, cointeraction_check, forests_upto, negative_trees, ExtractionContraction,
    NegativeAntipodes, PositiveSide,
};
use treealg::trees::{enumerate_trees, Forest, Pool, Scaling};

#[test]
fn bar_coproduct_is_coassociative_on_small_forests() {
    let sc = Scaling::generic();
    let neg = ExtractionContraction::new(&sc);
    let negs = negative_trees(&sc, &Pool::new(3, 0, 1));
    assert!(!negs.is_empty());
    for f in forests_upto(&negs, 3) {
        let mut lhs = LinComb::<(Forest, Forest, Forest)>::zero();
        let mut rhs = LinComb::<(Forest, Forest, Forest)>::zero();
        for ((a, b), k) in bar_coproduct(&neg, &f).unwrap().iter() {
            for ((a1, a2), k2) in bar_coproduct(&neg, a).unwrap().iter() {
                lhs.add_term((a1.clone(), a2.clone(), b.clone()), k * k2);
            }
            for ((b1, b2), k2) in bar_coproduct(&neg, b).unwrap().iter() {
                rhs.add_term((a.clone(), b1.clone(), b2.clone()), k * k2);
            }
        }
        assert_eq!(lhs, rhs, "on {f}");
    }
}

#[test]
fn cointeraction_with_cuts_on_plain_trees() {
    let sc = Scaling::generic();
    let neg = ExtractionContraction::new(&sc);
    for t in enumerate_trees(&sc, &Pool::plain(4)) {
        assert!(cointeraction_check(&neg, PositiveSide::Cuts, &t), "on {t}");
    }
}

#[test]
fn twisted_negative_antipode_exists_on_small_forests() {
    let sc = Scaling::generic();
    let neg = ExtractionContraction::new(&sc);
    let anti = NegativeAntipodes::new(&neg);
    for f in forests_upto(&negative_trees(&sc, &Pool::new(3, 0, 1)), 3) {
        assert!(anti.twisted(&f).is_ok(), "on {f}");
    }
}
