use proptest::prelude::*;
use treealg::birkhoff::{
    ck_character, ck_factorisation, classical_birkhoff, CkHopf, ConnectedHopf, RsBogoliubov,
};
use treealg::hopf::ck::CkTree;
use treealg::models::{CanonicalPi, KernelAssignment};
use treealg::targets::LaurentSeries;
use treealg::trees::{parse_tree, Scaling};

fn vertex_factor() -> impl Strategy<Value = Vec<(i32, f64)>> {
    prop::collection::vec(-2i32..=2, 4).prop_map(|c| {
        c.iter()
            .enumerate()
            .map(|(i, &v)| (i as i32 - 2, v as f64))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn birkhoff_factorisation_of_random_characters(a in vertex_factor(), b in vertex_factor()) {
        let f = move |t: &CkTree| {
            let base = LaurentSeries::from_pairs(&a, 8);
            let step = LaurentSeries::from_pairs(&b, 8);
            let mut acc = base;
            for _ in 1..t.vertices() {
                acc = acc.mul(&step);
            }
            acc
        };
        let one = LaurentSeries::one(8);
        let phi = ck_character(&f, &one);
        let res = classical_birkhoff(&CkHopf, &phi, &|x: &LaurentSeries| x.pole_project(), 4).unwrap();
        for k in CkHopf.basis(4) {
            prop_assert!(ck_factorisation(&res, &k).unwrap().max_gap_upto(&phi(&k), 8) < 1e-6);
            if !k.is_unit() {
                prop_assert!(res.counterterm[&k].is_pole());
                prop_assert!(res.renormalised[&k].is_regular());
            }
        }
    }
}

#[test]
fn rs_recursion_on_a_monomial() {
    let sc = Scaling::generic();
    let pi = CanonicalPi::new(&sc, KernelAssignment::standard(&sc).unwrap());
    let rs = RsBogoliubov::new(&pi, &[0.0], &[1.0]).unwrap();
    let t = parse_tree("X^[2]", 1).unwrap();
    assert!((rs.minus_at_xbar(&t).unwrap() - 1.0).abs() < 1e-12);
    assert!((rs.plus(&t).unwrap().eval(&[0.5]) - 0.25).abs() < 1e-12);
    let explicit = rs.explicit_plus(&t).unwrap();
    assert!(explicit.max_gap(&rs.plus(&t).unwrap()) < 1e-12);
}

#[test]
fn rs_rejects_mismatched_points() {
    let sc = Scaling::generic();
    let pi = CanonicalPi::new(&sc, KernelAssignment::standard(&sc).unwrap());
    assert!(RsBogoliubov::new(&pi, &[0.0, 1.0], &[1.0]).is_err());
}
