mod common;

use common::arb_tree;
use proptest::prelude::*;
use treealg::models::{real_gap, CanonicalPi, KernelAssignment, Model};
use treealg::trees::{parse_tree, Scaling, Tree};

fn pi(sc: &Scaling) -> CanonicalPi<'_> {
    CanonicalPi::new(sc, KernelAssignment::standard(sc).unwrap())
}

fn small() -> impl Strategy<Value = Tree> {
    arb_tree().prop_filter("at most three edges", |t| t.edge_count() <= 3)
}

fn point() -> impl Strategy<Value = f64> {
    (-4i32..=4).prop_map(|n| n as f64 / 4.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reexpansion_links_two_base_points(t in small(), x in point(), y in point()) {
        let sc = Scaling::generic();
        let pi = pi(&sc);
        let m = Model::new(&pi, &[0.0]).unwrap();
        let via = m.pi_x_sum(&[x], &m.big_gamma(&[x], &[y], &t).unwrap()).unwrap();
        let direct = m.pi_x(&[y], &t).unwrap();
        prop_assert!(via.max_gap(&direct) < 1e-8, "gap {}", via.max_gap(&direct));
    }

    #[test]
    fn recursive_and_coproduct_models_agree(t in small(), x in point()) {
        let sc = Scaling::generic();
        let pi = pi(&sc);
        let m = Model::new(&pi, &[0.25]).unwrap();
        let a = m.pi_x(&[x], &t).unwrap();
        let b = m.pi_x_recursive(&[x], &t).unwrap();
        prop_assert!(a.max_gap(&b) < 1e-8);
    }

    #[test]
    fn structure_group_composes(t in small(), x in point(), y in point(), z in point()) {
        let sc = Scaling::generic();
        let pi = pi(&sc);
        let m = Model::new(&pi, &[0.0]).unwrap();
        let step = m.big_gamma_sum(&[x], &[y], &m.big_gamma(&[y], &[z], &t).unwrap()).unwrap();
        let once = m.big_gamma(&[x], &[z], &t).unwrap();
        prop_assert!(real_gap(&step, &once) < 1e-8);
    }
}

#[test]
fn polynomials_are_recentred() {
    let sc = Scaling::generic();
    let pi = pi(&sc);
    let m = Model::new(&pi, &[1.0]).unwrap();
    let x2 = parse_tree("X^[2]", 1).unwrap();
    let p = m.pi_x(&[0.5], &x2).unwrap();
    for y in [-1.0, 0.0, 2.0] {
        assert!((p.eval(&[y]) - (y - 0.5) * (y - 0.5)).abs() < 1e-12);
    }
}

#[test]
fn points_of_the_wrong_dimension_are_rejected() {
    let sc = Scaling::generic();
    let pi = pi(&sc);
    assert!(Model::new(&pi, &[0.0, 1.0]).is_err());
}
