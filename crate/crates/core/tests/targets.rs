use proptest::prelude::*;
use treealg::targets::{
    rota_baxter_defect, GaussPolyFn, LaurentSeries, OscillatoryFn, Poly, SymTensor,
};
use treealg::Q;

fn laurent() -> impl Strategy<Value = LaurentSeries> {
    prop::collection::vec(-3i32..=3, 9).prop_map(|c| {
        let pairs: Vec<(i32, f64)> = c
            .iter()
            .enumerate()
            .map(|(i, &v)| (i as i32 - 4, v as f64))
            .collect();
        LaurentSeries::from_pairs(&pairs, 10)
    })
}

fn osc() -> impl Strategy<Value = OscillatoryFn> {
    let term = (
        prop::collection::vec(-2i32..=2, 3),
        prop::option::weighted(0.7, (0u32..=2, 1u32..=2, 1i64..=2, 1u32..=2, 0i64..=1)),
    )
        .prop_map(|(q, ph)| {
            let q: Vec<(u32, f64)> = q
                .iter()
                .enumerate()
                .map(|(p, &v)| (p as u32, v as f64))
                .collect();
            let phase = match ph {
                None => Vec::new(),
                Some((a, b, c, d, e)) => vec![(vec![a, b], c), (vec![d, 0], e)],
            };
            OscillatoryFn::term(2, &q, &phase)
        });
    prop::collection::vec(term, 1..=3)
        .prop_map(|ts| ts.iter().fold(OscillatoryFn::zero(2), |acc, t| acc.add(t)))
}

fn gauss(dim: usize, min_width: i64) -> impl Strategy<Value = GaussPolyFn> {
    let term = (
        prop::collection::vec((prop::collection::vec(0u32..=3, dim), -2.0f64..2.0), 1..=4),
        min_width..=3,
    )
        .prop_map(move |(mons, w)| {
            let mut p = Poly::zero(dim);
            for (e, c) in mons {
                p.add_term(e, c);
            }
            GaussPolyFn::term(p, Q::new(w, 2))
        });
    prop::collection::vec(term, 1..=3)
        .prop_map(move |ts| ts.iter().fold(GaussPolyFn::zero(dim), |acc, t| acc.add(t)))
}

fn sym() -> impl Strategy<Value = SymTensor> {
    let term = (-2.0f64..2.0, prop::collection::vec(gauss(1, 0), 0..=2)).prop_map(|(c, fs)| {
        fs.into_iter().fold(SymTensor::constant(1, c), |acc, f| {
            acc.mul(&SymTensor::factor(f))
        })
    });
    prop::collection::vec(term, 1..=3)
        .prop_map(|ts| ts.iter().fold(SymTensor::zero(1), |acc, t| acc.add(t)))
}

fn alpha() -> impl Strategy<Value = Q> {
    (-8i64..=24).prop_map(|n| Q::new(n, 4) + Q::new(1, 10))
}

fn point() -> impl Strategy<Value = f64> {
    (-4i32..=4).prop_map(|n| n as f64 / 4.0)
}

proptest! {
    #[test]
    fn laurent_projections_are_rota_baxter(f in laurent(), g in laurent()) {
        prop_assert!(rota_baxter_defect(&|a: &LaurentSeries| a.pole_project(), &f, &g).is_zero());
        prop_assert!(rota_baxter_defect(&|a: &LaurentSeries| a.regular_part(), &f, &g).is_zero());
        prop_assert_eq!(f.pole_project().add(&f.regular_part()), f);
    }

    #[test]
    fn oscillatory_projection_is_rota_baxter_on_the_cone(f in osc(), g in osc()) {
        prop_assert!(rota_baxter_defect(&|a: &OscillatoryFn| a.project(), &f, &g).is_zero());
    }

    #[test]
    fn expectation_at_zero_is_rota_baxter(f in sym(), g in sym()) {
        let d = rota_baxter_defect(&|a: &SymTensor| a.project(), &f, &g);
        let y = [0.3];
        prop_assert!(d.eval(&y).abs() < 1e-8 * (1.0 + f.eval(&y).abs() * g.eval(&y).abs()));
        prop_assert!(d.expectation().abs() < 1e-8);
    }

    #[test]
    fn taylor_jets_form_a_rota_baxter_family(
        f in gauss(1, 0), g in gauss(1, 0), a in alpha(), b in alpha(), x in point()
    ) {
        let s = [1u32];
        let x = [x];
        let ta = f.taylor_jet(a, &x, &s);
        let tb = g.taylor_jet(b, &x, &s);
        let rhs = ta.mul(&g).add(&f.mul(&tb)).sub(&f.mul(&g)).taylor_jet(a + b, &x, &s);
        prop_assert!(ta.mul(&tb).max_gap(&rhs) < 1e-9);
    }

    #[test]
    fn jet_matches_the_function_at_its_base_point(f in gauss(2, 0), a in alpha(), x in point(), y in point()) {
        prop_assume!(a > Q::from_integer(0));
        let p = [x, y];
        let jet = f.taylor_jet(a, &p, &[2, 1]);
        prop_assert!((jet.eval(&p) - f.eval(&p)).abs() < 1e-9);
        prop_assert!(jet.is_polynomial());
    }

    #[test]
    fn convolution_matches_quadrature(f in gauss(1, 1), g in gauss(1, 1), y in point()) {
        let exact = f.convolve(&g).unwrap().eval(&[y]);
        let (lo, hi, n) = (-12.0f64, 12.0, 6000);
        let h = (hi - lo) / n as f64;
        let numeric: f64 = (0..=n)
            .map(|i| {
                let z = lo + i as f64 * h;
                let w = if i == 0 || i == n { 0.5 } else { 1.0 };
                w * f.eval(&[z]) * g.eval(&[y - z])
            })
            .sum::<f64>()
            * h;
        prop_assert!((exact - numeric).abs() < 1e-6 * (1.0 + numeric.abs()), "{} vs {}", exact, numeric);
    }

    #[test]
    fn json_round_trips(f in gauss(2, 0), l in laurent()) {
        prop_assert_eq!(GaussPolyFn::from_json(&f.to_json()).unwrap(), f);
        prop_assert_eq!(LaurentSeries::from_json(&l.to_json()).unwrap(), l);
    }
}

#[test]
fn cancelling_phases_break_the_oscillatory_identity() {
    let a = OscillatoryFn::term(1, &[(0, 1.0)], &[(vec![2], 1)]);
    let b = OscillatoryFn::term(1, &[(0, 1.0)], &[(vec![2], -1)]);
    assert!(!rota_baxter_defect(&|f: &OscillatoryFn| f.project(), &a, &b).is_zero());
}

#[test]
fn convolving_two_polynomials_diverges() {
    let p = GaussPolyFn::one(1);
    assert!(p.convolve(&p).is_err());
}

#[test]
fn laurent_inverse() {
    let f = LaurentSeries::from_pairs(&[(-1, 2.0), (0, 1.0), (2, -3.0)], 8);
    let g = f.inverse().unwrap();
    assert!(f.mul(&g).max_gap_upto(&LaurentSeries::one(8), 6) < 1e-12);
}
