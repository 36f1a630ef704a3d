use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{guard, sym_size, CriterionReport, Tally};
use crate::birkhoff::{ck_character, ck_factorisation, classical_birkhoff, CkHopf, ConnectedHopf};
use crate::hopf::ck::{ck_antipode, CkForest, CkTree};
use crate::hopf::{
    coaction_sides, left_counit, right_counit, AntipodeEngine, AntipodeVariant, PlusEngine,
};
use crate::linear::{q_to_f64, LinComb, Q};
use crate::multiindex::indices_up_to;
use crate::targets::{
    rota_baxter_defect, GaussPolyFn, LaurentSeries, OscillatoryFn, Poly, SymTensor,
};
use crate::trees::{
    enumerate_trees, sum_mul, Pool, Scaling, TensorSum, Tree, TreeSum, TripleSum, TypeKind,
};

/// Trees with at most 4 edges and unit node and derivative budgets, plain
/// trees with at most 5 edges, and plain trees with 6 edges built from the
/// first kernel and the first noise type.
pub fn default_pool_trees(sc: &Scaling) -> Vec<Tree> {
    let kernel = sc.labels_of(TypeKind::Kernel).into_iter().next();
    let noise = sc.labels_of(TypeKind::Noise).into_iter().next();
    let two_types = |t: &Tree| uses_only(t, &[kernel.as_deref(), noise.as_deref()]);
    let mut out = enumerate_trees(sc, &Pool::new(4, 1, 1));
    out.extend(enumerate_trees(sc, &Pool::plain(5)));
    out.extend(
        enumerate_trees(sc, &Pool::plain(6))
            .into_iter()
            .filter(|t| t.edge_count() == 6 && two_types(t)),
    );
    out.sort_by(|a, b| a.edge_count().cmp(&b.edge_count()).then_with(|| a.cmp(b)));
    out.dedup();
    out
}

fn uses_only(t: &Tree, labels: &[Option<&str>]) -> bool {
    t.branches()
        .iter()
        .all(|(e, c)| labels.contains(&Some(&*e.label)) && uses_only(c, labels))
}

fn bar_coassociativity(eng: &PlusEngine<'_>, t: &Tree) -> crate::error::Result<bool> {
    let d = eng.bar(t)?;
    let mut lhs = TripleSum::zero();
    let mut rhs = TripleSum::zero();
    for ((a, b), c) in d.iter() {
        for ((a1, a2), c2) in eng.bar(a)?.iter() {
            lhs.add_term((a1.clone(), a2.clone(), b.clone()), c * c2);
        }
        for ((b1, b2), c2) in eng.bar(b)?.iter() {
            rhs.add_term((a.clone(), b1.clone(), b2.clone()), c * c2);
        }
    }
    Ok(lhs == rhs)
}

fn antipode_sides(anti: &AntipodeEngine<'_>, d: &TensorSum) -> (TreeSum, TreeSum) {
    let mut left = TreeSum::zero();
    let mut right = TreeSum::zero();
    for ((a, b), c) in d.iter() {
        left.add_scaled(
            &sum_mul(
                &anti.eval(a, AntipodeVariant::Bar),
                &TreeSum::single(b.clone()),
            ),
            c,
        );
        right.add_scaled(
            &sum_mul(
                &TreeSum::single(a.clone()),
                &anti.eval(b, AntipodeVariant::Bar),
            ),
            c,
        );
    }
    (left, right)
}

/// Counit, coassociativity of `Δ̄⁺`, the comodule identity for `Δ̂⁺` and the
/// antipode identity for `𝒜̄₊`, exactly.
pub fn criterion_1() -> CriterionReport {
    let mut t = Tally::new(1, "Hopf and comodule axioms on the default pool");
    let sc = Scaling::example();
    let trees = default_pool_trees(&sc);
    let one = Tree::one(sc.d_plus_1());
    let mut positive = 0;
    for chunk in trees.chunks(400) {
        let anti = AntipodeEngine::new(&sc);
        let eng = anti.plus();
        for tr in chunk {
            let hat = eng.hat(tr);
            t.exact(right_counit(&hat) == TreeSum::single(tr.clone()), || {
                format!("right counit of Δ̂⁺ on {tr}")
            });
            if let Some((l, r)) = guard(
                &mut t,
                || format!("comodule identity on {tr}"),
                || coaction_sides(eng, tr),
            ) {
                t.exact(l == r, || format!("comodule identity on {tr}"));
            }
            if !sc.is_positive(tr) {
                continue;
            }
            positive += 1;
            let Some(bar) = guard(&mut t, || format!("Δ̄⁺ on {tr}"), || eng.bar(tr)) else {
                continue;
            };
            let id = TreeSum::single(tr.clone());
            t.exact(right_counit(&bar) == id && left_counit(&bar) == id, || {
                format!("counit of Δ̄⁺ on {tr}")
            });
            if let Some(ok) = guard(
                &mut t,
                || format!("coassociativity on {tr}"),
                || bar_coassociativity(eng, tr),
            ) {
                t.exact(ok, || format!("coassociativity of Δ̄⁺ on {tr}"));
            }
            let unit = if tr.is_one() {
                TreeSum::single(one.clone())
            } else {
                TreeSum::zero()
            };
            let (l, r) = antipode_sides(&anti, &bar);
            t.exact(l == unit && r == unit, || {
                format!("antipode identity on {tr}")
            });
        }
    }
    t.note(format!(
        "{} trees ({} positive), scaling s=(1), |t|=2, |u|=3/2, |l|=-3/2",
        trees.len(),
        positive
    ));
    if trees.len() < 500 {
        t.exact(false, || format!("pool has only {} trees", trees.len()));
    }
    t.finish()
}

fn random_laurent(rng: &mut ChaCha8Rng) -> LaurentSeries {
    let pairs: Vec<(i32, f64)> = (-4..=4)
        .map(|n| (n, rng.gen_range(-3..=3) as f64))
        .collect();
    LaurentSeries::from_pairs(&pairs, 10)
}

/// Frequencies `k₁, k₂`; phases from the cone of non-negative coefficients so
/// that nonzero phases never cancel.
fn random_osc(rng: &mut ChaCha8Rng) -> OscillatoryFn {
    let mut f = OscillatoryFn::zero(2);
    for _ in 0..rng.gen_range(1..=3) {
        let q: Vec<(u32, f64)> = (0..3).map(|p| (p, rng.gen_range(-2..=2) as f64)).collect();
        let phase: Vec<(Vec<u32>, i64)> = if rng.gen_bool(0.3) {
            Vec::new()
        } else {
            vec![
                (
                    vec![rng.gen_range(0..=2), rng.gen_range(1..=2)],
                    rng.gen_range(1..=2),
                ),
                (vec![rng.gen_range(1..=2), 0], rng.gen_range(0..=1)),
            ]
        };
        f = f.add(&OscillatoryFn::term(2, &q, &phase));
    }
    f
}

fn random_gauss(rng: &mut ChaCha8Rng, dim: usize) -> GaussPolyFn {
    let mut f = GaussPolyFn::zero(dim);
    for _ in 0..rng.gen_range(1..=3) {
        let mut p = Poly::zero(dim);
        for _ in 0..4 {
            let e: Vec<u32> = (0..dim).map(|_| rng.gen_range(0..=3)).collect();
            p.add_term(e, rng.gen_range(-2.0..2.0));
        }
        let w = Q::new(rng.gen_range(0..=3), 2);
        f = f.add(&GaussPolyFn::term(p, w));
    }
    f
}

fn random_sym(rng: &mut ChaCha8Rng) -> SymTensor {
    let mut s = SymTensor::zero(1);
    for _ in 0..rng.gen_range(1..=3) {
        let mut term = SymTensor::constant(1, rng.gen_range(-2.0..2.0));
        for _ in 0..rng.gen_range(0..=2) {
            term = term.mul(&SymTensor::factor(random_gauss(rng, 1)));
        }
        s = s.add(&term);
    }
    s
}

fn points(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim)
        .map(|_| rng.gen_range(-4..=4) as f64 / 4.0)
        .collect()
}

fn random_alpha(rng: &mut ChaCha8Rng) -> Q {
    Q::new(rng.gen_range(-8..=24), 4) + Q::new(1, 10)
}

/// `Σ_{|ℓ|_𝔰<α} (y−x̄)^ℓ/ℓ! T_{α−|ℓ|_𝔰,x,x̄}[D^ℓf]`.
fn reexpanded_jet(f: &GaussPolyFn, alpha: Q, x: &[f64], xbar: &[f64], s: &[u32]) -> GaussPolyFn {
    let mut acc = GaussPolyFn::zero(x.len());
    for l in indices_up_to(s, alpha, false) {
        let rest = alpha - Q::from_integer(l.scaled_norm(s) as i64);
        let v = f.deriv_multi(&l).taylor_jet(rest, x, s).eval(xbar);
        let p = Poly::centered_power(xbar, l.entries()).scale(v / l.factorial() as f64);
        acc = acc.add(&GaussPolyFn::from_poly(p));
    }
    acc
}

/// Weight −1 identity for the projectors, the Taylor-jet family identity and
/// the re-expansion identity.
pub fn criterion_2(seed: u64) -> CriterionReport {
    let mut t = Tally::new(2, "Rota-Baxter identities");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2);
    let pole = |a: &LaurentSeries| a.pole_project();
    let regular = |a: &LaurentSeries| a.regular_part();
    let osc = |a: &OscillatoryFn| a.project();
    let ev0 = |a: &SymTensor| a.project();
    let pairs = 1000;
    for i in 0..pairs {
        let (f, g) = (random_laurent(&mut rng), random_laurent(&mut rng));
        t.exact(rota_baxter_defect(&pole, &f, &g).is_zero(), || {
            format!("Laurent Q, pair {i}")
        });
        t.exact(rota_baxter_defect(&regular, &f, &g).is_zero(), || {
            format!("Laurent id-Q, pair {i}")
        });
        let (f, g) = (random_osc(&mut rng), random_osc(&mut rng));
        t.exact(rota_baxter_defect(&osc, &f, &g).is_zero(), || {
            format!("oscillatory Q, pair {i}")
        });
        let (f, g) = (random_sym(&mut rng), random_sym(&mut rng));
        let scale = 1f64.max(sym_size(&f) * sym_size(&g));
        t.gap(
            sym_size(&rota_baxter_defect(&ev0, &f, &g)) / scale,
            1e-9,
            || format!("ev0 E, pair {i}"),
        );
    }
    let cancelling = OscillatoryFn::term(1, &[(0, 1.0)], &[(vec![2], 1)]);
    let opposite = OscillatoryFn::term(1, &[(0, 1.0)], &[(vec![2], -1)]);
    let fails = !rota_baxter_defect(&osc, &cancelling, &opposite).is_zero();
    t.note(format!(
        "oscillatory phases drawn from a non-negative cone; with cancelling phases e^(izk^2), e^(-izk^2) the identity {}",
        if fails { "fails" } else { "holds" }
    ));
    for (dim, s) in [(1usize, vec![1u32]), (2, vec![2, 1])] {
        for i in 0..pairs {
            let (f, g) = (random_gauss(&mut rng, dim), random_gauss(&mut rng, dim));
            let (a, b) = (random_alpha(&mut rng), random_alpha(&mut rng));
            let x = points(&mut rng, dim);
            let ta = f.taylor_jet(a, &x, &s);
            let tb = g.taylor_jet(b, &x, &s);
            let lhs = ta.mul(&tb);
            let rhs = ta
                .mul(&g)
                .add(&f.mul(&tb))
                .sub(&f.mul(&g))
                .taylor_jet(a + b, &x, &s);
            t.gap(lhs.max_gap(&rhs), 1e-9, || {
                format!("jet family, d+1={dim}, pair {i}, α={a}, β={b}")
            });
            let xbar = points(&mut rng, dim);
            let re = reexpanded_jet(&f, a, &x, &xbar, &s);
            t.gap(ta.max_gap(&re), 1e-9, || {
                format!("re-expansion, d+1={dim}, sample {i}, α={a}")
            });
            if a > Q::zero() {
                t.gap((ta.eval(&x) - f.eval(&x)).abs(), 1e-9, || {
                    format!("jet at its base point, sample {i}")
                });
            }
        }
    }
    t.finish()
}

/// Number of children and subtree size of every vertex.
fn vertex_stats(t: &CkTree, out: &mut Vec<(usize, usize)>) {
    out.push((t.children().len(), t.vertices()));
    for c in t.children() {
        vertex_stats(c, out);
    }
}

fn toy_character(which: usize) -> impl Fn(&CkTree) -> LaurentSeries {
    move |t: &CkTree| {
        let mut stats = Vec::new();
        vertex_stats(t, &mut stats);
        let mut acc = LaurentSeries::one(10);
        for (children, size) in stats {
            let f = match which {
                0 => LaurentSeries::from_pairs(&[(-1, 1.0), (0, 1.0)], 10),
                1 => LaurentSeries::from_pairs(&[(-1, 1.0), (0, -(children as f64))], 10),
                _ => LaurentSeries::from_pairs(
                    &[(-2, size as f64), (-1, 1.0), (0, 2.0), (1, 1.0)],
                    10,
                ),
            };
            acc = acc.mul(&f);
        }
        acc
    }
}

fn laurent_eq(a: &LaurentSeries, b: &LaurentSeries) -> bool {
    a.max_gap_upto(b, 10) == 0.0
}

/// Classical Birkhoff factorisation for three toy characters, and `Q = id`.
pub fn criterion_3() -> CriterionReport {
    let mut t = Tally::new(3, "classical Birkhoff factorisation on CK forests");
    let names = [
        "(1/t+1)^|τ|",
        "Π_v (1/t - children)",
        "Π_v (size/t² + 1/t + 2 + t)",
    ];
    let pole = |a: &LaurentSeries| a.pole_project();
    let ident = |a: &LaurentSeries| a.clone();
    let one = LaurentSeries::one(10);
    let basis = CkHopf.basis(6);
    for (w, name) in names.iter().enumerate() {
        let tree_fn = toy_character(w);
        let phi = ck_character(&tree_fn, &one);
        let Some(res) = guard(
            &mut t,
            || format!("recursion for {name}"),
            || classical_birkhoff(&CkHopf, &phi, &pole, 6),
        ) else {
            continue;
        };
        for f in &basis {
            if let Some(v) = guard(
                &mut t,
                || format!("factorisation on {f}"),
                || ck_factorisation(&res, f),
            ) {
                t.exact(laurent_eq(&v, &phi(f)), || {
                    format!("{name}: φ₊⋆φ₋⁻¹ ≠ φ on {f}")
                });
            }
            if f.is_unit() {
                continue;
            }
            t.exact(res.counterterm[f].is_pole(), || {
                format!("{name}: φ₋({f}) not a pole part")
            });
            t.exact(res.renormalised[f].is_regular(), || {
                format!("{name}: φ₊({f}) not regular")
            });
            if f.trees().len() > 1 {
                let mut m = one.clone();
                let mut p = one.clone();
                for tr in f.trees() {
                    let single = CkForest::single(tr.clone());
                    m = m.mul(&res.counterterm[&single]);
                    p = p.mul(&res.renormalised[&single]);
                }
                t.exact(laurent_eq(&m, &res.counterterm[f]), || {
                    format!("{name}: φ₋ not multiplicative on {f}")
                });
                t.exact(laurent_eq(&p, &res.renormalised[f]), || {
                    format!("{name}: φ₊ not multiplicative on {f}")
                });
            }
        }
        if let Some(res) = guard(
            &mut t,
            || format!("Q = id for {name}"),
            || classical_birkhoff(&CkHopf, &phi, &ident, 6),
        ) {
            for f in &basis {
                let mut direct = LaurentSeries::zero(10);
                for (s, c) in ck_antipode(f).iter() {
                    direct = direct.add(&phi(s).scale(q_to_f64(c)));
                }
                t.exact(laurent_eq(&direct, &res.counterterm[f]), || {
                    format!("{name}: Q = id gives φ₋ ≠ φ∘𝒜 on {f}")
                });
            }
        }
    }
    t.note(format!(
        "{} CK forests with at most 6 vertices, truncation order 10",
        basis.len()
    ));
    t.finish()
}

fn derivative_norm(sc: &Scaling, t: &Tree) -> u32 {
    t.branches()
        .iter()
        .map(|(e, c)| sc.norm(&e.deriv) + derivative_norm(sc, c))
        .sum()
}

/// Recursion versus worklist for `𝒜̄₊`, and cutoff stabilisation of the
/// truncated `Δ⁺` and `𝒜₊`.
pub fn criterion_11() -> CriterionReport {
    let mut t = Tally::new(11, "determinism and truncation stabilisation");
    let sc = Scaling::example();
    let anti = AntipodeEngine::new(&sc);
    let eng = anti.plus();
    let trees = enumerate_trees(&sc, &Pool::new(4, 1, 1));
    for tr in trees.iter().filter(|u| sc.is_positive(u)) {
        if let Some(w) = guard(
            &mut t,
            || format!("worklist on {tr}"),
            || anti.bar_worklist(tr),
        ) {
            t.exact(w == *anti.eval(tr, AntipodeVariant::Bar), || {
                format!("worklist ≠ recursion on {tr}")
            });
        }
    }
    let small = enumerate_trees(&sc, &Pool::new(3, 1, 1));
    for tr in &small {
        let base = derivative_norm(&sc, tr);
        for g in 0..=2i64 {
            let gq = Q::from_integer(g);
            let within = |k: &(Tree, Tree)| {
                derivative_norm(&sc, &k.0) + derivative_norm(&sc, &k.1) - base <= g as u32
            };
            let reference = eng.full(tr, gq).filter(within);
            for extra in 1..=2 {
                let other = eng.full(tr, gq + Q::from_integer(extra)).filter(within);
                t.exact(other == reference, || {
                    format!("Δ⁺ on {tr} not stable from cutoff {g}")
                });
            }
            let within_a = |u: &Tree| derivative_norm(&sc, u) - base <= g as u32;
            let a_ref = anti
                .eval(tr, AntipodeVariant::FullTruncated(gq))
                .filter(within_a);
            for extra in 1..=2 {
                let other = anti
                    .eval(
                        tr,
                        AntipodeVariant::FullTruncated(gq + Q::from_integer(extra)),
                    )
                    .filter(within_a);
                t.exact(other == a_ref, || {
                    format!("𝒜₊ on {tr} not stable from cutoff {g}")
                });
            }
        }
        let top = tr
            .planted_factors()
            .map(|p| sc.deg(&p))
            .chain(interior_degrees(&sc, tr))
            .fold(Q::zero(), |a, b| a.max(b));
        let cut = Q::from_integer(top.ceil().to_integer());
        let hat = LinComb::from_iter(
            eng.full(tr, cut)
                .iter()
                .filter(|((_, b), _)| sc.is_positive(b))
                .map(|(k, c)| (k.clone(), *c)),
        );
        t.exact(hat == *eng.hat(tr), || {
            format!("(id⊗π₊)Δ⁺ ≠ Δ̂⁺ on {tr} at cutoff {cut}")
        });
    }
    t.note(format!(
        "{} positive trees for the worklist, {} trees for stabilisation",
        trees.iter().filter(|u| sc.is_positive(u)).count(),
        small.len()
    ));
    t.finish()
}

/// Degrees of every planted subtree below the root.
fn interior_degrees(sc: &Scaling, t: &Tree) -> Vec<Q> {
    let mut out = Vec::new();
    for (e, c) in t.branches() {
        out.push(sc.planted_deg(e, c));
        out.extend(interior_degrees(sc, c));
    }
    out
}
