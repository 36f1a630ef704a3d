use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::rc::Rc;

use super::{guard, CriterionReport, Tally};
use crate::birkhoff::rs::RsBogoliubov;
use crate::birkhoff::symbolic_monomial;
use crate::hopf::AntipodeEngine;
use crate::linear::Q;
use crate::models::{real_gap, sample_grid, verify_model, CanonicalPi, KernelAssignment, Model};
use crate::multiindex::indices_up_to;
use crate::targets::GaussPolyFn;
use crate::trees::{enumerate_trees, Pool, Scaling, Tree, TypeKind};

/// Trees with at most `edges` edges and unit node and derivative budgets.
pub(crate) fn analytic_pool(sc: &Scaling, edges: usize) -> Vec<Tree> {
    enumerate_trees(sc, &Pool::new(edges, 1, 1))
}

fn canonical(sc: &Scaling) -> CanonicalPi<'_> {
    CanonicalPi::new(
        sc,
        KernelAssignment::standard(sc).expect("standard kernels fit every scaling"),
    )
}

/// Points on which `φ` and the recursion are sampled.
const SAMPLE_Y: [f64; 4] = [-0.75, 0.0, 0.4, 1.3];

fn fn_gap(a: &GaussPolyFn, b: &GaussPolyFn) -> f64 {
    let mut g = a.max_gap(b);
    for y in SAMPLE_Y {
        g = g.max((a.eval(&[y]) - b.eval(&[y])).abs());
    }
    g
}

const POINT_PAIRS: [(f64, f64); 4] = [(0.0, 0.0), (0.5, -1.0), (-1.0, 0.5), (1.0, 0.0)];

/// `φ⁺` multiplicative on products of positive trees, `φ⁻` multiplicative
/// at `y = x̄` and, for zero root decorations, at every `y`.
pub fn criterion_4(seed: u64) -> CriterionReport {
    let mut t = Tally::new(
        4,
        "multiplicativity of the counterterm and renormalised maps",
    );
    let sc = Scaling::generic();
    let pi = canonical(&sc);
    let positive: Vec<Tree> = analytic_pool(&sc, 3)
        .into_iter()
        .filter(|u| sc.is_positive(u) && !u.is_one())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4);
    let pairs_per_point = 60;
    for (x, xbar) in POINT_PAIRS {
        let Some(rs) = guard(
            &mut t,
            || "point pair".into(),
            || RsBogoliubov::new(&pi, &[x], &[xbar]),
        ) else {
            continue;
        };
        for _ in 0..pairs_per_point {
            let a = positive.choose(&mut rng).expect("non-empty pool");
            let b = positive.choose(&mut rng).expect("non-empty pool");
            let ab = a.mul(b);
            let what = || format!("{a} · {b} at x={x}, x̄={xbar}");
            let Some(((pa, pb), pab)) = guard(&mut t, what, || {
                Ok(((rs.plus(a)?, rs.plus(b)?), rs.plus(&ab)?))
            }) else {
                continue;
            };
            t.gap(fn_gap(&pa.mul(&pb), &pab), 1e-9, || {
                format!("φ⁺ on {a} · {b} at x={x}, x̄={xbar}")
            });
            let Some(((ma, mb), mab)) = guard(&mut t, what, || {
                Ok(((rs.minus(a)?, rs.minus(b)?), rs.minus(&ab)?))
            }) else {
                continue;
            };
            let at = |f: &GaussPolyFn| f.eval(&[xbar]);
            t.gap((at(&ma) * at(&mb) - at(&mab)).abs(), 1e-9, || {
                format!("φ⁻ at x̄ on {a} · {b}, x={x}, x̄={xbar}")
            });
            if a.root().is_zero() && b.root().is_zero() {
                t.gap(fn_gap(&ma.mul(&mb), &mab), 1e-9, || {
                    format!("φ⁻ on {a} · {b}, x={x}, x̄={xbar}")
                });
            }
        }
    }
    t.note(format!(
        "{} random pairs from {} positive trees, scaling |t|=199/100, |u|=149/100, |l|=-151/100",
        pairs_per_point * POINT_PAIRS.len(),
        positive.len()
    ));
    t.finish()
}

/// `φ⁻_{x,x̄,x̄} = f_x^{(x̄)}` through the twisted antipode, and `φ⁺ = Π_x^{(x̄)}`.
pub fn criterion_5() -> CriterionReport {
    let mut t = Tally::new(5, "counterterm equals the twisted antipode route");
    let sc = Scaling::generic();
    let pi = canonical(&sc);
    let trees = analytic_pool(&sc, 5);
    let positive: Vec<&Tree> = trees.iter().filter(|u| sc.is_positive(u)).collect();
    for (x, xbar) in POINT_PAIRS {
        let anti = Rc::new(AntipodeEngine::new(&sc));
        let Some(rs) = guard(
            &mut t,
            || "point pair".into(),
            || RsBogoliubov::with_engine(&pi, anti.plus_shared(), &[x], &[xbar]),
        ) else {
            continue;
        };
        let Some(model) = guard(
            &mut t,
            || "model".into(),
            || Model::with_engine(&pi, &[xbar], anti.clone()),
        ) else {
            continue;
        };
        for tr in &positive {
            let what = || format!("{tr} at x={x}, x̄={xbar}");
            if let Some((m, f)) = guard(&mut t, what, || {
                Ok((rs.minus_at_xbar(tr)?, model.f(&[x], tr)?))
            }) {
                t.gap((m - f).abs(), 1e-9, || {
                    format!("φ⁻ ≠ f_x on {tr}, x={x}, x̄={xbar}")
                });
            }
        }
        for tr in trees.iter().filter(|u| u.edge_count() <= 4) {
            let what = || format!("{tr} at x={x}, x̄={xbar}");
            if let Some((p, q)) = guard(&mut t, what, || Ok((rs.plus(tr)?, model.pi_x(&[x], tr)?)))
            {
                t.gap(fn_gap(&p, &q), 1e-9, || {
                    format!("φ⁺ ≠ Π_x on {tr}, x={x}, x̄={xbar}")
                });
            }
        }
    }
    t.note(format!(
        "φ⁻ on {} positive trees with at most 5 edges, φ⁺ on trees with at most 4 edges, 4 point pairs",
        positive.len()
    ));
    t.finish()
}

/// The branchwise formula for `φ⁺`, vanishing of `φ⁺(τ)` at `x` and
/// polynomial counterterms.
pub fn criterion_6() -> CriterionReport {
    let mut t = Tally::new(
        6,
        "explicit renormalised map and vanishing at the base point",
    );
    let sc = Scaling::generic();
    let pi = canonical(&sc);
    let anti = Rc::new(AntipodeEngine::new(&sc));
    let trees = analytic_pool(&sc, 4);
    for (x, xbar) in POINT_PAIRS {
        let Some(rs) = guard(
            &mut t,
            || "point pair".into(),
            || RsBogoliubov::with_engine(&pi, anti.plus_shared(), &[x], &[xbar]),
        ) else {
            continue;
        };
        for tr in &trees {
            let what = || format!("{tr} at x={x}, x̄={xbar}");
            let Some((p, e)) = guard(&mut t, what, || Ok((rs.plus(tr)?, rs.explicit_plus(tr)?)))
            else {
                continue;
            };
            t.gap(fn_gap(&p, &e), 1e-9, || {
                format!("explicit φ⁺ differs on {tr}, x={x}, x̄={xbar}")
            });
            if sc.is_positive(tr) && !tr.is_one() {
                t.gap(p.eval(&[x]).abs(), 1e-9, || {
                    format!("φ⁺({tr})(x) ≠ 0, x={x}, x̄={xbar}")
                });
                if let Some(m) = guard(&mut t, what, || rs.minus(tr)) {
                    t.exact(m.is_polynomial(), || format!("φ⁻({tr}) not polynomial"));
                }
            }
        }
    }
    t.note(format!(
        "{} trees with at most 4 edges, 4 point pairs",
        trees.len()
    ));
    t.finish()
}

fn parabolic() -> Scaling {
    Scaling::new(
        vec![2, 1],
        &[
            ("t", Q::new(199, 100), TypeKind::Kernel),
            ("l", Q::new(-151, 100), TypeKind::Noise),
        ],
    )
    .expect("valid parabolic scaling")
}

/// Closed forms on `X^k` in the point variables and the single-term formula
/// for `f_x^{(x)}`.
pub fn criterion_7() -> CriterionReport {
    let mut t = Tally::new(7, "closed forms on monomials");
    for sc in [Scaling::example(), parabolic()] {
        for k in indices_up_to(sc.s(), Q::from_integer(4), true) {
            let r = symbolic_monomial(&sc, &k);
            t.exact(r.max_gap() == 0.0, || {
                format!("closed forms fail on X^{k:?} with s={:?}", sc.s())
            });
        }
    }
    let sc = Scaling::generic();
    let pi = canonical(&sc);
    let anti = Rc::new(AntipodeEngine::new(&sc));
    let planted: Vec<Tree> = analytic_pool(&sc, 4)
        .into_iter()
        .filter(|u| u.is_planted() && u.root().is_zero() && sc.is_positive(u))
        .collect();
    let mut count = 0;
    for x in [-1.0, 0.0, 0.5] {
        let Some(model) = guard(
            &mut t,
            || "model".into(),
            || Model::with_engine(&pi, &[x], anti.clone()),
        ) else {
            continue;
        };
        for p in &planted {
            let (e, c) = &p.branches()[0];
            if sc.kind(&e.label).ok() != Some(TypeKind::Kernel) {
                continue;
            }
            let what = || format!("{p} at x = x̄ = {x}");
            let direct = guard(&mut t, what, || model.f(&[x], p));
            let single = guard(&mut t, what, || {
                let v = pi.edge_value(e, c, || model.pi_x(&[x], c))?;
                Ok(-v.eval(&[x]))
            });
            if let (Some(a), Some(b)) = (direct, single) {
                count += 1;
                t.gap((a - b).abs(), 1e-9, || {
                    format!("single-term f_x^(x) fails on {p} at {x}")
                });
            }
        }
    }
    t.note(format!(
        "|k|_s ≤ 4 for s=(1) and s=(2,1); {count} planted trees for the single-term formula"
    ));
    t.finish()
}

const XBARS: [f64; 3] = [0.0, 0.5, -1.0];

/// Independence of `Π_x`, of `φ̄` on planted trees and of `φ⁻` on zero-root
/// trees from `x̄`.
pub fn criterion_8() -> CriterionReport {
    let mut t = Tally::new(8, "independence from the recentring point");
    let sc = Scaling::generic();
    let pi = canonical(&sc);
    let anti = Rc::new(AntipodeEngine::new(&sc));
    let trees = analytic_pool(&sc, 4);
    for x in [0.0, 0.5, -1.0] {
        let models: Vec<Model<'_>> = XBARS
            .iter()
            .filter_map(|&b| Model::with_engine(&pi, &[b], anti.clone()).ok())
            .collect();
        let rss: Vec<RsBogoliubov<'_, CanonicalPi<'_>>> = XBARS
            .iter()
            .filter_map(|&b| RsBogoliubov::with_engine(&pi, anti.plus_shared(), &[x], &[b]).ok())
            .collect();
        for tr in &trees {
            let what = || format!("{tr} at x={x}");
            let Some(vals) = guard(&mut t, what, || {
                models
                    .iter()
                    .map(|m| m.pi_x(&[x], tr))
                    .collect::<crate::Result<Vec<_>>>()
            }) else {
                continue;
            };
            for v in &vals[1..] {
                t.gap(fn_gap(&vals[0], v), 1e-8, || {
                    format!("Π_x({tr}) depends on x̄, x={x}")
                });
            }
            if tr.is_planted() && tr.root().is_zero() {
                let (e, c) = &tr.branches()[0];
                if sc.kind(&e.label).ok() == Some(TypeKind::Kernel) {
                    let expect = guard(&mut t, what, || {
                        pi.edge_value(e, c, || models[0].pi_x(&[x], c))
                    });
                    for rs in &rss {
                        if let (Some(exp), Some(bar)) =
                            (&expect, guard(&mut t, what, || rs.prep(tr)))
                        {
                            t.gap(fn_gap(exp, &bar), 1e-8, || {
                                format!("φ̄({tr}) ≠ D^kK*Π_xτ at x={x}, x̄={}", rs.xbar()[0])
                            });
                        }
                    }
                }
            }
            if tr.root().is_zero() && sc.is_positive(tr) && !tr.is_one() {
                let Some(ms) = guard(&mut t, what, || {
                    rss.iter()
                        .map(|r| r.minus(tr))
                        .collect::<crate::Result<Vec<_>>>()
                }) else {
                    continue;
                };
                for m in &ms[1..] {
                    t.gap(fn_gap(&ms[0], m), 1e-8, || {
                        format!("φ⁻({tr}) depends on x̄, x={x}")
                    });
                }
            }
        }
    }
    t.note(format!(
        "{} trees with at most 4 edges, x̄ ∈ {{0, 1/2, -1}}",
        trees.len()
    ));
    t.finish()
}

/// The algebraic model identities at grid points and the recursive formulas
/// against their definitions.
pub fn criterion_9(seed: u64) -> CriterionReport {
    let mut t = Tally::new(9, "model identities and recursive formulas");
    let sc = Scaling::generic();
    let pi = canonical(&sc);
    let trees = analytic_pool(&sc, 5);
    let grid = sample_grid(1);
    let mut triples = Vec::new();
    for (i, x) in grid.iter().enumerate() {
        for (j, y) in grid.iter().enumerate() {
            triples.push((
                x.clone(),
                y.clone(),
                grid[(i + 2 * j + 1) % grid.len()].clone(),
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9);
    let small: Vec<Tree> = trees
        .iter()
        .filter(|u| u.edge_count() <= 3)
        .cloned()
        .collect();
    let mut sampled: Vec<Tree> = trees
        .iter()
        .filter(|u| u.edge_count() > 3)
        .cloned()
        .collect();
    sampled.shuffle(&mut rng);
    sampled.truncate(40);
    let mut checked: Vec<Tree> = small;
    checked.extend(sampled);
    let Some(model) = guard(&mut t, || "model".into(), || Model::new(&pi, &[0.5])) else {
        return t.finish();
    };
    if let Some(report) = guard(
        &mut t,
        || "verify_model".into(),
        || verify_model(&model, &triples, &checked, 1e-8),
    ) {
        for row in &report.checks {
            t.gap(row.max_gap, 1e-8, || {
                format!("{} on {} at {:?}", row.check, row.tree, row.points)
            });
        }
    }
    for (x, y, _) in triples.iter().step_by(3) {
        for tr in &checked {
            let what = || format!("{tr} at x={x:?}, y={y:?}");
            if let Some((a, b)) = guard(&mut t, what, || {
                Ok((model.pi_x_recursive(x, tr)?, model.pi_x(x, tr)?))
            }) {
                t.gap(fn_gap(&a, &b), 1e-8, || {
                    format!("recursive Π_x differs on {tr} at {x:?}")
                });
            }
            if let Some((a, b)) = guard(&mut t, what, || {
                Ok((model.gamma_recursive(x, y, tr)?, model.big_gamma(x, y, tr)?))
            }) {
                t.gap(real_gap(&a, &b), 1e-8, || {
                    format!("recursive Γ_xy differs on {tr} at {x:?}, {y:?}")
                });
            }
            if tr.is_planted() && sc.is_positive(tr) && sc.deg(tr) > Q::zero() {
                let (e, _) = &tr.branches()[0];
                if sc.kind(&e.label).ok() == Some(TypeKind::Kernel) {
                    if let Some((a, b)) = guard(&mut t, what, || {
                        Ok((model.f_x_recursive(x, tr)?, model.f(x, tr)?))
                    }) {
                        t.gap((a - b).abs(), 1e-8, || {
                            format!("recursive f_x differs on {tr} at {x:?}")
                        });
                    }
                }
            }
        }
    }
    t.note(format!(
        "{} point triples, {} trees (all with at most 3 edges plus a seeded sample of larger ones), x̄ = 1/2",
        triples.len(),
        checked.len()
    ));
    t.finish()
}
