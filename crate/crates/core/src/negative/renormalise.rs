use super::{plus_coaction, NegCoaction};
use crate::error::Result;
use crate::hopf::PlusEngine;
use crate::linear::{q_to_f64, LinComb};
use crate::models::{Model, RealTreeSum};
use crate::targets::GaussPolyFn;
use crate::trees::{Forest, ForestTensor, TensorSum, Tree};

/// The positive coaction paired with `Δ̂⁻` in the cointeraction identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositiveSide {
    /// Admissible cuts without polynomial decorations or degree projection.
    Cuts,
    /// The coaction `Δ̂⁺`.
    Hat,
}

/// `Σ_C trunk ⊗ Π_{e∈C} Ĵ_e(τ_e)` over admissible cuts `C`.
pub fn cut_coproduct(t: &Tree) -> TensorSum {
    let n = t.dim();
    let mut acc = TensorSum::single((Tree::monomial(t.root().clone()), Tree::one(n)));
    for (e, c) in t.branches() {
        let mut options = TensorSum::single((Tree::one(n), Tree::planted(e.hatted(), c.clone())));
        for ((a, b), k) in cut_coproduct(c).iter() {
            options.add_term((Tree::planted(e.plain(), a.clone()), b.clone()), *k);
        }
        acc = crate::trees::tensor_mul(&acc, &options);
    }
    acc
}

fn positive(eng: &PlusEngine<'_>, side: PositiveSide, t: &Tree) -> TensorSum {
    match side {
        PositiveSide::Cuts => cut_coproduct(t),
        PositiveSide::Hat => (*eng.hat(t)).clone(),
    }
}

type Triple = LinComb<(Forest, Tree, Tree)>;

/// `ℳ^{(13)(2)(4)}(Δ̂⁻⊗Δ̂⁻)Δ⁺τ` and `(id⊗Δ⁺)Δ̂⁻τ`.
pub fn cointeraction_sides(
    neg: &dyn NegCoaction,
    side: PositiveSide,
    t: &Tree,
) -> (Triple, Triple) {
    let eng = PlusEngine::new(neg.scaling());
    let t = t.erase_marks();
    let mut lhs = Triple::zero();
    for ((a, b), k) in positive(&eng, side, &t).iter() {
        let da = neg.coaction(a);
        let db = plus_coaction(neg, b);
        for ((f1, a2), k1) in da.iter() {
            for ((f2, b2), k2) in db.iter() {
                lhs.add_term((f1.mul(f2), a2.clone(), b2.clone()), k * k1 * k2);
            }
        }
    }
    let mut rhs = Triple::zero();
    for ((f, c), k) in neg.coaction(&t).iter() {
        for ((a, b), k2) in positive(&eng, side, c).iter() {
            rhs.add_term((f.clone(), a.clone(), b.clone()), k * k2);
        }
    }
    (lhs, rhs)
}

/// Exact comparison of both sides of the cointeraction identity on `t`.
pub fn cointeraction_check(neg: &dyn NegCoaction, side: PositiveSide, t: &Tree) -> bool {
    let (l, r) = cointeraction_sides(neg, side, t);
    l == r
}

/// `M = (ψ₋⊗id)Δ̂⁻` on a tree of `T`.
pub fn renormalisation_map(
    neg: &dyn NegCoaction,
    psi_minus: &dyn Fn(&Forest) -> Result<f64>,
    t: &Tree,
) -> Result<RealTreeSum> {
    apply_counterterm(&neg.coaction(t), psi_minus)
}

/// `M` on an element of `T̂₊`, through the structural `Δ̂⁻`.
pub fn renormalisation_map_plus(
    neg: &dyn NegCoaction,
    psi_minus: &dyn Fn(&Forest) -> Result<f64>,
    b: &Tree,
) -> Result<RealTreeSum> {
    apply_counterterm(&plus_coaction(neg, b), psi_minus)
}

fn apply_counterterm(
    d: &ForestTensor,
    psi_minus: &dyn Fn(&Forest) -> Result<f64>,
) -> Result<RealTreeSum> {
    let mut out = RealTreeSum::zero();
    for ((f, c), k) in d.iter() {
        let m = psi_minus(f)?;
        if m != 0.0 {
            out.add_term(c.clone(), m * q_to_f64(k));
        }
    }
    Ok(out)
}

/// `Π̂_x = (ΠM ⊗ f_xM)Δ̂⁺` at one tree.
pub fn renormalised_pi_x(
    model: &Model<'_>,
    neg: &dyn NegCoaction,
    psi_minus: &dyn Fn(&Forest) -> Result<f64>,
    x: &[f64],
    t: &Tree,
) -> Result<GaussPolyFn> {
    let eng = PlusEngine::new(model.scaling());
    let mut acc = GaussPolyFn::zero(x.len());
    for ((a, b), k) in eng.hat(&t.erase_marks()).iter() {
        let mut fb = 0.0;
        for (u, c) in renormalisation_map_plus(neg, psi_minus, b)?.iter() {
            fb += c * model.f(x, u)?;
        }
        if fb == 0.0 {
            continue;
        }
        for (u, c) in renormalisation_map(neg, psi_minus, a)?.iter() {
            acc = acc.add(&model.canonical(u)?.scale(c * fb * q_to_f64(k)));
        }
    }
    Ok(acc)
}
