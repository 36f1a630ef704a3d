use num_traits::{One, Zero};

use super::{bar_coproduct, in_bar, plus_coaction, NegCoaction, NegativeAntipodes};
use crate::error::{Error, Result};
use crate::hopf::{AntipodeEngine, AntipodeVariant};
use crate::linear::{LinComb, Q};
use crate::trees::{Forest, Tree};

/// Elements `Σ a⊗b` of `T̄⁻ ⊗̂ T̄₊`.
pub type PairSum = LinComb<(Forest, Tree)>;
/// Elements of `(T̄⁻ ⊗̂ T̄₊)^{⊗2}`.
pub type PairTensor = LinComb<((Forest, Tree), (Forest, Tree))>;

/// The product, `Δ±`, `𝒜±` and the semidirect character product on `T̄⁻ ⊗̂ T̄₊`.
pub struct DoubleHopf<'a> {
    neg: &'a dyn NegCoaction,
    plus: AntipodeEngine<'a>,
    minus: NegativeAntipodes<'a>,
}

impl<'a> DoubleHopf<'a> {
    pub fn new(neg: &'a dyn NegCoaction) -> Self {
        DoubleHopf {
            neg,
            plus: AntipodeEngine::new(neg.scaling()),
            minus: NegativeAntipodes::new(neg),
        }
    }

    fn check(&self, a: &Forest, b: &Tree) -> Result<()> {
        let sc = self.neg.scaling();
        if !in_bar(sc, a) {
            return Err(Error::Domain(format!(
                "{a} is not in the negative quotient"
            )));
        }
        if !sc.is_positive(b) {
            return Err(Error::Domain(format!("{b} is not in the positive algebra")));
        }
        Ok(())
    }

    pub fn unit(&self) -> (Forest, Tree) {
        (Forest::empty(), Tree::one(self.neg.scaling().d_plus_1()))
    }

    /// `(a⊗b)·(ā⊗b̄) = (a·ā)⊗(bb̄)`.
    pub fn product(&self, x: &PairSum, y: &PairSum) -> PairSum {
        crate::linear::bilinear(x, y, |(a, b), (c, d)| (a.mul(c), b.mul(d)))
    }

    /// `Δ±(a⊗b) = ℳ^{(14)(3)(2)(5)}(id⊗id⊗id⊗Δ̄⁻)(Δ̄⁻⊗Δ̄⁺)(a⊗b)`.
    pub fn coproduct(&self, a: &Forest, b: &Tree) -> Result<PairTensor> {
        self.check(a, b)?;
        let da = bar_coproduct(self.neg, a)?;
        let db = self.plus.plus().bar(b)?;
        let mut out = PairTensor::zero();
        for ((a1, a2), ka) in da.iter() {
            for ((b1, b2), kb) in db.iter() {
                for ((c, b3), kc) in plus_coaction(self.neg, b2).iter() {
                    out.add_term(
                        ((a1.mul(c), b1.clone()), (a2.clone(), b3.clone())),
                        ka * kb * kc,
                    );
                }
            }
        }
        Ok(out)
    }

    /// `𝒜± = (𝒜₋ℳ ⊗ 𝒜₊)(id⊗Δ̄⁻)`.
    pub fn antipode(&self, a: &Forest, b: &Tree) -> Result<PairSum> {
        self.check(a, b)?;
        let mut out = PairSum::zero();
        for ((c, b2), k) in plus_coaction(self.neg, b).iter() {
            let left = self.minus.antipode(&a.mul(c))?;
            let right = self.plus.eval(b2, AntipodeVariant::Bar);
            for (f, kf) in left.iter() {
                for (t, kt) in right.iter() {
                    out.add_term((f.clone(), t.clone()), k * kf * kt);
                }
            }
        }
        Ok(out)
    }

    /// `ℳ(𝒜±⊗id)Δ±(a⊗b)` next to `ε(a⊗b)(𝟏₁⊗𝟏)`.
    pub fn antipode_sides(&self, a: &Forest, b: &Tree) -> Result<(PairSum, PairSum)> {
        let mut lhs = PairSum::zero();
        for ((x, y), k) in self.coproduct(a, b)?.iter() {
            let s = self.antipode(&x.0, &x.1)?;
            let prod = self.product(&s, &PairSum::single(y.clone()));
            lhs.add_scaled(&prod, k);
        }
        let unit = if a.is_empty() && b.is_one() {
            PairSum::single(self.unit())
        } else {
            PairSum::zero()
        };
        Ok((lhs, unit))
    }

    /// `(χ₁χ₂)(a⊗b)` through `Δ±`, where `χᵢ(a⊗b) = gᵢ(a)fᵢ(b)`.
    pub fn convolve(
        &self,
        chi1: (&dyn Fn(&Forest) -> Q, &dyn Fn(&Tree) -> Q),
        chi2: (&dyn Fn(&Forest) -> Q, &dyn Fn(&Tree) -> Q),
        a: &Forest,
        b: &Tree,
    ) -> Result<Q> {
        let mut acc = Q::zero();
        for ((x, y), k) in self.coproduct(a, b)?.iter() {
            acc += k * chi1.0(&x.0) * chi1.1(&x.1) * chi2.0(&y.0) * chi2.1(&y.1);
        }
        Ok(acc)
    }

    /// `(g₁,f₁)(g₂,f₂) = (g₁⋆̄g₂, f₁∗̄(g₁⋆̄f₂))` evaluated at `a` and `b`.
    pub fn semidirect(
        &self,
        first: (&dyn Fn(&Forest) -> Q, &dyn Fn(&Tree) -> Q),
        second: (&dyn Fn(&Forest) -> Q, &dyn Fn(&Tree) -> Q),
        a: &Forest,
        b: &Tree,
    ) -> Result<(Q, Q)> {
        self.check(a, b)?;
        let mut g = Q::zero();
        for ((a1, a2), k) in bar_coproduct(self.neg, a)?.iter() {
            g += k * first.0(a1) * second.0(a2);
        }
        let mut f = Q::zero();
        for ((b1, b2), k) in self.plus.plus().bar(b)?.iter() {
            let mut inner = Q::zero();
            for ((c, b3), kc) in plus_coaction(self.neg, b2).iter() {
                inner += kc * first.0(c) * second.1(b3);
            }
            f += k * first.1(b1) * inner;
        }
        Ok((g, f))
    }
}

/// Multiplicative extension of a tree-level rational character to forests.
pub fn forest_character(f: &dyn Fn(&Tree) -> Q) -> impl Fn(&Forest) -> Q + '_ {
    move |forest: &Forest| forest.trees().iter().fold(Q::one(), |acc, t| acc * f(t))
}
