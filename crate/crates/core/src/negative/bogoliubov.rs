use rustc_hash::FxHashMap as HashMap;
use std::cell::RefCell;

use super::{forest_coaction, in_bar, is_full, NegCoaction, NegativeAntipodes};
use crate::birkhoff::rs::PointFamily;
use crate::birkhoff::Comodule;
use crate::error::{Error, Result};
use crate::linear::{q_to_f64, Q};
use crate::targets::SymTensor;
use crate::trees::{Forest, Tree};

/// `ψ = Π` extended to forests, with `ψ₋ = −Ẽ(ψ̄(𝔦₋·))(0)` on `T̄⁻` and
/// `ψ₊ = (ψ₋⊗ψ)Δ̂⁻`.
///
/// Processes are deterministic, so `Ẽ(·)(0)` is the product of the factors at
/// the origin.
pub struct NegativeBogoliubov<'a, F: PointFamily> {
    fam: &'a F,
    neg: &'a dyn NegCoaction,
    minus: RefCell<HashMap<Tree, f64>>,
}

impl<'a, F: PointFamily> NegativeBogoliubov<'a, F> {
    pub fn new(fam: &'a F, neg: &'a dyn NegCoaction) -> Self {
        NegativeBogoliubov {
            fam,
            neg,
            minus: RefCell::default(),
        }
    }

    fn dim(&self) -> usize {
        self.fam.scaling().d_plus_1()
    }

    /// `ψ(F) = Π(τ₁) ⊙ ⋯ ⊙ Π(τ_n)`.
    pub fn psi(&self, f: &Forest) -> Result<SymTensor> {
        let origin = vec![0.0; self.dim()];
        let mut acc = SymTensor::one(self.dim());
        for t in f.trees() {
            acc = acc.mul(&SymTensor::factor(self.fam.eval(&origin, t)?));
        }
        Ok(acc)
    }

    /// `ψ̄(τ) = ψ(τ) + Σ⁻ ψ₋(τ′)ψ(τ″)` on a tree.
    pub fn prep(&self, t: &Tree) -> Result<SymTensor> {
        let mut acc = SymTensor::zero(self.dim());
        for ((f, c), k) in self.neg.coaction(t).iter() {
            if f.is_empty() {
                acc = acc.add(&self.psi(&Forest::single(c.clone()))?.scale(q_to_f64(k)));
                continue;
            }
            if is_full(&t.erase_marks(), f) {
                continue;
            }
            let m = self.minus(f)?;
            if m != 0.0 {
                acc = acc.add(&self.psi(&Forest::single(c.clone()))?.scale(m * q_to_f64(k)));
            }
        }
        Ok(acc)
    }

    /// `ψ₋` on a forest of `T̄⁻`, multiplicatively.
    pub fn minus(&self, f: &Forest) -> Result<f64> {
        if !in_bar(self.neg.scaling(), f) {
            return Err(Error::Domain(format!(
                "{f} is not in the negative quotient"
            )));
        }
        let mut acc = 1.0;
        for t in f.trees() {
            acc *= self.minus_tree(t)?;
        }
        Ok(acc)
    }

    fn minus_tree(&self, t: &Tree) -> Result<f64> {
        if let Some(v) = self.minus.borrow().get(t) {
            return Ok(*v);
        }
        let v = -self.prep(t)?.expectation();
        self.minus.borrow_mut().insert(t.clone(), v);
        Ok(v)
    }

    /// `ψ₊ = (ψ₋⊗ψ)Δ̂⁻` on a forest of `T̂⁻`.
    pub fn plus(&self, f: &Forest) -> Result<SymTensor> {
        let mut acc = SymTensor::zero(self.dim());
        for ((a, b), k) in forest_coaction(self.neg, f).iter() {
            let m = self.minus(a)?;
            if m != 0.0 {
                acc = acc.add(&self.psi(b)?.scale(m * q_to_f64(k)));
            }
        }
        Ok(acc)
    }

    /// `Ẽ(ψ(Ã₋F))(0)`.
    pub fn minus_via_antipode(&self, anti: &NegativeAntipodes<'_>, f: &Forest) -> Result<f64> {
        let mut acc = 0.0;
        for (g, k) in anti.twisted(f)?.iter() {
            acc += q_to_f64(k) * self.psi(g)?.expectation();
        }
        Ok(acc)
    }
}

/// `Δ̂⁻` as a left coaction of `T̄⁻` on `T̂⁻`, in the form the comodule
/// recursion expects.
pub struct NegativeComodule<'a> {
    pub neg: &'a dyn NegCoaction,
}

impl Comodule for NegativeComodule<'_> {
    type H = Forest;
    type C = Forest;

    fn iota(&self, h: &Forest) -> Forest {
        h.clone()
    }
    fn is_unit_h(&self, h: &Forest) -> bool {
        h.is_empty()
    }
    fn is_unit_c(&self, c: &Forest) -> bool {
        c.is_empty()
    }
    fn coaction(&self, c: &Forest) -> Result<Vec<(Forest, Forest, Q)>> {
        Ok(forest_coaction(self.neg, c)
            .iter()
            .map(|((a, b), k)| (b.clone(), a.clone(), *k))
            .collect())
    }
}
