use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;

use rustc_hash::FxHashMap as HashMap;

use super::{BirkhoffResult, Recursion};
use crate::error::{Error, Result};
use crate::hopf::PlusEngine;
use crate::linear::q_to_f64;
use crate::multiindex::MultiIndex;
use crate::targets::{GaussPolyFn, Poly};
use crate::trees::Edge;
use crate::trees::{Scaling, TensorSum, Tree};

/// A family `x̄ ↦ φ_{x̄}` of characters on decorated trees with values in
/// functions of `y`.
pub trait PointFamily {
    fn scaling(&self) -> &Scaling;
    /// `y ↦ φ_{x̄,y}(τ)`; planted markers are ignored.
    fn eval(&self, xbar: &[f64], t: &Tree) -> Result<GaussPolyFn>;
    /// As [`PointFamily::eval`], possibly sharing a cached value.
    fn eval_shared(&self, xbar: &[f64], t: &Tree) -> Result<Rc<GaussPolyFn>> {
        self.eval(xbar, t).map(Rc::new)
    }
}

/// Largest violation of `φ_{x̄,y}(X_i) = y_i − x̄_i` and
/// `φ_{x̄}(I_{(𝔱,ℓ)}τ) = D^ℓ φ_{x̄}(I_{(𝔱,0)}τ)` over the planted factors of `trees`.
pub fn assumption_gap<F: PointFamily>(fam: &F, xbar: &[f64], trees: &[Tree]) -> Result<f64> {
    let sc = fam.scaling();
    let n = sc.d_plus_1();
    let mut gap: f64 = 0.0;
    for i in 0..n {
        let mut expect = Poly::var(n, i);
        expect.add_term(vec![0; n], -xbar[i]);
        gap = gap.max(
            fam.eval(xbar, &Tree::x(n, i))?
                .max_gap(&GaussPolyFn::from_poly(expect)),
        );
    }
    for t in trees {
        for p in t.planted_factors() {
            let (e, c) = &p.branches()[0];
            if e.deriv.is_zero() {
                continue;
            }
            let base_edge = Edge {
                deriv: MultiIndex::zeros(n),
                ..e.clone()
            };
            let base = Tree::planted(base_edge, c.clone());
            let lhs = fam.eval(xbar, &p)?;
            let rhs = fam.eval(xbar, &base)?.deriv_multi(&e.deriv);
            gap = gap.max(lhs.max_gap(&rhs));
        }
    }
    Ok(gap)
}

/// Memoised `φ̄_{x,x̄}`, `φ⁻_{x,x̄}` and `φ⁺_{x,x̄}` for one pair of points.
///
/// In simplified mode the points are `x = x̄ = 0` and the simplified
/// coproducts drive the recursion.
pub struct RsBogoliubov<'a, F: PointFamily> {
    fam: &'a F,
    plus: Rc<PlusEngine<'a>>,
    x: Vec<f64>,
    xbar: Vec<f64>,
    simplified: bool,
    prep: RefCell<HashMap<Tree, GaussPolyFn>>,
    minus: RefCell<HashMap<Tree, GaussPolyFn>>,
    at_xbar: RefCell<HashMap<Tree, f64>>,
}

impl<'a, F: PointFamily> RsBogoliubov<'a, F> {
    pub fn new(fam: &'a F, x: &[f64], xbar: &[f64]) -> Result<Self> {
        Self::with_engine(fam, Rc::new(PlusEngine::new(fam.scaling())), x, xbar)
    }

    /// A recursion reusing the coproduct memo of `plus` across point pairs.
    pub fn with_engine(
        fam: &'a F,
        plus: Rc<PlusEngine<'a>>,
        x: &[f64],
        xbar: &[f64],
    ) -> Result<Self> {
        let n = fam.scaling().d_plus_1();
        for p in [x, xbar] {
            if p.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.len(),
                });
            }
        }
        Ok(RsBogoliubov {
            fam,
            plus,
            x: x.to_vec(),
            xbar: xbar.to_vec(),
            simplified: false,
            prep: RefCell::default(),
            minus: RefCell::default(),
            at_xbar: RefCell::default(),
        })
    }

    /// Recursion on the simplified structures, based at the origin.
    pub fn simplified(fam: &'a F) -> Self {
        let n = fam.scaling().d_plus_1();
        let mut r = RsBogoliubov::new(fam, &vec![0.0; n], &vec![0.0; n])
            .expect("origin has the right dimension");
        r.simplified = true;
        r
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn xbar(&self) -> &[f64] {
        &self.xbar
    }

    fn sc(&self) -> &Scaling {
        self.fam.scaling()
    }

    fn dim(&self) -> usize {
        self.sc().d_plus_1()
    }

    fn checked(&self, t: &Tree) -> Result<Tree> {
        self.sc().validate(t)?;
        Ok(t.erase_marks())
    }

    fn phi(&self, t: &Tree) -> Result<Rc<GaussPolyFn>> {
        self.fam.eval_shared(&self.xbar, t)
    }

    /// The coaction pairing `φ` with `φ⁻(·)(x̄)` in this mode.
    fn coaction(&self, t: &Tree) -> Rc<TensorSum> {
        if self.simplified {
            self.plus.simplified_hat(t)
        } else {
            self.plus.hat(t)
        }
    }

    /// `φ̄_{x,x̄,·}(τ) = φ_{x̄,·}(τ) + Σ φ_{x̄,·}(τ′) φ⁻_{x,x̄,x̄}(τ″)` over `Δ⁺_red`;
    /// zero on `𝟏`.
    pub fn prep(&self, t: &Tree) -> Result<GaussPolyFn> {
        let t = self.checked(t)?;
        self.prep_rec(&t)
    }

    fn prep_rec(&self, t: &Tree) -> Result<GaussPolyFn> {
        if t.is_one() {
            return Ok(GaussPolyFn::zero(self.dim()));
        }
        if let Some(v) = self.prep.borrow().get(t) {
            return Ok(v.clone());
        }
        let mut acc = (*self.phi(t)?).clone();
        let key = |u: &Tree| (u.edge_count(), u.root().total());
        for ((a, b), c) in self.plus.reduced(t, self.simplified).iter() {
            if key(b) >= key(t) {
                return Err(Error::Invariant(format!(
                    "reduced right leg {b} does not descend from {t}"
                )));
            }
            let m = self.minus_at_xbar_rec(b)?;
            if m != 0.0 {
                acc.add_scaled(&*self.phi(a)?, m * q_to_f64(c));
            }
        }
        self.prep.borrow_mut().insert(t.clone(), acc.clone());
        Ok(acc)
    }

    /// `φ⁻_{x,x̄,·}(τ) = −T_{|τ|_𝔰,x,·}(φ̄_{x,x̄,·}(τ))` on positive trees, zero elsewhere.
    pub fn minus(&self, t: &Tree) -> Result<GaussPolyFn> {
        let t = self.checked(t)?;
        self.minus_rec(&t)
    }

    fn minus_rec(&self, t: &Tree) -> Result<GaussPolyFn> {
        if t.is_one() {
            return Ok(GaussPolyFn::one(self.dim()));
        }
        if !self.sc().is_positive(t) {
            return Ok(GaussPolyFn::zero(self.dim()));
        }
        if let Some(v) = self.minus.borrow().get(t) {
            return Ok(v.clone());
        }
        let bar = self.prep_rec(t)?;
        let v = bar
            .taylor_jet(self.sc().deg(t), &self.x, self.sc().s())
            .scale(-1.0);
        self.minus.borrow_mut().insert(t.clone(), v.clone());
        Ok(v)
    }

    /// `φ⁻_{x,x̄,x̄}(τ)`.
    pub fn minus_at_xbar(&self, t: &Tree) -> Result<f64> {
        let t = self.checked(t)?;
        self.minus_at_xbar_rec(&t)
    }

    fn minus_at_xbar_rec(&self, t: &Tree) -> Result<f64> {
        if let Some(v) = self.at_xbar.borrow().get(t) {
            return Ok(*v);
        }
        let v = self.minus_rec(t)?.eval(&self.xbar);
        self.at_xbar.borrow_mut().insert(t.clone(), v);
        Ok(v)
    }

    /// `φ⁺_{x,x̄,·} = (φ_{x̄,·}⊗φ⁻_{x,x̄,x̄})Δ̂⁺`.
    pub fn plus(&self, t: &Tree) -> Result<GaussPolyFn> {
        let t = self.checked(t)?;
        let mut acc = GaussPolyFn::zero(self.dim());
        for ((a, b), c) in self.coaction(&t).iter() {
            let m = self.minus_at_xbar_rec(b)?;
            if m != 0.0 {
                acc.add_scaled(&*self.phi(a)?, m * q_to_f64(c));
            }
        }
        Ok(acc)
    }

    /// Branchwise `(φ̄ − T_{|·|,x,·}φ̄)` over the root factors of `τ`.
    pub fn explicit_plus(&self, t: &Tree) -> Result<GaussPolyFn> {
        let t = self.checked(t)?;
        let root = Tree::monomial(t.root().clone());
        let mut acc = self.one_minus_jet(&root)?;
        for p in t.planted_factors() {
            acc = acc.mul(&self.one_minus_jet(&p)?);
        }
        Ok(acc)
    }

    fn one_minus_jet(&self, t: &Tree) -> Result<GaussPolyFn> {
        if t.is_one() {
            return Ok(GaussPolyFn::one(self.dim()));
        }
        let bar = self.prep_rec(t)?;
        Ok(bar.sub(&bar.taylor_jet(self.sc().deg(t), &self.x, self.sc().s())))
    }

    /// All three maps on `trees`, positive trees only for the counterterm.
    pub fn run(&self, trees: &[Tree]) -> Result<BirkhoffResult<Tree, Tree, GaussPolyFn>> {
        let mut counterterm = BTreeMap::new();
        let mut renormalised = BTreeMap::new();
        let mut preparation = BTreeMap::new();
        for t in trees {
            let u = self.checked(t)?;
            if self.sc().is_positive(&u) {
                counterterm.insert(u.clone(), self.minus_rec(&u)?);
            }
            renormalised.insert(u.clone(), self.plus(&u)?);
            preparation.insert(u.clone(), self.prep_rec(&u)?);
        }
        Ok(BirkhoffResult {
            counterterm,
            renormalised,
            preparation,
            provenance: if self.simplified {
                Recursion::RsSimplified
            } else {
                Recursion::Rs
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{CanonicalPi, KernelAssignment};

    #[test]
    fn monomial_closed_forms() {
        let sc = Scaling::example();
        let pi = CanonicalPi::new(&sc, KernelAssignment::standard(&sc).unwrap());
        let (x, xbar) = (0.0, 1.0);
        let r = RsBogoliubov::new(&pi, &[x], &[xbar]).unwrap();
        let x2 = sc.parse("X^[2]").unwrap();
        assert!((r.minus_at_xbar(&x2).unwrap() - 1.0).abs() < 1e-12);
        assert!((r.plus(&x2).unwrap().eval(&[0.5]) - 0.25).abs() < 1e-12);
        assert!((r.prep(&x2).unwrap().eval(&[0.5]) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn negative_branch_has_no_counterterm() {
        let sc = Scaling::example();
        let pi = CanonicalPi::new(&sc, KernelAssignment::standard(&sc).unwrap());
        let r = RsBogoliubov::simplified(&pi);
        let t = sc.parse("I[l,0](1)*I[t,0](1)").unwrap();
        assert!(r.minus(&t).unwrap().is_zero());
        let x = sc.parse("X").unwrap();
        assert!(
            r.plus(&x)
                .unwrap()
                .max_gap(&GaussPolyFn::from_poly(Poly::var(1, 0)))
                < 1e-12
        );
    }
}
