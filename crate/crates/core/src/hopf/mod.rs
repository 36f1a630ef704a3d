//! Positive coproducts, coactions and antipodes on decorated trees, plus the
//! Butcher–Connes–Kreimer coproduct on plain rooted trees.

mod antipode;
pub mod ck;

pub use antipode::{antipode_plus, AntipodeEngine, AntipodeVariant};

use rustc_hash::FxHashMap as HashMap;
use std::cell::RefCell;
use std::rc::Rc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linear::{LinComb, Q};
use crate::multiindex::{indices_up_to, MultiIndex};
use crate::trees::{tensor_mul, Edge, Scaling, TensorSum, Tree, TripleSum};

/// Which version of `Δ⁺` to compute.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoproductMode {
    /// All terms, with the `ℓ`-sums cut at `|ℓ|_𝔰 ≤ cutoff`.
    FullTruncated(Q),
    /// `Δ̂⁺ = (id⊗π₊)Δ⁺`.
    Hat,
    /// `Δ̄⁺ = (π₊⊗π₊)Δ⁺`, on positive trees only.
    Bar,
    /// `Δ⁺_red`.
    Reduced,
    /// Coaction with `Δ̂⁺X_i = X_i⊗𝟏`.
    SimplifiedHat,
    /// Connected coproduct on products of `𝒥`'s.
    SimplifiedBar,
}

impl CoproductMode {
    pub fn parse(name: &str, cutoff: Option<Q>) -> Result<CoproductMode> {
        Ok(match name {
            "full" | "full-truncated" => CoproductMode::FullTruncated(
                cutoff.ok_or_else(|| Error::Domain("full mode needs a cutoff".into()))?,
            ),
            "hat" => CoproductMode::Hat,
            "bar" => CoproductMode::Bar,
            "reduced" | "red" => CoproductMode::Reduced,
            "simplified-hat" => CoproductMode::SimplifiedHat,
            "simplified-bar" => CoproductMode::SimplifiedBar,
            other => return Err(Error::Domain(format!("unknown coproduct mode `{other}`"))),
        })
    }
}

type Memo<K> = RefCell<HashMap<K, Rc<TensorSum>>>;

/// Memoised evaluator for the positive coproducts over one scaling.
///
/// Inputs are assumed validated; planted markers are ignored.
pub struct PlusEngine<'a> {
    sc: &'a Scaling,
    hat: Memo<Tree>,
    simplified: Memo<Tree>,
    full: Memo<(Tree, Q)>,
}

fn x_power(k: &MultiIndex) -> Tree {
    Tree::monomial(k.clone())
}

fn inv_factorial(l: &MultiIndex) -> Q {
    Q::new(1, l.factorial())
}

impl<'a> PlusEngine<'a> {
    pub fn new(sc: &'a Scaling) -> Self {
        PlusEngine {
            sc,
            hat: RefCell::default(),
            simplified: RefCell::default(),
            full: RefCell::default(),
        }
    }

    pub fn scaling(&self) -> &'a Scaling {
        self.sc
    }

    fn one(&self) -> Tree {
        Tree::one(self.sc.d_plus_1())
    }

    /// `Δ⁺X^k = Σ_m binom(k,m) X^m⊗X^{k−m}`.
    fn binomial_poly(&self, k: &MultiIndex) -> TensorSum {
        let mut out = TensorSum::zero();
        for m in k.below() {
            let rest = k.checked_sub(&m).expect("m ≤ k");
            out.add_term(
                (x_power(&m), x_power(&rest)),
                Q::from_integer(MultiIndex::binomial(k, &m)),
            );
        }
        out
    }

    /// Multiplicative assembly over root factors.
    fn assemble<F: FnMut(&Edge, &Tree) -> TensorSum>(
        &self,
        t: &Tree,
        poly: TensorSum,
        mut planted: F,
    ) -> TensorSum {
        let mut acc = poly;
        for (e, c) in t.branches() {
            acc = tensor_mul(&acc, &planted(e, c));
        }
        acc
    }

    /// `Δ̂⁺τ`.
    pub fn hat(&self, t: &Tree) -> Rc<TensorSum> {
        if let Some(v) = self.hat.borrow().get(t) {
            return v.clone();
        }
        let out = self.assemble(t, self.binomial_poly(t.root()), |e, c| {
            self.hat_planted(e, c, false)
        });
        let out = Rc::new(out);
        self.hat.borrow_mut().insert(t.clone(), out.clone());
        out
    }

    /// `Δ̂⁺I_e(τ)`, or the simplified variant.
    fn hat_planted(&self, e: &Edge, child: &Tree, simplified: bool) -> TensorSum {
        let e = e.plain();
        let inner = if simplified {
            self.simplified_hat(child)
        } else {
            self.hat(child)
        };
        let mut out = TensorSum::zero();
        for ((l, r), c) in inner.iter() {
            out.add_term((Tree::planted(e.clone(), l.clone()), r.clone()), *c);
        }
        let alpha = self.sc.planted_deg(&e, child);
        for l in indices_up_to(self.sc.s(), alpha, false) {
            out.add_term(
                (x_power(&l), Tree::planted(e.shifted(&l), child.clone())),
                inv_factorial(&l),
            );
        }
        out
    }

    /// `Δ⁺τ` with `ℓ`-sums restricted to `|ℓ|_𝔰 ≤ cutoff`.
    pub fn full(&self, t: &Tree, cutoff: Q) -> Rc<TensorSum> {
        let key = (t.clone(), cutoff);
        if let Some(v) = self.full.borrow().get(&key) {
            return v.clone();
        }
        let out = self.assemble(t, self.binomial_poly(t.root()), |e, c| {
            let e = e.plain();
            let inner = self.full(c, cutoff);
            let mut out = TensorSum::zero();
            for ((l, r), coef) in inner.iter() {
                out.add_term((Tree::planted(e.clone(), l.clone()), r.clone()), *coef);
            }
            for l in indices_up_to(self.sc.s(), cutoff, true) {
                out.add_term(
                    (x_power(&l), Tree::planted(e.shifted(&l), c.clone())),
                    inv_factorial(&l),
                );
            }
            out
        });
        let out = Rc::new(out);
        self.full.borrow_mut().insert(key, out.clone());
        out
    }

    /// `Δ̄⁺τ = (π₊⊗id)Δ̂⁺τ` for positive `τ`.
    pub fn bar(&self, t: &Tree) -> Result<TensorSum> {
        if !self.sc.is_positive(t) {
            return Err(Error::Domain(format!("Δ̄⁺ needs a positive tree, got {t}")));
        }
        Ok(self.hat(t).filter(|(l, _)| self.sc.is_positive(l)))
    }

    /// Simplified coaction: `X_i ↦ X_i⊗𝟏`, `ℓ = 0` term kept on planted trees.
    pub fn simplified_hat(&self, t: &Tree) -> Rc<TensorSum> {
        if let Some(v) = self.simplified.borrow().get(t) {
            return v.clone();
        }
        let poly = TensorSum::single((x_power(t.root()), self.one()));
        let out = Rc::new(self.assemble(t, poly, |e, c| self.hat_planted(e, c, true)));
        self.simplified.borrow_mut().insert(t.clone(), out.clone());
        out
    }

    /// `Δ̄⁺𝒥_e(τ) = (𝒥_e⊗id)Δ̂⁺τ + 𝟏⊗𝒥_e(τ)`, multiplicative over root factors.
    pub fn simplified_bar(&self, t: &Tree) -> Result<TensorSum> {
        if !t.root().is_zero() {
            return Err(Error::Domain(format!(
                "the simplified positive algebra has no polynomials, got {t}"
            )));
        }
        if !self.sc.is_positive(t) {
            return Err(Error::Domain(format!("Δ̄⁺ needs a positive tree, got {t}")));
        }
        let poly = TensorSum::single((self.one(), self.one()));
        Ok(self.assemble(t, poly, |e, c| {
            let e = e.plain();
            let mut out = TensorSum::zero();
            for ((l, r), coef) in self.simplified_hat(c).iter() {
                let left = Tree::planted(e.clone(), l.clone());
                if self.sc.is_positive(&left) {
                    out.add_term((left, r.clone()), *coef);
                }
            }
            out.add_term((self.one(), Tree::planted(e.clone(), c.clone())), Q::one());
            out
        }))
    }

    /// `Δ⁺_red τ`; with `simplified`, the polynomial subtraction keeps only `k = k₀`.
    pub fn reduced(&self, t: &Tree, simplified: bool) -> TensorSum {
        if t.is_monomial() {
            return TensorSum::zero();
        }
        let mut out = if simplified {
            (*self.simplified_hat(t)).clone()
        } else {
            (*self.hat(t)).clone()
        };
        out.add_term((t.clone(), self.one()), -Q::one());
        out = out - self.polynomial_left_legs(t, simplified);
        out
    }

    /// `Σ (1/ℓ̄!) binom(k₀,k) X^{k+Σℓᵢ} ⊗ X^{k₀−k} Π π₊I_{(𝔱ᵢ,pᵢ+ℓᵢ)}(τᵢ)`.
    fn polynomial_left_legs(&self, t: &Tree, simplified: bool) -> TensorSum {
        let k0 = t.root();
        let mut acc = if simplified {
            TensorSum::single((x_power(k0), self.one()))
        } else {
            self.binomial_poly(k0)
        };
        for (e, c) in t.branches() {
            let e = e.plain();
            let alpha = self.sc.planted_deg(&e, c);
            let mut factor = TensorSum::zero();
            for l in indices_up_to(self.sc.s(), alpha, false) {
                factor.add_term(
                    (x_power(&l), Tree::planted(e.shifted(&l), c.clone())),
                    inv_factorial(&l),
                );
            }
            acc = tensor_mul(&acc, &factor);
        }
        acc
    }
}

/// `Δ⁺` in the requested mode.
pub fn delta_plus(sc: &Scaling, t: &Tree, mode: CoproductMode) -> Result<TensorSum> {
    sc.validate(t)?;
    let t = t.erase_marks();
    let eng = PlusEngine::new(sc);
    Ok(match mode {
        CoproductMode::FullTruncated(c) => {
            if c < Q::zero() {
                return Err(Error::Domain("cutoff must be non-negative".into()));
            }
            (*eng.full(&t, c)).clone()
        }
        CoproductMode::Hat => (*eng.hat(&t)).clone(),
        CoproductMode::Bar => eng.bar(&t)?,
        CoproductMode::Reduced => eng.reduced(&t, false),
        CoproductMode::SimplifiedHat => (*eng.simplified_hat(&t)).clone(),
        CoproductMode::SimplifiedBar => eng.simplified_bar(&t)?,
    })
}

/// `Δ⁺_red τ`.
pub fn delta_plus_red(sc: &Scaling, t: &Tree) -> Result<TensorSum> {
    delta_plus(sc, t, CoproductMode::Reduced)
}

/// `(Δ̂⁺⊗id)Δ̂⁺τ` and `(id⊗Δ̄⁺)Δ̂⁺τ`.
pub fn coaction_sides(eng: &PlusEngine<'_>, t: &Tree) -> Result<(TripleSum, TripleSum)> {
    let mut lhs = TripleSum::zero();
    let mut rhs = TripleSum::zero();
    for ((a, b), c) in eng.hat(t).iter() {
        for ((a1, a2), c2) in eng.hat(a).iter() {
            lhs.add_term((a1.clone(), a2.clone(), b.clone()), c * c2);
        }
        for ((b1, b2), c2) in eng.bar(b)?.iter() {
            rhs.add_term((a.clone(), b1.clone(), b2.clone()), c * c2);
        }
    }
    Ok((lhs, rhs))
}

/// Exact comparison of both sides of the comodule identity on `t`.
pub fn coaction_compose_check(sc: &Scaling, t: &Tree) -> Result<bool> {
    sc.validate(t)?;
    let eng = PlusEngine::new(sc);
    let (l, r) = coaction_sides(&eng, &t.erase_marks())?;
    Ok(l == r)
}

/// `(id⊗𝟏*)` applied to a tensor sum.
pub fn right_counit(s: &TensorSum) -> LinComb<Tree> {
    let mut out = LinComb::zero();
    for ((l, r), c) in s.iter() {
        if r.is_one() {
            out.add_term(l.clone(), *c);
        }
    }
    out
}

/// `(𝟏*⊗id)` applied to a tensor sum.
pub fn left_counit(s: &TensorSum) -> LinComb<Tree> {
    let mut out = LinComb::zero();
    for ((l, r), c) in s.iter() {
        if l.is_one() {
            out.add_term(r.clone(), *c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::format_sum;

    fn sc() -> Scaling {
        Scaling::example()
    }

    fn tensor(sc: &Scaling, terms: &[(i64, i64, &str, &str)]) -> TensorSum {
        terms
            .iter()
            .map(|&(n, d, l, r)| ((sc.parse(l).unwrap(), sc.parse(r).unwrap()), Q::new(n, d)))
            .collect()
    }

    #[test]
    fn x_is_primitive() {
        let sc = sc();
        let x = sc.parse("X").unwrap();
        let expect = tensor(&sc, &[(1, 1, "X", "1"), (1, 1, "1", "X")]);
        for mode in [
            CoproductMode::FullTruncated(Q::from_integer(3)),
            CoproductMode::Hat,
            CoproductMode::Bar,
        ] {
            assert_eq!(delta_plus(&sc, &x, mode).unwrap(), expect);
        }
        let simplified = delta_plus(&sc, &x, CoproductMode::SimplifiedHat).unwrap();
        assert_eq!(simplified, tensor(&sc, &[(1, 1, "X", "1")]));
    }

    #[test]
    fn x_squared_full() {
        let sc = sc();
        let d = delta_plus(
            &sc,
            &sc.parse("X^[2]").unwrap(),
            CoproductMode::FullTruncated(Q::from_integer(2)),
        )
        .unwrap();
        assert_eq!(
            d,
            tensor(
                &sc,
                &[(1, 1, "X^[2]", "1"), (1, 1, "1", "X^[2]"), (2, 1, "X", "X")]
            )
        );
    }

    #[test]
    fn planted_hat() {
        let sc = sc();
        let d = delta_plus(&sc, &sc.parse("I[t,0](1)").unwrap(), CoproductMode::Hat).unwrap();
        let expect = tensor(
            &sc,
            &[
                (1, 1, "1", "I[t,0](1)"),
                (1, 1, "I[t,0](1)", "1"),
                (1, 1, "X", "I[t,1](1)"),
            ],
        );
        assert_eq!(d, expect, "{}", format_sum(&d, false));
    }

    #[test]
    fn bar_rejects_non_positive() {
        let sc = sc();
        let t = sc.parse("I[t,0](1)*I[l,0](1)").unwrap();
        assert!(matches!(
            delta_plus(&sc, &t, CoproductMode::Bar),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn reduced_examples() {
        let sc = sc();
        assert!(delta_plus_red(&sc, &sc.parse("X^[3]").unwrap())
            .unwrap()
            .is_zero());
        assert!(delta_plus_red(&sc, &sc.parse("I[t,0](1)").unwrap())
            .unwrap()
            .is_zero());
        let d = delta_plus_red(&sc, &sc.parse("I[t,0](X)").unwrap()).unwrap();
        assert_eq!(d, tensor(&sc, &[(1, 1, "I[t,0](1)", "X")]));
    }

    #[test]
    fn reduced_on_planted_matches_augmentation() {
        let sc = sc();
        let eng = PlusEngine::new(&sc);
        for s in [
            "I[t,0](X*I[t,1](1))",
            "I[u,0](I[t,0](X^[2]))",
            "I[t,1](I[l,0](1)*I[u,0](1))",
        ] {
            let t = sc.parse(s).unwrap();
            let (e, c) = &t.branches()[0];
            let mut expect = TensorSum::zero();
            for ((l, r), coef) in eng.hat(c).iter() {
                if !r.is_one() {
                    expect.add_term((Tree::planted(e.clone(), l.clone()), r.clone()), *coef);
                }
            }
            assert_eq!(eng.reduced(&t, false), expect, "{s}");
        }
    }

    #[test]
    fn comodule_examples() {
        let sc = sc();
        for s in ["X^[3]", "I[t,0](1)", "I[t,0](X*I[t,1](1))"] {
            assert!(
                coaction_compose_check(&sc, &sc.parse(s).unwrap()).unwrap(),
                "{s}"
            );
        }
    }
}
