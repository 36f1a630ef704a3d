//! The recursion on `X^k` with the points kept symbolic.
//!
//! Polynomials live in `3(d+1)` variables ordered `(x, x̄, y)`.

use crate::hopf::PlusEngine;
use crate::linear::q_to_f64;
use crate::multiindex::{indices_up_to, MultiIndex};
use crate::targets::Poly;
use crate::trees::{Scaling, Tree};

/// `φ̄(X^k)`, `φ⁻(X^k)` at `y` and at `x̄`, and `φ⁺(X^k)`, next to their closed forms.
#[derive(Clone, Debug)]
pub struct SymbolicMonomial {
    pub k: MultiIndex,
    pub prep: Poly,
    pub minus: Poly,
    pub minus_at_xbar: Poly,
    pub plus: Poly,
    pub expected_prep: Poly,
    pub expected_minus_at_xbar: Poly,
    pub expected_plus: Poly,
}

impl SymbolicMonomial {
    /// Largest coefficient gap against the closed forms.
    pub fn max_gap(&self) -> f64 {
        self.prep
            .max_gap(&self.expected_prep)
            .max(self.minus_at_xbar.max_gap(&self.expected_minus_at_xbar))
            .max(self.plus.max_gap(&self.expected_plus))
    }
}

struct Vars {
    n: usize,
}

impl Vars {
    fn v(&self, block: usize, i: usize) -> Poly {
        Poly::var(3 * self.n, block * self.n + i)
    }

    /// `Π_i (a_i − b_i)^{k_i}` for variable blocks `a`, `b`.
    fn diff_power(&self, a: usize, b: usize, k: &MultiIndex) -> Poly {
        let mut acc = Poly::one(3 * self.n);
        for (i, &e) in k.entries().iter().enumerate() {
            let d = self.v(a, i).sub(&self.v(b, i));
            for _ in 0..e {
                acc = acc.mul(&d);
            }
        }
        acc
    }

    /// Replace the `y` block by block `to`.
    fn set_y(&self, p: &Poly, to: usize) -> Poly {
        let images: Vec<Poly> = (0..3 * self.n)
            .map(|j| {
                if j >= 2 * self.n {
                    self.v(to, j - 2 * self.n)
                } else {
                    Poly::var(3 * self.n, j)
                }
            })
            .collect();
        p.substitute(&images)
    }

    fn dy(&self, p: &Poly, l: &MultiIndex) -> Poly {
        let mut out = p.clone();
        for (i, &e) in l.entries().iter().enumerate() {
            for _ in 0..e {
                out = out.deriv(2 * self.n + i);
            }
        }
        out
    }
}

const X: usize = 0;
const XBAR: usize = 1;
const Y: usize = 2;

/// Runs the point-parameterised recursion on `X^k` with `φ_{x̄,y}(X^m) = (y−x̄)^m`.
pub fn symbolic_monomial(sc: &Scaling, k: &MultiIndex) -> SymbolicMonomial {
    let n = sc.d_plus_1();
    let vars = Vars { n };
    let phi = |m: &MultiIndex| vars.diff_power(Y, XBAR, m);
    let eng = PlusEngine::new(sc);
    let t = Tree::monomial(k.clone());
    debug_assert!(eng.reduced(&t, false).is_zero());
    let minus_of = |m: &MultiIndex| -> Poly {
        if m.is_zero() {
            return Poly::one(3 * n);
        }
        let bar = phi(m);
        let mut acc = Poly::zero(3 * n);
        for l in indices_up_to(sc.s(), sc.norm_q(m), false) {
            let coeff = vars.set_y(&vars.dy(&bar, &l), X);
            let term = vars
                .diff_power(Y, X, &l)
                .mul(&coeff)
                .scale(1.0 / l.factorial() as f64);
            acc = acc.add(&term);
        }
        acc.scale(-1.0)
    };
    let prep = phi(k);
    let minus = minus_of(k);
    let minus_at_xbar = vars.set_y(&minus, XBAR);
    let mut plus = Poly::zero(3 * n);
    for ((a, b), c) in eng.hat(&t).iter() {
        let mb = vars.set_y(&minus_of(b.root()), XBAR);
        plus = plus.add(&phi(a.root()).mul(&mb).scale(q_to_f64(c)));
    }
    SymbolicMonomial {
        k: k.clone(),
        prep,
        minus,
        minus_at_xbar,
        plus,
        expected_prep: vars.diff_power(Y, XBAR, k),
        expected_minus_at_xbar: vars.diff_power(XBAR, X, k),
        expected_plus: vars.diff_power(Y, X, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_hold_exactly() {
        let sc = Scaling::example();
        for e in 0..=4 {
            let r = symbolic_monomial(&sc, &MultiIndex::new(vec![e]));
            assert_eq!(r.max_gap(), 0.0, "k = {e}");
        }
    }
}
