use std::cell::RefCell;
use std::collections::BTreeMap;

use rustc_hash::FxHashMap as HashMap;
use std::rc::Rc;

use num_traits::{One, Zero};

use super::PlusEngine;
use crate::error::{Error, Result};
use crate::linear::Q;
use crate::multiindex::{indices_up_to, MultiIndex};
use crate::trees::{sum_mul, Edge, Scaling, Tree, TreeSum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AntipodeVariant {
    /// `𝒜₊` on all trees, `ℓ`-sums cut at `|ℓ|_𝔰 ≤ cutoff`.
    FullTruncated(Q),
    /// `𝒜̄₊` with `π₊` on the root edges.
    Bar,
    /// `Ã₊`: root edges become `Ĵ`, `ℓ` summed up to the planted degree.
    Twisted,
    /// Connected antipode of the simplified structure.
    Simplified,
    /// Twisted antipode of the simplified structure.
    SimplifiedTwisted,
}

impl AntipodeVariant {
    pub fn parse(name: &str, cutoff: Option<Q>) -> Result<AntipodeVariant> {
        Ok(match name {
            "full" | "full-truncated" => AntipodeVariant::FullTruncated(
                cutoff.ok_or_else(|| Error::Domain("full variant needs a cutoff".into()))?,
            ),
            "bar" => AntipodeVariant::Bar,
            "twisted" => AntipodeVariant::Twisted,
            "simplified" => AntipodeVariant::Simplified,
            "simplified-twisted" => AntipodeVariant::SimplifiedTwisted,
            other => return Err(Error::Domain(format!("unknown antipode variant `{other}`"))),
        })
    }

    fn needs_positive(self) -> bool {
        !matches!(self, AntipodeVariant::FullTruncated(_))
    }
}

/// Memoised antipodes sharing one coproduct engine.
pub struct AntipodeEngine<'a> {
    plus: Rc<PlusEngine<'a>>,
    memo: RefCell<HashMap<(Tree, AntipodeVariant), Rc<TreeSum>>>,
}

fn neg_x_power(k: &MultiIndex) -> TreeSum {
    let sign = if k.total() % 2 == 0 {
        Q::one()
    } else {
        -Q::one()
    };
    TreeSum::term(Tree::monomial(k.clone()), sign)
}

impl<'a> AntipodeEngine<'a> {
    pub fn new(sc: &'a Scaling) -> Self {
        AntipodeEngine {
            plus: Rc::new(PlusEngine::new(sc)),
            memo: RefCell::default(),
        }
    }

    /// An engine reusing the coproduct memo of `plus`.
    pub fn with_plus(plus: Rc<PlusEngine<'a>>) -> Self {
        AntipodeEngine {
            plus,
            memo: RefCell::default(),
        }
    }

    pub fn plus(&self) -> &PlusEngine<'a> {
        &self.plus
    }

    pub fn plus_shared(&self) -> Rc<PlusEngine<'a>> {
        self.plus.clone()
    }

    fn sc(&self) -> &'a Scaling {
        self.plus.scaling()
    }

    /// Checked entry point; markers in the input are erased first.
    pub fn apply(&self, t: &Tree, v: AntipodeVariant) -> Result<TreeSum> {
        self.sc().validate(t)?;
        let t = t.erase_marks();
        if v.needs_positive() && !self.sc().is_positive(&t) {
            return Err(Error::Domain(format!(
                "{v:?} antipode needs a positive tree, got {t}"
            )));
        }
        if let AntipodeVariant::FullTruncated(c) = v {
            if c < Q::zero() {
                return Err(Error::Domain("cutoff must be non-negative".into()));
            }
        }
        Ok((*self.eval(&t, v)).clone())
    }

    /// Unchecked recursion on validated, unmarked trees in the variant's domain.
    pub fn eval(&self, t: &Tree, v: AntipodeVariant) -> Rc<TreeSum> {
        let key = (t.clone(), v);
        if let Some(r) = self.memo.borrow().get(&key) {
            return r.clone();
        }
        let mut acc = neg_x_power(t.root());
        for (e, c) in t.branches() {
            acc = sum_mul(&acc, &self.planted(e, c, v));
        }
        let out = Rc::new(acc);
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }

    fn planted(&self, e: &Edge, child: &Tree, v: AntipodeVariant) -> TreeSum {
        let sc = self.sc();
        let s = sc.s();
        let mut out = TreeSum::zero();
        match v {
            AntipodeVariant::FullTruncated(cut) => {
                let d = self.plus.full(child, cut);
                for l in indices_up_to(s, cut, true) {
                    let pre = neg_x_power(&l).scaled(&Q::new(-1, l.factorial()));
                    let el = e.shifted(&l);
                    for ((a, b), c) in d.iter() {
                        let left = TreeSum::single(Tree::planted(el.clone(), a.clone()));
                        out.add_scaled(&sum_mul(&sum_mul(&pre, &left), &self.eval(b, v)), c);
                    }
                }
            }
            AntipodeVariant::Bar => {
                for ((a, b), c) in self.plus.hat(child).iter() {
                    let alpha = sc.planted_deg(e, a);
                    for l in indices_up_to(s, alpha, false) {
                        let pre = neg_x_power(&l).scaled(&Q::new(-1, l.factorial()));
                        let left = TreeSum::single(Tree::planted(e.shifted(&l), a.clone()));
                        out.add_scaled(&sum_mul(&sum_mul(&pre, &left), &self.eval(b, v)), c);
                    }
                }
            }
            AntipodeVariant::Twisted => {
                let alpha = sc.planted_deg(e, child);
                let d = self.plus.hat(child);
                for l in indices_up_to(s, alpha, true) {
                    let pre = neg_x_power(&l).scaled(&Q::new(-1, l.factorial()));
                    let el = e.shifted(&l).hatted();
                    for ((a, b), c) in d.iter() {
                        let left = TreeSum::single(Tree::planted(el.clone(), a.clone()));
                        out.add_scaled(&sum_mul(&sum_mul(&pre, &left), &self.eval(b, v)), c);
                    }
                }
            }
            AntipodeVariant::Simplified | AntipodeVariant::SimplifiedTwisted => {
                let twisted = v == AntipodeVariant::SimplifiedTwisted;
                for ((a, b), c) in self.plus.simplified_hat(child).iter() {
                    if !twisted && sc.planted_deg(e, a) <= Q::zero() {
                        continue;
                    }
                    let edge = if twisted { e.hatted() } else { e.plain() };
                    let left = TreeSum::single(Tree::planted(edge, a.clone()));
                    out.add_scaled(&sum_mul(&left, &self.eval(b, v)), &-c);
                }
            }
        }
        out
    }

    /// `𝒜̄₊` by a degree-sorted worklist over `M(𝒜̄₊⊗id)Δ̄⁺ = 𝟏𝟏*`, without
    /// using multiplicativity.
    pub fn bar_worklist(&self, t: &Tree) -> Result<TreeSum> {
        let sc = self.sc();
        sc.validate(t)?;
        let t = t.erase_marks();
        if !sc.is_positive(&t) {
            return Err(Error::Domain(format!("Δ̄⁺ needs a positive tree, got {t}")));
        }
        let mut needed: BTreeMap<Tree, ()> = BTreeMap::new();
        let mut stack = vec![t.clone()];
        let mut coproducts: HashMap<Tree, Vec<(Tree, Tree, Q)>> = HashMap::default();
        while let Some(u) = stack.pop() {
            if needed.insert(u.clone(), ()).is_some() {
                continue;
            }
            let d = self.plus.bar(&u)?;
            let terms: Vec<(Tree, Tree, Q)> = d
                .iter()
                .filter(|((a, b), _)| !(a == &u && b.is_one()))
                .map(|((a, b), c)| (a.clone(), b.clone(), *c))
                .collect();
            for (a, _, _) in &terms {
                if !needed.contains_key(a) {
                    stack.push(a.clone());
                }
            }
            coproducts.insert(u, terms);
        }
        let mut order: Vec<Tree> = needed.into_keys().collect();
        order.sort_by(|a, b| sc.deg(a).cmp(&sc.deg(b)).then_with(|| a.cmp(b)));
        let mut values: HashMap<Tree, TreeSum> = HashMap::default();
        for u in order {
            let mut val = TreeSum::zero();
            if u.is_one() {
                val = TreeSum::single(u.clone());
            } else {
                for (a, b, c) in &coproducts[&u] {
                    let av = values
                        .get(a)
                        .ok_or_else(|| Error::Invariant(format!("worklist order broken at {a}")))?;
                    val.add_scaled(&sum_mul(av, &TreeSum::single(b.clone())), &-*c);
                }
            }
            values.insert(u, val);
        }
        Ok(values.remove(&t).expect("target computed"))
    }
}

/// `𝒜₊` in the requested variant.
pub fn antipode_plus(sc: &Scaling, t: &Tree, v: AntipodeVariant) -> Result<TreeSum> {
    AntipodeEngine::new(sc).apply(t, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minus_x_in_every_variant() {
        let sc = Scaling::example();
        let x = sc.parse("X").unwrap();
        for v in [
            AntipodeVariant::FullTruncated(Q::from_integer(2)),
            AntipodeVariant::Bar,
            AntipodeVariant::Twisted,
            AntipodeVariant::Simplified,
            AntipodeVariant::SimplifiedTwisted,
        ] {
            assert_eq!(
                antipode_plus(&sc, &x, v).unwrap(),
                TreeSum::term(x.clone(), -Q::one())
            );
            assert_eq!(
                antipode_plus(&sc, &Tree::one(1), v).unwrap(),
                TreeSum::single(Tree::one(1))
            );
        }
    }

    #[test]
    fn twisted_on_planted_unit() {
        let sc = Scaling::example();
        let t = sc.parse("J[t,0](1)").unwrap();
        let got = antipode_plus(&sc, &t, AntipodeVariant::Twisted).unwrap();
        let expect: TreeSum = [
            (sc.parse("J[t,0](1)").unwrap(), -Q::one()),
            (sc.parse("X*J[t,1](1)").unwrap(), Q::one()),
            (sc.parse("X^[2]*J[t,2](1)").unwrap(), Q::new(-1, 2)),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn worklist_matches_recursion() {
        let sc = Scaling::example();
        let eng = AntipodeEngine::new(&sc);
        for s in ["I[t,0](1)", "X*I[t,0](X)", "I[t,0](I[u,0](1))*I[u,0](1)"] {
            let t = sc.parse(s).unwrap();
            assert_eq!(
                eng.bar_worklist(&t).unwrap(),
                eng.apply(&t, AntipodeVariant::Bar).unwrap(),
                "{s}"
            );
        }
    }
}
