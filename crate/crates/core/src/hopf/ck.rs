//! Plain rooted trees with the Butcher–Connes–Kreimer coproduct.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::linear::{bilinear, LinComb, Q};
use crate::trees::Tree;

/// `B₊` of a sorted list of children.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CkTree(Vec<CkTree>);

/// Commutative product of plain trees; empty is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CkForest(Vec<CkTree>);

pub type CkSum = LinComb<CkForest>;
pub type CkTensor = LinComb<(CkForest, CkForest)>;

impl CkTree {
    /// The single node `•`.
    pub fn node() -> CkTree {
        CkTree(Vec::new())
    }

    pub fn graft(forest: &CkForest) -> CkTree {
        CkTree(forest.0.clone())
    }

    pub fn children(&self) -> &[CkTree] {
        &self.0
    }

    pub fn vertices(&self) -> usize {
        1 + self.0.iter().map(CkTree::vertices).sum::<usize>()
    }

    /// Forgets an undecorated tree's edge structure into a plain tree.
    pub fn from_tree(t: &Tree) -> Result<CkTree> {
        let mut label = None;
        fn go(t: &Tree, label: &mut Option<String>) -> Result<CkTree> {
            if !t.root().is_zero() {
                return Err(Error::Domain(format!(
                    "decorated input: node decoration in {t}"
                )));
            }
            let mut kids = Vec::new();
            for (e, c) in t.branches() {
                if !e.deriv.is_zero() {
                    return Err(Error::Domain(format!(
                        "decorated input: edge derivative in {t}"
                    )));
                }
                match label {
                    Some(l) if l.as_str() != &*e.label => {
                        return Err(Error::Domain("decorated input: several edge types".into()))
                    }
                    _ => *label = Some(e.label.to_string()),
                }
                kids.push(go(c, label)?);
            }
            kids.sort();
            Ok(CkTree(kids))
        }
        go(t, &mut label)
    }

    /// Every plain tree with exactly `n` vertices.
    pub fn all_with_vertices(n: usize) -> Vec<CkTree> {
        let mut by_size: Vec<Vec<CkTree>> = vec![Vec::new(), vec![CkTree::node()]];
        for m in 2..=n {
            let forests = forests_with_vertices(m - 1, &by_size);
            by_size.push(forests.into_iter().map(|f| CkTree(f.0)).collect());
        }
        by_size.get(n).cloned().unwrap_or_default()
    }
}

/// Multisets of trees with `n` vertices in total, from per-size lists.
fn forests_with_vertices(n: usize, by_size: &[Vec<CkTree>]) -> Vec<CkForest> {
    let mut all: Vec<CkTree> = Vec::new();
    for list in by_size.iter().take(n + 1) {
        all.extend(list.iter().cloned());
    }
    all.sort();
    let mut out = Vec::new();
    fn rec(
        start: usize,
        left: usize,
        all: &[CkTree],
        cur: &mut Vec<CkTree>,
        out: &mut Vec<CkForest>,
    ) {
        if left == 0 {
            out.push(CkForest::new(cur.clone()));
            return;
        }
        for i in start..all.len() {
            let v = all[i].vertices();
            if v <= left {
                cur.push(all[i].clone());
                rec(i, left - v, all, cur, out);
                cur.pop();
            }
        }
    }
    rec(0, n, &all, &mut Vec::new(), &mut out);
    out
}

impl CkForest {
    pub fn new(mut trees: Vec<CkTree>) -> CkForest {
        trees.sort();
        CkForest(trees)
    }

    pub fn unit() -> CkForest {
        CkForest(Vec::new())
    }

    pub fn single(t: CkTree) -> CkForest {
        CkForest(vec![t])
    }

    pub fn trees(&self) -> &[CkTree] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertices(&self) -> usize {
        self.0.iter().map(CkTree::vertices).sum()
    }

    pub fn mul(&self, other: &CkForest) -> CkForest {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        CkForest::new(v)
    }
}

impl fmt::Display for CkTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "•");
        }
        write!(f, "B(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for CkTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CkForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for CkForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn tensor_mul(a: &CkTensor, b: &CkTensor) -> CkTensor {
    bilinear(a, b, |(l1, r1), (l2, r2)| (l1.mul(l2), r1.mul(r2)))
}

/// `Δ_CK(τ) = 𝟏⊗τ + (B₊⊗id)Δ_CK(τ₁⋯τₙ)`; left legs are trunks, right legs pruned forests.
pub fn ck_coproduct_tree(t: &CkTree) -> CkTensor {
    let inner = ck_coproduct(&CkForest(t.0.clone()));
    let mut out = CkTensor::single((CkForest::unit(), CkForest::single(t.clone())));
    for ((l, r), c) in inner.iter() {
        out.add_term((CkForest::single(CkTree::graft(l)), r.clone()), *c);
    }
    out
}

/// Multiplicative extension of [`ck_coproduct_tree`].
pub fn ck_coproduct(f: &CkForest) -> CkTensor {
    let mut acc = CkTensor::single((CkForest::unit(), CkForest::unit()));
    for t in f.trees() {
        acc = tensor_mul(&acc, &ck_coproduct_tree(t));
    }
    acc
}

/// Reduced coproduct `Δ − 𝟏⊗τ − τ⊗𝟏` on a non-unit forest.
pub fn ck_reduced(f: &CkForest) -> CkTensor {
    let mut d = ck_coproduct(f);
    d.add_term((CkForest::unit(), f.clone()), -Q::one());
    d.add_term((f.clone(), CkForest::unit()), -Q::one());
    d
}

/// Antipode `A(τ) = −τ − Σ' A(τ′)τ″`.
pub fn ck_antipode(f: &CkForest) -> CkSum {
    if f.is_unit() {
        return CkSum::single(CkForest::unit());
    }
    if f.trees().len() > 1 {
        let mut acc = CkSum::single(CkForest::unit());
        for t in f.trees() {
            let a = ck_antipode(&CkForest::single(t.clone()));
            acc = bilinear(&acc, &a, |x, y| x.mul(y));
        }
        return acc;
    }
    let mut out = CkSum::term(f.clone(), -Q::one());
    for ((l, r), c) in ck_reduced(f).iter() {
        let a = ck_antipode(l);
        for (k, v) in a.iter() {
            out.add_term(k.mul(r), -(*v * *c));
        }
    }
    out
}

/// `(id⊗Δ)Δ` and `(Δ⊗id)Δ` agree on `f`.
pub fn ck_coassociative(f: &CkForest) -> bool {
    let d = ck_coproduct(f);
    let mut lhs: LinComb<(CkForest, CkForest, CkForest)> = LinComb::zero();
    let mut rhs: LinComb<(CkForest, CkForest, CkForest)> = LinComb::zero();
    for ((a, b), c) in d.iter() {
        for ((a1, a2), c2) in ck_coproduct(a).iter() {
            lhs.add_term((a1.clone(), a2.clone(), b.clone()), c * c2);
        }
        for ((b1, b2), c2) in ck_coproduct(b).iter() {
            rhs.add_term((a.clone(), b1.clone(), b2.clone()), c * c2);
        }
    }
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ladder2() -> CkTree {
        CkTree(vec![CkTree::node()])
    }

    fn cherry() -> CkTree {
        CkTree(vec![CkTree::node(), CkTree::node()])
    }

    fn f(ts: &[CkTree]) -> CkForest {
        CkForest::new(ts.to_vec())
    }

    #[test]
    fn node_is_primitive() {
        let d = ck_coproduct_tree(&CkTree::node());
        let expect: CkTensor = [
            ((f(&[CkTree::node()]), CkForest::unit()), Q::one()),
            ((CkForest::unit(), f(&[CkTree::node()])), Q::one()),
        ]
        .into_iter()
        .collect();
        assert_eq!(d, expect);
    }

    #[test]
    fn ladder_and_cherry() {
        let n = CkTree::node();
        let d = ck_coproduct_tree(&ladder2());
        let expect: CkTensor = [
            ((f(&[ladder2()]), CkForest::unit()), Q::one()),
            ((CkForest::unit(), f(&[ladder2()])), Q::one()),
            ((f(&[n.clone()]), f(&[n.clone()])), Q::one()),
        ]
        .into_iter()
        .collect();
        assert_eq!(d, expect);
        // Trunk on the left: cutting one leaf leaves the ladder, cutting both leaves the root.
        let d = ck_coproduct_tree(&cherry());
        let expect: CkTensor = [
            ((f(&[cherry()]), CkForest::unit()), Q::one()),
            ((CkForest::unit(), f(&[cherry()])), Q::one()),
            ((f(&[ladder2()]), f(&[n.clone()])), Q::from_integer(2)),
            ((f(&[n.clone()]), f(&[n.clone(), n])), Q::one()),
        ]
        .into_iter()
        .collect();
        assert_eq!(d, expect);
    }

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| CkTree::all_with_vertices(n).len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20]);
    }

    #[test]
    fn antipode_axiom() {
        for n in 1..=5 {
            for t in CkTree::all_with_vertices(n) {
                let ft = CkForest::single(t);
                let mut acc = CkSum::zero();
                for ((l, r), c) in ck_coproduct(&ft).iter() {
                    for (k, v) in ck_antipode(l).iter() {
                        acc.add_term(k.mul(r), *v * *c);
                    }
                }
                assert!(acc.is_zero());
                assert!(ck_coassociative(&ft));
            }
        }
    }

    #[test]
    fn decorated_input_is_rejected() {
        let sc = crate::trees::Scaling::example();
        assert!(CkTree::from_tree(&sc.parse("I[t,0](X)").unwrap()).is_err());
        assert_eq!(
            CkTree::from_tree(&sc.parse("I[t,0](1)*I[t,0](1)").unwrap()).unwrap(),
            cherry()
        );
    }
}
