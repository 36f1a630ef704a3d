//! Negative renormalisation: forests of negative trees, an undeformed
//! extraction–contraction coaction, the negative antipodes, the Bogoliubov
//! recursion with `Ẽ`, the renormalised model and the double bialgebra.

mod bogoliubov;
mod double;
mod renormalise;

use rustc_hash::FxHashMap as HashMap;
use std::cell::RefCell;
use std::rc::Rc;

use num_traits::{One, Zero};

pub use bogoliubov::{NegativeBogoliubov, NegativeComodule};
pub use double::{forest_character, DoubleHopf, PairSum, PairTensor};
pub use renormalise::{
    cointeraction_check, cointeraction_sides, cut_coproduct, renormalisation_map,
    renormalisation_map_plus, renormalised_pi_x, PositiveSide,
};

use crate::birkhoff::ConnectedHopf;
use crate::error::{Error, Result};
use crate::linear::{LinComb, Q};
use crate::multiindex::MultiIndex;
use crate::trees::{enumerate_trees, Edge, Forest, ForestSum, ForestTensor, Pool, Scaling, Tree};

/// Forest pairs `T̂⁻ ⊗ T̂⁻` and `T̄⁻ ⊗ T̄⁻`.
pub type ForestPair = LinComb<(Forest, Forest)>;

/// `T̂⁻`, or the quotient `T̄⁻` in which a forest containing a tree of
/// non-negative degree vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NegForestSpace {
    pub quotient: bool,
}

impl NegForestSpace {
    pub fn hat() -> Self {
        NegForestSpace { quotient: false }
    }

    pub fn bar() -> Self {
        NegForestSpace { quotient: true }
    }

    /// Whether `f` survives in this space.
    pub fn keeps(&self, sc: &Scaling, f: &Forest) -> bool {
        !self.quotient || in_bar(sc, f)
    }

    pub fn project(&self, sc: &Scaling, s: &ForestSum) -> ForestSum {
        s.filter(|f| self.keeps(sc, f))
    }
}

/// Every tree of `f` has strictly negative degree.
pub fn in_bar(sc: &Scaling, f: &Forest) -> bool {
    f.trees().iter().all(|t| sc.deg(t) < Q::zero())
}

/// A pluggable `Δ̂⁻`: trees to `T̄⁻ ⊗ T`.
pub trait NegCoaction {
    fn scaling(&self) -> &Scaling;
    fn coaction(&self, t: &Tree) -> Rc<ForestTensor>;
}

/// One state of the subtree below a vertex during extraction.
#[derive(Clone)]
enum Part {
    /// The vertex is outside every extracted piece.
    Free { forest: Vec<Tree>, contracted: Tree },
    /// The vertex lies in a piece that may continue upwards.
    Open {
        forest: Vec<Tree>,
        piece: Tree,
        deco: MultiIndex,
        hanging: Vec<(Edge, Tree)>,
    },
}

/// The undeformed extraction–contraction coaction.
pub struct ExtractionContraction<'a> {
    sc: &'a Scaling,
    memo: RefCell<HashMap<Tree, Rc<ForestTensor>>>,
}

impl<'a> ExtractionContraction<'a> {
    pub fn new(sc: &'a Scaling) -> Self {
        ExtractionContraction {
            sc,
            memo: RefCell::default(),
        }
    }

    fn parts(&self, t: &Tree) -> Vec<Part> {
        let mut free: Vec<(Vec<Tree>, Vec<(Edge, Tree)>)> = vec![(Vec::new(), Vec::new())];
        let mut open: Vec<(Vec<Tree>, Vec<(Edge, Tree)>, MultiIndex, Vec<(Edge, Tree)>)> =
            vec![(Vec::new(), Vec::new(), t.root().clone(), Vec::new())];
        for (e, c) in t.branches() {
            let child = self.parts(c);
            let closed = self.closed(&child);
            let mut next_free = Vec::new();
            for (f, br) in &free {
                for (cf, ct) in &closed {
                    let mut f2 = f.clone();
                    f2.extend(cf.iter().cloned());
                    let mut b2 = br.clone();
                    b2.push((e.clone(), ct.clone()));
                    next_free.push((f2, b2));
                }
            }
            free = next_free;
            let mut next_open = Vec::new();
            for (f, br, deco, hang) in &open {
                for (cf, ct) in &closed {
                    let mut f2 = f.clone();
                    f2.extend(cf.iter().cloned());
                    let mut h2 = hang.clone();
                    h2.push((e.clone(), ct.clone()));
                    next_open.push((f2, br.clone(), deco.clone(), h2));
                }
                for p in &child {
                    if let Part::Open {
                        forest: cf,
                        piece,
                        deco: cd,
                        hanging: ch,
                    } = p
                    {
                        let mut f2 = f.clone();
                        f2.extend(cf.iter().cloned());
                        let mut b2 = br.clone();
                        b2.push((e.clone(), piece.clone()));
                        let mut h2 = hang.clone();
                        h2.extend(ch.iter().cloned());
                        next_open.push((f2, b2, deco.add(cd), h2));
                    }
                }
            }
            open = next_open;
        }
        let mut out: Vec<Part> = free
            .into_iter()
            .map(|(forest, br)| Part::Free {
                forest,
                contracted: Tree::from_parts(t.root().clone(), br),
            })
            .collect();
        out.extend(
            open.into_iter()
                .map(|(forest, br, deco, hanging)| Part::Open {
                    forest,
                    piece: Tree::from_parts(t.root().clone(), br),
                    deco,
                    hanging,
                }),
        );
        out
    }

    /// States in which the vertex is free or tops a closed negative piece.
    fn closed(&self, parts: &[Part]) -> Vec<(Vec<Tree>, Tree)> {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Part::Free { forest, contracted } => out.push((forest.clone(), contracted.clone())),
                Part::Open {
                    forest,
                    piece,
                    deco,
                    hanging,
                } => {
                    if piece.edge_count() > 0 && self.sc.deg(piece) < Q::zero() {
                        let mut f = forest.clone();
                        f.push(piece.clone());
                        out.push((f, Tree::from_parts(deco.clone(), hanging.clone())));
                    }
                }
            }
        }
        out
    }
}

impl NegCoaction for ExtractionContraction<'_> {
    fn scaling(&self) -> &Scaling {
        self.sc
    }

    /// `Σ_F F ⊗ τ/F` over vertex-disjoint families of negative subtrees.
    fn coaction(&self, t: &Tree) -> Rc<ForestTensor> {
        let t = t.erase_marks();
        if let Some(v) = self.memo.borrow().get(&t) {
            return v.clone();
        }
        let mut out = ForestTensor::zero();
        for (f, c) in self.closed(&self.parts(&t)) {
            out.add_term((Forest::new(f), c), Q::one());
        }
        let out = Rc::new(out);
        self.memo.borrow_mut().insert(t, out.clone());
        out
    }
}

/// `Δ̂⁻` of the undeformed instance on one tree.
pub fn extraction_contraction(t: &Tree, sc: &Scaling) -> ForestTensor {
    (*ExtractionContraction::new(sc).coaction(t)).clone()
}

/// `Δ̂⁻` on `T̂₊`: the root monomial is kept and each planted factor
/// `J_e(σ)` maps to `(id⊗J_e)Δ̂⁻σ`.
pub fn plus_coaction(neg: &dyn NegCoaction, b: &Tree) -> ForestTensor {
    let mut acc = ForestTensor::single((Forest::empty(), Tree::monomial(b.root().clone())));
    for (e, c) in b.branches() {
        let mut next = ForestTensor::zero();
        for ((f, l), k) in acc.iter() {
            for ((f2, c2), k2) in neg.coaction(c).iter() {
                let planted = Tree::planted(e.clone(), c2.clone());
                next.add_term((f.mul(f2), l.mul(&planted)), k * k2);
            }
        }
        acc = next;
    }
    acc
}

/// `Δ̂⁻` extended multiplicatively to forests of `T̂⁻`.
pub fn forest_coaction(neg: &dyn NegCoaction, f: &Forest) -> ForestPair {
    let mut acc = ForestPair::single((Forest::empty(), Forest::empty()));
    for t in f.trees() {
        let mut next = ForestPair::zero();
        for ((a, b), k) in acc.iter() {
            for ((f2, c2), k2) in neg.coaction(t).iter() {
                next.add_term((a.mul(f2), b.mul(&Forest::single(c2.clone()))), k * k2);
            }
        }
        acc = next;
    }
    acc
}

/// `Δ̄⁻` on `T̄⁻`; `f` must lie in `T̄⁻`.
pub fn bar_coproduct(neg: &dyn NegCoaction, f: &Forest) -> Result<ForestPair> {
    let sc = neg.scaling();
    if !in_bar(sc, f) {
        return Err(Error::Domain(format!(
            "{f} is not in the negative quotient"
        )));
    }
    Ok(forest_coaction(neg, f).filter(|(_, b)| in_bar(sc, b)))
}

/// Whether the term `(F, τ″)` of `Δ̂⁻τ` is the full extraction.
fn is_full(t: &Tree, f: &Forest) -> bool {
    f.len() == 1 && f.trees()[0] == *t
}

/// Memoised `Ã₋` and `𝒜₋`.
pub struct NegativeAntipodes<'a> {
    neg: &'a dyn NegCoaction,
    twisted: RefCell<HashMap<Tree, Rc<ForestSum>>>,
    plain: RefCell<HashMap<Tree, Rc<ForestSum>>>,
}

impl<'a> NegativeAntipodes<'a> {
    pub fn new(neg: &'a dyn NegCoaction) -> Self {
        NegativeAntipodes {
            neg,
            twisted: RefCell::default(),
            plain: RefCell::default(),
        }
    }

    fn check(&self, f: &Forest) -> Result<()> {
        if in_bar(self.neg.scaling(), f) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{f} is not in the negative quotient"
            )))
        }
    }

    /// `Ã₋τ = −ℳ̂₋(Ã₋⊗id)(Δ̂⁻τ − τ⊗𝟏₁)`, extended multiplicatively.
    pub fn twisted(&self, f: &Forest) -> Result<ForestSum> {
        self.check(f)?;
        Ok(self.multiplicative(f, &|t| self.twisted_tree(t)))
    }

    /// The antipode `𝒜₋` of `(T̄⁻, Δ̄⁻)`.
    pub fn antipode(&self, f: &Forest) -> Result<ForestSum> {
        self.check(f)?;
        Ok(self.multiplicative(f, &|t| self.plain_tree(t)))
    }

    fn multiplicative(&self, f: &Forest, g: &dyn Fn(&Tree) -> Rc<ForestSum>) -> ForestSum {
        let mut acc = ForestSum::single(Forest::empty());
        for t in f.trees() {
            acc = crate::linear::bilinear(&acc, &g(t), |a, b| a.mul(b));
        }
        acc
    }

    fn twisted_tree(&self, t: &Tree) -> Rc<ForestSum> {
        if let Some(v) = self.twisted.borrow().get(t) {
            return v.clone();
        }
        let mut out = ForestSum::zero();
        for ((f, c), k) in self.neg.coaction(t).iter() {
            if is_full(t, f) {
                continue;
            }
            let rest = Forest::single(c.clone());
            let af = self.multiplicative(f, &|u| self.twisted_tree(u));
            for (g, k2) in af.iter() {
                out.add_term(g.mul(&rest), -(k * k2));
            }
        }
        let out = Rc::new(out);
        self.twisted.borrow_mut().insert(t.clone(), out.clone());
        out
    }

    fn plain_tree(&self, t: &Tree) -> Rc<ForestSum> {
        if let Some(v) = self.plain.borrow().get(t) {
            return v.clone();
        }
        let sc = self.neg.scaling();
        let mut out = ForestSum::zero();
        for ((f, c), k) in self.neg.coaction(t).iter() {
            if is_full(t, f) {
                continue;
            }
            let rest = Forest::single(c.clone());
            if !in_bar(sc, &rest) {
                continue;
            }
            let af = self.multiplicative(f, &|u| self.plain_tree(u));
            for (g, k2) in af.iter() {
                out.add_term(g.mul(&rest), -(k * k2));
            }
        }
        let out = Rc::new(out);
        self.plain.borrow_mut().insert(t.clone(), out.clone());
        out
    }
}

/// Negative trees from `pool`, sorted by size.
pub fn negative_trees(sc: &Scaling, pool: &Pool) -> Vec<Tree> {
    let mut v: Vec<Tree> = enumerate_trees(sc, pool)
        .into_iter()
        .filter(|t| sc.deg(t) < Q::zero())
        .collect();
    v.sort_by(|a, b| a.edge_count().cmp(&b.edge_count()).then_with(|| a.cmp(b)));
    v
}

/// Forests of `trees` with at most `max_edges` edges in total, the empty one included.
pub fn forests_upto(trees: &[Tree], max_edges: usize) -> Vec<Forest> {
    fn rec(trees: &[Tree], start: usize, left: usize, cur: &mut Vec<Tree>, out: &mut Vec<Forest>) {
        out.push(Forest::new(cur.clone()));
        for i in start..trees.len() {
            let e = trees[i].edge_count();
            if e == 0 || e > left {
                continue;
            }
            cur.push(trees[i].clone());
            rec(trees, i, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(trees, 0, max_edges, &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

/// `T̄⁻` with the forest product and `Δ̄⁻`, graded by edge count.
pub struct NegativeHopf<'a> {
    pub neg: &'a dyn NegCoaction,
    pub trees: Vec<Tree>,
}

impl ConnectedHopf for NegativeHopf<'_> {
    type Key = Forest;

    fn unit(&self) -> Forest {
        Forest::empty()
    }

    fn grade(&self, f: &Forest) -> usize {
        f.edge_count()
    }

    fn coproduct(&self, f: &Forest) -> Result<LinComb<(Forest, Forest)>> {
        bar_coproduct(self.neg, f)
    }

    fn mul(&self, a: &Forest, b: &Forest) -> Forest {
        a.mul(b)
    }

    fn basis(&self, max_grade: usize) -> Vec<Forest> {
        forests_upto(&self.trees, max_grade)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::TypeKind;

    fn table() -> Scaling {
        Scaling::new(
            vec![1],
            &[
                ("t", Q::from_integer(2), TypeKind::Kernel),
                ("l", Q::new(-5, 2), TypeKind::Noise),
            ],
        )
        .unwrap()
    }

    #[test]
    fn extraction_examples() {
        let sc = table();
        let xi = sc.parse("I[l,0](1)").unwrap();
        let tau = sc.parse("I[t,0](I[l,0](1))").unwrap();
        let one = Tree::one(1);
        let d = extraction_contraction(&xi, &sc);
        assert_eq!(d.len(), 2);
        assert_eq!(d.coeff(&(Forest::empty(), xi.clone())), Q::one());
        assert_eq!(
            d.coeff(&(Forest::single(xi.clone()), one.clone())),
            Q::one()
        );
        let d = extraction_contraction(&tau, &sc);
        assert_eq!(d.len(), 3);
        assert_eq!(
            d.coeff(&(Forest::single(xi.clone()), sc.parse("I[t,0](1)").unwrap())),
            Q::one()
        );
        assert_eq!(d.coeff(&(Forest::single(tau.clone()), one)), Q::one());
        let x2 = sc.parse("X^[2]").unwrap();
        assert_eq!(
            extraction_contraction(&x2, &sc),
            ForestTensor::single((Forest::empty(), x2))
        );
    }

    #[test]
    fn twisted_antipode_examples() {
        let sc = table();
        let neg = ExtractionContraction::new(&sc);
        let anti = NegativeAntipodes::new(&neg);
        let xi = sc.parse("I[l,0](1)").unwrap();
        let tau = sc.parse("I[t,0](I[l,0](1))").unwrap();
        let f = |t: &Tree| Forest::single(t.clone());
        assert_eq!(
            anti.twisted(&f(&xi)).unwrap(),
            ForestSum::term(f(&xi), -Q::one())
        );
        let mut expect = ForestSum::term(f(&tau), -Q::one());
        expect.add_term(
            Forest::new(vec![xi.clone(), sc.parse("I[t,0](1)").unwrap()]),
            Q::one(),
        );
        assert_eq!(anti.twisted(&f(&tau)).unwrap(), expect);
        let xx = Forest::new(vec![xi.clone(), xi.clone()]);
        assert_eq!(anti.twisted(&xx).unwrap(), ForestSum::single(xx));
        assert!(anti.twisted(&f(&sc.parse("I[t,0](1)").unwrap())).is_err());
    }

    #[test]
    fn repeated_branches_count_twice() {
        let sc = table();
        let xi = sc.parse("I[l,0](1)").unwrap();
        let xx = xi.mul(&xi);
        let d = extraction_contraction(&xx, &sc);
        assert_eq!(
            d.coeff(&(Forest::single(xi.clone()), xi)),
            Q::from_integer(2)
        );
    }
}
