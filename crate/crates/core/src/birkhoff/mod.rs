//! Bogoliubov-type recursions: the classical Birkhoff factorisation on a
//! connected Hopf algebra, its comodule variant, and the point-parameterised
//! recursion on decorated trees.

pub mod rs;
mod symbolic;

pub use rs::{PointFamily, RsBogoliubov};
pub use symbolic::{symbolic_monomial, SymbolicMonomial};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::hopf::ck::{ck_antipode, ck_coproduct, CkForest, CkTree};
use crate::hopf::PlusEngine;
use crate::linear::{q_to_f64, LinComb, Q};
use crate::targets::Algebra;
use crate::trees::{enumerate_trees, Pool, Scaling, Tree};

/// Which recursion produced a [`BirkhoffResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recursion {
    Classical,
    Comodule,
    Rs,
    RsSimplified,
}

/// Counterterm `φ₋`, renormalised part `φ₊` and preparation `φ̄` on the keys
/// reached by a run.
#[derive(Clone, Debug)]
pub struct BirkhoffResult<H: Ord, C: Ord, A> {
    pub counterterm: BTreeMap<H, A>,
    pub renormalised: BTreeMap<C, A>,
    pub preparation: BTreeMap<C, A>,
    pub provenance: Recursion,
}

/// `m_A(φ⊗ψ)Δ` evaluated on one coproduct.
pub fn convolve_on<K1: Ord + Clone, K2: Ord + Clone, A: Algebra>(
    phi: &dyn Fn(&K1) -> A,
    psi: &dyn Fn(&K2) -> A,
    delta: &LinComb<(K1, K2)>,
    zero: A,
) -> A {
    let mut acc = zero;
    for ((a, b), c) in delta.iter() {
        acc = acc.add(&phi(a).mul(&psi(b)).scale(q_to_f64(c)));
    }
    acc
}

/// A graded connected bialgebra with a basis of keys.
pub trait ConnectedHopf {
    type Key: Clone + Ord + Hash + Debug;

    fn unit(&self) -> Self::Key;
    fn grade(&self, k: &Self::Key) -> usize;
    fn coproduct(&self, k: &Self::Key) -> Result<LinComb<(Self::Key, Self::Key)>>;
    fn mul(&self, a: &Self::Key, b: &Self::Key) -> Self::Key;
    /// Every basis key of grade at most `max_grade`.
    fn basis(&self, max_grade: usize) -> Vec<Self::Key>;

    /// `Δτ − 𝟏⊗τ − τ⊗𝟏`, checked to lower the grade on both legs.
    fn reduced(&self, k: &Self::Key) -> Result<Vec<(Self::Key, Self::Key, Q)>> {
        let unit = self.unit();
        let g = self.grade(k);
        let mut out = Vec::new();
        for ((a, b), c) in self.coproduct(k)?.iter() {
            if (a == &unit && b == k) || (a == k && b == &unit) {
                continue;
            }
            let (ga, gb) = (self.grade(a), self.grade(b));
            if ga == 0 || gb == 0 || ga >= g || gb >= g {
                return Err(Error::NotConnected(format!(
                    "reduced term {a:?} ⊗ {b:?} does not lower the grade of {k:?}"
                )));
            }
            out.push((a.clone(), b.clone(), *c));
        }
        Ok(out)
    }
}

/// Plain rooted forests with the Butcher–Connes–Kreimer coproduct, graded by vertices.
pub struct CkHopf;

impl ConnectedHopf for CkHopf {
    type Key = CkForest;

    fn unit(&self) -> CkForest {
        CkForest::unit()
    }
    fn grade(&self, k: &CkForest) -> usize {
        k.vertices()
    }
    fn coproduct(&self, k: &CkForest) -> Result<LinComb<(CkForest, CkForest)>> {
        Ok(ck_coproduct(k))
    }
    fn mul(&self, a: &CkForest, b: &CkForest) -> CkForest {
        a.mul(b)
    }
    fn basis(&self, max_grade: usize) -> Vec<CkForest> {
        let mut trees = Vec::new();
        for n in 1..=max_grade {
            trees.extend(CkTree::all_with_vertices(n));
        }
        let mut out = vec![CkForest::unit()];
        fn rec(
            start: usize,
            left: usize,
            trees: &[CkTree],
            cur: &mut Vec<CkTree>,
            out: &mut Vec<CkForest>,
        ) {
            for i in start..trees.len() {
                let v = trees[i].vertices();
                if v <= left {
                    cur.push(trees[i].clone());
                    out.push(CkForest::new(cur.clone()));
                    rec(i, left - v, trees, cur, out);
                    cur.pop();
                }
            }
        }
        rec(0, max_grade, &trees, &mut Vec::new(), &mut out);
        out
    }
}

/// Products of positive planted trees with the simplified connected `Δ̄⁺`,
/// graded by edge count.
pub struct SimplifiedPlusHopf<'a> {
    pub plus: PlusEngine<'a>,
    /// Node and derivative budgets used by [`ConnectedHopf::basis`].
    pub pool: Pool,
}

impl<'a> SimplifiedPlusHopf<'a> {
    pub fn new(sc: &'a Scaling, pool: Pool) -> Self {
        SimplifiedPlusHopf {
            plus: PlusEngine::new(sc),
            pool,
        }
    }
}

impl ConnectedHopf for SimplifiedPlusHopf<'_> {
    type Key = Tree;

    fn unit(&self) -> Tree {
        Tree::one(self.plus.scaling().d_plus_1())
    }
    fn grade(&self, k: &Tree) -> usize {
        k.edge_count()
    }
    fn coproduct(&self, k: &Tree) -> Result<LinComb<(Tree, Tree)>> {
        self.plus.simplified_bar(k)
    }
    fn mul(&self, a: &Tree, b: &Tree) -> Tree {
        a.mul(b)
    }
    fn basis(&self, max_grade: usize) -> Vec<Tree> {
        let sc = self.plus.scaling();
        let pool = Pool::new(max_grade, self.pool.node_budget, self.pool.deriv_budget);
        enumerate_trees(sc, &pool)
            .into_iter()
            .filter(|t| t.root().is_zero() && sc.is_positive(t))
            .collect()
    }
}

/// `φ₋ = 𝟏* − Q(φ̄)`, `φ₊ = 𝟏* + (id−Q)(φ̄)` with `φ̄ = φ + Σ' φ(τ′)φ₋(τ″)`,
/// on every basis key up to `max_grade`.
///
/// `φ` is given on all keys (its multiplicative extension); `φ₋` and `φ₊` are
/// computed by the recursion on every key, products included.
pub fn classical_birkhoff<H: ConnectedHopf, A: Algebra>(
    h: &H,
    phi: &dyn Fn(&H::Key) -> A,
    q: &dyn Fn(&A) -> A,
    max_grade: usize,
) -> Result<BirkhoffResult<H::Key, H::Key, A>> {
    let mut keys = h.basis(max_grade);
    keys.sort_by_key(|k| h.grade(k));
    let unit = h.unit();
    let one = phi(&unit);
    if keys.iter().filter(|k| h.grade(k) == 0).any(|k| k != &unit) {
        return Err(Error::NotConnected(
            "grade-0 part is larger than the unit line".into(),
        ));
    }
    let mut minus: BTreeMap<H::Key, A> = BTreeMap::new();
    let mut plus = BTreeMap::new();
    let mut prep = BTreeMap::new();
    for k in keys {
        if k == unit {
            minus.insert(k.clone(), one.clone());
            plus.insert(k.clone(), one.clone());
            prep.insert(k, one.zero_like());
            continue;
        }
        let mut bar = phi(&k);
        for (a, b, c) in h.reduced(&k)? {
            let m = minus.get(&b).ok_or_else(|| {
                Error::Invariant(format!("{b:?} missing from the basis below {k:?}"))
            })?;
            bar = bar.add(&phi(&a).mul(m).scale(q_to_f64(&c)));
        }
        let qb = q(&bar);
        minus.insert(k.clone(), qb.scale(-1.0));
        plus.insert(k.clone(), bar.sub(&qb));
        prep.insert(k, bar);
    }
    Ok(BirkhoffResult {
        counterterm: minus,
        renormalised: plus,
        preparation: prep,
        provenance: Recursion::Classical,
    })
}

/// `φ₊ ⋆ (φ₋∘𝒜)` on a CK forest, which should return `φ`.
pub fn ck_factorisation<A: Algebra>(
    res: &BirkhoffResult<CkForest, CkForest, A>,
    f: &CkForest,
) -> Result<A> {
    let get = |m: &BTreeMap<CkForest, A>, k: &CkForest| {
        m.get(k)
            .cloned()
            .ok_or_else(|| Error::Domain(format!("{k} lies above the computed grade")))
    };
    let one = get(&res.counterterm, &CkForest::unit())?;
    let mut acc = one.zero_like();
    for ((a, b), c) in ck_coproduct(f).iter() {
        let mut inv = one.zero_like();
        for (s, cs) in ck_antipode(b).iter() {
            inv = inv.add(&get(&res.counterterm, s)?.scale(q_to_f64(cs)));
        }
        acc = acc.add(&get(&res.renormalised, a)?.mul(&inv).scale(q_to_f64(c)));
    }
    Ok(acc)
}

/// A right comodule `Δ̂: Ĥ → Ĥ⊗H` over a Hopf algebra `H` with an injection `ι: H → Ĥ`.
pub trait Comodule {
    type H: Clone + Ord + Hash + Debug;
    type C: Clone + Ord + Hash + Debug;

    fn iota(&self, h: &Self::H) -> Self::C;
    fn is_unit_h(&self, h: &Self::H) -> bool;
    fn is_unit_c(&self, c: &Self::C) -> bool;
    /// Terms `(σ′, h″, coefficient)` of `Δ̂σ`, where `σ′ ∈ Ĥ`, `h″ ∈ H`.
    fn coaction(&self, c: &Self::C) -> Result<Vec<(Self::C, Self::H, Q)>>;
}

/// Memoised comodule Birkhoff recursion.
///
/// `φ₋(h) = 𝟏*(h) − Q(h, φ̄(ιh))`, `φ̄(σ) = Σ_{σ′≠𝟏} φ(σ′)φ₋(h″)` and
/// `φ₊(σ) = Σ φ(σ′)φ₋(h″)`. The first argument of `Q` selects a member of a
/// Rota–Baxter family; a single map ignores it.
pub struct ComoduleBirkhoff<'a, M: Comodule, A> {
    m: &'a M,
    phi: &'a dyn Fn(&M::C) -> A,
    q: &'a dyn Fn(&M::H, &A) -> A,
    one: A,
    minus: std::cell::RefCell<BTreeMap<M::H, A>>,
    prep: std::cell::RefCell<BTreeMap<M::C, A>>,
    active: std::cell::RefCell<BTreeSet<M::C>>,
}

impl<'a, M: Comodule, A: Algebra> ComoduleBirkhoff<'a, M, A> {
    pub fn new(
        m: &'a M,
        phi: &'a dyn Fn(&M::C) -> A,
        q: &'a dyn Fn(&M::H, &A) -> A,
        one: A,
    ) -> Self {
        ComoduleBirkhoff {
            m,
            phi,
            q,
            one,
            minus: Default::default(),
            prep: Default::default(),
            active: Default::default(),
        }
    }

    pub fn minus(&self, h: &M::H) -> Result<A> {
        if self.m.is_unit_h(h) {
            return Ok(self.one.clone());
        }
        if let Some(v) = self.minus.borrow().get(h) {
            return Ok(v.clone());
        }
        let bar = self.prep(&self.m.iota(h))?;
        let v = (self.q)(h, &bar).scale(-1.0);
        self.minus.borrow_mut().insert(h.clone(), v.clone());
        Ok(v)
    }

    pub fn prep(&self, c: &M::C) -> Result<A> {
        if let Some(v) = self.prep.borrow().get(c) {
            return Ok(v.clone());
        }
        if !self.active.borrow_mut().insert(c.clone()) {
            return Err(Error::Invariant(format!(
                "comodule recursion does not terminate at {c:?}"
            )));
        }
        let mut acc = self.one.zero_like();
        for (a, b, k) in self.m.coaction(c)? {
            if self.m.is_unit_c(&a) {
                continue;
            }
            acc = acc.add(&(self.phi)(&a).mul(&self.minus(&b)?).scale(q_to_f64(&k)));
        }
        self.active.borrow_mut().remove(c);
        self.prep.borrow_mut().insert(c.clone(), acc.clone());
        Ok(acc)
    }

    pub fn plus(&self, c: &M::C) -> Result<A> {
        let mut acc = self.one.zero_like();
        for (a, b, k) in self.m.coaction(c)? {
            acc = acc.add(&(self.phi)(&a).mul(&self.minus(&b)?).scale(q_to_f64(&k)));
        }
        Ok(acc)
    }

    /// Snapshot of everything computed for `hs` and `cs`.
    pub fn run(&self, hs: &[M::H], cs: &[M::C]) -> Result<BirkhoffResult<M::H, M::C, A>> {
        let mut counterterm = BTreeMap::new();
        for h in hs {
            counterterm.insert(h.clone(), self.minus(h)?);
        }
        let mut renormalised = BTreeMap::new();
        let mut preparation = BTreeMap::new();
        for c in cs {
            renormalised.insert(c.clone(), self.plus(c)?);
            preparation.insert(c.clone(), self.prep(c)?);
        }
        Ok(BirkhoffResult {
            counterterm,
            renormalised,
            preparation,
            provenance: Recursion::Comodule,
        })
    }
}

/// The simplified coaction `Δ̂⁺` on decorated trees, right legs in the
/// simplified positive algebra.
pub struct SimplifiedPlusComodule<'a> {
    pub plus: PlusEngine<'a>,
}

impl Comodule for SimplifiedPlusComodule<'_> {
    type H = Tree;
    type C = Tree;

    fn iota(&self, h: &Tree) -> Tree {
        h.erase_marks()
    }
    fn is_unit_h(&self, h: &Tree) -> bool {
        h.is_one()
    }
    fn is_unit_c(&self, c: &Tree) -> bool {
        c.is_one()
    }
    fn coaction(&self, c: &Tree) -> Result<Vec<(Tree, Tree, Q)>> {
        Ok(self
            .plus
            .simplified_hat(&c.erase_marks())
            .iter()
            .map(|((a, b), k)| (a.clone(), b.clone(), *k))
            .collect())
    }
}

/// Multiplicative extension of a tree-level character to CK forests.
pub fn ck_character<'a, A: Algebra>(
    f: &'a dyn Fn(&CkTree) -> A,
    one: &A,
) -> impl Fn(&CkForest) -> A + 'a {
    let one = one.clone();
    move |forest: &CkForest| {
        let mut acc = one.clone();
        for t in forest.trees() {
            acc = acc.mul(&f(t));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::targets::LaurentSeries;

    fn ladder2() -> CkForest {
        CkForest::single(CkTree::graft(&CkForest::single(CkTree::node())))
    }

    #[test]
    fn ladder_example() {
        let one = LaurentSeries::one(10);
        let phi_tree = |t: &CkTree| match t.vertices() {
            1 => LaurentSeries::from_pairs(&[(-1, 1.0), (0, 1.0)], 10),
            2 => LaurentSeries::from_pairs(&[(-2, 1.0)], 10),
            _ => LaurentSeries::zero(10),
        };
        let phi = ck_character(&phi_tree, &one);
        let q = |a: &LaurentSeries| a.pole_project();
        let res = classical_birkhoff(&CkHopf, &phi, &q, 2).unwrap();
        let node = CkForest::single(CkTree::node());
        assert_eq!(
            res.counterterm[&node],
            LaurentSeries::from_pairs(&[(-1, -1.0)], 10)
        );
        assert_eq!(res.renormalised[&node], LaurentSeries::one(10));
        assert_eq!(
            res.preparation[&ladder2()],
            LaurentSeries::from_pairs(&[(-1, -1.0)], 10)
        );
        assert_eq!(
            res.counterterm[&ladder2()],
            LaurentSeries::from_pairs(&[(-1, 1.0)], 10)
        );
        assert!(res.renormalised[&ladder2()].is_zero());
    }
}
