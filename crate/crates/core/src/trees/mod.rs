//! Decorated rooted trees and forests, their products, degrees and positivity.

mod enumerate;
mod parse;
mod render;
mod scaling;

pub use enumerate::{enumerate_planted, enumerate_trees, Pool};
pub use parse::{parse_forest, parse_tree};
pub use render::{format_sum, sum_from_json, sum_to_json, Render};
pub use scaling::{Scaling, TypeInfo, TypeKind};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linear::LinComb;
pub use crate::multiindex::MultiIndex;

/// Edge type label `𝔱 ∈ 𝔏`.
pub type Label = Arc<str>;

/// Edge decoration `(𝔱, p)`, with the marker distinguishing `Ĵ` from `I` on root edges.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    pub label: Label,
    pub deriv: MultiIndex,
    pub hat: bool,
}

impl Edge {
    pub fn new(label: &str, deriv: MultiIndex) -> Self {
        Edge {
            label: Arc::from(label),
            deriv,
            hat: false,
        }
    }

    pub fn hatted(&self) -> Edge {
        Edge {
            hat: true,
            ..self.clone()
        }
    }

    pub fn plain(&self) -> Edge {
        Edge {
            hat: false,
            ..self.clone()
        }
    }

    /// The same type with derivative `p + ℓ`.
    pub fn shifted(&self, l: &MultiIndex) -> Edge {
        Edge {
            deriv: self.deriv.add(l),
            ..self.clone()
        }
    }
}

/// Non-planar rooted tree `X^{k₀} Π I_{(𝔱ᵢ,pᵢ)}(τᵢ)`; branches are kept sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tree {
    root: MultiIndex,
    branches: Vec<(Edge, Tree)>,
}

impl Tree {
    /// The unit `𝟏 = X⁰` in dimension `n`.
    pub fn one(n: usize) -> Tree {
        Tree::monomial(MultiIndex::zeros(n))
    }

    pub fn monomial(k: MultiIndex) -> Tree {
        Tree {
            root: k,
            branches: Vec::new(),
        }
    }

    /// `X_i` in dimension `n`.
    pub fn x(n: usize, i: usize) -> Tree {
        Tree::monomial(MultiIndex::unit(n, i))
    }

    /// Builds a tree from a root decoration and unsorted branches.
    pub fn from_parts(root: MultiIndex, mut branches: Vec<(Edge, Tree)>) -> Tree {
        branches.sort();
        Tree { root, branches }
    }

    /// `I_{(𝔱,p)}(child)` with the new root decorated by zero; no terminal-noise check.
    pub fn planted(edge: Edge, child: Tree) -> Tree {
        Tree {
            root: MultiIndex::zeros(child.dim()),
            branches: vec![(edge, child)],
        }
    }

    pub fn dim(&self) -> usize {
        self.root.len()
    }

    pub fn root(&self) -> &MultiIndex {
        &self.root
    }

    pub fn branches(&self) -> &[(Edge, Tree)] {
        &self.branches
    }

    pub fn is_monomial(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.branches.is_empty() && self.root.is_zero()
    }

    /// True for `I_{(𝔱,p)}(τ)`.
    pub fn is_planted(&self) -> bool {
        self.branches.len() == 1 && self.root.is_zero()
    }

    /// The planted factors `I_{(𝔱ᵢ,pᵢ)}(τᵢ)` at the root.
    pub fn planted_factors(&self) -> impl Iterator<Item = Tree> + '_ {
        self.branches
            .iter()
            .map(|(e, c)| Tree::planted(e.clone(), c.clone()))
    }

    /// The same branches with root decoration replaced.
    pub fn with_root(&self, root: MultiIndex) -> Tree {
        Tree {
            root,
            branches: self.branches.clone(),
        }
    }

    /// Tree product: root decorations add, branch multisets merge.
    pub fn product(&self, other: &Tree) -> Result<Tree> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self.mul(other))
    }

    /// Unchecked tree product for trees of equal dimension.
    pub fn mul(&self, other: &Tree) -> Tree {
        debug_assert_eq!(self.dim(), other.dim());
        let mut branches = Vec::with_capacity(self.branches.len() + other.branches.len());
        branches.extend(self.branches.iter().cloned());
        branches.extend(other.branches.iter().cloned());
        branches.sort();
        Tree {
            root: self.root.add(&other.root),
            branches,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.branches.iter().map(|(_, c)| 1 + c.edge_count()).sum()
    }

    pub fn node_count(&self) -> usize {
        1 + self.edge_count()
    }

    /// Removes every planted marker (the injection `𝔦₊`).
    pub fn erase_marks(&self) -> Tree {
        Tree {
            root: self.root.clone(),
            branches: {
                let mut b: Vec<_> = self
                    .branches
                    .iter()
                    .map(|(e, c)| (e.plain(), c.erase_marks()))
                    .collect();
                b.sort();
                b
            },
        }
    }

    /// Marks the root edges as `Ĵ`.
    pub fn mark_root_edges(&self) -> Tree {
        let mut b: Vec<_> = self
            .branches
            .iter()
            .map(|(e, c)| (e.hatted(), c.clone()))
            .collect();
        b.sort();
        Tree {
            root: self.root.clone(),
            branches: b,
        }
    }

    pub fn has_marks(&self) -> bool {
        self.branches.iter().any(|(e, c)| e.hat || c.has_marks())
    }

    /// Opaque comparable key: the canonical printed form.
    pub fn canonical_key(&self) -> String {
        self.to_string()
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// A multiset of trees; the empty forest is the unit `𝟏₁`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Forest(Vec<Tree>);

impl Forest {
    pub fn empty() -> Forest {
        Forest(Vec::new())
    }

    /// Builds a forest, dropping copies of the trivial tree.
    pub fn new(mut trees: Vec<Tree>) -> Forest {
        trees.retain(|t| !t.is_one());
        trees.sort();
        Forest(trees)
    }

    pub fn single(t: Tree) -> Forest {
        Forest::new(vec![t])
    }

    pub fn trees(&self) -> &[Tree] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Forest) -> Forest {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        v.sort();
        Forest(v)
    }

    pub fn edge_count(&self) -> usize {
        self.0.iter().map(Tree::edge_count).sum()
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

pub type TreeSum = LinComb<Tree>;
pub type TensorSum = LinComb<(Tree, Tree)>;
pub type TripleSum = LinComb<(Tree, Tree, Tree)>;
pub type ForestSum = LinComb<Forest>;
pub type ForestTensor = LinComb<(Forest, Tree)>;

/// Componentwise product `(a⊗b)(c⊗d) = ac⊗bd`.
pub fn tensor_mul(a: &TensorSum, b: &TensorSum) -> TensorSum {
    crate::linear::bilinear(a, b, |(l1, r1), (l2, r2)| (l1.mul(l2), r1.mul(r2)))
}

/// Linear extension of the tree product.
pub fn sum_mul(a: &TreeSum, b: &TreeSum) -> TreeSum {
    crate::linear::bilinear(a, b, |x, y| x.mul(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc() -> Scaling {
        Scaling::example()
    }

    #[test]
    fn product_examples() {
        let s = sc();
        let x = s.parse("X").unwrap();
        assert_eq!(x.mul(&x), s.parse("X^[2]").unwrap());
        let t = s.parse("X*I[t,0](1)").unwrap();
        assert_eq!(Tree::one(1).mul(&t), t);
        let u = s.parse("I[t,1](1)").unwrap();
        assert_eq!(t.mul(&u), s.parse("X*I[t,0](1)*I[t,1](1)").unwrap());
        let two = Tree::one(2);
        assert!(matches!(
            t.product(&two),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn canonical_key_ignores_branch_order() {
        let s = sc();
        let a = s.parse("I[t,0](1)*I[l,0](1)").unwrap();
        let b = s.parse("I[l,0](1)*I[t,0](1)").unwrap();
        assert_eq!(a.canonical_key(), b.canonical_key());
        let c = s.parse("I[t,1](1)").unwrap();
        assert_ne!(
            s.parse("I[t,0](1)").unwrap().canonical_key(),
            c.canonical_key()
        );
    }

    #[test]
    fn forest_drops_unit() {
        let s = sc();
        let f = Forest::new(vec![Tree::one(1), s.parse("I[l,0](1)").unwrap()]);
        assert_eq!(f.len(), 1);
        assert_eq!(Forest::new(vec![Tree::one(1)]), Forest::empty());
    }
}
