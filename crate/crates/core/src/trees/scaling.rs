use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{parse_forest, parse_tree, Edge, Forest, Tree};
use crate::error::{Error, Result};
use crate::linear::{parse_q, q_to_string, Q};
use crate::multiindex::MultiIndex;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TypeKind {
    Kernel,
    Noise,
}

#[derive(Clone, PartialEq, Debug)]
pub struct TypeInfo {
    pub degree: Q,
    pub kind: TypeKind,
}

/// Ambient dimension, scaling `𝔰` and the degree table on `𝔏 = 𝔏₊ ⊔ 𝔏₋`.
#[derive(Clone, PartialEq, Debug)]
pub struct Scaling {
    s: Vec<u32>,
    types: BTreeMap<String, TypeInfo>,
    terminal_noise: bool,
}

#[derive(Serialize, Deserialize)]
struct WireType {
    name: String,
    degree: String,
    kind: String,
}

#[derive(Serialize, Deserialize)]
struct WireScaling {
    d_plus_1: usize,
    s: Vec<u32>,
    types: Vec<WireType>,
    #[serde(default = "yes")]
    terminal_noise: bool,
}

fn yes() -> bool {
    true
}

impl Scaling {
    pub fn new(s: Vec<u32>, types: &[(&str, Q, TypeKind)]) -> Result<Scaling> {
        if s.is_empty() || s.iter().any(|&v| v == 0) {
            return Err(Error::InvalidScaling(
                "scaling entries must be positive".into(),
            ));
        }
        let mut map = BTreeMap::new();
        for (name, degree, kind) in types {
            let bad = match kind {
                TypeKind::Kernel => *degree <= Q::from_integer(0),
                TypeKind::Noise => *degree >= Q::from_integer(0),
            };
            if bad {
                return Err(Error::InvalidScaling(format!(
                    "type `{name}` of kind {kind:?} has degree {}",
                    q_to_string(degree)
                )));
            }
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::InvalidScaling(format!("bad type name `{name}`")));
            }
            if map
                .insert(
                    name.to_string(),
                    TypeInfo {
                        degree: *degree,
                        kind: *kind,
                    },
                )
                .is_some()
            {
                return Err(Error::InvalidScaling(format!("duplicate type `{name}`")));
            }
        }
        Ok(Scaling {
            s,
            types: map,
            terminal_noise: true,
        })
    }

    /// `d+1 = 1`, `𝔰 = (1)`, kernels `t` (degree 2) and `u` (3/2), noise `l` (−3/2).
    pub fn example() -> Scaling {
        Scaling::new(
            vec![1],
            &[
                ("t", Q::from_integer(2), TypeKind::Kernel),
                ("u", Q::new(3, 2), TypeKind::Kernel),
                ("l", Q::new(-3, 2), TypeKind::Noise),
            ],
        )
        .expect("valid example scaling")
    }

    /// `d+1 = 1` with degrees kept off the integers: kernels `t` (199/100) and
    /// `u` (149/100), noise `l` (−151/100). No tree with edges and fewer than
    /// 50 edges has an integer degree.
    pub fn generic() -> Scaling {
        Scaling::new(
            vec![1],
            &[
                ("t", Q::new(199, 100), TypeKind::Kernel),
                ("u", Q::new(149, 100), TypeKind::Kernel),
                ("l", Q::new(-151, 100), TypeKind::Noise),
            ],
        )
        .expect("valid generic scaling")
    }

    pub fn with_terminal_noise(mut self, on: bool) -> Scaling {
        self.terminal_noise = on;
        self
    }

    pub fn terminal_noise(&self) -> bool {
        self.terminal_noise
    }

    pub fn d_plus_1(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self) -> &[u32] {
        &self.s
    }

    pub fn types(&self) -> impl Iterator<Item = (&String, &TypeInfo)> {
        self.types.iter()
    }

    pub fn labels_of(&self, kind: TypeKind) -> Vec<String> {
        self.types
            .iter()
            .filter(|(_, i)| i.kind == kind)
            .map(|(n, _)| n.clone())
            .collect()
    }

    pub fn info(&self, label: &str) -> Result<&TypeInfo> {
        self.types
            .get(label)
            .ok_or_else(|| Error::UnknownType(label.to_string()))
    }

    pub fn kind(&self, label: &str) -> Result<TypeKind> {
        self.info(label).map(|i| i.kind)
    }

    /// `|k|_𝔰`.
    pub fn norm(&self, k: &MultiIndex) -> u32 {
        k.scaled_norm(&self.s)
    }

    pub fn norm_q(&self, k: &MultiIndex) -> Q {
        Q::from_integer(self.norm(k) as i64)
    }

    /// `|𝔱|_𝔰 − |p|_𝔰`.
    pub fn edge_degree(&self, e: &Edge) -> Result<Q> {
        Ok(self.info(&e.label)?.degree - self.norm_q(&e.deriv))
    }

    /// Degree by the node-plus-edge formula.
    pub fn degree(&self, t: &Tree) -> Result<Q> {
        let mut d = self.norm_q(t.root());
        for (e, c) in t.branches() {
            d += self.edge_degree(e)? + self.degree(c)?;
        }
        Ok(d)
    }

    /// Degree of a tree already validated against this scaling.
    pub fn deg(&self, t: &Tree) -> Q {
        self.degree(t).expect("tree validated against scaling")
    }

    /// Degree of `I_e(child)`.
    pub fn planted_deg(&self, e: &Edge, child: &Tree) -> Q {
        self.edge_degree(e).expect("known label") + self.deg(child)
    }

    /// `(Σ_e |𝔢₂(e)|_𝔰, non-root nodes + edges)`.
    pub fn bigrade(&self, t: &Tree) -> (Q, usize) {
        fn first(sc: &Scaling, t: &Tree) -> u32 {
            t.branches()
                .iter()
                .map(|(e, c)| sc.norm(&e.deriv) + first(sc, c))
                .sum()
        }
        (Q::from_integer(first(self, t) as i64), 2 * t.edge_count())
    }

    /// Every root branch has strictly positive degree.
    pub fn is_positive(&self, t: &Tree) -> bool {
        t.branches().iter().all(|(e, c)| {
            self.edge_degree(e)
                .and_then(|d| Ok(d + self.degree(c)?))
                .map_or(false, |d| d > Q::from_integer(0))
        })
    }

    /// Checks dimensions, labels and the terminal-noise rule.
    pub fn validate(&self, t: &Tree) -> Result<()> {
        if t.dim() != self.d_plus_1() {
            return Err(Error::DimensionMismatch {
                expected: self.d_plus_1(),
                found: t.dim(),
            });
        }
        for (e, c) in t.branches() {
            if e.deriv.len() != self.d_plus_1() {
                return Err(Error::DimensionMismatch {
                    expected: self.d_plus_1(),
                    found: e.deriv.len(),
                });
            }
            let info = self.info(&e.label)?;
            if info.kind == TypeKind::Noise && self.terminal_noise && !c.is_one() {
                return Err(Error::NonTerminalNoise(e.label.to_string()));
            }
            self.validate(c)?;
        }
        Ok(())
    }

    /// `I_{(𝔱,p)}(child)`, rejecting non-trivial children of noise edges.
    pub fn plant(&self, edge: Edge, child: Tree) -> Result<Tree> {
        let t = Tree::planted(edge, child);
        self.validate(&t)?;
        Ok(t)
    }

    pub fn parse(&self, s: &str) -> Result<Tree> {
        let t = parse_tree(s, self.d_plus_1())?;
        self.validate(&t)?;
        Ok(t)
    }

    pub fn parse_forest(&self, s: &str) -> Result<Forest> {
        let f = parse_forest(s, self.d_plus_1())?;
        for t in f.trees() {
            self.validate(t)?;
        }
        Ok(f)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Scaling> {
        let w: WireScaling = serde_json::from_value(v.clone())?;
        if w.s.len() != w.d_plus_1 {
            return Err(Error::InvalidScaling(format!(
                "s has {} entries but d_plus_1 = {}",
                w.s.len(),
                w.d_plus_1
            )));
        }
        let mut types = Vec::new();
        for t in &w.types {
            let d = parse_q(&t.degree)
                .ok_or_else(|| Error::InvalidScaling(format!("bad degree `{}`", t.degree)))?;
            let kind = match t.kind.as_str() {
                "kernel" => TypeKind::Kernel,
                "noise" => TypeKind::Noise,
                other => return Err(Error::InvalidScaling(format!("unknown kind `{other}`"))),
            };
            types.push((t.name.as_str(), d, kind));
        }
        Ok(Scaling::new(w.s, &types)?.with_terminal_noise(w.terminal_noise))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let w = WireScaling {
            d_plus_1: self.d_plus_1(),
            s: self.s.clone(),
            types: self
                .types
                .iter()
                .map(|(n, i)| WireType {
                    name: n.clone(),
                    degree: q_to_string(&i.degree),
                    kind: match i.kind {
                        TypeKind::Kernel => "kernel".into(),
                        TypeKind::Noise => "noise".into(),
                    },
                })
                .collect(),
            terminal_noise: self.terminal_noise,
        };
        serde_json::to_value(w).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_examples() {
        let sc = Scaling::example();
        assert_eq!(sc.deg(&sc.parse("X^[3]").unwrap()), Q::from_integer(3));
        assert_eq!(sc.deg(&sc.parse("I[t,0](X)").unwrap()), Q::from_integer(3));
        assert_eq!(
            sc.deg(&sc.parse("I[t,1](I[l,0](1))").unwrap()),
            Q::new(-1, 2)
        );
    }

    #[test]
    fn bigrade_examples() {
        let sc = Scaling::example();
        assert_eq!(
            sc.bigrade(&sc.parse("X^[4]").unwrap()),
            (Q::from_integer(0), 0)
        );
        assert_eq!(
            sc.bigrade(&sc.parse("I[t,3](1)").unwrap()),
            (Q::from_integer(3), 2)
        );
        assert_eq!(
            sc.bigrade(&sc.parse("I[t,1](I[l,2](1))").unwrap()),
            (Q::from_integer(3), 4)
        );
    }

    #[test]
    fn positivity_examples() {
        let sc = Scaling::example();
        assert!(sc.is_positive(&sc.parse("X^[5]").unwrap()));
        assert!(sc.is_positive(&sc.parse("X*I[t,0](1)").unwrap()));
        assert!(!sc.is_positive(&sc.parse("I[t,0](1)*I[l,0](1)").unwrap()));
    }

    #[test]
    fn noise_must_be_terminal() {
        let sc = Scaling::example();
        let e = Edge::new("l", MultiIndex::zeros(1));
        assert!(matches!(
            sc.plant(e.clone(), Tree::x(1, 0)),
            Err(Error::NonTerminalNoise(_))
        ));
        assert!(sc
            .clone()
            .with_terminal_noise(false)
            .plant(e, Tree::x(1, 0))
            .is_ok());
    }

    #[test]
    fn invalid_degree_is_rejected() {
        assert!(Scaling::new(vec![1], &[("t", Q::from_integer(-1), TypeKind::Kernel)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let sc = Scaling::example();
        assert_eq!(Scaling::from_json(&sc.to_json()).unwrap(), sc);
    }
}
