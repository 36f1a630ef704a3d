use rustc_hash::FxHashMap as HashMap;

use super::{Edge, MultiIndex, Scaling, Tree, TypeKind};

/// Bounds for exhaustive tree enumeration.
///
/// Node and derivative budgets are totals of `|·|_𝔰` over the whole tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pool {
    pub max_edges: usize,
    pub node_budget: u32,
    pub deriv_budget: u32,
}

impl Pool {
    pub fn new(max_edges: usize, node_budget: u32, deriv_budget: u32) -> Pool {
        Pool {
            max_edges,
            node_budget,
            deriv_budget,
        }
    }

    /// Zero node decorations and zero edge derivatives.
    pub fn plain(max_edges: usize) -> Pool {
        Pool::new(max_edges, 0, 0)
    }
}

struct Item {
    tree: Tree,
    edges: usize,
    nodes: u32,
    derivs: u32,
}

struct Enumerator<'a> {
    sc: &'a Scaling,
    edges: Vec<(Edge, u32, TypeKind)>,
    monomials: Vec<(MultiIndex, u32)>,
    planted: HashMap<(usize, u32, u32), Vec<Item>>,
}

fn multi_indices(s: &[u32], budget: u32) -> Vec<(MultiIndex, u32)> {
    let mut out = Vec::new();
    fn rec(
        i: usize,
        s: &[u32],
        left: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<(MultiIndex, u32)>,
        budget: u32,
    ) {
        if i == s.len() {
            out.push((MultiIndex::new(cur.clone()), budget - left));
            return;
        }
        let mut k = 0;
        while k * s[i] <= left {
            cur.push(k);
            rec(i + 1, s, left - k * s[i], cur, out, budget);
            cur.pop();
            k += 1;
        }
    }
    rec(0, s, budget, &mut Vec::new(), &mut out, budget);
    out
}

impl<'a> Enumerator<'a> {
    fn new(sc: &'a Scaling, pool: &Pool) -> Self {
        let derivs = multi_indices(sc.s(), pool.deriv_budget);
        let mut edges = Vec::new();
        for (label, info) in sc.types() {
            for (p, n) in &derivs {
                edges.push((Edge::new(label, p.clone()), *n, info.kind));
            }
        }
        Enumerator {
            sc,
            edges,
            monomials: multi_indices(sc.s(), pool.node_budget),
            planted: HashMap::default(),
        }
    }

    /// Planted trees with at most `e` edges within the budgets.
    fn planted(&mut self, e: usize, n: u32, d: u32) -> &[Item] {
        if !self.planted.contains_key(&(e, n, d)) {
            let mut out = Vec::new();
            if e > 0 {
                for (edge, dn, kind) in self.edges.clone() {
                    if dn > d {
                        continue;
                    }
                    if kind == TypeKind::Noise && self.sc.terminal_noise() {
                        out.push(Item {
                            tree: Tree::planted(edge, Tree::one(self.sc.d_plus_1())),
                            edges: 1,
                            nodes: 0,
                            derivs: dn,
                        });
                        continue;
                    }
                    for c in self.trees(e - 1, n, d - dn) {
                        out.push(Item {
                            tree: Tree::planted(edge.clone(), c.tree),
                            edges: c.edges + 1,
                            nodes: c.nodes,
                            derivs: c.derivs + dn,
                        });
                    }
                }
            }
            out.sort_by(|a, b| a.tree.cmp(&b.tree));
            self.planted.insert((e, n, d), out);
        }
        &self.planted[&(e, n, d)]
    }

    fn trees(&mut self, e: usize, n: u32, d: u32) -> Vec<Item> {
        let mut out = Vec::new();
        let planted: Vec<(Tree, usize, u32, u32)> = self
            .planted(e, n, d)
            .iter()
            .map(|i| (i.tree.clone(), i.edges, i.nodes, i.derivs))
            .collect();
        for (k, kn) in self.monomials.clone() {
            if kn > n {
                continue;
            }
            let root = Tree::monomial(k);
            #[allow(clippy::too_many_arguments)]
            fn rec(
                start: usize,
                planted: &[(Tree, usize, u32, u32)],
                cur: Tree,
                e: usize,
                nn: u32,
                dd: u32,
                used: (usize, u32, u32),
                out: &mut Vec<Item>,
            ) {
                out.push(Item {
                    tree: cur.clone(),
                    edges: used.0,
                    nodes: used.1,
                    derivs: used.2,
                });
                for (i, (p, pe, pn, pd)) in planted.iter().enumerate().skip(start) {
                    if *pe <= e && *pn <= nn && *pd <= dd {
                        rec(
                            i,
                            planted,
                            cur.mul(p),
                            e - pe,
                            nn - pn,
                            dd - pd,
                            (used.0 + pe, used.1 + pn, used.2 + pd),
                            out,
                        );
                    }
                }
            }
            rec(0, &planted, root, e, n - kn, d, (0, kn, 0), &mut out);
        }
        out
    }
}

/// Every tree within `pool`, respecting the terminal-noise rule, in canonical order.
pub fn enumerate_trees(sc: &Scaling, pool: &Pool) -> Vec<Tree> {
    let mut en = Enumerator::new(sc, pool);
    let mut out: Vec<Tree> = en
        .trees(pool.max_edges, pool.node_budget, pool.deriv_budget)
        .into_iter()
        .map(|i| i.tree)
        .collect();
    out.sort_by(|a, b| a.edge_count().cmp(&b.edge_count()).then_with(|| a.cmp(b)));
    out.dedup();
    out
}

/// Planted trees `I_{(𝔱,p)}(τ)` within `pool`.
pub fn enumerate_planted(sc: &Scaling, pool: &Pool) -> Vec<Tree> {
    let mut en = Enumerator::new(sc, pool);
    let mut out: Vec<Tree> = en
        .planted(pool.max_edges, pool.node_budget, pool.deriv_budget)
        .iter()
        .map(|i| i.tree.clone())
        .collect();
    out.sort_by(|a, b| a.edge_count().cmp(&b.edge_count()).then_with(|| a.cmp(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::Q;

    #[test]
    fn small_counts() {
        let sc = Scaling::new(vec![1], &[("t", Q::from_integer(2), TypeKind::Kernel)]).unwrap();
        // Plain rooted trees with at most 3 edges: 1 + 1 + 2 + 4.
        assert_eq!(enumerate_trees(&sc, &Pool::plain(3)).len(), 8);
        // One unit of node decoration: placed on any node of each shape, or nowhere.
        let withx = enumerate_trees(&sc, &Pool::new(1, 1, 0));
        let names: Vec<String> = withx.iter().map(|t| t.to_string()).collect();
        assert_eq!(
            names,
            vec!["1", "X", "I[t,0](1)", "I[t,0](X)", "X*I[t,0](1)"]
        );
    }

    #[test]
    fn noise_stays_terminal() {
        let sc = Scaling::example();
        for t in enumerate_trees(&sc, &Pool::new(3, 1, 1)) {
            sc.validate(&t).unwrap();
        }
    }
}
