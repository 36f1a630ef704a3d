#![allow(dead_code)]

use proptest::prelude::*;
use treealg::trees::{Edge, MultiIndex, Scaling, Tree};

/// Random trees over `Scaling::example()`: kernels `t`, `u`, terminal noise `l`.
pub fn arb_tree() -> impl Strategy<Value = Tree> {
    let leaf = (0u32..=2).prop_map(|k| Tree::monomial(MultiIndex::new(vec![k])));
    leaf.prop_recursive(3, 10, 3, |inner| {
        let branch = prop_oneof![
            (prop_oneof![Just("t"), Just("u")], 0u32..=1, inner)
                .prop_map(|(l, p, c)| (Edge::new(l, MultiIndex::new(vec![p])), c)),
            (0u32..=1).prop_map(|p| (Edge::new("l", MultiIndex::new(vec![p])), Tree::one(1))),
        ];
        (0u32..=2, prop::collection::vec(branch, 0..3))
            .prop_map(|(k, b)| Tree::from_parts(MultiIndex::new(vec![k]), b))
    })
}

pub fn example() -> Scaling {
    Scaling::example()
}
