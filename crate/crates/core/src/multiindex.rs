//! Multi-indices `k ∈ ℕ^{d+1}` and their scaled norms.

use std::fmt;

use num_integer::binomial;

use crate::linear::Q;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zeros(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit vector `e_i` in dimension `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    /// Unscaled length `Σ k_i`, the exponent of `(−1)` in `(−X)^k`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other` when `other ≤ self` componentwise.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// `|k|_𝔰 = Σ s_i k_i`.
    pub fn scaled_norm(&self, s: &[u32]) -> u32 {
        self.0.iter().zip(s).map(|(k, si)| k * si).sum()
    }

    /// `k! = Π k_i!`.
    pub fn factorial(&self) -> i64 {
        self.0
            .iter()
            .map(|&k| (1..=k as i64).product::<i64>())
            .product()
    }

    /// `Π binom(n_i, k_i)`, zero unless `k ≤ n`.
    pub fn binomial(n: &MultiIndex, k: &MultiIndex) -> i64 {
        n.0.iter()
            .zip(&k.0)
            .map(|(&a, &b)| {
                if b > a {
                    0
                } else {
                    binomial(a as i64, b as i64)
                }
            })
            .product()
    }

    /// All `m ≤ self` componentwise, in lexicographic order.
    pub fn below(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::new()];
        for &k in &self.0 {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=k).map(move |j| {
                        let mut q = p.clone();
                        q.push(j);
                        q
                    })
                })
                .collect();
        }
        out.into_iter().map(MultiIndex).collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, "]")
    }
}

/// All `ℓ` with `|ℓ|_𝔰 < bound` (or `≤ bound` when `inclusive`), in lexicographic order.
pub fn indices_up_to(s: &[u32], bound: Q, inclusive: bool) -> Vec<MultiIndex> {
    let ok = |norm: u32| {
        let n = Q::from_integer(norm as i64);
        if inclusive {
            n <= bound
        } else {
            n < bound
        }
    };
    let mut out = Vec::new();
    if !ok(0) {
        return out;
    }
    let mut cur = vec![0u32; s.len()];
    fn rec(
        i: usize,
        s: &[u32],
        cur: &mut Vec<u32>,
        norm: u32,
        ok: &dyn Fn(u32) -> bool,
        out: &mut Vec<MultiIndex>,
    ) {
        if i == s.len() {
            out.push(MultiIndex(cur.clone()));
            return;
        }
        let mut k = 0;
        while ok(norm + k * s[i]) {
            cur[i] = k;
            rec(i + 1, s, cur, norm + k * s[i], ok, out);
            k += 1;
        }
        cur[i] = 0;
    }
    rec(0, s, &mut cur, 0, &ok, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_and_inclusive_bounds() {
        let s = [1];
        assert_eq!(indices_up_to(&s, Q::from_integer(2), false).len(), 2);
        assert_eq!(indices_up_to(&s, Q::from_integer(2), true).len(), 3);
        assert!(indices_up_to(&s, Q::from_integer(0), false).is_empty());
        assert_eq!(indices_up_to(&[2, 1], Q::new(5, 2), false).len(), 4);
    }

    #[test]
    fn binomials() {
        let n = MultiIndex::new(vec![3, 2]);
        assert_eq!(MultiIndex::binomial(&n, &MultiIndex::new(vec![1, 1])), 6);
        assert_eq!(MultiIndex::binomial(&n, &MultiIndex::new(vec![4, 0])), 0);
        assert_eq!(n.below().len(), 12);
    }
}
