//! Finite linear combinations over an ordered key set.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Zero};

/// Exact rational scalar used by the combinatorial layer.
pub type Q = Rational64;

/// Scalars a [`LinComb`] can carry.
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

/// A finite sum `Σ c_k · k` with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinComb<K: Ord, C = Q> {
    terms: BTreeMap<K, C>,
}

impl<K: Ord, C> Default for LinComb<K, C> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone, C: Coeff> LinComb<K, C> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis element `k` with coefficient one.
    pub fn single(k: K) -> Self {
        Self::term(k, C::one())
    }

    pub fn term(k: K, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn add_term(&mut self, k: K, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone() * c.clone());
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn scaled(&self, c: &C) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn coeff(&self, k: &K) -> C {
        self.terms.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &C)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Linear extension of a map on basis elements.
    pub fn flat_map<K2, F>(&self, mut f: F) -> LinComb<K2, C>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> LinComb<K2, C>,
    {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Linear extension of a map sending basis elements to basis elements.
    pub fn map_keys<K2, F>(&self, mut f: F) -> LinComb<K2, C>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> K2,
    {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Keeps the terms whose key satisfies `keep`.
    pub fn filter<F: FnMut(&K) -> bool>(&self, mut keep: F) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            if keep(k) {
                out.terms.insert(k.clone(), c.clone());
            }
        }
        out
    }

    /// Converts the coefficients through `f`, dropping any that become zero.
    pub fn map_coeffs<C2: Coeff, F: FnMut(&C) -> C2>(&self, mut f: F) -> LinComb<K, C2> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }
}

impl<K: Ord + Clone, C: Coeff> FromIterator<(K, C)> for LinComb<K, C> {
    fn from_iter<I: IntoIterator<Item = (K, C)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord, C> IntoIterator for LinComb<K, C> {
    type Item = (K, C);
    type IntoIter = btree_map::IntoIter<K, C>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<K: Ord + Clone, C: Coeff> Add for LinComb<K, C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
        self
    }
}

impl<K: Ord + Clone, C: Coeff> Sub for LinComb<K, C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (k, c) in rhs.terms {
            self.add_term(k, -c);
        }
        self
    }
}

impl<K: Ord + Clone, C: Coeff> Neg for LinComb<K, C> {
    type Output = Self;
    fn neg(self) -> Self {
        LinComb {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

/// Bilinear product of two combinations through a product on keys.
pub fn bilinear<K1, K2, K3, C, F>(
    a: &LinComb<K1, C>,
    b: &LinComb<K2, C>,
    mut f: F,
) -> LinComb<K3, C>
where
    K1: Ord + Clone,
    K2: Ord + Clone,
    K3: Ord + Clone,
    C: Coeff,
    F: FnMut(&K1, &K2) -> K3,
{
    let mut out = LinComb::zero();
    for (ka, ca) in a.iter() {
        for (kb, cb) in b.iter() {
            out.add_term(f(ka, kb), ca.clone() * cb.clone());
        }
    }
    out
}

/// Converts an exact rational to a float.
pub fn q_to_f64(q: &Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Prints a rational as `num/den`, or `num` when the denominator is one.
pub fn q_to_string(q: &Q) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `num/den`, `num`, or a finite decimal such as `-1.51`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().ok()?;
        let d: i64 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 12 {
            return None;
        }
        let neg = int.starts_with('-');
        let ip: i64 = if int.is_empty() || int == "-" || int == "+" {
            0
        } else {
            int.parse().ok()?
        };
        let den = 10i64.pow(frac.len() as u32);
        let fp: i64 = frac.parse().ok()?;
        let mag = ip.abs() * den + fp;
        return Some(Q::new(if neg { -mag } else { mag }, den));
    }
    s.parse::<i64>().ok().map(Q::from_integer)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_terms_are_dropped() {
        let mut a: LinComb<u32> = LinComb::single(3);
        a.add_term(3, -Q::one());
        assert!(a.is_zero());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_q("3/2"), Some(Q::new(3, 2)));
        assert_eq!(parse_q("-1.51"), Some(Q::new(-151, 100)));
        assert_eq!(parse_q("-0.5"), Some(Q::new(-1, 2)));
        assert_eq!(parse_q("2"), Some(Q::from_integer(2)));
        assert_eq!(parse_q("1/0"), None);
    }
}
