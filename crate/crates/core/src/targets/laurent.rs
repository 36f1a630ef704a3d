//! Truncated Laurent series in `t` with minimal subtraction.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::write_signed_sum;
use crate::error::{Error, Result};

/// Default truncation order `N`.
pub const DEFAULT_ORDER: i32 = 10;

/// `Σ_{n ≤ N} a_n tⁿ`, finitely many negative exponents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaurentSeries {
    coeffs: BTreeMap<i32, f64>,
    order: i32,
}

impl LaurentSeries {
    pub fn zero(order: i32) -> Self {
        LaurentSeries {
            coeffs: BTreeMap::new(),
            order,
        }
    }

    pub fn constant(c: f64, order: i32) -> Self {
        Self::monomial(0, c, order)
    }

    pub fn one(order: i32) -> Self {
        Self::constant(1.0, order)
    }

    /// `c·tⁿ`, dropped when `n` exceeds the order.
    pub fn monomial(n: i32, c: f64, order: i32) -> Self {
        let mut s = Self::zero(order);
        s.add_coeff(n, c);
        s
    }

    /// Builds a series from `(exponent, coefficient)` pairs.
    pub fn from_pairs(pairs: &[(i32, f64)], order: i32) -> Self {
        let mut s = Self::zero(order);
        for &(n, c) in pairs {
            s.add_coeff(n, c);
        }
        s
    }

    fn add_coeff(&mut self, n: i32, c: f64) {
        if n > self.order || c == 0.0 {
            return;
        }
        let v = self.coeffs.get(&n).copied().unwrap_or(0.0) + c;
        if v == 0.0 {
            self.coeffs.remove(&n);
        } else {
            self.coeffs.insert(n, v);
        }
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn coeff(&self, n: i32) -> f64 {
        self.coeffs.get(&n).copied().unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&i32, &f64)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest pole order, zero when there is no pole part.
    pub fn pole_order(&self) -> i32 {
        self.coeffs.keys().next().map_or(0, |&n| (-n).max(0))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.order.min(other.order));
        for (&n, &c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            out.add_coeff(n, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut out = Self::zero(self.order);
        for (&n, &v) in &self.coeffs {
            out.add_coeff(n, v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.order.min(other.order));
        for (&n, &a) in &self.coeffs {
            for (&m, &b) in &other.coeffs {
                out.add_coeff(n + m, a * b);
            }
        }
        out
    }

    /// Multiplicative inverse of a non-zero series.
    pub fn inverse(&self) -> Result<Self> {
        let (&m, &am) = self
            .coeffs
            .iter()
            .next()
            .ok_or_else(|| Error::Domain("the zero series has no inverse".into()))?;
        let order = if m > 0 {
            self.order - 2 * m
        } else {
            self.order
        };
        let mut b: BTreeMap<i32, f64> = BTreeMap::new();
        let mut j = 0;
        while -m + j <= order {
            let mut acc = if j == 0 { 1.0 } else { 0.0 };
            for i in 1..=j {
                acc -= self.coeff(m + i) * b.get(&(-m + j - i)).copied().unwrap_or(0.0);
            }
            b.insert(-m + j, acc / am);
            j += 1;
        }
        let mut out = Self::zero(order);
        for (n, c) in b {
            out.add_coeff(n, c);
        }
        Ok(out)
    }

    /// Minimal subtraction `Q`: keeps `Σ_{n<0} a_n tⁿ`.
    pub fn pole_project(&self) -> Self {
        let mut out = Self::zero(self.order);
        for (&n, &c) in self.coeffs.range(..0) {
            out.add_coeff(n, c);
        }
        out
    }

    /// `(id − Q)`: the regular part.
    pub fn regular_part(&self) -> Self {
        self.sub(&self.pole_project())
    }

    /// True when no negative exponent is present.
    pub fn is_regular(&self) -> bool {
        self.coeffs.keys().all(|&n| n >= 0)
    }

    /// True when only negative exponents are present.
    pub fn is_pole(&self) -> bool {
        self.coeffs.keys().all(|&n| n < 0)
    }

    /// Largest coefficient gap up to exponent `upto`.
    pub fn max_gap_upto(&self, other: &Self, upto: i32) -> f64 {
        let mut keys: Vec<i32> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .filter(|&n| n <= upto)
            .collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .map(|n| (self.coeff(n) - other.coeff(n)).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order,
            "coeffs": self.coeffs.iter().map(|(n, c)| serde_json::json!([n, c])).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let order =
            v.get("order")
                .and_then(|o| o.as_i64())
                .ok_or_else(|| Error::Json("missing integer `order`".into()))? as i32;
        let mut out = Self::zero(order);
        let pairs = v
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::Json("missing array `coeffs`".into()))?;
        for p in pairs {
            let pair: (i32, f64) = serde_json::from_value(p.clone())?;
            out.add_coeff(pair.0, pair.1);
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs.iter().map(|(&n, &c)| {
            let m = match n {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{n}"),
            };
            (c, m)
        });
        write_signed_sum(f, terms)?;
        write!(f, " + O(t^{})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pole_projection() {
        let f = LaurentSeries::from_pairs(&[(-2, 1.0), (0, 3.0), (1, 1.0)], 10);
        assert_eq!(
            f.pole_project(),
            LaurentSeries::from_pairs(&[(-2, 1.0)], 10)
        );
        assert!(LaurentSeries::constant(5.0, 10).pole_project().is_zero());
    }

    #[test]
    fn inverse_of_unit() {
        let f = LaurentSeries::from_pairs(&[(-1, 1.0), (0, 1.0)], 10);
        let g = f.inverse().unwrap();
        let p = f.mul(&g);
        assert!(p.max_gap_upto(&LaurentSeries::one(10), 9) < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let f = LaurentSeries::from_pairs(&[(-3, 0.5), (2, -1.0)], 6);
        assert_eq!(LaurentSeries::from_json(&f.to_json()).unwrap(), f);
    }
}
