//! Real polynomials in a fixed number of variables.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// `Σ c_m x^m` with exponent vectors of length `nvars`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, f64>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: f64) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1.0)
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, 1.0)
    }

    pub fn monomial(exps: Vec<u32>, c: f64) -> Self {
        let mut p = Poly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// `(y − x)^ℓ` as a polynomial in `y`.
    pub fn centered_power(x: &[f64], l: &[u32]) -> Self {
        let n = x.len();
        let mut out = Poly::one(n);
        for (i, (&xi, &li)) in x.iter().zip(l).enumerate() {
            let lin = Poly::var(n, i).add(&Poly::constant(n, -xi));
            for _ in 0..li {
                out = out.mul(&lin);
            }
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &f64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> f64 {
        self.terms.get(exps).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: f64) {
        assert_eq!(exps.len(), self.nvars, "exponent length");
        if c == 0.0 {
            return;
        }
        let v = self.terms.get(&exps).copied().unwrap_or(0.0) + c;
        if v == 0.0 {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, v);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "variable count");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "variable count");
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Partial derivative in coordinate `i`.
    pub fn deriv(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * e[i] as f64);
            }
        }
        out
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.nvars, "point dimension");
        self.terms
            .iter()
            .map(|(e, c)| {
                c * e
                    .iter()
                    .zip(x)
                    .map(|(&k, &xi)| xi.powi(k as i32))
                    .product::<f64>()
            })
            .sum()
    }

    /// Replaces variable `i` by `images[i]`; all images share one variable count.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "substitution arity");
        let m = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(m), p.clone()])
            .collect();
        let mut out = Poly::zero(m);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(m, *c);
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Largest coefficient gap, scaled by `max(1, |coefficient|)`.
    pub fn max_gap(&self, other: &Poly) -> f64 {
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .map(|k| {
                let a = self.coeff(k);
                let b = other.coeff(k);
                (a - b).abs() / 1f64.max(a.abs().max(b.abs()))
            })
            .fold(0.0, f64::max)
    }
}

/// Writes `Σ cᵢ·mᵢ` with signs folded into the separators; `0` when empty.
pub(crate) fn write_signed_sum(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (f64, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, m) in terms {
        let (sign, mag) = if c < 0.0 { ("-", -c) } else { ("+", c) };
        if first {
            if sign == "-" {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        match (m.is_empty(), mag == 1.0) {
            (true, _) => write!(f, "{mag}")?,
            (false, true) => write!(f, "{m}")?,
            (false, false) => write!(f, "{mag}*{m}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn monomial_text(e: &[u32]) -> String {
    let one_var = e.len() == 1;
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let v = if one_var {
            "y".to_string()
        } else {
            format!("y{i}")
        };
        parts.push(if k == 1 { v } else { format!("{v}^{k}") });
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_sum(f, self.terms.iter().map(|(e, c)| (*c, monomial_text(e))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_matches_evaluation() {
        let p = Poly::monomial(vec![2, 1], 3.0).add(&Poly::var(2, 0));
        let u = Poly::var(1, 0).add(&Poly::one(1));
        let v = Poly::var(1, 0).scale(2.0);
        let q = p.substitute(&[u, v]);
        let t = 0.7;
        assert!((q.eval(&[t]) - p.eval(&[t + 1.0, 2.0 * t])).abs() < 1e-12);
    }

    #[test]
    fn centered_power_expands() {
        let p = Poly::centered_power(&[1.0], &[2]);
        assert_eq!(p.coeff(&[2]), 1.0);
        assert_eq!(p.coeff(&[1]), -2.0);
        assert_eq!(p.coeff(&[0]), 1.0);
    }
}
