//! Gaussian-polynomial functions `Σ_j p_j(x)·exp(−a_j|x|²)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::linear::{parse_q, q_to_f64, q_to_string, Q};
use crate::multiindex::{indices_up_to, MultiIndex};

/// Smooth function on `ℝ^dim`, keyed by the exact Gaussian width.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussPolyFn {
    dim: usize,
    terms: BTreeMap<Q, Poly>,
}

impl GaussPolyFn {
    pub fn zero(dim: usize) -> Self {
        GaussPolyFn {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        Self::from_poly(Poly::constant(dim, c))
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, 1.0)
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::term(p, Q::from_integer(0))
    }

    /// `p(x)·exp(−width·|x|²)`; widths must be non-negative.
    pub fn term(p: Poly, width: Q) -> Self {
        assert!(width >= Q::from_integer(0), "negative Gaussian width");
        let mut out = GaussPolyFn::zero(p.nvars());
        out.push(width, p);
        out
    }

    /// `exp(−width·|x|²)`.
    pub fn gaussian(dim: usize, width: Q) -> Self {
        Self::term(Poly::one(dim), width)
    }

    fn push(&mut self, width: Q, p: Poly) {
        if p.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&width) {
            Some(q) => q.add(&p),
            None => p,
        };
        if !merged.is_zero() {
            self.terms.insert(width, merged);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Q, &Poly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every term has width zero.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|w| *w == Q::from_integer(0))
    }

    /// The width-zero part.
    pub fn polynomial_part(&self) -> Poly {
        self.terms
            .get(&Q::from_integer(0))
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.dim))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension");
        let mut out = self.clone();
        for (w, p) in &other.terms {
            out.push(*w, p.clone());
        }
        out
    }

    /// `self += c·other` in place.
    pub fn add_scaled(&mut self, other: &Self, c: f64) {
        assert_eq!(self.dim, other.dim, "dimension");
        if c == 0.0 {
            return;
        }
        for (w, p) in &other.terms {
            let entry = self.terms.entry(*w).or_insert_with(|| Poly::zero(self.dim));
            for (e, v) in p.terms() {
                entry.add_term(e.clone(), c * v);
            }
            if entry.is_zero() {
                self.terms.remove(w);
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut out = GaussPolyFn::zero(self.dim);
        for (w, p) in &self.terms {
            out.push(*w, p.scale(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension");
        let mut out = GaussPolyFn::zero(self.dim);
        for (wa, pa) in &self.terms {
            for (wb, pb) in &other.terms {
                out.push(wa + wb, pa.mul(pb));
            }
        }
        out
    }

    /// Partial derivative in coordinate `i`.
    pub fn deriv(&self, i: usize) -> Self {
        let mut out = GaussPolyFn::zero(self.dim);
        for (w, p) in &self.terms {
            let a = q_to_f64(w);
            let mut d = p.deriv(i);
            if a != 0.0 {
                d = d.sub(&Poly::var(self.dim, i).mul(p).scale(2.0 * a));
            }
            out.push(*w, d);
        }
        out
    }

    /// `D^ℓ f`.
    pub fn deriv_multi(&self, l: &MultiIndex) -> Self {
        let mut out = self.clone();
        for (i, &k) in l.entries().iter().enumerate() {
            for _ in 0..k {
                out = out.deriv(i);
            }
        }
        out
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        self.terms
            .iter()
            .map(|(w, p)| p.eval(x) * (-q_to_f64(w) * r2).exp())
            .sum()
    }

    /// Exact convolution `(f*g)(y) = ∫ f(z) g(y−z) dz`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let n = self.dim;
        let mut out = GaussPolyFn::zero(n);
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                let s = a + b;
                if s == Q::from_integer(0) {
                    return Err(Error::Divergent(
                        "both factors contain a non-integrable polynomial term".into(),
                    ));
                }
                let c = b / s;
                let cf = q_to_f64(&c);
                // z = u + c·y on 2n variables (u, y).
                let u = |i: usize| Poly::var(2 * n, i);
                let y = |i: usize| Poly::var(2 * n, n + i);
                let p_img: Vec<Poly> = (0..n).map(|i| u(i).add(&y(i).scale(cf))).collect();
                let q_img: Vec<Poly> = (0..n).map(|i| y(i).scale(1.0 - cf).sub(&u(i))).collect();
                let r = p.substitute(&p_img).mul(&q.substitute(&q_img));
                let sf = q_to_f64(&s);
                let mut res = Poly::zero(n);
                for (e, coef) in r.terms() {
                    let mut m = *coef;
                    for &k in &e[..n] {
                        m *= gaussian_moment(k, sf);
                    }
                    if m != 0.0 {
                        res.add_term(e[n..].to_vec(), m);
                    }
                }
                out.push(a * b / s, res);
            }
        }
        Ok(out)
    }

    /// Taylor jet `y ↦ Σ_{|ℓ|_𝔰 < α} (y−x)^ℓ/ℓ! D^ℓ f(x)`; zero when `α ≤ 0`.
    pub fn taylor_jet(&self, alpha: Q, x: &[f64], s: &[u32]) -> Self {
        self.jet(alpha, x, s, false)
    }

    /// Same jet with the non-strict bound `|ℓ|_𝔰 ≤ α`.
    pub fn taylor_jet_inclusive(&self, alpha: Q, x: &[f64], s: &[u32]) -> Self {
        self.jet(alpha, x, s, true)
    }

    fn jet(&self, alpha: Q, x: &[f64], s: &[u32], inclusive: bool) -> Self {
        let mut out = Poly::zero(self.dim);
        for l in indices_up_to(s, alpha, inclusive) {
            let d = self.deriv_multi(&l).eval(x);
            if d != 0.0 {
                out =
                    out.add(&Poly::centered_power(x, l.entries()).scale(d / l.factorial() as f64));
            }
        }
        GaussPolyFn::from_poly(out)
    }

    /// Largest coefficient gap over matching widths, relative to `max(1, |c|)`.
    pub fn max_gap(&self, other: &Self) -> f64 {
        let mut widths: Vec<&Q> = self.terms.keys().chain(other.terms.keys()).collect();
        widths.sort();
        widths.dedup();
        widths
            .into_iter()
            .map(|w| {
                let zero = Poly::zero(self.dim);
                let a = self.terms.get(w).unwrap_or(&zero);
                let b = other.terms.get(w).unwrap_or(&zero);
                a.max_gap(b)
            })
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let wire = Wire {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(w, p)| WireTerm {
                    width: q_to_string(w),
                    monomials: p
                        .terms()
                        .map(|(e, c)| WireMono {
                            exps: e.clone(),
                            coeff: *c,
                        })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_value(wire).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let wire: Wire = serde_json::from_value(v.clone())?;
        let mut out = GaussPolyFn::zero(wire.dim);
        for t in wire.terms {
            let w =
                parse_q(&t.width).ok_or_else(|| Error::Json(format!("bad width `{}`", t.width)))?;
            if w < Q::from_integer(0) {
                return Err(Error::Json("negative width".into()));
            }
            let mut p = Poly::zero(wire.dim);
            for m in t.monomials {
                if m.exps.len() != wire.dim {
                    return Err(Error::DimensionMismatch {
                        expected: wire.dim,
                        found: m.exps.len(),
                    });
                }
                p.add_term(m.exps, m.coeff);
            }
            out.push(w, p);
        }
        Ok(out)
    }
}

impl fmt::Display for GaussPolyFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, p)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *w == Q::from_integer(0) {
                write!(f, "({p})")?;
            } else {
                write!(f, "({p})*exp(-{}|y|^2)", q_to_string(w))?;
            }
        }
        Ok(())
    }
}

/// `∫_ℝ u^m e^{−s u²} du`.
fn gaussian_moment(m: u32, s: f64) -> f64 {
    if m % 2 == 1 {
        return 0.0;
    }
    let mut dfact = 1.0;
    let mut j = m as i64 - 1;
    while j > 1 {
        dfact *= j as f64;
        j -= 2;
    }
    dfact / (2.0 * s).powi(m as i32 / 2) * (PI / s).sqrt()
}

#[derive(Serialize, Deserialize)]
struct Wire {
    dim: usize,
    terms: Vec<WireTerm>,
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    width: String,
    monomials: Vec<WireMono>,
}

#[derive(Serialize, Deserialize)]
struct WireMono {
    exps: Vec<u32>,
    coeff: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_times_constant_is_total_mass() {
        let g = GaussPolyFn::gaussian(1, Q::from_integer(1));
        let c = g.convolve(&GaussPolyFn::one(1)).unwrap();
        assert!(c.is_polynomial());
        assert!((c.eval(&[0.3]) - PI.sqrt()).abs() < 1e-12);
        let x = GaussPolyFn::from_poly(Poly::var(1, 0));
        let cx = g.convolve(&x).unwrap();
        assert!((cx.eval(&[0.7]) - PI.sqrt() * 0.7).abs() < 1e-12);
    }

    #[test]
    fn two_gaussians() {
        let f = GaussPolyFn::gaussian(1, Q::from_integer(1));
        let g = GaussPolyFn::gaussian(1, Q::from_integer(2));
        let h = f.convolve(&g).unwrap();
        let y = 0.4f64;
        let expect = (PI / 3.0).sqrt() * (-(2.0 / 3.0) * y * y).exp();
        assert!((h.eval(&[y]) - expect).abs() < 1e-12);
    }

    #[test]
    fn polynomial_pair_diverges() {
        let one = GaussPolyFn::one(1);
        assert!(matches!(one.convolve(&one), Err(Error::Divergent(_))));
    }

    #[test]
    fn jet_examples() {
        let x2 = GaussPolyFn::from_poly(Poly::monomial(vec![2], 1.0));
        let j = x2.taylor_jet(Q::from_integer(3), &[1.0], &[1]);
        // 1 + 2(y − 1) = 2y − 1
        let expect =
            GaussPolyFn::from_poly(Poly::monomial(vec![1], 2.0).add(&Poly::constant(1, -1.0)));
        // ℓ = 2 also enters since 2 < 3.
        let expect = expect.add(&GaussPolyFn::from_poly(Poly::centered_power(&[1.0], &[2])));
        assert!(j.max_gap(&expect) < 1e-12);
        let x = GaussPolyFn::from_poly(Poly::var(1, 0));
        assert!(x.taylor_jet(Q::from_integer(1), &[0.0], &[1]).is_zero());
        assert!(x.taylor_jet(Q::from_integer(-1), &[0.0], &[1]).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let f = GaussPolyFn::term(Poly::monomial(vec![1, 2], -0.5), Q::new(3, 2))
            .add(&GaussPolyFn::one(2));
        let g = GaussPolyFn::from_json(&f.to_json()).unwrap();
        assert_eq!(f, g);
    }
}
