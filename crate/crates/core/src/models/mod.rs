//! Canonical characters built from kernels and deterministic noises, the
//! model maps `(Π_x, f_x, Γ_xy)` and their recursive formulations.

use std::cell::RefCell;
use std::collections::BTreeMap;

use rustc_hash::FxHashMap as HashMap;
use std::rc::Rc;

use serde::Serialize;
use serde_json::Value;

use crate::birkhoff::PointFamily;
use crate::error::{Error, Result};
use crate::hopf::{AntipodeEngine, AntipodeVariant};
use crate::linear::{q_to_f64, LinComb, Q};
use crate::multiindex::{indices_up_to, MultiIndex};
use crate::targets::{GaussPolyFn, Poly};
use crate::trees::{Edge, Scaling, Tree, TypeKind};

/// Tree combinations with floating coefficients, produced by `Γ_xy`.
pub type RealTreeSum = LinComb<Tree, f64>;

/// The kernels `K_𝔱` and noises `ξ_𝔱` behind a canonical character.
#[derive(Clone, Debug)]
pub struct KernelAssignment {
    pub kernels: BTreeMap<String, GaussPolyFn>,
    pub noises: BTreeMap<String, GaussPolyFn>,
}

impl KernelAssignment {
    /// Unit Gaussians `e^{−|y|²}` for every kernel and `(1 + Σy_i)e^{−|y|²}` for every noise.
    pub fn standard(sc: &Scaling) -> Result<KernelAssignment> {
        let n = sc.d_plus_1();
        let mut noise_poly = Poly::one(n);
        for i in 0..n {
            noise_poly = noise_poly.add(&Poly::var(n, i));
        }
        let noise = GaussPolyFn::term(noise_poly, Q::from_integer(1));
        Self::uniform(sc, GaussPolyFn::gaussian(n, Q::from_integer(1)), noise)
    }

    /// One kernel for all kernel types and one noise for all noise types.
    pub fn uniform(
        sc: &Scaling,
        kernel: GaussPolyFn,
        noise: GaussPolyFn,
    ) -> Result<KernelAssignment> {
        let mut ka = KernelAssignment {
            kernels: BTreeMap::new(),
            noises: BTreeMap::new(),
        };
        for (label, info) in sc.types() {
            match info.kind {
                TypeKind::Kernel => ka.kernels.insert(label.clone(), kernel.clone()),
                TypeKind::Noise => ka.noises.insert(label.clone(), noise.clone()),
            };
        }
        ka.check(sc)?;
        Ok(ka)
    }

    /// `{"kernels": {label: fn}, "noises": {label: fn}}`; absent labels fall back to [`Self::standard`].
    pub fn from_json(sc: &Scaling, v: &Value) -> Result<KernelAssignment> {
        let mut ka = Self::standard(sc)?;
        for (field, map) in [("kernels", &mut ka.kernels), ("noises", &mut ka.noises)] {
            if let Some(obj) = v.get(field) {
                let obj = obj
                    .as_object()
                    .ok_or_else(|| Error::Json(format!("`{field}` must be an object")))?;
                for (label, f) in obj {
                    if !map.contains_key(label) {
                        return Err(Error::UnknownType(label.clone()));
                    }
                    map.insert(label.clone(), GaussPolyFn::from_json(f)?);
                }
            }
        }
        ka.check(sc)?;
        Ok(ka)
    }

    fn check(&self, sc: &Scaling) -> Result<()> {
        for (label, k) in &self.kernels {
            if k.dim() != sc.d_plus_1() {
                return Err(Error::DimensionMismatch {
                    expected: sc.d_plus_1(),
                    found: k.dim(),
                });
            }
            if k.terms().any(|(w, _)| *w <= Q::from_integer(0)) {
                return Err(Error::Domain(format!(
                    "kernel `{label}` must be integrable"
                )));
            }
        }
        for n in self.noises.values() {
            if n.dim() != sc.d_plus_1() {
                return Err(Error::DimensionMismatch {
                    expected: sc.d_plus_1(),
                    found: n.dim(),
                });
            }
        }
        Ok(())
    }

    fn kernel(&self, label: &str) -> Result<&GaussPolyFn> {
        self.kernels
            .get(label)
            .ok_or_else(|| Error::UnknownType(label.to_string()))
    }

    fn noise(&self, label: &str) -> Result<&GaussPolyFn> {
        self.noises
            .get(label)
            .ok_or_else(|| Error::UnknownType(label.to_string()))
    }
}

fn point_key(p: &[f64]) -> Vec<u64> {
    p.iter().map(|v| v.to_bits()).collect()
}

/// `(y − x)^k` as a function of `y`.
fn centered(x: &[f64], k: &MultiIndex) -> GaussPolyFn {
    GaussPolyFn::from_poly(Poly::centered_power(x, k.entries()))
}

/// `Π^{(x̄)}`: `X_i ↦ y_i − x̄_i`, kernel edges by convolution, noise edges by `D^kξ`.
pub struct CanonicalPi<'a> {
    sc: &'a Scaling,
    ka: KernelAssignment,
    memo: RefCell<HashMap<(Vec<u64>, Tree), Rc<GaussPolyFn>>>,
}

impl<'a> CanonicalPi<'a> {
    pub fn new(sc: &'a Scaling, ka: KernelAssignment) -> Self {
        CanonicalPi {
            sc,
            ka,
            memo: RefCell::default(),
        }
    }

    pub fn assignment(&self) -> &KernelAssignment {
        &self.ka
    }

    /// `(D^p K_𝔱 * f)` or `D^p ξ_𝔱` for one edge above a child value.
    pub(crate) fn edge_value(
        &self,
        e: &Edge,
        child: &Tree,
        below: impl FnOnce() -> Result<GaussPolyFn>,
    ) -> Result<GaussPolyFn> {
        match self.sc.kind(&e.label)? {
            TypeKind::Kernel => self
                .ka
                .kernel(&e.label)?
                .deriv_multi(&e.deriv)
                .convolve(&below()?),
            TypeKind::Noise => {
                if !child.is_one() {
                    return Err(Error::NonTerminalNoise(e.label.to_string()));
                }
                Ok(self.ka.noise(&e.label)?.deriv_multi(&e.deriv))
            }
        }
    }

    fn eval_rec(&self, xbar: &[f64], t: &Tree) -> Result<Rc<GaussPolyFn>> {
        let key = (point_key(xbar), t.clone());
        if let Some(v) = self.memo.borrow().get(&key) {
            return Ok(v.clone());
        }
        let mut acc = centered(xbar, t.root());
        for (e, c) in t.branches() {
            let v = self.edge_value(e, c, || Ok((*self.eval_rec(xbar, c)?).clone()))?;
            acc = acc.mul(&v);
        }
        let out = Rc::new(acc);
        self.memo.borrow_mut().insert(key, out.clone());
        Ok(out)
    }
}

impl PointFamily for CanonicalPi<'_> {
    fn scaling(&self) -> &Scaling {
        self.sc
    }

    fn eval(&self, xbar: &[f64], t: &Tree) -> Result<GaussPolyFn> {
        Ok((*self.eval_shared(xbar, t)?).clone())
    }

    fn eval_shared(&self, xbar: &[f64], t: &Tree) -> Result<Rc<GaussPolyFn>> {
        if xbar.len() != self.sc.d_plus_1() {
            return Err(Error::DimensionMismatch {
                expected: self.sc.d_plus_1(),
                found: xbar.len(),
            });
        }
        self.eval_rec(xbar, &t.erase_marks())
    }
}

/// `Π_x`, `f_x`, `γ_xy` and `Γ_xy` built from `Π^{(x̄)}`.
pub struct Model<'a> {
    pi: &'a CanonicalPi<'a>,
    xbar: Vec<f64>,
    anti: Rc<AntipodeEngine<'a>>,
    fmemo: RefCell<HashMap<(Vec<u64>, Tree), f64>>,
    gmemo: RefCell<HashMap<(Vec<u64>, Vec<u64>, Tree), f64>>,
}

impl<'a> Model<'a> {
    pub fn new(pi: &'a CanonicalPi<'a>, xbar: &[f64]) -> Result<Self> {
        Self::with_engine(pi, xbar, Rc::new(AntipodeEngine::new(pi.sc)))
    }

    /// A model reusing the coproduct and antipode memos of `anti`.
    pub fn with_engine(
        pi: &'a CanonicalPi<'a>,
        xbar: &[f64],
        anti: Rc<AntipodeEngine<'a>>,
    ) -> Result<Self> {
        let n = pi.sc.d_plus_1();
        if xbar.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: xbar.len(),
            });
        }
        Ok(Model {
            pi,
            xbar: xbar.to_vec(),
            anti,
            fmemo: RefCell::default(),
            gmemo: RefCell::default(),
        })
    }

    pub fn scaling(&self) -> &'a Scaling {
        self.pi.sc
    }

    pub fn xbar(&self) -> &[f64] {
        &self.xbar
    }

    pub fn canonical(&self, t: &Tree) -> Result<GaussPolyFn> {
        self.pi.eval(&self.xbar, t)
    }

    fn canonical_shared(&self, t: &Tree) -> Result<Rc<GaussPolyFn>> {
        self.pi.eval_shared(&self.xbar, t)
    }

    fn check_point(&self, p: &[f64]) -> Result<()> {
        if p.len() != self.scaling().d_plus_1() {
            return Err(Error::DimensionMismatch {
                expected: self.scaling().d_plus_1(),
                found: p.len(),
            });
        }
        Ok(())
    }

    fn positive(&self, t: &Tree) -> Result<Tree> {
        let sc = self.scaling();
        sc.validate(t)?;
        let t = t.erase_marks();
        if !sc.is_positive(&t) {
            return Err(Error::Domain(format!(
                "f_x is defined on positive trees, got {t}"
            )));
        }
        Ok(t)
    }

    /// `f_x(τ) = Π(Ã₊τ)(x)`.
    pub fn f(&self, x: &[f64], t: &Tree) -> Result<f64> {
        self.check_point(x)?;
        let t = self.positive(t)?;
        self.f_rec(x, &t)
    }

    /// `f_x` by expanding `Ã₊τ` in full; only practical on small trees.
    pub fn f_expanded(&self, x: &[f64], t: &Tree) -> Result<f64> {
        self.check_point(x)?;
        let t = self.positive(t)?;
        let mut acc = 0.0;
        for (u, c) in self.anti.eval(&t, AntipodeVariant::Twisted).iter() {
            acc += q_to_f64(c) * self.canonical_shared(u)?.eval(x);
        }
        Ok(acc)
    }

    /// The recursion of `Ã₊` pushed through the character `Π(·)(x)`.
    fn f_rec(&self, x: &[f64], t: &Tree) -> Result<f64> {
        let key = (point_key(x), t.clone());
        if let Some(v) = self.fmemo.borrow().get(&key) {
            return Ok(*v);
        }
        let mut acc = shift_power(&self.xbar, x, t.root());
        for (e, c) in t.branches() {
            acc *= self.f_planted(x, e, c)?;
        }
        self.fmemo.borrow_mut().insert(key, acc);
        Ok(acc)
    }

    fn f_planted(&self, x: &[f64], e: &Edge, child: &Tree) -> Result<f64> {
        let sc = self.scaling();
        let d = self.anti.plus().hat(child);
        let mut out = 0.0;
        for l in indices_up_to(sc.s(), sc.planted_deg(e, child), true) {
            let pre = -shift_power(&self.xbar, x, &l) / l.factorial() as f64;
            let el = e.shifted(&l).plain();
            for ((a, b), c) in d.iter() {
                let fb = self.f_rec(x, b)?;
                if fb != 0.0 {
                    let pa = self
                        .canonical(&Tree::planted(el.clone(), a.clone()))?
                        .eval(x);
                    out += pre * q_to_f64(c) * pa * fb;
                }
            }
        }
        Ok(out)
    }

    /// `Π_x = (Π⊗f_x)Δ̂⁺`.
    pub fn pi_x(&self, x: &[f64], t: &Tree) -> Result<GaussPolyFn> {
        self.check_point(x)?;
        self.scaling().validate(t)?;
        let t = t.erase_marks();
        let mut acc = GaussPolyFn::zero(x.len());
        for ((a, b), c) in self.anti.plus().hat(&t).iter() {
            let fb = self.f_rec(x, b)?;
            if fb != 0.0 {
                acc.add_scaled(&*self.canonical_shared(a)?, fb * q_to_f64(c));
            }
        }
        Ok(acc)
    }

    /// `γ_xy = (f_x𝒜̄₊⊗f_y)Δ̄⁺` on a positive tree.
    pub fn gamma(&self, x: &[f64], y: &[f64], t: &Tree) -> Result<f64> {
        self.check_point(x)?;
        self.check_point(y)?;
        let t = self.positive(t)?;
        self.gamma_rec(x, y, &t)
    }

    fn gamma_rec(&self, x: &[f64], y: &[f64], t: &Tree) -> Result<f64> {
        let key = (point_key(x), point_key(y), t.clone());
        if let Some(v) = self.gmemo.borrow().get(&key) {
            return Ok(*v);
        }
        let mut acc = 0.0;
        for ((a, b), c) in self.anti.plus().bar(t)?.iter() {
            let mut fa = 0.0;
            for (u, cu) in self.anti.eval(a, AntipodeVariant::Bar).iter() {
                fa += q_to_f64(cu) * self.f_rec(x, u)?;
            }
            acc += q_to_f64(c) * fa * self.f_rec(y, b)?;
        }
        self.gmemo.borrow_mut().insert(key, acc);
        Ok(acc)
    }

    /// `Γ_xy = (id⊗γ_xy)Δ̂⁺`.
    pub fn big_gamma(&self, x: &[f64], y: &[f64], t: &Tree) -> Result<RealTreeSum> {
        self.check_point(x)?;
        self.check_point(y)?;
        self.scaling().validate(t)?;
        let t = t.erase_marks();
        let mut out = RealTreeSum::zero();
        for ((a, b), c) in self.anti.plus().hat(&t).iter() {
            let g = self.gamma_rec(x, y, b)?;
            out.add_term(a.clone(), g * q_to_f64(c));
        }
        Ok(out)
    }

    /// `Γ_xy` applied linearly to a combination.
    pub fn big_gamma_sum(&self, x: &[f64], y: &[f64], s: &RealTreeSum) -> Result<RealTreeSum> {
        let mut out = RealTreeSum::zero();
        for (t, c) in s.iter() {
            out.add_scaled(&self.big_gamma(x, y, t)?, c);
        }
        Ok(out)
    }

    /// `Π_x` applied linearly to a combination.
    pub fn pi_x_sum(&self, x: &[f64], s: &RealTreeSum) -> Result<GaussPolyFn> {
        let mut acc = GaussPolyFn::zero(x.len());
        for (t, c) in s.iter() {
            acc.add_scaled(&self.pi_x(x, t)?, *c);
        }
        Ok(acc)
    }

    /// Recentred value of one edge: the raw clause minus its `α`-jet at `x`.
    fn recentred_edge(&self, x: &[f64], e: &Edge, child: &Tree) -> Result<GaussPolyFn> {
        let sc = self.scaling();
        let base = self
            .pi
            .edge_value(e, child, || self.pi_x_recursive(x, child))?;
        let alpha = sc.planted_deg(e, child);
        Ok(base.sub(&base.taylor_jet_inclusive(alpha, x, sc.s())))
    }

    /// `Π_x` by recursion on the tree: `X^k ↦ (·−x)^k`, planted trees recentred
    /// by their `|ℓ|_𝔰 ≤ α` jet at `x`, products multiplied.
    pub fn pi_x_recursive(&self, x: &[f64], t: &Tree) -> Result<GaussPolyFn> {
        self.check_point(x)?;
        self.scaling().validate(t)?;
        let t = t.erase_marks();
        let mut acc = centered(x, t.root());
        for (e, c) in t.branches() {
            acc = acc.mul(&self.recentred_edge(x, e, c)?);
        }
        Ok(acc)
    }

    /// `f_x^{(x̄)}(𝒥_{(𝔱,k)}τ) = −Σ_{|ℓ|_𝔰≤α} (x̄−x)^ℓ/ℓ! (D^{k+ℓ}K_𝔱*Π_xτ)(x)`.
    pub fn f_x_recursive(&self, x: &[f64], planted: &Tree) -> Result<f64> {
        self.check_point(x)?;
        let sc = self.scaling();
        sc.validate(planted)?;
        let t = planted.erase_marks();
        if !t.is_planted() {
            return Err(Error::Domain(format!("expected a planted tree, got {t}")));
        }
        let (e, c) = &t.branches()[0];
        let alpha = sc.planted_deg(e, c);
        if alpha <= Q::from_integer(0) {
            return Err(Error::Domain(format!(
                "{t} has degree {alpha}, not positive"
            )));
        }
        let base = self.pi.edge_value(e, c, || self.pi_x_recursive(x, c))?;
        Ok(-base.taylor_jet_inclusive(alpha, x, sc.s()).eval(&self.xbar))
    }

    /// `Γ_xy` by recursion: `X_i ↦ X_i + (x_i−y_i)𝟏`, multiplicative, and
    /// `I_k(τ) ↦ I_k(Γ_xyτ) − Σ_{|ℓ|_𝔰≤α} (X+(x−y)𝟏)^ℓ/ℓ! (Π_x I_{k+ℓ}(Γ_xyτ))(y)`.
    pub fn gamma_recursive(&self, x: &[f64], y: &[f64], t: &Tree) -> Result<RealTreeSum> {
        self.check_point(x)?;
        self.check_point(y)?;
        let sc = self.scaling();
        sc.validate(t)?;
        self.gamma_rec_tree(x, y, &t.erase_marks())
    }

    fn gamma_rec_tree(&self, x: &[f64], y: &[f64], t: &Tree) -> Result<RealTreeSum> {
        let sc = self.scaling();
        let mut acc = shifted_power(t.root(), x, y);
        for (e, c) in t.branches() {
            let inner = self.gamma_rec_tree(x, y, c)?;
            let mut factor = inner.map_keys(|u| Tree::planted(e.plain(), u.clone()));
            for l in indices_up_to(sc.s(), sc.planted_deg(e, c), true) {
                let shifted = e.shifted(&l).plain();
                let mut v = 0.0;
                for (u, cu) in inner.iter() {
                    let planted = Tree::planted(shifted.clone(), u.clone());
                    v += cu * self.pi_x_recursive(x, &planted)?.eval(y);
                }
                factor.add_scaled(&shifted_power(&l, x, y), &(-v / l.factorial() as f64));
            }
            acc = real_mul(&acc, &factor);
        }
        Ok(acc)
    }
}

/// `(x̄−x)^k`.
fn shift_power(xbar: &[f64], x: &[f64], k: &MultiIndex) -> f64 {
    k.entries()
        .iter()
        .enumerate()
        .map(|(i, &p)| (xbar[i] - x[i]).powi(p as i32))
        .product()
}

/// `(X+(x−y)𝟏)^k`.
fn shifted_power(k: &MultiIndex, x: &[f64], y: &[f64]) -> RealTreeSum {
    let n = x.len();
    let mut acc = RealTreeSum::single(Tree::one(n));
    for (i, &p) in k.entries().iter().enumerate() {
        let mut f = RealTreeSum::single(Tree::x(n, i));
        f.add_term(Tree::one(n), x[i] - y[i]);
        for _ in 0..p {
            acc = real_mul(&acc, &f);
        }
    }
    acc
}

fn real_mul(a: &RealTreeSum, b: &RealTreeSum) -> RealTreeSum {
    crate::linear::bilinear(a, b, |s, t| s.mul(t))
}

/// Largest coefficient gap between two real tree combinations.
pub fn real_gap(a: &RealTreeSum, b: &RealTreeSum) -> f64 {
    let mut gap: f64 = 0.0;
    for (k, c) in a.iter() {
        gap = gap.max((c - b.coeff(k)).abs());
    }
    for (k, c) in b.iter() {
        gap = gap.max((c - a.coeff(k)).abs());
    }
    gap
}

/// One line of a model verification report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub tree: String,
    pub points: Vec<Vec<f64>>,
    pub max_gap: f64,
    pub pass: bool,
}

/// Ratio `|(Π_xτ)(y)| / ‖x−y‖_𝔰^{|τ|_𝔰}` at shrinking `‖x−y‖`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub tree: String,
    pub degree: f64,
    pub ratios: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ModelReport {
    pub checks: Vec<CheckRow>,
    pub bound_diagnostic: Vec<BoundRow>,
}

impl ModelReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn max_gap(&self) -> f64 {
        self.checks.iter().map(|c| c.max_gap).fold(0.0, f64::max)
    }
}

/// `Γ_xx = id`, `Γ_xyΓ_yz = Γ_xz` and `Π_y = Π_xΓ_xy` at the given point triples.
pub fn verify_model(
    model: &Model<'_>,
    points: &[(Vec<f64>, Vec<f64>, Vec<f64>)],
    trees: &[Tree],
    tol: f64,
) -> Result<ModelReport> {
    let mut report = ModelReport::default();
    let mut row = |check: &str, t: &Tree, pts: Vec<Vec<f64>>, gap: f64| {
        report.checks.push(CheckRow {
            check: check.to_string(),
            tree: t.to_string(),
            points: pts,
            max_gap: gap,
            pass: gap < tol,
        });
    };
    for t in trees {
        for (x, y, z) in points {
            let id = RealTreeSum::single(t.erase_marks());
            row(
                "gamma_xx_identity",
                t,
                vec![x.clone()],
                real_gap(&model.big_gamma(x, x, t)?, &id),
            );
            let lhs = model.big_gamma_sum(x, y, &model.big_gamma(y, z, t)?)?;
            let rhs = model.big_gamma(x, z, t)?;
            row(
                "gamma_composition",
                t,
                vec![x.clone(), y.clone(), z.clone()],
                real_gap(&lhs, &rhs),
            );
            let py = model.pi_x(y, t)?;
            let pxg = model.pi_x_sum(x, &model.big_gamma(x, y, t)?)?;
            row(
                "pi_reexpansion",
                t,
                vec![x.clone(), y.clone()],
                py.max_gap(&pxg),
            );
        }
    }
    let sc = model.scaling();
    if let Some((x, _, _)) = points.first() {
        for t in trees {
            let deg = sc.deg(t);
            let mut ratios = Vec::new();
            for j in 1..=4 {
                let h = 0.5f64.powi(j);
                let y: Vec<f64> = x.iter().map(|v| v + h).collect();
                let dist: f64 = sc.s().iter().map(|&s| h.powf(1.0 / s as f64)).sum();
                let val = model.pi_x(x, t)?.eval(&y).abs();
                ratios.push((dist, val / dist.powf(q_to_f64(&deg))));
            }
            report.bound_diagnostic.push(BoundRow {
                tree: t.to_string(),
                degree: q_to_f64(&deg),
                ratios,
            });
        }
    }
    Ok(report)
}

/// The point grid `{−1, −1/2, 0, 1/2, 1}^{d+1}`.
pub fn sample_grid(dim: usize) -> Vec<Vec<f64>> {
    let vals = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        let mut next = Vec::new();
        for p in &out {
            for v in vals {
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(sc: &Scaling) -> CanonicalPi<'_> {
        CanonicalPi::new(sc, KernelAssignment::standard(sc).unwrap())
    }

    #[test]
    fn closed_form_convolution() {
        let sc = Scaling::example();
        let g = GaussPolyFn::gaussian(1, Q::from_integer(1));
        let pi = CanonicalPi::new(&sc, KernelAssignment::uniform(&sc, g.clone(), g).unwrap());
        let v = pi
            .eval(&[0.0], &sc.parse("I[t,0](I[l,0](1))").unwrap())
            .unwrap();
        let expect = GaussPolyFn::term(
            Poly::constant(1, (std::f64::consts::PI / 2.0).sqrt()),
            Q::new(1, 2),
        );
        assert!(v.max_gap(&expect) < 1e-12);
    }

    #[test]
    fn f_recursion_matches_expansion() {
        let sc = Scaling::generic();
        let pi = setup(&sc);
        let m = Model::new(&pi, &[0.3]).unwrap();
        let trees = crate::trees::enumerate_trees(&sc, &crate::trees::Pool::new(3, 1, 1));
        for t in trees.iter().filter(|u| sc.is_positive(u)) {
            let a = m.f(&[-0.4], t).unwrap();
            let b = m.f_expanded(&[-0.4], t).unwrap();
            assert!((a - b).abs() < 1e-9, "{t}: {a} vs {b}");
        }
    }

    #[test]
    fn monomials_recentre() {
        let sc = Scaling::example();
        let pi = setup(&sc);
        let m = Model::new(&pi, &[0.0]).unwrap();
        let x2 = sc.parse("X^[2]").unwrap();
        let got = m.pi_x(&[0.5], &x2).unwrap();
        assert!(got.max_gap(&centered(&[0.5], &MultiIndex::new(vec![2]))) < 1e-12);
        let g = m
            .gamma_recursive(&[0.5], &[-1.0], &sc.parse("X").unwrap())
            .unwrap();
        let mut expect = RealTreeSum::single(sc.parse("X").unwrap());
        expect.add_term(Tree::one(1), 1.5);
        assert!(real_gap(&g, &expect) < 1e-12);
    }

    #[test]
    fn f_at_its_own_point_is_one_term() {
        let sc = Scaling::example();
        let pi = setup(&sc);
        let x = [0.5];
        let m = Model::new(&pi, &x).unwrap();
        let t = sc.parse("I[t,0](I[l,0](1))").unwrap();
        let direct = -pi.eval(&x, &t).unwrap().eval(&x);
        let mdl = Model::new(&pi, &[0.0]).unwrap();
        let pix = mdl.pi_x(&x, &sc.parse("I[l,0](1)").unwrap()).unwrap();
        let k = pi.assignment().kernels["t"].convolve(&pix).unwrap();
        assert!((m.f(&x, &t).unwrap() + k.eval(&x)).abs() < 1e-10);
        assert!((direct + k.eval(&x)).abs() < 1e-10);
    }
}
