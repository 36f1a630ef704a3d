use std::cell::RefCell;

use serde_json::{json, Value};
use treealg::birkhoff::{
    ck_character, ck_factorisation, classical_birkhoff, CkHopf, ComoduleBirkhoff, PointFamily,
    RsBogoliubov, SimplifiedPlusComodule,
};
use treealg::hopf::ck::{CkForest, CkTree};
use treealg::hopf::PlusEngine;
use treealg::models::CanonicalPi;
use treealg::targets::{Algebra, GaussPolyFn, LaurentSeries, OscillatoryFn};
use treealg::trees::Tree;

use crate::args::{BirkhoffArgs, RecursionKind, TargetKind};
use crate::config::Context;
use crate::output::{num, point_text, CliError, Outcome};

pub fn run(ctx: &Context, a: &BirkhoffArgs) -> Result<Outcome, CliError> {
    let t = ctx.sc.parse(&a.tree)?;
    let target = a.target.unwrap_or(match a.recursion {
        RecursionKind::Classical => TargetKind::Laurent,
        _ => TargetKind::Gausspoly,
    });
    match (a.recursion, target) {
        (RecursionKind::Classical, TargetKind::Laurent) => classical::<LaurentSeries>(&t),
        (RecursionKind::Classical, TargetKind::Osc) => classical::<OscillatoryFn>(&t),
        (RecursionKind::Rs | RecursionKind::RsSimplified, TargetKind::Gausspoly) => rs(ctx, a, &t),
        (RecursionKind::Comodule, TargetKind::Gausspoly) => comodule(ctx, a, &t),
        (r, k) => Err(CliError::Usage(format!(
            "the {r:?} recursion does not run with the {k:?} target"
        ))),
    }
}

/// A target of the classical recursion with its projection and a toy character.
trait ClassicalTarget: Algebra + std::fmt::Display {
    const NAME: &'static str;
    fn vertex(t: &CkTree) -> Self;
    fn q(&self) -> Self;
    fn negligible(&self) -> bool;
}

impl ClassicalTarget for LaurentSeries {
    const NAME: &'static str = "laurent";

    /// `1/t + 1` at every vertex.
    fn vertex(_: &CkTree) -> Self {
        LaurentSeries::from_pairs(&[(-1, 1.0), (0, 1.0)], 10)
    }
    fn q(&self) -> Self {
        self.pole_project()
    }
    fn negligible(&self) -> bool {
        self.coeffs().all(|(_, c)| c.abs() < 1e-9)
    }
}

impl ClassicalTarget for OscillatoryFn {
    const NAME: &'static str = "osc";

    /// `z + e^{iz·k^n}` at a vertex whose subtree has `n` vertices.
    fn vertex(t: &CkTree) -> Self {
        let phase = OscillatoryFn::term(1, &[(0, 1.0)], &[(vec![t.vertices() as u32], 1)]);
        OscillatoryFn::term(1, &[(1, 1.0)], &[]).add(&phase)
    }
    fn q(&self) -> Self {
        self.project()
    }
    fn negligible(&self) -> bool {
        self.terms()
            .all(|(_, q)| q.values().all(|c| c.abs() < 1e-9))
    }
}

fn vertex_product<A: ClassicalTarget>(t: &CkTree) -> A {
    let mut acc = A::vertex(t);
    for c in t.children() {
        acc = acc.mul(&vertex_product::<A>(c));
    }
    acc
}

fn classical<A: ClassicalTarget>(t: &Tree) -> Result<Outcome, CliError> {
    let ck = CkTree::from_tree(t)?;
    let one = A::vertex(&CkTree::node()).one_like();
    let tree_fn = |u: &CkTree| vertex_product::<A>(u);
    let phi = ck_character(&tree_fn, &one);
    let q = |x: &A| x.q();
    let f = CkForest::single(ck.clone());
    let res = classical_birkhoff(&CkHopf, &phi, &q, f.vertices())?;
    let back = ck_factorisation(&res, &f)?;
    let pass = back.sub(&phi(&f)).negligible();
    let name = A::NAME;
    let text = format!(
        "tree: {ck}\nrecursion: classical, target {name}\nphi = {}\nphi_bar = {}\nphi_minus = {}\nphi_plus = {}\nfactorisation phi_plus * phi_minus^-1 = phi: {}",
        phi(&f),
        res.preparation[&f],
        res.counterterm[&f],
        res.renormalised[&f],
        if pass { "holds" } else { "fails" }
    );
    let json = json!({
        "tree": ck.to_string(),
        "recursion": "classical",
        "target": name,
        "phi": phi(&f).to_string(),
        "phi_bar": res.preparation[&f].to_string(),
        "phi_minus": res.counterterm[&f].to_string(),
        "phi_plus": res.renormalised[&f].to_string(),
        "factorisation": pass,
    });
    Ok(Outcome::new(text, json).with_pass(pass))
}

struct Values {
    prep: GaussPolyFn,
    minus: Option<GaussPolyFn>,
    minus_at_xbar: Option<f64>,
    plus: GaussPolyFn,
}

fn report(
    name: &str,
    t: &Tree,
    points: Vec<(&str, Vec<f64>)>,
    y: Option<Vec<f64>>,
    v: Values,
) -> Outcome {
    let mut lines = vec![format!("tree: {t}"), format!("recursion: {name}")];
    for (n, p) in &points {
        lines.push(format!("{n} = {}", point_text(p)));
    }
    lines.push(format!("phi_bar(y) = {}", v.prep));
    match &v.minus {
        Some(m) => lines.push(format!("phi_minus(y) = {m}")),
        None => lines.push("phi_minus: zero outside the positive trees".into()),
    }
    if let Some(m) = v.minus_at_xbar {
        lines.push(format!("phi_minus = {}", num(m)));
    }
    lines.push(format!("phi_plus(y) = {}", v.plus));
    let mut json = json!({
        "tree": t.to_string(),
        "recursion": name,
        "points": points.iter().map(|(n, p)| (n.to_string(), json!(p))).collect::<serde_json::Map<String, Value>>(),
        "phi_bar": v.prep.to_json(),
        "phi_minus": v.minus.as_ref().map(|m| m.to_json()),
        "phi_minus_at_xbar": v.minus_at_xbar,
        "phi_plus": v.plus.to_json(),
    });
    if let Some(y) = y {
        let pb = v.prep.eval(&y);
        let pp = v.plus.eval(&y);
        lines.push(format!("at y = {}:", point_text(&y)));
        lines.push(format!("  phi_bar = {}", num(pb)));
        if let Some(m) = &v.minus {
            lines.push(format!("  phi_minus(y) = {}", num(m.eval(&y))));
        }
        lines.push(format!("  phi_plus = {}", num(pp)));
        json["y"] = json!(y);
        json["phi_bar_at_y"] = json!(pb);
        json["phi_minus_at_y"] = json!(v.minus.as_ref().map(|m| m.eval(&y)));
        json["phi_plus_at_y"] = json!(pp);
    }
    Outcome::new(lines.join("\n"), json)
}

fn rs(ctx: &Context, a: &BirkhoffArgs, t: &Tree) -> Result<Outcome, CliError> {
    let pi = CanonicalPi::new(&ctx.sc, ctx.assignment()?);
    let y = a.y.as_ref().map(|p| ctx.point(Some(p))).transpose()?;
    let simplified = a.recursion == RecursionKind::RsSimplified;
    let (r, points) = if simplified {
        if a.x.is_some() || a.xbar.is_some() {
            return Err(CliError::Usage(
                "the simplified recursion is based at the origin; drop --x and --xbar".into(),
            ));
        }
        (RsBogoliubov::simplified(&pi), Vec::new())
    } else {
        let x = ctx.point(a.x.as_ref())?;
        let xbar = ctx.point(a.xbar.as_ref())?;
        let r = RsBogoliubov::new(&pi, &x, &xbar)?;
        (r, vec![("x", x), ("xbar", xbar)])
    };
    let positive = ctx.sc.is_positive(t);
    let values = Values {
        prep: r.prep(t)?,
        minus: positive.then(|| r.minus(t)).transpose()?,
        minus_at_xbar: positive.then(|| r.minus_at_xbar(t)).transpose()?,
        plus: r.plus(t)?,
    };
    let name = if simplified { "rs-simplified" } else { "rs" };
    Ok(report(name, t, points, y, values))
}

fn comodule(ctx: &Context, a: &BirkhoffArgs, t: &Tree) -> Result<Outcome, CliError> {
    if a.x.is_some() || a.xbar.is_some() {
        return Err(CliError::Usage(
            "the comodule recursion is based at the origin; drop --x and --xbar".into(),
        ));
    }
    let y = a.y.as_ref().map(|p| ctx.point(Some(p))).transpose()?;
    let sc = &ctx.sc;
    let pi = CanonicalPi::new(sc, ctx.assignment()?);
    let origin = vec![0.0; ctx.dim()];
    let m = SimplifiedPlusComodule {
        plus: PlusEngine::new(sc),
    };
    let failure = RefCell::new(None);
    let phi = |u: &Tree| {
        pi.eval(&origin, u).unwrap_or_else(|e| {
            failure.borrow_mut().get_or_insert(e);
            GaussPolyFn::zero(origin.len())
        })
    };
    let q = |h: &Tree, f: &GaussPolyFn| f.taylor_jet(sc.deg(h), &origin, sc.s());
    let cb = ComoduleBirkhoff::new(&m, &phi, &q, GaussPolyFn::one(origin.len()));
    let positive = sc.is_positive(t);
    let values = Values {
        prep: cb.prep(t)?,
        minus: positive.then(|| cb.minus(t)).transpose()?,
        minus_at_xbar: None,
        plus: cb.plus(t)?,
    };
    if let Some(e) = failure.into_inner() {
        return Err(e.into());
    }
    Ok(report("comodule", t, Vec::new(), y, values))
}
