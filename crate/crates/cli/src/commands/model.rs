use serde_json::json;
use treealg::birkhoff::RsBogoliubov;
use treealg::models::{real_gap, verify_model, CanonicalPi, CheckRow, Model};
use treealg::trees::{enumerate_trees, Pool, Tree};

use crate::args::{ModelOp, Suite};
use crate::config::Context;
use crate::output::{num, point_text, CliError, Outcome};

pub fn run(ctx: &Context, op: &ModelOp) -> Result<Outcome, CliError> {
    match op {
        ModelOp::Build { tree, x, xbar, y } => build(ctx, tree, x, xbar.as_ref(), y.as_ref()),
        ModelOp::Verify {
            suite,
            max_edges,
            tol,
        } => verify(ctx, *suite, *max_edges, *tol),
    }
}

fn build(
    ctx: &Context,
    tree: &str,
    x: &crate::args::Point,
    xbar: Option<&crate::args::Point>,
    y: Option<&crate::args::Point>,
) -> Result<Outcome, CliError> {
    let t = ctx.sc.parse(tree)?;
    let x = ctx.point(Some(x))?;
    let xbar = ctx.point(xbar)?;
    let pi = CanonicalPi::new(&ctx.sc, ctx.assignment()?);
    let model = Model::new(&pi, &xbar)?;
    let px = model.pi_x(&x, &t)?;
    let mut lines = vec![
        format!("tree: {t}"),
        format!("x = {}, xbar = {}", point_text(&x), point_text(&xbar)),
        format!("Pi_x(y) = {px}"),
    ];
    let mut json = json!({
        "tree": t.to_string(),
        "x": x,
        "xbar": xbar,
        "pi_x": px.to_json(),
    });
    if ctx.sc.is_positive(&t) {
        let f = model.f(&x, &t)?;
        lines.push(format!("f_x = {}", num(f)));
        json["f_x"] = json!(f);
    }
    if let Some(y) = y {
        let y = ctx.point(Some(y))?;
        let v = px.eval(&y);
        lines.push(format!("Pi_x at y = {}: {}", point_text(&y), num(v)));
        json["y"] = json!(y);
        json["value"] = json!(v);
    }
    Ok(Outcome::new(lines.join("\n"), json))
}

fn const_point(dim: usize, v: f64) -> Vec<f64> {
    vec![v; dim]
}

fn row(check: &str, t: &Tree, points: Vec<Vec<f64>>, gap: f64, tol: f64) -> CheckRow {
    CheckRow {
        check: check.to_string(),
        tree: t.to_string(),
        points,
        max_gap: gap,
        pass: gap < tol,
    }
}

fn verify(ctx: &Context, suite: Suite, max_edges: usize, tol: f64) -> Result<Outcome, CliError> {
    let sc = &ctx.sc;
    let n = ctx.dim();
    let pi = CanonicalPi::new(sc, ctx.assignment()?);
    let trees = enumerate_trees(sc, &Pool::new(max_edges, 1, 1));
    let p = |v: f64| const_point(n, v);
    let mut rows = Vec::new();
    let mut diagnostic = None;
    match suite {
        Suite::Algebraic => {
            let model = Model::new(&pi, &p(0.0))?;
            let triples = vec![
                (p(-1.0), p(0.5), p(0.0)),
                (p(0.0), p(1.0), p(-0.5)),
                (p(0.5), p(-1.0), p(1.0)),
            ];
            let report = verify_model(&model, &triples, &trees, tol)?;
            diagnostic = Some(report.bound_diagnostic);
            rows = report.checks;
        }
        Suite::Invariance => {
            let xbars = [0.0, 0.5, -1.0];
            let models = xbars
                .iter()
                .map(|&b| Model::new(&pi, &p(b)))
                .collect::<treealg::Result<Vec<_>>>()?;
            for x in [-0.5, 0.0, 1.0] {
                let rss = xbars
                    .iter()
                    .map(|&b| RsBogoliubov::new(&pi, &p(x), &p(b)))
                    .collect::<treealg::Result<Vec<_>>>()?;
                for t in &trees {
                    let base = models[0].pi_x(&p(x), t)?;
                    for (m, &b) in models.iter().zip(&xbars).skip(1) {
                        let gap = base.max_gap(&m.pi_x(&p(x), t)?);
                        rows.push(row(
                            "pi_x_independent_of_xbar",
                            t,
                            vec![p(x), p(b)],
                            gap,
                            tol,
                        ));
                    }
                    if t.root().is_zero() && sc.is_positive(t) && !t.is_one() {
                        let base = rss[0].minus(t)?;
                        for (r, &b) in rss.iter().zip(&xbars).skip(1) {
                            let gap = base.max_gap(&r.minus(t)?);
                            rows.push(row(
                                "phi_minus_independent_of_xbar",
                                t,
                                vec![p(x), p(b)],
                                gap,
                                tol,
                            ));
                        }
                    }
                }
            }
        }
        Suite::Recursive => {
            let model = Model::new(&pi, &p(0.5))?;
            for (x, y) in [(-1.0, 0.5), (0.0, 1.0), (0.5, -0.5)] {
                for t in &trees {
                    let gap = model
                        .pi_x(&p(x), t)?
                        .max_gap(&model.pi_x_recursive(&p(x), t)?);
                    rows.push(row("pi_x_recursive", t, vec![p(x)], gap, tol));
                    let gap = real_gap(
                        &model.big_gamma(&p(x), &p(y), t)?,
                        &model.gamma_recursive(&p(x), &p(y), t)?,
                    );
                    rows.push(row("gamma_recursive", t, vec![p(x), p(y)], gap, tol));
                    if t.is_planted() && sc.is_positive(t) {
                        let gap = (model.f(&p(x), t)? - model.f_x_recursive(&p(x), t)?).abs();
                        rows.push(row("f_x_recursive", t, vec![p(x)], gap, tol));
                    }
                }
            }
        }
    }
    let pass = rows.iter().all(|r| r.pass);
    let max_gap = rows.iter().map(|r| r.max_gap).fold(0.0, f64::max);
    let suite_name = format!("{suite:?}").to_lowercase();
    let mut lines = vec![format!(
        "suite {suite_name}: {} checks on {} trees, max gap {max_gap:.3e}, {}",
        rows.len(),
        trees.len(),
        if pass { "pass" } else { "FAIL" }
    )];
    for r in rows.iter().filter(|r| !r.pass) {
        lines.push(format!(
            "  fail: {} on {} (gap {:.3e})",
            r.check, r.tree, r.max_gap
        ));
    }
    let mut json = json!({
        "suite": suite_name,
        "pass": pass,
        "max_gap": max_gap,
        "checks": rows,
    });
    if let Some(d) = diagnostic {
        json["bound_diagnostic"] = json!(d);
    }
    Ok(Outcome::new(lines.join("\n"), json).with_pass(pass))
}
