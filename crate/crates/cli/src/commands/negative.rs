use serde_json::json;
use treealg::models::{CanonicalPi, Model, RealTreeSum};
use treealg::negative::{
    cointeraction_check, cointeraction_sides, renormalisation_map, renormalised_pi_x,
    ExtractionContraction, NegCoaction, NegativeAntipodes, NegativeBogoliubov, PositiveSide,
};
use treealg::trees::{format_sum, sum_to_json, Forest};

use crate::args::{NegativeOp, Point, Side};
use crate::config::Context;
use crate::output::{num, point_text, CliError, Outcome};

pub fn run(ctx: &Context, op: &NegativeOp) -> Result<Outcome, CliError> {
    let sc = &ctx.sc;
    let neg = ExtractionContraction::new(sc);
    match op {
        NegativeOp::Coaction { tree } => {
            let t = sc.parse(tree)?;
            let d = neg.coaction(&t);
            Ok(Outcome::new(format_sum(&d, false), sum_to_json(&*d))
                .with_latex(format_sum(&d, true)))
        }
        NegativeOp::Antipode { forest } => {
            let f = sc.parse_forest(forest)?;
            let anti = NegativeAntipodes::new(&neg);
            let tw = anti.twisted(&f)?;
            let plain = anti.antipode(&f)?;
            let text = format!(
                "twisted: {}\nantipode: {}",
                format_sum(&tw, false),
                format_sum(&plain, false)
            );
            let latex = format!(
                "\\tilde{{\\mathcal A}}_- = {}\n\\mathcal A_- = {}",
                format_sum(&tw, true),
                format_sum(&plain, true)
            );
            let json = json!({ "twisted": sum_to_json(&tw), "antipode": sum_to_json(&plain) });
            Ok(Outcome::new(text, json).with_latex(latex))
        }
        NegativeOp::Bogoliubov { forest } => {
            let f = sc.parse_forest(forest)?;
            let pi = CanonicalPi::new(sc, ctx.assignment()?);
            let bog = NegativeBogoliubov::new(&pi, &neg);
            let anti = NegativeAntipodes::new(&neg);
            let minus = bog.minus(&f)?;
            let via = bog.minus_via_antipode(&anti, &f)?;
            let plus = bog.plus(&f)?.expectation();
            let pass = (minus - via).abs() < 1e-12 && plus.abs() < 1e-9;
            let text = format!(
                "forest: {f}\npsi_minus = {}\npsi_minus via the twisted antipode = {}\nE(psi_plus) = {}",
                num(minus),
                num(via),
                num(plus)
            );
            let json = json!({
                "forest": f.to_string(),
                "psi_minus": minus,
                "psi_minus_via_antipode": via,
                "psi_plus_expectation": plus,
                "pass": pass,
            });
            Ok(Outcome::new(text, json).with_pass(pass))
        }
        NegativeOp::Cointeraction { tree, side } => {
            let t = sc.parse(tree)?;
            let ps = match side {
                Side::Cuts => PositiveSide::Cuts,
                Side::Hat => PositiveSide::Hat,
            };
            let (l, r) = cointeraction_sides(&neg, ps, &t);
            let holds = l == r;
            let name = format!("{side:?}").to_lowercase();
            let text = format!(
                "tree: {t}\nside: {name}\nterms: {} left, {} right\ncointeraction {}",
                l.len(),
                r.len(),
                if holds { "holds" } else { "fails" }
            );
            let json = json!({
                "tree": t.to_string(),
                "side": name,
                "lhs_terms": l.len(),
                "rhs_terms": r.len(),
                "holds": holds,
            });
            Ok(Outcome::new(text, json).with_pass(holds))
        }
        NegativeOp::Renormalise { tree, x, y } => renormalise(ctx, &neg, tree, x, y.as_ref()),
    }
}

fn real_sum_text(s: &RealTreeSum) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (t, c)) in s.iter().enumerate() {
        let (sign, mag) = if *c < 0.0 { ("-", -c) } else { ("+", *c) };
        match (i, sign) {
            (0, "+") => {}
            (0, _) => out.push('-'),
            _ => out.push_str(&format!(" {sign} ")),
        }
        if mag == 1.0 && !t.is_one() {
            out.push_str(&t.to_string());
        } else if t.is_one() {
            out.push_str(&num(mag));
        } else {
            out.push_str(&format!("{} {t}", num(mag)));
        }
    }
    out
}

fn renormalise(
    ctx: &Context,
    neg: &ExtractionContraction<'_>,
    tree: &str,
    x: &Point,
    y: Option<&Point>,
) -> Result<Outcome, CliError> {
    let sc = &ctx.sc;
    let t = sc.parse(tree)?;
    let x = ctx.point(Some(x))?;
    let pi = CanonicalPi::new(sc, ctx.assignment()?);
    let bog = NegativeBogoliubov::new(&pi, neg);
    let psi_minus = |f: &Forest| bog.minus(f);
    let model = Model::new(&pi, &vec![0.0; ctx.dim()])?;
    let m = renormalisation_map(neg, &psi_minus, &t)?;
    let hat = renormalised_pi_x(&model, neg, &psi_minus, &x, &t)?;
    let direct = model.pi_x_sum(&x, &m)?;
    let gap = hat.max_gap(&direct);
    let asserted = cointeraction_check(neg, PositiveSide::Hat, &t);
    let pass = !asserted || gap < 1e-8;
    let mut lines = vec![
        format!("tree: {t}"),
        format!("M tree = {}", real_sum_text(&m)),
        format!("renormalised Pi_x(y) = {hat}"),
        format!(
            "gap to Pi_x M: {gap:.3e} ({})",
            if asserted {
                "asserted, the cointeraction holds"
            } else {
                "reported only, the cointeraction fails on this tree"
            }
        ),
    ];
    let mut json = json!({
        "tree": t.to_string(),
        "x": x,
        "renormalisation": m.iter().map(|(u, c)| json!({ "tree": u.to_string(), "coeff": c })).collect::<Vec<_>>(),
        "pi_hat_x": hat.to_json(),
        "max_gap": gap,
        "asserted": asserted,
        "pass": pass,
    });
    if let Some(y) = y {
        let y = ctx.point(Some(y))?;
        let v = hat.eval(&y);
        lines.push(format!(
            "renormalised Pi_x at y = {}: {}",
            point_text(&y),
            num(v)
        ));
        json["y"] = json!(y);
        json["value"] = json!(v);
    }
    Ok(Outcome::new(lines.join("\n"), json).with_pass(pass))
}
