use serde_json::json;
use treealg::hopf::{antipode_plus, delta_plus, AntipodeVariant, CoproductMode};
use treealg::suites::{run_all, run_one};
use treealg::targets::GaussPolyFn;
use treealg::trees::{format_sum, sum_to_json};
use treealg::Q;

use super::rational;
use crate::args::TargetOp;
use crate::config::{read_json, Context};
use crate::output::{num, point_text, CliError, Outcome};

pub fn coprod(
    ctx: &Context,
    tree: &str,
    mode: &str,
    cutoff: Option<Q>,
) -> Result<Outcome, CliError> {
    let t = ctx.sc.parse(tree)?;
    let d = delta_plus(&ctx.sc, &t, CoproductMode::parse(mode, cutoff)?)?;
    Ok(Outcome::new(format_sum(&d, false), sum_to_json(&d)).with_latex(format_sum(&d, true)))
}

pub fn antipode(
    ctx: &Context,
    tree: &str,
    mode: &str,
    cutoff: Option<Q>,
) -> Result<Outcome, CliError> {
    let t = ctx.sc.parse(tree)?;
    let s = antipode_plus(&ctx.sc, &t, AntipodeVariant::parse(mode, cutoff)?)?;
    Ok(Outcome::new(format_sum(&s, false), sum_to_json(&s)).with_latex(format_sum(&s, true)))
}

fn gauss(arg: &str) -> Result<GaussPolyFn, CliError> {
    Ok(GaussPolyFn::from_json(&read_json(arg)?)?)
}

fn at_dim(f: &GaussPolyFn, p: &[f64]) -> Result<(), CliError> {
    if f.dim() != p.len() {
        return Err(CliError::Usage(format!(
            "function has {} variables, point has {}",
            f.dim(),
            p.len()
        )));
    }
    Ok(())
}

pub fn target(ctx: &Context, op: &TargetOp) -> Result<Outcome, CliError> {
    match op {
        TargetOp::Eval { f, at } => {
            let f = gauss(f)?;
            at_dim(&f, &at.0)?;
            let v = f.eval(&at.0);
            Ok(Outcome::new(num(v), json!({ "at": at.0, "value": v })))
        }
        TargetOp::Convolve { f, g, at } => {
            let (f, g) = (gauss(f)?, gauss(g)?);
            let h = f.convolve(&g)?;
            let mut text = h.to_string();
            let mut out = json!({ "result": h.to_json() });
            if let Some(p) = at {
                at_dim(&h, &p.0)?;
                let v = h.eval(&p.0);
                text.push_str(&format!("\nat {}: {}", point_text(&p.0), num(v)));
                out["at"] = json!(p.0);
                out["value"] = json!(v);
            }
            Ok(Outcome::new(text, out))
        }
        TargetOp::Jet { f, alpha, x } => {
            let f = gauss(f)?;
            at_dim(&f, &x.0)?;
            if f.dim() != ctx.dim() {
                return Err(CliError::Usage(format!(
                    "function has {} variables, the scaling has {}",
                    f.dim(),
                    ctx.dim()
                )));
            }
            let jet = f.taylor_jet(rational(alpha)?, &x.0, ctx.sc.s());
            Ok(Outcome::new(
                jet.to_string(),
                json!({ "result": jet.to_json() }),
            ))
        }
    }
}

pub fn verify(which: &str, seed: u64) -> Result<Outcome, CliError> {
    let reports = if which == "all" {
        run_all(seed)
    } else {
        let id: u32 = which.parse().map_err(|_| {
            CliError::Usage(format!("`{which}` is neither `all` nor a criterion number"))
        })?;
        vec![run_one(id, seed).ok_or_else(|| CliError::Usage(format!("no criterion {id}")))?]
    };
    let mut lines = Vec::new();
    for r in &reports {
        lines.push(r.line());
        lines.extend(r.notes.iter().map(|n| format!("    note: {n}")));
        lines.extend(r.failures.iter().map(|f| format!("    fail: {f}")));
    }
    let pass = reports.iter().all(|r| r.pass);
    lines.push(format!(
        "{} of {} criteria pass (seed {seed})",
        reports.iter().filter(|r| r.pass).count(),
        reports.len()
    ));
    let json = json!({ "seed": seed, "pass": pass, "criteria": reports });
    Ok(Outcome::new(lines.join("\n"), json).with_pass(pass))
}
