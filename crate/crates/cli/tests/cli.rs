use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treealg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn hat_coproduct_of_a_planted_leaf() {
    let o = run(&["coprod", "--mode", "hat", "--tree", "I[t,0](1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        "1 ⊗ I[t,0](1) + I[t,0](1) ⊗ 1 + X ⊗ I[t,1](1)"
    );
    let v = json(&["coprod", "--mode", "hat", "--tree", "I[t,0](1)"]);
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert!(v[0].get("left").is_some() && v[0].get("right").is_some());
}

#[test]
fn rs_recursion_on_x_squared() {
    let v = json(&[
        "birkhoff",
        "--recursion",
        "rs",
        "--tree",
        "X^[2]",
        "--x",
        "0",
        "--xbar",
        "1",
        "--y",
        "0.5",
    ]);
    assert_eq!(v["phi_minus_at_xbar"].as_f64(), Some(1.0));
    assert_eq!(v["phi_plus_at_y"].as_f64(), Some(0.25));
}

#[test]
fn latex_output() {
    let o = run(&["coprod", "--tree", "I[t,0](1)", "--format", "latex"]);
    assert!(stdout(&o).contains("\\otimes"));
    let o = run(&[
        "model", "build", "--tree", "X", "--x", "0", "--format", "latex",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["coprod", "--tree", "I[t,0]("]).status.code(), Some(2));
    assert_eq!(
        run(&["coprod", "--tree", "I[q,0](1)"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["coprod", "--tree", "X", "--mode", "full"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "12"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let fails = run(&[
        "negative",
        "cointeraction",
        "--side",
        "hat",
        "--tree",
        "I[t,0](I[l,0](1)*I[l,0](1))",
    ]);
    assert_eq!(fails.status.code(), Some(1));
}

#[test]
fn truncated_coproduct_uses_the_global_cutoff() {
    let small = json(&[
        "coprod",
        "--mode",
        "full",
        "--cutoff",
        "0",
        "--tree",
        "I[t,0](X)",
    ]);
    let large = json(&[
        "coprod",
        "--mode",
        "full",
        "--cutoff",
        "3",
        "--tree",
        "I[t,0](X)",
    ]);
    assert!(small.as_array().unwrap().len() < large.as_array().unwrap().len());
}

#[test]
fn antipode_modes() {
    let o = run(&["antipode", "--tree", "I[t,0](1)"]);
    assert_eq!(stdout(&o).trim(), "-I[t,0](1) + X*I[t,1](1)");
    let o = run(&["antipode", "--mode", "twisted", "--tree", "I[l,0](1)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_byte_stable() {
    let args = [
        "model",
        "verify",
        "--suite",
        "recursive",
        "--max-edges",
        "2",
        "--format",
        "json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn model_suites_pass() {
    for suite in ["algebraic", "invariance", "recursive"] {
        let v = json(&["model", "verify", "--suite", suite, "--max-edges", "2"]);
        assert_eq!(v["pass"], true, "{suite}");
        let row = &v["checks"][0];
        for key in ["check", "tree", "points", "max_gap", "pass"] {
            assert!(row.get(key).is_some(), "{suite} row lacks {key}");
        }
    }
}

#[test]
fn classical_recursion_factorises() {
    for target in ["laurent", "osc"] {
        let v = json(&[
            "birkhoff",
            "--recursion",
            "classical",
            "--target",
            target,
            "--tree",
            "I[t,0](I[t,0](1))",
        ]);
        assert_eq!(v["factorisation"], true);
    }
    let o = run(&[
        "birkhoff",
        "--recursion",
        "rs",
        "--target",
        "laurent",
        "--tree",
        "X",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simplified_routes_agree_on_the_renormalised_part() {
    let tree = "I[t,0](I[l,0](1))";
    let rs = json(&[
        "birkhoff",
        "--recursion",
        "rs-simplified",
        "--tree",
        tree,
        "--y",
        "0.3",
    ]);
    let cm = json(&[
        "birkhoff",
        "--recursion",
        "comodule",
        "--tree",
        tree,
        "--y",
        "0.3",
    ]);
    let (a, b) = (
        rs["phi_plus_at_y"].as_f64().unwrap(),
        cm["phi_plus_at_y"].as_f64().unwrap(),
    );
    assert!((a - b).abs() < 1e-12, "{a} vs {b}");
}

#[test]
fn target_operations() {
    let f = r#"{"dim":1,"terms":[{"width":"1","monomials":[{"exps":[0],"coeff":1.0}]}]}"#;
    let v = json(&["target", "eval", "--f", f, "--at", "0"]);
    assert_eq!(v["value"].as_f64(), Some(1.0));
    let v = json(&["target", "convolve", "--f", f, "--g", f, "--at", "0"]);
    assert!((v["value"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2.sqrt()).abs() < 1e-12);
    let v = json(&["target", "jet", "--f", f, "--alpha", "1/2", "--x", "-1"]);
    assert!(v["result"]["terms"].as_array().unwrap().len() == 1);
}

#[test]
fn negative_commands() {
    let v = json(&[
        "negative",
        "coaction",
        "--tree",
        "I[t,0](I[l,0](1)*I[l,0](1))",
    ]);
    assert_eq!(v.as_array().unwrap().len(), 4);
    let v = json(&[
        "negative",
        "bogoliubov",
        "--forest",
        "I[l,0](1)*I[l,0](1) . I[l,0](1)*I[l,0](1)",
    ]);
    assert_eq!(v["pass"], true);
    let v = json(&["negative", "antipode", "--forest", "I[l,0](1)*I[l,0](1)"]);
    assert!(v["twisted"].is_array());
    let v = json(&[
        "negative",
        "renormalise",
        "--tree",
        "I[t,0](I[t,0](1))",
        "--x",
        "0.5",
    ]);
    assert_eq!(v["asserted"], true);
    assert!(v["max_gap"].as_f64().unwrap() < 1e-8);
}

#[test]
fn parabolic_config() {
    let dir = std::env::temp_dir().join(format!("treealg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("parabolic.json");
    std::fs::write(
        &path,
        r#"{"scaling":{"d_plus_1":2,"s":[2,1],"types":[
            {"name":"t","degree":"199/100","kind":"kernel"},
            {"name":"l","degree":"-151/100","kind":"noise"}]}}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let v = json(&[
        "--config",
        p,
        "model",
        "build",
        "--tree",
        "I[t,[0,0]](X^[0,1])",
        "--x",
        "0,0.5",
    ]);
    assert!(v["f_x"].is_number());
    let o = run(&["--config", p, "model", "build", "--tree", "X", "--x", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["--config", "/nonexistent/cfg.json", "coprod", "--tree", "X"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn quick_acceptance_criteria() {
    for id in ["3", "7"] {
        let o = run(&["verify", id, "--seed", "7"]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).contains("[PASS]"));
    }
}
