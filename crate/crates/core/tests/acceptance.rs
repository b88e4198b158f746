//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.
//!
//!     cargo test --release --test verify_acceptance -- --nocapture

use std::process::Command;

use rlfrac::fracops::constant_on;
use rlfrac::harness::{run_suite, semigroup_order, closed_form_integral_error, CheckResult, Report, Suite, VerifyConfig};
use rlfrac::specfun::{eta, h_critical, rho, trigamma};
use rlfrac::{
    bmo_seminorm, make_grid, sample, semigroup_defect, sobolev_rl_norm, AnalyticFunction, AnalyticKind, Anchor,
    BmoStrategy, Execution, Grid, Reconstruction,
};
use serde_json::Value;

struct Outcome {
    id: usize,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn checks<'a>(rep: &'a Report, id: &str) -> Vec<&'a CheckResult> {
    rep.checks.iter().filter(|c| c.check_id == id).collect()
}

/// Every check with this id passes, there are exactly `count` of them and
/// each was evaluated at the pinned slack.
fn all_green(rep: &Report, id: &str, count: usize, slack: f64) -> (bool, String) {
    let cs = checks(rep, id);
    let bad = cs.iter().filter(|c| !c.pass || !c.recomputed_pass()).count();
    let slack_ok = cs.iter().all(|c| c.slack() == slack);
    let ok = cs.len() == count && bad == 0 && slack_ok;
    (ok, format!("{id}: {}/{count} checks, {bad} violations", cs.len()))
}

fn param_f64(c: &CheckResult, key: &str) -> f64 {
    c.params.get(key).and_then(Value::as_f64).unwrap_or(f64::NAN)
}

fn criterion_1() -> (bool, String) {
    let mut worst = Vec::new();
    let mut ok = true;
    for &g in &[0.0, 1.0, 2.5, -0.4] {
        for &a in &[0.3, 0.5, 1.0, 1.7] {
            let (grid, tol) = if g < 0.0 {
                (make_grid(0.0, 1.0, 2048, 3.0, Anchor::Left).unwrap(), 1e-3)
            } else {
                (Grid::uniform(0.0, 1.0, 1024).unwrap(), 1e-6)
            };
            let err = closed_form_integral_error(g, a, grid, Execution::default()).unwrap();
            if err > tol {
                ok = false;
                worst.push(format!("γ={g} α={a}: {err:.3e} > {tol:e}"));
            }
        }
    }
    let detail = if worst.is_empty() { "16/16 within tolerance".to_string() } else { worst.join("; ") };
    (ok, detail)
}

fn criterion_2(rep: &Report) -> (bool, String) {
    let grid = Grid::uniform(0.0, 1.0, 1024).unwrap();
    let one = constant_on(&grid.into(), 1.0);
    let defect = semigroup_defect(&one, 0.5, 0.5).unwrap();
    let ns = [256, 512, 1024, 2048];
    let (order, _) = semigroup_order(
        |n| Ok(constant_on(&make_grid(0.0, 1.0, n, 2.0, Anchor::Left)?.into(), 1.0)),
        &ns,
        0.5,
        0.5,
    )
    .unwrap();
    let (suite_ok, _) = all_green(rep, "semigroup-order", 2, 0.0);
    let ok = defect <= 1e-4 && order >= 1.8 && suite_ok;
    (ok, format!("defect {defect:.3e} (≤ 1e-4), order {order:.3} (≥ 1.8)"))
}

fn criterion_4() -> (bool, String) {
    let log = AnalyticFunction::new(AnalyticKind::LogPlain).unwrap();
    let grid = make_grid(0.0, 1.0, 4096, 3.0, Anchor::Left).unwrap();
    let f = sample(&log, grid, Reconstruction::CellConstant).unwrap();
    let b = bmo_seminorm(&f, BmoStrategy::DyadicSliding).unwrap().value.to_f64();
    let target = 2.0 / std::f64::consts::E;
    let rel = (b - target).abs() / target;
    let konst = AnalyticFunction::new(AnalyticKind::Constant(3.25)).unwrap();
    let c = sample(&konst, Grid::uniform(0.0, 1.0, 64).unwrap(), Reconstruction::NodalLinear).unwrap();
    let b0 = bmo_seminorm(&c, BmoStrategy::Exhaustive).unwrap().value.to_f64();
    (rel <= 0.01 && b0 == 0.0, format!("BMO(log) {b:.6} (rel {rel:.2e}), BMO(const) {b0}"))
}

fn criterion_5(rep: &Report) -> (bool, String) {
    let (a, da) = all_green(rep, "k-closed-form", 3, 0.0);
    let (b, db) = all_green(rep, "k-argmax", 3, 0.0);
    let (c, dc) = all_green(rep, "k-growth-tail", 3, 0.0);
    let (d, dd) = all_green(rep, "k-growth-slope", 3, 0.0);
    let tol_ok = checks(rep, "k-closed-form").iter().all(|c| c.rhs == 0.01)
        && checks(rep, "k-argmax").iter().all(|c| c.rhs == 1.05)
        && checks(rep, "k-growth-slope").iter().all(|c| (c.rhs - 0.1 * param_f64(c, "sigma")).abs() < 1e-15);
    (a && b && c && d && tol_ok, format!("{da}; {db}; {dc}; {dd}"))
}

fn criterion_6() -> (bool, String) {
    let grid: Vec<f64> = (1..=9900).map(|i| 1.0 + 0.01 * i as f64).collect();
    let mut min_rho = f64::INFINITY;
    for zeta in [1.0, 2.0, 5.0] {
        for &s in &grid {
            min_rho = min_rho.min(rho(zeta, s).unwrap());
        }
    }
    let worst = grid.iter().map(|&s| trigamma(s).unwrap() - ((1.0 / s).exp() - 1.0)).fold(f64::NEG_INFINITY, f64::max);
    (min_rho > 0.0 && worst < 0.0, format!("min ρ {min_rho:.4e}, max ψ₁(s) − (e^(1/s) − 1) {worst:.3e}"))
}

fn criterion_7() -> (bool, String) {
    let mut prev = f64::NEG_INFINITY;
    let mut drops = 0;
    for i in 1..=1000 {
        let v = eta(1e5f64.powf(i as f64 / 1000.0)).unwrap();
        if v < prev {
            drops += 1;
        }
        prev = v;
    }
    let gap = (eta(1e5).unwrap() - 2.0 / std::f64::consts::E).abs();
    (drops == 0 && gap < 1e-3, format!("{drops} decreases, |η(1e5) − 2/e| = {gap:.3e}"))
}

fn criterion_8(rep: &Report) -> (bool, String) {
    let parts = [
        all_green(rep, "hl-critical-a", 1800, 1e-10),
        all_green(rep, "hl-critical-b", 1800, 1e-10),
        all_green(rep, "hl-critical-c", 1800, 1e-10),
        all_green(rep, "bmo-critical", 600, 1e-6),
    ];
    (parts.iter().all(|p| p.0), parts.iter().map(|p| p.1.as_str()).collect::<Vec<_>>().join("; "))
}

fn criterion_9(rep: &Report) -> (bool, String) {
    let (scan, d) = all_green(rep, "k-critical-r", 100, 1e-10);
    let near = h_critical(2.0, 1.0 + 1e-6).unwrap();
    let far = h_critical(2.0, 1e6).unwrap();
    let ok = scan && (0.999..=1.001).contains(&near) && far < 0.01;
    (ok, format!("{d}; h(1+1e-6) = {near:.6}; h(1e6) = {far:.6} (required < 0.01)"))
}

fn criterion_10(rep: &Report) -> (bool, String) {
    // 100 fuzz functions × 3 orders, plus the constant input at α = 1
    let (fuzz, d) = all_green(rep, "sobolev", 301, 1e-4);
    let grid = Grid::uniform(0.0, 1.0, 256).unwrap();
    let one = constant_on(&grid.into(), 1.0);
    let lhs = sobolev_rl_norm(&rlfrac::rl_integral(&one, 1.0).unwrap(), 1.0, 1.0).unwrap();
    let rhs = rlfrac::harness::sobolev_constant(1.0, 1.0).unwrap() * rlfrac::lp_norm(&one, 1.0).unwrap();
    let exact = (lhs - 1.5).abs() <= 1e-9 && (rhs - 2.0).abs() <= 1e-9;
    (fuzz && exact, format!("{d}; exact case lhs {lhs:.12} rhs {rhs:.12}"))
}

fn criterion_11(rep: &Report) -> (bool, String) {
    let cs = checks(rep, "sharpness");
    let find = |regime: &str| cs.iter().find(|c| c.params.get("regime").and_then(Value::as_str) == Some(regime) && c.params.get("divergent") == Some(&Value::Bool(true)));
    let mut ok = true;
    let mut out = Vec::new();
    for (regime, tol) in [("high-integrability", 0.1), ("excess-order", 0.2)] {
        match find(regime) {
            Some(c) => {
                let fit = param_f64(c, "c_fit");
                let pred = param_f64(c, "c_pred");
                ok &= (fit - pred).abs() <= tol * pred.abs();
                out.push(format!("{regime}: fit {fit:.5} vs {pred:.5}"));
            }
            None => {
                ok = false;
                out.push(format!("{regime}: missing"));
            }
        }
    }
    (ok, out.join("; "))
}

fn criterion_12(rep: &Report) -> (bool, String) {
    let (a, da) = all_green(rep, "gallery-shifted-bmo-increasing", 1, 0.0);
    let (b, db) = all_green(rep, "gallery-logplain-k1", 1, 0.0);
    let k1 = checks(rep, "gallery-logplain-k1").first().map_or(f64::NAN, |c| param_f64(c, "k_value"));
    (a && b && (k1 - 1.0).abs() <= 0.01, format!("{da}; {db}; K₁(log) = {k1:.8}"))
}

fn verify_json(dir: &std::path::Path, tag: &str) -> String {
    let path = dir.join(format!("{tag}.json"));
    let status = Command::new(env!("CARGO_BIN_EXE_rlfrac"))
        .args(["verify", "--suite", "all", "--seed", "42", "--json"])
        .arg(&path)
        .output()
        .expect("run rlfrac");
    assert!(status.status.code().is_some(), "rlfrac was killed");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    rlfrac::harness::strip_key(&mut v, "runtime_ms");
    serde_json::to_string(&v).unwrap()
}

fn criterion_13() -> (bool, String) {
    let dir = tempfile::tempdir().unwrap();
    let a = verify_json(dir.path(), "a");
    let b = verify_json(dir.path(), "b");
    (a == b, format!("{} bytes each run", a.len()))
}

#[test]
fn acceptance_criteria() {
    let rep = run_suite(Suite::All, &VerifyConfig::default()).expect("suite run");

    let mut out = Vec::new();
    let mut push = |id, name, (pass, detail): (bool, String)| out.push(Outcome { id, name, pass, detail });
    push(1, "closed-form fractional integral", criterion_1());
    push(2, "semigroup defect and order", criterion_2(&rep));
    push(3, "operator bound", all_green(&rep, "operator-bound", 2400, 1e-10));
    push(4, "BMO of log", criterion_4());
    push(5, "K_γ closed form and growth", criterion_5(&rep));
    push(6, "ρ positivity and trigamma bound", criterion_6());
    push(7, "η monotone with limit 2/e", criterion_7());
    push(8, "critical-case bounds", criterion_8(&rep));
    push(9, "per-r K bound and h(r)", criterion_9(&rep));
    push(10, "Sobolev mapping", criterion_10(&rep));
    push(11, "sharpness exponents", criterion_11(&rep));
    push(12, "divergence demos", criterion_12(&rep));
    push(13, "determinism", criterion_13());

    for o in &out {
        println!("[{}] A{:<2} {}: {}", if o.pass { "PASS" } else { "FAIL" }, o.id, o.name, o.detail);
    }
    let failed: Vec<usize> = out.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    println!("{} passed, {} failed", out.len() - failed.len(), failed.len());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
