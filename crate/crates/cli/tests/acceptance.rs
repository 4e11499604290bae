//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::fs;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use profree_cli::suites::{find, INTERP_SAMPLE, SUITES};
use profree_cli::Report;
use profree_core::oracle::{injectivity_rank, intersection_dim, spanning_sample, xy_sample};
use profree_core::{
    pairing_kernel, prof_hypotheses_check, CbmElem, Chart, ChartHint, GroupElt, Params, Series,
};

const ALGEBRA_BUDGET: Duration = Duration::from_secs(60);
const ORACLE_BUDGET: Duration = Duration::from_secs(30);
const TRIALS: usize = 100;
const GROUP_TRIPLES: usize = 200;
const SEED: u64 = 7;
const ORACLE_DEGREE: u32 = 5;

type Criterion = fn() -> Result<String, String>;

fn params(p: u64, n: u32, d: u32) -> Params {
    Params::new(p, n, d).expect("valid parameters")
}

fn default_params() -> Params {
    params(3, 4, 6)
}

/// Runs suites and collects a description of every failing report.
fn run_suites(params: Params, ids: &[(&str, usize)]) -> Vec<String> {
    ids.iter()
        .map(|&(id, trials)| find(id).expect("suite exists").run(params, SEED, trials, false))
        .filter(|r| !r.pass || r.trials == 0)
        .map(|r| format!("{} at p={}: {} failures", r.suite, r.p, r.failures.len()))
        .collect()
}

fn algebra() -> Result<String, String> {
    let ids = [
        "involution",
        "pi-morphism",
        "pairing-equivariance",
        "psi-equivariance",
        "psi-zeta",
        "pm-split",
    ]
    .map(|id| (id, TRIALS));
    let start = Instant::now();
    let mut bad = run_suites(params(3, 4, 6), &ids);
    bad.extend(run_suites(params(5, 3, 5), &ids));
    let elapsed = start.elapsed();
    if elapsed >= ALGEBRA_BUDGET {
        bad.push(format!("took {elapsed:?}, budget {ALGEBRA_BUDGET:?}"));
    }
    if bad.is_empty() {
        Ok(format!("6 identities x 2 parameter sets x {TRIALS} trials in {elapsed:.1?}"))
    } else {
        Err(bad.join("; "))
    }
}

fn witnesses() -> Result<String, String> {
    let ids = ["ssandszeta", "rsmeetdelta", "mxm"].map(|id| (id, TRIALS));
    let bad = run_suites(default_params(), &ids);
    if bad.is_empty() {
        Ok(format!("3 solvers x {TRIALS} instances, residuals zero"))
    } else {
        Err(bad.join("; "))
    }
}

fn oracles() -> Result<String, String> {
    let start = Instant::now();
    let d = ORACLE_DEGREE;
    let p = 3;
    let mut bad = Vec::new();
    match intersection_dim(&xy_sample(d), d) {
        Ok(0) => {}
        other => bad.push(format!("intersection_dim = {other:?}")),
    }
    for g in [GroupElt::X, GroupElt::Y, GroupElt::new(1, 1)] {
        if injectivity_rank(p, g, d) != Ok(true) {
            bad.push(format!("injectivity_rank({g}) = {:?}", injectivity_rank(p, g, d)));
        }
    }
    match prof_hypotheses_check(&default_params(), d) {
        Ok(r) if r.hypotheses() == (true, true, true) => {}
        other => bad.push(format!("prof_hypotheses_check = {other:?}")),
    }
    match pairing_kernel(&default_params(), &spanning_sample(INTERP_SAMPLE), d) {
        Ok(0) => {}
        other => bad.push(format!("pairing_kernel = {other:?}")),
    }
    let elapsed = start.elapsed();
    if elapsed >= ORACLE_BUDGET {
        bad.push(format!("took {elapsed:?}, budget {ORACLE_BUDGET:?}"));
    }
    if bad.is_empty() {
        Ok(format!("p=3, d={d}: dim 0, injective x3, hypotheses hold, kernel 0 in {elapsed:.1?}"))
    } else {
        Err(bad.join("; "))
    }
}

fn groups() -> Result<String, String> {
    let ids = [
        ("metab-assoc", GROUP_TRIPLES),
        ("metab-phi", 1),
        ("cbm-dq-assoc", GROUP_TRIPLES),
        ("cbm-assoc", GROUP_TRIPLES),
        ("cbm-bracket", TRIALS),
        ("cn-membership", TRIALS),
        ("centralizer", TRIALS),
    ];
    let mut bad = run_suites(default_params(), &ids);
    let phi = find("metab-phi").unwrap().run(default_params(), SEED, 1, false);
    if phi.trials != 9 {
        bad.push(format!("metab-phi covered {} exponent pairs, expected 9", phi.trials));
    }
    if bad.is_empty() {
        Ok(format!("{GROUP_TRIPLES} triples per associativity check, phi for a,b in 1..=3, {TRIALS} centralizer instances"))
    } else {
        Err(bad.join("; "))
    }
}

fn interpretation() -> Result<String, String> {
    let ids = ["interp-add", "interp-star", "prodformula"].map(|id| (id, TRIALS));
    let bad = run_suites(default_params(), &ids);
    if bad.is_empty() {
        Ok(format!("add, star and product relations consistent on {TRIALS} instances each"))
    } else {
        Err(bad.join("; "))
    }
}

fn profree(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_profree"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().unwrap_or(-1);
    Ok((code, String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn cli_contract() -> Result<String, String> {
    let (code, first) = profree(&["verify", "all"])?;
    if code != 0 {
        return Err(format!("verify all exited {code}"));
    }
    let reports: Vec<Report> = first
        .lines()
        .map(serde_json::from_str)
        .collect::<Result<_, _>>()
        .map_err(|e| format!("bad JSON line: {e}"))?;
    if reports.len() != SUITES.len() || !reports.iter().all(|r| r.pass) {
        return Err(format!("{} reports for {} suites", reports.len(), SUITES.len()));
    }
    for line in first.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        let mut expected =
            ["suite", "p", "precision", "maxdeg", "seed", "trials", "failures", "elapsed_ms", "pass"];
        expected.sort();
        let mut keys = keys;
        keys.sort();
        if keys != expected {
            return Err(format!("report fields {keys:?}"));
        }
    }
    let (_, second) = profree(&["verify", "all"])?;
    if first != second {
        return Err("reruns differ".into());
    }

    let dir = std::env::temp_dir().join(format!("profree-acceptance-{}", std::process::id()));
    fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let input = dir.join("cross.txt");
    // a = (xi1 - xi2) tau, b = (xi1 - xi2) zeta, written in chart A
    fs::write(
        &input,
        "xi1*eta1 + xi1*eta2 - xi2*eta1 - xi2*eta2 + xi1*eta1*eta2 - xi2*eta1*eta2\n\
         xi1^2 - xi2^2 + xi1^2*xi2 - xi1*xi2^2\n",
    )
    .map_err(|e| e.to_string())?;
    let input_s = input.to_str().unwrap();
    let (code, line) = profree(&["witness", "cross", input_s])?;
    let summary: serde_json::Value = serde_json::from_str(line.trim()).map_err(|e| e.to_string())?;
    if code != 0 || summary["zero"] != true {
        return Err(format!("witness cross: exit {code}, {line}"));
    }
    let witness_path = format!("{input_s}.witness");
    let (code, line) = profree(&["witness", "cross", input_s, "--check", &witness_path])?;
    if code != 0 {
        return Err(format!("witness re-check: exit {code}, {line}"));
    }
    let written = fs::read_to_string(&witness_path).map_err(|e| e.to_string())?;
    let c = written.lines().find(|l| !l.starts_with('#')).unwrap_or("");
    let c = Series::parse(c, default_params(), ChartHint::S)
        .and_then(|c| c.chart_change(Chart::SA))
        .map_err(|e| e.to_string())?;
    let expected = Series::parse("xi1 - xi2", default_params(), ChartHint::S).unwrap();
    if !c.agrees_with(&expected) {
        return Err(format!("witness is {c}, expected xi1 - xi2"));
    }

    let ops = dir.join("ops.txt");
    fs::write(
        &ops,
        "star [1 + xi - 2*eta^2]\npi [xi1*tau + zeta]\npsi [xi1*zeta]\npairing_pi 1 xi\n\
         cbm_mul (1, 2, xi, 0) (0, -1, eta, 0)\nmetab_comm (0, 1, 0) (1, 0, 0)\n",
    )
    .map_err(|e| e.to_string())?;
    let (code, out) = profree(&["eval", ops.to_str().unwrap()])?;
    if code != 0 || out.lines().count() != 6 {
        return Err(format!("eval exit {code}: {out}"));
    }
    let p = default_params();
    for (i, value) in out.lines().enumerate() {
        let again = if value.starts_with('(') {
            if i == 4 {
                CbmElem::parse(value, p).map(|g| g.to_string())
            } else {
                profree_core::MetabElem::parse(value, p).map(|g| g.to_string())
            }
        } else {
            Series::parse(value, p, ChartHint::Any).map(|s| s.to_string())
        };
        if again.as_deref() != Ok(value) {
            return Err(format!("eval output `{value}` re-parses to {again:?}"));
        }
    }
    fs::remove_dir_all(&dir).ok();
    Ok(format!("verify all: {} JSON lines, exit 0, byte-identical rerun; witness and eval round trip", reports.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 6] = [
        ("1 algebra identities", algebra),
        ("2 witnesses", witnesses),
        ("3 linear-algebra oracles", oracles),
        ("4 groups", groups),
        ("5 interpretation", interpretation),
        ("6 CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
