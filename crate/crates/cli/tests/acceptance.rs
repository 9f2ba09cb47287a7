//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use lring::gallery::Gallery;
use lring::suites::{
    cone_extension_audit, continuity_audit, decomposition_audit, directed_sup_audit, hausdorff_audit, hom_lattice_laws,
    oracle_agreement, solid_hull_audit, CheckResult,
};
use lring_cli::commands::{cmd_gallery, cmd_laws};

const SEED: u64 = 0;

struct Outcome {
    passed: bool,
    detail: String,
}

impl From<CheckResult> for Outcome {
    fn from(c: CheckResult) -> Outcome {
        let detail = if c.passed { format!("{} checks", c.checked) } else { c.detail };
        Outcome { passed: c.passed, detail }
    }
}

fn criterion(n: u32, title: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let in_time = took <= budget;
    let passed = out.passed && in_time;
    let late = if in_time { String::new() } else { format!(", over the {budget:?} budget") };
    println!(
        "{} criterion {n}: {title} ({}; {:.2}s{late})",
        if passed { "PASS" } else { "FAIL" },
        out.detail,
        took.as_secs_f64()
    );
    passed
}

fn gallery() -> Outcome {
    match Gallery::shipped().run_cases() {
        Ok(cases) => {
            let failed: Vec<String> =
                cases.iter().filter(|c| !c.passed).map(|c| format!("{}: {:?}", c.id, c.diff)).collect();
            let detail = if failed.is_empty() { format!("{} cases", cases.len()) } else { failed.join("; ") };
            Outcome { passed: failed.is_empty() && cases.len() == 4, detail }
        }
        Err(e) => Outcome { passed: false, detail: e.to_string() },
    }
}

fn binary(args: &[&str]) -> Vec<u8> {
    Command::new(env!("CARGO_BIN_EXE_lring")).args(args).output().expect("binary runs").stdout
}

fn determinism() -> Outcome {
    let library = [
        (cmd_gallery().unwrap().machine(), cmd_gallery().unwrap().machine()),
        (cmd_laws("q3_pointwise", 7, 1000).unwrap().machine(), cmd_laws("q3_pointwise", 7, 1000).unwrap().machine()),
    ];
    let runs = [
        ["gallery", "--format", "machine"].as_slice(),
        ["laws", "q3_pointwise", "--seed", "7", "--format", "machine"].as_slice(),
        ["laws", "matrix2_entrywise", "--seed", "7", "--format", "machine"].as_slice(),
    ];
    let mut same = library.iter().all(|(a, b)| a == b);
    for args in runs {
        let (a, b) = (binary(args), binary(args));
        same &= !a.is_empty() && a == b;
    }
    same &= binary(runs[0]) == library[0].0.as_bytes();
    Outcome { passed: same, detail: "2 library and 3 binary report pairs compared".into() }
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "positive part equals the vertex supremum", secs(10), || oracle_agreement(SEED, 500, 500).into()),
        criterion(2, "decomposition postconditions in Q^5", secs(5), || decomposition_audit(SEED, 1000).into()),
        criterion(3, "cone maps extend to their source homs", secs(5), || cone_extension_audit(SEED, 200, 20).into()),
        criterion(4, "lattice laws in Hom", secs(5), || hom_lattice_laws(SEED, 500).into()),
        criterion(5, "finite directed suprema", secs(5), || directed_sup_audit(SEED, 100).into()),
        criterion(6, "gallery cases A-D", secs(2), gallery),
        criterion(7, "lattice continuity in nr, br and cr", secs(10), || continuity_audit(SEED, 30, 3).into()),
        criterion(8, "solid hulls keep the bounds of finite sets", secs(10), || solid_hull_audit(SEED, 500).into()),
        criterion(9, "certificates re-verify and limits are unique", secs(10), || hausdorff_audit(SEED, 50).into()),
        criterion(10, "machine reports are byte-identical", secs(30), determinism),
    ];
    let failed = results.iter().filter(|p| !**p).count();
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
