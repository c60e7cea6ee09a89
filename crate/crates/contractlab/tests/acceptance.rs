//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use contractlab::parallel;
use contractlab::sweep::{self, LearnerKind, LearnerSpec};
use contractlab_core::bandit::BanditState;
use contractlab_core::discretization::{self, ContractFamily, DEFAULT_EPS_LIST};
use contractlab_core::instances::{gen_lower_bound_family, uniform_cost_pricing, verify_regions};
use contractlab_core::learners;
use contractlab_core::oracle::DEFAULT_GRID_CAP;
use contractlab_core::properties;
use contractlab_core::rng::{self, seeded};
use sha2::{Digest, Sha256};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn anchor(m: usize) -> Vec<f64> {
    let mut v = vec![1.0; m];
    v[0] = 0.0;
    v
}

fn c1_payoff_identity() -> Outcome {
    let mut tuples = 0;
    let mut worst = 0.0f64;
    for m in 1..=3 {
        for eps in [0.05, 0.1] {
            let fam = gen_lower_bound_family(m, eps).expect("family");
            for id in 1..fam.base.types()[0].actions.len() {
                let k = fam.action_index(id).unwrap();
                let mut f = vec![0.0];
                f.extend(k.iter().map(|&ki| ki as f64 * eps));
                worst = worst.max((fam.base.expected_utility(&f) - 0.5).abs());
                tuples += 1;
            }
        }
    }
    outcome(worst <= 1e-9, format!("{tuples} index tuples, max |u - 1/2| = {worst:.2e}"))
}

fn c2_perturbed_optima() -> Outcome {
    let mut pass = true;
    let mut lines = Vec::new();
    for (m, eps) in [(1, 0.1), (1, 0.05), (2, 0.1), (2, 0.05)] {
        let fam = gen_lower_bound_family(m, eps).expect("family");
        let delta = eps / 100.0;
        let search = if m == 1 {
            ContractFamily::full_cube(anchor(m + 1)).unwrap()
        } else {
            ContractFamily::zero_null(anchor(m + 1)).unwrap()
        };
        for p in &fam.perturbed {
            let r = parallel::grid_optimal_contract(&p.instance, &search, delta, DEFAULT_GRID_CAP).expect("grid");
            let u = r.best_utility;
            let ok = if p.sentinel {
                (0.5 + eps / 30.0 - delta..=0.5 + eps / 25.0 + delta).contains(&u)
            } else {
                u >= 0.5 + eps / 20.0 - delta && p.region.contains(&r.best_contract)
            };
            pass &= ok;
            let target = if p.sentinel {
                format!("[{:.6}, {:.6}]", 0.5 + eps / 30.0, 0.5 + eps / 25.0)
            } else {
                format!(">= {:.6} inside C_l", 0.5 + eps / 20.0)
            };
            lines.push(format!(
                "    m={m} eps={eps} {}: grid {u:.6} (target {target}, separable optimum {:.6}) {}",
                p.label(),
                p.exact_optimum,
                if ok { "ok" } else { "MISS" }
            ));
        }
    }
    outcome(pass, format!("grid delta = eps/100, slack one grid cell\n{}", lines.join("\n")))
}

fn c3_regions() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (m, eps) in [(1, 0.1), (1, 0.05), (2, 0.1), (2, 0.05)] {
        let fam = gen_lower_bound_family(m, eps).expect("family");
        let r = verify_regions(&fam, 10_000, 17);
        pass &= r.passed() && fam.regions_pairwise_disjoint();
        parts.push(format!(
            "m={m} eps={eps}: {} checked, {} boundary-skipped, {} mismatches",
            r.checked,
            r.boundary_skipped,
            r.mismatches.len()
        ));
    }
    outcome(pass, parts.join("; "))
}

fn suite(report: properties::SuiteReport) -> Outcome {
    let mut detail = format!("{} checks, {} violations", report.checks, report.violations);
    for m in report.messages.iter().take(3) {
        detail.push_str(&format!("\n    {m}"));
    }
    outcome(report.passed(), detail)
}

fn c7_linear_rate() -> Outcome {
    let inst = uniform_cost_pricing(100).unwrap();
    let spec = LearnerSpec { kind: LearnerKind::Linear, family: None, exponent: None };
    let res = sweep::run_sweep(&inst, &spec, &[1_000, 10_000, 100_000], 10, 1, DEFAULT_GRID_CAP).expect("sweep");
    match res.fit {
        Ok(fit) => {
            let pts: Vec<String> = fit.points.iter().map(|(t, r)| format!("T={t}: {r:.1}")).collect();
            outcome(
                (0.55..=0.80).contains(&fit.slope),
                format!("slope {:.4} +- {:.4} (mean R_T {})", fit.slope, fit.stderr, pts.join(", ")),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn c8_general_sublinear() -> Outcome {
    let fam = gen_lower_bound_family(2, 0.1).unwrap();
    let face = ContractFamily::zero_null(anchor(3)).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for p in &fam.perturbed {
        let mut per_t = Vec::new();
        for t in [1_000u64, 100_000] {
            let plan = learners::plan_general(&p.instance, &face, t, None).expect("plan");
            let best = sweep::benchmark(&p.instance, &plan, DEFAULT_GRID_CAP).expect("oracle");
            let avg = (0..5u64).map(|s| learners::play(&p.instance, &plan, t, s, best).final_regret() / t as f64).sum::<f64>()
                / 5.0;
            per_t.push((t, plan.arms.len(), plan.eps, avg));
        }
        let ratio = per_t[1].3 / per_t[0].3;
        pass &= ratio < 0.5;
        parts.push(format!(
            "{}: R/T {:.4} (T=1e3, {} arms, eps {:.3}) -> {:.4} (T=1e5, {} arms, eps {:.3}), ratio {ratio:.3}",
            p.label(),
            per_t[0].3,
            per_t[0].1,
            per_t[0].2,
            per_t[1].3,
            per_t[1].1,
            per_t[1].2
        ));
    }
    outcome(pass, format!("zero-null face, 5 seeds\n    {}", parts.join("\n    ")))
}

fn c9_discretization() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let lin = ContractFamily::linear(vec![0.0, 0.4, 1.0]).unwrap();
    for eps in [0.3, 0.2, 0.09, 0.05, 0.01] {
        let n = discretization::build_direction_cover(&lin, eps, discretization::default_density(eps)).unwrap().len();
        pass &= n == 1;
    }
    let d = discretization::estimate_intrinsic_dimension(&lin, &DEFAULT_EPS_LIST, None).unwrap().d_hat;
    pass &= d == 0.0;
    parts.push(format!("linear: one direction, d_hat = {d}"));
    let mut rng = seeded(9);
    for m in [2, 3] {
        let fam = ContractFamily::full_cube(anchor(m)).unwrap();
        for eps in [0.3, 0.2] {
            let code = discretization::build_direction_cover(&fam, eps, discretization::default_density(eps)).unwrap();
            let rep = discretization::check_covering(&fam, &code, 10_000, &mut rng);
            pass &= rep.violations.is_empty();
            parts.push(format!("cube m={m} eps={eps}: {} dirs, {} violations", code.len(), rep.violations.len()));
        }
    }
    outcome(pass, parts.join("; "))
}

fn c10_ucb() -> Outcome {
    let mut state = BanditState::new(2, 100);
    let mut books = true;
    for _ in 0..100 {
        let a = state.select();
        state.update(a, if a == 0 { 1.0 } else { -1.0 }).unwrap();
        books &= state.pulls().iter().sum::<u64>() == state.round();
    }
    let bad = state.pulls()[1];
    let mut rng = seeded(10);
    for run in 0..50 {
        let arms = 1 + run % 7;
        let horizon = 50 + 37 * run as u64;
        let mut s = BanditState::new(arms, horizon);
        for _ in 0..horizon {
            let a = s.select();
            s.update(a, rng::uniform(&mut rng, -1.0, 1.0)).unwrap();
            books &= s.pulls().iter().sum::<u64>() == s.round() && s.indices().iter().all(|i| *i <= 1.0);
        }
    }
    outcome(bad <= 11 && books, format!("suboptimal arm pulled {bad} times; bookkeeping holds: {books}"))
}

fn sha(path: &Path) -> String {
    let bytes = std::fs::read(path).expect("output file");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn cli(args: &[&str], dir: &Path) -> bool {
    Command::new(env!("CARGO_BIN_EXE_contractlab"))
        .args(args)
        .current_dir(dir)
        .output()
        .map(|o| o.status.success())
        .unwrap_or(false)
}

fn c11_determinism() -> Outcome {
    let dir = tempfile::tempdir().expect("tempdir");
    let d = dir.path();
    if !cli(&["gen", "--family", "pricing", "--out", "pricing.json"], d) {
        return outcome(false, "gen failed");
    }
    let runs: [(&str, Vec<&str>); 3] = [
        ("gen", vec!["gen", "--family", "random", "--m", "3", "--seed", "5", "--out", "OUT"]),
        ("run", vec!["run", "--learner", "linear", "--instance", "pricing.json", "--T", "5000", "--seed", "7", "--out", "OUT"]),
        (
            "sweep",
            vec!["sweep", "--learner", "linear", "--family", "pricing", "--T", "500,2000", "--reps", "3", "--seed", "1", "--out", "OUT"],
        ),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, args) in runs {
        let mut hashes = Vec::new();
        for k in 0..2 {
            let out = format!("{name}-{k}.out");
            let args: Vec<&str> = args.iter().map(|a| if *a == "OUT" { out.as_str() } else { a }).collect();
            pass &= cli(&args, d);
            hashes.push(sha(&d.join(&out)));
        }
        pass &= hashes[0] == hashes[1];
        parts.push(format!("{name} {}", &hashes[0][..12]));
    }
    outcome(pass, parts.join(", "))
}

fn main() {
    let criteria: Vec<(&str, Duration, Box<dyn Fn() -> Outcome>)> = vec![
        ("payoff identity of the base instances", Duration::from_secs(1), Box::new(c1_payoff_identity)),
        ("perturbed-instance optima", Duration::from_secs(30), Box::new(c2_perturbed_optima)),
        ("best-response region verification", Duration::from_secs(10), Box::new(c3_regions)),
        (
            "continuity of the utility",
            Duration::from_secs(30),
            Box::new(|| suite(properties::continuity(1000, 10, 4))),
        ),
        ("observed-channel geometry", Duration::from_secs(30), Box::new(|| suite(properties::geometry(1000, 10, 5)))),
        (
            "linear-contract monotonicity",
            Duration::from_secs(30),
            Box::new(|| suite(properties::linear_monotone(100, 200, 10, 6))),
        ),
        ("linear-contract regret slope", Duration::from_secs(120), Box::new(c7_linear_rate)),
        ("general-learner sublinearity", Duration::from_secs(300), Box::new(c8_general_sublinear)),
        ("discretization covers", Duration::from_secs(60), Box::new(c9_discretization)),
        ("UCB sanity", Duration::from_secs(10), Box::new(c10_ucb)),
        ("CLI determinism", Duration::from_secs(120), Box::new(c11_determinism)),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = check();
        let took = start.elapsed();
        let pass = out.pass && took <= *budget;
        println!(
            "criterion {:>2} {}: {} ({:.2}s of {}s) {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            name,
            took.as_secs_f64(),
            budget.as_secs(),
            out.detail
        );
        if !pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", criteria.len());
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
