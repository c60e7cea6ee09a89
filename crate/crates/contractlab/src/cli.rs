//! `contractlab` subcommands: gen, run, sweep, verify, cover.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use contractlab_core::discretization::{self, ContractFamily};
use contractlab_core::instances::{self, LowerBoundFamily};
use contractlab_core::learners;
use contractlab_core::oracle::DEFAULT_GRID_CAP;
use contractlab_core::properties::{self, Suite};
use contractlab_core::Instance;

use crate::io::{self, CoverFile, FamilyManifest, ManifestEntry, OracleSummary};
use crate::parallel;
use crate::sweep::{self, LearnerKind, LearnerSpec};

pub const GRID_CAP_ENV: &str = "CONTRACTLAB_GRID_CAP";

#[derive(Debug, Parser)]
#[command(name = "contractlab", version, about = "Online contract design experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance (and, for hard families, a manifest).
    Gen(GenArgs),
    /// Run one learner and write its regret trace as CSV.
    Run(RunArgs),
    /// Sweep horizons and fit the regret slope.
    Sweep(SweepArgs),
    /// Run a property suite; exits 1 on any violation.
    Verify(VerifyArgs),
    /// Emit a direction code and its arm set as JSON.
    Cover(CoverArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InstanceFamily {
    LowerBound,
    LinearLowerBound,
    Pricing,
    Random,
    Fosd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ContractsKind {
    FullCube,
    ZeroNull,
    Linear,
}

impl ContractsKind {
    fn build(self, anchor: Vec<f64>) -> contractlab_core::Result<ContractFamily> {
        match self {
            ContractsKind::FullCube => ContractFamily::full_cube(anchor),
            ContractsKind::ZeroNull => ContractFamily::zero_null(anchor),
            ContractsKind::Linear => ContractFamily::linear(anchor),
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: InstanceFamily,
    /// Free coordinates (lower-bound), outcomes (random, fosd) or cost levels (pricing).
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Agent types of random instances.
    #[arg(long, default_value_t = 2)]
    pub types: usize,
    /// Non-null actions of random and FOSD instances.
    #[arg(long, default_value_t = 4)]
    pub actions: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub learner: LearnerKind,
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long = "T")]
    pub horizon: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Use eps = T^(-exponent) in the general learner.
    #[arg(long)]
    pub exponent: Option<f64>,
    /// Contract family searched by the general learner.
    #[arg(long, value_enum, default_value_t = ContractsKind::FullCube)]
    pub contracts: ContractsKind,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub learner: LearnerKind,
    #[arg(long, value_enum)]
    pub family: InstanceFamily,
    #[arg(long = "T", value_delimiter = ',', required = true)]
    pub horizons: Vec<u64>,
    #[arg(long, default_value_t = 10)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub exponent: Option<f64>,
    #[arg(long, value_enum, default_value_t = ContractsKind::FullCube)]
    pub contracts: ContractsKind,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_suite)]
    pub suite: Suite,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    #[arg(long, value_enum)]
    pub family: ContractsKind,
    /// Number of outcomes; the anchor is v = (0, 1, ..., 1).
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub eps: f64,
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    Suite::parse(s).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
        format!("unknown suite `{s}`, expected one of {}", names.join(", "))
    })
}

/// Oracle grid cap, overridable through `CONTRACTLAB_GRID_CAP`.
pub fn grid_cap() -> Result<u128> {
    match std::env::var(GRID_CAP_ENV) {
        Ok(v) => v.trim().parse().with_context(|| format!("{GRID_CAP_ENV}={v} is not an integer")),
        Err(_) => Ok(DEFAULT_GRID_CAP),
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

pub fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Run(a) => run(a),
        Command::Sweep(a) => sweep_cmd(a),
        Command::Verify(a) => verify(a),
        Command::Cover(a) => cover(a),
    }
}

fn anchor(m: usize) -> Vec<f64> {
    let mut v = vec![1.0; m];
    if let Some(x) = v.first_mut() {
        *x = 0.0;
    }
    v
}

/// Default instance of a family, as written by `gen` (the first perturbed
/// instance for the hard families).
pub fn family_instance(
    family: InstanceFamily,
    m: Option<usize>,
    eps: Option<f64>,
    seed: u64,
    types: usize,
    actions: usize,
) -> Result<Instance> {
    Ok(match family {
        InstanceFamily::LowerBound => lower_bound(family, m, eps)?.perturbed.swap_remove(0).instance,
        InstanceFamily::LinearLowerBound => lower_bound(family, m, eps)?.perturbed.swap_remove(0).instance,
        InstanceFamily::Pricing => instances::uniform_cost_pricing(m.unwrap_or(100))?,
        InstanceFamily::Random => instances::gen_random_instance(m.unwrap_or(3), types, actions, seed)?,
        InstanceFamily::Fosd => instances::gen_fosd_instance(m.unwrap_or(3), actions, seed)?,
    })
}

fn lower_bound(family: InstanceFamily, m: Option<usize>, eps: Option<f64>) -> Result<LowerBoundFamily> {
    let eps = eps.unwrap_or(0.1);
    Ok(match family {
        InstanceFamily::LinearLowerBound => instances::gen_linear_lower_bound_family(eps)?,
        _ => instances::gen_lower_bound_family(m.unwrap_or(2), eps)?,
    })
}

fn sibling(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    out.with_file_name(format!("{stem}{suffix}"))
}

fn gen(a: GenArgs) -> Result<ExitCode> {
    match a.family {
        InstanceFamily::LowerBound | InstanceFamily::LinearLowerBound => {
            let fam = lower_bound(a.family, a.m, a.eps)?;
            write_family(&fam, &a.out)?;
        }
        other => {
            let inst = family_instance(other, a.m, a.eps, a.seed, a.types, a.actions)?;
            io::write_instance(&a.out, &inst)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_family(fam: &LowerBoundFamily, out: &Path) -> Result<()> {
    io::write_instance(out, &fam.base)?;
    let search = match fam.kind {
        instances::FamilyKind::Linear => ContractFamily::linear(fam.base.values().to_vec())?,
        instances::FamilyKind::Cube => ContractFamily::zero_null(fam.base.values().to_vec())?,
    };
    let cap = grid_cap()?;
    let mut entries = Vec::new();
    for p in &fam.perturbed {
        let tag = p.label().replace(['[', ']', ' '], "").replace([',', '='], "_");
        let path = sibling(out, &format!("-{tag}.json"));
        io::write_instance(&path, &p.instance)?;
        let delta = learners::benchmark_delta(&search);
        let oracle = parallel::grid_optimal_contract(&p.instance, &search, delta, cap)?;
        let grid = (oracle.best_utility, oracle.best_contract.clone());
        let checked = oracle.with_closed_form(&p.instance, p.exact_contract.clone());
        let closed = checked.closed_form.expect("closed form recorded");
        entries.push(ManifestEntry {
            label: p.label(),
            file: path.file_name().and_then(|s| s.to_str()).unwrap_or_default().to_owned(),
            index: p.index.clone(),
            sentinel: p.sentinel,
            claimed_optimum: p.claimed_optimum,
            claimed_contract: p.claimed_contract.clone(),
            exact_optimum: p.exact_optimum,
            exact_contract: p.exact_contract.clone(),
            region_lower: p.region.lower.clone(),
            region_upper: p.region.upper.iter().map(|u| u.is_finite().then_some(*u)).collect(),
            oracle: OracleSummary {
                grid_utility: grid.0,
                grid_contract: grid.1,
                resolution: checked.resolution,
                closed_form_utility: closed.utility,
                closed_form_disagrees: closed.disagrees,
            },
        });
    }
    let manifest = FamilyManifest {
        family: fam.base.name().to_owned(),
        m_free: fam.m_free,
        eps: fam.eps,
        levels: fam.levels,
        sentinel_level: fam.sentinel_level,
        base: out.file_name().and_then(|s| s.to_str()).unwrap_or_default().to_owned(),
        perturbed: entries,
    };
    io::write_json(&sibling(out, ".manifest.json"), &manifest)?;
    Ok(())
}

fn run(a: RunArgs) -> Result<ExitCode> {
    let inst = io::read_instance(&a.instance)?;
    let family = match a.learner {
        LearnerKind::General => Some(a.contracts.build(inst.values().to_vec())?),
        _ => None,
    };
    let spec = LearnerSpec { kind: a.learner, family, exponent: a.exponent };
    let plan = spec.plan(&inst, a.horizon)?;
    let best = sweep::benchmark(&inst, &plan, grid_cap()?)?;
    let trace = learners::play(&inst, &plan, a.horizon, a.seed, best);
    io::write_trace_file(&a.out, &trace)?;
    for w in &trace.meta.warnings {
        eprintln!("warning: {w}");
    }
    eprintln!(
        "{} on {}: eps={} arms={} best={} R_T={}",
        trace.meta.learner,
        trace.meta.instance,
        trace.meta.eps,
        trace.arms.len(),
        trace.meta.best_utility,
        trace.final_regret()
    );
    Ok(ExitCode::SUCCESS)
}

fn sweep_cmd(a: SweepArgs) -> Result<ExitCode> {
    if a.reps == 0 {
        bail!("--reps must be positive");
    }
    let inst = family_instance(a.family, a.m, a.eps, a.seed, 2, 4)?;
    let family = match a.learner {
        LearnerKind::General => Some(a.contracts.build(inst.values().to_vec())?),
        _ => None,
    };
    let spec = LearnerSpec { kind: a.learner, family, exponent: a.exponent };
    let start = Instant::now();
    let result = sweep::run_sweep(&inst, &spec, &a.horizons, a.reps, a.seed, grid_cap()?)?;
    let file = fs::File::create(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    sweep::write_rows(std::io::BufWriter::new(file), &result.rows)?;
    for r in &result.rows {
        eprintln!("T={} rep={} wall={:.3}s", r.horizon, r.rep, r.wall.as_secs_f64());
    }
    eprintln!("total wall {:.2}s", start.elapsed().as_secs_f64());
    match &result.fit {
        Ok(fit) => {
            for t in &fit.excluded {
                eprintln!("warning: T={t} excluded from the fit (mean regret not positive)");
            }
            io::write_json(&sibling(&a.out, ".summary.json"), fit)?;
            println!(
                "slope {:.4} stderr {:.4} ci [{:.4}, {:.4}]",
                fit.slope, fit.stderr, fit.ci_low, fit.ci_high
            );
        }
        Err(e) => eprintln!("warning: {e}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(a: VerifyArgs) -> Result<ExitCode> {
    let rep = properties::run_suite(a.suite, a.samples, a.seed);
    println!("{}: {} checks, {} violations", rep.suite, rep.checks, rep.violations);
    for m in &rep.messages {
        println!("  {m}");
    }
    Ok(if rep.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cover(a: CoverArgs) -> Result<ExitCode> {
    let family = a.family.build(anchor(a.m))?;
    let set = discretization::build_s_eps(&family, a.eps)?;
    io::write_json(&a.out, &CoverFile::from(&set))?;
    eprintln!("{}: {} directions, {} arms", family.name(), set.code.len(), set.len());
    Ok(ExitCode::SUCCESS)
}
