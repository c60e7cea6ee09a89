//! Horizon sweeps and log-log regret slopes.

use std::time::{Duration, Instant};

use contractlab_core::discretization::ContractFamily;
use contractlab_core::learners::{self, LearnerPlan};
use contractlab_core::Instance;
use rayon::prelude::*;
use serde::Serialize;

use crate::parallel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum LearnerKind {
    General,
    Linear,
    Fosd,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LearnerSpec {
    pub kind: LearnerKind,
    /// Contract family of the general learner.
    pub family: Option<ContractFamily>,
    pub exponent: Option<f64>,
}

impl LearnerSpec {
    pub fn plan(&self, inst: &Instance, horizon: u64) -> contractlab_core::Result<LearnerPlan> {
        match self.kind {
            LearnerKind::General => {
                let family = match &self.family {
                    Some(f) => f.clone(),
                    None => ContractFamily::full_cube(inst.values().to_vec())?,
                };
                learners::plan_general(inst, &family, horizon, self.exponent)
            }
            LearnerKind::Linear => learners::plan_linear(inst, horizon),
            LearnerKind::Fosd => learners::plan_fosd(inst, horizon),
        }
    }
}

/// Oracle benchmark for a plan, scanned in parallel.
pub fn benchmark(inst: &Instance, plan: &LearnerPlan, cap: u128) -> contractlab_core::Result<f64> {
    let delta = learners::benchmark_delta(&plan.family);
    Ok(parallel::grid_optimal_contract(inst, &plan.family, delta, cap)?.best_utility)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub horizon: u64,
    pub rep: usize,
    pub seed: u64,
    pub regret: f64,
    #[serde(skip)]
    pub wall: Duration,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub stderr: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// `(T, mean regret)` points used in the fit.
    pub points: Vec<(u64, f64)>,
    /// Horizons dropped because their mean regret was not positive.
    pub excluded: Vec<u64>,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum SlopeError {
    #[error("need at least two distinct horizons with positive mean regret, got {0}")]
    TooFewPoints(usize),
}

/// Least-squares slope of `ln mean(R_T)` on `ln T`, with a normal 95%
/// interval. The standard error is NaN for exactly two points.
pub fn estimate_slope(rows: &[SweepRow]) -> Result<SlopeFit, SlopeError> {
    let mut horizons: Vec<u64> = rows.iter().map(|r| r.horizon).collect();
    horizons.sort_unstable();
    horizons.dedup();
    let mut points = Vec::new();
    let mut excluded = Vec::new();
    for t in horizons {
        let vals: Vec<f64> = rows.iter().filter(|r| r.horizon == t).map(|r| r.regret).collect();
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        if mean > 0.0 {
            points.push((t, mean));
        } else {
            excluded.push(t);
        }
    }
    fit_points(points, excluded)
}

pub fn fit_points(points: Vec<(u64, f64)>, excluded: Vec<u64>) -> Result<SlopeFit, SlopeError> {
    let n = points.len();
    if n < 2 {
        return Err(SlopeError::TooFewPoints(n));
    }
    let xs: Vec<f64> = points.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let sse: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - my - slope * (x - mx)).powi(2)).sum();
    let stderr = if n > 2 { (sse / (n - 2) as f64 / sxx).sqrt() } else { f64::NAN };
    Ok(SlopeFit {
        slope,
        stderr,
        ci_low: slope - 1.96 * stderr,
        ci_high: slope + 1.96 * stderr,
        points,
        excluded,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub fit: Result<SlopeFit, SlopeError>,
}

/// Runs `reps` seeds (`seed + rep`) per horizon. Arm sets and the oracle
/// benchmark are computed once per horizon; reps run on the rayon pool and
/// are returned in `(T, rep)` order.
pub fn run_sweep(
    inst: &Instance,
    learner: &LearnerSpec,
    horizons: &[u64],
    reps: usize,
    seed: u64,
    cap: u128,
) -> contractlab_core::Result<SweepResult> {
    let mut rows = Vec::with_capacity(horizons.len() * reps);
    for &t in horizons {
        let plan = learner.plan(inst, t)?;
        let best = benchmark(inst, &plan, cap)?;
        let batch: Vec<SweepRow> = (0..reps)
            .into_par_iter()
            .map(|rep| {
                let s = seed.wrapping_add(rep as u64);
                let start = Instant::now();
                let trace = learners::play(inst, &plan, t, s, best);
                SweepRow { horizon: t, rep, seed: s, regret: trace.final_regret(), wall: start.elapsed() }
            })
            .collect();
        rows.extend(batch);
    }
    let fit = estimate_slope(&rows);
    Ok(SweepResult { rows, fit })
}

pub fn write_rows<W: std::io::Write>(w: W, rows: &[SweepRow]) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["T", "rep", "seed", "regret"])?;
    for r in rows {
        out.write_record([r.horizon.to_string(), r.rep.to_string(), r.seed.to_string(), r.regret.to_string()])?;
    }
    out.flush()?;
    Ok(())
}
