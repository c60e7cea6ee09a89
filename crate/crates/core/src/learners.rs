//! Online learners: UCB over a fixed finite arm set chosen per learner.
//!
//! | learner  | eps                                   | arms                                   |
//! |----------|---------------------------------------|----------------------------------------|
//! | general  | `T^(-1/(2 d_hat + 3))`                | `S_eps` of the given family            |
//! | linear   | `(T / ln T)^(-1/3)`                   | `alpha * v`, `alpha in {k eps < 1} ∪ {1}` |
//! | fosd     | `(T m^2 / ln T)^(-1/(m + 2))`         | `{0} x {0, eps, ..., <= 1}^m`           |
//!
//! For the FOSD learner `m` is the number of non-null outcomes and the null
//! payment is fixed at zero.
//!
//! Each `run_*` splits into a `plan_*` step (arm set, independent of the
//! seed) and [`play`], so repeated seeds can share one plan.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bandit::BanditState;
use crate::discretization::{self, ContractFamily, DEFAULT_EPS_LIST};
use crate::error::{invalid, Error, Result};
use crate::instances::fosd::verify_fosd;
use crate::model::Instance;
use crate::oracle::{self, OracleResult};
use crate::rng::seeded;

/// Largest eps the general learner uses; keeps at least three radial steps.
pub const MAX_GENERAL_EPS: f64 = 0.5;

/// Grid points the benchmark oracle of a `run_*` call may evaluate.
pub const BENCHMARK_GRID_POINTS: f64 = 1e6;

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    /// 1-based round.
    pub t: u64,
    pub arm: usize,
    pub outcome: usize,
    pub reward: f64,
    pub regret_step: f64,
    pub regret_cum: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceMeta {
    pub learner: String,
    pub instance: String,
    pub seed: u64,
    pub eps: f64,
    pub horizon: u64,
    pub best_utility: f64,
    pub d_hat: Option<f64>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegretTrace {
    pub meta: TraceMeta,
    pub arms: Vec<Vec<f64>>,
    pub rows: Vec<TraceRow>,
}

impl RegretTrace {
    pub fn contract(&self, row: &TraceRow) -> &[f64] {
        &self.arms[row.arm]
    }

    /// Cumulative pseudo-regret after round `t` (0 for `t = 0`).
    pub fn regret_at(&self, t: u64) -> f64 {
        if t == 0 {
            0.0
        } else {
            self.rows[t as usize - 1].regret_cum
        }
    }

    pub fn final_regret(&self) -> f64 {
        self.rows.last().map_or(0.0, |r| r.regret_cum)
    }
}

/// Seed-independent part of a learner run.
#[derive(Debug, Clone, PartialEq)]
pub struct LearnerPlan {
    pub learner: &'static str,
    pub eps: f64,
    pub arms: Vec<Vec<f64>>,
    /// Family the arms were drawn from; the benchmark oracle searches it.
    pub family: ContractFamily,
    pub d_hat: Option<f64>,
    pub warnings: Vec<String>,
}

pub fn plan_general(
    inst: &Instance,
    family: &ContractFamily,
    horizon: u64,
    exponent: Option<f64>,
) -> Result<LearnerPlan> {
    if horizon == 0 {
        return Err(invalid("T", "horizon must be at least 1"));
    }
    if family.m != inst.dim() {
        return Err(Error::DimensionMismatch { expected: inst.dim(), got: family.m });
    }
    let mut warnings = Vec::new();
    let (exp, d_hat) = match exponent {
        Some(e) => {
            if !(e > 0.0) {
                return Err(invalid("exponent", format!("must be positive, got {e}")));
            }
            (e, None)
        }
        None => {
            let est = discretization::estimate_intrinsic_dimension(family, &DEFAULT_EPS_LIST, None)?;
            (1.0 / (2.0 * est.d_hat + 3.0), Some(est.d_hat))
        }
    };
    let raw = libm::pow(horizon as f64, -exp);
    if raw >= 0.1 {
        warnings.push(format!("eps = {raw:.6} is not below 0.1"));
    }
    let eps = raw.min(MAX_GENERAL_EPS);
    if eps < raw {
        warnings.push(format!("eps clamped from {raw:.6} to {eps}"));
    }
    let set = discretization::build_s_eps(family, eps)?;
    Ok(LearnerPlan { learner: "general", eps, arms: set.arms, family: family.clone(), d_hat, warnings })
}

/// `(T / ln T)^(-1/3)`.
pub fn linear_eps(horizon: u64) -> f64 {
    let t = horizon as f64;
    libm::pow(t / libm::log(t), -1.0 / 3.0)
}

/// `{k eps : k eps < 1} ∪ {1}`.
pub fn linear_alphas(eps: f64) -> Vec<f64> {
    let mut alphas: Vec<f64> = (0..).map(|k| k as f64 * eps).take_while(|a| *a < 1.0 - 1e-12).collect();
    alphas.push(1.0);
    alphas
}

pub fn plan_linear(inst: &Instance, horizon: u64) -> Result<LearnerPlan> {
    if horizon < 2 {
        return Err(invalid("T", "the linear learner needs T >= 2"));
    }
    let eps = linear_eps(horizon);
    let arms = linear_alphas(eps).into_iter().map(|a| inst.linear_contract(a)).collect();
    let family = ContractFamily::linear(inst.values().to_vec())?;
    Ok(LearnerPlan { learner: "linear", eps, arms, family, d_hat: None, warnings: Vec::new() })
}

/// `(T m^2 / ln T)^(-1/(m + 2))`, capped at 1.
pub fn fosd_eps(horizon: u64, m_free: usize) -> f64 {
    let t = horizon as f64;
    let m = m_free as f64;
    libm::pow(t * m * m / libm::log(t), -1.0 / (m + 2.0)).min(1.0)
}

pub fn plan_fosd(inst: &Instance, horizon: u64) -> Result<LearnerPlan> {
    if horizon < 2 {
        return Err(invalid("T", "the FOSD learner needs T >= 2"));
    }
    let report = verify_fosd(inst);
    if let Some(&(type_id, first, second)) = report.failures.first() {
        return Err(Error::NotFosd { type_id, first, second });
    }
    let m_free = inst.dim() - 1;
    let eps = fosd_eps(horizon, m_free);
    let grid = discretization::uniform_grid(m_free, eps)?;
    let arms = grid
        .arms
        .into_iter()
        .map(|g| {
            let mut f = vec![0.0];
            f.extend(g);
            f
        })
        .collect();
    let family = ContractFamily::zero_null(inst.values().to_vec())?;
    Ok(LearnerPlan { learner: "fosd", eps, arms, family, d_hat: None, warnings: Vec::new() })
}

/// Grid resolution giving at most [`BENCHMARK_GRID_POINTS`] points.
pub fn benchmark_delta(family: &ContractFamily) -> f64 {
    let dim = family.grid_dim().max(1) as f64;
    let per_axis = libm::floor(libm::pow(BENCHMARK_GRID_POINTS, 1.0 / dim) + 1e-9).min(10_001.0);
    1.0 / (per_axis - 1.0).max(1.0)
}

/// Grid oracle over the plan's family at [`benchmark_delta`].
pub fn benchmark_oracle(inst: &Instance, plan: &LearnerPlan) -> Result<OracleResult> {
    oracle::grid_optimal_contract(inst, &plan.family, benchmark_delta(&plan.family))
}

/// Plays UCB over the plan's arms for `horizon` rounds. Per-round regret is
/// `best - u(arm)` with `best = max(best_utility, max_arm u(arm))`.
pub fn play(inst: &Instance, plan: &LearnerPlan, horizon: u64, seed: u64, best_utility: f64) -> RegretTrace {
    let arm_utils: Vec<f64> = plan.arms.iter().map(|f| inst.expected_utility(f)).collect();
    let responses: Vec<Vec<usize>> = plan.arms.iter().map(|f| inst.responses(f)).collect();
    let best = arm_utils.iter().copied().fold(best_utility, f64::max);
    let mut rng = seeded(seed);
    let mut state = BanditState::new(plan.arms.len(), horizon);
    let mut rows = Vec::with_capacity(horizon as usize);
    let mut cum = 0.0;
    for t in 1..=horizon {
        let arm = state.select();
        let s = inst.sample_with_responses(&plan.arms[arm], &responses[arm], &mut rng);
        state.update(arm, s.reward).expect("rewards of valid contracts lie in [-1, 1]");
        let step = best - arm_utils[arm];
        cum += step;
        rows.push(TraceRow { t, arm, outcome: s.outcome, reward: s.reward, regret_step: step, regret_cum: cum });
    }
    RegretTrace {
        meta: TraceMeta {
            learner: String::from(plan.learner),
            instance: String::from(inst.name()),
            seed,
            eps: plan.eps,
            horizon,
            best_utility: best,
            d_hat: plan.d_hat,
            warnings: plan.warnings.clone(),
        },
        arms: plan.arms.clone(),
        rows,
    }
}

fn run(inst: &Instance, plan: LearnerPlan, horizon: u64, seed: u64) -> Result<RegretTrace> {
    let best = benchmark_oracle(inst, &plan)?.best_utility;
    Ok(play(inst, &plan, horizon, seed, best))
}

pub fn run_general_learner(
    inst: &Instance,
    family: &ContractFamily,
    horizon: u64,
    seed: u64,
    exponent: Option<f64>,
) -> Result<RegretTrace> {
    run(inst, plan_general(inst, family, horizon, exponent)?, horizon, seed)
}

pub fn run_linear_learner(inst: &Instance, horizon: u64, seed: u64) -> Result<RegretTrace> {
    run(inst, plan_linear(inst, horizon)?, horizon, seed)
}

pub fn run_fosd_learner(inst: &Instance, horizon: u64, seed: u64) -> Result<RegretTrace> {
    run(inst, plan_fosd(inst, horizon)?, horizon, seed)
}
