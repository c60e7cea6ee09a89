//! Principal-agent instances and their exact evaluation.
//!
//! An [`Instance`] fixes the principal's outcome values, a distribution over
//! agent types, and for every type an ordered action list (production
//! distribution plus cost). Action 0 of every type is the null action.
//!
//! Given a contract the agent best-responds by maximizing expected payment
//! minus cost. Payoffs within [`TIE_TOL`] count as tied, and ties are broken
//! in favor of the principal and then by lowest action id. This reproduces
//! half-open best-response regions of the form `k*eps <= f_i - f_0 < (k+1)*eps`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Deref;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::rng;

/// Tolerance on probability sums and entries.
pub const PROB_TOL: f64 = 1e-9;

/// Agent payoffs closer than this are treated as tied.
pub const TIE_TOL: f64 = 1e-12;

/// Principal values per outcome, `values[0]` belonging to the null outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeModel {
    values: Vec<f64>,
}

impl OutcomeModel {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ActionSpec {
    pub prob: Vec<f64>,
    pub cost: f64,
}

impl ActionSpec {
    pub fn new(prob: Vec<f64>, cost: f64) -> Self {
        Self { prob, cost }
    }

    /// Zero-cost action that lands on outcome 0 with certainty.
    pub fn null(m: usize) -> Self {
        let mut prob = alloc::vec![0.0; m];
        if m > 0 {
            prob[0] = 1.0;
        }
        Self { prob, cost: 0.0 }
    }

    fn is_null(&self) -> bool {
        self.cost == 0.0
            && self.prob.first().is_some_and(|&p| (p - 1.0).abs() <= PROB_TOL)
            && self.prob.iter().skip(1).all(|&p| p.abs() <= PROB_TOL)
    }

    /// Expected payment under `f` minus cost.
    #[inline]
    pub fn agent_payoff(&self, f: &[f64]) -> f64 {
        dot(&self.prob, f) - self.cost
    }

    /// Principal's expected `v_o - f_o` when this action is played.
    #[inline]
    pub fn principal_value(&self, values: &[f64], f: &[f64]) -> f64 {
        self.prob
            .iter()
            .zip(values.iter().zip(f))
            .map(|(p, (v, x))| p * (v - x))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgentType {
    pub weight: f64,
    pub actions: Vec<ActionSpec>,
}

impl AgentType {
    pub fn new(weight: f64, actions: Vec<ActionSpec>) -> Self {
        Self { weight, actions }
    }
}

/// A single invariant violation found by [`Instance::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

impl Violation {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self { path: path.into(), message: message.into() }
    }
}

impl core::fmt::Display for Violation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// A payment vector with every coordinate in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Contract(Vec<f64>);

impl Contract {
    pub fn new(payments: Vec<f64>) -> Result<Self> {
        for (index, &value) in payments.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::ContractOutOfRange { index, value });
            }
        }
        Ok(Self(payments))
    }

    /// All-zero contract of dimension `m`.
    pub fn zeros(m: usize) -> Self {
        Self(alloc::vec![0.0; m])
    }

    pub fn payments(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for Contract {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Result of one simulated round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundSample {
    pub type_id: usize,
    pub action_id: usize,
    pub outcome: usize,
    /// `v_o - f_o`, in `[-1, 1]`.
    pub reward: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    name: String,
    outcomes: OutcomeModel,
    types: Vec<AgentType>,
    type_weights: Vec<f64>,
}

impl Instance {
    /// Builds and validates an instance.
    pub fn new(name: impl Into<String>, values: Vec<f64>, types: Vec<AgentType>) -> Result<Self> {
        let inst = Self::from_parts(name, values, types);
        let violations = inst.validate();
        if violations.is_empty() {
            Ok(inst)
        } else {
            Err(Error::InvalidInstance(violations))
        }
    }

    /// Builds an instance without validating it. Use [`Instance::validate`]
    /// to obtain the violation report.
    pub fn from_parts(name: impl Into<String>, values: Vec<f64>, types: Vec<AgentType>) -> Self {
        let type_weights = types.iter().map(|t| t.weight).collect();
        Self { name: name.into(), outcomes: OutcomeModel::new(values), types, type_weights }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of outcomes `m`.
    pub fn dim(&self) -> usize {
        self.outcomes.len()
    }

    pub fn values(&self) -> &[f64] {
        self.outcomes.values()
    }

    pub fn outcomes(&self) -> &OutcomeModel {
        &self.outcomes
    }

    pub fn types(&self) -> &[AgentType] {
        &self.types
    }

    /// Every invariant violation, in a stable order. Empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let values = self.values();
        let m = values.len();
        if m == 0 {
            out.push(Violation::new("values", "at least one outcome is required"));
        }
        for (o, &v) in values.iter().enumerate() {
            if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                out.push(Violation::new(format!("values[{o}]"), format!("value {v} outside [0, 1]")));
            }
        }
        if let Some(&v0) = values.first() {
            if v0 != 0.0 {
                out.push(Violation::new("values[0]", format!("null outcome must have value 0, got {v0}")));
            }
        }
        for o in 1..m {
            if values[o] < values[o - 1] {
                out.push(Violation::new(
                    format!("values[{o}]"),
                    format!("values must be non-decreasing ({} < {})", values[o], values[o - 1]),
                ));
            }
        }

        if self.types.is_empty() {
            out.push(Violation::new("types", "at least one agent type is required"));
        }
        let mut total = 0.0;
        for (i, ty) in self.types.iter().enumerate() {
            if !ty.weight.is_finite() || ty.weight < 0.0 {
                out.push(Violation::new(format!("types[{i}].weight"), format!("weight {} must be >= 0", ty.weight)));
            }
            total += ty.weight;
            if ty.actions.is_empty() {
                out.push(Violation::new(format!("types[{i}].actions"), "at least the null action is required"));
                continue;
            }
            for (a, act) in ty.actions.iter().enumerate() {
                let path = format!("types[{i}].actions[{a}]");
                if act.prob.len() != m {
                    out.push(Violation::new(
                        format!("{path}.prob"),
                        format!("length {} does not match {m} outcomes", act.prob.len()),
                    ));
                    continue;
                }
                if let Some((o, p)) = act
                    .prob
                    .iter()
                    .enumerate()
                    .find(|(_, p)| !p.is_finite() || **p < -PROB_TOL || **p > 1.0 + PROB_TOL)
                {
                    out.push(Violation::new(format!("{path}.prob[{o}]"), format!("probability {p} outside [0, 1]")));
                }
                let sum: f64 = act.prob.iter().sum();
                if !((sum - 1.0).abs() <= PROB_TOL) {
                    out.push(Violation::new(format!("{path}.prob"), format!("probabilities sum to {sum}, expected 1")));
                }
                if !act.cost.is_finite() || act.cost < 0.0 {
                    out.push(Violation::new(format!("{path}.cost"), format!("cost {} must be >= 0", act.cost)));
                }
            }
            let first = &ty.actions[0];
            if first.prob.len() == m && !first.is_null() {
                out.push(Violation::new(
                    format!("types[{i}].actions[0]"),
                    "action 0 must be the null action: prob = (1, 0, ..., 0) and cost = 0",
                ));
            }
        }
        if !self.types.is_empty() && !((total - 1.0).abs() <= PROB_TOL) {
            out.push(Violation::new("types", format!("type weights sum to {total}, expected 1")));
        }
        out
    }

    fn action(&self, type_id: usize, action_id: usize) -> Result<&ActionSpec> {
        let ty = self.types.get(type_id).ok_or(Error::IndexOutOfRange {
            what: "type",
            index: type_id,
            len: self.types.len(),
        })?;
        ty.actions.get(action_id).ok_or(Error::IndexOutOfRange {
            what: "action",
            index: action_id,
            len: ty.actions.len(),
        })
    }

    fn check_dim(&self, f: &[f64]) -> Result<()> {
        if f.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: f.len() });
        }
        Ok(())
    }

    /// `sum_o p_i(o|a) f_o - c_i(a)`.
    pub fn agent_payoff(&self, type_id: usize, action_id: usize, f: &Contract) -> Result<f64> {
        self.check_dim(f)?;
        Ok(self.action(type_id, action_id)?.agent_payoff(f))
    }

    /// Principal's expected `v_o - f_o` if type `type_id` plays `action_id`.
    pub fn principal_value(&self, type_id: usize, action_id: usize, f: &[f64]) -> Result<f64> {
        self.check_dim(f)?;
        Ok(self.action(type_id, action_id)?.principal_value(self.values(), f))
    }

    /// Agent best response of `type_id` to `f`.
    ///
    /// # Panics
    ///
    /// If `type_id` is out of range.
    pub fn best_response(&self, type_id: usize, f: &[f64]) -> usize {
        let actions = &self.types[type_id].actions;
        debug_assert_eq!(f.len(), self.dim());
        let top = actions.iter().map(|a| a.agent_payoff(f)).fold(f64::NEG_INFINITY, f64::max);
        let values = self.values();
        let mut choice = 0;
        let mut choice_value = f64::NEG_INFINITY;
        for (id, act) in actions.iter().enumerate() {
            if act.agent_payoff(f) >= top - TIE_TOL {
                let pv = act.principal_value(values, f);
                if pv > choice_value + TIE_TOL {
                    choice = id;
                    choice_value = pv;
                }
            }
        }
        choice
    }

    /// Exact principal utility `u(f)` under best responses of every type.
    pub fn expected_utility(&self, f: &[f64]) -> f64 {
        let values = self.values();
        self.types
            .iter()
            .enumerate()
            .map(|(i, ty)| {
                let a = self.best_response(i, f);
                ty.weight * ty.actions[a].principal_value(values, f)
            })
            .sum()
    }

    /// `u(alpha * v)` for the linear contract with share `alpha`.
    pub fn linear_utility(&self, alpha: f64) -> f64 {
        self.expected_utility(&self.linear_contract(alpha))
    }

    pub fn linear_contract(&self, alpha: f64) -> Vec<f64> {
        self.values().iter().map(|v| alpha * v).collect()
    }

    /// Simulates one round: draws a type, lets it best respond and draws an
    /// outcome. Always consumes exactly two uniforms from `rng`.
    pub fn sample_round<R: RngCore + ?Sized>(&self, f: &[f64], rng: &mut R) -> RoundSample {
        let type_id = rng::categorical(rng, &self.type_weights);
        let action_id = self.best_response(type_id, f);
        let outcome = rng::categorical(rng, &self.types[type_id].actions[action_id].prob);
        RoundSample { type_id, action_id, outcome, reward: self.values()[outcome] - f[outcome] }
    }

    /// Best response of every type to `f`.
    pub fn responses(&self, f: &[f64]) -> Vec<usize> {
        (0..self.types.len()).map(|i| self.best_response(i, f)).collect()
    }

    /// [`Instance::sample_round`] with best responses precomputed by
    /// [`Instance::responses`]; draws the same random numbers.
    pub fn sample_with_responses<R: RngCore + ?Sized>(
        &self,
        f: &[f64],
        responses: &[usize],
        rng: &mut R,
    ) -> RoundSample {
        let type_id = rng::categorical(rng, &self.type_weights);
        let action_id = responses[type_id];
        let outcome = rng::categorical(rng, &self.types[type_id].actions[action_id].prob);
        RoundSample { type_id, action_id, outcome, reward: self.values()[outcome] - f[outcome] }
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
