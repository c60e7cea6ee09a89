//! Dynamic task pricing as a two-outcome linear contract problem.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Result};
use crate::model::{ActionSpec, AgentType, Instance};

/// One agent type per private cost. The agent sells (outcome 1) iff the
/// posted price covers its cost.
pub fn gen_dynamic_pricing(costs: &[f64], weights: &[f64]) -> Result<Instance> {
    if costs.is_empty() {
        return Err(invalid("costs", "at least one cost is required"));
    }
    if costs.len() != weights.len() {
        return Err(invalid("weights", format!("{} weights for {} costs", weights.len(), costs.len())));
    }
    if let Some(c) = costs.iter().find(|c| !(0.0..=1.0).contains(*c)) {
        return Err(invalid("costs", format!("cost {c} outside [0, 1]")));
    }
    let types = costs
        .iter()
        .zip(weights)
        .map(|(&c, &w)| AgentType::new(w, vec![ActionSpec::null(2), ActionSpec::new(vec![0.0, 1.0], c)]))
        .collect();
    Instance::new(format!("pricing-{}", costs.len()), vec![0.0, 1.0], types)
}

/// Pricing instance whose private cost is uniform over the `levels`
/// midpoints `(i + 1/2) / levels`.
pub fn uniform_cost_pricing(levels: usize) -> Result<Instance> {
    if levels == 0 {
        return Err(invalid("levels", "must be positive"));
    }
    let costs: Vec<f64> = (0..levels).map(|i| (i as f64 + 0.5) / levels as f64).collect();
    let weights = vec![1.0 / levels as f64; levels];
    gen_dynamic_pricing(&costs, &weights)
}
