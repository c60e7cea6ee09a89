//! Random instances for property testing.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{invalid, Result};
use crate::model::{ActionSpec, AgentType, Instance};
use crate::rng::{self, seeded};

fn check_dims(m: usize, n_actions: usize) -> Result<()> {
    if m < 2 {
        return Err(invalid("m", format!("need at least 2 outcomes, got {m}")));
    }
    if n_actions == 0 {
        return Err(invalid("n_actions", "need at least one non-null action"));
    }
    Ok(())
}

fn random_values(rng: &mut rng::SimRng, m: usize) -> Vec<f64> {
    let mut values: Vec<f64> = (1..m).map(|_| rng::unit_f64(rng)).collect();
    values.sort_by(f64::total_cmp);
    values.insert(0, 0.0);
    values
}

/// Values, type weights, production distributions (uniform on the simplex)
/// and costs (uniform on `[0, 1)`) all drawn from `seed`. Every type gets the
/// null action followed by `n_actions` random actions.
pub fn gen_random_instance(m: usize, n_types: usize, n_actions: usize, seed: u64) -> Result<Instance> {
    check_dims(m, n_actions)?;
    if n_types == 0 {
        return Err(invalid("n_types", "need at least one type"));
    }
    let mut rng = seeded(seed);
    let values = random_values(&mut rng, m);
    let weights = rng::simplex(&mut rng, n_types);
    let types = weights
        .into_iter()
        .map(|w| {
            let mut actions = Vec::with_capacity(n_actions + 1);
            actions.push(ActionSpec::null(m));
            for _ in 0..n_actions {
                let prob = rng::simplex(&mut rng, m);
                actions.push(ActionSpec::new(prob, rng::unit_f64(&mut rng)));
            }
            AgentType::new(w, actions)
        })
        .collect();
    Instance::new(format!("random-m{m}-t{n_types}-a{n_actions}-s{seed}"), values, types)
}

/// Single-type instance whose actions are totally ordered by first-order
/// stochastic dominance, with costs increasing along that order.
///
/// Survival functions are sampled independently and then sorted
/// coordinate-wise; the j-th order statistic of non-increasing sequences is
/// itself non-increasing, so every sorted tail is a valid survival function.
pub fn gen_fosd_instance(m: usize, n_actions: usize, seed: u64) -> Result<Instance> {
    check_dims(m, n_actions)?;
    let mut rng = seeded(seed);
    let values = random_values(&mut rng, m);
    let mut tails: Vec<Vec<f64>> = (0..n_actions)
        .map(|_| super::fosd::survival(&rng::simplex(&mut rng, m)))
        .collect();
    for o in 0..m {
        let mut column: Vec<f64> = tails.iter().map(|t| t[o]).collect();
        column.sort_by(f64::total_cmp);
        for (t, c) in tails.iter_mut().zip(column) {
            t[o] = c;
        }
    }
    let mut costs: Vec<f64> = (0..n_actions).map(|_| rng::unit_f64(&mut rng)).collect();
    costs.sort_by(f64::total_cmp);

    let mut actions = Vec::with_capacity(n_actions + 1);
    actions.push(ActionSpec::null(m));
    for (tail, cost) in tails.into_iter().zip(costs) {
        let mut prob: Vec<f64> = (0..m)
            .map(|o| {
                let next = if o + 1 < m { tail[o + 1] } else { 0.0 };
                (tail[o] - next).max(0.0)
            })
            .collect();
        // the top of every sorted tail is exactly 1, keep the mass exact
        let total: f64 = prob.iter().sum();
        prob[0] += 1.0 - total;
        actions.push(ActionSpec::new(prob, cost));
    }
    Instance::new(
        format!("fosd-m{m}-a{n_actions}-s{seed}"),
        values,
        alloc::vec![AgentType::new(1.0, actions)],
    )
}
