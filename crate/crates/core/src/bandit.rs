//! Capped UCB over a finite arm set.
//!
//! Rewards in `[-1, 1]` are mapped to `z = (r + 1) / 2` before entering the
//! index `min(1, mean(z) + sqrt(2 ln T / n))`. Untried arms sit at the cap.
//! Ties go to the arm with fewer pulls, then to the lower index.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BanditState {
    pulls: Vec<u64>,
    sums: Vec<f64>,
    index: Vec<f64>,
    horizon: u64,
    t: u64,
    log_term: f64,
    // index space is y = scale * z + shift
    scale: f64,
    shift: f64,
}

impl BanditState {
    pub fn new(n_arms: usize, horizon: u64) -> Self {
        Self::with_affine(n_arms, horizon, 1.0, 0.0)
    }

    /// Runs the index in the transformed space `y = scale * z + shift`
    /// (bonus scaled by `scale`, cap at `scale + shift`). Any `scale > 0`
    /// selects the same arms as [`BanditState::new`].
    pub fn with_affine(n_arms: usize, horizon: u64, scale: f64, shift: f64) -> Self {
        assert!(n_arms > 0, "bandit needs at least one arm");
        assert!(scale > 0.0, "affine scale must be positive");
        Self {
            pulls: vec![0; n_arms],
            sums: vec![0.0; n_arms],
            index: vec![scale + shift; n_arms],
            horizon,
            t: 0,
            log_term: 2.0 * libm::log(horizon.max(1) as f64),
            scale,
            shift,
        }
    }

    pub fn n_arms(&self) -> usize {
        self.pulls.len()
    }

    pub fn round(&self) -> u64 {
        self.t
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn pulls(&self) -> &[u64] {
        &self.pulls
    }

    pub fn indices(&self) -> &[f64] {
        &self.index
    }

    /// Mean of the mapped rewards of `arm` (0 if untried).
    pub fn mean(&self, arm: usize) -> f64 {
        if self.pulls[arm] == 0 {
            0.0
        } else {
            self.sums[arm] / self.pulls[arm] as f64
        }
    }

    pub fn select(&self) -> usize {
        ucb_select(self)
    }

    pub fn update(&mut self, arm: usize, reward: f64) -> Result<()> {
        ucb_update(self, arm, reward)
    }
}

pub fn ucb_select(state: &BanditState) -> usize {
    let mut best = 0;
    for a in 1..state.index.len() {
        let (ia, ib) = (state.index[a], state.index[best]);
        if ia > ib || (ia == ib && state.pulls[a] < state.pulls[best]) {
            best = a;
        }
    }
    best
}

pub fn ucb_update(state: &mut BanditState, arm: usize, reward: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&reward) {
        return Err(invalid("reward", format!("{reward} outside [-1, 1]")));
    }
    if arm >= state.pulls.len() {
        return Err(crate::Error::IndexOutOfRange { what: "arm", index: arm, len: state.pulls.len() });
    }
    let z = (reward + 1.0) / 2.0;
    state.pulls[arm] += 1;
    state.sums[arm] += state.scale * z + state.shift;
    state.t += 1;
    let n = state.pulls[arm] as f64;
    let bonus = state.scale * libm::sqrt(state.log_term / n);
    state.index[arm] = (state.sums[arm] / n + bonus).min(state.scale + state.shift);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_state_picks_arm_zero() {
        assert_eq!(BanditState::new(5, 10).select(), 0);
        let mut one = BanditState::new(1, 10);
        for _ in 0..10 {
            assert_eq!(one.select(), 0);
            one.update(0, 0.3).unwrap();
        }
    }

    #[test]
    fn cap_binds_early() {
        let mut s = BanditState::new(2, 100);
        s.update(0, 1.0).unwrap();
        assert_eq!(s.indices()[0], 1.0);
        s.update(1, -1.0).unwrap();
        assert_eq!(s.indices()[1], 1.0);
    }

    #[test]
    fn index_after_many_zero_pulls() {
        let mut s = BanditState::new(1, 100);
        for _ in 0..100 {
            s.update(0, -1.0).unwrap();
        }
        let expect = libm::sqrt(2.0 * libm::log(100.0) / 100.0);
        assert!((s.indices()[0] - expect).abs() < 1e-12);
        assert!((expect - 0.3035).abs() < 1e-4);
    }

    #[test]
    fn deterministic_two_arm_game() {
        let mut s = BanditState::new(2, 100);
        for _ in 0..100 {
            let a = s.select();
            s.update(a, if a == 0 { 1.0 } else { -1.0 }).unwrap();
            assert_eq!(s.pulls().iter().sum::<u64>(), s.round());
        }
        assert!(s.pulls()[1] <= 11, "{:?}", s.pulls());
    }

    #[test]
    fn rejects_out_of_range_reward() {
        let mut s = BanditState::new(2, 10);
        assert!(s.update(0, 1.5).is_err());
        assert!(s.update(2, 0.0).is_err());
        assert_eq!(s.round(), 0);
    }
}
