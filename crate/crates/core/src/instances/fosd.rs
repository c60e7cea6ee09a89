//! First-order stochastic dominance checks.

use alloc::vec::Vec;

use crate::model::Instance;

const FOSD_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FosdReport {
    /// `(type_id, first_action, second_action)` pairs where neither survival
    /// function dominates the other.
    pub failures: Vec<(usize, usize, usize)>,
    pub pairs_checked: usize,
}

impl FosdReport {
    pub fn is_fosd(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `P(X >= o | a)` for every outcome `o`.
pub fn survival(prob: &[f64]) -> Vec<f64> {
    let mut tail = alloc::vec![0.0; prob.len()];
    let mut acc = 0.0;
    for o in (0..prob.len()).rev() {
        acc += prob[o];
        tail[o] = acc;
    }
    tail
}

fn dominates(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x >= *y - FOSD_TOL)
}

/// Checks that, for every type, every pair of actions is ordered by FOSD.
pub fn verify_fosd(inst: &Instance) -> FosdReport {
    let mut report = FosdReport::default();
    for (t, ty) in inst.types().iter().enumerate() {
        let tails: Vec<Vec<f64>> = ty.actions.iter().map(|a| survival(&a.prob)).collect();
        for a in 0..tails.len() {
            for b in a + 1..tails.len() {
                report.pairs_checked += 1;
                if !dominates(&tails[a], &tails[b]) && !dominates(&tails[b], &tails[a]) {
                    report.failures.push((t, a, b));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ActionSpec, AgentType};
    use alloc::vec;

    #[test]
    fn crossing_tails_are_reported() {
        let inst = Instance::new(
            "crossing",
            vec![0.0, 0.5, 1.0],
            vec![AgentType::new(
                1.0,
                vec![
                    ActionSpec::null(3),
                    ActionSpec::new(vec![0.0, 1.0, 0.0], 0.1),
                    ActionSpec::new(vec![0.5, 0.0, 0.5], 0.1),
                ],
            )],
        )
        .unwrap();
        let r = verify_fosd(&inst);
        assert_eq!(r.failures, vec![(0, 1, 2)]);
        assert_eq!(r.pairs_checked, 3);
    }

    #[test]
    fn survival_of_point_mass() {
        assert_eq!(survival(&[0.0, 1.0, 0.0]), vec![1.0, 1.0, 0.0]);
    }
}
