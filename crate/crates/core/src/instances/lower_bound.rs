//! Hard-instance families for online contract design.
//!
//! All agents share one type and the value vector `(0, 1, ..., 1)` over a
//! null outcome plus `m_free` free outcomes. With `K = floor(1/(2 eps))`,
//! actions are indexed by tuples `k in {0..K-1}^m_free`:
//!
//! ```text
//! q(k)  = 1 / (2 m (1 - k eps))                       success mass per coordinate
//! c(k)  = 1/(2m) * sum_i ( k_i eps/(1 - k_i eps) - sum_{j<k_i} eps/(1 - j eps) )
//! p(k)  = (1 - sum_i q(k_i), q(k_1), ..., q(k_m))
//! ```
//!
//! The agent payoff splits into `f_0 + sum_i (q(k_i) x_i - c_i(k_i))` with
//! `x_i = f_i - f_0`, so in the base instance coordinate `i` picks level
//! `k_i` exactly on `k_i eps <= x_i < (k_i + 1) eps`, and every contract with
//! `f_0 = 0, f_i = k_i eps` earns the principal exactly 1/2.
//!
//! Perturbed instances lower the cost of one labelled action by `eps^2/(10m)`
//! and of the sentinel action `(s, ..., s)`, `s = 2 floor(1/(8 eps)) + 2`, by
//! `eps^2/(20m)`. A discount `B` on action `l` lets the agent keep playing
//! `l` while the summed incentive shortfall over all coordinates stays below
//! `B`. For one free coordinate this is the interval
//! `[l eps - B/dq(l), (l+1) eps + B/dq(l+1))`; with several coordinates the
//! shortfalls add up, so the product of those intervals only bounds the true
//! region from outside.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::error::{invalid, Result};
use crate::model::{ActionSpec, AgentType, Instance};
use crate::rng::{self, seeded};

/// Contracts closer than this to a best-response boundary are skipped by
/// [`verify_regions`].
pub const BOUNDARY_TOL: f64 = 1e-9;

const MAX_ACTIONS: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// Contracts over the full cube of `m_free + 1` outcomes.
    Cube,
    /// Two outcomes, searched through linear contracts `alpha * (0, 1)`.
    Linear,
}

/// A cost reduction applied to one action of the base instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Discount {
    pub index: Vec<usize>,
    pub amount: f64,
}

/// Box on the payment differences `x_i = f_i - f_0`, `lower_i <= x_i < upper_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionDescriptor {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl RegionDescriptor {
    pub fn contains(&self, f: &[f64]) -> bool {
        self.lower
            .iter()
            .zip(&self.upper)
            .zip(&f[1..])
            .all(|((lo, hi), fi)| {
                let x = fi - f[0];
                *lo <= x && x < *hi
            })
    }

    fn near_boundary(&self, f: &[f64]) -> bool {
        self.lower.iter().zip(&self.upper).zip(&f[1..]).any(|((lo, hi), fi)| {
            let x = fi - f[0];
            (x - lo).abs() < BOUNDARY_TOL || (x - hi).abs() < BOUNDARY_TOL
        })
    }

    fn disjoint(&self, other: &Self) -> bool {
        self.lower
            .iter()
            .zip(&self.upper)
            .zip(other.lower.iter().zip(&other.upper))
            .any(|((alo, ahi), (blo, bhi))| ahi <= blo || bhi <= alo)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedInstance {
    /// The labelled action index `(l_1, ..., l_m)`.
    pub index: Vec<usize>,
    pub sentinel: bool,
    pub instance: Instance,
    pub discounts: Vec<Discount>,
    /// Single-coordinate-deviation box of the labelled action.
    pub region: RegionDescriptor,
    /// Optimum value stated for the construction (additive over coordinates).
    pub claimed_optimum: f64,
    pub claimed_contract: Vec<f64>,
    /// Optimum from the separable analysis (shortfalls add across coordinates).
    pub exact_optimum: f64,
    pub exact_contract: Vec<f64>,
}

impl PerturbedInstance {
    pub fn label(&self) -> String {
        let tag = if self.sentinel { "sentinel" } else { "l" };
        format!("{tag}={:?}", self.index)
    }
}

/// Outcome of the closed-form best-response prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prediction {
    Action(usize),
    /// Within [`BOUNDARY_TOL`] of a region boundary.
    Boundary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundFamily {
    pub kind: FamilyKind,
    pub m_free: usize,
    pub eps: f64,
    /// `K = floor(1/(2 eps))` levels per coordinate.
    pub levels: usize,
    /// `s = 2 floor(1/(8 eps)) + 2`.
    pub sentinel_level: usize,
    pub base: Instance,
    /// Instances for every `l` in `{2, 4, ..., 2 floor(1/(8 eps))}^m`, then
    /// the sentinel instance last.
    pub perturbed: Vec<PerturbedInstance>,
}

fn floor_tol(x: f64) -> usize {
    libm::floor(x + 1e-9) as usize
}

/// Hard lower-bound family over `m_free` free contract coordinates.
pub fn gen_lower_bound_family(m_free: usize, eps: f64) -> Result<LowerBoundFamily> {
    build(FamilyKind::Cube, m_free, eps)
}

/// Single-coordinate variant searched through linear contracts.
pub fn gen_linear_lower_bound_family(eps: f64) -> Result<LowerBoundFamily> {
    build(FamilyKind::Linear, 1, eps)
}

fn build(kind: FamilyKind, m_free: usize, eps: f64) -> Result<LowerBoundFamily> {
    if !(eps > 0.0 && eps <= 0.1 + 1e-12) {
        return Err(invalid("eps", format!("must lie in (0, 0.1], got {eps}")));
    }
    if m_free == 0 {
        return Err(invalid("m_free", "need at least one free coordinate"));
    }
    let levels = floor_tol(1.0 / (2.0 * eps));
    let half_count = floor_tol(1.0 / (8.0 * eps));
    if half_count < 1 {
        return Err(invalid("eps", format!("floor(1/(8 eps)) must be >= 1, got {half_count}")));
    }
    let sentinel_level = 2 * half_count + 2;
    if sentinel_level > levels - 1 {
        return Err(invalid(
            "eps",
            format!("sentinel level {sentinel_level} exceeds the largest action level {}", levels - 1),
        ));
    }
    let n_actions = levels
        .checked_pow(m_free as u32)
        .filter(|&n| n <= MAX_ACTIONS)
        .ok_or_else(|| invalid("m_free", format!("{levels}^{m_free} actions exceed {MAX_ACTIONS}")))?;

    let mut fam = LowerBoundFamily {
        kind,
        m_free,
        eps,
        levels,
        sentinel_level,
        base: Instance::from_parts("", Vec::new(), Vec::new()),
        perturbed: Vec::new(),
    };
    let base_name = match kind {
        FamilyKind::Cube => format!("lower-bound-m{m_free}-eps{eps}"),
        FamilyKind::Linear => format!("linear-lower-bound-eps{eps}"),
    };
    fam.base = fam.instance_with(base_name.clone(), &[], n_actions)?;

    let sentinel = vec![sentinel_level; m_free];
    let big = eps * eps / (10.0 * m_free as f64);
    let small = eps * eps / (20.0 * m_free as f64);
    let labels: Vec<usize> = (1..=half_count).map(|i| 2 * i).collect();
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..m_free {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                labels.iter().map(move |&l| {
                    let mut t = t.clone();
                    t.push(l);
                    t
                })
            })
            .collect();
    }
    for l in tuples {
        let discounts = vec![
            Discount { index: l.clone(), amount: big },
            Discount { index: sentinel.clone(), amount: small },
        ];
        let name = format!("{base_name}-l{}", join(&l));
        let instance = fam.instance_with(name, &discounts, n_actions)?;
        fam.perturbed.push(fam.perturbed_entry(l, false, instance, discounts));
    }
    let discounts = vec![Discount { index: sentinel.clone(), amount: small }];
    let instance = fam.instance_with(format!("{base_name}-sentinel"), &discounts, n_actions)?;
    fam.perturbed.push(fam.perturbed_entry(sentinel, true, instance, discounts));
    Ok(fam)
}

fn join(idx: &[usize]) -> String {
    idx.iter().map(|k| format!("{k}")).collect::<Vec<_>>().join("_")
}

impl LowerBoundFamily {
    fn m(&self) -> f64 {
        self.m_free as f64
    }

    /// Success mass `q(k)` contributed by one coordinate at level `k`.
    pub fn level_prob(&self, k: usize) -> f64 {
        1.0 / (2.0 * self.m() * (1.0 - k as f64 * self.eps))
    }

    /// Cost contributed by one coordinate at level `k`.
    pub fn level_cost(&self, k: usize) -> f64 {
        let e = self.eps;
        let kf = k as f64;
        let staircase: f64 = (0..k).map(|j| e / (1.0 - j as f64 * e)).sum();
        (kf * e / (1.0 - kf * e) - staircase) / (2.0 * self.m())
    }

    /// `q(k) x - c(k)`: the coordinate's share of the agent payoff above `f_0`.
    pub fn coordinate_gain(&self, k: usize, x: f64) -> f64 {
        self.level_prob(k) * x - self.level_cost(k)
    }

    /// `q(l) - q(l - 1)`.
    fn prob_step(&self, l: usize) -> f64 {
        let e = self.eps;
        e / (2.0 * self.m() * (1.0 - (l as f64 - 1.0) * e) * (1.0 - l as f64 * e))
    }

    /// Base-instance best level for a payment difference `x`.
    pub fn level_of(&self, x: f64) -> usize {
        if x <= 0.0 {
            return 0;
        }
        (libm::floor(x / self.eps) as usize).min(self.levels - 1)
    }

    /// Action id of index tuple `k` (id 0 is the null action).
    pub fn action_id(&self, k: &[usize]) -> usize {
        1 + k.iter().fold(0, |acc, &ki| acc * self.levels + ki)
    }

    /// Index tuple of an action id, `None` for the null action.
    pub fn action_index(&self, id: usize) -> Option<Vec<usize>> {
        if id == 0 {
            return None;
        }
        let mut rest = id - 1;
        let mut k = vec![0; self.m_free];
        for slot in k.iter_mut().rev() {
            *slot = rest % self.levels;
            rest /= self.levels;
        }
        Some(k)
    }

    fn instance_with(&self, name: String, discounts: &[Discount], n_actions: usize) -> Result<Instance> {
        let m = self.m_free;
        let mut actions = Vec::with_capacity(n_actions + 1);
        actions.push(ActionSpec::null(m + 1));
        let mut k = vec![0usize; m];
        for _ in 0..n_actions {
            let mut prob = Vec::with_capacity(m + 1);
            prob.push(1.0 - k.iter().map(|&ki| self.level_prob(ki)).sum::<f64>());
            prob.extend(k.iter().map(|&ki| self.level_prob(ki)));
            let mut cost: f64 = k.iter().map(|&ki| self.level_cost(ki)).sum();
            if let Some(d) = discounts.iter().find(|d| d.index == k) {
                cost -= d.amount;
            }
            if cost < 0.0 {
                return Err(invalid("eps", format!("action {k:?} would get negative cost {cost}")));
            }
            actions.push(ActionSpec::new(prob, cost));
            for slot in k.iter_mut().rev() {
                *slot += 1;
                if *slot < self.levels {
                    break;
                }
                *slot = 0;
            }
        }
        let mut values = vec![1.0; m + 1];
        values[0] = 0.0;
        Instance::new(name, values, vec![AgentType::new(1.0, actions)])
    }

    fn perturbed_entry(
        &self,
        index: Vec<usize>,
        sentinel: bool,
        instance: Instance,
        discounts: Vec<Discount>,
    ) -> PerturbedInstance {
        let e = self.eps;
        let own = discounts[0].amount;
        let region = RegionDescriptor {
            lower: index.iter().map(|&l| l as f64 * e - own / self.prob_step(l)).collect(),
            upper: index
                .iter()
                .map(|&l| {
                    if l + 1 < self.levels {
                        (l + 1) as f64 * e + own / self.prob_step(l + 1)
                    } else {
                        f64::INFINITY
                    }
                })
                .collect(),
        };

        // additive closed form: every coordinate sits on its own lower edge
        let divisor = if sentinel { 10.0 } else { 5.0 };
        let gain_scale = if sentinel { 20.0 } else { 10.0 };
        let mut claimed_contract = vec![0.0];
        claimed_contract.extend(index.iter().map(|&l| {
            let lf = l as f64;
            lf * e - (1.0 - lf * e) * (1.0 - (lf - 1.0) * e) * e / divisor
        }));
        let claimed_optimum = 0.5
            + index
                .iter()
                .map(|&l| (1.0 - (l as f64 - 1.0) * e) * e / (gain_scale * self.m()))
                .sum::<f64>();

        // separable analysis: the whole discount goes to the single most
        // profitable coordinate, the others stay on their level edge
        let mut exact_optimum = 0.5;
        let mut exact_contract = vec![0.0; self.m_free + 1];
        for d in &discounts {
            let (j, lj) = d
                .index
                .iter()
                .copied()
                .enumerate()
                .min_by_key(|&(_, l)| l)
                .expect("non-empty index");
            let gain = d.amount * (1.0 - (lj as f64 - 1.0) * e) / e;
            if 0.5 + gain > exact_optimum {
                exact_optimum = 0.5 + gain;
                exact_contract = vec![0.0];
                exact_contract.extend(d.index.iter().map(|&l| l as f64 * e));
                exact_contract[j + 1] = lj as f64 * e - d.amount / self.prob_step(lj);
            }
        }

        PerturbedInstance {
            index,
            sentinel,
            instance,
            discounts,
            region,
            claimed_optimum,
            claimed_contract,
            exact_optimum,
            exact_contract,
        }
    }

    /// Closed-form best response in an instance carrying `discounts`,
    /// computed from the separable payoff rather than the action table.
    pub fn predict(&self, discounts: &[Discount], f: &[f64]) -> Prediction {
        let e = self.eps;
        let xs: Vec<f64> = f[1..].iter().map(|fi| fi - f[0]).collect();
        for &x in &xs {
            let k = libm::round(x / e);
            if k >= 1.0 && k <= (self.levels - 1) as f64 && (x - k * e).abs() < BOUNDARY_TOL {
                return Prediction::Boundary;
            }
        }
        let gain_of = |k: &[usize]| -> f64 {
            let bonus = discounts.iter().find(|d| d.index == k).map_or(0.0, |d| d.amount);
            k.iter().zip(&xs).map(|(&ki, &x)| self.coordinate_gain(ki, x)).sum::<f64>() + bonus
        };
        let mut best: Vec<usize> = xs.iter().map(|&x| self.level_of(x)).collect();
        let mut best_gain = gain_of(&best);
        for d in discounts {
            if d.index == best {
                continue;
            }
            let g = gain_of(&d.index);
            if (g - best_gain).abs() < BOUNDARY_TOL {
                return Prediction::Boundary;
            }
            if g > best_gain {
                best = d.index.clone();
                best_gain = g;
            }
        }
        if best_gain.abs() < BOUNDARY_TOL {
            return Prediction::Boundary;
        }
        if best_gain < 0.0 {
            Prediction::Action(0)
        } else {
            Prediction::Action(self.action_id(&best))
        }
    }

    /// Every instance of the family with a label and its discounts.
    pub fn all_instances(&self) -> Vec<(String, &Instance, &[Discount])> {
        let mut out = vec![(String::from("base"), &self.base, &[][..])];
        out.extend(self.perturbed.iter().map(|p| (p.label(), &p.instance, &p.discounts[..])));
        out
    }

    /// Exact interval check that the labelled regions never overlap.
    pub fn regions_pairwise_disjoint(&self) -> bool {
        self.perturbed.iter().enumerate().all(|(i, a)| {
            self.perturbed[i + 1..].iter().all(|b| a.region.disjoint(&b.region))
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionMismatch {
    pub instance: String,
    pub contract: Vec<f64>,
    pub predicted: usize,
    pub actual: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RegionReport {
    pub instances: usize,
    pub checked: usize,
    pub boundary_skipped: usize,
    pub mismatches: Vec<RegionMismatch>,
    /// Samples tested against the per-instance region boxes.
    pub box_checked: usize,
    /// Samples where membership in a region box disagrees with whether the
    /// labelled action is actually played. Zero for one free coordinate.
    pub box_disagreements: usize,
}

impl RegionReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Samples contracts and compares the instance's best response against the
/// closed-form prediction, for the base instance and every perturbed one.
///
/// Each instance gets `n_samples` contracts uniform on the cube and, when it
/// carries discounts, `n_samples` more drawn around its labelled region.
pub fn verify_regions(fam: &LowerBoundFamily, n_samples: usize, seed: u64) -> RegionReport {
    let mut rng = seeded(seed);
    let mut report = RegionReport::default();
    let dim = fam.m_free + 1;
    let boxes: Vec<Option<&PerturbedInstance>> =
        core::iter::once(None).chain(fam.perturbed.iter().map(Some)).collect();
    for ((label, inst, discounts), own) in fam.all_instances().into_iter().zip(boxes) {
        report.instances += 1;
        let targeted = if discounts.is_empty() { 0 } else { n_samples };
        for s in 0..n_samples + targeted {
            let f = if s < n_samples {
                (0..dim).map(|_| rng::unit_f64(&mut rng)).collect::<Vec<f64>>()
            } else {
                sample_near(fam, &own.expect("targeted samples need a region").region, &mut rng)
            };
            match fam.predict(discounts, &f) {
                Prediction::Boundary => report.boundary_skipped += 1,
                Prediction::Action(predicted) => {
                    report.checked += 1;
                    let actual = inst.best_response(0, &f);
                    if actual != predicted {
                        report.mismatches.push(RegionMismatch {
                            instance: label.clone(),
                            contract: f.clone(),
                            predicted,
                            actual,
                        });
                    }
                    if let Some(p) = own {
                        if !p.region.near_boundary(&f) {
                            report.box_checked += 1;
                            let played = predicted == fam.action_id(&p.index);
                            if played != p.region.contains(&f) {
                                report.box_disagreements += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

fn sample_near<R: RngCore>(fam: &LowerBoundFamily, region: &RegionDescriptor, rng: &mut R) -> Vec<f64> {
    let e = fam.eps;
    let f0 = 0.05 * rng::unit_f64(rng);
    let mut f = vec![f0];
    for (lo, hi) in region.lower.iter().zip(&region.upper) {
        let hi = if hi.is_finite() { *hi } else { 1.0 };
        let x = rng::uniform(rng, lo - e, hi + e);
        f.push((f0 + x).clamp(0.0, 1.0));
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_coordinate_costs_match_formula() {
        let fam = gen_lower_bound_family(1, 0.1).unwrap();
        assert_eq!(fam.levels, 5);
        assert_eq!(fam.base.types()[0].actions.len(), 6);
        let c = |k: usize| fam.base.types()[0].actions[1 + k].cost;
        assert_eq!(c(0), 0.0);
        assert!((c(1) - 0.005_555_555_555_555_6).abs() < 1e-15);
    }

    #[test]
    fn family_sizes() {
        let fam = gen_lower_bound_family(2, 0.05).unwrap();
        assert_eq!(fam.base.types()[0].actions.len() - 1, 100);
        assert_eq!(fam.perturbed.len(), 5);
        assert_eq!(fam.sentinel_level, 6);
        assert!(fam.perturbed.last().unwrap().sentinel);
    }

    #[test]
    fn action_ids_round_trip() {
        let fam = gen_lower_bound_family(3, 0.09).unwrap();
        for id in 1..fam.base.types()[0].actions.len() {
            let k = fam.action_index(id).unwrap();
            assert_eq!(fam.action_id(&k), id);
        }
        assert_eq!(fam.action_index(0), None);
    }

    #[test]
    fn base_payoff_is_one_half_on_level_edges() {
        for m in 1..=3 {
            let fam = gen_lower_bound_family(m, 0.1).unwrap();
            for id in 1..fam.base.types()[0].actions.len() {
                let k = fam.action_index(id).unwrap();
                let mut f = vec![0.0];
                f.extend(k.iter().map(|&ki| ki as f64 * 0.1));
                assert_eq!(fam.base.best_response(0, &f), id);
                assert!((fam.base.expected_utility(&f) - 0.5).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn linear_family_first_action() {
        let fam = gen_linear_lower_bound_family(0.1).unwrap();
        let a0 = &fam.base.types()[0].actions[1];
        assert_eq!(a0.prob, vec![0.5, 0.5]);
        assert_eq!(a0.cost, 0.0);
        assert_eq!(fam.kind, FamilyKind::Linear);
    }

    #[test]
    fn perturbed_instances_change_only_costs() {
        let fam = gen_lower_bound_family(2, 0.05).unwrap();
        for p in &fam.perturbed {
            let base = &fam.base.types()[0].actions;
            let pert = &p.instance.types()[0].actions;
            let changed: Vec<usize> = (0..base.len()).filter(|&a| base[a].cost != pert[a].cost).collect();
            assert!(base.iter().zip(pert).all(|(a, b)| a.prob == b.prob));
            assert_eq!(changed.len(), p.discounts.len());
            assert!(pert.iter().all(|a| a.cost >= 0.0));
        }
    }

    #[test]
    fn eps_preconditions() {
        assert!(gen_lower_bound_family(1, 0.1).is_ok());
        assert!(gen_lower_bound_family(1, 0.12).is_err());
        assert!(gen_lower_bound_family(1, 0.0).is_err());
        assert!(gen_lower_bound_family(0, 0.05).is_err());
        assert!(gen_linear_lower_bound_family(0.1).is_ok());
        assert!(gen_lower_bound_family(1, 0.0999).is_ok());
    }

    #[test]
    fn one_coordinate_regions_match_boxes() {
        for eps in [0.1, 0.05, 0.03] {
            let fam = gen_lower_bound_family(1, eps).unwrap();
            let r = verify_regions(&fam, 2000, 7);
            assert!(r.passed(), "{:?}", &r.mismatches[..r.mismatches.len().min(3)]);
            assert_eq!(r.box_disagreements, 0, "eps {eps}");
            assert!(r.box_checked > 0);
        }
    }

    #[test]
    fn two_coordinate_regions_match_prediction() {
        let fam = gen_lower_bound_family(2, 0.1).unwrap();
        let r = verify_regions(&fam, 3000, 8);
        assert!(r.passed(), "{:?}", &r.mismatches[..r.mismatches.len().min(3)]);
    }

    #[test]
    fn labelled_region_plays_labelled_action() {
        let fam = gen_lower_bound_family(1, 0.1).unwrap();
        let p = &fam.perturbed[0];
        assert_eq!(p.index, vec![2]);
        let (lo, hi) = (p.region.lower[0], p.region.upper[0]);
        for i in 1..100 {
            let x = lo + (hi - lo) * i as f64 / 100.0;
            assert_eq!(p.instance.best_response(0, &[0.0, x]), fam.action_id(&[2]));
        }
    }

    #[test]
    fn region_boxes_are_disjoint() {
        for (m, eps) in [(1, 0.1), (1, 0.05), (2, 0.05), (2, 0.03)] {
            assert!(gen_lower_bound_family(m, eps).unwrap().regions_pairwise_disjoint());
        }
    }

    #[test]
    fn exact_optimum_is_attained() {
        for (m, eps) in [(1, 0.1), (2, 0.1), (2, 0.05)] {
            let fam = gen_lower_bound_family(m, eps).unwrap();
            for p in &fam.perturbed {
                let u = p.instance.expected_utility(&p.exact_contract);
                assert!((u - p.exact_optimum).abs() < 1e-9, "{} {u} vs {}", p.label(), p.exact_optimum);
            }
        }
    }

    #[test]
    fn claimed_and_exact_agree_for_one_coordinate() {
        let fam = gen_lower_bound_family(1, 0.05).unwrap();
        for p in &fam.perturbed {
            assert!((p.claimed_optimum - p.exact_optimum).abs() < 1e-12, "{}", p.label());
        }
    }
}
