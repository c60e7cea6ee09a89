//! Executable property suites.
//!
//! Each suite draws its own random instances from `seed` and reports every
//! violated inequality. `samples` scales the suite: random instances for the
//! model suites, contracts per instance for `regions`, fresh points per cover
//! for `covering`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::discretization::{self, ContractFamily};
use crate::instances::{self, gen_fosd_instance, gen_lower_bound_family, gen_random_instance, verify_fosd};
use crate::model::{dot, Instance};
use crate::rng::{self, seeded, SimRng};

/// Slack on every checked inequality.
pub const CHECK_TOL: f64 = 1e-9;

const KEEP_MESSAGES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Continuity,
    Geometry,
    LinearMonotone,
    Regions,
    Fosd,
    Payoffs,
    Covering,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Continuity,
        Suite::Geometry,
        Suite::LinearMonotone,
        Suite::Regions,
        Suite::Fosd,
        Suite::Payoffs,
        Suite::Covering,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Continuity => "continuity",
            Suite::Geometry => "geometry",
            Suite::LinearMonotone => "linear-monotone",
            Suite::Regions => "regions",
            Suite::Fosd => "fosd",
            Suite::Payoffs => "payoffs",
            Suite::Covering => "covering",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: usize,
    pub violations: usize,
    /// First few violation descriptions.
    pub messages: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        Self { suite: suite.name(), checks: 0, violations: 0, messages: Vec::new() }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations += 1;
            if self.messages.len() < KEEP_MESSAGES {
                self.messages.push(msg());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

pub fn run_suite(suite: Suite, samples: usize, seed: u64) -> SuiteReport {
    match suite {
        Suite::Continuity => continuity(samples, 10, seed),
        Suite::Geometry => geometry(samples, 10, seed),
        Suite::LinearMonotone => linear_monotone(samples, 200, 10, seed),
        Suite::Regions => regions(samples, seed),
        Suite::Fosd => fosd(samples, seed),
        Suite::Payoffs => payoffs(),
        Suite::Covering => covering(samples, seed),
    }
}

/// Random instance with 2..=4 outcomes, 1..=3 types and 1..=5 actions.
pub fn random_instance(rng: &mut SimRng) -> Instance {
    let m = rng::int_in(rng, 2, 5);
    let types = rng::int_in(rng, 1, 4);
    let actions = rng::int_in(rng, 1, 6);
    gen_random_instance(m, types, actions, rng.next_u64()).expect("valid sizes")
}

fn unit_cube(rng: &mut SimRng, m: usize) -> Vec<f64> {
    (0..m).map(|_| rng::unit_f64(rng)).collect()
}

fn sup_norm(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |a, b| a.max(b.abs()))
}

/// `u(f) - u(f + gamma) <= 2 (|gamma|_inf + |r|_inf / alpha)` for
/// `gamma = alpha (v - f) + r`.
pub fn continuity(n_instances: usize, per_instance: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Continuity);
    let mut rng = seeded(seed);
    for _ in 0..n_instances {
        let inst = random_instance(&mut rng);
        let v = inst.values().to_vec();
        for _ in 0..per_instance {
            let f = unit_cube(&mut rng, v.len());
            let alpha = 1.0 - rng::unit_f64(&mut rng);
            let spread = 0.2 * rng::unit_f64(&mut rng);
            let g: Vec<f64> = f.iter().zip(&v).map(|(fi, vi)| fi + alpha * (vi - fi)).collect();
            let r: Vec<f64> = g.iter().map(|gi| spread * rng::uniform(&mut rng, -gi, 1.0 - gi)).collect();
            let moved: Vec<f64> = g.iter().zip(&r).map(|(a, b)| (a + b).clamp(0.0, 1.0)).collect();
            let gamma: Vec<f64> = moved.iter().zip(&f).map(|(a, b)| a - b).collect();
            let r_eff: Vec<f64> = moved.iter().zip(&g).map(|(a, b)| a - b).collect();
            let drop = inst.expected_utility(&f) - inst.expected_utility(&moved);
            let bound = 2.0 * (sup_norm(&gamma) + sup_norm(&r_eff) / alpha);
            rep.check(drop <= bound + CHECK_TOL, || {
                format!("{}: f={f:?} alpha={alpha} r={r_eff:?}: drop {drop} > {bound}", inst.name())
            });
        }
    }
    rep
}

/// Revealed-preference inequality `sum_o (p(o|a*(f+g)) - p(o|a*(f))) g_o >= 0`
/// per type, plus best-response optimality at both contracts.
pub fn geometry(n_instances: usize, per_instance: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Geometry);
    let mut rng = seeded(seed);
    for _ in 0..n_instances {
        let inst = random_instance(&mut rng);
        let m = inst.dim();
        for _ in 0..per_instance {
            let f = unit_cube(&mut rng, m);
            let h = unit_cube(&mut rng, m);
            let gamma: Vec<f64> = h.iter().zip(&f).map(|(a, b)| a - b).collect();
            for (i, ty) in inst.types().iter().enumerate() {
                let a = inst.best_response(i, &f);
                let b = inst.best_response(i, &h);
                let diff: Vec<f64> = ty.actions[b].prob.iter().zip(&ty.actions[a].prob).map(|(x, y)| x - y).collect();
                let lhs = dot(&diff, &gamma);
                rep.check(lhs >= -CHECK_TOL, || format!("{} type {i}: f={f:?} f+g={h:?}: {lhs}", inst.name()));
                for (x, resp) in [(&f, a), (&h, b)] {
                    let chosen = ty.actions[resp].agent_payoff(x);
                    let top = ty.actions.iter().map(|act| act.agent_payoff(x)).fold(f64::NEG_INFINITY, f64::max);
                    rep.check(chosen >= top - 1e-12, || {
                        format!("{} type {i}: best response {resp} at {x:?} is {chosen} < {top}", inst.name())
                    });
                }
            }
        }
    }
    rep
}

/// `u(alpha)/(1 - alpha)` non-decreasing over a grid and
/// `u(alpha) - u(alpha + e) <= e` on sampled pairs.
pub fn linear_monotone(n_instances: usize, grid: usize, pairs: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::LinearMonotone);
    let mut rng = seeded(seed);
    for _ in 0..n_instances {
        let inst = random_instance(&mut rng);
        let ratio = |a: f64| inst.linear_utility(a) / (1.0 - a);
        let mut prev = ratio(0.0);
        for k in 1..grid {
            let a = k as f64 / grid as f64;
            let cur = ratio(a);
            rep.check(prev <= cur + CHECK_TOL, || format!("{}: ratio drops to {cur} < {prev} at {a}", inst.name()));
            prev = cur;
        }
        for _ in 0..pairs {
            let a = rng::unit_f64(&mut rng);
            let e = rng::unit_f64(&mut rng) * (1.0 - a);
            let drop = inst.linear_utility(a) - inst.linear_utility(a + e);
            rep.check(drop <= e + CHECK_TOL, || format!("{}: alpha={a} e={e}: drop {drop}", inst.name()));
        }
    }
    rep
}

/// Closed-form best-response regions of the hard families, one and two
/// free coordinates, eps in {0.1, 0.05}.
pub fn regions(samples: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Regions);
    for (m, eps) in [(1, 0.1), (1, 0.05), (2, 0.1), (2, 0.05)] {
        let fam = gen_lower_bound_family(m, eps).expect("valid family");
        let r = instances::verify_regions(&fam, samples, seed);
        rep.checks += r.checked;
        rep.violations += r.mismatches.len();
        for mm in r.mismatches.iter().take(KEEP_MESSAGES.saturating_sub(rep.messages.len())) {
            rep.messages.push(format!(
                "m={m} eps={eps} {}: f={:?} predicted {} actual {}",
                mm.instance, mm.contract, mm.predicted, mm.actual
            ));
        }
        rep.check(fam.regions_pairwise_disjoint(), || format!("m={m} eps={eps}: labelled regions overlap"));
    }
    rep
}

/// Generated FOSD instances pass the dominance check; a crossing pair is caught.
pub fn fosd(n_instances: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Fosd);
    let mut rng = seeded(seed);
    for _ in 0..n_instances {
        let m = rng::int_in(&mut rng, 2, 6);
        let n = rng::int_in(&mut rng, 1, 8);
        let s = rng.next_u64();
        let inst = gen_fosd_instance(m, n, s).expect("valid sizes");
        let r = verify_fosd(&inst);
        rep.check(r.is_fosd(), || format!("fosd instance m={m} n={n} seed={s}: {:?}", r.failures));
        let costs: Vec<f64> = inst.types()[0].actions.iter().map(|a| a.cost).collect();
        rep.check(costs.windows(2).all(|w| w[0] <= w[1]), || format!("costs not sorted: {costs:?}"));
    }
    let crossing = Instance::from_parts(
        "crossing",
        vec![0.0, 0.5, 1.0],
        vec![crate::AgentType::new(
            1.0,
            vec![
                crate::ActionSpec::null(3),
                crate::ActionSpec::new(vec![0.0, 1.0, 0.0], 0.1),
                crate::ActionSpec::new(vec![0.5, 0.0, 0.5], 0.1),
            ],
        )],
    );
    let r = verify_fosd(&crossing);
    rep.check(r.failures == vec![(0, 1, 2)], || format!("crossing pair not reported: {:?}", r.failures));
    rep
}

/// Base-instance utility 1/2 on every level edge, valid distributions and
/// non-negative costs for every family member.
pub fn payoffs() -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Payoffs);
    for m in 1..=3 {
        for eps in [0.1, 0.05] {
            let fam = gen_lower_bound_family(m, eps).expect("valid family");
            let n = fam.base.types()[0].actions.len();
            for id in 1..n {
                let k = fam.action_index(id).expect("non-null");
                let mut f = vec![0.0];
                f.extend(k.iter().map(|&ki| ki as f64 * eps));
                let u = fam.base.expected_utility(&f);
                rep.check((u - 0.5).abs() <= CHECK_TOL, || format!("m={m} eps={eps} k={k:?}: u = {u}"));
            }
        }
    }
    for m in 1..=4 {
        for eps in [0.099, 0.09, 0.08, 0.07, 0.06, 0.05, 0.04] {
            let levels = libm::floor(1.0 / (2.0 * eps) + 1e-9) as u32;
            if (levels as u64).pow(m as u32) > 20_000 {
                continue;
            }
            match gen_lower_bound_family(m, eps) {
                Ok(fam) => {
                    for inst in core::iter::once(&fam.base).chain(fam.perturbed.iter().map(|p| &p.instance)) {
                        let v = inst.validate();
                        rep.check(v.is_empty(), || format!("m={m} eps={eps} {}: {:?}", inst.name(), v.first()));
                    }
                }
                Err(e) => rep.check(false, || format!("m={m} eps={eps}: {e}")),
            }
        }
    }
    rep
}

/// Fresh-sample covering soundness and packing of full-cube covers, and the
/// single direction of linear families.
pub fn covering(samples: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Covering);
    let mut rng = seeded(seed);
    for m in [2, 3] {
        let mut v = vec![1.0; m];
        v[0] = 0.0;
        let fam = ContractFamily::full_cube(v).expect("valid anchor");
        let mut prev = usize::MAX;
        for eps in [0.2, 0.3] {
            let code = discretization::build_direction_cover(&fam, eps, discretization::default_density(eps))
                .expect("cover fits");
            let r = discretization::check_covering(&fam, &code, samples, &mut rng);
            rep.checks += r.samples;
            rep.violations += r.violations.len();
            if let Some((f, ang)) = r.violations.first() {
                rep.messages.push(format!("m={m} eps={eps}: {f:?} is {ang} rad from the code"));
            }
            let sep = code.min_separation();
            rep.check(sep > eps, || format!("m={m} eps={eps}: separation {sep}"));
            rep.check(code.len() <= prev, || format!("m={m}: cover grows with eps"));
            prev = code.len();
        }
    }
    for _ in 0..10 {
        let m = rng::int_in(&mut rng, 2, 5);
        let mut v: Vec<f64> = (0..m).map(|_| rng::unit_f64(&mut rng)).collect();
        v[0] = 0.0;
        let fam = ContractFamily::linear(v).expect("valid anchor");
        for eps in [0.3, 0.09, 0.05] {
            let n = discretization::build_direction_cover(&fam, eps, 20).expect("cover").len();
            rep.check(n == 1, || format!("linear family with {n} directions at {eps}"));
        }
    }
    rep
}
