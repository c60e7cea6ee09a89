use contractlab_core::bandit::BanditState;
use contractlab_core::discretization::{self, ContractFamily};
use contractlab_core::instances::{gen_lower_bound_family, gen_random_instance};
use contractlab_core::learners;
use contractlab_core::oracle;
use contractlab_core::rng::{self, seeded};
use contractlab_core::Instance;
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = Instance> {
    (2usize..5, 1usize..4, 1usize..6, any::<u64>())
        .prop_map(|(m, t, a, s)| gen_random_instance(m, t, a, s).unwrap())
}

fn cube_point(m: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0.0f64..=1.0, m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn best_response_is_agent_optimal(inst in instance(), seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let f: Vec<f64> = (0..inst.dim()).map(|_| rng::unit_f64(&mut rng)).collect();
        for (i, ty) in inst.types().iter().enumerate() {
            let a = inst.best_response(i, &f);
            let chosen = ty.actions[a].agent_payoff(&f);
            for act in &ty.actions {
                prop_assert!(chosen >= act.agent_payoff(&f) - 1e-12);
            }
        }
    }

    #[test]
    fn revealed_preference_geometry((inst, f, h) in instance().prop_flat_map(|i| {
        let m = i.dim();
        (Just(i), cube_point(m), cube_point(m))
    })) {
        for (i, ty) in inst.types().iter().enumerate() {
            let (a, b) = (inst.best_response(i, &f), inst.best_response(i, &h));
            let lhs: f64 = (0..f.len()).map(|o| (ty.actions[b].prob[o] - ty.actions[a].prob[o]) * (h[o] - f[o])).sum();
            prop_assert!(lhs >= -1e-9);
        }
    }

    #[test]
    fn utility_continuity_along_value_direction(
        (inst, f, r) in instance().prop_flat_map(|i| { let m = i.dim(); (Just(i), cube_point(m), proptest::collection::vec(-0.1f64..0.1, m)) }),
        alpha in 0.001f64..=1.0,
    ) {
        let v = inst.values();
        let g: Vec<f64> = f.iter().zip(v).zip(&r).map(|((fi, vi), ri)| (fi + alpha * (vi - fi) + ri).clamp(0.0, 1.0)).collect();
        let gamma_inf = g.iter().zip(&f).fold(0.0f64, |a, (x, y)| a.max((x - y).abs()));
        let r_inf = g.iter().zip(&f).zip(v).fold(0.0f64, |a, ((gi, fi), vi)| a.max((gi - fi - alpha * (vi - fi)).abs()));
        let drop = inst.expected_utility(&f) - inst.expected_utility(&g);
        prop_assert!(drop <= 2.0 * (gamma_inf + r_inf / alpha) + 1e-9);
    }

    #[test]
    fn linear_ratio_monotone(inst in instance(), a in 0.0f64..0.999, b in 0.0f64..0.999) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(inst.linear_utility(lo) / (1.0 - lo) <= inst.linear_utility(hi) / (1.0 - hi) + 1e-9);
        prop_assert!(inst.linear_utility(lo) - inst.linear_utility(hi) <= hi - lo + 1e-9);
    }

    #[test]
    fn hard_family_members_are_valid(m in 1usize..=4, eps in 0.02f64..=0.1) {
        let levels = (1.0 / (2.0 * eps) + 1e-9).floor() as u64;
        prop_assume!(levels.pow(m as u32) <= 5_000);
        if let Ok(fam) = gen_lower_bound_family(m, eps) {
            for inst in std::iter::once(&fam.base).chain(fam.perturbed.iter().map(|p| &p.instance)) {
                prop_assert!(inst.validate().is_empty());
            }
        }
    }

    #[test]
    fn ucb_bookkeeping(arms in 1usize..10, horizon in 1u64..400, seed in any::<u64>()) {
        let mut s = BanditState::new(arms, horizon);
        let mut rng = seeded(seed);
        for t in 1..=horizon {
            let a = s.select();
            s.update(a, rng::uniform(&mut rng, -1.0, 1.0)).unwrap();
            prop_assert_eq!(s.pulls().iter().sum::<u64>(), t);
            prop_assert!(s.indices().iter().all(|i| *i <= 1.0));
        }
        let warmup = (arms as u64) * (2.0 * (horizon as f64).ln()).ceil() as u64;
        if horizon >= arms as u64 && horizon >= warmup {
            prop_assert!(s.pulls().iter().all(|&n| n >= 1));
        }
    }

    #[test]
    fn affine_index_space_picks_same_arms(seed in any::<u64>(), scale in 0.1f64..10.0, shift in -5.0f64..5.0) {
        let mut a = BanditState::new(4, 300);
        let mut b = BanditState::with_affine(4, 300, scale, shift);
        let means = [0.1, -0.2, 0.4, 0.35];
        let mut rng = seeded(seed);
        for _ in 0..300 {
            let (x, y) = (a.select(), b.select());
            prop_assert_eq!(x, y);
            let r = (means[x] + rng::uniform(&mut rng, -0.5, 0.5)).clamp(-1.0, 1.0);
            a.update(x, r).unwrap();
            b.update(y, r).unwrap();
        }
    }

    #[test]
    fn s_eps_arms_stay_in_family(eps in 0.15f64..0.7, face in any::<bool>()) {
        let fam = if face {
            ContractFamily::zero_null(vec![0.0, 0.5, 1.0]).unwrap()
        } else {
            ContractFamily::full_cube(vec![0.0, 1.0]).unwrap()
        };
        let set = discretization::build_s_eps(&fam, eps).unwrap();
        let radial = (1.0 / eps + 1e-9).floor() as usize + 1;
        prop_assert!(set.len() <= radial * set.code.len() + 1);
        for f in &set.arms {
            prop_assert!(fam.contains(f));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn cover_size_shrinks_with_angle(a in 0.1f64..0.6, b in 0.1f64..0.6) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let fam = ContractFamily::full_cube(vec![0.0, 1.0, 1.0]).unwrap();
        let n = 40;
        let small = discretization::build_direction_cover(&fam, lo, n).unwrap();
        let large = discretization::build_direction_cover(&fam, hi, n).unwrap();
        prop_assert!(large.len() <= small.len());
        prop_assert!(small.min_separation() > lo);
    }

    #[test]
    fn traces_are_reproducible_and_monotone(seed in any::<u64>()) {
        let inst = gen_random_instance(3, 2, 3, seed).unwrap();
        let a = learners::run_linear_learner(&inst, 500, seed).unwrap();
        let b = learners::run_linear_learner(&inst, 500, seed).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.rows.iter().all(|r| r.regret_step >= 0.0));
        prop_assert!(a.rows.windows(2).all(|w| w[1].regret_cum >= w[0].regret_cum));
    }

    #[test]
    fn grid_oracle_dominates_sampled_contracts(inst in instance(), seed in any::<u64>()) {
        let fam = ContractFamily::full_cube(inst.values().to_vec()).unwrap();
        let delta = if inst.dim() <= 3 { 0.02 } else { 0.05 };
        let best = oracle::grid_optimal_contract(&inst, &fam, delta).unwrap();
        prop_assert_eq!(best.best_utility, inst.expected_utility(&best.best_contract));
        let guard = 2.0 * ((inst.dim() as f64).sqrt() * delta + delta);
        let mut rng = seeded(seed);
        for _ in 0..100 {
            let f: Vec<f64> = (0..inst.dim()).map(|_| rng::unit_f64(&mut rng)).collect();
            prop_assert!(inst.expected_utility(&f) <= best.best_utility + guard);
        }
    }
}

#[test]
fn sampled_rewards_match_expected_utility() {
    for seed in 0..5 {
        let inst = gen_random_instance(4, 3, 4, seed).unwrap();
        let mut rng = seeded(seed + 100);
        let f: Vec<f64> = (0..4).map(|_| rng::unit_f64(&mut rng)).collect();
        let n = 100_000;
        let draws: Vec<f64> = (0..n).map(|_| inst.sample_round(&f, &mut rng).reward).collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        let sigma = (var / n as f64).sqrt();
        let u = inst.expected_utility(&f);
        assert!((mean - u).abs() <= 4.0 * sigma + 1e-12, "seed {seed}: mean {mean} vs u {u} (sigma {sigma})");
    }
}
