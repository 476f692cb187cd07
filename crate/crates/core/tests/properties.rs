use contest_lab::{
    verify_equilibrium, ContestGame, CsfSpec, EffortProfile, SearchConfig, ValueProfile,
};
use proptest::prelude::*;

fn effort() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), 0.0..5.0, 1e-9..1e-3]
}

fn csf_for(n: usize) -> impl Strategy<Value = CsfSpec<f64>> {
    prop_oneof![
        (2..=n as u32).prop_map(CsfSpec::power),
        Just(CsfSpec::lottery()),
    ]
}

proptest! {
    #[test]
    fn smooth_csfs_land_on_simplex(
        (v, x, csf) in (2usize..6).prop_flat_map(|n| (
            prop::collection::vec(0.1..5.0f64, n),
            prop::collection::vec(effort(), n),
            csf_for(n),
        ))
    ) {
        let g = ContestGame::new(ValueProfile::new(v.clone()).unwrap(), csf).unwrap();
        let p = g.probabilities(&EffortProfile::new(x.clone()).unwrap()).unwrap();
        let total: f64 = p.as_slice().iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        let u = g.payoff(&EffortProfile::new(x.clone()).unwrap()).unwrap();
        for i in 0..v.len() {
            prop_assert!(u[i] <= v[i] - x[i] + 1e-12);
            prop_assert!(u[i] >= -x[i] - 1e-12);
        }
    }

    #[test]
    fn power_share_is_anonymous(
        x in prop::collection::vec(effort(), 4),
        a in 2u32..=4,
        rot in 0usize..4,
    ) {
        let v = ValueProfile::new(vec![1.0; 4]).unwrap();
        let csf = CsfSpec::power(a);
        let p = csf.evaluate(&v, &EffortProfile::new(x.clone()).unwrap()).unwrap();
        let mut y = x.clone();
        y.rotate_left(rot);
        let q = csf.evaluate(&v, &EffortProfile::new(y).unwrap()).unwrap();
        let mut pr = p.as_slice().to_vec();
        pr.rotate_left(rot);
        for (a, b) in pr.iter().zip(q.as_slice()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn power_share_is_scale_free(
        x in prop::collection::vec(0.0..3.0f64, 3),
        scale in 1e-3..1e3f64,
        a in 2u32..=3,
    ) {
        prop_assume!(x.iter().any(|&e| e > 0.0));
        let v = ValueProfile::new(vec![1.0; 3]).unwrap();
        let csf = CsfSpec::power(a);
        let p = csf.evaluate(&v, &EffortProfile::new(x.clone()).unwrap()).unwrap();
        let scaled: Vec<f64> = x.iter().map(|e| e * scale).collect();
        let q = csf.evaluate(&v, &EffortProfile::new(scaled).unwrap()).unwrap();
        for (a, b) in p.as_slice().iter().zip(q.as_slice()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn max_indicator_is_binary(x0 in prop_oneof![Just(2.0), 1.999999..2.000001, 0.0..3.0], x1 in 0.0..3.0f64) {
        let v = ValueProfile::new(vec![2.0, 1.0]).unwrap();
        let p = CsfSpec::max_indicator(0).evaluate(&v, &EffortProfile::new(vec![x0, x1]).unwrap()).unwrap();
        prop_assert!(p.get(0) == 0.0 || p.get(0) == 1.0);
        prop_assert_eq!(p.get(0) == 1.0, (x0 - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn threshold_triple_has_one_winner(x in prop::collection::vec(prop_oneof![Just(0.0), Just(3.0), 0.0..4.0], 4)) {
        let v = ValueProfile::new(vec![1.0, 3.0, 2.0, 3.0]).unwrap();
        let csf = CsfSpec::threshold_triple_for(&v).unwrap();
        let p = csf.evaluate(&v, &EffortProfile::new(x).unwrap()).unwrap();
        prop_assert_eq!(p.as_slice().iter().filter(|&&q| q == 1.0).count(), 1);
        prop_assert_eq!(p.as_slice().iter().filter(|&&q| q == 0.0).count(), 3);
    }

    #[test]
    fn aggregate_is_permutation_invariant(mut x in prop::collection::vec(0.0..10.0f64, 2..8), seed in any::<u64>()) {
        let a = EffortProfile::new(x.clone()).unwrap().aggregate();
        let k = (seed as usize) % x.len();
        x.rotate_left(k);
        x.reverse();
        let b = EffortProfile::new(x).unwrap().aggregate();
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn epsilon_ne_certificates_respect_bounds(
        (v, x) in (2usize..4).prop_flat_map(|n| (
            prop::collection::vec(0.2..2.0f64, n),
            prop::collection::vec(0.0..1.0f64, n),
        )),
        use_power in any::<bool>(),
    ) {
        let n = v.len();
        let csf = if use_power { CsfSpec::power(2) } else { CsfSpec::lottery() };
        let g = ContestGame::new(ValueProfile::new(v.clone()).unwrap(), csf).unwrap();
        let cfg = SearchConfig::default().with_grid_points(201).with_epsilon(5e-2);
        let c = verify_equilibrium(&g, &EffortProfile::new(x).unwrap(), &cfg).unwrap();
        if c.is_epsilon_ne {
            let m = v.iter().copied().fold(0.0, f64::max);
            prop_assert!(c.aggregate <= m + n as f64 * cfg.epsilon);
            for (i, vi) in v.iter().enumerate() {
                prop_assert!(c.payoffs[i] >= -cfg.epsilon);
                prop_assert!(c.probabilities[i] * vi >= c.profile.get(i) - cfg.epsilon);
            }
        }
        for (br, u) in c.best_responses.iter().zip(&c.payoffs) {
            prop_assert!(br.payoff >= *u);
            prop_assert!(br.payoff >= 0.0);
        }
    }
}
