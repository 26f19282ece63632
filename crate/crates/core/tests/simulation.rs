use ruin::probability::{absorption_exact, Probability};
use ruin::simulator::{estimate_absorption, run_trial, WalkConfig, WalkOutcome};

#[test]
fn wilson_interval_coverage_over_seeds() {
    // P(x=1) = 1/2 at p = 2/3; horizon is generous for this drift
    let p = Probability::ratio(2, 3).unwrap();
    let truth = absorption_exact(1, &p).unwrap().to_f64();
    let misses = (0..100u64)
        .filter(|&seed| {
            let cfg = WalkConfig::new(1, p.clone(), 4_000, seed).with_max_steps(20_000);
            let est = estimate_absorption(&cfg).unwrap();
            !(est.ci_low <= truth && truth <= est.ci_high)
        })
        .count();
    assert!(misses <= 10, "{misses} of 100 intervals missed");
}

#[test]
fn parity_over_many_trials() {
    let cfg = WalkConfig::new(3, Probability::Float(0.45), 20_000, 8).with_max_steps(5_000);
    for i in 0..cfg.trials {
        if let WalkOutcome::Absorbed(t) = run_trial(&cfg, i) {
            assert_eq!(t % 2, 1, "trial {i}");
        }
    }
}

#[test]
fn censoring_only_lowers_the_count() {
    let p = Probability::Float(0.5);
    let mut last = 0;
    for horizon in [10, 100, 1_000, 10_000] {
        let cfg = WalkConfig::new(2, p.clone(), 5_000, 21).with_max_steps(horizon);
        let est = estimate_absorption(&cfg).unwrap();
        assert!(est.absorbed >= last);
        assert!(est.is_lower_bound);
        last = est.absorbed;
    }
}

#[test]
fn certain_absorption_has_no_censoring() {
    let cfg = WalkConfig::new(4, Probability::Float(0.0), 100, 1).with_max_steps(4);
    let est = estimate_absorption(&cfg).unwrap();
    assert_eq!(est.absorbed, 100);
    assert!(!est.is_lower_bound);
    assert_eq!(est.point, 1.0);
    assert_eq!(est.ci_high, 1.0);
}
