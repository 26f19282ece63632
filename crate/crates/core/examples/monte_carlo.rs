//! Seeded Monte Carlo estimates with Wilson intervals, compared against the
//! closed form. Results depend only on the seed, not on the thread count.
//!
//! cargo run --release -p ruin --example monte_carlo

use ruin::simulator::estimate_absorption_with_workers;
use ruin::{absorption_exact, estimate_absorption, Probability, WalkConfig};

fn main() {
    let seed = 7;
    for (k, p) in [(1, 0.6), (2, 0.6), (3, 0.7), (1, 0.5)] {
        let prob = Probability::Float(p);
        let cfg = WalkConfig::new(k, prob.clone(), 200_000, seed).with_max_steps(100_000);
        let est = estimate_absorption(&cfg).unwrap();
        let truth = absorption_exact(k, &prob).unwrap().to_f64();
        println!(
            "k = {k} p = {p}: estimate {:.5} [{:.5}, {:.5}] censored {:>6}  exact {truth:.5}{}",
            est.point,
            est.ci_low,
            est.ci_high,
            est.censored,
            if est.is_lower_bound { "  (lower bound)" } else { "" }
        );
    }

    let cfg = WalkConfig::new(1, Probability::Float(0.6), 50_000, seed);
    let one = estimate_absorption_with_workers(&cfg, 1).unwrap();
    let four = estimate_absorption_with_workers(&cfg, 4).unwrap();
    println!("\n1 worker vs 4 workers identical: {}", one == four);
}
