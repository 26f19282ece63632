//! Truncated path-count series with a certified tail bound, in exact
//! rational arithmetic, and the honest non-convergence report at p = 1/2.
//!
//! cargo run -p ruin --example series_certificate

use ruin::probability::tail_start;
use ruin::{absorption_exact, absorption_series, Probability, SeriesOptions};

fn main() {
    let opts = SeriesOptions::default();
    for (k, p) in [(1, "3/5"), (3, "2/3"), (10, "11/20"), (4, "1/10")] {
        let p: Probability = p.parse().unwrap();
        let ev = absorption_series(k, &p, 1e-12, &opts).unwrap();
        let truth = absorption_exact(k, &p).unwrap();
        println!(
            "k = {k:<2} p = {p:<5} terms {:<5} (n0 = {:<2}) sum ~ {:.15} tail <= {:.3e} exact {truth}",
            ev.terms_used,
            tail_start(k),
            ev.partial_sum.to_f64(),
            ev.tail_bound,
        );
    }

    let half: Probability = "1/2".parse().unwrap();
    for max_terms in [100, 1_000, 10_000] {
        let ev = absorption_series(2, &half, 1e-12, &SeriesOptions { max_terms, ..opts.clone() }).unwrap();
        println!(
            "k = 2  p = 1/2  {max_terms:>6} terms: lower bound {:.6}, converged = {}",
            ev.partial_sum.to_f64(),
            ev.converged
        );
    }
}
