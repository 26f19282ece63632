//! Exact absorption probabilities over a rational grid, with the power law
//! and the three-term recurrence checked on each.
//!
//! cargo run -p ruin --example closed_form

use ruin::{absorption_exact, verify_three_term, Probability};

fn main() {
    for p in ["1/3", "1/2", "3/5", "2/3", "3/4", "9/10"] {
        let p: Probability = p.parse().unwrap();
        let values: Vec<String> = (1..=4).map(|k| absorption_exact(k, &p).unwrap().to_string()).collect();
        let recurrence = (1..=8).all(|k| verify_three_term(k, &p).unwrap());
        println!("p = {p:<5} P(x=1..4) = {:<40} three-term holds: {recurrence}", values.join(", "));
    }

    let p = Probability::Float(0.51);
    println!("\np = 0.51 (float): P(x=10) = {}", absorption_exact(10, &p).unwrap());
}
