//! Runs every identity suite and prints the report.
//!
//! cargo run --release -p ruin --example verify_all

use ruin::verify::{run_suite, Bounds, Suite};

fn main() {
    let checks = run_suite(Suite::All, &Bounds::default()).unwrap();
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    println!("{} checks, {failed} failed", checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
