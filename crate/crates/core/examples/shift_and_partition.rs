//! The two bijections behind C_2(n) = C(n+1) and
//! C_(k-1)(n+1) = C_k(n) + C_(k-2)(n+1).
//!
//! cargo run -p ruin --example shift_and_partition

use ruin::paths::shift_bijection_k2_inverse;
use ruin::{ballot_count, enumerate_first_passage, partition_by_first_step, shift_bijection_k2};

fn main() {
    let n = 2;
    println!("start-1 paths with {} right steps -> start-2 paths with {n}:", n + 1);
    for p in enumerate_first_passage(1, n + 1).unwrap() {
        let q = shift_bijection_k2(&p).unwrap();
        assert_eq!(shift_bijection_k2_inverse(&q).unwrap(), p);
        println!("  {p:<12} -> {q}");
    }

    let (k, n) = (4, 1);
    let (to_k, to_km2) = partition_by_first_step(k, n).unwrap();
    println!("\npaths from {} with {} right steps, split by first step:", k - 1, n + 1);
    println!("  R...: {} paths from {k}   ({})", to_k.len(), join(&to_k));
    println!("  L...: {} paths from {}   ({})", to_km2.len(), k - 2, join(&to_km2));
    println!(
        "  C_{}({}) = {} = {} + {}",
        k - 1,
        n + 1,
        ballot_count(k - 1, n + 1).unwrap(),
        ballot_count(k, n).unwrap(),
        ballot_count(k - 2, n + 1).unwrap()
    );
}

fn join(paths: &[ruin::LatticePath]) -> String {
    paths.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}
