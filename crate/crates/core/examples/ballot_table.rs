//! Exact ballot counts C_k(n), computed by the closed form and by the
//! recurrences alone, side by side.
//!
//! cargo run -p ruin --example ballot_table

use ruin::{ballot_count, ballot_via_recurrence, catalan, catalan_via_convolution};

fn main() {
    println!("{:>3} {}", "k", (0..=8).map(|n| format!("{n:>8}")).collect::<String>());
    for k in 1..=6 {
        let row: String = (0..=8)
            .map(|n| format!("{:>8}", ballot_count(k, n).unwrap().to_string()))
            .collect();
        println!("{k:>3} {row}");
    }

    println!();
    for n in [10, 50, 100] {
        let direct = catalan(n);
        let conv = catalan_via_convolution(n).unwrap();
        println!("C({n}) = {direct}  (convolution agrees: {})", direct == conv);
    }

    let (k, n) = (12, 40);
    let closed = ballot_count(k, n).unwrap();
    let rec = ballot_via_recurrence(k, n).unwrap();
    println!("\nC_{k}({n}) = {closed}  (recurrence agrees: {})", closed == rec);
}
