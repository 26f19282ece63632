//! Splits every start-1 path with four right steps at its first return to
//! level 1 and rebuilds it, grouping by the split index alpha. The group
//! sizes are C(alpha - 1) C(4 - alpha) and sum to C(4) = 14.
//!
//! cargo run -p ruin --example first_return

use ruin::{catalan, enumerate_first_passage, first_return_compose, first_return_decompose};

fn main() {
    let n = 4;
    let paths = enumerate_first_passage(1, n).unwrap();
    for alpha in 1..=n {
        println!("alpha = {alpha}: C({}) * C({}) paths", alpha - 1, n - alpha);
        for p in &paths {
            let (a, left, right) = first_return_decompose(p).unwrap();
            if a != alpha {
                continue;
            }
            let back = first_return_compose(a, &left, &right).unwrap();
            assert_eq!(&back, p);
            println!("  {p:<12} = R + {left:<8} + {right}");
        }
    }
    println!("\ntotal {} = C({n}) = {}", paths.len(), catalan(n));
}
