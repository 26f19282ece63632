//! Brute-force enumeration of first-passage paths, printed in canonical
//! `start:steps` form with their lattice endpoints.
//!
//! cargo run -p ruin --example enumerate_paths -- 3 2

use ruin::{ballot_count, enumerate_first_passage};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u32>().expect("integer argument"));
    let k = args.next().unwrap_or(2);
    let n = args.next().unwrap_or(2);

    let paths = enumerate_first_passage(k, n).expect("within the enumeration cap");
    for p in &paths {
        let positions: Vec<String> = p.positions().iter().map(u32::to_string).collect();
        println!("{p:<16} positions {}", positions.join(" "));
    }
    let (x, y) = paths[0].lattice_points().last().copied().unwrap();
    println!(
        "\n{} paths from x = {k} with {n} right steps, all ending at ({x}, {y}); C_{k}({n}) = {}",
        paths.len(),
        ballot_count(k, n).unwrap()
    );
}
