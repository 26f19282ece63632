//! The generating function F(z) = (1 - sqrt(1 - 4z)) / 2 and the
//! absorption probability F(p - p^2) / p on both sides of p = 1/2.
//!
//! cargo run -p ruin --example generating_function

use ruin::{absorption_exact, absorption_via_gf, generating_function, Probability};

fn main() {
    for z in [0.0, 0.05, 0.1, 0.2, 0.25] {
        let f = generating_function(z).unwrap();
        println!("F({z:<4}) = {f:<22} F^2 - F + z = {:e}", f * f - f + z);
    }
    println!();
    for p in [0.1, 0.3, 0.5, 0.6, 0.75, 0.9] {
        let prob = Probability::Float(p);
        let gf = absorption_via_gf(&prob).unwrap();
        let closed = absorption_exact(1, &prob).unwrap().to_f64();
        println!("p = {p:<4}  gf route {gf:<20} closed form {closed:<20} |diff| = {:e}", (gf - closed).abs());
    }
}
