//! A seeded search for x ∈ GL_6(2) with H ∩ H^x = 1, verified over all of H.

use basewitness::basesize::verify_base_two;
use basewitness::Sign;

fn main() -> basewitness::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let rep = verify_base_two(Sign::Plus, 6, 2, seed, 100_000)?;
    println!("{}", rep.to_json());
    Ok(())
}
