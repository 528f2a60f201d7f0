//! The coset action of GL_3(2) on the Singer normalizer, its base size and a
//! lower bound on the number of regular orbits on triples.

use basewitness::basesize::{brute_base_size, reg_count, CosetAction, GroupCtx, BRUTE_FORCE_CAP};
use basewitness::singer::build_block_h;
use basewitness::Sign;

fn main() -> basewitness::Result<()> {
    let h = build_block_h(&[3], Sign::Plus, 2)?;
    let gens = GroupCtx::linear(3, 2)?.generators()?;
    let action = CosetAction::new(&h, &gens, 5000, BRUTE_FORCE_CAP)?;
    println!(
        "degree {}, image order {}",
        action.degree(),
        action.perms.len()
    );
    if let Some(r) = brute_base_size(&action, 4)? {
        println!("base size {} realised by cosets {:?}", r.base_size, r.tuple);
        for &i in &r.tuple {
            println!("H·g with g =\n{}", action.reps[i].to_text()?);
        }
    }
    println!(
        "regular orbits on triples: at least {}",
        reg_count(&action, 3, 2000, 0)
    );
    Ok(())
}
