//! The parabolic subgroup extended by the inverse-transpose automorphism in
//! dimension four: regularity of the witness tuples and, at q = 2, the
//! exhaustive base size of the coset action.

use basewitness::basesize::{build_th2, verify_th2};

fn main() -> basewitness::Result<()> {
    for q in [2, 3] {
        let inst = build_th2(4, q)?;
        println!("n = 4, q = {q}: |G| = {}", inst.g.order());
        let rep = verify_th2(4, q, true, 0, 20_000, 1_000_000)?;
        println!("  verdict {:?}", rep.verdict);
        for (k, v) in &rep.data {
            if !k.contains("witnesses") {
                println!("  {k}: {v}");
            }
        }
        for c in &rep.counterexamples {
            println!("  counterexample {c}");
        }
    }
    Ok(())
}
