//! The exhaustive structural checks on one normalizer, printed as reports.
//!
//! The reducibility check is run on n = 4 as well, where the order-three
//! elements of GF(4)^× inside GF(16)^× are reducible but not scalar.

use basewitness::singer::{
    build_torus, check_lemma_form, check_lemma_ir, check_lemma_m7, check_lemma_nep, check_prop1,
};
use basewitness::Sign;

fn main() -> basewitness::Result<()> {
    let (ctx, _) = build_torus(Sign::Plus, 6, 2)?;
    for rep in [
        check_lemma_nep(&ctx)?,
        check_lemma_form(&ctx)?,
        check_lemma_ir(&ctx)?,
    ] {
        println!("{}", rep.to_json());
    }
    let (gl32, _) = build_torus(Sign::Plus, 3, 2)?;
    println!("{}", check_prop1(&gl32)?.to_json());
    for n in [3, 4] {
        let (ctx, _) = build_torus(Sign::Plus, n, 2)?;
        let rep = check_lemma_m7(&ctx)?;
        println!(
            "m7 on Sin_{n}(2): {:?} {:?}",
            rep.verdict, rep.counterexamples
        );
    }
    Ok(())
}
