//! Block-diagonal tori and the conjugators whose intersection with H is
//! central, in the linear and unitary cases.

use basewitness::basesize::verify_th1;
use basewitness::Sign;

fn main() -> basewitness::Result<()> {
    for (blocks, eps, q) in [
        (&[2usize, 2][..], Sign::Plus, 3u64),
        (&[2, 2][..], Sign::Minus, 2),
        (&[3, 1][..], Sign::Plus, 2),
    ] {
        let rep = verify_th1(blocks, eps, q, 0, 10_000)?;
        println!(
            "{blocks:?} {eps} q={q}: {:?}, |K| = {:?}, central {:?}",
            rep.verdict, rep.intersection_order, rep.central
        );
        for w in &rep.witnesses {
            println!("  {}:\n{}", w.label, w.matrix);
        }
    }
    Ok(())
}
