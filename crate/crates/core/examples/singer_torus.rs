//! A Singer torus and its normalizer for both the linear and unitary types.

use std::collections::BTreeSet;

use basewitness::singer::{build_phi, build_torus, TorusCoord};
use basewitness::Sign;

fn main() -> basewitness::Result<()> {
    for (eps, n, q) in [(Sign::Plus, 4, 2), (Sign::Minus, 3, 2)] {
        let (ctx, t) = build_torus(eps, n, q)?;
        let phi = build_phi(&ctx);
        println!(
            "Sin_{n}^{eps}({q}): |T| = {}, |N| = {}, φ has order {}",
            ctx.torus_order(),
            ctx.normalizer_order(),
            ctx.phi_order()
        );
        // φ^-1 T φ is again a power of T.
        let moved = &(&phi.inv()? * &t) * &phi;
        println!("  φ^-1 T φ has coordinates {:?}", ctx.coords(&moved)?);
        let c = ctx.coord_mul(TorusCoord::new(3, 1), TorusCoord::new(2, 1));
        println!("  (3,1)·(2,1) = {c:?}");
        let coords = ctx.prime_order_coords();
        let primes: BTreeSet<u64> = coords.iter().map(|(_, r)| *r).collect();
        println!("  {} prime-order elements, primes {primes:?}", coords.len());
    }
    println!("{}", build_torus(Sign::Plus, 2, 3)?.0.dump()?);
    Ok(())
}
