//! Prime-order classes of GL_3(2) meeting the Singer normalizer, the exact
//! sums Q̂(G, c) and the threshold T_G of η_G.

use basewitness::basesize::GroupCtx;
use basewitness::bounds::{eta, find_t_g, prime_order_classes, qhat, qhat_f64};
use basewitness::singer::build_block_h;
use basewitness::Sign;

fn main() -> basewitness::Result<()> {
    let h = build_block_h(&[3], Sign::Plus, 2)?;
    let g = GroupCtx::linear(3, 2)?;
    let classes = prime_order_classes(&g, &h)?;
    for c in &classes {
        println!(
            "order {}: |x^G| = {}, |x^G ∩ H| = {}",
            c.prime, c.size, c.meets_h
        );
    }
    for c in 1..=4 {
        let v = qhat(&classes, c);
        println!("Q̂(G,{c}) = {v} ≈ {:.5}", qhat_f64(&v));
    }
    let t = find_t_g(&classes)?;
    println!("T_G = {t:.6}, η(T_G) = {:.9}", eta(&classes, t));
    Ok(())
}
