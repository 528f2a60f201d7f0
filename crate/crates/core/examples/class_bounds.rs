//! Semisimple class sizes against the exponent bound, for every shape of a
//! prime-order element in GL_8(3) and GU_8(3).

use basewitness::bounds::{
    class_bound_exponent, class_size_semisimple, decompositions, group_order, pow_at_most,
};
use basewitness::Sign;

fn main() -> basewitness::Result<()> {
    let (n, q) = (8, 3);
    for eps in [Sign::Plus, Sign::Minus] {
        println!("|GL^{eps}_{n}({q})| = {}", group_order(eps, n, q));
        for d in decompositions(eps, n, q)? {
            let size = class_size_semisimple(eps, n, q, &d)?.class_size;
            let x = class_bound_exponent(eps, n, &d);
            println!(
                "  r={} e={} k={} t={}: |x^G| = {size}, bound q^{x}, holds {}",
                d.r,
                d.e,
                d.k,
                d.t,
                pow_at_most(q, x, &size)
            );
        }
    }
    Ok(())
}
