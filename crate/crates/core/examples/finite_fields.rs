//! Arithmetic in GF(3^4): the primitive element, discrete logs, Frobenius and
//! the embedding of the subfield GF(9).

use basewitness::gfarith::{build_field, Embedding};

fn main() -> basewitness::Result<()> {
    let k = build_field(3, 4)?;
    println!("GF({}^{}) with modulus {:?}", k.p(), k.f(), k.modulus());

    let a = k.theta_pow(17);
    let b = k.theta_pow(50);
    println!("θ^17 has coefficients {:?} in the power basis", k.digits(a));
    println!("θ^17 · θ^50 = θ^{}", k.log(k.mul(a, b))?);
    println!("(θ^17)^-1 = θ^{}", k.log(k.inv(a)?)?);
    println!(
        "Frobenius x ↦ x^9 sends θ^17 to θ^{}",
        k.log(k.frobenius(a, 9, 1)?)?
    );

    let sub = build_field(3, 2)?;
    let e = Embedding::new(&sub, &k)?;
    for x in sub.elements().skip(1).take(3) {
        println!(
            "GF(9) element {:?} sits at θ^{} in GF(81)",
            sub.digits(x),
            k.log(e.embed(x))?
        );
    }
    Ok(())
}
