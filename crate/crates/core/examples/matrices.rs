//! Matrices over a finite field: inverses, invariant factors and the rational
//! canonical form used to match conjugacy classes.

use basewitness::gfarith::build_field;
use basewitness::linalg::Mat;

fn main() -> basewitness::Result<()> {
    let k = build_field(2, 1)?;
    let a = Mat::from_ints(&k, &[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]);
    let g = Mat::from_ints(&k, &[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
    let b = &(&g.inv()? * &a) * &g;

    println!("A =\n{}", a.to_text()?);
    println!("B = g^-1 A g =\n{}", b.to_text()?);
    let (fa, fb) = (a.canonical_form(), b.canonical_form());
    println!("same rational canonical form: {}", fa == fb);
    let deg = fa.min_poly.degree().unwrap_or(0);
    let coeffs: Vec<u64> = (0..=deg).map(|i| fa.min_poly.coeff(i).0).collect();
    println!("minimal polynomial coefficients, constant first: {coeffs:?}");
    println!("order of A: {}", a.element_order(None)?);
    println!(
        "A leaves a proper subspace invariant: {}",
        a.has_invariant_subspace()
    );

    let d = Mat::from_ints(&k, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
    println!("rank of a projection: {}", d.rank());
    Ok(())
}
