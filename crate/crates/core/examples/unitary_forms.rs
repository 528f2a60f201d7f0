//! Hermitian forms over GF(q²), unitary membership and the block matrices D
//! and S used for the unitary torus witnesses.

use basewitness::basesize::GroupCtx;
use basewitness::gfarith::build_field;
use basewitness::linalg::{unitary_member, HermitianForm, Mat};
use basewitness::singer::build_unitary_d_s;

fn main() -> basewitness::Result<()> {
    let k = build_field(2, 2)?;
    let form = HermitianForm::identity(&k, 3)?;
    let basis = form.orthonormal_basis()?;
    println!(
        "orthonormal basis for the standard form over GF(4):\n{}",
        basis.to_text()?
    );

    let gu = GroupCtx::unitary(2, form.clone())?;
    println!("|GU_3(2)| = {}", gu.order());
    let j = Mat::from_ints(&k, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
    println!(
        "a transposition matrix is unitary: {}",
        unitary_member(&j, &form)?
    );

    for q in [2, 3, 4, 5] {
        let (ds, s) = build_unitary_d_s(&[2, 1], q)?;
        println!("q = {q}: D =\n{}S has {} rows", ds[0].to_text()?, s.rows());
    }
    Ok(())
}
