use std::collections::HashSet;

use basewitness::gfarith::Elem;
use basewitness::linalg::Mat;
use basewitness::singer::{
    build_torus, check_lemma_form, check_lemma_ir, check_lemma_m7, check_lemma_nep, check_prop1,
    kappa_for, TorusCoord,
};
use basewitness::Sign;

/// All vectors of GF(p)^n for a prime field, as digit rows.
fn all_vectors(p: u64, n: usize) -> Vec<Vec<Elem>> {
    (0..p.pow(n as u32))
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let d = c % p;
                    c /= p;
                    Elem(d)
                })
                .collect()
        })
        .collect()
}

fn mul_row(v: &[Elem], a: &Mat, p: u64) -> Vec<Elem> {
    (0..a.cols())
        .map(|j| Elem((0..v.len()).map(|i| v[i].0 * a.get(i, j).0).sum::<u64>() % p))
        .collect()
}

#[test]
fn torus_and_normalizer_orders() {
    for (eps, n, q) in [
        (Sign::Plus, 2, 2),
        (Sign::Plus, 3, 2),
        (Sign::Plus, 4, 3),
        (Sign::Plus, 2, 9),
        (Sign::Minus, 3, 2),
        (Sign::Minus, 2, 3),
    ] {
        let (ctx, t) = build_torus(eps, n, q).unwrap();
        let expect = (q.pow(n as u32) as i64 - eps.unit().pow(n as u32)) as u64;
        assert_eq!(ctx.torus_order(), expect);
        assert_eq!(t.element_order(None).unwrap(), expect);
        assert_eq!(ctx.normalizer_order(), expect * n as u64);
        let elems: HashSet<Mat> = ctx.enumerate_matrices().into_iter().collect();
        assert_eq!(elems.len() as u64, expect * n as u64);
        // φ normalizes the torus.
        let powers: HashSet<Mat> = (0..expect).map(|i| t.pow_u64(i)).collect();
        let phi = ctx.phi();
        let moved = &(&phi.inv().unwrap() * &t) * phi;
        assert!(powers.contains(&moved));
        assert!(!powers.contains(phi) || n == 1);
        if let Some(form) = ctx.form() {
            assert!(form.preserves(&t).unwrap());
            assert!(form.preserves(phi).unwrap());
        }
    }
}

#[test]
fn coordinates_round_trip() {
    let (ctx, _) = build_torus(Sign::Plus, 3, 3).unwrap();
    for c in ctx.all_coords().step_by(7) {
        let m = ctx.coords_inv(c);
        assert_eq!(ctx.coords(&m).unwrap(), c);
    }
    let a = TorusCoord::new(5, 1);
    let b = TorusCoord::new(11, 2);
    let prod = &ctx.coords_inv(a) * &ctx.coords_inv(b);
    assert_eq!(ctx.coords(&prod).unwrap(), ctx.coord_mul(a, b));
    assert_eq!(kappa_for(Sign::Plus, 3, 3), ctx.kappa());
}

/// Fixed spaces counted by enumerating the vectors of GF(p)^n.
#[test]
fn fixed_space_by_enumeration() {
    for (n, p) in [(4usize, 2u64), (3, 3), (6, 2)] {
        let (ctx, _) = build_torus(Sign::Plus, n, p).unwrap();
        let vecs = all_vectors(p, n);
        for (c, r) in ctx.prime_order_coords() {
            let m = ctx.coords_inv(c);
            let fixed = vecs.iter().filter(|v| mul_row(v, &m, p) == **v).count() as u64;
            let dim = fixed.ilog(p) as usize;
            assert_eq!(dim, m.fixed_space_dim());
            assert!(
                dim == 0 || ((n as u64).is_multiple_of(r) && dim == n / r as usize),
                "{c:?} r={r}"
            );
        }
    }
}

#[test]
fn lemma_checks_pass_on_small_instances() {
    for (eps, n, q) in [
        (Sign::Plus, 4, 3),
        (Sign::Plus, 6, 2),
        (Sign::Minus, 3, 2),
        (Sign::Minus, 4, 2),
    ] {
        let (ctx, _) = build_torus(eps, n, q).unwrap();
        assert!(check_lemma_nep(&ctx).unwrap().passed());
        assert!(check_lemma_form(&ctx).unwrap().passed());
    }
    let (ctx, _) = build_torus(Sign::Plus, 3, 2).unwrap();
    assert!(check_prop1(&ctx).unwrap().passed());
    for n in [2, 3, 5, 7] {
        let (ctx, _) = build_torus(Sign::Plus, n, 2).unwrap();
        assert!(check_lemma_m7(&ctx).unwrap().passed(), "n = {n}");
        assert!(check_lemma_ir(&ctx).unwrap().passed(), "n = {n}");
    }
}

/// In Sin_4(2) the two elements of order three come from GF(4)^× and fix the
/// GF(4)-lines of GF(16), so they are reducible without being scalar.
#[test]
fn subfield_elements_are_reducible() {
    let (ctx, t) = build_torus(Sign::Plus, 4, 2).unwrap();
    let vecs = all_vectors(2, 4);
    let mut reducible_nonscalar = Vec::new();
    for e in 1..15u64 {
        let m = t.pow_u64(e);
        let proper = vecs
            .iter()
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .any(|v| {
                let w = mul_row(v, &m, 2);
                let sum: Vec<Elem> = v
                    .iter()
                    .zip(&w)
                    .map(|(a, b)| Elem((a.0 + b.0) % 2))
                    .collect();
                // span{v, vA} is invariant when vA² lies in it.
                let w2 = mul_row(&w, &m, 2);
                w2 == *v || w2 == w || w2 == sum || w2.iter().all(|x| x.is_zero())
            });
        if proper && !m.is_scalar() {
            reducible_nonscalar.push(e);
        }
    }
    assert_eq!(reducible_nonscalar, vec![5, 10]);
    let rep = check_lemma_m7(&ctx).unwrap();
    assert!(!rep.passed());
    assert_eq!(rep.counterexamples.len(), 2);
}
