use std::sync::Arc;

use basewitness::gfarith::{build_field, Elem, Embedding, FieldCtx};
use proptest::prelude::*;

const FIELDS: &[(u64, u32)] = &[
    (2, 1),
    (2, 4),
    (2, 8),
    (3, 1),
    (3, 3),
    (5, 2),
    (7, 2),
    (13, 1),
];

/// Schoolbook product of two digit vectors reduced by the monic modulus,
/// computed without the crate's tables.
fn naive_mul(k: &FieldCtx, a: Elem, b: Elem) -> Elem {
    let p = k.p();
    let f = k.f() as usize;
    let (da, db) = (k.digits(a), k.digits(b));
    let mut prod = vec![0u64; 2 * f];
    for (i, x) in da.iter().enumerate() {
        for (j, y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let m = k.modulus();
    for deg in (f..2 * f).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (i, mi) in m.iter().enumerate().take(f) {
            let idx = deg - f + i;
            prod[idx] = (prod[idx] + (p - c) * mi % p) % p;
        }
        prod[deg] = 0;
    }
    k.from_digits(&prod[..f])
}

fn field_and_elems() -> impl Strategy<Value = (Arc<FieldCtx>, Elem, Elem, Elem)> {
    (0..FIELDS.len()).prop_flat_map(|i| {
        let (p, f) = FIELDS[i];
        let k = build_field(p, f).unwrap();
        let order = k.order();
        (Just(k), 0..order, 0..order, 0..order)
            .prop_map(|(k, a, b, c)| (k, Elem(a), Elem(b), Elem(c)))
    })
}

proptest! {
    #[test]
    fn ring_axioms((k, a, b, c) in field_and_elems()) {
        prop_assert_eq!(k.add(a, b), k.add(b, a));
        prop_assert_eq!(k.mul(a, b), k.mul(b, a));
        prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.add(a, k.neg(a)), Elem::ZERO);
        prop_assert_eq!(k.sub(k.add(a, b), b), a);
    }

    #[test]
    fn product_matches_schoolbook((k, a, b, _) in field_and_elems()) {
        prop_assert_eq!(k.mul(a, b), naive_mul(&k, a, b));
    }

    #[test]
    fn inverse_and_log((k, a, _, _) in field_and_elems()) {
        if a.is_zero() {
            prop_assert!(k.inv(a).is_err());
        } else {
            let ai = k.inv(a).unwrap();
            prop_assert_eq!(k.mul(a, ai), Elem::ONE);
            let l = k.log(a).unwrap();
            prop_assert_eq!(k.theta_pow(l), a);
            prop_assert_eq!(k.pow_u64(a, k.order() - 1), Elem::ONE);
        }
    }

    #[test]
    fn frobenius_is_additive((k, a, b, _) in field_and_elems()) {
        let p = k.p();
        let fa = k.frobenius(a, p, 1).unwrap();
        prop_assert_eq!(fa, k.pow_u64(a, p));
        let fab = k.frobenius(k.add(a, b), p, 1).unwrap();
        prop_assert_eq!(fab, k.add(fa, k.frobenius(b, p, 1).unwrap()));
        prop_assert_eq!(k.frobenius(fa, p, -1).unwrap(), a);
    }
}

#[test]
fn theta_is_primitive() {
    for &(p, f) in FIELDS {
        let k = build_field(p, f).unwrap();
        assert_eq!(
            k.mult_order(k.theta()).unwrap(),
            k.order() - 1,
            "GF({p}^{f})"
        );
    }
}

#[test]
fn tabled_and_untabled_agree() {
    // GF(2^21) is past the table limit and multiplies by reduction.
    let big = build_field(2, 21).unwrap();
    assert!(!big.has_tables());
    let a = big.theta_pow(123_456);
    let b = big.theta_pow(987_654);
    assert_eq!(big.mul(a, b), naive_mul(&big, a, b));
    assert_eq!(big.mul(a, b), big.theta_pow(123_456 + 987_654));
}

#[test]
fn subfield_embedding_is_a_homomorphism() {
    let sub = build_field(2, 2).unwrap();
    let top = build_field(2, 4).unwrap();
    let e = Embedding::new(&sub, &top).unwrap();
    for a in sub.elements() {
        for b in sub.elements() {
            assert_eq!(e.embed(sub.mul(a, b)), top.mul(e.embed(a), e.embed(b)));
            assert_eq!(e.embed(sub.add(a, b)), top.add(e.embed(a), e.embed(b)));
        }
        assert_eq!(e.restrict(e.embed(a)).unwrap(), Some(a));
    }
    // The image is exactly the fixed field of x ↦ x⁴.
    let fixed = top.elements().filter(|&x| top.pow_u64(x, 4) == x).count();
    assert_eq!(fixed, 4);
}

#[test]
fn text_round_trip() {
    let k = build_field(3, 2).unwrap();
    for a in k.elements() {
        let s = k.format_elem(a).unwrap();
        assert_eq!(k.parse_elem(&s).unwrap(), a);
    }
}
