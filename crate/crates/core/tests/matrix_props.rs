use std::collections::HashSet;
use std::sync::Arc;

use basewitness::basesize::GroupCtx;
use basewitness::gfarith::{build_field, Elem, FieldCtx};
use basewitness::linalg::{Mat, Poly};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_mat(k: &Arc<FieldCtx>, n: usize, seed: u64) -> Mat {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Mat::from_fn(k, n, n, |_, _| Elem(rng.gen_range(0..k.order())))
}

fn invertible(k: &Arc<FieldCtx>, n: usize, seed: u64) -> Mat {
    GroupCtx::linear(n, k.order())
        .unwrap()
        .random_element(&mut ChaCha8Rng::seed_from_u64(seed))
        .unwrap()
}

/// f(A) by Horner's rule.
fn eval_at(f: &Poly, a: &Mat) -> Mat {
    let k = a.ctx();
    let n = a.rows();
    let deg = f.degree().unwrap_or(0);
    let mut acc = Mat::zeros(k, n, n);
    for i in (0..=deg).rev() {
        acc = &acc * a;
        let c = Mat::scalar(k, n, f.coeff(i));
        acc = acc.try_add(&c).unwrap();
    }
    acc
}

fn fields() -> Vec<Arc<FieldCtx>> {
    [(2, 1), (3, 1), (2, 2), (5, 1)]
        .iter()
        .map(|&(p, f)| build_field(p, f).unwrap())
        .collect()
}

proptest! {
    #[test]
    fn inverse_round_trip(fi in 0usize..4, n in 1usize..6, seed in any::<u64>()) {
        let k = &fields()[fi];
        let a = invertible(k, n, seed);
        let b = invertible(k, n, seed ^ 0x5555);
        let ai = a.inv().unwrap();
        prop_assert!((&a * &ai).is_identity());
        prop_assert!((&ai * &a).is_identity());
        let abi = (&a * &b).inv().unwrap();
        prop_assert_eq!(abi, &b.inv().unwrap() * &ai);
        prop_assert_eq!(a.inv_transpose().unwrap(), a.transpose().inv().unwrap());
    }

    #[test]
    fn canonical_form_is_a_class_invariant(fi in 0usize..4, n in 1usize..6, seed in any::<u64>()) {
        let k = &fields()[fi];
        let a = random_mat(k, n, seed);
        let g = invertible(k, n, seed.wrapping_add(1));
        let conj = &(&g.inv().unwrap() * &a) * &g;
        let cf = a.canonical_form();
        prop_assert_eq!(&cf, &conj.canonical_form());
        // The invariant factors multiply to the characteristic polynomial,
        // and the last one annihilates A.
        let prod = cf.invariant_factors.iter().fold(Poly::one(), |acc, f| acc.mul(k, f));
        prop_assert_eq!(prod, a.charpoly());
        prop_assert_eq!(cf.invariant_factors.last().unwrap(), &cf.min_poly);
        prop_assert!(eval_at(&cf.min_poly, &a).data().iter().all(|e| e.is_zero()));
        prop_assert_eq!(&cf.rcf.canonical_form().rcf, &cf.rcf);
    }

    #[test]
    fn rank_nullity(fi in 0usize..4, n in 1usize..6, seed in any::<u64>()) {
        let k = &fields()[fi];
        let a = random_mat(k, n, seed);
        let (rank, kernel) = a.rank_kernel();
        prop_assert_eq!(rank + kernel.len(), n);
        for v in kernel {
            // Row-vector convention: v·A = 0.
            prop_assert!(a.apply_row(&v).iter().all(|e| e.is_zero()));
        }
    }
}

/// Class counts of small general linear groups, matched by canonical form.
#[test]
fn class_numbers() {
    for (n, q, classes) in [(2usize, 2u64, 3usize), (3, 2, 6), (2, 3, 8)] {
        let g = GroupCtx::linear(n, q).unwrap();
        let forms: HashSet<Mat> = g
            .enumerate(1 << 20)
            .unwrap()
            .iter()
            .map(|m| m.canonical_form().rcf)
            .collect();
        assert_eq!(forms.len(), classes, "GL_{n}({q})");
    }
}

/// Invariant subspaces over GF(2) found by enumerating every vector: some
/// nonzero v spans a proper cyclic subspace.
fn reducible_by_search(bits: &[u8], n: usize) -> bool {
    let apply = |v: u8| -> u8 {
        (0..n)
            .filter(|&i| v >> i & 1 == 1)
            .fold(0, |acc, i| acc ^ bits[i])
    };
    (1u8..1 << n).any(|v| {
        let mut span: HashSet<u8> = HashSet::from([0]);
        let mut cur = v;
        loop {
            if span.contains(&cur) {
                break;
            }
            let new: Vec<u8> = span.iter().map(|s| s ^ cur).collect();
            span.extend(new);
            cur = apply(cur);
        }
        span.len() < 1 << n
    })
}

#[test]
fn invariant_subspace_oracle() {
    let k = build_field(2, 1).unwrap();
    let n = 3;
    for code in 0u32..1 << (n * n) {
        let bits: Vec<u8> = (0..n).map(|i| (code >> (n * i)) as u8 & 0b111).collect();
        let a = Mat::from_fn(&k, n, n, |i, j| Elem(u64::from(bits[i] >> j & 1)));
        assert_eq!(
            a.has_invariant_subspace(),
            reducible_by_search(&bits, n),
            "{a:?}"
        );
    }
}

#[test]
fn text_round_trip() {
    let k = build_field(3, 2).unwrap();
    let a = random_mat(&k, 4, 9);
    let t = a.to_text().unwrap();
    assert_eq!(Mat::from_text(&t, Some(&k)).unwrap(), a);
}
