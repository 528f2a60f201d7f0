use std::collections::HashMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow};

use basewitness::basesize::GroupCtx;
use basewitness::bounds::{
    class_size_semisimple, decompositions, eta, find_t_g, fpr_by_classes, fpr_by_cosets,
    group_order, mult_order, prime_order_classes, qhat, special_counts_n6, sweep_b6, Decomposition,
    RowKind,
};
use basewitness::singer::build_block_h;
use basewitness::Sign;

/// |GL_n(q)| or |GU_n(q)| from the product formula, in u128.
fn order_oracle(eps: Sign, n: u32, q: u128) -> u128 {
    let s: i128 = eps.unit().into();
    let mut o = q.pow(n * (n - 1) / 2);
    for i in 1..=n {
        o *= (q.pow(i) as i128 - s.pow(i)).unsigned_abs();
    }
    o
}

#[test]
fn group_orders() {
    assert_eq!(group_order(Sign::Plus, 3, 2), BigUint::from(168u32));
    assert_eq!(group_order(Sign::Minus, 3, 2), BigUint::from(648u32));
    for eps in [Sign::Plus, Sign::Minus] {
        for (n, q) in [(2, 2), (2, 5), (4, 3), (6, 2), (5, 7)] {
            assert_eq!(
                group_order(eps, n, q),
                BigUint::from(order_oracle(eps, n as u32, q as u128)),
                "({eps},{n},{q})"
            );
        }
    }
}

#[test]
fn multiplicative_orders() {
    assert_eq!(mult_order(7, 2).unwrap(), 3);
    assert_eq!(mult_order(5, 3).unwrap(), 4);
    assert_eq!(mult_order(3, 4).unwrap(), 1);
    assert!(mult_order(3, 9).is_err());
}

/// Class sizes from the centralizer formula against element counts in
/// enumerated groups.
#[test]
fn class_sizes_match_counts() {
    let count_by_order = |n: usize, q: u64| -> HashMap<u64, u64> {
        let g = GroupCtx::linear(n, q).unwrap();
        let mut m = HashMap::new();
        for x in g.enumerate(1 << 20).unwrap() {
            *m.entry(x.element_order(None).unwrap()).or_insert(0) += 1;
        }
        m
    };
    let gl32 = count_by_order(3, 2);
    let c3 = class_size_semisimple(
        Sign::Plus,
        3,
        2,
        &Decomposition {
            r: 3,
            e: 2,
            k: 1,
            t: 1,
        },
    )
    .unwrap()
    .class_size;
    assert_eq!(c3, BigUint::from(gl32[&3]));
    let c7 = class_size_semisimple(
        Sign::Plus,
        3,
        2,
        &Decomposition {
            r: 7,
            e: 3,
            k: 1,
            t: 0,
        },
    )
    .unwrap()
    .class_size;
    // Two classes of elements of order seven.
    assert_eq!(c7 * 2u32, BigUint::from(gl32[&7]));

    // GL_2(5): the elements of order three are the irreducible semisimple ones.
    let gl25 = count_by_order(2, 5);
    let c = class_size_semisimple(
        Sign::Plus,
        2,
        5,
        &Decomposition {
            r: 3,
            e: 2,
            k: 1,
            t: 0,
        },
    )
    .unwrap()
    .class_size;
    assert_eq!(c, BigUint::from(gl25[&3]));
}

#[test]
fn decompositions_cover_the_dimension() {
    for eps in [Sign::Plus, Sign::Minus] {
        for n in 2..=12 {
            for q in [2, 3, 4, 5] {
                for d in decompositions(eps, n, q).unwrap() {
                    assert_eq!(d.n(), n as u64);
                    assert!(d.k >= 1);
                }
            }
        }
    }
}

/// Rows recomputed from their definitions with plain big integers.
#[test]
fn sweep_rows_recomputed() {
    let rows = sweep_b6(Sign::Plus, [21], [2]);
    let global = rows.iter().find(|r| r.kind == RowKind::Global).unwrap();
    let h: BigUint = (BigUint::from(2u32).pow(21u32) - 1u32) * 21u32;
    let lhs4 = h.pow(12u32);
    let rhs = BigUint::from(2u32).pow(21u32 * 21 - 4 * 21);
    assert_eq!(global.holds, lhs4 < rhs);
    assert!(global.holds);

    let rows = sweep_b6(Sign::Plus, [6], [2, 3, 4]);
    let special = |q: u64, e: u64, k: u64, t: u64| {
        rows.iter()
            .find(|r| {
                r.kind == RowKind::SpecialN6
                    && r.q == q
                    && r.decomposition
                        .as_ref()
                        .is_some_and(|d| (d.e, d.k, d.t) == (e, k, t))
            })
            .unwrap()
            .holds
    };
    for q in [2u64, 3, 4] {
        let lhs = (2 * (q.pow(4) + q * q + 2)).pow(3);
        assert_eq!(special(q, 2, 3, 0), lhs < q.pow(15), "q = {q}");
        assert_eq!(special(q, 2, 2, 2), lhs < q.pow(20));
        assert_eq!(special(q, 3, 2, 0), lhs < q.pow(20));
    }
    assert!(!special(2, 2, 3, 0));
}

#[test]
fn special_counts() {
    for q in [2, 3] {
        let c = special_counts_n6(q, Sign::Plus);
        assert!(c.holds);
        assert_eq!(c.order3_formula, 2 * (q.pow(4) + q * q + 2));
        assert_eq!(c.involution_count, Some(q.pow(3) + 1));
    }
    let c = special_counts_n6(2, Sign::Plus);
    assert_eq!(c.n2_count, Some(9));
    assert_eq!(c.sylow_normalizer_count, Some(42));
}

#[test]
fn probabilistic_invariants_gl32() {
    let h = build_block_h(&[3], Sign::Plus, 2).unwrap();
    let g = GroupCtx::linear(3, 2).unwrap();
    let classes = prime_order_classes(&g, &h).unwrap();
    let mut sizes: Vec<(u64, u64, u64)> = classes
        .iter()
        .map(|c| (c.prime, c.size, c.meets_h))
        .collect();
    sizes.sort();
    assert_eq!(sizes, vec![(2, 21, 0), (3, 56, 14), (7, 24, 3), (7, 24, 3)]);
    for c in &classes {
        assert_eq!(
            fpr_by_classes(&g, &h, &c.representative).unwrap(),
            fpr_by_cosets(&g, &h, &c.representative).unwrap()
        );
    }
    // Σ |x^G| fpr(x)^3 = 56·(1/4)³ + 48·(1/8)³.
    let expect = BigRational::new(31.into(), 32.into());
    assert_eq!(qhat(&classes, 3), expect);
    assert!(qhat(&classes, 2) > BigRational::one());
    let t = find_t_g(&classes).unwrap();
    assert!((eta(&classes, t) - 1.0).abs() < 1e-9);
    assert!(eta(&classes, t - 0.01) > 1.0 && eta(&classes, t + 0.01) < 1.0);
}
