use std::collections::HashSet;

use basewitness::basesize::{
    brute_base_size, build_th2, distinct_orbit_check, intersect_conjugates, reg_count,
    th2_witnesses, verify_base_two, verify_th1, CosetAction, GroupCtx, BRUTE_FORCE_CAP,
};
use basewitness::linalg::Mat;
use basewitness::singer::{build_block_h, build_torus};
use basewitness::Sign;

fn gl32() -> (
    basewitness::basesize::SubgroupHandle,
    GroupCtx,
    Vec<Mat>,
    HashSet<Mat>,
) {
    let h = build_block_h(&[3], Sign::Plus, 2).unwrap();
    let g = GroupCtx::linear(3, 2).unwrap();
    let hs: HashSet<Mat> = h.enumerate(1000).unwrap().list.iter().cloned().collect();
    let all = g.enumerate(1 << 20).unwrap();
    (h, g, all, hs)
}

/// H^x = x^{-1}Hx, written out directly.
fn conjugate_set(hs: &HashSet<Mat>, x: &Mat) -> HashSet<Mat> {
    let xi = x.inv().unwrap();
    hs.iter().map(|a| &(&xi * a) * x).collect()
}

#[test]
fn intersections_follow_the_conjugation_convention() {
    let (h, _, all, hs) = gl32();
    for x in all.iter().step_by(11) {
        let direct: HashSet<Mat> = hs.intersection(&conjugate_set(&hs, x)).cloned().collect();
        let ours: HashSet<Mat> = intersect_conjugates(&h, std::slice::from_ref(x), 1000)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(ours, direct);
    }
}

/// No two cosets of the Singer normalizer in GL_3(2) form a base, some three do.
#[test]
fn base_size_three_by_enumeration() {
    let (h, g, all, hs) = gl32();
    assert!(all
        .iter()
        .all(|x| hs.intersection(&conjugate_set(&hs, x)).count() > 1));
    let action = CosetAction::new(&h, &g.generators().unwrap(), 100, BRUTE_FORCE_CAP).unwrap();
    let r = brute_base_size(&action, 4).unwrap().unwrap();
    assert_eq!(r.base_size, 3);
    assert_eq!(r.image_order, 168);
    let reps: Vec<Mat> = r.tuple.iter().map(|&i| action.reps[i].clone()).collect();
    let mut k = hs.clone();
    for x in &reps {
        k = k.intersection(&conjugate_set(&hs, x)).cloned().collect();
    }
    assert_eq!(k.len(), 1);
    assert!(reg_count(&action, 3, 500, 7) >= 1);
}

#[test]
fn distinct_orbits_is_symmetric() {
    let (h, _, all, _) = gl32();
    let prefix = vec![all[5].clone()];
    for (a, b) in [(17usize, 40usize), (3, 99), (60, 61)] {
        let ab = distinct_orbit_check(&h, &prefix, &all[a], &all[b], 1000).unwrap();
        let ba = distinct_orbit_check(&h, &prefix, &all[b], &all[a], 1000).unwrap();
        assert_eq!(ab, ba);
    }
    assert!(!distinct_orbit_check(&h, &prefix, &all[9], &all[9], 1000).unwrap());
}

#[test]
fn base_two_for_gl62() {
    let r = verify_base_two(Sign::Plus, 6, 2, 0, 1000).unwrap();
    assert!(r.passed());
    assert_eq!(r.intersection_order, Some(1));
    let (ctx, _) = build_torus(Sign::Plus, 6, 2).unwrap();
    assert_eq!(ctx.normalizer_order(), 378);
}

#[test]
fn th1_instances() {
    for (blocks, eps, q) in [
        (&[2usize, 2][..], Sign::Plus, 3u64),
        (&[2, 2][..], Sign::Minus, 2),
        (&[3, 1][..], Sign::Plus, 2),
    ] {
        let r = verify_th1(blocks, eps, q, 0, 10_000).unwrap();
        assert!(r.passed(), "{blocks:?} {eps} {q}");
        assert_eq!(r.central, Some(true));
    }
}

#[test]
fn th2_witness_shapes() {
    let inst = build_th2(4, 3).unwrap();
    assert_eq!(inst.n, 4);
    let ws = th2_witnesses(4, 3).unwrap();
    assert_eq!(ws.len(), 5);
    for w in &ws {
        let [x, y, xy, z] = &w.conjugators[..] else {
            panic!("expected four conjugators");
        };
        assert!(x.is_monomial() && y.is_monomial());
        assert_eq!(&(x * y), xy);
        assert!(inst.g.contains(z));
        // x is the antidiagonal permutation.
        assert_eq!(x, &inst.x);
    }
    assert_eq!(th2_witnesses(4, 2).unwrap()[0].conjugators.len(), 3);
    assert!(build_th2(5, 3).is_err());
}
