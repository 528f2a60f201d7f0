//! Intersections of conjugate subgroups, regular tuples and base sizes.
//!
//! Conjugation convention: H^g = g^{-1}Hg, so h ∈ H^g exactly when
//! g·h·g^{-1} ∈ H. The point Hg of the coset space has stabilizer H^g.

mod brute;
mod group;
mod th1;
mod th2;

pub use brute::{
    brute_base_size, find_base_two_witness, reg_count, verify_base_two, BruteResult, CosetAction,
};
pub use group::{
    ElementSet, GroupCtx, GroupElem, SubgroupHandle, Twisted, BRUTE_FORCE_CAP, DEFAULT_ELEMENT_CAP,
};
pub use th1::verify_th1;
pub use th2::{build_th2, th2_witnesses, verify_th2, Th2Instance};

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Mat;

/// Which construction produced a tuple of conjugators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessKind {
    Th1,
    Th2,
    Search,
}

/// Conjugators g_2, …, g_m; the leading identity is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTuple {
    pub conjugators: Vec<Mat>,
    pub kind: WitnessKind,
}

/// The elements of H lying in every H^g for g in `ws`.
pub fn intersect_conjugates<E: GroupElem>(
    h: &SubgroupHandle<E>,
    ws: &[E],
    cap: u64,
) -> Result<Vec<E>> {
    let elems = h.enumerate(cap)?;
    let inverses: Vec<E> = ws.iter().map(|g| g.inverse()).collect();
    let keep: Vec<Result<bool>> = elems
        .list
        .par_iter()
        .map(|e| {
            for (g, gi) in ws.iter().zip(&inverses) {
                if !h.contains(&g.compose(e).compose(gi))? {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect();
    let mut out = Vec::new();
    for (e, k) in elems.list.iter().zip(keep) {
        if k? {
            out.push(e.clone());
        }
    }
    Ok(out)
}

/// Every element is central in the ambient group.
pub fn is_central<E: GroupElem>(set: &[E]) -> bool {
    set.iter().all(|e| e.is_central())
}

/// The core of H in G: the largest subset of H closed under conjugation by
/// the given generators of G.
pub fn core<E: GroupElem>(h: &SubgroupHandle<E>, g_gens: &[E], cap: u64) -> Result<Vec<E>> {
    let mut cur: HashSet<E> = h.enumerate(cap)?.list.iter().cloned().collect();
    let inverses: Vec<E> = g_gens.iter().map(|g| g.inverse()).collect();
    loop {
        let next: HashSet<E> = cur
            .par_iter()
            .filter(|e| {
                g_gens
                    .iter()
                    .zip(&inverses)
                    .all(|(g, gi)| cur.contains(&g.compose(e).compose(gi)))
            })
            .cloned()
            .collect();
        if next.len() == cur.len() {
            let mut v: Vec<E> = next.into_iter().collect();
            v.sort_by_key(|e| format!("{e:?}"));
            return Ok(v);
        }
        cur = next;
    }
}

/// The tuple of points (Hg_1, …, Hg_m) is regular: its pointwise stabilizer
/// ∩ H^{g_i} equals the kernel of the action. A central intersection is
/// always the kernel; otherwise the core is computed from `g_gens`.
pub fn regular_tuple_check<E: GroupElem>(
    h: &SubgroupHandle<E>,
    tuple: &[E],
    g_gens: Option<&[E]>,
    cap: u64,
) -> Result<bool> {
    let k = intersect_conjugates(h, tuple, cap)?;
    if is_central(&k) {
        return Ok(true);
    }
    let gens = g_gens.ok_or_else(|| {
        Error::InvalidInput("non-central stabilizer and no generators for the core".into())
    })?;
    Ok(core(h, gens, cap)?.len() == k.len())
}

/// (…, Hz_i) and (…, Hz_j) with a shared prefix lie in distinct G-orbits iff no
/// t in the prefix stabilizer has z_i·t·z_j^{-1} ∈ H.
pub fn distinct_orbit_check<E: GroupElem>(
    h: &SubgroupHandle<E>,
    prefix: &[E],
    zi: &E,
    zj: &E,
    cap: u64,
) -> Result<bool> {
    let k = intersect_conjugates(h, prefix, cap)?;
    let zj_inv = zj.inverse();
    let hits: Vec<Result<bool>> = k
        .par_iter()
        .map(|t| h.contains(&zi.compose(t).compose(&zj_inv)))
        .collect();
    for hit in hits {
        if hit? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfarith::build_field;
    use crate::singer::{build_block_h, build_torus};
    use crate::Sign;

    #[test]
    fn intersections() {
        let h = build_block_h(&[3], Sign::Plus, 2).unwrap();
        assert_eq!(h.enumerate(DEFAULT_ELEMENT_CAP).unwrap().len(), 21);
        assert_eq!(intersect_conjugates(&h, &[], 1000).unwrap().len(), 21);
        let (ctx, t) = build_torus(Sign::Plus, 3, 2).unwrap();
        let phi = ctx.phi().clone();
        assert_eq!(intersect_conjugates(&h, &[t, phi], 1000).unwrap().len(), 21);
    }

    #[test]
    fn centrality() {
        let k = build_field(3, 1).unwrap();
        let i = Mat::identity(&k, 2);
        let d = Mat::from_ints(&k, &[&[1, 0], &[0, 2]]);
        assert!(is_central(std::slice::from_ref(&i)));
        assert!(!is_central(&[i, d]));
        let k4 = build_field(3, 1).unwrap();
        assert!(is_central(&[Mat::scalar(&k4, 4, k4.from_int(2))]));
    }
}
