//! Fixed point ratios, Q̂(G, c), η_G and T_G on enumerable groups.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::basesize::{GroupCtx, SubgroupHandle, BRUTE_FORCE_CAP, DEFAULT_ELEMENT_CAP};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::Sign;

/// A conjugacy class of prime-order elements of G.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub prime: u64,
    pub size: u64,
    /// |C ∩ H|.
    pub meets_h: u64,
    /// A representative, in the order G was enumerated.
    #[serde(skip)]
    pub representative: Mat,
}

impl ClassSummary {
    /// C lies in the core of H exactly when it is contained in H.
    pub fn in_core(&self) -> bool {
        self.meets_h == self.size
    }
}

fn prime_order(m: &Mat) -> Option<u64> {
    if m.is_identity() {
        return None;
    }
    let o = m.element_order(None).ok()?;
    num_prime::nt_funcs::is_prime64(o).then_some(o)
}

/// Conjugacy classes of prime-order elements of G together with how they
/// meet H. GL classes are matched by rational canonical form; GU classes by
/// explicit orbits.
pub fn prime_order_classes(g: &GroupCtx, h: &SubgroupHandle) -> Result<Vec<ClassSummary>> {
    let elems = g.enumerate(BRUTE_FORCE_CAP)?;
    let hset = h.enumerate(DEFAULT_ELEMENT_CAP)?;
    let orders: Vec<Option<u64>> = elems.par_iter().map(prime_order).collect();
    let mut out = Vec::new();
    match g.eps {
        Sign::Plus => {
            let keys: Vec<Option<Mat>> = elems
                .par_iter()
                .zip(&orders)
                .map(|(m, o)| o.map(|_| m.canonical_form().rcf))
                .collect();
            let mut index: HashMap<&Mat, usize> = HashMap::new();
            for (i, key) in keys.iter().enumerate() {
                let Some(key) = key else { continue };
                let slot = *index.entry(key).or_insert_with(|| {
                    out.push(ClassSummary {
                        prime: orders[i].unwrap(),
                        size: 0,
                        meets_h: 0,
                        representative: elems[i].clone(),
                    });
                    out.len() - 1
                });
                out[slot].size += 1;
                if hset.contains(&elems[i]) {
                    out[slot].meets_h += 1;
                }
            }
        }
        Sign::Minus => {
            let inverses: Vec<Mat> = elems
                .par_iter()
                .map(|m| m.inv().expect("invertible"))
                .collect();
            let mut seen = std::collections::HashSet::new();
            for (i, x) in elems.iter().enumerate() {
                let Some(r) = orders[i] else { continue };
                if seen.contains(x) {
                    continue;
                }
                let orbit: std::collections::HashSet<Mat> = elems
                    .par_iter()
                    .zip(&inverses)
                    .map(|(a, ai)| &(a * x) * ai)
                    .collect();
                let meets = orbit.iter().filter(|y| hset.contains(y)).count() as u64;
                out.push(ClassSummary {
                    prime: r,
                    size: orbit.len() as u64,
                    meets_h: meets,
                    representative: x.clone(),
                });
                seen.extend(orbit);
            }
        }
    }
    Ok(out)
}

/// |x^G ∩ H| / |x^G| from an explicit conjugacy class.
pub fn fpr_by_classes(g: &GroupCtx, h: &SubgroupHandle, x: &Mat) -> Result<BigRational> {
    let elems = g.enumerate(BRUTE_FORCE_CAP)?;
    let hset = h.enumerate(DEFAULT_ELEMENT_CAP)?;
    let class: std::collections::HashSet<Mat> = match g.eps {
        Sign::Plus => {
            let key = x.canonical_form().rcf;
            elems
                .par_iter()
                .filter(|m| m.canonical_form().rcf == key)
                .cloned()
                .collect()
        }
        Sign::Minus => elems
            .par_iter()
            .map(|a| &(a * x) * &a.inv().expect("invertible"))
            .collect(),
    };
    let meets = class.iter().filter(|y| hset.contains(y)).count();
    Ok(BigRational::new(
        BigInt::from(meets),
        BigInt::from(class.len()),
    ))
}

/// The proportion of cosets Hg with Hgx = Hg, i.e. of g ∈ G with gxg^{-1} ∈ H.
pub fn fpr_by_cosets(g: &GroupCtx, h: &SubgroupHandle, x: &Mat) -> Result<BigRational> {
    let elems = g.enumerate(BRUTE_FORCE_CAP)?;
    let hset = h.enumerate(DEFAULT_ELEMENT_CAP)?;
    let fixed = elems
        .par_iter()
        .filter(|a| hset.contains(&(&(*a * x) * &a.inv().expect("invertible"))))
        .count();
    Ok(BigRational::new(
        BigInt::from(fixed),
        BigInt::from(elems.len()),
    ))
}

/// fpr(x), by class matching.
pub fn fpr_exact(g: &GroupCtx, h: &SubgroupHandle, x: &Mat) -> Result<BigRational> {
    fpr_by_classes(g, h, x)
}

/// Q̂(G, c) = Σ |C|·fpr(C)^c over prime-order classes outside the core.
pub fn qhat(classes: &[ClassSummary], c: u32) -> BigRational {
    classes
        .iter()
        .filter(|cl| !cl.in_core())
        .fold(BigRational::zero(), |acc, cl| {
            let f = BigRational::new(BigInt::from(cl.meets_h), BigInt::from(cl.size));
            acc + num_traits::pow(f, c as usize) * BigInt::from(cl.size)
        })
}

/// η_G(t) = Σ |C|^{-t} over prime-order classes.
pub fn eta(classes: &[ClassSummary], t: f64) -> f64 {
    classes.iter().map(|cl| (cl.size as f64).powf(-t)).sum()
}

/// The t ∈ (0, 1) with η_G(t) = 1, by bisection on [1e-6, 1 − 1e-6].
pub fn find_t_g(classes: &[ClassSummary]) -> Result<f64> {
    let (mut lo, mut hi) = (1e-6, 1.0 - 1e-6);
    if eta(classes, lo) < 1.0 {
        return Err(Error::NoRootInUnitInterval(format!("η({lo}) < 1")));
    }
    if eta(classes, hi) > 1.0 {
        return Err(Error::NoRootInUnitInterval(format!("η({hi}) > 1")));
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if eta(classes, mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Q̂ as a float, for display.
pub fn qhat_f64(q: &BigRational) -> f64 {
    let to_f = |b: &BigInt| b.to_string().parse::<f64>().unwrap_or(f64::INFINITY);
    to_f(q.numer()) / to_f(q.denom())
}
