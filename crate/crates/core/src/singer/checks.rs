//! Exhaustive checks of the structural lemmas on one normalizer at a time.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde_json::json;

use super::{TorusCoord, TorusCtx};
use crate::basesize::{GroupCtx, BRUTE_FORCE_CAP};
use crate::bounds::mult_order;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::report::VerificationReport;
use crate::Sign;

const ENUMERATION_CAP: u64 = 1_000_000;

fn guard(ctx: &TorusCtx) -> Result<()> {
    let size = ctx.normalizer_order();
    if size > ENUMERATION_CAP {
        return Err(Error::EnumerationTooLarge {
            what: "normalizer".into(),
            size: size.to_string(),
            cap: ENUMERATION_CAP,
        });
    }
    Ok(())
}

fn base_report(claim: &str, ctx: &TorusCtx) -> VerificationReport {
    let mut r = VerificationReport::new(claim, 0)
        .param("eps", ctx.eps().symbol())
        .param("n", ctx.n() as u64)
        .param("q", ctx.q());
    r.instance = Some(format!("Sin_{}^{}({})", ctx.n(), ctx.eps(), ctx.q()));
    r.set_data("phi_order", ctx.phi_order());
    r.set_data("normalizer_order", ctx.normalizer_order());
    r
}

fn coord_json(c: TorusCoord, r: u64) -> serde_json::Value {
    json!({ "lambda_exp": c.lambda_exp, "j": c.j, "r": r })
}

/// Every prime-order (λ, j) with r | n has λ-exponent divisible by (εq)^{n/r} − 1.
///
/// For ε = −, n odd the exponent is taken in the big field GF(q^{2n}), where it
/// must be divisible by q^{n/r} + 1 and, viewing the torus inside the linear
/// one over GF(q²), by q^{2n/r} − 1.
pub fn check_lemma_form(ctx: &TorusCtx) -> Result<VerificationReport> {
    guard(ctx)?;
    let mut rep = base_report("lemma-form", ctx);
    let (n, q) = (ctx.n() as u64, ctx.q());
    let candidates: Vec<(TorusCoord, u64)> = ctx
        .prime_order_coords()
        .into_iter()
        .filter(|&(_, r)| n % r == 0)
        .collect();
    let results: Vec<Option<serde_json::Value>> = candidates
        .par_iter()
        .map(|&(c, r)| {
            let m = ctx.coords_inv(c);
            if m.is_identity() || !m.pow_u64(r).is_identity() {
                return Some(json!({ "element": coord_json(c, r), "reason": "matrix order differs from coordinate order" }));
            }
            let nr = (n / r) as u32;
            let ok = match ctx.eps() {
                Sign::Plus => c.lambda_exp % (q.pow(nr) - 1) == 0,
                Sign::Minus if n % 2 == 0 => {
                    let d = if nr.is_multiple_of(2) { q.pow(nr) - 1 } else { q.pow(nr) + 1 };
                    c.lambda_exp % d == 0
                }
                Sign::Minus => {
                    let big = (c.lambda_exp as u128 * ctx.stride() as u128) % (q.pow(2 * n as u32) as u128 - 1);
                    big.is_multiple_of(q.pow(nr) as u128 + 1) && big.is_multiple_of(q.pow(2 * nr) as u128 - 1)
                }
            };
            (!ok).then(|| json!({ "element": coord_json(c, r), "reason": "exponent not divisible" }))
        })
        .collect();
    for ce in results.into_iter().flatten() {
        rep.counterexample(ce);
    }
    rep.set_data("checked", candidates.len() as u64);
    Ok(rep.finish())
}

/// Every prime-order element has a fixed space of dimension 0 or n/r.
pub fn check_lemma_nep(ctx: &TorusCtx) -> Result<VerificationReport> {
    guard(ctx)?;
    let mut rep = base_report("lemma-nep", ctx);
    let n = ctx.n() as u64;
    let candidates = ctx.prime_order_coords();
    let dims: Vec<usize> = candidates
        .par_iter()
        .map(|&(c, _)| ctx.coords_inv(c).fixed_space_dim())
        .collect();
    let mut tally: BTreeMap<String, u64> = BTreeMap::new();
    for (&(c, r), &d) in candidates.iter().zip(&dims) {
        *tally.entry(format!("r={r},dim={d}")).or_default() += 1;
        let allowed = d == 0 || (n.is_multiple_of(r) && d as u64 == n / r);
        if !allowed {
            rep.counterexample(json!({ "element": coord_json(c, r), "fixed_dim": d }));
        }
        if !n.is_multiple_of(r) && c.j != 0 {
            rep.counterexample(
                json!({ "element": coord_json(c, r), "reason": "r ∤ n outside the torus" }),
            );
        }
    }
    rep.set_data("checked", candidates.len() as u64);
    rep.set_data("dimensions", serde_json::to_value(tally).expect("map"));
    Ok(rep.finish())
}

fn require_linear(ctx: &TorusCtx) -> Result<()> {
    if ctx.eps() != Sign::Plus {
        return Err(Error::InvalidInput(
            "this check concerns the linear torus".into(),
        ));
    }
    Ok(())
}

/// A reducible element of Sin_n(q) is scalar.
pub fn check_lemma_m7(ctx: &TorusCtx) -> Result<VerificationReport> {
    require_linear(ctx)?;
    guard(ctx)?;
    let mut rep = base_report("lemma-m7", ctx);
    let t = ctx.generator();
    let bad: Vec<u64> = (0..ctx.torus_order())
        .into_par_iter()
        .filter(|&s| {
            let m = t.pow_u64(s);
            m.has_invariant_subspace() && !m.is_scalar()
        })
        .collect();
    let reducible = (0..ctx.torus_order())
        .into_par_iter()
        .filter(|&s| t.pow_u64(s).has_invariant_subspace())
        .count();
    for s in bad {
        rep.counterexample(json!({ "lambda_exp": s }));
    }
    rep.set_data("checked", ctx.torus_order());
    rep.set_data("reducible", reducible as u64);
    Ok(rep.finish())
}

/// An irreducible torus element of prime order r has e(r, q) = n.
pub fn check_lemma_ir(ctx: &TorusCtx) -> Result<VerificationReport> {
    require_linear(ctx)?;
    guard(ctx)?;
    let mut rep = base_report("lemma-ir", ctx);
    let n = ctx.n() as u64;
    let torus: Vec<(TorusCoord, u64)> = ctx
        .prime_order_coords()
        .into_iter()
        .filter(|(c, _)| c.j == 0)
        .collect();
    let outcomes: Vec<(bool, Option<serde_json::Value>)> = torus
        .par_iter()
        .map(|&(c, r)| {
            let m = ctx.coords_inv(c);
            if ctx.n() >= 2 && m.has_invariant_subspace() {
                return (false, None);
            }
            let ce = match mult_order(r, ctx.q()) {
                Ok(e) if e == n => None,
                Ok(e) => Some(json!({ "element": coord_json(c, r), "e": e })),
                Err(err) => Some(json!({ "element": coord_json(c, r), "error": err.to_string() })),
            };
            (true, ce)
        })
        .collect();
    let irreducible = outcomes.iter().filter(|o| o.0).count();
    for (_, ce) in outcomes {
        if let Some(ce) = ce {
            rep.counterexample(ce);
        }
    }
    rep.set_data("prime_order_torus_elements", torus.len() as u64);
    rep.set_data("irreducible", irreducible as u64);
    Ok(rep.finish())
}

/// Prime-order x ∈ H with r ∤ n satisfies |x^G ∩ H| ≤ n. GL classes are
/// matched by rational canonical form; GU classes by enumerating G.
pub fn check_prop1(ctx: &TorusCtx) -> Result<VerificationReport> {
    guard(ctx)?;
    let mut rep = base_report("prop1", ctx);
    let n = ctx.n() as u64;
    let elems = ctx.enumerate_matrices();
    let coords: Vec<TorusCoord> = ctx.all_coords().collect();
    let targets: Vec<(usize, u64)> = {
        let index: HashMap<TorusCoord, usize> =
            coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        ctx.prime_order_coords()
            .into_iter()
            .filter(|&(_, r)| !n.is_multiple_of(r))
            .map(|(c, r)| (index[&c], r))
            .collect()
    };
    let counts: Vec<u64> = match ctx.eps() {
        Sign::Plus => {
            let keys: Vec<Mat> = elems.par_iter().map(|m| m.canonical_form().rcf).collect();
            let mut tally: HashMap<&Mat, u64> = HashMap::new();
            for k in &keys {
                *tally.entry(k).or_default() += 1;
            }
            targets.iter().map(|&(i, _)| tally[&keys[i]]).collect()
        }
        Sign::Minus => {
            let form = ctx
                .form()
                .cloned()
                .ok_or_else(|| Error::ConstructionFailure("unitary torus without a form".into()))?;
            let g = GroupCtx::unitary(ctx.q(), form)?;
            let gel = g.enumerate(BRUTE_FORCE_CAP)?;
            let ginv: Vec<Mat> = gel
                .par_iter()
                .map(|a| a.inv().expect("invertible"))
                .collect();
            let hset: std::collections::HashSet<&Mat> = elems.iter().collect();
            targets
                .par_iter()
                .map(|&(i, _)| {
                    let x = &elems[i];
                    let class: std::collections::HashSet<Mat> =
                        gel.iter().zip(&ginv).map(|(a, ai)| &(a * x) * ai).collect();
                    class.iter().filter(|y| hset.contains(y)).count() as u64
                })
                .collect()
        }
    };
    let mut worst = 0;
    for (&(i, r), &cnt) in targets.iter().zip(&counts) {
        worst = worst.max(cnt);
        if cnt > n {
            rep.counterexample(
                json!({ "element": coord_json(coords[i], r), "class_meets_h": cnt }),
            );
        }
    }
    rep.set_data("checked", targets.len() as u64);
    rep.set_data("max_class_meets_h", worst);
    if targets.is_empty() {
        rep.set_data("note", "no prime-order element with r ∤ n");
    }
    Ok(rep.finish())
}
