use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{intersect_conjugates, is_central, GroupCtx, DEFAULT_ELEMENT_CAP};
use crate::error::{Error, Result};
use crate::linalg::{perm_from_cycles, perm_matrix, Mat};
use crate::report::VerificationReport;
use crate::singer::{build_unitary_d_s, BlockTorus, TorusCtx};
use crate::Sign;

/// x, y making R ∩ R^x ∩ R^y as small as possible for the normalizer R of one
/// block, stopping early once it is central. Returns the pair, the size of the
/// intersection, whether it is central, and the number of candidates tried.
fn block_witnesses(
    torus: &TorusCtx,
    q: u64,
    rng: &mut ChaCha8Rng,
    tries: u64,
) -> Result<BlockWitness> {
    let n = torus.n();
    let k = torus.field();
    if n == 1 {
        let one = Mat::identity(k, 1);
        return Ok(BlockWitness {
            x: one.clone(),
            y: one,
            size: 0,
            central: true,
            used: 0,
        });
    }
    let g = match torus.eps() {
        Sign::Plus => GroupCtx::linear(n, q)?,
        Sign::Minus => {
            GroupCtx::unitary(q, torus.form().cloned().expect("unitary torus has a form"))?
        }
    };
    let r = torus.enumerate_matrices();
    let inside = |m: &Mat| torus.coords(m).is_ok();
    let mut best: Option<BlockWitness> = None;
    let mut used = 0;
    while used < tries {
        used += 1;
        let x = g.random_element(rng)?;
        let y = g.random_element(rng)?;
        let (xi, yi) = (x.inv()?, y.inv()?);
        let kept: Vec<&Mat> = r
            .iter()
            .filter(|h| inside(&(&(&x * h) * &xi)) && inside(&(&(&y * h) * &yi)))
            .collect();
        let central = kept.iter().all(|h| h.is_scalar());
        if best.as_ref().is_none_or(|b| kept.len() < b.size) {
            best = Some(BlockWitness {
                x,
                y,
                size: kept.len(),
                central,
                used: 0,
            });
        }
        if central {
            break;
        }
    }
    let mut b = best.ok_or(Error::WitnessSearchFailed {
        seed: 0,
        budget: tries,
    })?;
    b.used = used;
    Ok(b)
}

struct BlockWitness {
    x: Mat,
    y: Mat,
    size: usize,
    central: bool,
    used: u64,
}

/// Candidates tried per block before settling for the smallest intersection.
const BLOCK_TRIES: u64 = 64;

fn is_block_scalar(m: &Mat, bt: &BlockTorus) -> bool {
    let n = bt.n();
    bt.blocks.iter().enumerate().all(|(i, &b)| {
        let o = bt.offset(i);
        let block_ok = m.sub_block(o, b).is_scalar();
        let outside_zero =
            (o..o + b).all(|r| (0..n).all(|c| (o..o + b).contains(&c) || m.get(r, c).is_zero()));
        block_ok && outside_zero
    })
}

/// Certify that H ∩ H^x ∩ H^y ∩ H^z is central for the block normalizer H,
/// with per-block witnesses assembled into x, y and z the n-cycle (ε = +) or
/// its conjugate S·z·S^{-1} (ε = −).
pub fn verify_th1(
    blocks: &[usize],
    eps: Sign,
    q: u64,
    seed: u64,
    budget: u64,
) -> Result<VerificationReport> {
    let bt = Arc::new(BlockTorus::new(blocks, eps, q)?);
    let h = bt.handle()?;
    let n = bt.n();
    let k = Arc::clone(bt.field());
    let cycle: Vec<usize> = (1..=n).collect();
    let z0 = perm_matrix(&perm_from_cycles(n, &[&cycle]), &k)?;
    let (z, z_label) = match eps {
        Sign::Plus => (z0, "z"),
        Sign::Minus => {
            let (_, s) = build_unitary_d_s(blocks, q)?;
            (&(&s * &z0) * &s.inv()?, "z'")
        }
    };
    if !h.ambient.contains(&z) {
        return Err(Error::ConstructionFailure(format!(
            "{z_label} is not in the ambient group"
        )));
    }
    let blocks_str = blocks
        .iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let mut rep = VerificationReport::new("th1", seed)
        .param("blocks", blocks_str.clone())
        .param("eps", eps.symbol())
        .param("q", q)
        .param("budget", budget);
    rep.instance = Some(format!("GL^{eps}_{n}({q}) blocks ({blocks_str})"));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spent = 0u64;
    while spent < budget {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        let mut per_block_central = true;
        for torus in &bt.tori {
            let w = block_witnesses(torus, q, &mut rng, BLOCK_TRIES.min(budget - spent).max(1))?;
            spent += w.used;
            per_block_central &= w.central;
            xs.push(w.x);
            ys.push(w.y);
        }
        spent += 1;
        let x = Mat::block_diag(&k, &xs);
        let y = Mat::block_diag(&k, &ys);
        let k_xy = intersect_conjugates(&h, &[x.clone(), y.clone()], DEFAULT_ELEMENT_CAP)?;
        let zi = z.inv()?;
        let mut k_all = Vec::new();
        for e in &k_xy {
            if h.contains(&(&(&z * e) * &zi))? {
                k_all.push(e.clone());
            }
        }
        if !is_central(&k_all) {
            continue;
        }
        rep.witness("x", &x);
        rep.witness("y", &y);
        rep.witness(z_label, &z);
        rep.intersection_order = Some(k_all.len() as u64);
        rep.central = Some(true);
        rep.set_data(
            "h_order",
            h.order().map(|o| o.to_string()).unwrap_or_default(),
        );
        rep.set_data("k_xy_order", k_xy.len() as u64);
        rep.set_data("per_block_central", per_block_central);
        rep.set_data(
            "k_xy_block_scalar",
            k_xy.iter().all(|m| is_block_scalar(m, &bt)),
        );
        rep.set_data("conjugators_beyond_identity", 3u64);
        rep.set_data("tuple_size", 4u64);
        rep.set_data("candidates_used", spent);
        return Ok(rep.finish());
    }
    Err(Error::WitnessSearchFailed { seed, budget })
}
