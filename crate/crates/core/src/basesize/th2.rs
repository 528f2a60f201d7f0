use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    brute_base_size, core, intersect_conjugates, is_central, CosetAction, GroupCtx, GroupElem,
    SubgroupHandle, Twisted, WitnessKind, WitnessTuple,
};
use crate::error::{Error, Result};
use crate::gfarith::{Elem, FieldCtx};
use crate::linalg::{perm_from_cycles, perm_matrix, Mat};
use crate::report::VerificationReport;

/// G = GL_n(q) ⋊ ⟨τ⟩ with the parabolic P of 2×2 steps and H = P ∪ P·(xτ).
pub struct Th2Instance {
    pub n: usize,
    pub q: u64,
    pub g: GroupCtx,
    pub p: SubgroupHandle<Mat>,
    pub h: SubgroupHandle<Twisted>,
    /// The antidiagonal permutation matrix.
    pub x: Mat,
}

/// Block upper-triangular with 2×2 diagonal blocks.
fn in_parabolic(m: &Mat) -> bool {
    (0..m.rows()).all(|i| (0..(i / 2) * 2).all(|j| m.get(i, j).is_zero()))
}

fn gl2(k: &std::sync::Arc<FieldCtx>) -> Vec<Mat> {
    let all: Vec<Elem> = k.elements().collect();
    let mut out = Vec::new();
    for &a in &all {
        for &b in &all {
            for &c in &all {
                for &d in &all {
                    if !k.sub(k.mul(a, d), k.mul(b, c)).is_zero() {
                        out.push(Mat::from_rows(k, &[vec![a, b], vec![c, d]]).expect("2x2"));
                    }
                }
            }
        }
    }
    out
}

fn parabolic_order(n: usize, q: u64) -> BigUint {
    let m = (n / 2) as u32;
    let gl2 = BigUint::from((q * q - 1) * (q * q - q));
    num_traits::pow(gl2, m as usize)
        * num_traits::pow(BigUint::from(q), (4 * m * (m - 1) / 2) as usize)
}

/// Every element of P, diagonal blocks outermost.
fn parabolic_elements(k: &std::sync::Arc<FieldCtx>, n: usize) -> Vec<Mat> {
    let blocks = gl2(k);
    let m = n / 2;
    let upper: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i / 2 + 1) * 2..n).map(move |j| (i, j)))
        .collect();
    let qo = k.order();
    let free = qo.pow(upper.len() as u32);
    let mut diag_choices: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..m {
        diag_choices = diag_choices
            .into_iter()
            .flat_map(|p| (0..blocks.len()).map(move |b| [p.clone(), vec![b]].concat()))
            .collect();
    }
    diag_choices
        .par_iter()
        .flat_map_iter(|choice| {
            let base = Mat::block_diag(
                k,
                &choice
                    .iter()
                    .map(|&b| blocks[b].clone())
                    .collect::<Vec<_>>(),
            );
            let upper = upper.clone();
            (0..free).map(move |mut code| {
                let mut mm = base.clone();
                for &(i, j) in &upper {
                    mm.set(i, j, Elem(code % qo));
                    code /= qo;
                }
                mm
            })
        })
        .collect()
}

pub fn build_th2(n: usize, q: u64) -> Result<Th2Instance> {
    if n % 2 == 1 || n == 0 {
        return Err(Error::OddDimension(n));
    }
    if q != 2 && q != 3 {
        return Err(Error::UnsupportedQ(q));
    }
    let g = GroupCtx::linear(n, q)?.with_tau()?;
    let k = g.field.clone();
    let pairs: Vec<Vec<usize>> = (1..=n / 2).map(|i| vec![i, n + 1 - i]).collect();
    let cycles: Vec<&[usize]> = pairs.iter().map(|c| c.as_slice()).collect();
    let x = perm_matrix(&perm_from_cycles(n, &cycles), &k)?;
    let p_order = parabolic_order(n, q);
    let id = Mat::identity(&k, n);
    let p = SubgroupHandle::new(GroupCtx::linear(n, q)?, id.clone(), Vec::new())
        .with_order(p_order.clone())
        .with_membership(in_parabolic);
    let xm = x.clone();
    let mut h = SubgroupHandle::new(
        g.clone(),
        Twisted::plain(id),
        vec![Twisted::twisted(x.clone())],
    )
    .with_order(p_order.clone() * 2u32)
    .with_membership(move |e: &Twisted| {
        if e.tau {
            in_parabolic(&(&e.mat * &xm))
        } else {
            in_parabolic(&e.mat)
        }
    });
    if p_order <= BigUint::from(super::DEFAULT_ELEMENT_CAP / 2) {
        let pe = parabolic_elements(&k, n);
        let mut he: Vec<Twisted> = pe.iter().cloned().map(Twisted::plain).collect();
        he.extend(pe.iter().map(|m| Twisted::twisted(m * &x)));
        h = h.with_elements(he);
    }
    Ok(Th2Instance { n, q, g, p, h, x })
}

fn unit(n: usize, idx: &[usize], coef: &[u64]) -> Vec<u64> {
    let mut v = vec![0; n];
    for (&i, &c) in idx.iter().zip(coef) {
        v[i - 1] = c;
    }
    v
}

/// The matrix whose last two rows are `last` (row n) and `second` (row n−1),
/// completed by standard basis rows with smallest indices first.
fn complete(k: &std::sync::Arc<FieldCtx>, n: usize, last: &[u64], second: &[u64]) -> Result<Mat> {
    let to_row = |v: &[u64]| v.iter().map(|&c| k.from_int(c)).collect::<Vec<Elem>>();
    let mut rows = vec![to_row(second), to_row(last)];
    let mut chosen = Vec::new();
    for j in 0..n {
        if chosen.len() == n - 2 {
            break;
        }
        let mut e = vec![Elem::ZERO; n];
        e[j] = Elem::ONE;
        let mut cand = rows.clone();
        cand.push(e.clone());
        if Mat::from_rows(k, &cand)?.rank() == cand.len() {
            rows.push(e.clone());
            chosen.push(e);
        }
    }
    if chosen.len() != n - 2 {
        return Err(Error::ConstructionFailure("u₁, u₂ are dependent".into()));
    }
    chosen.push(to_row(second));
    chosen.push(to_row(last));
    Mat::from_rows(k, &chosen)
}

fn tail(n: usize, from: usize) -> Vec<usize> {
    (from..=n).collect()
}

/// The z-matrices z, z₁, …, z₄ for q = 3, with coefficient `c` on v₃ in u₂.
fn z_matrices(k: &std::sync::Arc<FieldCtx>, n: usize, c: u64) -> Result<Vec<Mat>> {
    let ones = |idx: Vec<usize>| unit(n, &idx, &vec![1; idx.len()]);
    let u1 = ones([vec![1, 2], tail(n, 5)].concat());
    let mut u2 = ones([vec![1, 3, 4], tail(n, 5)].concat());
    u2[2] = c;
    let specs: Vec<(Vec<u64>, Vec<u64>)> = vec![
        (u1, u2),
        (
            ones([vec![1, 3], tail(n, 5)].concat()),
            ones([vec![1, 2, 4], tail(n, 5)].concat()),
        ),
        (ones(vec![1, 4]), ones(vec![1, 2, 3])),
        (ones(vec![2, 3]), ones(vec![1, 2, 4])),
        (ones(vec![2, 4]), ones(vec![1, 2, 3])),
    ];
    specs.iter().map(|(a, b)| complete(k, n, a, b)).collect()
}

/// The conjugator tuples (x, y, xy[, z_i]) of the construction.
pub fn th2_witnesses(n: usize, q: u64) -> Result<Vec<WitnessTuple>> {
    th2_witnesses_with(n, q, 1)
}

fn th2_witnesses_with(n: usize, q: u64, c: u64) -> Result<Vec<WitnessTuple>> {
    if n % 2 == 1 || n < 4 {
        return Err(Error::OddDimension(n));
    }
    let inst_field = GroupCtx::linear(n, q)?.field;
    let k = &inst_field;
    let pairs: Vec<Vec<usize>> = (1..=n / 2).map(|i| vec![i, n + 1 - i]).collect();
    let cycles: Vec<&[usize]> = pairs.iter().map(|c| c.as_slice()).collect();
    let x = perm_matrix(&perm_from_cycles(n, &cycles), k)?;
    let cyc: Vec<usize> = (1..=n).collect();
    let y = perm_matrix(&perm_from_cycles(n, &[&cyc]), k)?;
    let xy = &x * &y;
    let prefix = vec![x, y, xy];
    if q == 2 {
        return Ok(vec![WitnessTuple {
            conjugators: prefix,
            kind: WitnessKind::Th2,
        }]);
    }
    Ok(z_matrices(k, n, c)?
        .into_iter()
        .map(|z| WitnessTuple {
            conjugators: [prefix.clone(), vec![z]].concat(),
            kind: WitnessKind::Th2,
        })
        .collect())
}

fn is_diagonal_twisted(set: &[Twisted]) -> bool {
    set.iter().all(|e| !e.tau && e.mat.is_diagonal())
}

/// Regularity of the TH2 tuples and, for q = 3, pairwise distinctness of
/// their orbits. For q = 2 the tuple (1, x, y, xy) is checked; if it is not
/// regular the base size is computed exhaustively on the coset action.
pub fn verify_th2(
    n: usize,
    q: u64,
    all_pairs: bool,
    seed: u64,
    budget: u64,
    cap: u64,
) -> Result<VerificationReport> {
    let inst = build_th2(n, q)?;
    let claim = if q == 3 { "th2-reg5" } else { "th2-b4" };
    let mut rep = VerificationReport::new(claim, seed)
        .param("n", n as u64)
        .param("q", q)
        .param("all_pairs", all_pairs);
    rep.instance = Some(format!("GL_{n}({q}) ⋊ <τ>, H = N(P)"));
    let h = &inst.h;
    let p_order = inst.p.order().expect("known");
    let h_order = h.order().expect("known");
    let index = inst.g.order() / &h_order;
    rep.set_data("p_order", p_order.to_string());
    rep.set_data("h_order", h_order.to_string());
    rep.set_data("index", index.to_string());

    let tuples = th2_witnesses(n, q)?;
    let prefix: Vec<Twisted> = tuples[0].conjugators[..3]
        .iter()
        .cloned()
        .map(Twisted::plain)
        .collect();
    let k_xy = intersect_conjugates(h, &prefix[..2], cap)?;
    let inv_xy: Twisted = prefix[2].inverse();
    let k: Vec<Twisted> = k_xy
        .par_iter()
        .filter(|e| {
            h.contains(&prefix[2].compose(e).compose(&inv_xy))
                .unwrap_or(false)
        })
        .cloned()
        .collect();
    rep.set_data("k_xy_order", k_xy.len() as u64);
    rep.set_data("k_order", k.len() as u64);
    let k_gl: Vec<Twisted> = k.iter().filter(|e| !e.tau).cloned().collect();
    rep.set_data("k_diagonal", is_diagonal_twisted(&k));
    rep.set_data("k_gl_part_diagonal", is_diagonal_twisted(&k_gl));
    rep.set_data("k_tau_coset_elements", (k.len() - k_gl.len()) as u64);
    for (label, m) in ["x", "y", "xy"].iter().zip(&tuples[0].conjugators) {
        rep.witness(label, m);
    }

    let g_gens: Vec<Twisted> = {
        let mut v: Vec<Twisted> = GroupCtx::linear(n, q)?
            .generators()?
            .into_iter()
            .map(Twisted::plain)
            .collect();
        v.push(Twisted::twisted(Mat::identity(&inst.g.field, n)));
        v
    };
    let core_len = std::cell::OnceCell::new();
    let regular_from = |base: &[Twisted], ws: &[Twisted]| -> Result<(bool, usize)> {
        let mut cur = base.to_vec();
        for w in ws {
            let wi = w.inverse();
            cur = cur
                .into_par_iter()
                .filter(|e| h.contains(&w.compose(e).compose(&wi)).unwrap_or(false))
                .collect();
        }
        if is_central(&cur) {
            return Ok((true, cur.len()));
        }
        let c = match core_len.get() {
            Some(c) => *c,
            None => {
                let c = core(h, &g_gens, cap)?.len();
                let _ = core_len.set(c);
                c
            }
        };
        Ok((c == cur.len(), cur.len()))
    };
    let regular = |ws: &[Twisted]| regular_from(&k, ws);

    if q == 2 {
        let (ok, order) = regular(&[])?;
        rep.intersection_order = Some(order as u64);
        rep.central = Some(is_central(&k));
        rep.set_data("prefix_tuple_regular", ok);
        if ok {
            rep.set_data("tuple_size", 4u64);
            return Ok(rep.finish());
        }
        // Decide the question exhaustively on the permutation image.
        let action = CosetAction::new(h, &g_gens, cap, cap)?;
        let found = brute_base_size(&action, 5)?;
        let b = found.as_ref().map(|r| r.base_size);
        rep.set_data("degree", action.degree() as u64);
        rep.set_data(
            "exhaustive_base_size",
            b.map_or(serde_json::Value::Null, |b| (b as u64).into()),
        );
        match found {
            Some(r) if r.base_size <= 4 => {
                for (i, &pt) in r.tuple.iter().enumerate() {
                    rep.witness(&format!("g{}", i + 1), &action.reps[pt].mat);
                }
                rep.set_data("tuple_size", r.base_size as u64);
                rep.intersection_order = Some(1);
                rep.central = Some(true);
            }
            _ => {
                rep.central = Some(false);
                rep.counterexample(serde_json::json!({
                    "reason": "no regular 4-tuple exists",
                    "exhaustive_base_size": b,
                }));
            }
        }
        return Ok(rep.finish());
    }

    let same_orbit = |zi: &Twisted, zj: &Twisted| -> bool {
        let zj_inv = zj.inverse();
        k.par_iter()
            .any(|t| h.contains(&zi.compose(t).compose(&zj_inv)).unwrap_or(false))
    };
    let zs: Vec<Twisted> = th2_witnesses(n, q)?
        .into_iter()
        .map(|t| Twisted::plain(t.conjugators[3].clone()))
        .collect();
    let alt = th2_witnesses_with(n, q, 2)?;
    let (alt_ok, alt_order) = regular(&[Twisted::plain(alt[0].conjugators[3].clone())])?;
    rep.set_data("z_with_coefficient_2_regular", alt_ok);
    rep.set_data("z_with_coefficient_2_intersection_order", alt_order as u64);
    let mut orders = Vec::new();
    let mut all_regular = true;
    for (i, z) in zs.iter().enumerate() {
        let (ok, order) = regular(std::slice::from_ref(z))?;
        orders.push(order as u64);
        all_regular &= ok;
        rep.witness(
            &format!("z{}", if i == 0 { String::new() } else { i.to_string() }),
            &z.mat,
        );
        if !ok {
            rep.counterexample(serde_json::json!({ "tuple": i, "reason": "not regular" }));
        }
    }
    rep.set_data("tuple_intersection_orders", orders.clone());
    rep.set_data("all_regular", all_regular);
    rep.intersection_order = orders.first().copied();
    rep.central = Some(all_regular);
    let pair_list: Vec<(usize, usize)> = if all_pairs {
        (0..zs.len())
            .flat_map(|i| (i + 1..zs.len()).map(move |j| (i, j)))
            .collect()
    } else {
        (1..zs.len()).map(|j| (0, j)).collect()
    };
    let mut pairs = Vec::new();
    for (i, j) in pair_list {
        let same = same_orbit(&zs[i], &zs[j]);
        pairs.push((i, j, !same));
        if same {
            rep.counterexample(serde_json::json!({ "pair": [i, j], "reason": "same orbit" }));
        }
    }
    rep.distinct_pairs = Some(pairs);

    // Independently of the z_i above, look for five regular completions of
    // the prefix lying in pairwise distinct orbits.
    let gl = GroupCtx::linear(n, q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<Twisted> = Vec::new();
    let mut tries = 0;
    while found.len() < 5 && tries < budget {
        tries += 1;
        let w = Twisted::plain(gl.random_element(&mut rng)?);
        if regular(std::slice::from_ref(&w))?.0 && found.iter().all(|f| !same_orbit(f, &w)) {
            found.push(w);
        }
    }
    let texts: Vec<String> = found
        .iter()
        .map(|w| w.mat.to_text())
        .collect::<Result<_>>()?;
    rep.set_data("search_regular_completions", found.len() as u64);
    rep.set_data("search_completion_witnesses", texts);
    rep.set_data("search_tries", tries);
    Ok(rep.finish())
}
