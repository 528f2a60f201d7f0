//! Block-diagonal products of Singer normalizers and the basis change that
//! relates the identity Hermitian form to the mixed block form.

use std::sync::Arc;

use num_bigint::BigUint;

use super::{FormChoice, TorusCtx};
use crate::basesize::{GroupCtx, SubgroupHandle};
use crate::error::{Error, Result};
use crate::gfarith::{build_field, Elem, FieldCtx};
use crate::linalg::{HermitianForm, Mat};
use crate::{prime_power, Sign};

/// H = Π (Sin_{n_i}^ε(q) ⋊ ⟨φ_i⟩), placed block-diagonally in input order.
pub struct BlockTorus {
    pub eps: Sign,
    pub q: u64,
    pub blocks: Vec<usize>,
    pub tori: Vec<TorusCtx>,
    field: Arc<FieldCtx>,
    offsets: Vec<usize>,
}

impl BlockTorus {
    pub fn new(blocks: &[usize], eps: Sign, q: u64) -> Result<BlockTorus> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::InvalidInput("blocks must be positive".into()));
        }
        let tori = blocks
            .iter()
            .map(|&ni| {
                let choice = if ni == 2 {
                    FormChoice::Native
                } else {
                    FormChoice::Identity
                };
                TorusCtx::new(eps, ni, q, choice)
            })
            .collect::<Result<Vec<_>>>()?;
        let field = Arc::clone(tori[0].field());
        let offsets = blocks
            .iter()
            .scan(0, |acc, &b| {
                let o = *acc;
                *acc += b;
                Some(o)
            })
            .collect();
        Ok(BlockTorus {
            eps,
            q,
            blocks: blocks.to_vec(),
            tori,
            field,
            offsets,
        })
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    /// Place a block-sized matrix at block i, identity elsewhere.
    pub fn embed(&self, i: usize, m: &Mat) -> Mat {
        let parts: Vec<Mat> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(j, &b)| {
                if j == i {
                    m.clone()
                } else {
                    Mat::identity(&self.field, b)
                }
            })
            .collect();
        Mat::block_diag(&self.field, &parts)
    }

    pub fn generators(&self) -> Vec<Mat> {
        let mut gens = Vec::new();
        for (i, t) in self.tori.iter().enumerate() {
            gens.push(self.embed(i, t.generator()));
            if t.n() > 1 {
                gens.push(self.embed(i, t.phi()));
            }
        }
        gens
    }

    pub fn order(&self) -> BigUint {
        self.tori
            .iter()
            .map(|t| BigUint::from(t.normalizer_order()))
            .product()
    }

    /// The ambient group: GL_n(q), or GU_n(q) for the mixed block form.
    pub fn ambient(&self) -> Result<GroupCtx> {
        match self.eps {
            Sign::Plus => GroupCtx::linear(self.n(), self.q),
            Sign::Minus => GroupCtx::unitary(self.q, block_form(&self.blocks, self.q)?),
        }
    }

    /// True iff m is block-diagonal with every block in its normalizer.
    pub fn contains(&self, m: &Mat) -> bool {
        let n = self.n();
        if m.rows() != n || m.cols() != n {
            return false;
        }
        for (i, &bi) in self.blocks.iter().enumerate() {
            let oi = self.offsets[i];
            for r in oi..oi + bi {
                for c in 0..n {
                    if (c < oi || c >= oi + bi) && !m.get(r, c).is_zero() {
                        return false;
                    }
                }
            }
            if self.tori[i].coords(&m.sub_block(oi, bi)).is_err() {
                return false;
            }
        }
        true
    }

    /// All elements, as block-wise products in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<Mat> {
        let per_block: Vec<Vec<Mat>> = self.tori.iter().map(|t| t.enumerate_matrices()).collect();
        let mut out: Vec<Vec<Mat>> = vec![Vec::new()];
        for list in &per_block {
            let mut next = Vec::with_capacity(out.len() * list.len());
            for prefix in &out {
                for m in list {
                    let mut p = prefix.clone();
                    p.push(m.clone());
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|parts| Mat::block_diag(&self.field, &parts))
            .collect()
    }

    /// A handle with generators, order, element list and pattern membership.
    pub fn handle(self: &Arc<Self>) -> Result<SubgroupHandle> {
        let ambient = self.ambient()?;
        let me = Arc::clone(self);
        let handle = SubgroupHandle::new(
            ambient,
            Mat::identity(&self.field, self.n()),
            self.generators(),
        )
        .with_order(self.order())
        .with_membership(move |m| me.contains(m));
        Ok(handle)
    }
}

/// blockdiag(J, …) with J = [[0,1],[1,0]] on size-2 blocks, identity elsewhere, over GF(q²).
pub fn block_form(blocks: &[usize], q: u64) -> Result<HermitianForm> {
    let k = unitary_field(q)?;
    let parts: Vec<Mat> = blocks
        .iter()
        .map(|&b| {
            if b == 2 {
                Mat::from_ints(&k, &[&[0, 1], &[1, 0]])
            } else {
                Mat::identity(&k, b)
            }
        })
        .collect();
    HermitianForm::new(Mat::block_diag(&k, &parts))
}

/// The handle for H of the given block shape.
pub fn build_block_h(blocks: &[usize], eps: Sign, q: u64) -> Result<SubgroupHandle> {
    Arc::new(BlockTorus::new(blocks, eps, q)?).handle()
}

fn unitary_field(q: u64) -> Result<Arc<FieldCtx>> {
    let (p, f) = prime_power(q)
        .ok_or_else(|| Error::InvalidInput(format!("q = {q} is not a prime power")))?;
    build_field(p, 2 * f)
}

/// D with D·conj(D)^T = [[0,1],[1,0]] over GF(q²), one per size-2 block, and
/// S = blockdiag(D on size-2 blocks, identity elsewhere).
pub fn build_unitary_d_s(blocks: &[usize], q: u64) -> Result<(Vec<Mat>, Mat)> {
    let k = unitary_field(q)?;
    let d = unitary_d(&k, q)?;
    let ds: Vec<Mat> = blocks
        .iter()
        .filter(|&&b| b == 2)
        .map(|_| d.clone())
        .collect();
    let parts: Vec<Mat> = blocks
        .iter()
        .map(|&b| {
            if b == 2 {
                d.clone()
            } else {
                Mat::identity(&k, b)
            }
        })
        .collect();
    Ok((ds, Mat::block_diag(&k, &parts)))
}

fn unitary_d(k: &Arc<FieldCtx>, q: u64) -> Result<Mat> {
    let one = Elem::ONE;
    let d = if k.p() == 2 {
        let beta = k.theta_pow(q - 1);
        let s = k.inv(k.add(beta, one))?;
        let a = s;
        let b = k.mul(beta, s);
        Mat::from_rows(k, &[vec![a, b], vec![b, a]])?
    } else {
        let alpha = k.theta_pow((q - 1) / 2);
        let half = k.inv(k.from_int(2))?;
        let a = k.mul(half, k.add(one, alpha));
        let b = k.mul(half, k.sub(one, alpha));
        Mat::from_rows(k, &[vec![a, b], vec![b, a]])?
    };
    let j = Mat::from_ints(k, &[&[0, 1], &[1, 0]]);
    if &d * &d.conj_transpose()? != j {
        return Err(Error::ConstructionFailure(
            "D·conj(D)^T differs from J".into(),
        ));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_orders() {
        assert_eq!(
            BlockTorus::new(&[2, 2], Sign::Plus, 3).unwrap().order(),
            BigUint::from(256u32)
        );
        assert_eq!(
            BlockTorus::new(&[3, 1], Sign::Plus, 2).unwrap().order(),
            BigUint::from(21u32)
        );
        let bt = Arc::new(BlockTorus::new(&[2, 2], Sign::Minus, 2).unwrap());
        let elems = bt.elements();
        let h = bt.handle().unwrap();
        let form = h.ambient.form.clone().unwrap();
        assert!(elems
            .iter()
            .all(|m| form.preserves(m).unwrap() && h.contains(m).unwrap()));
    }

    #[test]
    fn d_matrices() {
        for q in [2, 3, 4, 5] {
            let (ds, s) = build_unitary_d_s(&[2, 1], q).unwrap();
            assert_eq!(ds.len(), 1);
            assert_eq!(s.rows(), 3);
        }
        let (ds, s) = build_unitary_d_s(&[3, 1], 3).unwrap();
        assert!(ds.is_empty() && s.is_identity());
    }
}
