use std::sync::Arc;

use super::{conj_base, Mat};
use crate::error::{Error, Result};
use crate::gfarith::{Elem, FieldCtx};

/// A nondegenerate Hermitian form on GF(q²)^n, B(u, v) = u · G · conj(v)^T.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianForm {
    gram: Mat,
}

impl HermitianForm {
    pub fn new(gram: Mat) -> Result<HermitianForm> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch(
                "Gram matrix must be square".into(),
            ));
        }
        if gram.conj_transpose()? != gram {
            return Err(Error::InvalidInput("Gram matrix is not Hermitian".into()));
        }
        if gram.rank() < gram.rows() {
            return Err(Error::InvalidInput("Gram matrix is degenerate".into()));
        }
        Ok(HermitianForm { gram })
    }

    pub fn identity(ctx: &Arc<FieldCtx>, n: usize) -> Result<HermitianForm> {
        HermitianForm::new(Mat::identity(ctx, n))
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.gram.ctx()
    }

    /// B(u, v).
    pub fn eval(&self, u: &[Elem], v: &[Elem]) -> Elem {
        let k = &**self.ctx();
        let q = conj_base(k).expect("form over GF(q^2)");
        let ug = self.gram.apply_row(u);
        ug.iter().zip(v).fold(Elem::ZERO, |acc, (&a, &b)| {
            acc_add(k, acc, a, k.frobenius(b, q, 1).expect("valid base"))
        })
    }

    /// A · G · conj(A)^T == G.
    pub fn preserves(&self, a: &Mat) -> Result<bool> {
        if a.rows() != self.dim() || a.cols() != self.dim() {
            return Err(Error::DimensionMismatch(
                "matrix size differs from form".into(),
            ));
        }
        Ok(&(a * &self.gram) * &a.conj_transpose()? == self.gram)
    }

    /// A matrix C whose rows form an orthonormal basis, so C·G·conj(C)^T = I.
    /// `start` lists the vectors (as rows) the construction draws from in order;
    /// pass the identity for the canonical choice.
    pub fn orthonormal_basis_from(&self, start: &Mat) -> Result<Mat> {
        let k = Arc::clone(self.ctx());
        let q = conj_base(&k)?;
        let n = self.dim();
        let mut span: Vec<Vec<Elem>> = (0..start.rows()).map(|i| start.row(i).to_vec()).collect();
        let mut out: Vec<Vec<Elem>> = Vec::with_capacity(n);
        while out.len() < n {
            let v = self.anisotropic_in(&span).ok_or_else(|| {
                Error::ConstructionFailure("no anisotropic vector in span".into())
            })?;
            let norm = self.eval(&v, &v);
            // find c with c^(q+1) = norm^{-1}; norm lies in GF(q)^×
            let target = k.inv(norm)?;
            let l = k.log(target)?;
            if l % (q + 1) != 0 {
                return Err(Error::ConstructionFailure("norm outside GF(q)".into()));
            }
            let c = k.theta_pow(l / (q + 1));
            let v: Vec<Elem> = v.iter().map(|&x| k.mul(x, c)).collect();
            let projected: Vec<Vec<Elem>> = span
                .iter()
                .map(|w| {
                    let coef = self.eval(w, &v);
                    w.iter()
                        .zip(&v)
                        .map(|(&a, &b)| k.sub(a, k.mul(coef, b)))
                        .collect()
                })
                .collect();
            span = row_basis(&k, projected);
            out.push(v);
        }
        Mat::from_rows(&k, &out)
    }

    pub fn orthonormal_basis(&self) -> Result<Mat> {
        self.orthonormal_basis_from(&Mat::identity(self.ctx(), self.dim()))
    }

    fn anisotropic_in(&self, span: &[Vec<Elem>]) -> Option<Vec<Elem>> {
        let k = &**self.ctx();
        if let Some(v) = span.iter().find(|v| !self.eval(v, v).is_zero()) {
            return Some(v.clone());
        }
        for (i, u) in span.iter().enumerate() {
            for w in &span[i + 1..] {
                for c in k.elements().skip(1) {
                    let v: Vec<Elem> = u
                        .iter()
                        .zip(w)
                        .map(|(&a, &b)| k.add(a, k.mul(c, b)))
                        .collect();
                    if !self.eval(&v, &v).is_zero() {
                        return Some(v);
                    }
                }
            }
        }
        None
    }
}

fn acc_add(k: &FieldCtx, acc: Elem, a: Elem, b: Elem) -> Elem {
    k.add(acc, k.mul(a, b))
}

/// A basis for the row space of the given vectors.
fn row_basis(k: &Arc<FieldCtx>, vecs: Vec<Vec<Elem>>) -> Vec<Vec<Elem>> {
    let mut basis: Vec<Vec<Elem>> = Vec::new();
    for v in vecs {
        let mut cand = basis.clone();
        cand.push(v.clone());
        let m = Mat::from_rows(k, &cand).expect("rectangular");
        if m.rank() == cand.len() {
            basis.push(v);
        }
    }
    basis
}

/// A · form · conj(A)^T == form.
pub fn unitary_member(a: &Mat, form: &HermitianForm) -> Result<bool> {
    form.preserves(a)
}
