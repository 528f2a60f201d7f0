//! A field F viewed as a vector space over a subfield K with a chosen basis.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gfarith::{build_field, Elem, Embedding, FieldCtx};
use crate::linalg::Mat;

pub(crate) struct FieldModel {
    pub k: Arc<FieldCtx>,
    pub big: Arc<FieldCtx>,
    pub emb: Embedding,
    pub basis: Vec<Elem>,
    /// Inverse of the GF(p)-matrix whose rows are the digits of b_i·ι(θ_K)^l.
    solve: Mat,
}

impl FieldModel {
    pub fn new(k: &Arc<FieldCtx>, big: &Arc<FieldCtx>, basis: Vec<Elem>) -> Result<FieldModel> {
        let emb = Embedding::new(k, big)?;
        let prime = build_field(k.p(), 1)?;
        let fk = k.f() as usize;
        let dim = (big.f() / k.f()) as usize;
        if basis.len() != dim {
            return Err(Error::ConstructionFailure(
                "basis has the wrong length".into(),
            ));
        }
        let img = emb.image_of_theta();
        let mut rows = Vec::with_capacity(dim * fk);
        for &b in &basis {
            let mut cur = b;
            for _ in 0..fk {
                rows.push(big.digits(cur).into_iter().map(Elem).collect::<Vec<_>>());
                cur = big.mul(cur, img);
            }
        }
        let solve = Mat::from_rows(&prime, &rows)?
            .inv()
            .map_err(|_| Error::ConstructionFailure("basis is not linearly independent".into()))?;
        Ok(FieldModel {
            k: Arc::clone(k),
            big: Arc::clone(big),
            emb,
            basis,
            solve,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of v in K^dim.
    pub fn coords(&self, v: Elem) -> Vec<Elem> {
        let d: Vec<Elem> = self.big.digits(v).into_iter().map(Elem).collect();
        let c = self.solve.apply_row(&d);
        let fk = self.k.f() as usize;
        c.chunks(fk)
            .map(|ch| {
                self.k
                    .from_digits(&ch.iter().map(|e| e.0).collect::<Vec<_>>())
            })
            .collect()
    }

    pub fn from_coords(&self, c: &[Elem]) -> Elem {
        c.iter()
            .zip(&self.basis)
            .fold(Elem::ZERO, |acc, (&ci, &b)| {
                self.big.add(acc, self.big.mul(self.emb.embed(ci), b))
            })
    }

    /// Matrix of a K-linear map F → F: row i holds coords(ψ(b_i)).
    pub fn matrix_of(&self, psi: impl Fn(Elem) -> Elem) -> Result<Mat> {
        let rows: Vec<Vec<Elem>> = self.basis.iter().map(|&b| self.coords(psi(b))).collect();
        Mat::from_rows(&self.k, &rows)
    }

    /// Tr_{F/K}(x), returned as an element of K.
    pub fn trace(&self, x: Elem) -> Result<Elem> {
        let qk = self.k.order();
        let mut acc = Elem::ZERO;
        let mut cur = x;
        for _ in 0..self.dim() {
            acc = self.big.add(acc, cur);
            cur = self.big.pow_u64(cur, qk);
        }
        self.emb
            .restrict(acc)?
            .ok_or_else(|| Error::ConstructionFailure("trace left the subfield".into()))
    }
}

/// Power basis 1, ω, …, ω^{d-1} with ω = θ of the big field.
pub(crate) fn power_basis(big: &FieldCtx, dim: usize) -> Vec<Elem> {
    (0..dim as u64).map(|i| big.theta_pow(i)).collect()
}

/// A model over the pair F ⊕ F with independent bases on each copy.
pub(crate) struct PairModel {
    pub first: FieldModel,
    pub second: FieldModel,
}

impl PairModel {
    pub fn basis(&self) -> Vec<(Elem, Elem)> {
        let a = self.first.basis.iter().map(|&b| (b, Elem::ZERO));
        let b = self.second.basis.iter().map(|&b| (Elem::ZERO, b));
        a.chain(b).collect()
    }

    pub fn coords(&self, v: (Elem, Elem)) -> Vec<Elem> {
        let mut c = self.first.coords(v.0);
        c.extend(self.second.coords(v.1));
        c
    }

    pub fn matrix_of(&self, psi: impl Fn((Elem, Elem)) -> (Elem, Elem)) -> Result<Mat> {
        let rows: Vec<Vec<Elem>> = self
            .basis()
            .into_iter()
            .map(|b| self.coords(psi(b)))
            .collect();
        Mat::from_rows(&self.first.k, &rows)
    }
}
