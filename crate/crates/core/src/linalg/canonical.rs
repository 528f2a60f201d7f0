use std::sync::Arc;

use super::{Mat, Poly};
use crate::gfarith::{Elem, FieldCtx};

/// Rational canonical form data of a square matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Nonconstant invariant factors d_1 | d_2 | … (monic).
    pub invariant_factors: Vec<Poly>,
    pub min_poly: Poly,
    pub rcf: Mat,
}

/// Companion matrix of a monic polynomial of degree d ≥ 1: row i maps to
/// e_{i+1}, the last row holds -a_0, …, -a_{d-1}.
pub fn companion(ctx: &Arc<FieldCtx>, f: &Poly) -> Mat {
    let d = f.degree().expect("nonzero polynomial");
    let mut m = Mat::zeros(ctx, d, d);
    for i in 0..d.saturating_sub(1) {
        m.set(i, i + 1, Elem::ONE);
    }
    for j in 0..d {
        m.set(d - 1, j, ctx.neg(f.coeff(j)));
    }
    m
}

impl Mat {
    /// Characteristic polynomial det(xI - A) via Hessenberg reduction.
    pub fn charpoly(&self) -> Poly {
        assert!(
            self.is_square(),
            "characteristic polynomial of a non-square matrix"
        );
        let k = &**self.ctx();
        let n = self.rows();
        let mut h: Vec<Vec<Elem>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| !h[i][j].is_zero()) else {
                continue;
            };
            if piv != j + 1 {
                h.swap(piv, j + 1);
                for row in h.iter_mut() {
                    row.swap(piv, j + 1);
                }
            }
            let inv = k.inv(h[j + 1][j]).expect("nonzero pivot");
            for i in j + 2..n {
                let u = k.mul(h[i][j], inv);
                if u.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let s = k.mul(u, h[j + 1][c]);
                    h[i][c] = k.sub(h[i][c], s);
                }
                for row in h.iter_mut() {
                    let s = k.mul(u, row[i]);
                    row[j + 1] = k.add(row[j + 1], s);
                }
            }
        }
        let mut p: Vec<Poly> = vec![Poly::one()];
        for m in 0..n {
            let mut next = Poly::linear(k, h[m][m]).mul(k, &p[m]);
            let mut t = Elem::ONE;
            for i in (0..m).rev() {
                t = k.mul(t, h[i + 1][i]);
                if t.is_zero() {
                    break;
                }
                let c = k.mul(t, h[i][m]);
                next = next.sub(k, &p[i].scale(k, c));
            }
            p.push(next);
        }
        p.pop().unwrap()
    }

    /// True iff some proper nonzero subspace is invariant under v ↦ vA,
    /// decided by reducibility of the characteristic polynomial.
    pub fn has_invariant_subspace(&self) -> bool {
        self.rows() >= 2 && !self.charpoly().is_irreducible(self.ctx())
    }

    /// Invariant factors from the Smith normal form of xI - A over F[x].
    pub fn invariant_factors(&self) -> Vec<Poly> {
        let k = &**self.ctx();
        let n = self.rows();
        let mut m: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let a = k.neg(self.get(i, j));
                        if i == j {
                            Poly::new(vec![a, Elem::ONE])
                        } else {
                            Poly::constant(a)
                        }
                    })
                    .collect()
            })
            .collect();

        for t in 0..n {
            loop {
                let mut best: Option<(usize, usize, usize)> = None;
                for i in t..n {
                    for j in t..n {
                        if let Some(d) = m[i][j].degree() {
                            if best.is_none_or(|b| d < b.2) {
                                best = Some((i, j, d));
                            }
                        }
                    }
                }
                let Some((pi, pj, _)) = best else { break };
                m.swap(t, pi);
                for row in m.iter_mut() {
                    row.swap(t, pj);
                }
                let piv = m[t][t].clone();
                let mut clean = true;
                for i in t + 1..n {
                    if m[i][t].is_zero() {
                        continue;
                    }
                    let (q, r) = m[i][t].divrem(k, &piv);
                    for c in t..n {
                        let s = q.mul(k, &m[t][c]);
                        m[i][c] = m[i][c].sub(k, &s);
                    }
                    if !r.is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..n {
                    if m[t][j].is_zero() {
                        continue;
                    }
                    let (q, r) = m[t][j].divrem(k, &piv);
                    for row in m.iter_mut().skip(t) {
                        let s = q.mul(k, &row[t]);
                        row[j] = row[j].sub(k, &s);
                    }
                    if !r.is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| !m[i][j].rem(k, &piv).is_zero()));
                match bad {
                    Some(i) => {
                        for c in t..n {
                            let s = m[i][c].clone();
                            m[t][c] = m[t][c].add(k, &s);
                        }
                    }
                    None => break,
                }
            }
            m[t][t] = m[t][t].monic(k);
        }
        let mut diag: Vec<Poly> = (0..n)
            .map(|i| m[i][i].clone())
            .filter(|p| p.degree() != Some(0))
            .collect();
        diag.sort_by_key(|p| p.degree());
        diag
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        let ctx = self.ctx();
        let invariant_factors = self.invariant_factors();
        let blocks: Vec<Mat> = invariant_factors
            .iter()
            .map(|f| companion(ctx, f))
            .collect();
        let rcf = Mat::block_diag(ctx, &blocks);
        let min_poly = invariant_factors.last().cloned().unwrap_or_else(Poly::one);
        CanonicalForm {
            invariant_factors,
            min_poly,
            rcf,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfarith::build_field;

    #[test]
    fn scalar_and_singer() {
        let k = build_field(3, 1).unwrap();
        let c = Mat::scalar(&k, 3, Elem(2));
        let cf = c.canonical_form();
        assert_eq!(cf.min_poly, Poly::linear(&k, Elem(2)));
        assert_eq!(cf.rcf, c);

        let k2 = build_field(2, 1).unwrap();
        let s = Mat::from_ints(&k2, &[&[0, 1], &[1, 1]]);
        let cf = s.canonical_form();
        assert_eq!(cf.min_poly, Poly::new(vec![Elem(1), Elem(1), Elem(1)]));
        assert_eq!(cf.rcf, s);
        assert!(!s.has_invariant_subspace());
    }

    #[test]
    fn diag_is_reducible() {
        let k = build_field(3, 1).unwrap();
        let d = Mat::from_ints(&k, &[&[1, 0], &[0, 2]]);
        assert!(d.has_invariant_subspace());
        assert!(!d.is_scalar());
    }

    #[test]
    fn charpoly_matches_invariant_factor_product() {
        let k = build_field(5, 1).unwrap();
        let a = Mat::from_ints(
            &k,
            &[&[1, 2, 0, 3], &[0, 1, 4, 0], &[2, 0, 0, 1], &[1, 1, 1, 1]],
        );
        let prod = a
            .invariant_factors()
            .iter()
            .fold(Poly::one(), |acc, f| acc.mul(&k, f));
        assert_eq!(prod, a.charpoly());
    }
}
