//! Univariate polynomials over an arbitrary [`FieldCtx`].

use crate::gfarith::{Elem, FieldCtx};

/// Little-endian coefficients with no trailing zeros; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    pub coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }
    pub fn one() -> Poly {
        Poly {
            coeffs: vec![Elem::ONE],
        }
    }
    pub fn constant(c: Elem) -> Poly {
        Poly::new(vec![c])
    }
    /// x - c
    pub fn linear(ctx: &FieldCtx, c: Elem) -> Poly {
        Poly::new(vec![ctx.neg(c), Elem::ONE])
    }
    pub fn x() -> Poly {
        Poly {
            coeffs: vec![Elem::ZERO, Elem::ONE],
        }
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn add(&self, ctx: &FieldCtx, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| ctx.add(self.coeff(i), o.coeff(i))).collect())
    }
    pub fn sub(&self, ctx: &FieldCtx, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| ctx.sub(self.coeff(i), o.coeff(i))).collect())
    }
    pub fn scale(&self, ctx: &FieldCtx, c: Elem) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
    }
    pub fn mul(&self, ctx: &FieldCtx, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder; panics on division by the zero polynomial.
    pub fn divrem(&self, ctx: &FieldCtx, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = ctx.inv(d.lead()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Elem::ZERO; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = ctx.mul(r[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            q[top - dd] = c;
            for (k, &dk) in d.coeffs.iter().enumerate() {
                let idx = top - dd + k;
                r[idx] = ctx.sub(r[idx], ctx.mul(c, dk));
            }
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, ctx: &FieldCtx, d: &Poly) -> Poly {
        self.divrem(ctx, d).1
    }

    pub fn monic(&self, ctx: &FieldCtx) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = ctx.inv(self.lead()).expect("nonzero lead");
        self.scale(ctx, inv)
    }

    pub fn gcd(&self, ctx: &FieldCtx, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(ctx, &b);
            a = b;
            b = r;
        }
        a.monic(ctx)
    }

    /// self^e mod m.
    pub fn powmod(&self, ctx: &FieldCtx, mut e: u64, m: &Poly) -> Poly {
        let mut acc = Poly::one().rem(ctx, m);
        let mut b = self.rem(ctx, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ctx, &b).rem(ctx, m);
            }
            b = b.mul(ctx, &b).rem(ctx, m);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, ctx: &FieldCtx, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
    }

    /// Rabin's test over GF(|ctx|). Constants are not irreducible.
    pub fn is_irreducible(&self, ctx: &FieldCtx) -> bool {
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let m = self.monic(ctx);
        let q = ctx.order();
        let mut frob = Vec::with_capacity(d);
        let mut cur = Poly::x();
        for _ in 0..d {
            cur = cur.powmod(ctx, q, &m);
            frob.push(cur.clone());
        }
        if frob[d - 1] != Poly::x() {
            return false;
        }
        num_prime::nt_funcs::factorize64(d as u64)
            .into_keys()
            .all(|ell| {
                let h = frob[d / ell as usize - 1].sub(ctx, &Poly::x());
                m.gcd(ctx, &h).degree() == Some(0)
            })
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Elem::ONE
    }
}
