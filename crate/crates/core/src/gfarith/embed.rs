use std::sync::Arc;

use super::{Elem, FieldCtx};
use crate::error::{Error, Result};

/// The embedding of GF(p^a) into GF(p^b) for a | b.
///
/// The image of the subfield's θ is a root of the subfield's defining
/// polynomial inside the larger field, which makes the map a ring
/// homomorphism. It is the smallest power θ_big^{k·u}, k = (|F|-1)/(|K|-1),
/// with gcd(u, |K|-1) = 1 that is such a root.
pub struct Embedding {
    sub: Arc<FieldCtx>,
    target: Arc<FieldCtx>,
    twist: u64,
    theta_powers: Vec<Elem>,
}

impl Embedding {
    pub fn new(sub: &Arc<FieldCtx>, target: &Arc<FieldCtx>) -> Result<Embedding> {
        if sub.p() != target.p() || !target.f().is_multiple_of(sub.f()) {
            return Err(Error::NotASubfield {
                sub: sub.order(),
                target: target.order(),
            });
        }
        let ks = sub.order() - 1;
        let stride = (target.order() - 1) / ks;
        let base = target.theta_pow(stride);
        let mut chosen = None;
        for u in 1..=ks {
            if num_integer::gcd(u, ks) != 1 {
                continue;
            }
            let cand = target.pow_u64(base, u);
            if eval_prime_poly(target, sub.modulus(), cand).is_zero() {
                chosen = Some((u, cand));
                break;
            }
        }
        let (twist, img) = chosen.ok_or_else(|| {
            Error::ConstructionFailure("subfield modulus has no root in target".into())
        })?;
        let mut theta_powers = Vec::with_capacity(sub.f() as usize);
        let mut cur = Elem::ONE;
        for _ in 0..sub.f() {
            theta_powers.push(cur);
            cur = target.mul(cur, img);
        }
        Ok(Embedding {
            sub: Arc::clone(sub),
            target: Arc::clone(target),
            twist,
            theta_powers,
        })
    }

    pub fn sub(&self) -> &Arc<FieldCtx> {
        &self.sub
    }
    pub fn target(&self) -> &Arc<FieldCtx> {
        &self.target
    }

    /// The exponent u with image(θ_sub) = θ_target^{k·u}.
    pub fn twist(&self) -> u64 {
        self.twist
    }

    /// Image of θ_sub.
    pub fn image_of_theta(&self) -> Elem {
        if self.sub.f() == 1 {
            // In a prime field θ is an integer; its image is the same integer.
            return self.target.from_prime(self.sub.theta().0 as i64);
        }
        self.theta_powers[1]
    }

    pub fn embed(&self, a: Elem) -> Elem {
        if self.sub.f() == 1 {
            return self.target.from_prime(a.0 as i64);
        }
        let mut acc = Elem::ZERO;
        for (c, &tp) in self.sub.digits(a).into_iter().zip(&self.theta_powers) {
            if c != 0 {
                acc = self.target.add(acc, self.target.scale(tp, c));
            }
        }
        acc
    }

    /// Inverse of [`Embedding::embed`] on its image; `None` outside it.
    /// Requires log tables in both fields.
    pub fn restrict(&self, b: Elem) -> Result<Option<Elem>> {
        if b.is_zero() {
            return Ok(Some(Elem::ZERO));
        }
        let ks = self.sub.order() - 1;
        let stride = (self.target.order() - 1) / ks;
        let l = self.target.log(b)?;
        if l % stride != 0 {
            return Ok(None);
        }
        // b = θ_F^{stride·m} = image(θ_K)^{m·u^{-1}}
        let m = l / stride;
        let inv = mod_inverse(self.twist % ks.max(1), ks);
        let s = (m as u128 * inv as u128 % ks.max(1) as u128) as u64;
        Ok(Some(self.sub.theta_pow(s)))
    }
}

fn eval_prime_poly(ctx: &FieldCtx, coeffs: &[u64], x: Elem) -> Elem {
    let mut acc = Elem::ZERO;
    for &c in coeffs.iter().rev() {
        acc = ctx.add(ctx.mul(acc, x), ctx.from_prime(c as i64));
    }
    acc
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let e = num_integer::Integer::extended_gcd(&(a as i128), &(m as i128));
    e.x.rem_euclid(m as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfarith::build_field;

    #[test]
    fn embedding_is_multiplicative_and_invertible() {
        for (p, a, b) in [
            (2u64, 2u32, 6u32),
            (3, 2, 4),
            (2, 3, 6),
            (5, 1, 2),
            (2, 4, 8),
        ] {
            let k = build_field(p, a).unwrap();
            let f = build_field(p, b).unwrap();
            let e = Embedding::new(&k, &f).unwrap();
            for x in k.elements() {
                for y in k.elements() {
                    assert_eq!(e.embed(k.mul(x, y)), f.mul(e.embed(x), e.embed(y)));
                    assert_eq!(e.embed(k.add(x, y)), f.add(e.embed(x), e.embed(y)));
                }
                assert_eq!(e.restrict(e.embed(x)).unwrap(), Some(x));
            }
        }
    }
}
