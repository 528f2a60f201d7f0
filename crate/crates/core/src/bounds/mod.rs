//! Exact arithmetic for orders, class sizes and the inequalities of the
//! probabilistic method.
//!
//! Everything here is integer or rational arithmetic except η, which is a
//! floating point sum over class sizes.

mod prob;
mod sweep;

pub use prob::{
    eta, find_t_g, fpr_by_classes, fpr_by_cosets, fpr_exact, prime_order_classes, qhat, qhat_f64,
    ClassSummary,
};
pub use sweep::{special_counts_n6, sweep_b6, RowKind, SpecialCounts, SweepRow};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::{prime_power, Sign};

/// Least e > 0 with q^e ≡ 1 (mod r). For r = 2 the answer is 1 by convention.
pub fn mult_order(r: u64, q: u64) -> Result<u64> {
    if q.is_multiple_of(r) {
        return Err(Error::NotCoprime { r, q });
    }
    if r == 2 {
        return Ok(1);
    }
    let qr = q % r;
    let mut cur = qr;
    let mut e = 1;
    while cur != 1 {
        cur = ((cur as u128 * qr as u128) % r as u128) as u64;
        e += 1;
    }
    Ok(e)
}

/// |GL_n(q)| or |GU_n(q)|.
pub fn group_order(eps: Sign, n: usize, q: u64) -> BigUint {
    let qb = BigUint::from(q);
    let mut acc: BigUint = Pow::pow(&qb, (n * n.saturating_sub(1) / 2) as u32);
    for i in 1..=n as u32 {
        let qi: BigUint = Pow::pow(&qb, i);
        acc *= match eps {
            Sign::Plus => qi - 1u32,
            Sign::Minus if i % 2 == 1 => qi + 1u32,
            Sign::Minus => qi - 1u32,
        };
    }
    acc
}

/// Shape n = e·k + t of a semisimple element of prime order r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Decomposition {
    pub r: u64,
    pub e: u64,
    pub k: u64,
    pub t: u64,
}

impl Decomposition {
    pub fn n(&self) -> u64 {
        self.e * self.k + self.t
    }
}

/// Orders attached to the conjugacy class of a semisimple element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub group_order: BigUint,
    pub centralizer_order: BigUint,
    pub class_size: BigUint,
}

/// Which group the non-trivial eigenvalues contribute to the centralizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CentralizerCell {
    /// GL_k(q^e) or GU_k(q^e).
    Same,
    /// GL_{k/2}(q^{2e}) inside a unitary group.
    Paired,
}

fn unitary_cell(r: u64, q: u64) -> Result<CentralizerCell> {
    if r == 2 {
        return Ok(CentralizerCell::Same);
    }
    let o = mult_order(r, q)?;
    Ok(if o % 4 == 2 {
        CentralizerCell::Same
    } else {
        CentralizerCell::Paired
    })
}

/// e for a prime r: e(r, q) for GL, e(r, q²) for GU.
pub fn cell_degree(eps: Sign, r: u64, q: u64) -> Result<u64> {
    match eps {
        Sign::Plus => mult_order(r, q),
        Sign::Minus => mult_order(
            r,
            q.checked_mul(q)
                .ok_or_else(|| Error::InvalidInput("q too large".into()))?,
        ),
    }
}

fn check_decomposition(eps: Sign, n: usize, q: u64, d: &Decomposition) -> Result<CentralizerCell> {
    if d.k == 0 || d.e == 0 || d.n() != n as u64 {
        return Err(Error::InvalidDecomposition(format!(
            "{d:?} does not split n = {n}"
        )));
    }
    let e = cell_degree(eps, d.r, q)?;
    if e != d.e {
        return Err(Error::InvalidDecomposition(format!(
            "e({}, q) = {e}, not {}",
            d.r, d.e
        )));
    }
    let cell = match eps {
        Sign::Plus => CentralizerCell::Same,
        Sign::Minus => unitary_cell(d.r, q)?,
    };
    if cell == CentralizerCell::Paired && d.k % 2 == 1 {
        return Err(Error::InvalidDecomposition(format!(
            "{d:?}: eigenvalues pair up, k must be even"
        )));
    }
    Ok(cell)
}

/// Class size of a semisimple element with a single non-trivial eigenvalue
/// orbit of the given shape, from the exact centralizer order.
pub fn class_size_semisimple(eps: Sign, n: usize, q: u64, d: &Decomposition) -> Result<ClassData> {
    let cell = check_decomposition(eps, n, q, d)?;
    let qe = q
        .checked_pow(d.e as u32)
        .ok_or_else(|| Error::InvalidInput("q^e overflows".into()))?;
    let g = group_order(eps, n, q);
    let fixed = group_order(eps, d.t as usize, q);
    let moving = match (eps, cell) {
        (Sign::Plus, _) => group_order(Sign::Plus, d.k as usize, qe),
        (Sign::Minus, CentralizerCell::Same) => group_order(Sign::Minus, d.k as usize, qe),
        (Sign::Minus, CentralizerCell::Paired) => {
            let qe2 = qe
                .checked_mul(qe)
                .ok_or_else(|| Error::InvalidInput("q^{2e} overflows".into()))?;
            group_order(Sign::Plus, d.k as usize / 2, qe2)
        }
    };
    let c = moving * fixed;
    let (size, rem) = g.div_rem(&c);
    if !rem.is_zero() {
        return Err(Error::NonIntegralQuotient(format!("|G|/|C| for {d:?}")));
    }
    Ok(ClassData {
        group_order: g,
        centralizer_order: c,
        class_size: size,
    })
}

/// n(n−1) − ek² + k − t², plus (n − k − t − 1)/2 for GU.
pub fn class_bound_exponent(eps: Sign, n: usize, d: &Decomposition) -> Rational64 {
    let (n, e, k, t) = (n as i64, d.e as i64, d.k as i64, d.t as i64);
    let base = Rational64::from_integer(n * (n - 1) - e * k * k + k - t * t);
    match eps {
        Sign::Plus => base,
        Sign::Minus => base + Rational64::new(n - k - t - 1, 2),
    }
}

/// q^x ≤ m for a rational x with denominator dividing 2.
pub fn pow_at_most(q: u64, x: Rational64, m: &BigUint) -> bool {
    if *x.numer() <= 0 {
        return !m.is_zero();
    }
    let qb = BigUint::from(q);
    match *x.denom() {
        1 => Pow::pow(&qb, *x.numer() as u32) <= *m,
        2 => Pow::pow(&qb, *x.numer() as u32) <= m * m,
        d => panic!("unexpected denominator {d}"),
    }
}

/// floor(q^{ns}/(2r)) + 1, the least integer strictly above q^{ns}/(2r).
pub fn prop338_bound(n: u64, q: u64, s: u64, r: u64) -> BigUint {
    let num: BigUint = Pow::pow(&BigUint::from(q), (n * s) as u32);
    num / (2 * r) + BigUint::one()
}

/// Distinct primes dividing m.
pub(crate) fn prime_divisors(m: u64) -> Vec<u64> {
    if m < 2 {
        return Vec::new();
    }
    num_prime::nt_funcs::factorize64(m).into_keys().collect()
}

/// Every decomposition n = ek + t of a prime-order semisimple shape with
/// t ∈ {0, n/r}, for primes r ≠ p whose cell degree is at most n.
pub fn decompositions(eps: Sign, n: usize, q: u64) -> Result<Vec<Decomposition>> {
    let (p, _) = prime_power(q)
        .ok_or_else(|| Error::InvalidInput(format!("q = {q} is not a prime power")))?;
    let qq = match eps {
        Sign::Plus => q,
        Sign::Minus => q * q,
    };
    let mut primes = std::collections::BTreeSet::new();
    for e in 1..=n as u32 {
        // r | qq^e − 1; split the unitary case to stay inside u64
        let parts: Vec<u64> = match eps {
            Sign::Plus => vec![q.checked_pow(e).map(|v| v - 1)],
            Sign::Minus => vec![
                q.checked_pow(e).map(|v| v - 1),
                q.checked_pow(e).map(|v| v + 1),
            ],
        }
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidInput(format!("q^{e} overflows")))?;
        for part in parts {
            primes.extend(prime_divisors(part));
        }
    }
    let mut out = Vec::new();
    for r in primes {
        if r == p {
            continue;
        }
        let e = mult_order(r, qq)?;
        let mut ts = vec![0u64];
        if (n as u64).is_multiple_of(r) {
            ts.push(n as u64 / r);
        }
        for t in ts {
            let rest = n as u64 - t;
            if rest == 0 || !rest.is_multiple_of(e) {
                continue;
            }
            let d = Decomposition {
                r,
                e,
                k: rest / e,
                t,
            };
            if check_decomposition(eps, n, q, &d).is_ok() {
                out.push(d);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(mult_order(3, 2).unwrap(), 2);
        assert_eq!(mult_order(7, 2).unwrap(), 3);
        assert_eq!(mult_order(5, 3).unwrap(), 4);
        assert!(matches!(mult_order(3, 9), Err(Error::NotCoprime { .. })));
        assert_eq!(group_order(Sign::Plus, 2, 2), BigUint::from(6u32));
        assert_eq!(group_order(Sign::Plus, 3, 2), BigUint::from(168u32));
        assert_eq!(group_order(Sign::Minus, 2, 2), BigUint::from(18u32));
    }

    #[test]
    fn class_sizes() {
        let d = Decomposition {
            r: 3,
            e: 2,
            k: 1,
            t: 0,
        };
        assert_eq!(
            class_size_semisimple(Sign::Plus, 2, 2, &d)
                .unwrap()
                .class_size,
            BigUint::from(2u32)
        );
        let d = Decomposition {
            r: 3,
            e: 2,
            k: 2,
            t: 2,
        };
        assert_eq!(
            class_bound_exponent(Sign::Plus, 6, &d),
            Rational64::from_integer(20)
        );
        assert_eq!(
            class_bound_exponent(Sign::Minus, 6, &d),
            Rational64::new(41, 2)
        );
        let cd = class_size_semisimple(Sign::Plus, 6, 2, &d).unwrap();
        assert!(cd.class_size.bits() > 20);
        assert_eq!(&cd.class_size * &cd.centralizer_order, cd.group_order);
        let d = Decomposition {
            r: 3,
            e: 2,
            k: 3,
            t: 0,
        };
        assert_eq!(
            class_bound_exponent(Sign::Plus, 6, &d),
            Rational64::from_integer(15)
        );
        let bad = Decomposition {
            r: 3,
            e: 2,
            k: 0,
            t: 6,
        };
        assert!(class_size_semisimple(Sign::Plus, 6, 2, &bad).is_err());
    }

    #[test]
    fn prop338() {
        assert_eq!(prop338_bound(6, 2, 3, 2), BigUint::from(65537u32));
        let expect: BigUint = BigUint::from(1u64 << 42) / 14u32 + 1u32;
        assert_eq!(prop338_bound(7, 2, 6, 7), expect);
    }
}
