//! Big-integer case sweeps for the base-two inequality |x^G ∩ H|³ < |x^G|.

use num_bigint::BigUint;
use num_traits::Pow;
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeMap, Serializer};

use super::{class_bound_exponent, mult_order, Decomposition};
use crate::singer::{kappa_for, semidirect_pow, TorusCoord};
use crate::{prime_power, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RowKind {
    /// ((q^n − ε^n)·n)³ against q^{n²/4 − n}.
    Global,
    /// ((q^n − ε^n)·n)³ against q^{class bound exponent}, for e ≥ 2.
    Decomposition,
    /// 2r·((q^n − ε^n)·n)³ against q^{ns}, s = n − n/r, for e = 1 or r = p.
    Prop338,
    /// (2(q⁴ + q² + 2))³ against q^{n(n−1) − ek² + k − t²} for n = 6, r = 3.
    SpecialN6,
}

impl RowKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RowKind::Global => "global",
            RowKind::Decomposition => "decomposition",
            RowKind::Prop338 => "prop338",
            RowKind::SpecialN6 => "special-n6",
        }
    }
}

/// One certified comparison lhs^denom < rhs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub eps: Sign,
    pub n: u64,
    pub q: u64,
    pub kind: RowKind,
    pub decomposition: Option<Decomposition>,
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub denom: u32,
    pub holds: bool,
}

impl SweepRow {
    fn new(
        eps: Sign,
        n: u64,
        q: u64,
        kind: RowKind,
        d: Option<Decomposition>,
        lhs: BigUint,
        rhs: BigUint,
        denom: u32,
    ) -> Self {
        let holds = Pow::pow(&lhs, denom) < rhs;
        SweepRow {
            eps,
            n,
            q,
            kind,
            decomposition: d,
            lhs,
            rhs,
            denom,
            holds,
        }
    }

    fn key(&self) -> (u64, u64, RowKind, Option<Decomposition>) {
        (self.n, self.q, self.kind, self.decomposition)
    }
}

impl Serialize for SweepRow {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(12))?;
        m.serialize_entry("eps", self.eps.symbol())?;
        m.serialize_entry("n", &self.n.to_string())?;
        m.serialize_entry("q", &self.q.to_string())?;
        m.serialize_entry("kind", self.kind.as_str())?;
        let field =
            |f: fn(&Decomposition) -> u64| self.decomposition.as_ref().map(|d| f(d).to_string());
        m.serialize_entry("r", &field(|d| d.r))?;
        m.serialize_entry("e", &field(|d| d.e))?;
        m.serialize_entry("k", &field(|d| d.k))?;
        m.serialize_entry("t", &field(|d| d.t))?;
        m.serialize_entry("lhs", &self.lhs.to_string())?;
        m.serialize_entry("rhs", &self.rhs.to_string())?;
        m.serialize_entry("denom", &self.denom.to_string())?;
        m.serialize_entry("holds", &self.holds)?;
        m.end()
    }
}

fn torus_order_big(eps: Sign, n: u64, q: u64) -> BigUint {
    let qn: BigUint = Pow::pow(&BigUint::from(q), n as u32);
    match eps {
        Sign::Minus if n % 2 == 1 => qn + 1u32,
        _ => qn - 1u32,
    }
}

fn qpow(q: u64, e: u64) -> BigUint {
    Pow::pow(&BigUint::from(q), e as u32)
}

fn cell_rows(eps: Sign, n: u64, q: u64) -> Vec<SweepRow> {
    let Some((p, _)) = prime_power(q) else {
        return Vec::new();
    };
    let h_cubed = Pow::pow(&(torus_order_big(eps, n, q) * n), 3u32);
    let mut rows = Vec::new();
    if n >= 21 {
        let rhs = qpow(q, n * n - 4 * n);
        rows.push(SweepRow::new(
            eps,
            n,
            q,
            RowKind::Global,
            None,
            h_cubed.clone(),
            rhs,
            4,
        ));
    }
    let qq = if eps == Sign::Plus { q } else { q * q };
    for r in super::prime_divisors(n) {
        let s = n - n / r;
        let e = if r == p { None } else { mult_order(r, qq).ok() };
        match e {
            Some(e) if e >= 2 => {
                for t in [0, n / r] {
                    if !(n - t).is_multiple_of(e) || n == t {
                        continue;
                    }
                    let d = Decomposition {
                        r,
                        e,
                        k: (n - t) / e,
                        t,
                    };
                    let x = class_bound_exponent(eps, n as usize, &d);
                    let denom = *x.denom() as u32;
                    let rhs = qpow(q, *x.numer() as u64);
                    rows.push(SweepRow::new(
                        eps,
                        n,
                        q,
                        RowKind::Decomposition,
                        Some(d),
                        h_cubed.clone(),
                        rhs,
                        denom,
                    ));
                }
            }
            _ => {
                let d = Decomposition {
                    r,
                    e: e.unwrap_or(0),
                    k: 0,
                    t: n / r,
                };
                let lhs = h_cubed.clone() * (2 * r);
                rows.push(SweepRow::new(
                    eps,
                    n,
                    q,
                    RowKind::Prop338,
                    Some(d),
                    lhs,
                    qpow(q, n * s),
                    1,
                ));
            }
        }
    }
    if n == 6 {
        let bound = BigUint::from(2 * (q.pow(4) + q * q + 2));
        let lhs = Pow::pow(&bound, 3u32);
        let shapes: &[(u64, u64, u64)] = match eps {
            Sign::Plus => &[(2, 2, 2), (3, 2, 0), (2, 3, 0)],
            Sign::Minus => &[(2, 2, 2), (2, 3, 0)],
        };
        for &(e, k, t) in shapes {
            let d = Decomposition { r: 3, e, k, t };
            let x = class_bound_exponent(Sign::Plus, 6, &d);
            rows.push(SweepRow::new(
                eps,
                n,
                q,
                RowKind::SpecialN6,
                Some(d),
                lhs.clone(),
                qpow(q, *x.numer() as u64),
                1,
            ));
        }
    }
    rows
}

/// Every row for n in `ns` and prime powers q in `qs`, ordered by (n, q, kind, shape).
pub fn sweep_b6(
    eps: Sign,
    ns: impl IntoIterator<Item = u64>,
    qs: impl IntoIterator<Item = u64>,
) -> Vec<SweepRow> {
    let qs: Vec<u64> = qs.into_iter().collect();
    let cells: Vec<(u64, u64)> = ns
        .into_iter()
        .flat_map(|n| qs.iter().map(move |&q| (n, q)))
        .collect();
    let mut rows: Vec<SweepRow> = cells
        .par_iter()
        .flat_map_iter(|&(n, q)| cell_rows(eps, n, q))
        .collect();
    rows.sort_by_key(|a| a.key());
    rows
}

/// Formula values and exhaustive counts for the n = 6 normalizer.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SpecialCounts {
    pub eps: Sign,
    pub q: u64,
    /// 2(q⁴ + q² + 2).
    pub order3_formula: u64,
    pub order3_count: Option<u64>,
    /// q³ + 1, the number of (λ, 3) of order two.
    pub involution_formula: u64,
    pub involution_count: Option<u64>,
    /// n₂(H) = q³ + 1; counted only for even q, where Sylow 2-subgroups have order two.
    pub n2_formula: u64,
    pub n2_count: Option<u64>,
    /// |N_H(S)| = 6(q³ − 1).
    pub sylow_normalizer_formula: u64,
    pub sylow_normalizer_count: Option<u64>,
    /// Every available count is at most its formula.
    pub holds: bool,
}

pub fn special_counts_n6(q: u64, eps: Sign) -> SpecialCounts {
    let q3 = q.pow(3);
    let mut out = SpecialCounts {
        eps,
        q,
        order3_formula: 2 * (q.pow(4) + q * q + 2),
        order3_count: None,
        involution_formula: q3 + 1,
        involution_count: None,
        n2_formula: q3 + 1,
        n2_count: None,
        sylow_normalizer_formula: 6 * (q3 - 1),
        sylow_normalizer_count: None,
        holds: true,
    };
    if q.checked_pow(6).is_none_or(|v| v > 1 << 20) {
        return out;
    }
    let m = q.pow(6) - 1;
    let kappa = kappa_for(eps, 6, q);
    let id = TorusCoord::new(0, 0);
    let (order3, inv_j3, inv_all) = (0..6u64)
        .into_par_iter()
        .map(|j| {
            let mut c3 = 0u64;
            let mut i3 = 0u64;
            let mut i_all = 0u64;
            for s in 0..m {
                let c = TorusCoord::new(s, j);
                if c == id {
                    continue;
                }
                if (3 * j) % 6 == 0 && semidirect_pow(c, 3, kappa, 6, m) == id {
                    c3 += 1;
                }
                if (2 * j) % 6 == 0 && semidirect_pow(c, 2, kappa, 6, m) == id {
                    i_all += 1;
                    if j == 3 {
                        i3 += 1;
                    }
                }
            }
            (c3, i3, i_all)
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    out.order3_count = Some(order3);
    out.involution_count = Some(inv_j3);
    if q.is_multiple_of(2) {
        out.n2_count = Some(inv_all);
        out.sylow_normalizer_count = Some(6 * m / inv_all.max(1));
    }
    out.holds = order3 <= out.order3_formula
        && inv_j3 <= out.involution_formula
        && out.n2_count.is_none_or(|c| c <= out.n2_formula);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n6_generic_fails_at_q2() {
        let rows = sweep_b6(Sign::Plus, [6], [2]);
        let bad = rows
            .iter()
            .find(|r| {
                r.kind == RowKind::Decomposition
                    && r.decomposition
                        .is_some_and(|d| (d.e, d.k, d.t) == (2, 3, 0))
            })
            .unwrap();
        assert!(!bad.holds);
        assert_eq!(bad.lhs, BigUint::from(63u64.pow(3) * 216));
        assert_eq!(bad.rhs, BigUint::from(1u64 << 15));
    }

    #[test]
    fn counts_q2() {
        let c = special_counts_n6(2, Sign::Plus);
        assert_eq!(c.order3_formula, 44);
        assert!(c.order3_count.unwrap() <= 44);
        assert_eq!(c.n2_count, Some(9));
        assert_eq!(c.sylow_normalizer_count, Some(42));
        assert!(c.holds);
    }

    #[test]
    fn global_row_at_21() {
        let rows = sweep_b6(Sign::Plus, [21], [2]);
        assert!(rows.iter().any(|r| r.kind == RowKind::Global && r.holds));
    }
}
