//! Finite fields GF(p^f) with a fixed primitive element θ.
//!
//! Elements are stored as [`Elem`], the integer Σ c_i p^i of their coefficient
//! vector with respect to the power basis 1, θ, …, θ^{f-1}. Fields of order at
//! most 2^20 also carry exp/log tables so that multiplication, inversion and
//! discrete logarithms are table lookups.

mod embed;
pub mod poly;

pub use embed::Embedding;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use poly::{inv_mod_prime, mulmod_u64, powmod_u64};

/// Largest field order that gets exp/log tables.
pub const TABLE_LIMIT: u64 = 1 << 20;

/// A field element in coefficient encoding. Zero is `Elem(0)`, one is `Elem(1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u64);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Arithmetic context for GF(p^f).
pub struct FieldCtx {
    p: u64,
    f: u32,
    order: u64,
    modulus: Vec<u64>,
    theta: Elem,
    tables: Option<Tables>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "GF({}^{})", self.p, self.f)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f
    }
}
impl Eq for FieldCtx {}

/// Build GF(p^f). Equivalent to [`FieldCtx::new`].
pub fn build_field(p: u64, f: u32) -> Result<Arc<FieldCtx>> {
    FieldCtx::new(p, f).map(Arc::new)
}

impl FieldCtx {
    /// Construct GF(p^f) using the least monic primitive polynomial of degree f,
    /// where polynomials are ordered by the integer Σ c_i p^i of their lower
    /// coefficients.
    pub fn new(p: u64, f: u32) -> Result<FieldCtx> {
        if p < 2 || !num_prime::nt_funcs::is_prime64(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if f == 0 {
            return Err(Error::InvalidInput(
                "extension degree must be positive".into(),
            ));
        }
        let order = p
            .checked_pow(f)
            .filter(|&o| o <= 1u64 << 63)
            .ok_or(Error::FieldTooLarge { p, f })?;
        let (modulus, theta) = find_primitive_modulus(p, f, order);
        let mut ctx = FieldCtx {
            p,
            f,
            order,
            modulus,
            theta,
            tables: None,
        };
        if order <= TABLE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    fn build_tables(&self) -> Tables {
        let n = (self.order - 1) as usize;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![u32::MAX; self.order as usize];
        let mut cur = Elem::ONE;
        for k in 0..n {
            exp.push(cur.0 as u32);
            log[cur.0 as usize] = k as u32;
            cur = self.mul_poly(cur, self.theta);
        }
        debug_assert_eq!(cur, Elem::ONE);
        Tables { exp, log }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn f(&self) -> u32 {
        self.f
    }
    /// Number of elements, p^f.
    pub fn order(&self) -> u64 {
        self.order
    }
    /// Coefficients c_0, …, c_f of the defining polynomial (c_f = 1).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    /// The distinguished primitive element.
    pub fn theta(&self) -> Elem {
        self.theta
    }
    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// The element with the given integer encoding, reduced into range.
    pub fn from_int(&self, v: u64) -> Elem {
        Elem(v % self.order)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_prime(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.p as i64) as u64)
    }

    pub fn digits(&self, a: Elem) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.f as usize);
        let mut v = a.0;
        for _ in 0..self.f {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    pub fn from_digits(&self, d: &[u64]) -> Elem {
        let mut v = 0u64;
        for &c in d.iter().rev() {
            v = v * self.p + c;
        }
        Elem(v)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.f == 1 {
            let s = a.0 as u128 + b.0 as u128;
            return Elem((s % self.p as u128) as u64);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0u64, 1u64);
        while x > 0 || y > 0 {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * place;
            x /= self.p;
            y /= self.p;
            place = place.wrapping_mul(self.p);
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        if self.f == 1 {
            return Elem((self.p - a.0) % self.p);
        }
        let (mut x, mut out, mut place) = (a.0, 0u64, 1u64);
        while x > 0 {
            let d = x % self.p;
            out += ((self.p - d) % self.p) * place;
            x /= self.p;
            place = place.wrapping_mul(self.p);
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        if let Some(t) = &self.tables {
            let n = self.order - 1;
            let s = t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64;
            let s = if s >= n { s - n } else { s };
            return Elem(t.exp[s as usize] as u64);
        }
        self.mul_poly(a, b)
    }

    fn mul_poly(&self, a: Elem, b: Elem) -> Elem {
        if self.f == 1 {
            return Elem(mulmod_u64(a.0, b.0, self.p));
        }
        let r = poly::mul_mod(&self.digits(a), &self.digits(b), &self.modulus, self.p);
        self.from_digits(&r)
    }

    /// Multiply by an element of the prime field, given as an integer.
    pub fn scale(&self, a: Elem, c: u64) -> Elem {
        let c = c % self.p;
        if c == 0 {
            return Elem::ZERO;
        }
        if c == 1 {
            return a;
        }
        let d: Vec<u64> = self
            .digits(a)
            .into_iter()
            .map(|x| mulmod_u64(x, c, self.p))
            .collect();
        self.from_digits(&d)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.tables {
            let n = self.order - 1;
            let l = t.log[a.0 as usize] as u64;
            return Ok(Elem(t.exp[((n - l) % n) as usize] as u64));
        }
        if self.f == 1 {
            return Ok(Elem(inv_mod_prime(a.0, self.p)));
        }
        Ok(self.pow_u64(a, self.order - 2))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e for e ≥ 0 (0^0 = 1).
    pub fn pow_u64(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let n = self.order - 1;
        let e = e % n;
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u128;
            return Elem(t.exp[((l * e as u128) % n as u128) as usize] as u64);
        }
        if self.f == 1 {
            return Elem(powmod_u64(a.0, e, self.p));
        }
        let r = poly::pow_mod(&self.digits(a), e, &self.modulus, self.p);
        self.from_digits(&r)
    }

    /// a^e for any integer e; negative exponents require a ≠ 0.
    pub fn pow(&self, a: Elem, e: i128) -> Result<Elem> {
        if a.is_zero() {
            return match e {
                0 => Ok(Elem::ONE),
                e if e > 0 => Ok(Elem::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let n = (self.order - 1) as i128;
        Ok(self.pow_u64(a, e.rem_euclid(n) as u64))
    }

    /// θ^k.
    pub fn theta_pow(&self, k: u64) -> Elem {
        let n = self.order - 1;
        match &self.tables {
            Some(t) => Elem(t.exp[(k % n) as usize] as u64),
            None => self.pow_u64(self.theta, k % n),
        }
    }

    /// Discrete logarithm to base θ.
    pub fn log(&self, a: Elem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        match &self.tables {
            Some(t) => Ok(t.log[a.0 as usize] as u64),
            None => Err(Error::FieldTooLargeForTables(self.order)),
        }
    }

    /// a^(q^i) where q = p^d with d | f. Negative i applies the inverse map.
    pub fn frobenius(&self, a: Elem, base_q: u64, i: i64) -> Result<Elem> {
        let d = self.tower_degree(base_q)?;
        let period = (self.f / d) as i64;
        let steps = i.rem_euclid(period) as u32;
        let n = self.order - 1;
        let mut e = 1u64;
        for _ in 0..steps * d {
            e = mulmod_u64(e, self.p, n.max(1));
        }
        if n == 1 {
            return Ok(a);
        }
        Ok(self.pow_u64(a, e))
    }

    /// log_p(base_q) provided it divides f.
    pub fn tower_degree(&self, base_q: u64) -> Result<u32> {
        let mut d = 0u32;
        let mut v = base_q;
        if v < self.p {
            return Err(Error::InvalidTowerBase(base_q));
        }
        while v > 1 {
            if !v.is_multiple_of(self.p) {
                return Err(Error::InvalidTowerBase(base_q));
            }
            v /= self.p;
            d += 1;
        }
        if !self.f.is_multiple_of(d) {
            return Err(Error::InvalidTowerBase(base_q));
        }
        Ok(d)
    }

    /// Order of the multiplicative group element a (a ≠ 0).
    pub fn mult_order(&self, a: Elem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut ord = self.order - 1;
        for (ell, _) in num_prime::nt_funcs::factorize64(self.order - 1) {
            while ord.is_multiple_of(ell) && self.pow_u64(a, ord / ell) == Elem::ONE {
                ord /= ell;
            }
        }
        Ok(ord)
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }

    /// Header for serialized data, e.g. `3^2:`.
    pub fn header(&self) -> String {
        format!("{}^{}:", self.p, self.f)
    }

    /// Serialize as a discrete-log exponent, or `-` for zero.
    pub fn format_elem(&self, a: Elem) -> Result<String> {
        if a.is_zero() {
            return Ok("-".to_string());
        }
        Ok(self.log(a)?.to_string())
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        if s == "-" {
            return Ok(Elem::ZERO);
        }
        let k: u64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad field element '{s}'")))?;
        Ok(self.theta_pow(k))
    }

    pub fn is_prime_field(&self) -> bool {
        self.f == 1
    }
}

fn find_primitive_modulus(p: u64, f: u32, order: u64) -> (Vec<u64>, Elem) {
    let n = order - 1;
    let factors: Vec<u64> = if n > 1 {
        num_prime::nt_funcs::factorize64(n).into_keys().collect()
    } else {
        Vec::new()
    };
    if f == 1 {
        for c in 0..p {
            let root = (p - c) % p;
            if root == 0 {
                continue;
            }
            if factors.iter().all(|&l| powmod_u64(root, n / l, p) != 1) {
                return (vec![c, 1], Elem(root));
            }
        }
        unreachable!("every prime field has a primitive root");
    }
    let lower = order;
    for code in 1..lower {
        let mut m = Vec::with_capacity(f as usize + 1);
        let mut v = code;
        for _ in 0..f {
            m.push(v % p);
            v /= p;
        }
        if m[0] == 0 {
            continue;
        }
        m.push(1);
        if !poly::is_one(&poly::x_pow_mod(n, &m, p)) {
            continue;
        }
        if factors
            .iter()
            .all(|&l| !poly::is_one(&poly::x_pow_mod(n / l, &m, p)))
        {
            return (m, Elem(p));
        }
    }
    unreachable!("a primitive polynomial of every degree exists");
}

/// A field element bundled with its context, for checked arithmetic.
#[derive(Clone)]
pub struct FieldElem {
    ctx: Arc<FieldCtx>,
    raw: Elem,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ctx.log(self.raw) {
            Ok(k) => write!(fm, "θ^{k}"),
            Err(Error::ZeroElement) => write!(fm, "0"),
            Err(_) => write!(fm, "#{}", self.raw.0),
        }
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.raw == other.raw
    }
}
impl Eq for FieldElem {}

/// Binary and unary operations accepted by [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Pow(i128),
    Neg,
}

impl FieldElem {
    pub fn new(ctx: &Arc<FieldCtx>, raw: Elem) -> FieldElem {
        FieldElem {
            ctx: Arc::clone(ctx),
            raw: ctx.from_int(raw.0),
        }
    }
    pub fn theta(ctx: &Arc<FieldCtx>) -> FieldElem {
        FieldElem::new(ctx, ctx.theta())
    }
    pub fn zero(ctx: &Arc<FieldCtx>) -> FieldElem {
        FieldElem::new(ctx, Elem::ZERO)
    }
    pub fn one(ctx: &Arc<FieldCtx>) -> FieldElem {
        FieldElem::new(ctx, Elem::ONE)
    }
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }
    pub fn raw(&self) -> Elem {
        self.raw
    }
    pub fn is_zero(&self) -> bool {
        self.raw.is_zero()
    }

    fn same(&self, other: &FieldElem) -> Result<()> {
        if *self.ctx == *other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
    fn wrap(&self, raw: Elem) -> FieldElem {
        FieldElem {
            ctx: Arc::clone(&self.ctx),
            raw,
        }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(self.wrap(self.ctx.add(self.raw, other.raw)))
    }
    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(self.wrap(self.ctx.sub(self.raw, other.raw)))
    }
    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(self.wrap(self.ctx.mul(self.raw, other.raw)))
    }
    pub fn neg(&self) -> FieldElem {
        self.wrap(self.ctx.neg(self.raw))
    }
    pub fn inv(&self) -> Result<FieldElem> {
        Ok(self.wrap(self.ctx.inv(self.raw)?))
    }
    pub fn pow(&self, e: i128) -> Result<FieldElem> {
        Ok(self.wrap(self.ctx.pow(self.raw, e)?))
    }
    /// a^(q^i).
    pub fn frobenius(&self, base_q: u64, i: i64) -> Result<FieldElem> {
        Ok(self.wrap(self.ctx.frobenius(self.raw, base_q, i)?))
    }
    pub fn discrete_log(&self) -> Result<u64> {
        self.ctx.log(self.raw)
    }
    /// Image under the canonical embedding into a larger field.
    pub fn embed_into(&self, target: &Arc<FieldCtx>) -> Result<FieldElem> {
        let emb = Embedding::new(&self.ctx, target)?;
        Ok(FieldElem::new(target, emb.embed(self.raw)))
    }
}

/// Apply `op` to `a` (and `b` for binary operations).
pub fn field_arith(a: &FieldElem, b: Option<&FieldElem>, op: FieldOp) -> Result<FieldElem> {
    let need_b =
        || b.ok_or_else(|| Error::InvalidInput("binary operation needs two operands".into()));
    match op {
        FieldOp::Add => a.add(need_b()?),
        FieldOp::Mul => a.mul(need_b()?),
        FieldOp::Inv => a.inv(),
        FieldOp::Neg => Ok(a.neg()),
        FieldOp::Pow(k) => a.pow(k),
    }
}

/// See [`FieldElem::frobenius`].
pub fn frobenius(a: &FieldElem, base_q: u64, i: i64) -> Result<FieldElem> {
    a.frobenius(base_q, i)
}

/// See [`FieldElem::embed_into`].
pub fn embed_subfield(a: &FieldElem, target: &Arc<FieldCtx>) -> Result<FieldElem> {
    a.embed_into(target)
}

/// See [`FieldElem::discrete_log`].
pub fn discrete_log(a: &FieldElem) -> Result<u64> {
    a.discrete_log()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_roots() {
        assert_eq!(FieldCtx::new(2, 1).unwrap().theta(), Elem(1));
        assert_eq!(FieldCtx::new(3, 1).unwrap().theta(), Elem(2));
        assert_eq!(FieldCtx::new(5, 1).unwrap().theta(), Elem(3));
    }

    #[test]
    fn gf4_relation() {
        let k = FieldCtx::new(2, 2).unwrap();
        let t = k.theta();
        assert_eq!(k.add(t, k.mul(t, t)), Elem::ONE);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            FieldCtx::new(4, 1).unwrap_err(),
            Error::NonPrimeCharacteristic(4)
        );
        assert!(matches!(
            FieldCtx::new(2, 64),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(FieldCtx::new(2, 63).is_ok());
    }

    #[test]
    fn large_field_without_tables() {
        let k = FieldCtx::new(3, 30).unwrap();
        assert!(!k.has_tables());
        let t = k.theta();
        let n = k.order() - 1;
        assert_eq!(k.pow_u64(t, n), Elem::ONE);
        let a = k.pow_u64(t, 12345);
        assert_eq!(k.mul(a, k.inv(a).unwrap()), Elem::ONE);
    }
}
