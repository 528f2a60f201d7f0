//! Dense matrices over a [`FieldCtx`], acting on row vectors from the right
//! (v ↦ vA).

mod canonical;
mod gf2;
mod hermitian;
pub mod poly;

pub use canonical::{companion, CanonicalForm};
pub use hermitian::{unitary_member, HermitianForm};
pub use poly::Poly;

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::gfarith::{Elem, FieldCtx};

#[derive(Clone)]
pub struct Mat {
    ctx: Arc<FieldCtx>,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && *self.ctx == *other.ctx
    }
}
impl Eq for Mat {}

impl Hash for Mat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} {}x{}", self.ctx, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.0.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Operations accepted by [`mat_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatOp {
    Mul,
    Add,
    Sub,
    Inv,
    Transpose,
    ConjTranspose,
    ScalarMul(Elem),
}

/// Apply `op` to `a` (and `b` for the binary operations).
pub fn mat_arith(a: &Mat, b: Option<&Mat>, op: MatOp) -> Result<Mat> {
    let need_b =
        || b.ok_or_else(|| Error::InvalidInput("binary operation needs two operands".into()));
    match op {
        MatOp::Mul => a.try_mul(need_b()?),
        MatOp::Add => a.try_add(need_b()?),
        MatOp::Sub => a.try_sub(need_b()?),
        MatOp::Inv => a.inv(),
        MatOp::Transpose => Ok(a.transpose()),
        MatOp::ConjTranspose => a.conj_transpose(),
        MatOp::ScalarMul(c) => Ok(a.scalar_mul(c)),
    }
}

impl Mat {
    pub fn zeros(ctx: &Arc<FieldCtx>, rows: usize, cols: usize) -> Mat {
        Mat {
            ctx: Arc::clone(ctx),
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(ctx: &Arc<FieldCtx>, n: usize) -> Mat {
        Mat::scalar(ctx, n, Elem::ONE)
    }

    pub fn scalar(ctx: &Arc<FieldCtx>, n: usize, c: Elem) -> Mat {
        let mut m = Mat::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_fn(
        ctx: &Arc<FieldCtx>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Elem,
    ) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat {
            ctx: Arc::clone(ctx),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(ctx: &Arc<FieldCtx>, rows: &[Vec<Elem>]) -> Result<Mat> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|e| ctx.from_int(e.0)).collect();
        Ok(Mat {
            ctx: Arc::clone(ctx),
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Build from small integers read as encodings (handy for prime fields).
    pub fn from_ints(ctx: &Arc<FieldCtx>, rows: &[&[u64]]) -> Mat {
        let v: Vec<Vec<Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Elem(x)).collect())
            .collect();
        Mat::from_rows(ctx, &v).expect("rectangular input")
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn check_same(&self, o: &Mat) -> Result<()> {
        if *self.ctx != *o.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn try_mul(&self, o: &Mat) -> Result<Mat> {
        self.check_same(o)?;
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let k = &*self.ctx;
        let mut out = vec![Elem::ZERO; self.rows * o.cols];
        for i in 0..self.rows {
            let orow = &mut out[i * o.cols..(i + 1) * o.cols];
            for l in 0..self.cols {
                let a = self.data[i * self.cols + l];
                if a.is_zero() {
                    continue;
                }
                let brow = &o.data[l * o.cols..(l + 1) * o.cols];
                if a == Elem::ONE {
                    for (c, &b) in orow.iter_mut().zip(brow) {
                        *c = k.add(*c, b);
                    }
                } else {
                    for (c, &b) in orow.iter_mut().zip(brow) {
                        if !b.is_zero() {
                            *c = k.add(*c, k.mul(a, b));
                        }
                    }
                }
            }
        }
        Ok(Mat {
            ctx: Arc::clone(&self.ctx),
            rows: self.rows,
            cols: o.cols,
            data: out,
        })
    }

    fn zip_with(&self, o: &Mat, f: impl Fn(Elem, Elem) -> Elem) -> Result<Mat> {
        self.check_same(o)?;
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch("shapes differ".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Mat {
            ctx: Arc::clone(&self.ctx),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn try_add(&self, o: &Mat) -> Result<Mat> {
        let k = Arc::clone(&self.ctx);
        self.zip_with(o, |a, b| k.add(a, b))
    }

    pub fn try_sub(&self, o: &Mat) -> Result<Mat> {
        let k = Arc::clone(&self.ctx);
        self.zip_with(o, |a, b| k.sub(a, b))
    }

    pub fn scalar_mul(&self, c: Elem) -> Mat {
        self.map(|a| self.ctx.mul(a, c))
    }

    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Mat {
        Mat {
            ctx: Arc::clone(&self.ctx),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f(a)).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Entrywise a ↦ a^q on GF(q²).
    pub fn conj(&self) -> Result<Mat> {
        let q = conj_base(&self.ctx)?;
        Ok(self.map(|a| self.ctx.frobenius(a, q, 1).expect("valid tower base")))
    }

    pub fn conj_transpose(&self) -> Result<Mat> {
        Ok(self.conj()?.transpose())
    }

    /// The image under τ: A ↦ (A^{-1})^T.
    pub fn inv_transpose(&self) -> Result<Mat> {
        Ok(self.inv()?.transpose())
    }

    pub fn inv(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "inverse of non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let k = &*self.ctx;
        let w = 2 * n;
        let mut m = vec![Elem::ZERO; n * w];
        for i in 0..n {
            m[i * w..i * w + n].copy_from_slice(self.row(i));
            m[i * w + n + i] = Elem::ONE;
        }
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !m[r * w + col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if piv != col {
                for j in 0..w {
                    m.swap(piv * w + j, col * w + j);
                }
            }
            let inv = k.inv(m[col * w + col])?;
            for j in 0..w {
                m[col * w + j] = k.mul(m[col * w + j], inv);
            }
            for r in 0..n {
                let c = m[r * w + col];
                if r == col || c.is_zero() {
                    continue;
                }
                for j in 0..w {
                    let sub = k.mul(c, m[col * w + j]);
                    m[r * w + j] = k.sub(m[r * w + j], sub);
                }
            }
        }
        Ok(Mat::from_fn(&self.ctx, n, n, |i, j| m[i * w + n + j]))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.is_scalar() && (self.rows == 0 || self.get(0, 0) == Elem::ONE)
    }

    pub fn is_scalar(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let d = if self.rows > 0 {
            self.get(0, 0)
        } else {
            Elem::ONE
        };
        (0..self.rows)
            .all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { d } else { Elem::ZERO }))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// True when every row and column has exactly one nonzero entry.
    pub fn is_monomial(&self) -> bool {
        let rows_ok =
            (0..self.rows).all(|i| self.row(i).iter().filter(|e| !e.is_zero()).count() == 1);
        let cols_ok = (0..self.cols).all(|j| {
            (0..self.rows)
                .filter(|&i| !self.get(i, j).is_zero())
                .count()
                == 1
        });
        rows_ok && cols_ok
    }

    pub fn pow_u64(&self, mut e: u64) -> Mat {
        let mut acc = Mat::identity(&self.ctx, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    pub fn pow_big(&self, e: &BigUint) -> Mat {
        let mut acc = Mat::identity(&self.ctx, self.rows);
        for i in (0..e.bits()).rev() {
            acc = &acc * &acc;
            if e.bit(i) {
                acc = &acc * self;
            }
        }
        acc
    }

    /// A^e for any integer e; negative powers invert first.
    pub fn pow_i64(&self, e: i64) -> Result<Mat> {
        if e >= 0 {
            Ok(self.pow_u64(e as u64))
        } else {
            Ok(self.inv()?.pow_u64(e.unsigned_abs()))
        }
    }

    /// Rank and a basis of the left kernel {v : vA = 0}.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<Elem>>) {
        if self.ctx.order() == 2 {
            return gf2::rank_left_kernel(self.rows, self.cols, &self.data);
        }
        let k = &*self.ctx;
        let (r, c) = (self.rows, self.cols);
        let w = c + r;
        let mut m = vec![Elem::ZERO; r * w];
        for i in 0..r {
            m[i * w..i * w + c].copy_from_slice(self.row(i));
            m[i * w + c + i] = Elem::ONE;
        }
        let mut rank = 0;
        for col in 0..c {
            let Some(piv) = (rank..r).find(|&i| !m[i * w + col].is_zero()) else {
                continue;
            };
            if piv != rank {
                for j in 0..w {
                    m.swap(piv * w + j, rank * w + j);
                }
            }
            let inv = k.inv(m[rank * w + col]).expect("nonzero pivot");
            for j in 0..w {
                m[rank * w + j] = k.mul(m[rank * w + j], inv);
            }
            for i in 0..r {
                let f = m[i * w + col];
                if i == rank || f.is_zero() {
                    continue;
                }
                for j in 0..w {
                    let s = k.mul(f, m[rank * w + j]);
                    m[i * w + j] = k.sub(m[i * w + j], s);
                }
            }
            rank += 1;
        }
        let kernel = (rank..r)
            .map(|i| m[i * w + c..(i + 1) * w].to_vec())
            .collect();
        (rank, kernel)
    }

    pub fn rank(&self) -> usize {
        self.rank_kernel().0
    }

    /// dim ker(A - I).
    pub fn fixed_space_dim(&self) -> usize {
        let n = self.rows;
        let d = self
            .try_sub(&Mat::identity(&self.ctx, n))
            .expect("square matrix");
        n - d.rank()
    }

    /// Block-diagonal sum, blocks placed top-left to bottom-right.
    pub fn block_diag(ctx: &Arc<FieldCtx>, blocks: &[Mat]) -> Mat {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(ctx, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Copy of the square sub-block with rows and columns `start..start+len`.
    pub fn sub_block(&self, start: usize, len: usize) -> Mat {
        Mat::from_fn(&self.ctx, len, len, |i, j| self.get(start + i, start + j))
    }

    /// v·A for a row vector v.
    pub fn apply_row(&self, v: &[Elem]) -> Vec<Elem> {
        let k = &*self.ctx;
        let mut out = vec![Elem::ZERO; self.cols];
        for (l, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, &b) in out.iter_mut().zip(self.row(l)) {
                *c = k.add(*c, k.mul(a, b));
            }
        }
        out
    }

    /// Dimension of span{v, vA, vA², …}.
    pub fn cyclic_span_dim(&self, v: &[Elem]) -> usize {
        let mut vecs: Vec<Vec<Elem>> = Vec::new();
        let mut cur = v.to_vec();
        loop {
            vecs.push(cur.clone());
            let m = Mat::from_rows(&self.ctx, &vecs).expect("rectangular");
            if m.rank() < vecs.len() {
                return vecs.len() - 1;
            }
            if vecs.len() == self.cols {
                return vecs.len();
            }
            cur = self.apply_row(&cur);
        }
    }

    /// Least k ≥ 1 with A^k = I. Without a bound the exponent of GL_n(q) is
    /// used as the known multiple; with a bound, `bound` must be such a multiple.
    pub fn element_order(&self, bound: Option<u64>) -> Result<u64> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "order of non-square matrix".into(),
            ));
        }
        if self.rank() < self.rows {
            return Err(Error::SingularMatrix);
        }
        let factors = match bound {
            Some(b) => {
                if b == 0 {
                    return Err(Error::OrderExceedsBound);
                }
                num_prime::nt_funcs::factorize64(b)
            }
            None => gl_exponent_factors(self.ctx.order(), self.ctx.p(), self.rows)?,
        };
        let mut multiple = BigUint::one();
        for (&p, &e) in &factors {
            multiple *= BigUint::from(p).pow(e as u32);
        }
        if !self.pow_big(&multiple).is_identity() {
            return Err(Error::OrderExceedsBound);
        }
        for (&p, &e) in &factors {
            let pb = BigUint::from(p);
            for _ in 0..e {
                let cand = &multiple / &pb;
                if self.pow_big(&cand).is_identity() {
                    multiple = cand;
                } else {
                    break;
                }
            }
        }
        multiple.to_u64().ok_or(Error::OrderExceedsBound)
    }

    /// Matrix text format: `n m p f` then rows of discrete-log exponents.
    pub fn to_text(&self) -> Result<String> {
        let mut s = format!(
            "{} {} {} {}\n",
            self.rows,
            self.cols,
            self.ctx.p(),
            self.ctx.f()
        );
        for i in 0..self.rows {
            let row: Result<Vec<String>> = self
                .row(i)
                .iter()
                .map(|&e| self.ctx.format_elem(e))
                .collect();
            s.push_str(&row?.join(" "));
            s.push('\n');
        }
        Ok(s)
    }

    /// Parse the text format. The field is built from the header when `ctx`
    /// is `None`; otherwise the header must match `ctx`.
    pub fn from_text(text: &str, ctx: Option<&Arc<FieldCtx>>) -> Result<Mat> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let nums: Vec<u64> = header
            .split_whitespace()
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad header '{header}'")))
            })
            .collect::<Result<_>>()?;
        let [n, m, p, f] = nums[..] else {
            return Err(Error::Parse(format!("bad header '{header}'")));
        };
        let ctx = match ctx {
            Some(c) if c.p() == p && c.f() as u64 == f => Arc::clone(c),
            Some(_) => return Err(Error::ContextMismatch),
            None => Arc::new(FieldCtx::new(p, f as u32)?),
        };
        let mut rows = Vec::with_capacity(n as usize);
        for _ in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("missing matrix row".into()))?;
            let row: Vec<Elem> = line
                .split_whitespace()
                .map(|t| ctx.parse_elem(t))
                .collect::<Result<_>>()?;
            if row.len() != m as usize {
                return Err(Error::Parse("row length does not match header".into()));
            }
            rows.push(row);
        }
        Mat::from_rows(&ctx, &rows)
    }

    /// Rows as discrete-log strings, for JSON reports.
    pub fn to_log_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|&e| {
                        self.ctx
                            .format_elem(e)
                            .unwrap_or_else(|_| format!("#{}", e.0))
                    })
                    .collect()
            })
            .collect()
    }
}

impl std::ops::Mul for &Mat {
    type Output = Mat;
    /// Panics on shape or field mismatch; use [`Mat::try_mul`] for a checked product.
    fn mul(self, rhs: &Mat) -> Mat {
        self.try_mul(rhs).expect("compatible matrices")
    }
}

/// Permutation matrix with (P)_{i,σ(i)} = 1, for σ given 0-based as a slice.
pub fn perm_matrix(sigma: &[usize], ctx: &Arc<FieldCtx>) -> Result<Mat> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || std::mem::replace(&mut seen[s], true) {
            return Err(Error::InvalidInput("not a permutation".into()));
        }
    }
    let mut m = Mat::zeros(ctx, n, n);
    for (i, &s) in sigma.iter().enumerate() {
        m.set(i, s, Elem::ONE);
    }
    Ok(m)
}

/// Permutation from 1-based cycles on {1..n}, returned 0-based.
pub fn perm_from_cycles(n: usize, cycles: &[&[usize]]) -> Vec<usize> {
    let mut sigma: Vec<usize> = (0..n).collect();
    for cyc in cycles {
        for (k, &a) in cyc.iter().enumerate() {
            let b = cyc[(k + 1) % cyc.len()];
            sigma[a - 1] = b - 1;
        }
    }
    sigma
}

/// For GF(q²), returns q.
pub fn conj_base(ctx: &FieldCtx) -> Result<u64> {
    if !ctx.f().is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "{ctx:?} has no involutory automorphism"
        )));
    }
    Ok(ctx.p().pow(ctx.f() / 2))
}

/// Prime factorization of the exponent of GL_n(Q): lcm_{i≤n}(Q^i - 1) times
/// the least power of p that is at least n.
pub fn gl_exponent_factors(qq: u64, p: u64, n: usize) -> Result<BTreeMap<u64, usize>> {
    let mut out: BTreeMap<u64, usize> = BTreeMap::new();
    let mut qi: u64 = 1;
    for _ in 0..n {
        qi = qi.checked_mul(qq).ok_or(Error::OrderExceedsBound)?;
        if qi - 1 > 1 {
            for (l, e) in num_prime::nt_funcs::factorize64(qi - 1) {
                let slot = out.entry(l).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
    }
    let (mut pp, mut c) = (1usize, 0usize);
    while pp < n {
        pp *= p as usize;
        c += 1;
    }
    if c > 0 {
        *out.entry(p).or_insert(0) += c;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfarith::build_field;

    #[test]
    fn tau_image_over_gf3() {
        let k = build_field(3, 1).unwrap();
        let a = Mat::from_ints(&k, &[&[1, 1], &[0, 1]]);
        assert_eq!(
            a.inv_transpose().unwrap(),
            Mat::from_ints(&k, &[&[1, 0], &[2, 1]])
        );
    }

    #[test]
    fn kernel_of_all_ones() {
        let k = build_field(2, 1).unwrap();
        let a = Mat::from_ints(&k, &[&[1, 1], &[1, 1]]);
        let (r, ker) = a.rank_kernel();
        assert_eq!(r, 1);
        assert_eq!(ker, vec![vec![Elem(1), Elem(1)]]);
    }

    #[test]
    fn companion_orders() {
        let k = build_field(2, 1).unwrap();
        let a = Mat::from_ints(&k, &[&[0, 1], &[1, 1]]);
        assert_eq!(a.element_order(None).unwrap(), 3);
        assert_eq!(Mat::identity(&k, 4).element_order(None).unwrap(), 1);
    }

    #[test]
    fn text_round_trip() {
        let k = build_field(3, 2).unwrap();
        let a = Mat::from_fn(&k, 2, 3, |i, j| k.theta_pow((i * 3 + j) as u64 * 5));
        let mut b = a.clone();
        b.set(1, 2, Elem::ZERO);
        for m in [a, b] {
            assert_eq!(Mat::from_text(&m.to_text().unwrap(), None).unwrap(), m);
        }
    }

    #[test]
    fn perm_homomorphism() {
        let k = build_field(2, 1).unwrap();
        let c = perm_matrix(&perm_from_cycles(4, &[&[1, 2, 3, 4]]), &k).unwrap();
        let d = perm_matrix(&perm_from_cycles(4, &[&[1, 3], &[2, 4]]), &k).unwrap();
        assert_eq!(&c * &c, d);
        assert_eq!(
            perm_matrix(&perm_from_cycles(2, &[&[1, 2]]), &k).unwrap(),
            Mat::from_ints(&k, &[&[0, 1], &[1, 0]])
        );
    }
}
