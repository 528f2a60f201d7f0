//! Singer tori Sin_n^ε(q), the Frobenius-type element φ, and coordinates on
//! the normalizer Sin ⋊ ⟨φ⟩.
//!
//! Every torus is built from a field model. For ε = + the space is GF(q^n)
//! over GF(q) and T is multiplication by θ. For ε = −, n odd, the space is
//! GF(q^{2n}) over GF(q²) with T multiplication by θ^{q^n − 1}, and the
//! invariant Hermitian form is the trace form Tr(u·v^{q^n}), rebased to the
//! identity Gram matrix. For ε = −, n even, the space is GF(q^n) ⊕ GF(q^n)
//! over GF(q²), with λ acting as (u, w) ↦ (uλ, w·λ^{−q^{n−1}}) and the form
//! having Gram matrix [[0, E], [E, 0]].

mod blocks;
mod checks;
mod model;

pub use blocks::{block_form, build_block_h, build_unitary_d_s, BlockTorus};
pub use checks::{check_lemma_form, check_lemma_ir, check_lemma_m7, check_lemma_nep, check_prop1};

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfarith::{build_field, Elem, FieldCtx, TABLE_LIMIT};
use crate::linalg::{HermitianForm, Mat};
use crate::{prime_power, Sign};
use model::{power_basis, FieldModel, PairModel};

/// (s, j) stands for T^s φ^j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TorusCoord {
    pub lambda_exp: u64,
    pub j: u64,
}

impl TorusCoord {
    pub fn new(lambda_exp: u64, j: u64) -> TorusCoord {
        TorusCoord { lambda_exp, j }
    }
}

/// Which Gram matrix a unitary torus should preserve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormChoice {
    /// Identity for n odd, [[0,E],[E,0]] for n even.
    Native,
    /// Always the identity.
    Identity,
}

enum Model {
    Single(FieldModel),
    Pair(PairModel),
}

pub struct TorusCtx {
    eps: Sign,
    n: usize,
    q: u64,
    field: Arc<FieldCtx>,
    big: Arc<FieldCtx>,
    model: Model,
    basis_change: Mat,
    basis_change_inv: Mat,
    form: Option<HermitianForm>,
    t: Mat,
    phi: Mat,
    phi_pows: Vec<Mat>,
    phi_inv_pows: Vec<Mat>,
    torus_order: u64,
    stride: u64,
    kappa: u64,
    phi_order: u64,
}

/// Build Sin_n^ε(q) and its generator T.
pub fn build_torus(eps: Sign, n: usize, q: u64) -> Result<(TorusCtx, Mat)> {
    let ctx = TorusCtx::new(eps, n, q, FormChoice::Native)?;
    let t = ctx.generator().clone();
    Ok((ctx, t))
}

/// The normalizing element φ of a built torus.
pub fn build_phi(ctx: &TorusCtx) -> Mat {
    ctx.phi().clone()
}

impl TorusCtx {
    pub fn new(eps: Sign, n: usize, q: u64, form_choice: FormChoice) -> Result<TorusCtx> {
        let (p, f) = prime_power(q)
            .ok_or_else(|| Error::InvalidInput(format!("q = {q} is not a prime power")))?;
        if n == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        let big_f = match eps {
            Sign::Plus => f as u64 * n as u64,
            Sign::Minus if n % 2 == 1 => 2 * f as u64 * n as u64,
            Sign::Minus => f as u64 * n as u64,
        };
        let big_order = (p as u128).checked_pow(big_f as u32);
        if big_order.is_none_or(|o| o > TABLE_LIMIT as u128) {
            return Err(Error::FieldTooLarge { p, f: big_f as u32 });
        }
        let k_f = if eps == Sign::Plus { f } else { 2 * f };
        let field = build_field(p, k_f)?;
        let big = build_field(p, big_f as u32)?;
        let qn = q.pow(n as u32);
        match eps {
            Sign::Plus => Self::build_linear(eps, n, q, field, big, qn),
            Sign::Minus if n % 2 == 1 => Self::build_odd_unitary(n, q, field, big, qn),
            Sign::Minus => Self::build_even_unitary(n, q, field, big, qn, form_choice),
        }
    }

    fn build_linear(
        eps: Sign,
        n: usize,
        q: u64,
        k: Arc<FieldCtx>,
        big: Arc<FieldCtx>,
        qn: u64,
    ) -> Result<TorusCtx> {
        let m = FieldModel::new(&k, &big, power_basis(&big, n))?;
        let theta = big.theta();
        let t = m.matrix_of(|v| big.mul(v, theta))?;
        let phi = m.matrix_of(|v| big.pow_u64(v, q))?;
        let torus_order = qn - 1;
        let id = Mat::identity(&k, n);
        Self::finish(
            eps,
            n,
            q,
            k,
            big,
            Model::Single(m),
            id.clone(),
            id,
            None,
            t,
            phi,
            torus_order,
            1,
            q % torus_order.max(1),
        )
    }

    fn build_odd_unitary(
        n: usize,
        q: u64,
        k: Arc<FieldCtx>,
        big: Arc<FieldCtx>,
        qn: u64,
    ) -> Result<TorusCtx> {
        let m = FieldModel::new(&k, &big, power_basis(&big, n))?;
        let stride = qn - 1;
        let lambda = big.theta_pow(stride);
        let t_model = m.matrix_of(|v| big.mul(v, lambda))?;
        let phi_model = m.matrix_of(|v| big.pow_u64(v, q * q))?;
        let mut g = Mat::zeros(&k, n, n);
        for i in 0..n {
            for j in 0..n {
                let x = big.mul(m.basis[i], big.pow_u64(m.basis[j], qn));
                g.set(i, j, m.trace(x)?);
            }
        }
        let form_model = HermitianForm::new(g)?;
        let c = form_model.orthonormal_basis()?;
        let c_inv = c.inv()?;
        let t = &(&c * &t_model) * &c_inv;
        let phi = &(&c * &phi_model) * &c_inv;
        let form = HermitianForm::identity(&k, n)?;
        let torus_order = qn + 1;
        let kappa = (q * q) % torus_order;
        Self::finish(
            Sign::Minus,
            n,
            q,
            k,
            big,
            Model::Single(m),
            c,
            c_inv,
            Some(form),
            t,
            phi,
            torus_order,
            stride,
            kappa,
        )
    }

    fn build_even_unitary(
        n: usize,
        q: u64,
        k: Arc<FieldCtx>,
        big: Arc<FieldCtx>,
        qn: u64,
        form_choice: FormChoice,
    ) -> Result<TorusCtx> {
        let half = n / 2;
        let first = FieldModel::new(&k, &big, power_basis(&big, half))?;
        // trace-dual basis d_j, then b'_j = d_j^{q^{n-1}} so that Tr(b_i · b'_j^q) = δ_ij
        let mut w = Mat::zeros(&k, half, half);
        for i in 0..half {
            for j in 0..half {
                w.set(i, j, first.trace(big.mul(first.basis[i], first.basis[j]))?);
            }
        }
        let w_inv = w.inv()?;
        let dual: Vec<Elem> = (0..half)
            .map(|j| {
                let col: Vec<Elem> = (0..half).map(|kk| w_inv.get(kk, j)).collect();
                big.pow_u64(first.from_coords(&col), q.pow(n as u32 - 1))
            })
            .collect();
        let second = FieldModel::new(&k, &big, dual)?;
        let pm = PairModel { first, second };

        let theta = big.theta();
        let mu = big.inv(big.pow_u64(theta, q.pow(n as u32 - 1)))?;
        let t_model = pm.matrix_of(|(u, w)| (big.mul(u, theta), big.mul(w, mu)))?;
        let phi_model = pm.matrix_of(|(u, w)| (big.pow_u64(w, q * q), u))?;

        let basis = pm.basis();
        let tr = |x: Elem| pm.first.trace(x);
        let mut g = Mat::zeros(&k, n, n);
        for (i, &(u1, w1)) in basis.iter().enumerate() {
            for (j, &(u2, w2)) in basis.iter().enumerate() {
                let a = tr(big.mul(u1, big.pow_u64(w2, q)))?;
                let b = tr(big.mul(big.pow_u64(w1, q * q), big.pow_u64(u2, q)))?;
                g.set(i, j, k.add(a, b));
            }
        }
        let expected = Mat::from_fn(&k, n, n, |i, j| {
            if (i + half == j) || (j + half == i) {
                Elem::ONE
            } else {
                Elem::ZERO
            }
        });
        if g != expected {
            return Err(Error::ConstructionFailure(
                "pair model Gram matrix is not [[0,E],[E,0]]".into(),
            ));
        }
        let form_native = HermitianForm::new(g)?;
        let (c, c_inv, form) = match form_choice {
            FormChoice::Native => (Mat::identity(&k, n), Mat::identity(&k, n), form_native),
            FormChoice::Identity => {
                let c = form_native.orthonormal_basis()?;
                let ci = c.inv()?;
                (c, ci, HermitianForm::identity(&k, n)?)
            }
        };
        let t = &(&c * &t_model) * &c_inv;
        let phi = &(&c * &phi_model) * &c_inv;
        let torus_order = qn - 1;
        let kappa = (torus_order - q % torus_order) % torus_order;
        Self::finish(
            Sign::Minus,
            n,
            q,
            k,
            big,
            Model::Pair(pm),
            c,
            c_inv,
            Some(form),
            t,
            phi,
            torus_order,
            1,
            kappa,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        eps: Sign,
        n: usize,
        q: u64,
        field: Arc<FieldCtx>,
        big: Arc<FieldCtx>,
        model: Model,
        basis_change: Mat,
        basis_change_inv: Mat,
        form: Option<HermitianForm>,
        t: Mat,
        phi: Mat,
        torus_order: u64,
        stride: u64,
        kappa: u64,
    ) -> Result<TorusCtx> {
        let mut phi_pows = vec![Mat::identity(&field, n)];
        for j in 1..n {
            phi_pows.push(&phi_pows[j - 1] * &phi);
        }
        let phi_inv = phi.inv()?;
        let mut phi_inv_pows = vec![Mat::identity(&field, n)];
        for j in 1..n {
            phi_inv_pows.push(&phi_inv_pows[j - 1] * &phi_inv);
        }
        let phi_order = phi.element_order(None)?;
        let ctx = TorusCtx {
            eps,
            n,
            q,
            field,
            big,
            model,
            basis_change,
            basis_change_inv,
            form,
            t,
            phi,
            phi_pows,
            phi_inv_pows,
            torus_order,
            stride,
            kappa,
            phi_order,
        };
        ctx.self_check()?;
        Ok(ctx)
    }

    /// Checks the defining identities; failure is an internal error.
    fn self_check(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::ConstructionFailure(m.to_string()));
        if self.t.element_order(Some(self.torus_order))? != self.torus_order {
            return bad("torus generator has the wrong order");
        }
        let lhs =
            &(&self.phi_inv_pows[1.min(self.n - 1)] * &self.t) * &self.phi_pows[1.min(self.n - 1)];
        let expected = if self.n == 1 {
            self.t.clone()
        } else {
            self.t.pow_u64(self.kappa)
        };
        if lhs != expected {
            return bad("φ does not act on T as expected");
        }
        if let Some(form) = &self.form {
            if !form.preserves(&self.t)? || !form.preserves(&self.phi)? {
                return bad("generator is not unitary");
            }
        }
        if self.eps == Sign::Plus && self.n >= 2 && self.t.has_invariant_subspace() {
            return bad("torus generator is reducible");
        }
        Ok(())
    }

    pub fn eps(&self) -> Sign {
        self.eps
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Field of matrix entries: GF(q) or GF(q²).
    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }
    /// Field of the model.
    pub fn big_field(&self) -> &Arc<FieldCtx> {
        &self.big
    }
    pub fn basis_change(&self) -> &Mat {
        &self.basis_change
    }
    pub fn form(&self) -> Option<&HermitianForm> {
        self.form.as_ref()
    }
    pub fn generator(&self) -> &Mat {
        &self.t
    }
    pub fn phi(&self) -> &Mat {
        &self.phi
    }
    /// q^n − (ε1)^n.
    pub fn torus_order(&self) -> u64 {
        self.torus_order
    }
    /// |Sin ⋊ ⟨φ⟩|.
    pub fn normalizer_order(&self) -> u64 {
        self.torus_order * self.n as u64
    }
    /// Exponent of the big field's θ carried by T.
    pub fn stride(&self) -> u64 {
        self.stride
    }
    /// κ with φ^{-1} T φ = T^κ.
    pub fn kappa(&self) -> u64 {
        self.kappa
    }
    /// Measured order of φ.
    pub fn phi_order(&self) -> u64 {
        self.phi_order
    }

    pub fn coords_inv(&self, c: TorusCoord) -> Mat {
        let s = c.lambda_exp % self.torus_order;
        &self.t.pow_u64(s) * &self.phi_pows[(c.j % self.n as u64) as usize]
    }

    /// Coordinates of an element of ⟨T, φ⟩.
    pub fn coords(&self, m: &Mat) -> Result<TorusCoord> {
        if m.rows() != self.n || m.cols() != self.n || **m.ctx() != *self.field {
            return Err(Error::NotInNormalizer);
        }
        for j in 0..self.n {
            let nm = m * &self.phi_inv_pows[j];
            if &nm * &self.t != &self.t * &nm {
                continue;
            }
            let model = &(&self.basis_change_inv * &nm) * &self.basis_change;
            let row0 = model.row(0);
            let lambda = match &self.model {
                Model::Single(fm) => fm.from_coords(row0),
                Model::Pair(pm) => pm.first.from_coords(&row0[..pm.first.dim()]),
            };
            let Ok(l) = self.big.log(lambda) else {
                continue;
            };
            if l % self.stride != 0 {
                continue;
            }
            let c = TorusCoord::new((l / self.stride) % self.torus_order, j as u64);
            if self.coords_inv(c) == *m {
                return Ok(c);
            }
        }
        Err(Error::NotInNormalizer)
    }

    /// Product in coordinates: (s,j)(t,k) = (s + t·κ^{-j}, j + k).
    pub fn coord_mul(&self, a: TorusCoord, b: TorusCoord) -> TorusCoord {
        let nn = self.n as u64;
        let m = self.torus_order;
        let kinv = pow_mod(self.kappa, (nn - a.j % nn) % nn, m);
        let s =
            (a.lambda_exp as u128 + (b.lambda_exp as u128 * kinv as u128) % m as u128) % m as u128;
        TorusCoord::new(s as u64, (a.j + b.j) % nn)
    }

    pub fn semidirect_pow(&self, c: TorusCoord, r: u64) -> TorusCoord {
        semidirect_pow(c, r, self.kappa, self.n as u64, self.torus_order)
    }

    /// All elements as coordinates, torus-major.
    pub fn all_coords(&self) -> impl Iterator<Item = TorusCoord> + '_ {
        (0..self.n as u64)
            .flat_map(move |j| (0..self.torus_order).map(move |s| TorusCoord::new(s, j)))
    }

    /// Prime-order elements and their orders, found by coordinate arithmetic.
    /// Torus elements (s, 0) have order m/gcd(s, m); elements with j ≠ 0 can
    /// only have prime order r when r divides n.
    pub fn prime_order_coords(&self) -> Vec<(TorusCoord, u64)> {
        let m = self.torus_order;
        let nn = self.n as u64;
        let n_primes = crate::bounds::prime_divisors(nn);
        let mut out = Vec::new();
        for c in self.all_coords() {
            if c.j == 0 {
                if c.lambda_exp == 0 {
                    continue;
                }
                let o = m / num_integer::gcd(c.lambda_exp, m);
                if num_prime::nt_funcs::is_prime64(o) {
                    out.push((c, o));
                }
                continue;
            }
            for &r in &n_primes {
                if (r * c.j) % nn == 0 && self.semidirect_pow(c, r) == TorusCoord::new(0, 0) {
                    out.push((c, r));
                    break;
                }
            }
        }
        out
    }

    /// Every element of the normalizer as a matrix, in [`TorusCtx::all_coords`] order.
    pub fn enumerate_matrices(&self) -> Vec<Mat> {
        let mut torus = Vec::with_capacity(self.torus_order as usize);
        let mut cur = Mat::identity(&self.field, self.n);
        for _ in 0..self.torus_order {
            torus.push(cur.clone());
            cur = &cur * &self.t;
        }
        let mut out = Vec::with_capacity(torus.len() * self.n);
        for pj in &self.phi_pows {
            out.extend(torus.iter().map(|t| t * pj));
        }
        out
    }

    /// The linear-algebra data of the torus in text form.
    pub fn dump(&self) -> Result<String> {
        let mut s = format!(
            "# Sin_{}^{}({}) order {}\n",
            self.n, self.eps, self.q, self.torus_order
        );
        s.push_str(&self.field.header());
        s.push('\n');
        s.push_str("# T\n");
        s.push_str(&self.t.to_text()?);
        s.push_str(&format!("# phi (order {})\n", self.phi_order));
        s.push_str(&self.phi.to_text()?);
        if let Some(form) = &self.form {
            s.push_str("# form\n");
            s.push_str(&form.gram().to_text()?);
        }
        Ok(s)
    }
}

/// (s, j)^r = (s·Σ_{i<r} κ^{(n−j)i}, r·j) modulo (m, n).
pub fn semidirect_pow(c: TorusCoord, r: u64, kappa: u64, n: u64, m: u64) -> TorusCoord {
    let step = pow_mod(kappa, (n - c.j % n) % n, m);
    if step == 1 % m {
        let s = (c.lambda_exp as u128 * r as u128) % m as u128;
        return TorusCoord::new(s as u64, (c.j * r) % n);
    }
    let mut sum = 0u128;
    let mut term = 1u128 % m as u128;
    for _ in 0..r {
        sum = (sum + term) % m as u128;
        term = term * step as u128 % m as u128;
    }
    let s = (c.lambda_exp as u128 * sum) % m as u128;
    TorusCoord::new(s as u64, (c.j * r) % n)
}

/// κ for each case, reduced modulo the torus order.
pub fn kappa_for(eps: Sign, n: u64, q: u64) -> u64 {
    let qn = q.pow(n as u32);
    match eps {
        Sign::Plus => q % (qn - 1).max(1),
        Sign::Minus if n % 2 == 1 => (q * q) % (qn + 1),
        Sign::Minus => (qn - 1 - q % (qn - 1)) % (qn - 1),
    }
}

pub(crate) fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    crate::gfarith::poly::powmod_u64(b, e, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tori() {
        let (ctx, t) = build_torus(Sign::Plus, 2, 2).unwrap();
        assert_eq!(t.element_order(None).unwrap(), 3);
        let k = ctx.field().clone();
        assert_eq!(t, Mat::from_ints(&k, &[&[0, 1], &[1, 1]]));
        let (ctx6, _) = build_torus(Sign::Plus, 6, 2).unwrap();
        assert_eq!(ctx6.normalizer_order(), 378);
        assert_eq!(ctx6.phi_order(), 6);
        let (u3, t3) = build_torus(Sign::Minus, 3, 2).unwrap();
        assert_eq!(t3.element_order(None).unwrap(), 9);
        let form = u3.form().unwrap();
        for s in 0..9 {
            assert!(form.preserves(&t3.pow_u64(s)).unwrap());
        }
        let (u4, t4) = build_torus(Sign::Minus, 4, 2).unwrap();
        let phi = u4.phi();
        let lhs = &(&phi.inv().unwrap() * &t4) * phi;
        assert_eq!(lhs, t4.pow_i64(-2).unwrap());
    }

    #[test]
    fn semidirect_example() {
        let c = semidirect_pow(TorusCoord::new(1, 4), 3, 2, 6, 63);
        assert_eq!(c, TorusCoord::new(21, 0));
    }

    #[test]
    fn coords_round_trip() {
        for (eps, n, q) in [
            (Sign::Plus, 3, 2),
            (Sign::Minus, 3, 2),
            (Sign::Minus, 4, 2),
            (Sign::Minus, 2, 3),
            (Sign::Plus, 1, 5),
            (Sign::Minus, 1, 3),
        ] {
            let ctx = TorusCtx::new(eps, n, q, FormChoice::Native).unwrap();
            for (c, m) in ctx.all_coords().zip(ctx.enumerate_matrices()) {
                assert_eq!(ctx.coords(&m).unwrap(), c, "{eps} {n} {q}");
            }
        }
    }
}
