use std::collections::{HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use rand::Rng;

use crate::bounds::group_order;
use crate::error::{Error, Result};
use crate::gfarith::{build_field, Elem, FieldCtx};
use crate::linalg::{perm_from_cycles, perm_matrix, HermitianForm, Mat};
use crate::{prime_power, Sign};

/// Default cap on enumerated subgroup sizes.
pub const DEFAULT_ELEMENT_CAP: u64 = 1_000_000;
/// Cap on q^{n²} for brute-force enumeration of an ambient group.
pub const BRUTE_FORCE_CAP: u64 = 10_000_000;

/// Elements of a finite group, as needed by enumeration and intersection.
pub trait GroupElem: Clone + Eq + Hash + Send + Sync + Debug {
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn is_one(&self) -> bool;
    /// True iff the element lies in the centre of the ambient group
    /// (scalar matrices for GL and GU).
    fn is_central(&self) -> bool;
}

impl GroupElem for Mat {
    fn compose(&self, other: &Self) -> Self {
        self * other
    }
    fn inverse(&self) -> Self {
        self.inv().expect("group elements are invertible")
    }
    fn is_one(&self) -> bool {
        self.is_identity()
    }
    fn is_central(&self) -> bool {
        self.is_scalar()
    }
}

/// An element (A, a) of GL_n(q) ⋊ ⟨τ⟩ with τ(B) = (B^{-1})^T, multiplied as
/// (A, a)(B, b) = (A·τ^a(B), a + b).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Twisted {
    pub mat: Mat,
    pub tau: bool,
}

impl Twisted {
    pub fn plain(mat: Mat) -> Twisted {
        Twisted { mat, tau: false }
    }
    pub fn twisted(mat: Mat) -> Twisted {
        Twisted { mat, tau: true }
    }
}

impl GroupElem for Twisted {
    fn compose(&self, other: &Self) -> Self {
        let rhs = if self.tau {
            other.mat.inv_transpose().expect("invertible")
        } else {
            other.mat.clone()
        };
        Twisted {
            mat: &self.mat * &rhs,
            tau: self.tau ^ other.tau,
        }
    }
    fn inverse(&self) -> Self {
        // (A, a)^{-1} = (τ^a(A^{-1}), a)
        let ai = self.mat.inv().expect("invertible");
        let m = if self.tau {
            ai.inv_transpose().expect("invertible")
        } else {
            ai
        };
        Twisted {
            mat: m,
            tau: self.tau,
        }
    }
    fn is_one(&self) -> bool {
        !self.tau && self.mat.is_identity()
    }
    /// λI commutes with τ only when λ = λ^{-1}.
    fn is_central(&self) -> bool {
        !self.tau && self.mat.is_scalar() && (&self.mat * &self.mat).is_identity()
    }
}

/// A classical group context: GL_n(q), or GU_n(q) for a given form, optionally
/// extended by τ.
#[derive(Clone, Debug)]
pub struct GroupCtx {
    pub eps: Sign,
    pub n: usize,
    pub q: u64,
    pub field: Arc<FieldCtx>,
    pub form: Option<HermitianForm>,
    pub tau_extended: bool,
}

impl GroupCtx {
    pub fn linear(n: usize, q: u64) -> Result<GroupCtx> {
        let (p, f) = prime_power(q)
            .ok_or_else(|| Error::InvalidInput(format!("q = {q} is not a prime power")))?;
        Ok(GroupCtx {
            eps: Sign::Plus,
            n,
            q,
            field: build_field(p, f)?,
            form: None,
            tau_extended: false,
        })
    }

    pub fn unitary(q: u64, form: HermitianForm) -> Result<GroupCtx> {
        let field = Arc::clone(form.ctx());
        if field.order() != q * q {
            return Err(Error::InvalidInput("form must be over GF(q^2)".into()));
        }
        Ok(GroupCtx {
            eps: Sign::Minus,
            n: form.dim(),
            q,
            field,
            form: Some(form),
            tau_extended: false,
        })
    }

    pub fn with_tau(mut self) -> Result<GroupCtx> {
        if self.eps != Sign::Plus {
            return Err(Error::InvalidInput(
                "τ extension is only defined for GL".into(),
            ));
        }
        self.tau_extended = true;
        Ok(self)
    }

    pub fn identity(&self) -> Mat {
        Mat::identity(&self.field, self.n)
    }

    /// Membership of a matrix in the (non-extended) classical group.
    pub fn contains(&self, m: &Mat) -> bool {
        if m.rows() != self.n || m.cols() != self.n || **m.ctx() != *self.field || m.rank() < self.n
        {
            return false;
        }
        match &self.form {
            Some(f) => f.preserves(m).unwrap_or(false),
            None => true,
        }
    }

    /// |GL_n(q)| or |GU_n(q)|, doubled when extended by τ.
    pub fn order(&self) -> BigUint {
        let o = group_order(self.eps, self.n, self.q);
        if self.tau_extended {
            o * 2u32
        } else {
            o
        }
    }

    /// A generating set of GL_n(q): diag(θ,1,…), I + E_12, the transposition
    /// (1 2) and the n-cycle. Unitary groups have no built-in generating set.
    pub fn generators(&self) -> Result<Vec<Mat>> {
        if self.form.is_some() {
            return Err(Error::InvalidInput(
                "no generating set for unitary groups; enumerate instead".into(),
            ));
        }
        let k = &self.field;
        let n = self.n;
        let mut d = Mat::identity(k, n);
        d.set(0, 0, k.theta());
        let mut gens = vec![d];
        if n >= 2 {
            let mut u = Mat::identity(k, n);
            u.set(0, 1, Elem::ONE);
            gens.push(u);
            gens.push(perm_matrix(&perm_from_cycles(n, &[&[1, 2]]), k)?);
            let cyc: Vec<usize> = (1..=n).collect();
            gens.push(perm_matrix(&perm_from_cycles(n, &[&cyc]), k)?);
        }
        Ok(gens)
    }

    /// A random element. For GU the rows of a random invertible matrix are
    /// orthonormalised and compared against the canonical orthonormal basis.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Result<Mat> {
        let k = &self.field;
        let a = loop {
            let m = Mat::from_fn(k, self.n, self.n, |_, _| Elem(rng.gen_range(0..k.order())));
            if m.rank() == self.n {
                break m;
            }
        };
        match &self.form {
            None => Ok(a),
            Some(form) => {
                let c1 = form.orthonormal_basis_from(&a)?;
                let c2 = form.orthonormal_basis()?;
                let g = &c2.inv()? * &c1;
                Ok(g)
            }
        }
    }

    /// Every element, by brute force over all n×n matrices (q^{n²} ≤ cap).
    pub fn enumerate(&self, cap: u64) -> Result<Vec<Mat>> {
        let k = &self.field;
        let cells = (self.n * self.n) as u32;
        let total = (k.order() as u128)
            .checked_pow(cells)
            .filter(|&t| t <= cap as u128)
            .ok_or_else(|| Error::EnumerationTooLarge {
                what: "ambient matrices".into(),
                size: format!("{}^{}", k.order(), cells),
                cap,
            })? as u64;
        use rayon::prelude::*;
        let out: Vec<Mat> = (0..total)
            .into_par_iter()
            .filter_map(|code| {
                let mut c = code;
                let m = Mat::from_fn(k, self.n, self.n, |_, _| {
                    let e = Elem(c % k.order());
                    c /= k.order();
                    e
                });
                self.contains(&m).then_some(m)
            })
            .collect();
        Ok(out)
    }
}

/// An enumerated element list with hashed membership.
#[derive(Clone, Debug)]
pub struct ElementSet<E: GroupElem> {
    pub list: Vec<E>,
    index: HashSet<E>,
}

impl<E: GroupElem> ElementSet<E> {
    pub fn new(list: Vec<E>) -> ElementSet<E> {
        let index = list.iter().cloned().collect();
        ElementSet { list, index }
    }
    pub fn contains(&self, e: &E) -> bool {
        self.index.contains(e)
    }
    pub fn len(&self) -> usize {
        self.list.len()
    }
    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }
}

type Membership<E> = Arc<dyn Fn(&E) -> bool + Send + Sync>;

/// A finite subgroup given by generators, with lazily enumerated elements and
/// optionally a pattern-based membership test.
pub struct SubgroupHandle<E: GroupElem = Mat> {
    pub ambient: GroupCtx,
    generators: Vec<E>,
    identity: E,
    order: Option<BigUint>,
    membership: Option<Membership<E>>,
    elements: OnceLock<ElementSet<E>>,
}

impl<E: GroupElem> SubgroupHandle<E> {
    pub fn new(ambient: GroupCtx, identity: E, generators: Vec<E>) -> SubgroupHandle<E> {
        SubgroupHandle {
            ambient,
            generators,
            identity,
            order: None,
            membership: None,
            elements: OnceLock::new(),
        }
    }

    pub fn with_order(mut self, order: BigUint) -> Self {
        self.order = Some(order);
        self
    }

    pub fn with_membership(mut self, f: impl Fn(&E) -> bool + Send + Sync + 'static) -> Self {
        self.membership = Some(Arc::new(f));
        self
    }

    /// Supply the element list directly (it must be the whole subgroup).
    pub fn with_elements(self, list: Vec<E>) -> Self {
        let set = ElementSet::new(list);
        let _ = self.elements.set(set);
        self
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }
    pub fn identity(&self) -> &E {
        &self.identity
    }

    /// The known order, or the enumerated size if enumeration has happened.
    pub fn order(&self) -> Option<BigUint> {
        self.order
            .clone()
            .or_else(|| self.elements.get().map(|s| BigUint::from(s.len())))
    }

    pub fn has_pattern_membership(&self) -> bool {
        self.membership.is_some()
    }

    /// All elements, closing the generators under multiplication if needed.
    pub fn enumerate(&self, cap: u64) -> Result<&ElementSet<E>> {
        if let Some(s) = self.elements.get() {
            if s.len() as u64 > cap {
                return Err(Error::CapExceeded(cap));
            }
            return Ok(s);
        }
        if let Some(o) = &self.order {
            if *o > BigUint::from(cap) {
                return Err(Error::CapExceeded(cap));
            }
        }
        let mut seen: HashSet<E> = HashSet::new();
        let mut list = vec![self.identity.clone()];
        seen.insert(self.identity.clone());
        let mut queue = VecDeque::from([self.identity.clone()]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = x.compose(g);
                if seen.insert(y.clone()) {
                    if list.len() as u64 >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    list.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let _ = self.elements.set(ElementSet::new(list));
        Ok(self.elements.get().expect("just set"))
    }

    pub fn cached(&self) -> Option<&ElementSet<E>> {
        self.elements.get()
    }

    /// Membership: pattern test when available, otherwise the enumerated set.
    pub fn contains(&self, e: &E) -> Result<bool> {
        if let Some(f) = &self.membership {
            return Ok(f(e));
        }
        Ok(self.enumerate(DEFAULT_ELEMENT_CAP)?.contains(e))
    }
}
