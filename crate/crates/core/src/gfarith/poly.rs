//! Dense polynomials over a prime field GF(p), stored as little-endian
//! coefficient vectors. These back the modulus search and the table-free
//! multiplication path of [`super::FieldCtx`].

#[inline]
pub(crate) fn mulmod_u64(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod_u64(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, base, p);
        }
        base = mulmod_u64(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub(crate) fn inv_mod_prime(a: u64, p: u64) -> u64 {
    powmod_u64(a, p - 2, p)
}

/// Remove trailing zero coefficients.
pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Product of `a` and `b` reduced modulo the monic polynomial `m` (degree f).
/// Inputs have length at most f; the result has length exactly f.
pub(crate) fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let f = m.len() - 1;
    let mut prod = vec![0u128; a.len() + b.len()];
    let p128 = p as u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p128;
        }
    }
    let mut r: Vec<u64> = prod.into_iter().map(|c| c as u64).collect();
    reduce(&mut r, m, p);
    r.resize(f, 0);
    r
}

/// In-place reduction modulo a monic polynomial.
pub(crate) fn reduce(r: &mut Vec<u64>, m: &[u64], p: u64) {
    let f = m.len() - 1;
    for top in (f..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        r[top] = 0;
        for k in 0..f {
            let sub = mulmod_u64(c, m[k], p);
            let idx = top - f + k;
            r[idx] = (r[idx] + p - sub) % p;
        }
    }
    r.truncate(f.min(r.len()));
}

/// `x^e mod m` over GF(p).
pub(crate) fn x_pow_mod(e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let f = m.len() - 1;
    let mut base = vec![0u64; f];
    if f == 1 {
        base[0] = (p - m[0]) % p;
    } else {
        base[1] = 1;
    }
    pow_mod(&base, e, m, p)
}

pub(crate) fn pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let f = m.len() - 1;
    let mut acc = vec![0u64; f];
    acc[0] = 1 % p;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn is_one(v: &[u64]) -> bool {
    v.first() == Some(&1) && v[1..].iter().all(|&c| c == 0)
}

/// Polynomial remainder over GF(p); `b` must be nonzero after trimming.
pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead_inv = inv_mod_prime(b[db], p);
    while r.len() > db {
        let top = r.len() - 1;
        let c = mulmod_u64(r[top], lead_inv, p);
        for k in 0..=db {
            let idx = top - db + k;
            r[idx] = (r[idx] + p - mulmod_u64(c, b[k], p)) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod_prime(lead, p);
        for c in a.iter_mut() {
            *c = mulmod_u64(*c, inv, p);
        }
    }
    a
}

/// Rabin's irreducibility test for a monic polynomial of degree f over GF(p).
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let f = (m.len() - 1) as u64;
    if f == 1 {
        return true;
    }
    // x^(p^f) must reduce to x, and x^(p^(f/l)) - x must be coprime to m.
    let mut xp = x_pow_mod(1, m, p);
    let mut powers = Vec::with_capacity(f as usize);
    for _ in 0..f {
        xp = pow_mod(&xp, p, m, p);
        powers.push(xp.clone());
    }
    let mut x = vec![0u64; f as usize];
    x[1] = 1;
    if powers[f as usize - 1] != x {
        return false;
    }
    for (ell, _) in num_prime::nt_funcs::factorize64(f) {
        let k = (f / ell) as usize;
        let mut h = powers[k - 1].clone();
        h[1] = (h[1] + p - 1) % p;
        let g = gcd(m, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}
