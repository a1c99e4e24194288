//! Finite fields `GF(p^m)` with discrete-log tables.
//!
//! Elements are encoded as integers `Σ c_i p^i` where `(c_0, …, c_{m-1})` are
//! coordinates in the power basis `1, ξ, …, ξ^{m-1}` of a fixed primitive
//! element `ξ`. Zero is `0` and one is `1`; elements of the prime subfield
//! encode as their integer value.

use std::fmt;

use crate::error::{Error, Result};

/// An element of some [`Field`], by encoding. Carries no reference to its
/// field; every operation goes through the owning `Field`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Largest field size for which tables are built.
pub const MAX_FIELD_SIZE: u64 = 1 << 22;

#[derive(Clone)]
pub struct Field {
    p: u32,
    degree: u32,
    size: u32,
    /// Monic primitive polynomial over GF(p), lowest degree first.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, e))` with `n = p^e`, `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if !n.is_multiple_of(p) {
        p = n;
    }
    let mut m = n;
    let mut e = 0;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomial helpers over GF(p) on raw u32 coefficients, used only to
// test candidate moduli before tables exist.
fn mulmod_p(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let deg = m.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for i in (deg..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        for j in 0..=deg {
            let sub = c * m[j] as u64 % p as u64;
            prod[i - deg + j] = (prod[i - deg + j] + p as u64 - sub) % p as u64;
        }
    }
    prod.truncate(deg);
    prod.resize(deg, 0);
    prod.into_iter().map(|x| x as u32).collect()
}

fn powmod_p(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let deg = m.len() - 1;
    let mut result = vec![0u32; deg];
    result[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod_p(&result, &b, m, p);
        }
        b = mulmod_p(&b, &b, m, p);
        e >>= 1;
    }
    result
}

fn is_primitive_modulus(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if m[0] == 0 {
        return false;
    }
    let size = (p as u64).pow(deg as u32);
    let order = size - 1;
    let mut xi = vec![0u32; deg];
    if deg == 1 {
        // ξ is the root of t + m0, i.e. -m0.
        xi[0] = (p - m[0]) % p;
    } else {
        xi[1] = 1;
    }
    let mut one = vec![0u32; deg];
    one[0] = 1;
    if powmod_p(&xi, order, m, p) != one {
        return false;
    }
    prime_factors(order)
        .into_iter()
        .all(|r| powmod_p(&xi, order / r, m, p) != one)
}

impl Field {
    /// `GF(p^degree)` with the least primitive modulus in Conway's ordering
    /// (compatibility between subfields is not enforced).
    pub fn new(p: u32, degree: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let size = (p as u128).checked_pow(degree).unwrap_or(u128::MAX);
        if size > MAX_FIELD_SIZE as u128 {
            return Err(Error::GuardExceeded { what: "field size", size, guard: MAX_FIELD_SIZE as u128 });
        }
        let d = degree as usize;
        // Conway ordering: t^d - c1 t^{d-1} + c2 t^{d-2} - ..., (c1, ..., cd)
        // lexicographically least with c1 most significant.
        let total = (p as u64).pow(degree);
        for idx in 0..total {
            let mut c = vec![0u32; d];
            let mut r = idx;
            for k in (0..d).rev() {
                c[k] = (r % p as u64) as u32;
                r /= p as u64;
            }
            let mut m = vec![0u32; d + 1];
            m[d] = 1;
            for i in 1..=d {
                let v = c[i - 1] % p;
                m[d - i] = if i % 2 == 1 { (p - v) % p } else { v };
            }
            if is_primitive_modulus(&m, p) {
                return Field::with_modulus(p, m);
            }
        }
        unreachable!("every finite field has a primitive element")
    }

    /// Builds the field from a monic primitive modulus over GF(p), lowest
    /// degree first.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus(format!("{modulus:?} is not a monic polynomial over GF({p})")));
        }
        let degree = (modulus.len() - 1) as u32;
        let size128 = (p as u128).checked_pow(degree).unwrap_or(u128::MAX);
        if size128 > MAX_FIELD_SIZE as u128 {
            return Err(Error::GuardExceeded { what: "field size", size: size128, guard: MAX_FIELD_SIZE as u128 });
        }
        if !is_primitive_modulus(&modulus, p) {
            return Err(Error::InvalidModulus(format!("{modulus:?} is not primitive over GF({p})")));
        }
        let size = size128 as u32;
        let d = degree as usize;
        let mut exp = vec![0u32; size as usize - 1];
        let mut log = vec![0u32; size as usize];
        let mut coords = vec![0u32; d];
        coords[0] = 1;
        let encode = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &x| acc * p + x);
        let xi0 = (p - modulus[0]) % p;
        for (i, slot) in exp.iter_mut().enumerate() {
            let e = encode(&coords);
            *slot = e;
            log[e as usize] = i as u32;
            // Multiply by ξ.
            if d == 1 {
                coords[0] = ((coords[0] as u64 * xi0 as u64) % p as u64) as u32;
            } else {
                let top = coords[d - 1];
                for k in (1..d).rev() {
                    coords[k] = coords[k - 1];
                }
                coords[0] = 0;
                for k in 0..d {
                    let sub = (top as u64 * modulus[k] as u64 % p as u64) as u32;
                    coords[k] = (coords[k] + p - sub) % p;
                }
            }
        }
        Ok(Field { p, degree, size, modulus, exp, log })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size).map(Elem)
    }

    /// The primitive element ξ.
    pub fn generator(&self) -> Elem {
        Elem(self.exp[1 % self.exp.len()])
    }

    /// Prime-subfield image of an integer.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn coords(&self, x: Elem) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.degree as usize);
        let mut r = x.0;
        for _ in 0..self.degree {
            v.push(r % self.p);
            r /= self.p;
        }
        v
    }

    pub fn from_coords(&self, c: &[u32]) -> Elem {
        Elem(c.iter().rev().fold(0u32, |acc, &x| acc * self.p + x % self.p))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.degree == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y, mut place, mut out) = (a.0, b.0, 1u32, 0u32);
        while x > 0 || y > 0 {
            let s = x % self.p + y % self.p;
            out += (if s >= self.p { s - self.p } else { s }) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        if self.degree == 1 {
            return Elem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let (mut x, mut place, mut out) = (a.0, 1u32, 0u32);
        while x > 0 {
            let d = x % self.p;
            out += (if d == 0 { 0 } else { self.p - d }) * place;
            x /= self.p;
            place *= self.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let n = self.size - 1;
        let s = self.log[a.index()] + self.log[b.index()];
        Elem(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(!a.is_zero(), "inverse of zero");
        let n = self.size - 1;
        let l = self.log[a.index()];
        Elem(self.exp[((n - l) % n) as usize])
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let n = (self.size - 1) as u64;
        let l = self.log[a.index()] as u64;
        Elem(self.exp[((l * (e % n)) % n) as usize])
    }

    /// Discrete logarithm to base ξ; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.index()])
    }

    /// `ξ^k`.
    pub fn exp(&self, k: u64) -> Elem {
        Elem(self.exp[(k % (self.size as u64 - 1)) as usize])
    }

    /// Absolute Frobenius `x ↦ x^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    /// The unique `y` with `y^p = a`.
    pub fn pth_root(&self, a: Elem) -> Elem {
        self.pow(a, (self.size / self.p) as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> u64 {
        assert!(!a.is_zero());
        let n = (self.size - 1) as u64;
        let l = self.log[a.index()] as u64;
        n / num_integer::gcd(n, l)
    }
}
