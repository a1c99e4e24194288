//! Dense univariate polynomials over a [`Field`].

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::Zero;

use super::field::{Elem, Field};

/// Coefficients lowest degree first, with no trailing zeros (the zero
/// polynomial has an empty coefficient vector).
///
/// Ordering is canonical and field-independent: by degree, then by
/// coefficient encodings from the leading coefficient downwards.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![Elem::ONE] }
    }

    /// The indeterminate `t`.
    pub fn t() -> Poly {
        Poly { coeffs: vec![Elem::ZERO, Elem::ONE] }
    }

    pub fn constant(c: Elem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Elem, k: usize) -> Poly {
        let mut v = vec![Elem::ZERO; k + 1];
        v[k] = c;
        Poly::from_coeffs(v)
    }

    /// `t - a`.
    pub fn linear(f: &Field, a: Elem) -> Poly {
        Poly::from_coeffs(vec![f.neg(a), Elem::ONE])
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last() == Some(&Elem::ZERO) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Elem::ONE]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0`; convenient where zero is excluded upstream.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elem::ONE
    }

    pub fn map_coeffs(&self, mut g: impl FnMut(Elem) -> Elem) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&c| g(c)).collect())
    }

    pub fn add(&self, f: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, f: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, f: &Field) -> Poly {
        self.map_coeffs(|c| f.neg(c))
    }

    pub fn scale(&self, f: &Field, c: Elem) -> Poly {
        self.map_coeffs(|x| f.mul(x, c))
    }

    pub fn mul(&self, f: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, f: &Field, mut e: u64) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(f, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base);
            }
        }
        result
    }

    /// Quotient and remainder; panics if `divisor` is zero.
    pub fn divrem(&self, f: &Field, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        if self.coeffs.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = f.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let factor = f.mul(c, lead_inv);
            quot[i - dd] = factor;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(factor, dc));
            }
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, f: &Field, divisor: &Poly) -> Poly {
        self.divrem(f, divisor).1
    }

    pub fn divides(&self, f: &Field, other: &Poly) -> bool {
        other.rem(f, self).is_zero()
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f, f.inv(self.leading()))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, f: &Field, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, f: &Field, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn mul_mod(&self, f: &Field, other: &Poly, modulus: &Poly) -> Poly {
        self.mul(f, other).rem(f, modulus)
    }

    pub fn pow_mod(&self, f: &Field, e: &BigUint, modulus: &Poly) -> Poly {
        let mut result = Poly::one().rem(f, modulus);
        if e.is_zero() {
            return result;
        }
        let base = self.rem(f, modulus);
        for i in (0..e.bits()).rev() {
            result = result.mul_mod(f, &result, modulus);
            if e.bit(i) {
                result = result.mul_mod(f, &base, modulus);
            }
        }
        result
    }

    /// All monic polynomials of exact degree `d`, in canonical order.
    pub fn monic_of_degree(f: &Field, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = f.size() as u64;
        let count = q.checked_pow(d as u32).expect("enumeration too large");
        (0..count).map(move |mut idx| {
            let mut c = vec![Elem::ZERO; d + 1];
            c[d] = Elem::ONE;
            for slot in c.iter_mut().take(d) {
                *slot = Elem((idx % q) as u32);
                idx /= q;
            }
            Poly { coeffs: c }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, m: u32) -> Field {
        Field::new(p, m).unwrap()
    }

    #[test]
    fn divrem_reconstructs() {
        let f = gf(3, 2);
        let a = Poly::from_coeffs(vec![Elem(4), Elem(0), Elem(7), Elem(2), Elem(1)]);
        let b = Poly::from_coeffs(vec![Elem(5), Elem(3), Elem(2)]);
        let (q, r) = a.divrem(&f, &b);
        assert!(r.deg() < b.deg() || r.is_zero());
        assert_eq!(q.mul(&f, &b).add(&f, &r), a);
    }

    #[test]
    fn gcd_is_monic_common_divisor() {
        let f = gf(2, 2);
        let w = f.generator();
        let g1 = Poly::linear(&f, w);
        let g2 = Poly::linear(&f, Elem::ONE);
        let a = g1.mul(&f, &g2).mul(&f, &g2);
        let b = g2.mul(&f, &Poly::linear(&f, Elem::ZERO));
        assert_eq!(a.gcd(&f, &b), g2);
        assert_eq!(Poly::zero().gcd(&f, &b), b.monic(&f));
    }

    #[test]
    fn canonical_order() {
        let mut v: Vec<Poly> = Poly::monic_of_degree(&gf(2, 1), 1).collect();
        v.reverse();
        v.sort();
        // t < t + 1
        assert_eq!(v[0], Poly::t());
        assert!(Poly::one() < Poly::t());
    }

    #[test]
    fn pow_mod_matches_pow() {
        let f = gf(3, 1);
        let m = Poly::from_coeffs(vec![Elem(1), Elem(2), Elem(0), Elem(1)]);
        let x = Poly::from_coeffs(vec![Elem(2), Elem(1)]);
        let e = BigUint::from(11u32);
        assert_eq!(x.pow_mod(&f, &e, &m), x.pow(&f, 11).rem(&f, &m));
    }

    #[test]
    fn derivative_in_char_p() {
        let f = gf(2, 1);
        // (t^2 + 1)' = 0 in characteristic 2.
        let a = Poly::from_coeffs(vec![Elem(1), Elem(0), Elem(1)]);
        assert!(a.derivative(&f).is_zero());
    }
}
