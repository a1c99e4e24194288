use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::{int, to_fraction_string, Rational};

/// Power series in `u` known through `u^order`; coefficients past the order
/// are unknown rather than zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPowerSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedPowerSeries {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c·u^k`.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Pads with zeros or truncates to exactly `order + 1` coefficients.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Self { coeffs: (0..=order).map(f).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Panics past the truncation order.
    pub fn coeff(&self, i: usize) -> &Rational {
        assert!(i <= self.order(), "coefficient u^{i} lies beyond order {}", self.order());
        &self.coeffs[i]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        Self { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |i| &self.coeffs[i] + &other.coeffs[i])
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |i| &self.coeffs[i] - &other.coeffs[i])
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self { coeffs: out }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplicative inverse; `None` unless the constant term is nonzero.
    pub fn inv(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.recip();
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut s = Rational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    s += &self.coeffs[i] * &out[k - i];
                }
            }
            out.push(-s * &inv0);
        }
        Some(Self { coeffs: out })
    }

    /// `X(a·u)`.
    pub fn scale_var(&self, a: &Rational) -> Self {
        let mut p = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &p);
            p *= a;
        }
        Self { coeffs: out }
    }

    /// `u^k · X`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        Self::from_fn(n, |i| if i >= k { self.coeffs[i - k].clone() } else { Rational::zero() })
    }

    /// `(1 - u)^{-b}` by its binomial coefficients `C(n + b - 1, b - 1)`.
    pub fn one_minus_u_pow_neg(b: u32, order: usize) -> Self {
        if b == 0 {
            return Self::one(order);
        }
        let mut c = BigInt::one();
        let mut out = Vec::with_capacity(order + 1);
        for n in 0..=order {
            out.push(Rational::from_integer(c.clone()));
            // C(n + b, b - 1) = C(n + b - 1, b - 1) (n + b) / (n + 1)
            c = c * BigInt::from(n as u64 + b as u64) / BigInt::from(n as u64 + 1);
        }
        Self { coeffs: out }
    }

    /// `(1 - u)^b` for `b ≥ 0`.
    pub fn one_minus_u_pow(b: u32, order: usize) -> Self {
        let mut c = BigInt::one();
        let mut out = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let v = if k as u32 <= b {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                int(sign) * Rational::from_integer(c.clone())
            } else {
                Rational::zero()
            };
            out.push(v);
            if (k as u32) < b {
                c = c * BigInt::from(b - k as u32) / BigInt::from(k as u64 + 1);
            }
        }
        Self { coeffs: out }
    }

    /// `X / (1 - u)`: coefficient `c` is the prefix sum of `X` through `c`.
    pub fn prefix_sum_division(&self) -> Self {
        let mut acc = Rational::zero();
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    acc += c;
                    acc.clone()
                })
                .collect(),
        }
    }
}

impl fmt::Display for TruncatedPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().map(to_fraction_string).collect();
        write!(f, "[{}] + O(u^{})", terms.join(", "), self.order() + 1)
    }
}

/// Free-function form of [`TruncatedPowerSeries::prefix_sum_division`].
pub fn prefix_sum_division(x: &TruncatedPowerSeries) -> TruncatedPowerSeries {
    x.prefix_sum_division()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn inverse_and_binomials() {
        let x = TruncatedPowerSeries::from_coeffs(vec![int(2), ratio(1, 3), int(-5)], 8);
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), TruncatedPowerSeries::one(8));
        assert!(x.shift(1).inv().is_none());
        for b in 0..5 {
            let a = TruncatedPowerSeries::one_minus_u_pow(b, 10);
            let c = TruncatedPowerSeries::one_minus_u_pow_neg(b, 10);
            assert_eq!(a.mul(&c), TruncatedPowerSeries::one(10));
        }
    }

    #[test]
    fn prefix_sums() {
        let ones = TruncatedPowerSeries::one(6).prefix_sum_division();
        assert!(ones.coeffs().iter().all(|c| *c == int(1)));
        let x = TruncatedPowerSeries::one_minus_u_pow(1, 6);
        assert_eq!(prefix_sum_division(&x), TruncatedPowerSeries::one(6));
    }

    #[test]
    fn truncation_is_min_order() {
        let a = TruncatedPowerSeries::one(3);
        let b = TruncatedPowerSeries::one(7);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(a.add(&b).order(), 3);
    }
}
