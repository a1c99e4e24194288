//! Closed rational intervals with outward dyadic rounding.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{from_biguint, int, parse_fraction, ratio, to_decimal, to_fraction_string, Rational};

/// Serialized as `["lo", "hi"]` fraction strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (to_fraction_string(&self.lo), to_fraction_string(&self.hi)).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Interval, D::Error> {
        let (lo, hi) = <(String, String)>::deserialize(d)?;
        let lo = parse_fraction(&lo).map_err(serde::de::Error::custom)?;
        let hi = parse_fraction(&hi).map_err(serde::de::Error::custom)?;
        if lo > hi {
            return Err(serde::de::Error::custom("interval with lo > hi"));
        }
        Ok(Interval { lo, hi })
    }
}

fn pow2(bits: u64) -> BigInt {
    BigInt::one() << bits
}

/// Largest multiple of `2^-bits` not above `r`.
pub fn round_down(r: &Rational, bits: u64) -> Rational {
    let s = pow2(bits);
    Rational::new((r.numer() * &s).div_floor(r.denom()), s)
}

/// Smallest multiple of `2^-bits` not below `r`.
pub fn round_up(r: &Rational, bits: u64) -> Rational {
    let s = pow2(bits);
    Rational::new((r.numer() * &s).div_ceil(r.denom()), s)
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Interval {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(r: Rational) -> Interval {
        Interval { lo: r.clone(), hi: r }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Every point is strictly below every point of `other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn round_out(&self, bits: u64) -> Interval {
        Interval { lo: round_down(&self.lo, bits), hi: round_up(&self.hi, bits) }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let c = [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, r: &Rational) -> Interval {
        let (a, b) = (&self.lo * r, &self.hi * r);
        if r.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    /// Panics if the interval contains zero.
    pub fn recip(&self) -> Interval {
        assert!(self.lo.is_positive() || self.hi.is_negative(), "reciprocal of an interval containing 0");
        Interval { lo: self.hi.recip(), hi: self.lo.recip() }
    }

    /// Integer power by squaring, rounding outward to `bits` after each step.
    pub fn pow(&self, mut e: u64, bits: u64) -> Interval {
        let mut result = Interval::point(Rational::one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).round_out(bits);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).round_out(bits);
            }
        }
        result
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Enough digits to separate the endpoints, within reason.
        let digits = if self.lo == self.hi {
            20
        } else {
            let w = self.width();
            let scale = (w.denom().bits() as i64 - w.numer().bits() as i64).max(0) as usize;
            (scale * 30103 / 100000 + 4).clamp(20, 200)
        };
        write!(f, "[{}, {}]", to_decimal(&self.lo, digits), to_decimal(&self.hi, digits))
    }
}

fn guard_bits(bits: u64) -> u64 {
    bits + 16 + (64 - bits.leading_zeros() as u64)
}

/// `ω(1, Q) = Π_{i≥1} (1 - Q^{-i})` to width at most `2^-bits`.
pub fn omega_limit(big_q: u64, bits: u64) -> Result<Interval> {
    if big_q < 2 {
        return Err(Error::InvalidArgument(format!("omega_limit needs Q >= 2, got {big_q}")));
    }
    let q = from_biguint(&BigUint::from(big_q));
    // Tail factor 1 - Q^{-(M+1)}/(1 - 1/Q) ≥ 1 - 2^{-bits-1}.
    let target = BigUint::one() << (bits + 2);
    let mut m = 0u64;
    let mut qm1 = BigUint::from(big_q);
    while qm1 < target {
        qm1 *= big_q;
        m += 1;
    }
    let w = guard_bits(bits + m.max(1).ilog2() as u64 + 1);
    let mut prod = Interval::point(Rational::one());
    let mut qi = Rational::one();
    for _ in 1..=m {
        qi *= &q;
        let factor = Rational::one() - qi.recip();
        prod = prod.scale(&factor).round_out(w);
    }
    let tail = from_biguint(&qm1).recip() / (Rational::one() - q.recip());
    let lo = round_down(&(&prod.lo * (Rational::one() - tail)), w);
    Ok(Interval::new(lo, prod.hi))
}

/// `e^{-1}` from its alternating series.
pub fn exp_neg_one(bits: u64) -> Interval {
    let w = guard_bits(bits);
    let mut term = Rational::one();
    let mut sum = Rational::zero();
    let mut k = 0u64;
    let eps = Rational::new(BigInt::one(), pow2(bits + 2));
    loop {
        if k.is_multiple_of(2) {
            sum += &term;
        } else {
            sum -= &term;
        }
        k += 1;
        term /= int(k as i64);
        if term < eps {
            break;
        }
    }
    Interval { lo: &sum - &term, hi: &sum + &term }.round_out(w)
}

/// `ln(4/3) = 2 atanh(1/7)`.
pub fn ln_four_thirds(bits: u64) -> Interval {
    let w = guard_bits(bits);
    let x2 = ratio(1, 49);
    let mut xpow = ratio(1, 7);
    let mut sum = Rational::zero();
    let eps = Rational::new(BigInt::one(), pow2(bits + 2));
    let mut k = 0i64;
    loop {
        sum += &xpow / int(2 * k + 1);
        xpow *= &x2;
        k += 1;
        let tail = &xpow / int(2 * k + 1) / (Rational::one() - &x2);
        if &tail * int(2) < eps {
            return Interval { lo: &sum * int(2), hi: (&sum + tail) * int(2) }.round_out(w);
        }
    }
}

/// `√n` for a nonnegative integer.
pub fn sqrt_int(n: &BigUint, bits: u64) -> Interval {
    let s = (n << (2 * bits)).sqrt();
    let scale = from_biguint(&(BigUint::one() << bits));
    let lo = from_biguint(&s) / &scale;
    if &s * &s == (n << (2 * bits)) {
        return Interval::point(lo);
    }
    Interval { hi: from_biguint(&(s + 1u32)) / &scale, lo }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::to_f64;

    #[test]
    fn omega_examples() {
        let iv = omega_limit(4, 20).unwrap();
        assert!(iv.width() <= Rational::new(BigInt::one(), pow2(20)));
        assert!((to_f64(&iv.midpoint()) - 0.688_537_537).abs() < 2e-6);
        for q in [4u64, 5, 8, 9, 16, 1024] {
            let iv = omega_limit(q, 40).unwrap();
            assert!(ratio(1, 2) < iv.lo);
            assert!(iv.hi < Rational::one() - ratio(1, q as i64));
        }
        // The true value sits only ~2^-50 above the lower end, so 20 bits of
        // width cannot separate it; use 64.
        let iv = omega_limit(1024, 64).unwrap();
        assert!(iv.lo > Rational::one() - ratio(1, 1 << 10) - ratio(1, 1 << 20));
        assert!(omega_limit(1, 10).is_err());
    }

    #[test]
    fn constants() {
        let e = exp_neg_one(100);
        assert!(e.width() < Rational::new(BigInt::one(), pow2(100)));
        assert!((to_f64(&e.midpoint()) - (-1f64).exp()).abs() < 1e-15);
        let l = ln_four_thirds(100);
        assert!(l.width() < Rational::new(BigInt::one(), pow2(100)));
        assert!((to_f64(&l.midpoint()) - (4f64 / 3.0).ln()).abs() < 1e-15);
        let s = sqrt_int(&BigUint::from(2u32), 50);
        assert!(s.lo.clone() * s.lo.clone() <= int(2) && int(2) <= s.hi.clone() * s.hi.clone());
        assert_eq!(sqrt_int(&BigUint::from(16u32), 10), Interval::point(int(4)));
    }

    #[test]
    fn rounding_is_outward() {
        let r = ratio(1, 3);
        assert!(round_down(&r, 10) <= r && r <= round_up(&r, 10));
        let n = ratio(-1, 3);
        assert!(round_down(&n, 10) <= n && n <= round_up(&n, 10));
    }
}
