//! Exact rational helpers: canonical `num/den` text, decimal rendering and
//! serde adapters.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_biguint(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

/// `num/den` with the denominator always present.
pub fn to_fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_fraction(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Decimal rendering rounded half-away-from-zero to `digits` significant
/// digits, in scientific notation when the exponent is far from zero.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    assert!(digits > 0);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    let ten = BigInt::from(10);

    // Find e with 10^e <= a < 10^(e+1).
    let mut e: i64 = (a.numer().bits() as i64 - a.denom().bits() as i64) * 30103 / 100000;
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    // Scaled integer with `digits` significant digits.
    let scaled = &a * pow10(digits as i64 - 1 - e);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut m = q;
    if rem * BigInt::from(2) >= *scaled.denom() {
        m += 1;
    }
    let mut s = m.to_string();
    if s.len() > digits {
        // Rounding carried into a new digit.
        s.truncate(digits);
        e += 1;
    }
    let sign = if neg { "-" } else { "" };
    if (-7..=20).contains(&e) {
        let point = e + 1;
        let body = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), s)
        } else if point as usize >= s.len() {
            format!("{}{}", s, "0".repeat(point as usize - s.len()))
        } else {
            format!("{}.{}", &s[..point as usize], &s[point as usize..])
        };
        format!("{sign}{body}")
    } else {
        format!("{sign}{}.{}e{}", &s[..1], &s[1..], e)
    }
}

/// Lossy conversion used only for human-facing summaries.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let nb = r.numer().bits() as i64;
        let db = r.denom().bits() as i64;
        if nb - db > 1000 {
            f64::INFINITY
        } else {
            0.0
        }
    })
}

pub mod serde_fraction {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_fraction_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_fraction(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_fraction_opt {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&to_fraction_string(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| parse_fraction(&s).map_err(serde::de::Error::custom)).transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_text() {
        assert_eq!(to_fraction_string(&ratio(2, 4)), "1/2");
        assert_eq!(to_fraction_string(&int(8)), "8/1");
        assert_eq!(parse_fraction("55/128").unwrap(), ratio(55, 128));
        assert_eq!(parse_fraction("-3").unwrap(), int(-3));
        assert!(parse_fraction("1/0").is_err());
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&ratio(1, 2), 5), "0.50000");
        assert_eq!(to_decimal(&ratio(1, 3), 4), "0.3333");
        assert_eq!(to_decimal(&ratio(2, 3), 4), "0.6667");
        assert_eq!(to_decimal(&ratio(-55, 128), 6), "-0.429688");
        assert_eq!(to_decimal(&int(1), 3), "1.00");
        assert_eq!(to_decimal(&ratio(999, 1000), 2), "1.0");
        assert_eq!(to_decimal(&ratio(1, 1 << 40), 3), "9.09e-13");
    }
}
