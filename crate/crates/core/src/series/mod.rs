//! Exact truncated power series and the generating functions of the census.
//!
//! All series are in `u`, with `Q = q^b` and `N` the number of monic
//! irreducibles of degree `b` over `GF(q)`:
//!
//! - `P(u) = Σ u^n / ω_n` with `ω_n = Π_{i=1}^n (1 - Q^{-i})`;
//! - `S(u) = Σ_{n≥1} u^n / (Q^n (1 - Q^{-1}))`;
//! - `L(u) = Π_{i≥1} (1 - u Q^{-i}) = (P(u)(1-u))^{-1}`;
//! - `H(u) = b P^{-b} (1-u)^{-b} S = b/(Q-1) · u/(1 - u/Q) · L^b`;
//! - `PCBI_k = P H^k` and `PCB = P (1 - (1-H)^N)`;
//! - `J(u) = (1 - uQ) PCB(uQ)`.
//!
//! Each infinite product is expanded through Euler's closed form for the
//! coefficients of `L`, so every constructor here is exact to its order.

mod interval;
mod tps;

pub use interval::{exp_neg_one, ln_four_thirds, omega_limit, round_down, round_up, sqrt_int, Interval};
pub use tps::{prefix_sum_division, TruncatedPowerSeries};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{count_irreducibles, prime_power};
use crate::error::{Error, Result};
use crate::rational::{from_biguint, int, to_fraction_string, Rational};

type Series = TruncatedPowerSeries;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesParams {
    pub q: u64,
    pub b: u32,
    /// `q^b`.
    #[serde(rename = "Q")]
    pub big_q: u64,
    /// Number of monic irreducibles of degree `b` over `GF(q)`.
    #[serde(rename = "N")]
    pub n: u64,
}

impl SeriesParams {
    /// Requires `b ≥ 2` and `q^b < 2^63`.
    pub fn new(q: u64, b: u32) -> Result<SeriesParams> {
        if b < 2 {
            return Err(Error::ExtensionDegree(b));
        }
        if prime_power(q).is_none() {
            return Err(Error::NotPrimePower(q));
        }
        let big_q = q
            .checked_pow(b)
            .filter(|&x| x < 1 << 63)
            .ok_or_else(|| Error::Overflow(format!("{q}^{b}")))?;
        let n = count_irreducibles(q, b)? as u64;
        Ok(SeriesParams { q, b, big_q, n })
    }

    pub fn big_q_rational(&self) -> Rational {
        from_biguint(&BigUint::from(self.big_q))
    }
}

fn q_pow(big_q: u64, e: u64) -> Rational {
    Rational::from_integer(num_traits::pow(BigInt::from(big_q), e as usize))
}

/// `ω_n(1, Q) = Π_{i=1}^n (1 - Q^{-i})`.
pub fn omega_n(n: u32, big_q: u64) -> Rational {
    let q = from_biguint(&BigUint::from(big_q));
    let mut acc = Rational::one();
    let mut qi = Rational::one();
    for _ in 0..n {
        qi *= &q;
        acc *= Rational::one() - qi.recip();
    }
    acc
}

/// `ω_n` for `n = 0..=order`.
fn omegas(order: usize, big_q: u64) -> Vec<Rational> {
    let q = from_biguint(&BigUint::from(big_q));
    let mut out = Vec::with_capacity(order + 1);
    let mut acc = Rational::one();
    let mut qi = Rational::one();
    out.push(acc.clone());
    for _ in 0..order {
        qi *= &q;
        acc *= Rational::one() - qi.recip();
        out.push(acc.clone());
    }
    out
}

/// `P(u, Q)`, parameterised by `Q` alone.
pub fn p_series_q(big_q: u64, order: usize) -> Series {
    Series::from_coeffs(omegas(order, big_q).into_iter().map(|w| w.recip()).collect(), order)
}

pub fn p_series(params: &SeriesParams, order: usize) -> Series {
    p_series_q(params.big_q, order)
}

/// `Π_{i=0}^{terms} (1 - u Q^{-i})^{-1}`, each factor a geometric series.
pub fn euler_partial_product(big_q: u64, terms: u32, order: usize) -> Series {
    let mut acc = Series::one(order);
    for i in 0..=terms {
        let r = q_pow(big_q, i as u64).recip();
        let geo = Series::one_minus_u_pow_neg(1, order).scale_var(&r);
        acc = acc.mul(&geo);
    }
    acc
}

/// `S` from its defining sum.
pub fn s_series_sum(params: &SeriesParams, order: usize) -> Series {
    let q = params.big_q_rational();
    let c = Rational::one() - q.recip();
    Series::from_fn(order, |n| if n == 0 { Rational::zero() } else { (q_pow(params.big_q, n as u64) * &c).recip() })
}

/// `S = u / ((Q-1)(1 - u/Q))`.
pub fn s_series(params: &SeriesParams, order: usize) -> Series {
    let q = params.big_q_rational();
    let denom = Series::one_minus_u_pow(1, order).scale_var(&q.recip());
    denom.inv().unwrap().shift(1).scale(&(q - int(1)).recip())
}

/// `L(u, Q)` by its closed-form coefficients
/// `(-1)^c Q^{-c(c+1)/2} / ω_c`.
pub fn l_series_q(big_q: u64, order: usize) -> Series {
    let w = omegas(order, big_q);
    Series::from_fn(order, |c| {
        let v = (q_pow(big_q, (c * (c + 1) / 2) as u64) * &w[c]).recip();
        if c % 2 == 1 {
            -v
        } else {
            v
        }
    })
}

pub fn l_series(params: &SeriesParams, order: usize) -> Series {
    l_series_q(params.big_q, order)
}

/// `L = (P (1-u))^{-1}`.
pub fn l_series_inverse_form(params: &SeriesParams, order: usize) -> Series {
    p_series(params, order).mul(&Series::one_minus_u_pow(1, order)).inv().unwrap()
}

/// `H = b/(Q-1) · u/(1 - u/Q) · L^b`.
pub fn h_series(params: &SeriesParams, order: usize) -> Series {
    let b = int(params.b as i64);
    s_series(params, order).scale(&b).mul(&l_series(params, order).pow(params.b as u64))
}

/// `H = b P^{-b} (1-u)^{-b} S`.
pub fn h_series_definitional(params: &SeriesParams, order: usize) -> Series {
    let pinv = p_series(params, order).inv().unwrap().pow(params.b as u64);
    pinv.mul(&Series::one_minus_u_pow_neg(params.b, order))
        .mul(&s_series_sum(params, order))
        .scale(&int(params.b as i64))
}

/// `P H^k` for a `k`-subset of the degree-`b` irreducibles.
pub fn pcbi_series(k: u64, params: &SeriesParams, order: usize) -> Result<Series> {
    if k > params.n {
        return Err(Error::SubsetTooLarge { k, n: params.n });
    }
    Ok(p_series(params, order).mul(&h_series(params, order).pow(k)))
}

/// `P (1 - (1-H)^N)`.
pub fn pcb_series(params: &SeriesParams, order: usize) -> Series {
    let h = h_series(params, order);
    let inner = Series::one(order).sub(&Series::one(order).sub(&h).pow(params.n));
    p_series(params, order).mul(&inner)
}

/// `Σ_{i=1}^N (-1)^{i+1} C(N, i) PCBI_i`.
pub fn pcb_series_inclusion_exclusion(params: &SeriesParams, order: usize) -> Series {
    let h = h_series(params, order);
    let p = p_series(params, order);
    let mut acc = Series::zero(order);
    let mut hk = Series::one(order);
    let mut binom = BigInt::one();
    for i in 1..=params.n {
        hk = hk.mul(&h);
        binom = binom * BigInt::from(params.n - i + 1) / BigInt::from(i);
        let term = p.mul(&hk).scale(&Rational::from_integer(binom.clone()));
        acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// `(1 - uQ) PCB(uQ)`.
pub fn j_series(params: &SeriesParams, order: usize) -> Series {
    let q = params.big_q_rational();
    let sub = pcb_series(params, order).scale_var(&q);
    Series::one_minus_u_pow(1, order).scale_var(&q).mul(&sub)
}

/// `P [1 - (1 - bQ/(Q-1) · u (1-u)^{b-1} L^b)^N]`.
pub fn j_series_expanded(params: &SeriesParams, order: usize) -> Series {
    let q = params.big_q_rational();
    let coef = int(params.b as i64) * &q / (&q - int(1));
    let inner = Series::one_minus_u_pow(params.b - 1, order)
        .mul(&l_series(params, order).pow(params.b as u64))
        .shift(1)
        .scale(&coef);
    let bracket = Series::one(order).sub(&Series::one(order).sub(&inner).pow(params.n));
    p_series(params, order).mul(&bracket)
}

/// `A(u) = Σ_c ω_c [u^c]PCB · u^c`, whose coefficients are the proportions.
pub fn proportion_series(params: &SeriesParams, order: usize) -> Series {
    Series::from_coeffs(pcb_proportions(params, order), order)
}

/// `(1 - uQ) A(uQ)`, with `[u^c] = (a_c - a_{c-1}) Q^c` for the proportions
/// `a_c`. This differs from [`j_series`], which substitutes into `PCB`.
pub fn j_series_proportions(params: &SeriesParams, order: usize) -> Series {
    let q = params.big_q_rational();
    let sub = proportion_series(params, order).scale_var(&q);
    Series::one_minus_u_pow(1, order).scale_var(&q).mul(&sub)
}

/// The sequence `ω_c · [u^c] PCB` for `c = 0..=order`.
pub fn pcb_proportions(params: &SeriesParams, order: usize) -> Vec<Rational> {
    let pcb = pcb_series(params, order);
    omegas(order, params.big_q).into_iter().zip(pcb.coeffs()).map(|(w, c)| w * c).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDump {
    pub name: String,
    pub params: SeriesParams,
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl SeriesDump {
    pub fn new(name: &str, params: &SeriesParams, s: &Series) -> SeriesDump {
        SeriesDump {
            name: name.to_string(),
            params: params.clone(),
            order: s.order(),
            coeffs: s.coeffs().iter().map(to_fraction_string).collect(),
        }
    }
}

/// Named series by identifier, for dumps.
pub fn named_series(name: &str, params: &SeriesParams, order: usize) -> Result<Series> {
    Ok(match name {
        "P" => p_series(params, order),
        "S" => s_series(params, order),
        "L" => l_series(params, order),
        "H" => h_series(params, order),
        "PCB" => pcb_series(params, order),
        "J" => j_series(params, order),
        _ => {
            if let Some(k) = name.strip_prefix("PCBI") {
                let k: u64 = k.parse().map_err(|_| Error::InvalidArgument(format!("unknown series {name:?}")))?;
                return pcbi_series(k, params, order);
            }
            return Err(Error::InvalidArgument(format!("unknown series {name:?}")));
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn pp(q: u64, b: u32) -> SeriesParams {
        SeriesParams::new(q, b).unwrap()
    }

    #[test]
    fn params() {
        let p = pp(2, 2);
        assert_eq!((p.big_q, p.n), (4, 1));
        assert_eq!(pp(3, 2).n, 3);
        assert_eq!(SeriesParams::new(2, 1), Err(Error::ExtensionDegree(1)));
    }

    #[test]
    fn omega_values() {
        assert_eq!(omega_n(0, 7), int(1));
        assert_eq!(omega_n(1, 4), ratio(3, 4));
        assert_eq!(omega_n(2, 2), ratio(3, 8));
    }

    #[test]
    fn first_coefficients() {
        let p = pp(2, 2);
        let ps = p_series(&p, 3);
        assert_eq!(ps.coeff(1), &ratio(4, 3));
        assert_eq!(ps.coeff(2), &ratio(64, 45));
        let s = s_series(&p, 3);
        assert_eq!((s.coeff(1), s.coeff(2)), (&ratio(1, 3), &ratio(1, 12)));
        let l = l_series(&p, 3);
        assert_eq!(l.coeff(0), &int(1));
        assert_eq!(l.coeff(1), &ratio(-1, 3));
        let h = h_series(&p, 3);
        assert_eq!((h.coeff(0), h.coeff(1)), (&int(0), &ratio(2, 3)));
        assert_eq!(pcbi_series(0, &p, 5).unwrap(), p_series(&p, 5));
        assert_eq!(pcbi_series(1, &p, 3).unwrap().coeff(1), &ratio(2, 3));
        assert_eq!(pcb_series(&p, 3).coeff(1), &ratio(2, 3));
        assert_eq!(j_series(&p, 3).coeff(1), &ratio(8, 3));
        assert_eq!(j_series_proportions(&p, 3).coeff(1), &int(2));
        assert!(pcbi_series(2, &pp(3, 2), 4).is_ok());
        assert_eq!(pcbi_series(4, &pp(3, 2), 4), Err(Error::SubsetTooLarge { k: 4, n: 3 }));
    }

    #[test]
    fn pcb_constant_term_is_zero() {
        assert_eq!(pcb_series(&pp(2, 2), 2).coeff(0), &int(0));
    }

    #[test]
    fn proportions_known_values() {
        let v = pcb_proportions(&pp(2, 2), 3);
        assert_eq!(v[1], ratio(1, 2));
        assert_eq!(v[2], ratio(55, 128));
        assert_eq!(v[3], ratio(13881, 32768));
        assert_eq!(pcb_proportions(&pp(3, 2), 1)[1], ratio(2, 3));
    }

    #[test]
    fn j_proportion_differences() {
        let p = pp(2, 2);
        let a = pcb_proportions(&p, 6);
        let j = j_series_proportions(&p, 6);
        for c in 2..=6 {
            assert_eq!(j.coeff(c), &((&a[c] - &a[c - 1]) * q_pow(4, c as u64)));
        }
    }

    #[test]
    fn dump_roundtrip() {
        let p = pp(2, 2);
        let d = SeriesDump::new("H", &p, &named_series("H", &p, 4).unwrap());
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<SeriesDump>(&text).unwrap(), d);
        assert!(text.contains("\"2/3\""));
        assert!(named_series("X", &p, 2).is_err());
        assert_eq!(named_series("PCBI1", &p, 3).unwrap(), pcbi_series(1, &p, 3).unwrap());
    }
}
