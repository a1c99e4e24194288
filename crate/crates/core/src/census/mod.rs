//! Proportions `P_M(c, q^b)` of matrices in `M(c, q^b)` that are primary
//! cyclic in `M(bc, q)` for some irreducible of degree `b`: exact series
//! values, enumeration and sampling oracles, the limit as `c → ∞`, and the
//! explicit tail-bound constants.

mod table;

pub use table::{table1_fixture, table_generate, TableRow};

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{enum_irreducibles, Elem, FieldSpec, Poly};
use crate::cycleindex::gl_order;
use crate::error::{Error, Result};
use crate::matrixlab::{blowup, verdict_f, verdict_k, Matrix};
use crate::rational::{from_biguint, int, serde_fraction, serde_fraction_opt, to_decimal, Rational};
use crate::series::{
    exp_neg_one, ln_four_thirds, omega_limit, pcb_proportions, pcbi_series, round_up, sqrt_int, Interval,
    SeriesParams,
};

/// Default bound on `q^{bc²}` for exhaustive scans.
pub const BRUTE_GUARD: u128 = 1 << 20;
/// Bound in force with `--guard-override`.
pub const BRUTE_GUARD_RAISED: u128 = 1 << 24;
/// Largest `c_hi` accepted by [`verify_tail_bounds`].
pub const TAIL_ORDER_BUDGET: u32 = 80;
/// Minimum limit-interval precision used by the tail check.
pub const TAIL_LIMIT_BITS: u64 = 260;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    Series,
    BruteForce,
    MonteCarlo,
    Limit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundConstants {
    #[serde(rename = "a_L")]
    pub a_l: u64,
    #[serde(rename = "a_J", with = "serde_fraction")]
    pub a_j: Rational,
    #[serde(rename = "M", with = "serde_fraction")]
    pub m_threshold: Rational,
    #[serde(with = "serde_fraction")]
    pub k: Rational,
    pub limit_interval: Interval,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub q: u64,
    pub b: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<u32>,
    pub method: Method,
    /// The exact value, the estimate, or the interval midpoint.
    #[serde(with = "serde_fraction")]
    pub proportion: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<Interval>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_fraction_opt")]
    pub stderr: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<BoundConstants>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
}

impl CensusReport {
    pub fn new(q: u64, b: u32, c: u32, method: Method, proportion: Rational) -> CensusReport {
        CensusReport {
            q,
            b,
            c: Some(c),
            method,
            proportion,
            interval: None,
            stderr: None,
            constants: None,
            window: None,
            seed: None,
            samples: None,
        }
    }

    pub fn series(q: u64, b: u32, c: u32) -> Result<CensusReport> {
        Ok(Self::new(q, b, c, Method::Series, proportion_exact(q, b, c)?))
    }

    pub fn brute_force(q: u64, b: u32, c: u32, guard: u128) -> Result<CensusReport> {
        let r = proportion_bruteforce_guarded(q, b, c, guard)?;
        Ok(Self::new(q, b, c, Method::BruteForce, r.proportion()))
    }

    pub fn monte_carlo(q: u64, b: u32, c: u32, samples: u64, seed: u64) -> Result<CensusReport> {
        let (est, se) = proportion_montecarlo(q, b, c, samples, seed)?;
        let mut r = Self::new(q, b, c, Method::MonteCarlo, est);
        r.stderr = Some(se);
        r.seed = Some(seed);
        r.samples = Some(samples);
        Ok(r)
    }

    pub fn limit(q: u64, b: u32, bits: u64, with_constants: bool) -> Result<CensusReport> {
        let iv = limit_proportion(q, b, bits)?;
        let constants = if with_constants { Some(convergence_constants_with(q, b, bits)?) } else { None };
        Ok(CensusReport {
            q,
            b,
            c: None,
            method: Method::Limit,
            proportion: iv.midpoint(),
            interval: Some(iv),
            stderr: None,
            constants,
            window: Some(limit_window_check(q, b)?),
            seed: None,
            samples: None,
        })
    }
}

/// `ω_c(1, q^b) · [u^c] PCB`.
pub fn proportion_exact(q: u64, b: u32, c: u32) -> Result<Rational> {
    if c == 0 {
        return Err(Error::InvalidArgument("matrix dimension c must be at least 1".into()));
    }
    let params = SeriesParams::new(q, b)?;
    Ok(pcb_proportions(&params, c as usize).swap_remove(c as usize))
}

/// Degree-`b` irreducibles over `F` with their linear factors over `K`.
struct Prepared {
    spec: FieldSpec,
    irr: Vec<(Poly, Vec<Poly>)>,
}

impl Prepared {
    fn new(q: u64, b: u32) -> Result<Prepared> {
        let spec = FieldSpec::new(q, b)?;
        let irr = enum_irreducibles(spec.base(), b)?;
        Self::with_irreducibles(spec, irr)
    }

    fn with_irreducibles(spec: FieldSpec, irr: Vec<Poly>) -> Result<Prepared> {
        let irr = irr
            .into_iter()
            .map(|f| {
                let s = spec.split_over_extension(&f)?;
                Ok((f, s))
            })
            .collect::<Result<Vec<_>>>()?;
        if irr.len() > 64 {
            return Err(Error::InvalidArgument(format!("{} irreducibles exceed the 64-bit mask", irr.len())));
        }
        Ok(Prepared { spec, irr })
    }

    /// Bit `i` set when `X` passes the `K`-side test for the `i`-th `f`.
    fn k_mask(&self, x: &Matrix) -> u64 {
        let cx = x.char_poly(self.spec.ext());
        let mut m = 0u64;
        for (i, (f, split)) in self.irr.iter().enumerate() {
            if verdict_k(&self.spec, x, f, split, &cx).is_cyclic {
                m |= 1 << i;
            }
        }
        m
    }

    fn f_mask(&self, x: &Matrix) -> u64 {
        let xf = blowup(&self.spec, x);
        let mut m = 0u64;
        for (i, (f, _)) in self.irr.iter().enumerate() {
            if verdict_f(&self.spec, &xf, f).is_cyclic {
                m |= 1 << i;
            }
        }
        m
    }
}

/// Full enumeration of `M(c, q^b)` under both tests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteForceCount {
    pub q: u64,
    pub b: u32,
    pub c: u32,
    pub total: u64,
    /// Matrices passing the `K`-side test for some `f`.
    pub k_hits: u64,
    /// Matrices passing the `F`-side test for some `f`.
    pub f_hits: u64,
    /// `(X, f)` pairs on which the two tests disagree.
    pub disagreements: u64,
    /// Number of matrices by the set of `f` (as a bitmask over the sorted
    /// irreducibles) they pass the `K`-side test for.
    pub k_masks: BTreeMap<u64, u64>,
}

impl BruteForceCount {
    pub fn proportion(&self) -> Rational {
        Rational::new(BigInt::from(self.k_hits), BigInt::from(self.total))
    }

    /// Matrices passing for every `f` in `mask`.
    pub fn pcbi_count(&self, mask: u64) -> u64 {
        self.k_masks.iter().filter(|(m, _)| *m & mask == mask).map(|(_, n)| n).sum()
    }
}

fn enumeration_size(q: u64, b: u32, c: u32, guard: u128) -> Result<u64> {
    let e = b as u64 * (c as u64) * (c as u64);
    let size = (q as u128).checked_pow(e as u32).unwrap_or(u128::MAX);
    if size > guard {
        return Err(Error::GuardExceeded { what: "primary cyclic enumeration", size, guard });
    }
    Ok(size as u64)
}

pub fn proportion_bruteforce(q: u64, b: u32, c: u32) -> Result<BruteForceCount> {
    proportion_bruteforce_guarded(q, b, c, BRUTE_GUARD)
}

pub fn proportion_bruteforce_guarded(q: u64, b: u32, c: u32, guard: u128) -> Result<BruteForceCount> {
    SeriesParams::new(q, b)?;
    let total = enumeration_size(q, b, c, guard)?;
    bruteforce_prepared(&Prepared::new(q, b)?, c, total)
}

/// As [`proportion_bruteforce_guarded`], with the degree-`b` irreducibles
/// supplied by the caller.
pub fn proportion_bruteforce_with(q: u64, b: u32, c: u32, guard: u128, irr: Vec<Poly>) -> Result<BruteForceCount> {
    SeriesParams::new(q, b)?;
    let total = enumeration_size(q, b, c, guard)?;
    bruteforce_prepared(&Prepared::with_irreducibles(FieldSpec::new(q, b)?, irr)?, c, total)
}

fn bruteforce_prepared(prep: &Prepared, c: u32, total: u64) -> Result<BruteForceCount> {
    let big_q = prep.spec.ext_size();
    let (k_masks, disagreements, f_hits) = (0..total)
        .into_par_iter()
        .fold(
            || (BTreeMap::new(), 0u64, 0u64),
            |(mut hist, mut dis, mut fh), i| {
                let x = Matrix::from_index(c as usize, big_q, i);
                let km = prep.k_mask(&x);
                let fm = prep.f_mask(&x);
                *hist.entry(km).or_insert(0u64) += 1;
                dis += (km ^ fm).count_ones() as u64;
                fh += (fm != 0) as u64;
                (hist, dis, fh)
            },
        )
        .reduce(
            || (BTreeMap::new(), 0, 0),
            |(mut h1, d1, f1), (h2, d2, f2)| {
                for (k, v) in h2 {
                    *h1.entry(k).or_insert(0) += v;
                }
                (h1, d1 + d2, f1 + f2)
            },
        );
    let k_hits = k_masks.iter().filter(|(m, _)| **m != 0).map(|(_, n)| n).sum();
    Ok(BruteForceCount {
        q: prep.spec.q(),
        b: prep.spec.b(),
        c,
        total,
        k_hits,
        f_hits,
        disagreements,
        k_masks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionExclusionReport {
    pub q: u64,
    pub b: u32,
    pub c: u32,
    /// Number of degree-`b` irreducibles.
    pub n: u64,
    pub pcb: u64,
    /// `|pcbI(I, c, q^b)|` for the first `i` irreducibles, `i = 1..=n`.
    pub pcbi: Vec<u64>,
    /// Same count over every `i`-subset, checked when `n ≤ 3`.
    pub size_independent: bool,
    pub alternating_sum: i128,
    /// `|pcbI|` agrees with `|GL(c, q^b)| · [u^c] PCBI_i`.
    pub series_agrees: bool,
    pub holds: bool,
}

pub fn inclusion_exclusion_check(q: u64, b: u32, c: u32, guard: u128) -> Result<InclusionExclusionReport> {
    let params = SeriesParams::new(q, b)?;
    let count = proportion_bruteforce_guarded(q, b, c, guard)?;
    let n = params.n;
    let mut pcbi = Vec::new();
    let mut size_independent = true;
    let mut alternating_sum = 0i128;
    let mut binom = 1i128;
    let gl = from_biguint(&gl_order(c, params.big_q));
    let mut series_agrees = true;
    for i in 1..=n {
        let first = (1u64 << i) - 1;
        let v = count.pcbi_count(first);
        if n <= 3 {
            for mask in 1u64..(1 << n) {
                if mask.count_ones() as u64 == i && count.pcbi_count(mask) != v {
                    size_independent = false;
                }
            }
        }
        let expect = pcbi_series(i, &params, c as usize)?.coeff(c as usize) * &gl;
        series_agrees &= expect == int(v as i64);
        binom = binom * (n - i + 1) as i128 / i as i128;
        let term = binom * v as i128;
        alternating_sum += if i % 2 == 1 { term } else { -term };
        pcbi.push(v);
    }
    let holds = alternating_sum == count.k_hits as i128 && size_independent;
    Ok(InclusionExclusionReport {
        q,
        b,
        c,
        n,
        pcb: count.k_hits,
        pcbi,
        size_independent,
        alternating_sum,
        series_agrees,
        holds,
    })
}

const MC_BLOCK: u64 = 1024;

/// Estimate and binomial standard error from uniform samples; block `j` of
/// 1024 samples draws from ChaCha8 stream `j` of `seed`.
pub fn proportion_montecarlo(q: u64, b: u32, c: u32, samples: u64, seed: u64) -> Result<(Rational, Rational)> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    if c == 0 {
        return Err(Error::InvalidArgument("matrix dimension c must be at least 1".into()));
    }
    SeriesParams::new(q, b)?;
    let prep = Prepared::new(q, b)?;
    let big_q = prep.spec.ext_size() as u32;
    let n = c as usize;
    let blocks = samples.div_ceil(MC_BLOCK);
    let hits: u64 = (0..blocks)
        .into_par_iter()
        .map(|j| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(j);
            let len = MC_BLOCK.min(samples - j * MC_BLOCK);
            (0..len)
                .filter(|_| {
                    let data = (0..n * n).map(|_| Elem(rng.gen_range(0..big_q))).collect();
                    prep.k_mask(&Matrix::from_entries(n, data)) != 0
                })
                .count() as u64
        })
        .sum();
    let est = Rational::new(BigInt::from(hits), BigInt::from(samples));
    // sqrt(h (n - h) / n^3) = sqrt(h (n - h) n) / n^2, rounded up.
    let radicand = BigUint::from(hits) * BigUint::from(samples - hits) * BigUint::from(samples);
    let root = sqrt_int(&radicand, 64).hi;
    let stderr = root / from_biguint(&(BigUint::from(samples) * BigUint::from(samples)));
    Ok((est, stderr))
}

fn two_pow_neg(bits: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << bits)
}

/// `H(1, q^b) = b q^{-b} (1 - q^{-b})^{-2} ω(1, q^b)^b` at working precision.
fn h_at_one(params: &SeriesParams, bits: u64) -> Result<Interval> {
    let omega = omega_limit(params.big_q, bits)?;
    let q = params.big_q_rational();
    let coef = int(params.b as i64) * &q / ((&q - int(1)) * (&q - int(1)));
    Ok(omega.pow(params.b as u64, bits).scale(&coef).round_out(bits))
}

/// `1 - (1 - H(1, q^b))^N` to width at most `2^-bits`.
pub fn limit_proportion(q: u64, b: u32, bits: u64) -> Result<Interval> {
    let params = SeriesParams::new(q, b)?;
    let growth = 64 - (params.n.max(1) * b as u64).leading_zeros() as u64;
    let mut w = bits + 32 + 2 * growth;
    loop {
        let h = h_at_one(&params, w)?;
        let one = Interval::point(Rational::one());
        let p = one.sub(&one.sub(&h).pow(params.n, w));
        if p.width() <= two_pow_neg(bits) {
            return Ok(p);
        }
        w += 64;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowCheck {
    /// `P_M(∞) - (1 - e^{-1})`.
    pub difference: Interval,
    /// `-4b / (e q^{b/2})`.
    pub lower: Interval,
    /// `(1+b)/(e q^b) + 2(1+b)²/(e q^{2b})`.
    pub upper: Interval,
    /// Both sides of the refined inequality hold.
    pub two_sided: bool,
    /// `|difference| < 4b / (e q^{b/2})`.
    pub absolute: bool,
}

impl WindowCheck {
    pub fn holds(&self) -> bool {
        self.two_sided && self.absolute
    }
}

pub fn limit_window_check(q: u64, b: u32) -> Result<WindowCheck> {
    let params = SeriesParams::new(q, b)?;
    let mut bits = 64;
    loop {
        let r = window_at(&params, bits)?;
        if r.holds() || bits >= 512 {
            return Ok(r);
        }
        bits *= 2;
    }
}

fn window_at(params: &SeriesParams, bits: u64) -> Result<WindowCheck> {
    let p = limit_proportion(params.q, params.b, bits)?;
    let e_inv = exp_neg_one(bits + 8);
    let one = Interval::point(Rational::one());
    let difference = p.sub(&one.sub(&e_inv));
    let q = params.big_q_rational();
    let b = int(params.b as i64);
    let sqrt_q = sqrt_int(&BigUint::from(params.big_q), bits + 8);
    let abs_bound = e_inv.mul(&sqrt_q.recip()).scale(&(int(4) * &b));
    let lower = abs_bound.neg();
    let b1 = &b + int(1);
    let upper = e_inv.scale(&(&b1 / &q + int(2) * &b1 * &b1 / (&q * &q)));
    let two_sided = lower.certainly_lt(&difference) && difference.certainly_lt(&upper);
    let absolute = lower.certainly_lt(&difference) && difference.certainly_lt(&abs_bound);
    Ok(WindowCheck { difference, lower, upper, two_sided, absolute })
}

/// `⌈q^b / b⌉`, the integer exponent used for `a_J` and `k`.
pub fn constants_exponent(q: u64, b: u32) -> Result<u64> {
    let params = SeriesParams::new(q, b)?;
    Ok(params.big_q.div_ceil(b as u64))
}

/// `a_J = (8/3) (b q^b/(q^b - 1) · 2^{2b} q^{2b²})^{⌈q^b/b⌉}`.
pub fn a_j(q: u64, b: u32) -> Result<Rational> {
    let params = SeriesParams::new(q, b)?;
    let bq = params.big_q_rational();
    let e = constants_exponent(q, b)?;
    let base = int(b as i64) * &bq / (&bq - int(1))
        * from_biguint(&(BigUint::one() << (2 * b)))
        * from_biguint(&BigUint::from(params.big_q).pow(2 * b));
    let e = usize::try_from(e).map_err(|_| Error::Overflow("a_J exponent".into()))?;
    Ok(ratio_8_3() * num_traits::pow(base, e))
}

fn ratio_8_3() -> Rational {
    Rational::new(BigInt::from(8), BigInt::from(3))
}

/// `(max{b-1, q^b/b} / ln(4/3))²`, rounded up to a multiple of `2^-bits`.
pub fn m_threshold(q: u64, b: u32, bits: u64) -> Result<Rational> {
    let params = SeriesParams::new(q, b)?;
    let top = Rational::new(BigInt::from(params.big_q), BigInt::from(b)).max(int(b as i64 - 1));
    let ln = ln_four_thirds(bits + 16);
    let x = top / &ln.lo;
    Ok(round_up(&(&x * &x), bits))
}

pub fn convergence_constants(q: u64, b: u32) -> Result<BoundConstants> {
    convergence_constants_with(q, b, 64)
}

/// Constants with the limit interval at width `2^-bits`.
pub fn convergence_constants_with(q: u64, b: u32, bits: u64) -> Result<BoundConstants> {
    let params = SeriesParams::new(q, b)?;
    let a_j = a_j(q, b)?;
    let k = &a_j / (Rational::one() - params.big_q_rational().recip());
    Ok(BoundConstants {
        a_l: 2 * params.big_q,
        a_j,
        m_threshold: m_threshold(q, b, 32)?,
        k,
        limit_interval: limit_proportion(q, b, bits)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailRow {
    pub c: u32,
    /// `|P_M(c+1) - P_M(c)|`.
    #[serde(with = "serde_fraction")]
    pub difference: Rational,
    /// `a_J q^{-bc}`.
    #[serde(with = "serde_fraction")]
    pub difference_bound: Rational,
    pub difference_ok: bool,
    /// Largest `|P_M(c) - x|` over the limit interval.
    #[serde(with = "serde_fraction")]
    pub distance: Rational,
    /// `k q^{-bc}`.
    #[serde(with = "serde_fraction")]
    pub distance_bound: Rational,
    pub distance_ok: bool,
}

impl TailRow {
    pub fn difference_margin(&self) -> Rational {
        &self.difference_bound - &self.difference
    }

    pub fn distance_margin(&self) -> Rational {
        &self.distance_bound - &self.distance
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailReport {
    pub q: u64,
    pub b: u32,
    pub constants: BoundConstants,
    pub rows: Vec<TailRow>,
    /// Consecutive-difference bound for `c < c_lo`; not part of the claim.
    pub below_threshold: Vec<(u32, bool)>,
}

impl TailReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.difference_ok && r.distance_ok)
    }
}

pub fn verify_tail_bounds(q: u64, b: u32, c_lo: u32, c_hi: u32) -> Result<TailReport> {
    let params = SeriesParams::new(q, b)?;
    let m = m_threshold(q, b, 32)?;
    if int(c_lo as i64) <= m {
        return Err(Error::BelowThreshold { c_lo, threshold: to_decimal(&m, 6) });
    }
    if c_hi < c_lo || c_hi > TAIL_ORDER_BUDGET {
        return Err(Error::InvalidArgument(format!(
            "tail range needs c_lo <= c_hi <= {TAIL_ORDER_BUDGET}, got [{c_lo}, {c_hi}]"
        )));
    }
    let a_j = a_j(q, b)?;
    let k = &a_j / (Rational::one() - params.big_q_rational().recip());
    let props = pcb_proportions(&params, c_hi as usize + 1);
    let q_pow_neg = |c: u32| Rational::new(BigInt::one(), BigInt::from(params.big_q).pow(c));

    // Limit interval narrower than half the smallest slack, and at least
    // TAIL_LIMIT_BITS.
    let mut bits = TAIL_LIMIT_BITS;
    let rows = loop {
        let limit = limit_proportion(q, b, bits)?;
        let rows: Vec<TailRow> = (c_lo..=c_hi)
            .map(|c| {
                let a = &props[c as usize];
                let difference = (&props[c as usize + 1] - a).abs();
                let difference_bound = &a_j * q_pow_neg(c);
                let distance = (a - &limit.lo).abs().max((a - &limit.hi).abs());
                let distance_bound = &k * q_pow_neg(c);
                TailRow {
                    c,
                    difference_ok: difference < difference_bound,
                    difference,
                    difference_bound,
                    distance_ok: distance <= distance_bound,
                    distance,
                    distance_bound,
                }
            })
            .collect();
        let width_ok = rows.iter().all(|r| !r.distance_ok || limit.width() * int(2) < r.distance_margin());
        if width_ok || bits >= 4096 {
            break rows;
        }
        bits *= 2;
    };
    let below_threshold = (1..c_lo)
        .filter(|&c| (c as usize + 1) < props.len())
        .map(|c| {
            let d = (&props[c as usize + 1] - &props[c as usize]).abs();
            (c, d < &a_j * q_pow_neg(c))
        })
        .collect();
    Ok(TailReport {
        q,
        b,
        constants: BoundConstants {
            a_l: 2 * params.big_q,
            a_j,
            m_threshold: m,
            k,
            limit_interval: limit_proportion(q, b, bits)?,
        },
        rows,
        below_threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{ratio, to_f64};

    #[test]
    fn exact_examples() {
        assert_eq!(proportion_exact(2, 2, 1).unwrap(), ratio(1, 2));
        assert_eq!(proportion_exact(2, 2, 2).unwrap(), ratio(55, 128));
        assert_eq!(proportion_exact(3, 2, 1).unwrap(), ratio(2, 3));
        assert_eq!(proportion_exact(2, 1, 1), Err(Error::ExtensionDegree(1)));
    }

    #[test]
    fn brute_examples() {
        let r = proportion_bruteforce(2, 2, 1).unwrap();
        assert_eq!((r.k_hits, r.total), (2, 4));
        let r = proportion_bruteforce(2, 3, 1).unwrap();
        assert_eq!(r.proportion(), ratio(3, 4));
        assert_eq!(r.disagreements, 0);
        let r = proportion_bruteforce(2, 2, 2).unwrap();
        assert_eq!(r.proportion(), ratio(55, 128));
        assert_eq!((r.f_hits, r.disagreements), (r.k_hits, 0));
        assert!(proportion_bruteforce(2, 2, 4).unwrap_err().is_guard());
    }

    #[test]
    fn inclusion_exclusion_small() {
        let r = inclusion_exclusion_check(2, 2, 2, BRUTE_GUARD).unwrap();
        assert_eq!((r.n, r.pcbi.clone()), (1, vec![r.pcb]));
        assert!(r.holds && r.series_agrees);
        let r = inclusion_exclusion_check(3, 2, 1, BRUTE_GUARD).unwrap();
        assert_eq!(r.n, 3);
        assert!(r.holds && r.size_independent && r.series_agrees);
    }

    #[test]
    fn montecarlo_examples() {
        let (e, s) = proportion_montecarlo(2, 2, 1, 4096, 7).unwrap();
        assert!((e - ratio(1, 2)).abs() <= s * int(4));
        let (e, _) = proportion_montecarlo(2, 2, 3, 1, 3).unwrap();
        assert!(e == int(0) || e == int(1));
        assert_eq!(proportion_montecarlo(2, 2, 2, 3000, 11).unwrap(), proportion_montecarlo(2, 2, 2, 3000, 11).unwrap());
    }

    #[test]
    fn limit_at_two_two() {
        let iv = limit_proportion(2, 2, 64).unwrap();
        assert!(iv.width() <= two_pow_neg(64));
        // Independent floating evaluation of (8/9) ω(1,4)².
        let w: f64 = (1..200).map(|i| 1.0 - 4f64.powi(-i)).product();
        assert!((to_f64(&iv.midpoint()) - 8.0 / 9.0 * w * w).abs() < 1e-12);
        assert!(limit_window_check(2, 2).unwrap().holds());
        assert!(limit_window_check(2, 10).unwrap().holds());
        assert!(limit_window_check(5, 4).unwrap().holds());
    }

    #[test]
    fn constants_at_two_two() {
        let c = convergence_constants(2, 2).unwrap();
        assert_eq!(c.a_l, 8);
        let m = to_f64(&c.m_threshold);
        assert!((m - (2.0 / (4f64 / 3.0).ln()).powi(2)).abs() < 1e-6 && m > 48.33 && m < 48.34);
        let expect = ratio(32, 9) * num_traits::pow(ratio(8, 3) * int(16) * int(256), 2);
        assert_eq!(c.k, expect);
        assert!((to_f64(&c.k) - 4.24e8).abs() < 0.01e8);
        assert_eq!(constants_exponent(3, 2).unwrap(), 5);
    }

    #[test]
    fn tail_threshold_error() {
        match verify_tail_bounds(2, 2, 10, 20) {
            Err(Error::BelowThreshold { c_lo: 10, threshold }) => assert!(threshold.starts_with("48.33")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn report_round_trip() {
        let r = CensusReport::series(2, 2, 2).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"proportion\":\"55/128\"") && s.contains("\"method\":\"SERIES\""));
        assert_eq!(serde_json::from_str::<CensusReport>(&s).unwrap(), r);
        let l = CensusReport::limit(2, 2, 40, true).unwrap();
        let s = serde_json::to_string(&l).unwrap();
        assert!(s.contains("\"a_L\":8"));
        assert_eq!(serde_json::from_str::<CensusReport>(&s).unwrap(), l);
    }
}
