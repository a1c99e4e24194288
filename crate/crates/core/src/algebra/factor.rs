//! Irreducibility, factorisation, and counting/enumeration of irreducible
//! polynomials over a [`Field`].

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{prime_factors, prime_power, Elem, Field};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Default size guard for exhaustive enumerations of polynomials.
pub const ENUM_GUARD: u128 = 1 << 24;

/// Exhaustive search is used when the factor space `q^{⌊d/2⌋}` stays below this.
const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

/// Möbius function by trial division.
pub fn mobius(mut n: u64) -> i64 {
    assert!(n > 0);
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `N(q, d) = (1/d) Σ_{e | d} μ(e) q^{d/e}`, the number of monic irreducible
/// polynomials of degree `d` over `GF(q)`.
pub fn count_irreducibles(q: u64, d: u32) -> Result<u128> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    let mut sum: i128 = 0;
    for e in 1..=d {
        if !d.is_multiple_of(e) {
            continue;
        }
        let mu = mobius(e as u64);
        if mu == 0 {
            continue;
        }
        let term = (q as i128)
            .checked_pow(d / e)
            .ok_or_else(|| Error::Overflow(format!("{q}^{}", d / e)))?;
        sum += mu as i128 * term;
    }
    Ok((sum / d as i128) as u128)
}

/// Irreducibility over `f`, choosing exhaustive factor search for small
/// degree and the Rabin criterion otherwise.
pub fn is_irreducible(f: &Field, g: &Poly) -> bool {
    let Some(d) = g.degree() else { return false };
    let q = f.size() as u64;
    let search = q.checked_pow((d / 2) as u32).unwrap_or(u64::MAX);
    if d <= 4 && search <= EXHAUSTIVE_LIMIT {
        is_irreducible_exhaustive(f, g)
    } else {
        is_irreducible_rabin(f, g)
    }
}

/// No monic factor of degree `1..=deg/2`.
pub fn is_irreducible_exhaustive(f: &Field, g: &Poly) -> bool {
    let Some(d) = g.degree() else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    if f.elements().any(|x| g.eval(f, x).is_zero()) {
        return false;
    }
    (2..=d / 2).all(|k| Poly::monic_of_degree(f, k).all(|h| !h.divides(f, g)))
}

fn frobenius_power_of_t(f: &Field, g: &Poly, k: u32) -> Poly {
    // t^{q^k} mod g by k successive q-th powers.
    let q = BigUint::from(f.size());
    let mut h = Poly::t().rem(f, g);
    for _ in 0..k {
        h = h.pow_mod(f, &q, g);
    }
    h
}

/// Rabin: `g` of degree `d` is irreducible iff `t^{q^d} ≡ t (mod g)` and
/// `gcd(t^{q^{d/r}} - t, g) = 1` for each prime `r | d`.
pub fn is_irreducible_rabin(f: &Field, g: &Poly) -> bool {
    let Some(d) = g.degree() else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let g = g.monic(f);
    let t = Poly::t();
    if frobenius_power_of_t(f, &g, d as u32) != t.rem(f, &g) {
        return false;
    }
    prime_factors(d as u64).into_iter().all(|r| {
        let h = frobenius_power_of_t(f, &g, (d as u64 / r) as u32).sub(f, &t);
        h.gcd(f, &g).is_one()
    })
}

/// Roots in `f`, ascending by encoding.
pub fn roots(f: &Field, g: &Poly) -> Vec<Elem> {
    f.elements().filter(|&x| g.eval(f, x).is_zero()).collect()
}

/// Square-free decomposition of a monic polynomial: pairs `(s_i, i)` with
/// `g = Π s_i^i`, each `s_i` square-free.
pub fn squarefree_decomposition(f: &Field, g: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    sff_into(f, &g.monic(f), 1, &mut out);
    out
}

fn sff_into(f: &Field, g: &Poly, scale: u32, out: &mut Vec<(Poly, u32)>) {
    if g.deg() == 0 {
        return;
    }
    let dg = g.derivative(f);
    let mut c = g.gcd(f, &dg);
    let mut w = g.divrem(f, &c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(f, &c);
        let fac = w.divrem(f, &y).0;
        if !fac.is_one() {
            out.push((fac, i * scale));
        }
        w = y;
        c = c.divrem(f, &w).0;
        i += 1;
    }
    if !c.is_one() {
        // c is a polynomial in t^p; take the p-th root.
        let p = f.characteristic() as usize;
        let root = Poly::from_coeffs(c.coeffs().iter().step_by(p).map(|&x| f.pth_root(x)).collect());
        sff_into(f, &root, scale * f.characteristic(), out);
    }
}

/// Distinct-degree factorisation of a monic square-free polynomial.
pub fn distinct_degree(f: &Field, g: &Poly) -> Vec<(Poly, usize)> {
    let q = BigUint::from(f.size());
    let t = Poly::t();
    let mut rest = g.monic(f);
    let mut h = t.rem(f, &rest);
    let mut out = Vec::new();
    let mut i = 1;
    while rest.deg() >= 2 * i {
        h = h.pow_mod(f, &q, &rest);
        let part = rest.gcd(f, &h.sub(f, &t));
        if !part.is_one() {
            rest = rest.divrem(f, &part).0;
            h = h.rem(f, &rest);
            out.push((part, i));
        }
        i += 1;
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

/// Cantor–Zassenhaus splitting of a monic square-free product of
/// irreducibles all of degree `k`. Deterministic for a given input.
pub fn equal_degree(f: &Field, g: &Poly, k: usize) -> Vec<Poly> {
    let g = g.monic(f);
    let n = g.deg();
    if n == k {
        return vec![g];
    }
    if k == 1 && (f.size() as u64) <= EXHAUSTIVE_LIMIT {
        return roots(f, &g).into_iter().map(|a| Poly::linear(f, a)).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 ^ n as u64 ^ ((k as u64) << 32));
    let q = f.size() as u64;
    loop {
        let a = Poly::from_coeffs((0..n).map(|_| Elem(rng.gen_range(0..q) as u32)).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if f.characteristic() == 2 {
            // Absolute trace map to GF(2) over GF(q^k).
            let total = f.degree() as usize * k;
            let mut term = a.rem(f, &g);
            let mut acc = term.clone();
            for _ in 1..total {
                term = term.mul_mod(f, &term, &g);
                acc = acc.add(f, &term);
            }
            acc
        } else {
            let e = (BigUint::from(q).pow(k as u32) - 1u32) / 2u32;
            a.pow_mod(f, &e, &g).sub(f, &Poly::one())
        };
        let d = g.gcd(f, &b);
        if d.deg() > 0 && d.deg() < n {
            let other = g.divrem(f, &d).0;
            let mut out = equal_degree(f, &d, k);
            out.extend(equal_degree(f, &other, k));
            out.sort();
            return out;
        }
    }
}

/// Complete factorisation into monic irreducibles with multiplicities,
/// sorted canonically. The zero polynomial and constants have no factors.
pub fn factor(f: &Field, g: &Poly) -> Vec<(Poly, u32)> {
    if g.deg() == 0 {
        return Vec::new();
    }
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (s, mult) in squarefree_decomposition(f, g) {
        for (part, k) in distinct_degree(f, &s) {
            for h in equal_degree(f, &part, k) {
                match out.iter_mut().find(|(p, _)| *p == h) {
                    Some(entry) => entry.1 += mult,
                    None => out.push((h, mult)),
                }
            }
        }
    }
    out.sort();
    out
}

fn check_guard(f: &Field, d: u32, guard: u128) -> Result<()> {
    let size = (f.size() as u128).checked_pow(d).unwrap_or(u128::MAX);
    if size > guard {
        return Err(Error::GuardExceeded { what: "irreducible enumeration", size, guard });
    }
    Ok(())
}

/// All monic irreducibles of degree `d` over `f`, sorted canonically.
pub fn enum_irreducibles(f: &Field, d: u32) -> Result<Vec<Poly>> {
    enum_irreducibles_guarded(f, d, ENUM_GUARD)
}

pub fn enum_irreducibles_guarded(f: &Field, d: u32, guard: u128) -> Result<Vec<Poly>> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    check_guard(f, d, guard)?;
    let mut v: Vec<Poly> = if d == 1 {
        f.elements().map(|a| Poly::linear(f, a)).collect()
    } else {
        Poly::monic_of_degree(f, d as usize).filter(|g| is_irreducible(f, g)).collect()
    };
    v.sort();
    Ok(v)
}
