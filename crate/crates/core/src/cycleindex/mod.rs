//! Partitions, centralizer orders `c(λ, d, q)`, and the two sides of the
//! generalised cycle index identity for `M(n, q)`.

mod partition;

pub use partition::{partitions_of, Partition, PARTITION_GUARD};

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::{count_irreducibles, enum_irreducibles, factor, is_irreducible, Field, Poly};
use crate::error::{Error, Result};
use crate::matrixlab::{lambda_partition, Matrix};
use crate::rational::Rational;
use crate::series::{omega_n, TruncatedPowerSeries};

/// Default bound on `q^{s²}` for exhaustive matrix scans.
pub const MATRIX_GUARD: u128 = 1 << 24;

fn check_matrix_guard(what: &'static str, q: u64, n: usize, guard: u128) -> Result<u64> {
    let size = (q as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    if size > guard {
        return Err(Error::GuardExceeded { what, size, guard });
    }
    Ok(size as u64)
}

/// `|GL(n, q)| = Π_{i<n} (q^n - q^i)`.
pub fn gl_order(n: u32, q: u64) -> BigUint {
    let qn = BigUint::from(q).pow(n);
    (0..n).fold(BigUint::one(), |acc, i| acc * (&qn - BigUint::from(q).pow(i)))
}

/// `c(λ, d, q) = Q^{Σ λ'_i²} Π_i ω_{m_i}(1, Q)` with `Q = q^d`, `λ'` the
/// conjugate partition and `m_i` the number of parts equal to `i`.
pub fn centralizer_order(lambda: &Partition, d: u32, q: u64) -> BigUint {
    if lambda.is_empty() {
        return BigUint::one();
    }
    let big_q = q.pow(d);
    let e: u64 = lambda.conjugate().parts().iter().map(|&x| (x as u64) * (x as u64)).sum();
    let mut r = Rational::from_integer(BigInt::from(big_q).pow(e as u32));
    for m in lambda.multiplicities() {
        r *= omega_n(m, big_q);
    }
    assert!(r.is_integer());
    r.to_integer().to_biguint().unwrap()
}

/// Block-diagonal sum of companion matrices of `h^{λ_i}`.
pub fn primary_matrix(f: &Field, lambda: &Partition, h: &Poly) -> Matrix {
    let blocks: Vec<Matrix> = lambda.parts().iter().map(|&p| Matrix::companion(f, &h.pow(f, p as u64))).collect();
    Matrix::direct_sum(&blocks)
}

/// Counts invertible matrices commuting with a matrix of type `(h, λ)` by
/// scanning all of `M(s, q)`.
pub fn centralizer_bruteforce(f: &Field, lambda: &Partition, h: &Poly) -> Result<u64> {
    centralizer_bruteforce_guarded(f, lambda, h, MATRIX_GUARD)
}

pub fn centralizer_bruteforce_guarded(f: &Field, lambda: &Partition, h: &Poly, guard: u128) -> Result<u64> {
    if !h.is_monic() || !is_irreducible(f, h) {
        return Err(Error::NotIrreducible(format!("{h:?}")));
    }
    if lambda.is_empty() {
        return Ok(1);
    }
    let x = primary_matrix(f, lambda, h);
    let s = x.rows();
    let q = f.size() as u64;
    let total = check_matrix_guard("centralizer scan", q, s, guard)?;
    Ok((0..total)
        .into_par_iter()
        .filter(|&i| {
            let y = Matrix::from_index(s, q, i);
            x.mul(f, &y) == y.mul(f, &x) && y.is_invertible(f)
        })
        .count() as u64)
}

/// Weights of `x_{h,λ}` by the shape of `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weights {
    pub empty: Rational,
    pub single: Rational,
    pub multi: Rational,
}

impl Weights {
    pub fn constant(c: Rational) -> Weights {
        Weights { empty: c.clone(), single: c.clone(), multi: c }
    }

    pub fn ones() -> Weights {
        Weights::constant(Rational::one())
    }

    pub fn zeros() -> Weights {
        Weights::constant(Rational::zero())
    }

    pub fn get(&self, lambda: &Partition) -> &Rational {
        match lambda.len() {
            0 => &self.empty,
            1 => &self.single,
            _ => &self.multi,
        }
    }
}

/// An evaluation point for the indeterminates `x_{h,λ}`: per-polynomial
/// weights, with a default for every other polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableAssignment {
    pub overrides: BTreeMap<Poly, Weights>,
    pub default: Weights,
}

impl VariableAssignment {
    pub fn constant(c: Rational) -> Self {
        VariableAssignment { overrides: BTreeMap::new(), default: Weights::constant(c) }
    }

    pub fn all_ones() -> Self {
        Self::constant(Rational::one())
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    /// `x_{t-1,λ} = 1` and every other `x_{h,λ} = 0`.
    pub fn unipotent(f: &Field) -> Self {
        let mut overrides = BTreeMap::new();
        overrides.insert(Poly::linear(f, crate::algebra::Elem::ONE), Weights::ones());
        VariableAssignment { overrides, default: Weights::zeros() }
    }

    /// For each `g` in `chosen`: `x_{g,λ} = 1` exactly when `λ` has one part.
    /// Each other conjugate `h` of a chosen `g` gets `x_{h,λ} = 0`.
    pub fn pcbi(chosen: &[Poly], conjugates: &[Poly]) -> Self {
        let mut overrides = BTreeMap::new();
        for h in conjugates {
            overrides.insert(h.clone(), Weights::zeros());
        }
        for g in chosen {
            let w = Weights { empty: Rational::zero(), single: Rational::one(), multi: Rational::zero() };
            overrides.insert(g.clone(), w);
        }
        VariableAssignment { overrides, default: Weights::ones() }
    }

    pub fn weights(&self, h: &Poly) -> &Weights {
        self.overrides.get(h).unwrap_or(&self.default)
    }

    pub fn get(&self, h: &Poly, lambda: &Partition) -> &Rational {
        self.weights(h).get(lambda)
    }
}

fn check_set(f: &Field, set: &BTreeSet<Poly>) -> Result<()> {
    for h in set {
        if !h.is_monic() || !is_irreducible(f, h) {
            return Err(Error::NotIrreducible(format!("{h:?}")));
        }
    }
    Ok(())
}

/// The `I`-cycle index weight of one matrix.
fn matrix_weight(f: &Field, x: &Matrix, set: &BTreeSet<Poly>, assign: &VariableAssignment) -> Rational {
    let c = x.char_poly(f);
    let mut w = Rational::one();
    let mut seen = Vec::new();
    for (h, _) in factor(f, &c) {
        let lambda = lambda_partition(f, x, &h).expect("factor output is irreducible");
        w *= assign.get(&h, &lambda);
        if w.is_zero() {
            return w;
        }
        seen.push(h);
    }
    for h in set {
        if !seen.contains(h) {
            w *= &assign.weights(h).empty;
        }
    }
    w
}

/// `(1/|GL(n,q)|) Σ_{X ∈ M(n,q)} Π_{h ∈ Div X ∪ I} x_{h, λ(X,h)}`, with the
/// `n = 0` term `Π_{h∈I} x_{h,()}`.
pub fn icycle_lhs(f: &Field, n: u32, set: &BTreeSet<Poly>, assign: &VariableAssignment) -> Result<Rational> {
    icycle_lhs_guarded(f, n, set, assign, MATRIX_GUARD)
}

pub fn icycle_lhs_guarded(
    f: &Field,
    n: u32,
    set: &BTreeSet<Poly>,
    assign: &VariableAssignment,
    guard: u128,
) -> Result<Rational> {
    check_set(f, set)?;
    if n == 0 {
        return Ok(set.iter().map(|h| assign.weights(h).empty.clone()).product());
    }
    let q = f.size() as u64;
    let total = check_matrix_guard("cycle index enumeration", q, n as usize, guard)?;
    let sum = (0..total)
        .into_par_iter()
        .map(|i| matrix_weight(f, &Matrix::from_index(n as usize, q, i), set, assign))
        .reduce(Rational::zero, |a, b| a + b);
    Ok(sum / Rational::from_integer(BigInt::from(gl_order(n, q))))
}

/// `Σ_{λ≠(), |λ|d ≤ order} w(λ) u^{|λ| d} / c(λ, d, q)` plus `base`.
fn local_factor(base: &Rational, w: &Weights, d: u32, q: u64, order: usize) -> Result<TruncatedPowerSeries> {
    let mut s = TruncatedPowerSeries::constant(base.clone(), order);
    let mut coeffs = s.coeffs().to_vec();
    for size in 1..=(order as u32 / d) {
        for lambda in partitions_of(size)? {
            let x = w.get(&lambda);
            if x.is_zero() {
                continue;
            }
            let c = Rational::from_integer(BigInt::from(centralizer_order(&lambda, d, q)));
            coeffs[(size * d) as usize] += x / c;
        }
    }
    s = TruncatedPowerSeries::from_coeffs(coeffs, order);
    Ok(s)
}

/// Truncated product side of the identity over the irreducibles of `f`.
pub fn icycle_rhs(f: &Field, order: usize, set: &BTreeSet<Poly>, assign: &VariableAssignment) -> Result<TruncatedPowerSeries> {
    check_set(f, set)?;
    let q = f.size() as u64;
    let one = Rational::one();
    let mut special: BTreeSet<Poly> = set.clone();
    for h in assign.overrides.keys() {
        if !h.is_monic() || !is_irreducible(f, h) {
            return Err(Error::NotIrreducible(format!("{h:?}")));
        }
        special.insert(h.clone());
    }
    let mut acc = TruncatedPowerSeries::one(order);
    for h in &special {
        let d = h.deg() as u32;
        if d as usize > order && !set.contains(h) {
            continue;
        }
        let base = if set.contains(h) { &assign.weights(h).empty } else { &one };
        acc = acc.mul(&local_factor(base, assign.weights(h), d, q, order)?);
    }
    for d in 1..=order as u32 {
        let special_d = special.iter().filter(|h| h.deg() as u32 == d).count() as u128;
        let count = count_irreducibles(q, d)? - special_d;
        if count == 0 {
            continue;
        }
        let factor = local_factor(&one, &assign.default, d, q, order)?;
        acc = acc.mul(&factor.pow(count.to_u64().ok_or_else(|| Error::Overflow("irreducible count".into()))?));
    }
    Ok(acc)
}

/// `G(u, q, d) = 1 + Σ_{λ≠()} u^{|λ|} / c(λ, d, q)`.
pub fn g_series(q: u64, d: u32, order: usize) -> Result<TruncatedPowerSeries> {
    let mut coeffs = vec![Rational::zero(); order + 1];
    coeffs[0] = Rational::one();
    for (size, slot) in coeffs.iter_mut().enumerate().skip(1) {
        for lambda in partitions_of(size as u32)? {
            *slot += Rational::new(BigInt::one(), BigInt::from(centralizer_order(&lambda, d, q)));
        }
    }
    Ok(TruncatedPowerSeries::from_coeffs(coeffs, order))
}

/// Unipotent matrices in `M(n, q)`, counted by testing `(X - I)^n = 0`.
pub fn unipotent_count(f: &Field, n: u32) -> Result<u64> {
    let q = f.size() as u64;
    let total = check_matrix_guard("unipotent enumeration", q, n as usize, MATRIX_GUARD)?;
    let id = Matrix::identity(n as usize);
    Ok((0..total)
        .into_par_iter()
        .filter(|&i| {
            let x = Matrix::from_index(n as usize, q, i).sub(f, &id);
            x.pow(f, n as u64).entries().iter().all(|e| e.is_zero())
        })
        .count() as u64)
}

/// Matrix type: the `(h, λ(X, h))` pairs over the divisors of `c_X`.
pub type MatrixType = Vec<(Poly, Partition)>;

/// Number of matrices of each type in `M(n, q)`.
pub fn type_census(f: &Field, n: u32) -> Result<BTreeMap<MatrixType, u64>> {
    let q = f.size() as u64;
    let total = check_matrix_guard("type census", q, n as usize, MATRIX_GUARD)?;
    let types: Vec<MatrixType> = (0..total)
        .into_par_iter()
        .map(|i| {
            let x = Matrix::from_index(n as usize, q, i);
            factor(f, &x.char_poly(f))
                .into_iter()
                .map(|(h, _)| {
                    let l = lambda_partition(f, &x, &h).unwrap();
                    (h, l)
                })
                .collect()
        })
        .collect();
    let mut out = BTreeMap::new();
    for t in types {
        *out.entry(t).or_insert(0) += 1;
    }
    Ok(out)
}

/// Distinct monic irreducibles over `f` of degree at most `d`.
pub fn irreducibles_up_to(f: &Field, d: u32) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for k in 1..=d {
        out.extend(enum_irreducibles(f, k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Elem;
    use crate::rational::{int, ratio};

    fn gf(q: u64) -> Field {
        let (p, e) = crate::algebra::prime_power(q).unwrap();
        Field::new(p as u32, e).unwrap()
    }

    #[test]
    fn centralizer_examples() {
        assert_eq!(centralizer_order(&Partition::single(2), 1, 4), BigUint::from(12u32));
        assert_eq!(centralizer_order(&Partition::new(vec![1, 1]), 1, 2), BigUint::from(6u32));
        assert_eq!(centralizer_order(&Partition::empty(), 3, 5), BigUint::one());
        let f2 = gf(2);
        assert_eq!(centralizer_bruteforce(&f2, &Partition::single(2), &Poly::t()).unwrap(), 2);
        assert_eq!(centralizer_bruteforce(&f2, &Partition::new(vec![1, 1]), &Poly::t()).unwrap(), 6);
        let f3 = gf(3);
        assert_eq!(centralizer_bruteforce(&f3, &Partition::single(1), &Poly::linear(&f3, Elem(2))).unwrap(), 2);
    }

    #[test]
    fn class_sizes_divide_gl() {
        for q in [2u64, 3, 4] {
            for d in 1..=2u32 {
                for n in 0..=4u32 {
                    for l in partitions_of(n).unwrap() {
                        let s = l.size() * d;
                        assert_eq!(gl_order(s, q) % centralizer_order(&l, d, q), BigUint::zero());
                    }
                }
            }
        }
    }

    #[test]
    fn lhs_examples() {
        let f2 = gf(2);
        let empty = BTreeSet::new();
        assert_eq!(icycle_lhs(&f2, 1, &empty, &VariableAssignment::all_ones()).unwrap(), int(2));
        assert_eq!(icycle_lhs(&f2, 2, &empty, &VariableAssignment::unipotent(&f2)).unwrap(), ratio(4, 6));
        let t: BTreeSet<Poly> = [Poly::t()].into();
        assert_eq!(
            icycle_lhs(&f2, 2, &t, &VariableAssignment::all_ones()).unwrap(),
            icycle_lhs(&f2, 2, &empty, &VariableAssignment::all_ones()).unwrap()
        );
        assert_eq!(icycle_lhs(&f2, 0, &t, &VariableAssignment::zero()).unwrap(), int(0));
        assert_eq!(icycle_lhs(&f2, 0, &empty, &VariableAssignment::zero()).unwrap(), int(1));
    }

    #[test]
    fn rhs_examples() {
        let f2 = gf(2);
        let empty = BTreeSet::new();
        let rhs = icycle_rhs(&f2, 6, &empty, &VariableAssignment::all_ones()).unwrap();
        assert_eq!(rhs, crate::series::p_series_q(2, 6));
        let rhs = icycle_rhs(&f2, 4, &empty, &VariableAssignment::zero()).unwrap();
        assert_eq!(rhs, TruncatedPowerSeries::one(4));
        let rhs = icycle_rhs(&f2, 4, &empty, &VariableAssignment::unipotent(&f2)).unwrap();
        for n in 0..=4u32 {
            let expect = Rational::new(BigInt::from(2u32).pow(n * n.saturating_sub(1)), BigInt::from(gl_order(n, 2)));
            assert_eq!(rhs.coeff(n as usize), &expect);
        }
    }

    #[test]
    fn g_series_at_degree_one() {
        for q in [2u64, 3, 4] {
            let g = g_series(q, 1, 8).unwrap();
            let p = crate::series::p_series_q(q, 8).scale_var(&ratio(1, q as i64));
            assert_eq!(g, p);
        }
    }
}
