//! Matrices over finite fields: characteristic and minimal polynomials,
//! primary decomposition, the partition type `λ(X, h)`, the blow-up
//! `M(c, q^b) → M(bc, q)`, and the two primary-cyclicity tests.
//!
//! Matrices act on row vectors, so `Null h(X)` is the left kernel.

mod matrix;

pub use matrix::Matrix;

use serde::{Deserialize, Serialize};

use crate::algebra::{factor, is_irreducible, Elem, Field, FieldSpec, Poly};
use crate::cycleindex::Partition;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub poly: Poly,
    /// Exponent of `poly` in the minimal polynomial.
    pub multiplicity: u32,
    /// Echelonized rows spanning `V_h`.
    pub basis: Matrix,
    pub partition: Partition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CriterionMethod {
    FDefinition,
    KCriterion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryCyclicVerdict {
    pub f: Poly,
    pub is_cyclic: bool,
    pub witness_g: Option<Poly>,
    pub method: CriterionMethod,
}

pub fn char_poly(f: &Field, x: &Matrix) -> Poly {
    x.char_poly(f)
}

/// `λ(X, h)` from the kernel dimensions of `h(X)^j`.
pub fn lambda_partition(f: &Field, x: &Matrix, h: &Poly) -> Result<Partition> {
    if !h.is_monic() || !is_irreducible(f, h) {
        return Err(Error::NotIrreducible(format!("{h:?}")));
    }
    Ok(lambda_unchecked(f, x, h))
}

fn lambda_unchecked(f: &Field, x: &Matrix, h: &Poly) -> Partition {
    let d = h.deg();
    if d > x.rows() {
        return Partition::empty();
    }
    let hx = x.eval_poly(f, h);
    let mut power = hx.clone();
    let mut prev = 0usize;
    let mut conj = Vec::new();
    loop {
        let k = power.nullity(f) / d;
        if k == prev {
            break;
        }
        conj.push((k - prev) as u32);
        prev = k;
        power = power.mul(f, &hx);
    }
    Partition::new(conj).conjugate()
}

/// The `X`-primary decomposition, components sorted by polynomial.
pub fn primary_components(f: &Field, x: &Matrix) -> Vec<PrimaryComponent> {
    let c = x.char_poly(f);
    factor(f, &c)
        .into_iter()
        .map(|(h, m)| {
            let partition = lambda_unchecked(f, x, &h);
            let basis = x.eval_poly(f, &h.pow(f, m as u64)).left_kernel(f);
            PrimaryComponent { multiplicity: partition.largest(), poly: h, basis, partition }
        })
        .collect()
}

/// `∏ h^{λ_1(X,h)}` over the primary components.
pub fn min_poly(f: &Field, x: &Matrix) -> Poly {
    primary_components(f, x)
        .iter()
        .fold(Poly::one(), |acc, c| acc.mul(f, &c.poly.pow(f, c.multiplicity as u64)))
}

/// The `bc × bc` matrix over `F` of `X` acting on `K^c` in the basis
/// `ω^i v_j ↦ e_{jb + i}`.
pub fn blowup(spec: &FieldSpec, x: &Matrix) -> Matrix {
    let (k, b, c) = (spec.ext(), spec.b() as usize, x.rows());
    let powers: Vec<Elem> = (0..b).map(|i| k.pow(spec.omega(), i as u64)).collect();
    let mut out = Matrix::zero(b * c, b * c);
    for j in 0..c {
        for (i, &w) in powers.iter().enumerate() {
            for col in 0..c {
                let coords = spec.coords(k.mul(w, x.get(j, col)));
                for (l, &v) in coords.iter().enumerate() {
                    out.set(j * b + i, col * b + l, v);
                }
            }
        }
    }
    out
}

fn check_f(spec: &FieldSpec, f: &Poly) -> Result<()> {
    if !f.is_monic() || !is_irreducible(spec.base(), f) {
        return Err(Error::NotIrreducible(spec.format_base_poly(f)));
    }
    Ok(())
}

/// `Null f(X_F)` is a nonzero irreducible submodule, read off as
/// `λ(blowup X, f)` having exactly one part.
pub fn is_primary_cyclic_f(spec: &FieldSpec, x: &Matrix, f: &Poly) -> Result<PrimaryCyclicVerdict> {
    check_f(spec, f)?;
    let xf = blowup(spec, x);
    Ok(verdict_f(spec, &xf, f))
}

pub(crate) fn verdict_f(spec: &FieldSpec, xf: &Matrix, f: &Poly) -> PrimaryCyclicVerdict {
    let is_cyclic = lambda_unchecked(spec.base(), xf, f).is_single_part();
    PrimaryCyclicVerdict { f: f.clone(), is_cyclic, witness_g: None, method: CriterionMethod::FDefinition }
}

/// The `K`-side test: `b | deg f` and some factor `g` of `f` over `K` has
/// `λ(X, g)` with one part while no other conjugate of `g` divides `c_X`.
pub fn is_primary_cyclic_k(spec: &FieldSpec, x: &Matrix, f: &Poly) -> Result<PrimaryCyclicVerdict> {
    check_f(spec, f)?;
    if !f.deg().is_multiple_of(spec.b() as usize) {
        return Ok(PrimaryCyclicVerdict {
            f: f.clone(),
            is_cyclic: false,
            witness_g: None,
            method: CriterionMethod::KCriterion,
        });
    }
    let split = spec.split_over_extension(f)?;
    let cx = x.char_poly(spec.ext());
    Ok(verdict_k(spec, x, f, &split, &cx))
}

/// `split` must be the factors of `f` over `K` and `cx` the characteristic
/// polynomial of `x`, with `b | deg f`.
pub(crate) fn verdict_k(spec: &FieldSpec, x: &Matrix, f: &Poly, split: &[Poly], cx: &Poly) -> PrimaryCyclicVerdict {
    let k = spec.ext();
    let divides: Vec<bool> = split.iter().map(|g| g.divides(k, cx)).collect();
    let witness = split.iter().enumerate().find_map(|(i, g)| {
        let others_absent = divides.iter().enumerate().all(|(j, &d)| j == i || !d);
        (divides[i] && others_absent && lambda_unchecked(k, x, g).is_single_part()).then(|| g.clone())
    });
    PrimaryCyclicVerdict {
        f: f.clone(),
        is_cyclic: witness.is_some(),
        witness_g: witness,
        method: CriterionMethod::KCriterion,
    }
}

/// Row-major text, `;` between rows and `,` between entries.
pub fn format_matrix(spec: &FieldSpec, x: &Matrix) -> String {
    (0..x.rows())
        .map(|i| x.row(i).iter().map(|&e| spec.format_elem(e)).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

/// Parses a square matrix over `K`.
pub fn parse_matrix(spec: &FieldSpec, s: &str) -> Result<Matrix> {
    let rows: Vec<Vec<Elem>> = s
        .split(';')
        .map(|r| r.split(',').map(|e| spec.parse_elem(e)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!("matrix text {s:?} is not square")));
    }
    Ok(Matrix::from_rows(rows))
}
