//! The pair `F = GF(q) ⊂ K = GF(q^b)` with `K` presented over `F` in the
//! basis `1, ω, …, ω^{b-1}`.

use std::collections::HashMap;

use num_integer::Integer;

use super::factor::{factor, is_irreducible, roots};
use super::field::{prime_power, Elem, Field};
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct FieldSpec {
    q: u64,
    b: u32,
    base: Field,
    ext: Field,
    omega: Elem,
    /// `embed[x]` is the image in `K` of the base element `x`.
    embed: Vec<Elem>,
    restrict: HashMap<Elem, Elem>,
    /// Flattened `F`-coordinates, `b` per element of `K`; empty when `q` is
    /// prime and `K`'s own encoding already gives them.
    coords: Vec<Elem>,
    modulus: Poly,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.b == other.b
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    pub fn new(q: u64, b: u32) -> Result<FieldSpec> {
        if b == 0 {
            return Err(Error::ExtensionDegree(b));
        }
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let base = Field::new(p as u32, e)?;
        let ext = Field::new(p as u32, e * b)?;
        let omega = ext.generator();

        let embed: Vec<Elem> = if e == 1 {
            base.elements().collect()
        } else {
            // Send the base generator to the least root of its minimal polynomial.
            let m = base.modulus();
            let r = ext
                .elements()
                .find(|&r| {
                    let v = m.iter().rev().fold(Elem::ZERO, |acc, &c| ext.add(ext.mul(acc, r), Elem(c)));
                    v.is_zero() && !r.is_zero()
                })
                .expect("base modulus splits in the extension");
            let mut t = vec![Elem::ZERO; base.size() as usize];
            for i in 0..base.size() - 1 {
                t[base.exp(i as u64).index()] = ext.pow(r, i as u64);
            }
            t
        };
        let restrict = base.elements().map(|x| (embed[x.index()], x)).collect();

        let coords = if e == 1 {
            Vec::new()
        } else {
            let qb = base.size() as usize;
            let mut table = vec![Elem::ZERO; ext.size() as usize * b as usize];
            let powers: Vec<Elem> = (0..b).map(|i| ext.pow(omega, i as u64)).collect();
            for idx in 0..ext.size() as usize {
                let mut rest = idx;
                let mut x = Elem::ZERO;
                let mut c = Vec::with_capacity(b as usize);
                for &w in &powers {
                    let ci = Elem((rest % qb) as u32);
                    rest /= qb;
                    x = ext.add(x, ext.mul(embed[ci.index()], w));
                    c.push(ci);
                }
                table[x.index() * b as usize..(x.index() + 1) * b as usize].copy_from_slice(&c);
            }
            table
        };

        let mut spec = FieldSpec { q, b, base, ext, omega, embed, restrict, coords, modulus: Poly::zero() };
        let mut m = Poly::one();
        for j in 0..b {
            m = m.mul(&spec.ext, &Poly::linear(&spec.ext, spec.frobenius_apply(omega, j)));
        }
        spec.modulus = spec.restrict_poly(&m).expect("minimal polynomial of ω lies over F");
        debug_assert!(is_irreducible(&spec.base, &spec.modulus));
        Ok(spec)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn p(&self) -> u32 {
        self.base.characteristic()
    }

    /// `Q = q^b`.
    pub fn ext_size(&self) -> u64 {
        self.ext.size() as u64
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    /// The primitive element ω of `K`.
    pub fn omega(&self) -> Elem {
        self.omega
    }

    /// Minimal polynomial of ω over `F`.
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn embed(&self, x: Elem) -> Elem {
        self.embed[x.index()]
    }

    /// The `F`-element equal to `x`, if `x` lies in the subfield.
    pub fn restrict(&self, x: Elem) -> Option<Elem> {
        self.restrict.get(&x).copied()
    }

    /// Coordinates of `x ∈ K` over `F` in the basis `1, ω, …, ω^{b-1}`.
    pub fn coords(&self, x: Elem) -> Vec<Elem> {
        if self.coords.is_empty() {
            self.ext.coords(x).into_iter().map(Elem).collect()
        } else {
            let b = self.b as usize;
            self.coords[x.index() * b..(x.index() + 1) * b].to_vec()
        }
    }

    pub fn from_coords(&self, c: &[Elem]) -> Elem {
        let mut x = Elem::ZERO;
        let mut w = Elem::ONE;
        for &ci in c {
            x = self.ext.add(x, self.ext.mul(self.embed(ci), w));
            w = self.ext.mul(w, self.omega);
        }
        x
    }

    /// `x^{q^i}`.
    pub fn frobenius_apply(&self, x: Elem, i: u32) -> Elem {
        let mut y = x;
        for _ in 0..i % self.b {
            y = self.ext.pow(y, self.q);
        }
        y
    }

    /// Coefficient-wise `σ₀^i`.
    pub fn conjugate_poly(&self, g: &Poly, i: u32) -> Poly {
        g.map_coeffs(|c| self.frobenius_apply(c, i))
    }

    pub fn embed_poly(&self, f: &Poly) -> Poly {
        f.map_coeffs(|c| self.embed(c))
    }

    pub fn restrict_poly(&self, g: &Poly) -> Option<Poly> {
        let c: Option<Vec<Elem>> = g.coeffs().iter().map(|&c| self.restrict(c)).collect();
        c.map(Poly::from_coeffs)
    }

    /// The distinct Frobenius conjugates of `g`, in order of first appearance.
    pub fn orbit(&self, g: &Poly) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for i in 0..self.b {
            let h = self.conjugate_poly(g, i);
            if !out.contains(&h) {
                out.push(h);
            }
        }
        out
    }

    /// Irreducible factors over `K` of an irreducible `f` over `F`, sorted
    /// canonically. There are `gcd(b, deg f)` of them, forming one orbit.
    pub fn split_over_extension(&self, f: &Poly) -> Result<Vec<Poly>> {
        if !f.is_monic() || !is_irreducible(&self.base, f) {
            return Err(Error::NotIrreducible(format!("{f:?}")));
        }
        let d = f.deg() as u32;
        let k = d.gcd(&self.b);
        let g = self.embed_poly(f);
        let mut out = if k == 1 {
            vec![g]
        } else if d == k {
            roots(&self.ext, &g).into_iter().map(|a| Poly::linear(&self.ext, a)).collect()
        } else {
            factor(&self.ext, &g).into_iter().map(|(h, _)| h).collect()
        };
        out.sort();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::factor::enum_irreducibles;

    fn ext(spec: &FieldSpec, c: &[u32]) -> Elem {
        spec.from_coords(&c.iter().map(|&x| Elem(x)).collect::<Vec<_>>())
    }

    #[test]
    fn frobenius_examples() {
        let s = FieldSpec::new(2, 2).unwrap();
        let w = s.omega();
        assert_eq!(s.frobenius_apply(w, 1), ext(&s, &[1, 1]));
        let s9 = FieldSpec::new(3, 2).unwrap();
        let w = s9.omega();
        assert_eq!(s9.ext().mul(w, w), ext(&s9, &[1, 1]));
        assert_eq!(s9.frobenius_apply(w, 1), ext(&s9, &[1, 2]));
    }

    #[test]
    fn frobenius_is_order_b_and_fixes_f() {
        for (q, b) in [(2u64, 2u32), (2, 3), (3, 2), (4, 2), (2, 4), (4, 3), (9, 2)] {
            let s = FieldSpec::new(q, b).unwrap();
            for x in s.ext().elements() {
                let y = s.frobenius_apply(x, 1);
                let mut z = x;
                for _ in 0..b {
                    z = s.ext().pow(z, q);
                }
                assert_eq!(z, x);
                assert_eq!(s.restrict(x).is_some(), y == x);
            }
            for a in s.base().elements() {
                assert_eq!(s.frobenius_apply(s.embed(a), 1), s.embed(a));
            }
        }
    }

    #[test]
    fn embedding_is_a_homomorphism_and_coords_roundtrip() {
        for (q, b) in [(4u64, 2u32), (9, 2), (4, 3), (8, 2), (3, 3)] {
            let s = FieldSpec::new(q, b).unwrap();
            let (f, k) = (s.base(), s.ext());
            for x in f.elements() {
                for y in f.elements() {
                    assert_eq!(s.embed(f.add(x, y)), k.add(s.embed(x), s.embed(y)));
                    assert_eq!(s.embed(f.mul(x, y)), k.mul(s.embed(x), s.embed(y)));
                }
            }
            for x in k.elements() {
                assert_eq!(s.from_coords(&s.coords(x)), x);
            }
            assert_eq!(s.modulus().deg(), b as usize);
            assert_eq!(s.ext().order(s.omega()), s.ext_size() - 1);
        }
    }

    #[test]
    fn conjugate_examples() {
        let s = FieldSpec::new(2, 2).unwrap();
        let (k, w) = (s.ext(), s.omega());
        let w2 = k.mul(w, w);
        let g = Poly::from_coeffs(vec![w, Elem::ONE]);
        assert_eq!(s.conjugate_poly(&g, 1), Poly::from_coeffs(vec![w2, Elem::ONE]));
        let g = Poly::from_coeffs(vec![Elem::ONE, w, Elem::ONE]);
        assert_eq!(s.conjugate_poly(&g, 1), Poly::from_coeffs(vec![Elem::ONE, w2, Elem::ONE]));
        let g = Poly::from_coeffs(vec![Elem::ONE, Elem::ONE, Elem::ZERO, Elem::ONE]);
        assert_eq!(s.conjugate_poly(&g, 1), g);
    }

    #[test]
    fn split_examples() {
        let s = FieldSpec::new(2, 2).unwrap();
        let (k, w) = (s.ext(), s.omega());
        let f = Poly::from_coeffs(vec![Elem(1), Elem(1), Elem(1)]);
        let parts = s.split_over_extension(&f).unwrap();
        let mut expect = vec![Poly::linear(k, w), Poly::linear(k, k.mul(w, w))];
        expect.sort();
        assert_eq!(parts, expect);
        let f = Poly::from_coeffs(vec![Elem(1), Elem(1)]);
        assert_eq!(s.split_over_extension(&f).unwrap(), vec![f]);
        let f = Poly::from_coeffs(vec![Elem(1), Elem(1), Elem(0), Elem(1)]);
        let parts = s.split_over_extension(&f).unwrap();
        assert_eq!(parts, vec![f.clone()]);
        assert!(roots(k, &parts[0]).is_empty());
        let reducible = Poly::from_coeffs(vec![Elem(1), Elem(0), Elem(1)]);
        assert!(matches!(s.split_over_extension(&reducible), Err(Error::NotIrreducible(_))));
    }

    #[test]
    fn split_orbit_property() {
        for (q, b) in [(2u64, 2u32), (2, 3), (3, 2), (2, 4), (4, 2)] {
            let s = FieldSpec::new(q, b).unwrap();
            for d in 1..=4 {
                for f in enum_irreducibles(s.base(), d).unwrap() {
                    let parts = s.split_over_extension(&f).unwrap();
                    let k = d.gcd(&b) as usize;
                    assert_eq!(parts.len(), k);
                    let mut prod = Poly::one();
                    for g in &parts {
                        assert_eq!(g.deg(), d as usize / k);
                        let mut orbit = s.orbit(g);
                        assert_eq!(orbit.len(), k);
                        orbit.sort();
                        assert_eq!(orbit, parts);
                        prod = prod.mul(s.ext(), g);
                        // Stabiliser is generated by σ₀^k.
                        assert_eq!(&s.conjugate_poly(g, k as u32), g);
                    }
                    assert_eq!(prod, s.embed_poly(&f));
                    if d % b == 0 {
                        assert_eq!(s.orbit(&parts[0]).len(), b as usize);
                    }
                }
            }
        }
    }
}
