//! Dense matrices over a [`Field`] acting on row vectors.

use crate::algebra::{Elem, Field, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn scalar(n: usize, c: Elem) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn diagonal(d: &[Elem]) -> Matrix {
        let mut m = Matrix::zero(d.len(), d.len());
        for (i, &c) in d.iter().enumerate() {
            m.set(i, i, c);
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Square matrix from a row-major entry slice of length `n²`.
    pub fn from_entries(n: usize, data: Vec<Elem>) -> Matrix {
        assert_eq!(data.len(), n * n);
        Matrix { rows: n, cols: n, data }
    }

    /// The `index`-th `n×n` matrix in odometer order over entries, first
    /// entry fastest, entries in encoding order.
    pub fn from_index(n: usize, q: u64, mut index: u64) -> Matrix {
        let mut data = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            data.push(Elem((index % q) as u32));
            index /= q;
        }
        Matrix { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn add(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, f: &Field, c: Elem) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, f: &Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Elem::ZERO; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(i, j)));
            }
        }
        out
    }

    pub fn pow(&self, f: &Field, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut result = Matrix::identity(self.rows);
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

    /// `h(X)` by Horner's rule.
    pub fn eval_poly(&self, f: &Field, h: &Poly) -> Matrix {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Matrix::zero(n, n);
        for &c in h.coeffs().iter().rev() {
            acc = acc.mul(f, self);
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: &Field) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(p, r);
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).1.len()
    }

    pub fn nullity(&self, f: &Field) -> usize {
        self.rows - self.rank(f)
    }

    /// Echelonized basis (as rows) of `{v : vA = 0}`.
    pub fn left_kernel(&self, f: &Field) -> Matrix {
        let t = self.transpose();
        let (r, pivots) = t.rref(f);
        let n = t.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Elem::ZERO; n];
            v[fc] = Elem::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, fc));
            }
            basis.push(v);
        }
        if basis.is_empty() {
            return Matrix::zero(0, n);
        }
        Matrix::from_rows(basis).rref(f).0
    }

    pub fn det(&self, f: &Field) -> Elem {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Elem::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else { return Elem::ZERO };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(det);
            }
            let pv = m.get(c, c);
            det = f.mul(det, pv);
            let inv = f.inv(pv);
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        self.rank(f) == self.rows
    }

    /// Characteristic polynomial `det(tI - X)` via reduction to upper
    /// Hessenberg form.
    pub fn char_poly(&self, f: &Field) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(i) = (j + 1..n).find(|&i| !h.get(i, j).is_zero()) else { continue };
            if i != j + 1 {
                h.swap_rows(i, j + 1);
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + j + 1);
                }
            }
            let piv = h.get(j + 1, j);
            let inv = f.inv(piv);
            for k in j + 2..n {
                let u = f.mul(h.get(k, j), inv);
                if u.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = f.sub(h.get(k, c), f.mul(u, h.get(j + 1, c)));
                    h.set(k, c, v);
                }
                for r in 0..n {
                    let v = f.add(h.get(r, j + 1), f.mul(u, h.get(r, k)));
                    h.set(r, j + 1, v);
                }
            }
        }
        let mut p: Vec<Poly> = Vec::with_capacity(n + 1);
        p.push(Poly::one());
        for m in 1..=n {
            let mut next = Poly::linear(f, h.get(m - 1, m - 1)).mul(f, &p[m - 1]);
            let mut prod = Elem::ONE;
            for i in 1..m {
                prod = f.mul(prod, h.get(m - i, m - i - 1));
                if prod.is_zero() {
                    break;
                }
                let c = f.mul(h.get(m - i - 1, m - 1), prod);
                next = next.sub(f, &p[m - i - 1].scale(f, c));
            }
            p.push(next);
        }
        p.pop().unwrap()
    }

    /// Companion matrix of a monic `h` for the row-vector action: `e_i ↦ e_{i+1}`
    /// and the last row holds the negated low coefficients.
    pub fn companion(f: &Field, h: &Poly) -> Matrix {
        assert!(h.is_monic());
        let n = h.deg();
        let mut m = Matrix::zero(n, n);
        for i in 0..n.saturating_sub(1) {
            m.set(i, i + 1, Elem::ONE);
        }
        if n > 0 {
            for j in 0..n {
                m.set(n - 1, j, f.neg(h.coeff(j)));
            }
        }
        m
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Matrix::zero(n, n);
        let mut off = 0;
        for b in blocks {
            assert!(b.is_square());
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.rows;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_rank() {
        let f = Field::new(3, 1).unwrap();
        let e = |x: u32| Elem(x);
        let a = Matrix::from_rows(vec![vec![e(1), e(2)], vec![e(2), e(1)], vec![e(0), e(0)]]);
        assert_eq!(a.rank(&f), 1);
        let k = a.left_kernel(&f);
        assert_eq!(k.rows(), 2);
        for i in 0..k.rows() {
            assert!(a.apply(&f, k.row(i)).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn det_matches_invertibility_gl22() {
        let f = Field::new(2, 1).unwrap();
        let invertible = (0..16).filter(|&i| !Matrix::from_index(2, 2, i).det(&f).is_zero()).count();
        assert_eq!(invertible, 6);
    }

    #[test]
    fn companion_char_poly() {
        let f = Field::new(2, 1).unwrap();
        let h = Poly::from_coeffs(vec![Elem(1), Elem(1), Elem(1)]);
        assert_eq!(Matrix::companion(&f, &h).char_poly(&f), h);
        assert_eq!(Matrix::zero(2, 2).char_poly(&Field::new(2, 2).unwrap()), Poly::monomial(Elem::ONE, 2));
    }
}
