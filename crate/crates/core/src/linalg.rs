//! Dense matrices and subspaces over 𝔽_q.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{FiniteField, Fq};

pub type Vector = Vec<Fq>;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Fq::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fq::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fq>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<Fq>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Fq>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &FiniteField, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, f: &FiniteField, v: &[Fq]) -> Vector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Fq::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, f: &FiniteField, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, f: &FiniteField, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, f: &FiniteField, c: Fq) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(c, a)).collect() }
    }

    /// [a, b] = ab − ba.
    pub fn commutator(&self, f: &FiniteField, other: &Mat) -> Mat {
        self.mul(f, other).sub(f, &other.mul(f, self))
    }

    pub fn trace(&self, f: &FiniteField) -> Fq {
        (0..self.rows.min(self.cols)).fold(Fq::ZERO, |acc, i| f.add(acc, self.get(i, i)))
    }

    pub fn pow(&self, f: &FiniteField, mut e: u64) -> Mat {
        let mut base = self.clone();
        let mut acc = Mat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    /// Row-reduced echelon form and pivot columns.
    pub fn rref(&self, f: &FiniteField) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let (a, b) = (m.get(r, j), m.get(pr, j));
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in 0..m.cols {
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
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of {x : Mx = 0}, one vector per free column with that free
    /// coordinate set to 1 and the others to 0.
    pub fn nullspace(&self, f: &FiniteField) -> Vec<Vector> {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Fq::ZERO; self.cols];
                v[fc] = Fq::ONE;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(row, fc));
                }
                v
            })
            .collect()
    }

    /// A solution of Mx = b with all free coordinates zero, if one exists.
    pub fn solve(&self, f: &FiniteField, b: &[Fq]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, pivots) = aug.rref(f);
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Fq::ZERO; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Some(x)
    }

    /// The lexicographically least solution of Mx = b (coordinate 0 most
    /// significant, field elements ordered by index).
    pub fn lex_least_solution(&self, f: &FiniteField, b: &[Fq]) -> Option<Vector> {
        let x0 = self.solve(f, b)?;
        let kernel = Subspace::span(f, self.cols, &self.nullspace(f));
        Some(kernel.reduce(f, &x0))
    }

    pub fn inverse(&self, f: &FiniteField) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::Algebra("cannot invert a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Fq::ONE);
        }
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Algebra("matrix is singular".into()));
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self, f: &FiniteField) -> bool {
        self.is_square() && self.rank(f) == self.rows
    }
}

/// A linear subspace of 𝔽_q^n held as a row-reduced basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Fq::ZERO; ambient];
                v[i] = Fq::ONE;
                v
            })
            .collect();
        Subspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn span(f: &FiniteField, ambient: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let (r, pivots) = Mat::from_rows(vectors).rref(f);
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Canonical coset representative of v + self: pivot coordinates cleared.
    /// This is the lexicographically least element of the coset.
    pub fn reduce(&self, f: &FiniteField, v: &[Fq]) -> Vector {
        let mut out = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = out[pc];
            if c.is_zero() {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                *o = f.sub(*o, f.mul(c, r));
            }
        }
        out
    }

    pub fn contains(&self, f: &FiniteField, v: &[Fq]) -> bool {
        self.reduce(f, v).iter().all(|x| x.is_zero())
    }

    pub fn sum(&self, f: &FiniteField, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(f, self.ambient, &all)
    }

    pub fn intersect(&self, f: &FiniteField, other: &Subspace) -> Subspace {
        // x = Σ a_i u_i = Σ b_j w_j  ⇔  [U | -W] (a, b) = 0
        let (m, n) = (self.dim(), other.dim());
        if m == 0 || n == 0 {
            return Subspace::zero(self.ambient);
        }
        let mut cols: Vec<Vector> = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|&x| f.neg(x)).collect()));
        let sys = Mat::from_cols(self.ambient, &cols);
        let vecs: Vec<Vector> = sys
            .nullspace(f)
            .into_iter()
            .map(|ab| {
                let mut x = vec![Fq::ZERO; self.ambient];
                for (a, u) in ab[..m].iter().zip(&self.basis) {
                    for (xi, &ui) in x.iter_mut().zip(u) {
                        *xi = f.add(*xi, f.mul(*a, ui));
                    }
                }
                x
            })
            .collect();
        Subspace::span(f, self.ambient, &vecs)
    }

    /// Every element, in mixed-radix order of the coefficient tuple.
    pub fn elements(&self, f: &FiniteField) -> Vec<Vector> {
        let q = f.q() as u64;
        let d = self.dim() as u32;
        let total = q.pow(d);
        (0..total)
            .map(|mut idx| {
                let mut x = vec![Fq::ZERO; self.ambient];
                for b in &self.basis {
                    let c = Fq((idx % q) as u32);
                    idx /= q;
                    if !c.is_zero() {
                        for (xi, &bi) in x.iter_mut().zip(b) {
                            *xi = f.add(*xi, f.mul(c, bi));
                        }
                    }
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FiniteField {
        FiniteField::prime(7).unwrap()
    }

    fn v(x: &[u32]) -> Vector {
        x.iter().map(|&a| Fq(a)).collect()
    }

    #[test]
    fn inverse_roundtrip() {
        let f = f7();
        let m = Mat::from_rows(&[v(&[1, 2, 0]), v(&[0, 1, 3]), v(&[4, 0, 1])]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Mat::identity(3));
        let sing = Mat::from_rows(&[v(&[1, 2]), v(&[2, 4])]);
        assert!(sing.inverse(&f).is_err());
    }

    #[test]
    fn nullspace_and_solve() {
        let f = f7();
        let m = Mat::from_rows(&[v(&[1, 1, 0]), v(&[0, 0, 1])]);
        let ns = m.nullspace(&f);
        assert_eq!(ns, vec![v(&[6, 1, 0])]);
        for x in &ns {
            assert!(m.mul_vec(&f, x).iter().all(|c| c.is_zero()));
        }
        let x = m.solve(&f, &v(&[3, 2])).unwrap();
        assert_eq!(m.mul_vec(&f, &x), v(&[3, 2]));
        assert!(Mat::from_rows(&[v(&[1, 1]), v(&[1, 1])]).solve(&f, &v(&[0, 1])).is_none());
    }

    #[test]
    fn lex_least_matches_enumeration() {
        let f = f7();
        let m = Mat::from_rows(&[v(&[1, 2, 3])]);
        let b = v(&[5]);
        let best = (0..7u32)
            .flat_map(|a| (0..7u32).flat_map(move |c| (0..7u32).map(move |d| v(&[a, c, d]))))
            .filter(|x| m.mul_vec(&f, x) == b)
            .min()
            .unwrap();
        assert_eq!(m.lex_least_solution(&f, &b).unwrap(), best);
    }

    #[test]
    fn subspace_ops() {
        let f = f7();
        let a = Subspace::span(&f, 3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(&f, 3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let i = a.intersect(&f, &b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&f, &v(&[0, 3, 0])));
        assert_eq!(a.sum(&f, &b).dim(), 3);
        assert_eq!(a.elements(&f).len(), 49);
    }
}
