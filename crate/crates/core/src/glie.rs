//! ℤ/n-graded Lie algebras over 𝔽_q given by structure constants and a
//! grading-orthogonal invariant form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{FiniteField, Fq};
use crate::linalg::{Mat, Subspace, Vector};

/// Largest piece that may be enumerated point by point.
pub const MAX_PIECE_POINTS: u64 = 1 << 32;

/// A point of the graded piece 𝔤_i, in the fixed basis of that piece.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct PiecePoint {
    pub degree: usize,
    pub coords: Vector,
}

/// A point of 𝔤_i^*, in the basis dual to the fixed basis of 𝔤_i.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct DualPoint {
    pub degree: usize,
    pub coords: Vector,
}

/// Mixed-radix enumeration of 𝔽_q^dim, least significant coordinate first.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PointIndexer {
    q: u64,
    dim: usize,
}

impl PointIndexer {
    pub fn new(q: u32, dim: usize) -> Self {
        PointIndexer { q: q as u64, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// q^dim, saturating.
    pub fn count(&self) -> u64 {
        self.q.saturating_pow(self.dim as u32)
    }

    #[inline]
    pub fn encode(&self, coords: &[Fq]) -> u64 {
        debug_assert_eq!(coords.len(), self.dim);
        coords.iter().rev().fold(0u64, |acc, c| acc * self.q + c.0 as u64)
    }

    #[inline]
    pub fn decode(&self, mut idx: u64) -> Vector {
        (0..self.dim)
            .map(|_| {
                let c = Fq((idx % self.q) as u32);
                idx /= self.q;
                c
            })
            .collect()
    }

    #[inline]
    pub fn decode_into(&self, mut idx: u64, out: &mut [Fq]) {
        for slot in out.iter_mut() {
            *slot = Fq((idx % self.q) as u32);
            idx /= self.q;
        }
    }
}

/// Solves for coordinates of a matrix in the span of a fixed basis.
#[derive(Clone, Debug)]
struct CoordMap {
    /// Flat matrix entries that determine the coordinates.
    entries: Vec<usize>,
    inv: Mat,
}

/// Faithful realisation of the algebra inside gl_size: one matrix per basis
/// vector of every piece.
#[derive(Clone, Debug)]
pub struct MatrixRealisation {
    size: usize,
    basis: Vec<Vec<Mat>>,
    coords: Vec<CoordMap>,
    type_a: bool,
}

impl MatrixRealisation {
    pub fn new(f: &FiniteField, size: usize, basis: Vec<Vec<Mat>>, type_a: bool) -> Result<Self> {
        let mut coords = Vec::with_capacity(basis.len());
        for (deg, mats) in basis.iter().enumerate() {
            for m in mats {
                if m.rows() != size || m.cols() != size {
                    return Err(Error::Algebra(format!("realisation matrix in degree {deg} is not {size}x{size}")));
                }
            }
            // columns = flattened basis matrices
            let cols: Vec<Vector> = mats
                .iter()
                .map(|m| (0..size * size).map(|e| m.get(e / size, e % size)).collect())
                .collect();
            if cols.is_empty() {
                coords.push(CoordMap { entries: Vec::new(), inv: Mat::zeros(0, 0) });
                continue;
            }
            let big = Mat::from_cols(size * size, &cols);
            let (_, pivots) = big.transpose().rref(f);
            if pivots.len() != mats.len() {
                return Err(Error::Algebra(format!("realisation basis in degree {deg} is not linearly independent")));
            }
            let sub = Mat::from_rows(&pivots.iter().map(|&r| big.row(r).to_vec()).collect::<Vec<_>>());
            coords.push(CoordMap { entries: pivots, inv: sub.inverse(f)? });
        }
        Ok(MatrixRealisation { size, basis, coords, type_a })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_type_a(&self) -> bool {
        self.type_a
    }

    pub fn basis(&self, degree: usize) -> &[Mat] {
        &self.basis[degree]
    }

    pub fn to_matrix(&self, f: &FiniteField, degree: usize, coords: &[Fq]) -> Mat {
        let mut m = Mat::zeros(self.size, self.size);
        for (&c, b) in coords.iter().zip(&self.basis[degree]) {
            if !c.is_zero() {
                m = m.add(f, &b.scale(f, c));
            }
        }
        m
    }

    /// Coordinates of `m` in degree `degree`, or `None` if `m` is not in
    /// the image of that piece.
    pub fn from_matrix(&self, f: &FiniteField, degree: usize, m: &Mat) -> Option<Vector> {
        let cm = &self.coords[degree];
        let rhs: Vector = cm.entries.iter().map(|&e| m.get(e / self.size, e % self.size)).collect();
        let c = if rhs.is_empty() { Vec::new() } else { cm.inv.mul_vec(f, &rhs) };
        (self.to_matrix(f, degree, &c) == *m).then_some(c)
    }
}

/// 𝔤 = ⊕_{i ∈ ℤ/n} 𝔤_i with bracket and invariant form.
#[derive(Clone, Debug)]
pub struct GradedLieAlgebra {
    label: String,
    field: FiniteField,
    modulus: usize,
    dims: Vec<usize>,
    /// bracket[i][j][(a * N_j + b) * N_{i+j} + c]
    bracket: Vec<Vec<Vec<Fq>>>,
    /// gram[i][a][b] = B(b_a^{(i)}, b_b^{(-i)})
    gram: Vec<Mat>,
    gram_inv: Vec<Mat>,
    realisation: Option<MatrixRealisation>,
}

impl GradedLieAlgebra {
    /// Assembles and validates an algebra: antisymmetry, Jacobi, symmetry,
    /// non-degeneracy and invariance of the form are all checked on basis
    /// tuples.
    pub fn new(
        label: impl Into<String>,
        field: FiniteField,
        dims: Vec<usize>,
        bracket: Vec<Vec<Vec<Fq>>>,
        gram: Vec<Mat>,
        realisation: Option<MatrixRealisation>,
    ) -> Result<Self> {
        let n = dims.len();
        if n == 0 {
            return Err(Error::Algebra("grading modulus must be at least 1".into()));
        }
        if bracket.len() != n || bracket.iter().any(|row| row.len() != n) {
            return Err(Error::Algebra("bracket table must have one entry per degree pair".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let want = dims[i] * dims[j] * dims[(i + j) % n];
                if bracket[i][j].len() != want {
                    return Err(Error::Algebra(format!("bracket table ({i},{j}) has wrong size")));
                }
                if bracket[i][j].iter().any(|&c| !field.contains(c)) {
                    return Err(Error::Algebra(format!("bracket table ({i},{j}) has a non-field entry")));
                }
            }
        }
        if gram.len() != n {
            return Err(Error::Algebra("one Gram matrix per degree required".into()));
        }
        let mut gram_inv = Vec::with_capacity(n);
        for i in 0..n {
            let neg = (n - i) % n;
            if gram[i].rows() != dims[i] || gram[i].cols() != dims[neg] {
                return Err(Error::Algebra(format!("Gram matrix for degree {i} has wrong shape")));
            }
            gram_inv.push(if dims[i] == 0 {
                Mat::zeros(0, 0)
            } else {
                gram[i]
                    .inverse(&field)
                    .map_err(|_| Error::Algebra(format!("form is degenerate between degrees {i} and {neg}")))?
            });
        }
        if let Some(r) = &realisation {
            if r.basis.len() != n || r.basis.iter().zip(&dims).any(|(b, &d)| b.len() != d) {
                return Err(Error::Algebra("realisation does not match piece dimensions".into()));
            }
        }
        let alg = GradedLieAlgebra {
            label: label.into(),
            field,
            modulus: n,
            dims,
            bracket,
            gram,
            gram_inv,
            realisation,
        };
        alg.validate()?;
        Ok(alg)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn grading_modulus(&self) -> usize {
        self.modulus
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims[degree]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn neg_degree(&self, i: usize) -> usize {
        (self.modulus - i % self.modulus) % self.modulus
    }

    pub fn add_degree(&self, i: usize, j: usize) -> usize {
        (i + j) % self.modulus
    }

    pub fn realisation(&self) -> Option<&MatrixRealisation> {
        self.realisation.as_ref()
    }

    pub fn gram(&self, degree: usize) -> &Mat {
        &self.gram[degree]
    }

    pub fn check_degree(&self, degree: usize) -> Result<()> {
        if degree >= self.modulus {
            return Err(Error::Mismatch(format!("degree {degree} out of range for ℤ/{}", self.modulus)));
        }
        Ok(())
    }

    pub fn indexer(&self, degree: usize) -> PointIndexer {
        PointIndexer::new(self.field.q(), self.dims[degree])
    }

    /// Number of points of 𝔤_i^Fr, refusing pieces too large to enumerate.
    pub fn piece_size(&self, degree: usize) -> Result<u64> {
        let q = self.field.q() as u128;
        let n = q.pow(self.dims[degree] as u32);
        if n > MAX_PIECE_POINTS as u128 {
            return Err(Error::PieceTooLarge(format!("piece {degree} has {n} points (> 2^32)")));
        }
        Ok(n as u64)
    }

    pub fn zero_point(&self, degree: usize) -> PiecePoint {
        PiecePoint { degree, coords: vec![Fq::ZERO; self.dims[degree]] }
    }

    pub fn point(&self, degree: usize, index: u64) -> PiecePoint {
        PiecePoint { degree, coords: self.indexer(degree).decode(index) }
    }

    pub fn index_of(&self, x: &PiecePoint) -> u64 {
        self.indexer(x.degree).encode(&x.coords)
    }

    pub fn dual_point(&self, degree: usize, index: u64) -> DualPoint {
        DualPoint { degree, coords: self.indexer(degree).decode(index) }
    }

    pub fn dual_index_of(&self, a: &DualPoint) -> u64 {
        self.indexer(a.degree).encode(&a.coords)
    }

    pub fn basis_vector(&self, degree: usize, a: usize) -> PiecePoint {
        let mut coords = vec![Fq::ZERO; self.dims[degree]];
        coords[a] = Fq::ONE;
        PiecePoint { degree, coords }
    }

    /// Coordinates of [x, y] for x ∈ 𝔤_i, y ∈ 𝔤_j.
    pub fn bracket_coords(&self, i: usize, x: &[Fq], j: usize, y: &[Fq]) -> Vector {
        let f = &self.field;
        let (nj, nk) = (self.dims[j], self.dims[(i + j) % self.modulus]);
        let table = &self.bracket[i][j];
        let mut out = vec![Fq::ZERO; nk];
        for (a, &xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let s = f.mul(xa, yb);
                let base = (a * nj + b) * nk;
                for (c, o) in out.iter_mut().enumerate() {
                    let t = table[base + c];
                    if !t.is_zero() {
                        *o = f.add(*o, f.mul(s, t));
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &PiecePoint, y: &PiecePoint) -> Result<PiecePoint> {
        if x.coords.len() != self.dims[x.degree] || y.coords.len() != self.dims[y.degree] {
            return Err(Error::Mismatch("point does not belong to this algebra".into()));
        }
        Ok(PiecePoint {
            degree: self.add_degree(x.degree, y.degree),
            coords: self.bracket_coords(x.degree, &x.coords, y.degree, &y.coords),
        })
    }

    /// Matrix of ad(x): 𝔤_j → 𝔤_{i+j} for x ∈ 𝔤_i.
    pub fn ad_matrix(&self, x: &PiecePoint, j: usize) -> Mat {
        let cols: Vec<Vector> = (0..self.dims[j])
            .map(|b| self.bracket_coords(x.degree, &x.coords, j, &self.basis_vector(j, b).coords))
            .collect();
        Mat::from_cols(self.dims[self.add_degree(x.degree, j)], &cols)
    }

    /// B(x, y); zero unless the degrees are opposite.
    pub fn form(&self, x: &PiecePoint, y: &PiecePoint) -> Fq {
        if self.add_degree(x.degree, y.degree) != 0 {
            return Fq::ZERO;
        }
        let f = &self.field;
        let g = &self.gram[x.degree];
        let mut acc = Fq::ZERO;
        for (a, &xa) in x.coords.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, &yb) in y.coords.iter().enumerate() {
                acc = f.add(acc, f.mul(f.mul(xa, yb), g.get(a, b)));
            }
        }
        acc
    }

    /// ⟨α, v⟩ for α ∈ 𝔤_i^*, v ∈ 𝔤_i.
    pub fn pair(&self, alpha: &DualPoint, v: &PiecePoint) -> Fq {
        let f = &self.field;
        alpha.coords.iter().zip(&v.coords).fold(Fq::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    /// η_B: 𝔤_i^* → 𝔤_{-i}, characterised by B(η_B(α), v) = α(v).
    pub fn eta_b(&self, alpha: &DualPoint) -> PiecePoint {
        let i = alpha.degree;
        PiecePoint { degree: self.neg_degree(i), coords: self.gram_inv[i].mul_vec(&self.field, &alpha.coords) }
    }

    /// Inverse of η_B: 𝔤_{-i} → 𝔤_i^*.
    pub fn eta_b_inv(&self, y: &PiecePoint) -> DualPoint {
        let i = self.neg_degree(y.degree);
        DualPoint { degree: i, coords: self.gram[i].mul_vec(&self.field, &y.coords) }
    }

    pub fn to_matrix(&self, x: &PiecePoint) -> Result<Mat> {
        let r = self.realisation.as_ref().ok_or(Error::NoNilpotencyOracle)?;
        Ok(r.to_matrix(&self.field, x.degree, &x.coords))
    }

    pub fn from_matrix(&self, degree: usize, m: &Mat) -> Result<Option<PiecePoint>> {
        let r = self.realisation.as_ref().ok_or(Error::NoNilpotencyOracle)?;
        Ok(r.from_matrix(&self.field, degree, m).map(|coords| PiecePoint { degree, coords }))
    }

    /// Nilpotency in the defining representation of the realisation.
    pub fn is_nilpotent(&self, x: &PiecePoint) -> Result<bool> {
        let m = self.to_matrix(x)?;
        Ok(m.pow(&self.field, m.rows() as u64).is_zero())
    }

    pub fn piece_subspace_full(&self, degree: usize) -> Subspace {
        Subspace::full(self.dims[degree])
    }

    /// Re-runs the structural checks performed by `new`.
    pub fn validate(&self) -> Result<()> {
        let n = self.modulus;
        let f = &self.field;
        let basis = |d: usize| -> Vec<PiecePoint> { (0..self.dims[d]).map(|a| self.basis_vector(d, a)).collect() };
        // antisymmetry
        for i in 0..n {
            for j in 0..n {
                for x in basis(i) {
                    for y in basis(j) {
                        let a = self.bracket(&x, &y)?;
                        let b = self.bracket(&y, &x)?;
                        if a.coords.iter().zip(&b.coords).any(|(&u, &v)| f.add(u, v) != Fq::ZERO) {
                            return Err(Error::Algebra(format!(
                                "antisymmetry fails on basis pair ({i}:{:?}, {j}:{:?})",
                                x.coords, y.coords
                            )));
                        }
                    }
                }
            }
        }
        // Jacobi
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for x in basis(i) {
                        for y in basis(j) {
                            for z in basis(k) {
                                let t1 = self.bracket(&x, &self.bracket(&y, &z)?)?;
                                let t2 = self.bracket(&y, &self.bracket(&z, &x)?)?;
                                let t3 = self.bracket(&z, &self.bracket(&x, &y)?)?;
                                let ok = (0..t1.coords.len())
                                    .all(|c| f.add(f.add(t1.coords[c], t2.coords[c]), t3.coords[c]).is_zero());
                                if !ok {
                                    return Err(Error::Algebra(format!("Jacobi identity fails in degrees ({i},{j},{k})")));
                                }
                            }
                        }
                    }
                }
            }
        }
        // symmetry of B across the pairing 𝔤_i × 𝔤_{-i}
        for i in 0..n {
            let ni = self.neg_degree(i);
            for a in 0..self.dims[i] {
                for b in 0..self.dims[ni] {
                    if self.gram[i].get(a, b) != self.gram[ni].get(b, a) {
                        return Err(Error::Algebra(format!("form is not symmetric between degrees {i} and {ni}")));
                    }
                }
            }
        }
        // invariance B([z,x],y) + B(x,[z,y]) = 0
        for s in 0..n {
            for i in 0..n {
                let j = self.neg_degree(self.add_degree(i, s));
                for z in basis(s) {
                    for x in basis(i) {
                        let zx = self.bracket(&z, &x)?;
                        for y in basis(j) {
                            let zy = self.bracket(&z, &y)?;
                            if !f.add(self.form(&zx, &y), self.form(&x, &zy)).is_zero() {
                                return Err(Error::Algebra(format!("form is not invariant in degrees ({s},{i},{j})")));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that the realisation intertwines the bracket with the matrix
    /// commutator on all basis pairs.
    pub fn check_realisation(&self) -> Result<()> {
        let r = self.realisation.as_ref().ok_or(Error::NoNilpotencyOracle)?;
        let f = &self.field;
        for i in 0..self.modulus {
            for j in 0..self.modulus {
                for a in 0..self.dims[i] {
                    for b in 0..self.dims[j] {
                        let x = self.basis_vector(i, a);
                        let y = self.basis_vector(j, b);
                        let lhs = self.to_matrix(&self.bracket(&x, &y)?)?;
                        let rhs = r.basis[i][a].commutator(f, &r.basis[j][b]);
                        if lhs != rhs {
                            return Err(Error::Algebra(format!(
                                "bracket disagrees with matrix commutator on basis pair ({i}:{a}, {j}:{b})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_file(&self) -> AlgebraFile {
        let n = self.modulus;
        let mut bracket = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let (nj, nk) = (self.dims[j], self.dims[(i + j) % n]);
                for a in 0..self.dims[i] {
                    for b in 0..nj {
                        let base = (a * nj + b) * nk;
                        let coeffs: Vec<u32> = self.bracket[i][j][base..base + nk].iter().map(|c| c.0).collect();
                        if coeffs.iter().any(|&c| c != 0) {
                            bracket.push(BracketEntry(i, j, a, b, coeffs));
                        }
                    }
                }
            }
        }
        let to_u32 = |m: &Mat| -> Vec<Vec<u32>> { m.to_rows().into_iter().map(|r| r.into_iter().map(|c| c.0).collect()).collect() };
        AlgebraFile {
            label: self.label.clone(),
            p: self.field.p(),
            k: self.field.k(),
            modulus: Some(self.field.modulus().to_vec()),
            n,
            dims: (0..n).map(|i| (i, self.dims[i])).collect(),
            bracket,
            form: (0..n).map(|i| (i, to_u32(&self.gram[i]))).collect(),
            realisation: self.realisation.as_ref().map(|r| RealisationFile {
                size: r.size,
                type_a: r.type_a,
                basis: (0..n).map(|i| (i, r.basis[i].iter().map(to_u32).collect())).collect(),
            }),
        }
    }

    pub fn from_file(file: &AlgebraFile) -> Result<Self> {
        let field = FiniteField::new(file.p, file.k, file.modulus.clone())?;
        let n = file.n;
        if n == 0 {
            return Err(Error::Algebra("grading modulus must be at least 1".into()));
        }
        let dims: Vec<usize> = (0..n).map(|i| file.dims.get(&i).copied().unwrap_or(0)).collect();
        if file.dims.keys().any(|&k| k >= n) {
            return Err(Error::Algebra("dims mention a degree outside ℤ/n".into()));
        }
        let mut bracket: Vec<Vec<Vec<Fq>>> = (0..n)
            .map(|i| (0..n).map(|j| vec![Fq::ZERO; dims[i] * dims[j] * dims[(i + j) % n]]).collect())
            .collect();
        for BracketEntry(i, j, a, b, coeffs) in &file.bracket {
            let (i, j, a, b) = (*i, *j, *a, *b);
            if i >= n || j >= n || a >= dims[i] || b >= dims[j] {
                return Err(Error::Algebra(format!("bracket entry ({i},{j},{a},{b}) out of range")));
            }
            let nk = dims[(i + j) % n];
            if coeffs.len() != nk {
                return Err(Error::Algebra(format!("bracket entry ({i},{j},{a},{b}) has {} coefficients, expected {nk}", coeffs.len())));
            }
            let base = (a * dims[j] + b) * nk;
            for (c, &v) in coeffs.iter().enumerate() {
                bracket[i][j][base + c] = Fq(v);
            }
        }
        let to_mat = |rows: &Vec<Vec<u32>>, r: usize, c: usize| -> Result<Mat> {
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(Error::Algebra("matrix has wrong shape".into()));
            }
            if r == 0 {
                return Ok(Mat::zeros(0, c));
            }
            Ok(Mat::from_rows(&rows.iter().map(|row| row.iter().map(|&x| Fq(x)).collect()).collect::<Vec<_>>()))
        };
        let mut gram = Vec::with_capacity(n);
        for i in 0..n {
            let ni = (n - i) % n;
            let rows = file.form.get(&i).cloned().unwrap_or_default();
            gram.push(to_mat(&rows, dims[i], dims[ni])?);
        }
        let realisation = match &file.realisation {
            None => None,
            Some(rf) => {
                let mut basis = Vec::with_capacity(n);
                for i in 0..n {
                    let mats = rf.basis.get(&i).cloned().unwrap_or_default();
                    basis.push(mats.iter().map(|m| to_mat(m, rf.size, rf.size)).collect::<Result<Vec<_>>>()?);
                }
                Some(MatrixRealisation::new(&field, rf.size, basis, rf.type_a)?)
            }
        };
        GradedLieAlgebra::new(file.label.clone(), field, dims, bracket, gram, realisation)
    }
}

/// `[i, j, a, b, coeffs]`: [b_a^{(i)}, b_b^{(j)}] = Σ coeffs_c b_c^{(i+j)}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry(pub usize, pub usize, pub usize, pub usize, pub Vec<u32>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealisationFile {
    pub size: usize,
    #[serde(rename = "typeA", default)]
    pub type_a: bool,
    pub basis: BTreeMap<usize, Vec<Vec<Vec<u32>>>>,
}

/// On-disk algebra description. Field elements are mixed-radix indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default)]
    pub label: String,
    pub p: u32,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    pub n: usize,
    pub dims: BTreeMap<usize, usize>,
    pub bracket: Vec<BracketEntry>,
    pub form: BTreeMap<usize, Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realisation: Option<RealisationFile>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build, BuilderSpec, Family};

    fn sl2(q: u32) -> GradedLieAlgebra {
        build(&BuilderSpec::ungraded(Family::Sl, 2, q)).unwrap().algebra
    }

    fn pt(d: usize, c: &[u32]) -> PiecePoint {
        PiecePoint { degree: d, coords: c.iter().map(|&x| Fq(x)).collect() }
    }

    #[test]
    fn sl2_relations() {
        let g = sl2(5);
        // basis order e, h, f
        let (e, h, f) = (pt(0, &[1, 0, 0]), pt(0, &[0, 1, 0]), pt(0, &[0, 0, 1]));
        assert_eq!(g.bracket(&e, &f).unwrap(), h);
        assert_eq!(g.bracket(&h, &e).unwrap(), pt(0, &[2, 0, 0]));
        assert_eq!(g.bracket(&h, &f).unwrap(), pt(0, &[0, 0, 3]));
        let x = pt(0, &[3, 1, 4]);
        assert_eq!(g.bracket(&x, &x).unwrap(), g.zero_point(0));
    }

    #[test]
    fn graded_gl2_commutator() {
        let w = build(&BuilderSpec::graded(Family::Gl, 2, 5, vec![0, 1], 2)).unwrap();
        let g = &w.algebra;
        // degree 1 basis [E12, E21]; degree 0 basis [E11, E22]
        let e12 = pt(1, &[1, 0]);
        let e21 = pt(1, &[0, 1]);
        assert_eq!(g.bracket(&e12, &e21).unwrap(), pt(0, &[1, 4]));
    }

    #[test]
    fn eta_b_examples() {
        let g = sl2(5);
        let zero = DualPoint { degree: 0, coords: vec![Fq::ZERO; 3] };
        assert_eq!(g.eta_b(&zero), g.zero_point(0));
        // dual of the e-coordinate is f under the trace form
        let alpha_e = DualPoint { degree: 0, coords: vec![Fq(1), Fq(0), Fq(0)] };
        assert_eq!(g.eta_b(&alpha_e), pt(0, &[0, 0, 1]));
        let gl3 = build(&BuilderSpec::ungraded(Family::Gl, 3, 3)).unwrap().algebra;
        let r = gl3.realisation().unwrap();
        let f = gl3.field().clone();
        for a in 0..9 {
            let mut coords = vec![Fq::ZERO; 9];
            coords[a] = Fq::ONE;
            let m = gl3.to_matrix(&gl3.eta_b(&DualPoint { degree: 0, coords })).unwrap();
            let b = &r.basis(0)[a];
            // E_jk ↦ E_kj
            assert_eq!(m, b.transpose());
            let _ = &f;
        }
    }

    #[test]
    fn eta_b_pairing_and_roundtrip() {
        let g = sl2(7);
        let idx = g.indexer(0);
        for ai in 0..idx.count() {
            let alpha = g.dual_point(0, ai);
            let y = g.eta_b(&alpha);
            assert_eq!(g.eta_b_inv(&y), alpha);
            for vi in (0..idx.count()).step_by(17) {
                let v = g.point(0, vi);
                assert_eq!(g.form(&y, &v), g.pair(&alpha, &v));
            }
        }
    }

    #[test]
    fn nilpotency_oracle() {
        let gl2 = build(&BuilderSpec::ungraded(Family::Gl, 2, 5)).unwrap().algebra;
        // basis [E12, E11, E22, E21]
        assert!(gl2.is_nilpotent(&gl2.zero_point(0)).unwrap());
        assert!(gl2.is_nilpotent(&pt(0, &[1, 0, 0, 0])).unwrap());
        assert!(!gl2.is_nilpotent(&pt(0, &[0, 1, 1, 0])).unwrap());
        let z2 = build(&BuilderSpec::graded(Family::Gl, 2, 5, vec![0, 1], 2)).unwrap().algebra;
        assert!(!z2.is_nilpotent(&pt(1, &[1, 1])).unwrap());
        let bare = GradedLieAlgebra::from_file(&{
            let mut file = g_file();
            file.realisation = None;
            file
        })
        .unwrap();
        assert!(matches!(bare.is_nilpotent(&bare.zero_point(0)), Err(Error::NoNilpotencyOracle)));
    }

    fn g_file() -> AlgebraFile {
        sl2(5).to_file()
    }

    #[test]
    fn file_roundtrip() {
        let g = sl2(5);
        let file = g.to_file();
        let json = serde_json::to_string(&file).unwrap();
        let back: AlgebraFile = serde_json::from_str(&json).unwrap();
        let g2 = GradedLieAlgebra::from_file(&back).unwrap();
        assert_eq!(g2.to_file(), file);
    }

    #[test]
    fn broken_jacobi_rejected() {
        let mut file = g_file();
        // perturb [e, f] = h to [e, f] = 2h (and [f, e] = -2h): breaks invariance
        for entry in file.bracket.iter_mut() {
            if (entry.2, entry.3) == (0, 2) {
                entry.4 = vec![0, 2, 0];
            }
            if (entry.2, entry.3) == (2, 0) {
                entry.4 = vec![0, 3, 0];
            }
        }
        assert!(GradedLieAlgebra::from_file(&file).is_err());
        let mut asym = g_file();
        asym.bracket.retain(|e| (e.2, e.3) != (2, 0));
        assert!(GradedLieAlgebra::from_file(&asym).is_err());
    }
}
