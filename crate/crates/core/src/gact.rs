//! Explicit finite groups acting on the graded pieces, and their adjoint and
//! coadjoint orbits.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{FiniteField, Fq};
use crate::glie::GradedLieAlgebra;
use crate::linalg::Mat;

pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// Whether a point lives in 𝔤_i (adjoint action) or 𝔤_i^* (coadjoint).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Primal,
    Dual,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Primal => Side::Dual,
            Side::Dual => Side::Primal,
        }
    }
}

/// A group element: its matrix on every graded piece, and optionally the
/// defining matrix it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub degrees: Vec<Mat>,
    pub defining: Option<Mat>,
}

impl GroupElement {
    pub fn identity(alg: &GradedLieAlgebra) -> Self {
        GroupElement {
            degrees: alg.dims().iter().map(|&d| Mat::identity(d)).collect(),
            defining: alg.realisation().map(|r| Mat::identity(r.size())),
        }
    }

    /// Ad(D) restricted to every piece, for D in the defining representation.
    pub fn from_defining(alg: &GradedLieAlgebra, d: Mat) -> Result<Self> {
        let f = alg.field();
        let r = alg.realisation().ok_or(Error::NoNilpotencyOracle)?;
        if d.rows() != r.size() || d.cols() != r.size() {
            return Err(Error::Group("defining matrix has the wrong size".into()));
        }
        let dinv = d.inverse(f).map_err(|_| Error::Group("defining matrix is not invertible".into()))?;
        let mut degrees = Vec::with_capacity(alg.grading_modulus());
        for deg in 0..alg.grading_modulus() {
            let cols = r
                .basis(deg)
                .iter()
                .map(|b| {
                    let img = d.mul(f, b).mul(f, &dinv);
                    r.from_matrix(f, deg, &img)
                        .ok_or_else(|| Error::Group(format!("defining matrix does not preserve degree {deg}")))
                })
                .collect::<Result<Vec<_>>>()?;
            degrees.push(Mat::from_cols(alg.dim(deg), &cols));
        }
        Ok(GroupElement { degrees, defining: Some(d) })
    }

    pub fn compose(&self, f: &FiniteField, other: &GroupElement) -> GroupElement {
        GroupElement {
            degrees: self.degrees.iter().zip(&other.degrees).map(|(a, b)| a.mul(f, b)).collect(),
            defining: match (&self.defining, &other.defining) {
                (Some(a), Some(b)) => Some(a.mul(f, b)),
                _ => None,
            },
        }
    }

    /// Identity key: the defining matrix if present, else the piece matrices.
    pub fn key(&self) -> Vec<u32> {
        match &self.defining {
            Some(d) => d.to_rows().into_iter().flatten().map(|c| c.0).collect(),
            None => self.degrees.iter().flat_map(|m| m.to_rows().into_iter().flatten().map(|c| c.0)).collect(),
        }
    }
}

/// G^Fr as an explicit closed element list.
#[derive(Clone, Debug)]
pub struct FiniteGroupAction {
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
    cap: usize,
}

/// An adjoint or coadjoint orbit; `rep` is its least point index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Orbit {
    pub degree: usize,
    pub side: Side,
    pub rep: u64,
    pub points: Vec<u64>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, idx: u64) -> bool {
        self.points.binary_search(&idx).is_ok()
    }
}

/// Checks that `g` preserves brackets and the form on basis pairs.
pub fn check_automorphism(alg: &GradedLieAlgebra, g: &GroupElement) -> Result<()> {
    let f = alg.field();
    let n = alg.grading_modulus();
    if g.degrees.len() != n || g.degrees.iter().enumerate().any(|(i, m)| m.rows() != alg.dim(i) || m.cols() != alg.dim(i)) {
        return Err(Error::Group("group element does not match piece dimensions".into()));
    }
    for (i, m) in g.degrees.iter().enumerate() {
        if alg.dim(i) > 0 && !m.is_invertible(f) {
            return Err(Error::Group(format!("group element is singular on degree {i}")));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let k = alg.add_degree(i, j);
            for a in 0..alg.dim(i) {
                for b in 0..alg.dim(j) {
                    let x = alg.basis_vector(i, a);
                    let y = alg.basis_vector(j, b);
                    let gx = g.degrees[i].col(a);
                    let gy = g.degrees[j].col(b);
                    let lhs = g.degrees[k].mul_vec(f, &alg.bracket_coords(i, &x.coords, j, &y.coords));
                    if lhs != alg.bracket_coords(i, &gx, j, &gy) {
                        return Err(Error::Group(format!("group element is not a Lie automorphism on degrees ({i},{j})")));
                    }
                    if k == 0 {
                        let gxp = crate::glie::PiecePoint { degree: i, coords: gx };
                        let gyp = crate::glie::PiecePoint { degree: j, coords: gy };
                        if alg.form(&gxp, &gyp) != alg.form(&x, &y) {
                            return Err(Error::Group(format!("group element does not preserve the form on degrees ({i},{j})")));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

impl FiniteGroupAction {
    /// Breadth-first closure of the generators under left multiplication.
    /// Element order is discovery order from the identity with generators
    /// sorted by key.
    pub fn close(alg: &GradedLieAlgebra, mut generators: Vec<GroupElement>, cap: usize) -> Result<Self> {
        let f = alg.field();
        for g in &generators {
            check_automorphism(alg, g)?;
        }
        let mut id = GroupElement::identity(alg);
        if generators.iter().any(|g| g.defining.is_none()) {
            id.defining = None;
            for g in generators.iter_mut() {
                g.defining = None;
            }
        }
        generators.sort_by_key(|g| g.key());
        generators.dedup_by(|a, b| a.key() == b.key());
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        seen.insert(id.key());
        let mut elements = vec![id];
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            for s in &generators {
                let prod = s.compose(f, &elements[idx]);
                if seen.insert(prod.key()) {
                    if elements.len() >= cap {
                        return Err(Error::GroupTooLarge { cap, count: elements.len() + 1 });
                    }
                    elements.push(prod);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        Ok(FiniteGroupAction { generators, elements, cap })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn to_file(&self) -> GeneratorFile {
        let rows = |m: &Mat| -> Vec<Vec<u32>> { m.to_rows().into_iter().map(|r| r.into_iter().map(|c| c.0).collect()).collect() };
        GeneratorFile {
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorEntry {
                    degrees: g.degrees.iter().enumerate().map(|(i, m)| (i, rows(m))).collect(),
                    defining: g.defining.as_ref().map(rows),
                })
                .collect(),
        }
    }

    pub fn from_file(alg: &GradedLieAlgebra, file: &GeneratorFile, cap: usize) -> Result<Self> {
        let to_mat = |rows: &Vec<Vec<u32>>, n: usize| -> Result<Mat> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::Group("generator matrix has the wrong shape".into()));
            }
            if n == 0 {
                return Ok(Mat::zeros(0, 0));
            }
            Ok(Mat::from_rows(&rows.iter().map(|r| r.iter().map(|&x| Fq(x)).collect()).collect::<Vec<_>>()))
        };
        let mut gens = Vec::with_capacity(file.generators.len());
        for entry in &file.generators {
            let g = match (&entry.defining, alg.realisation()) {
                (Some(d), Some(r)) => GroupElement::from_defining(alg, to_mat(d, r.size())?)?,
                _ => {
                    let degrees = (0..alg.grading_modulus())
                        .map(|i| match entry.degrees.get(&i) {
                            Some(m) => to_mat(m, alg.dim(i)),
                            None => Ok(Mat::identity(alg.dim(i))),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    GroupElement { degrees, defining: None }
                }
            };
            gens.push(g);
        }
        FiniteGroupAction::close(alg, gens, cap)
    }
}

/// Matrix by which `g` acts on the coordinates of the given side of degree i.
/// On 𝔤_i^* this is the contragredient, transported through η_B.
pub fn action_matrix(alg: &GradedLieAlgebra, g: &GroupElement, degree: usize, side: Side) -> Mat {
    match side {
        Side::Primal => g.degrees[degree].clone(),
        Side::Dual => {
            let f = alg.field();
            let neg = alg.neg_degree(degree);
            let gram = alg.gram(degree);
            let gram_inv = gram.inverse(f).expect("form is non-degenerate");
            gram.mul(f, &g.degrees[neg]).mul(f, &gram_inv)
        }
    }
}

/// Action matrices of every group element on one side of one piece, in a
/// flat layout suited to tight loops.
#[derive(Clone, Debug)]
pub struct PieceAction {
    pub degree: usize,
    pub side: Side,
    pub dim: usize,
    /// mats[g * dim * dim + r * dim + c]
    mats: Vec<Fq>,
    count: usize,
}

impl PieceAction {
    pub fn new(alg: &GradedLieAlgebra, elems: &[GroupElement], degree: usize, side: Side) -> Self {
        let dim = alg.dim(degree);
        let mut mats = Vec::with_capacity(elems.len() * dim * dim);
        for g in elems {
            let m = action_matrix(alg, g, degree, side);
            for r in 0..dim {
                mats.extend_from_slice(m.row(r));
            }
        }
        PieceAction { degree, side, dim, mats, count: elems.len() }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    #[inline]
    pub fn apply(&self, f: &FiniteField, g: usize, v: &[Fq], out: &mut [Fq]) {
        let d = self.dim;
        let m = &self.mats[g * d * d..(g + 1) * d * d];
        for r in 0..d {
            let row = &m[r * d..(r + 1) * d];
            let mut acc = Fq::ZERO;
            for (a, &b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc = f.add(acc, f.mul(*a, b));
                }
            }
            out[r] = acc;
        }
    }
}

/// Orbit of a single point, by breadth-first search over generators.
pub fn orbit_of(alg: &GradedLieAlgebra, group: &FiniteGroupAction, degree: usize, side: Side, index: u64) -> Result<Orbit> {
    alg.check_degree(degree)?;
    let size = alg.piece_size(degree)?;
    if index >= size {
        return Err(Error::Mismatch(format!("point index {index} out of range for degree {degree}")));
    }
    let act = PieceAction::new(alg, group.generators(), degree, side);
    let mut seen = HashSet::new();
    Ok(bfs(alg, &act, degree, side, index, |i| seen.insert(i)))
}

fn bfs(
    alg: &GradedLieAlgebra,
    act: &PieceAction,
    degree: usize,
    side: Side,
    start: u64,
    mut visit: impl FnMut(u64) -> bool,
) -> Orbit {
    let f = alg.field();
    let idx = alg.indexer(degree);
    let mut v = vec![Fq::ZERO; act.dim];
    let mut w = vec![Fq::ZERO; act.dim];
    visit(start);
    let mut points = vec![start];
    let mut head = 0;
    while head < points.len() {
        idx.decode_into(points[head], &mut v);
        head += 1;
        for g in 0..act.len() {
            act.apply(f, g, &v, &mut w);
            let j = idx.encode(&w);
            if visit(j) {
                points.push(j);
            }
        }
    }
    points.sort_unstable();
    Orbit { degree, side, rep: points[0], points }
}

/// The orbit partition of a whole piece, sorted by representative.
pub fn orbits(alg: &GradedLieAlgebra, group: &FiniteGroupAction, degree: usize, side: Side) -> Result<Vec<Orbit>> {
    alg.check_degree(degree)?;
    let size = alg.piece_size(degree)?;
    let act = PieceAction::new(alg, group.generators(), degree, side);
    let mut visited = vec![false; size as usize];
    let mut out = Vec::new();
    for start in 0..size {
        if visited[start as usize] {
            continue;
        }
        out.push(bfs(alg, &act, degree, side, start, |i| !std::mem::replace(&mut visited[i as usize], true)));
    }
    Ok(out)
}

/// Nilpotency of a point on either side; dual points are tested via η_B.
pub fn is_nilpotent_point(alg: &GradedLieAlgebra, degree: usize, side: Side, index: u64) -> Result<bool> {
    match side {
        Side::Primal => alg.is_nilpotent(&alg.point(degree, index)),
        Side::Dual => alg.is_nilpotent(&alg.eta_b(&alg.dual_point(degree, index))),
    }
}

/// Orbits contained in the nilpotent cone of the piece.
pub fn nilpotent_orbits(alg: &GradedLieAlgebra, group: &FiniteGroupAction, degree: usize, side: Side) -> Result<Vec<Orbit>> {
    let all = orbits(alg, group, degree, side)?;
    let mut out = Vec::new();
    for o in all {
        if is_nilpotent_point(alg, degree, side, o.rep)? {
            out.push(o);
        }
    }
    Ok(out)
}

/// Map from point index to the position of its orbit in `orbits`.
pub fn orbit_lookup(orbits: &[Orbit], size: u64) -> Vec<u32> {
    let mut table = vec![u32::MAX; size as usize];
    for (k, o) in orbits.iter().enumerate() {
        for &p in &o.points {
            table[p as usize] = k as u32;
        }
    }
    table
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    #[serde(default)]
    pub degrees: BTreeMap<usize, Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defining: Option<Vec<Vec<u32>>>,
}

/// On-disk list of generators: per-degree matrices and/or a defining matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub generators: Vec<GeneratorEntry>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build, builtin, BuilderSpec, Family};

    fn sizes(orbits: &[Orbit]) -> Vec<usize> {
        let mut s: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
        s.sort();
        s
    }

    #[test]
    fn group_orders() {
        assert_eq!(build(&BuilderSpec::ungraded(Family::Sl, 2, 5)).unwrap().group.order(), 120);
        assert_eq!(build(&BuilderSpec::ungraded(Family::Gl, 2, 5)).unwrap().group.order(), 480);
        assert_eq!(build(&BuilderSpec::ungraded(Family::Sl, 2, 3)).unwrap().group.order(), 24);
        assert_eq!(builtin("gl2-z2", 5).unwrap().group.order(), 16);
    }

    #[test]
    fn trivial_group() {
        let w = builtin("sl2", 5).unwrap();
        let g = FiniteGroupAction::close(&w.algebra, vec![GroupElement::identity(&w.algebra)], 10).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let w = builtin("gl2", 5).unwrap();
        let err = FiniteGroupAction::close(&w.algebra, w.group.generators().to_vec(), 100).unwrap_err();
        assert!(matches!(err, Error::GroupTooLarge { cap: 100, .. }));
        assert!(err.to_string().contains("group too large"));
    }

    #[test]
    fn closure_is_a_group() {
        let w = builtin("sl2", 3).unwrap();
        let f = w.algebra.field();
        let keys: HashSet<Vec<u32>> = w.group.elements().iter().map(|g| g.key()).collect();
        for a in w.group.elements() {
            for b in w.group.elements() {
                assert!(keys.contains(&a.compose(f, b).key()));
            }
        }
    }

    #[test]
    fn nilpotent_orbit_sizes() {
        let w3 = builtin("sl2", 3).unwrap();
        assert_eq!(sizes(&nilpotent_orbits(&w3.algebra, &w3.group, 0, Side::Primal).unwrap()), vec![1, 4, 4]);
        let w5 = builtin("sl2", 5).unwrap();
        let nil = nilpotent_orbits(&w5.algebra, &w5.group, 0, Side::Primal).unwrap();
        assert_eq!(sizes(&nil), vec![1, 12, 12]);
        let dual = nilpotent_orbits(&w5.algebra, &w5.group, 0, Side::Dual).unwrap();
        assert_eq!(sizes(&dual), vec![1, 12, 12]);
    }

    #[test]
    fn gl2_e12_orbit() {
        let w = builtin("gl2", 3).unwrap();
        // basis [E12, E11, E22, E21]
        let e12 = w.algebra.index_of(&w.algebra.basis_vector(0, 0));
        assert_eq!(orbit_of(&w.algebra, &w.group, 0, Side::Primal, e12).unwrap().len(), 8);
        assert_eq!(orbit_of(&w.algebra, &w.group, 0, Side::Primal, 0).unwrap().points, vec![0]);
    }

    #[test]
    fn graded_torus_orbits() {
        let w = builtin("gl2-z2", 5).unwrap();
        let nil = nilpotent_orbits(&w.algebra, &w.group, 1, Side::Primal).unwrap();
        // {bc = 0}: zero, the b-axis and the c-axis
        assert_eq!(sizes(&nil), vec![1, 4, 4]);
        let total: usize = nil.iter().map(|o| o.len()).sum();
        let brute = (0..25).filter(|&i| w.algebra.is_nilpotent(&w.algebra.point(1, i)).unwrap()).count();
        assert_eq!(total, brute);
    }

    #[test]
    fn orbit_sizes_divide_order_and_partition() {
        let w = builtin("gl2", 3).unwrap();
        for side in [Side::Primal, Side::Dual] {
            let all = orbits(&w.algebra, &w.group, 0, side).unwrap();
            assert_eq!(all.iter().map(|o| o.len()).sum::<usize>(), 81);
            for o in &all {
                assert_eq!(w.group.order() % o.len(), 0);
                assert_eq!(o.rep, o.points[0]);
            }
        }
    }

    #[test]
    fn eta_b_is_equivariant() {
        for (name, q) in [("sl2", 3), ("gl2-z2", 5)] {
            let w = builtin(name, q).unwrap();
            let alg = &w.algebra;
            let f = alg.field();
            for deg in 0..alg.grading_modulus() {
                let neg = alg.neg_degree(deg);
                for g in w.group.elements() {
                    let dual = action_matrix(alg, g, deg, Side::Dual);
                    for ai in 0..alg.piece_size(deg).unwrap() {
                        let alpha = alg.dual_point(deg, ai);
                        let ga = crate::glie::DualPoint { degree: deg, coords: dual.mul_vec(f, &alpha.coords) };
                        let lhs = alg.eta_b(&ga);
                        let rhs = g.degrees[neg].mul_vec(f, &alg.eta_b(&alpha).coords);
                        assert_eq!(lhs.coords, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn coadjoint_and_adjoint_sizes_match() {
        let w = builtin("sl2", 5).unwrap();
        let alg = &w.algebra;
        for o in orbits(alg, &w.group, 0, Side::Dual).unwrap() {
            let y = alg.eta_b(&alg.dual_point(0, o.rep));
            let adj = orbit_of(alg, &w.group, 0, Side::Primal, alg.index_of(&y)).unwrap();
            assert_eq!(adj.len(), o.len());
        }
    }

    #[test]
    fn generator_file_roundtrip() {
        let w = builtin("gl2-z2", 5).unwrap();
        let file = w.group.to_file();
        let json = serde_json::to_string(&file).unwrap();
        let back: GeneratorFile = serde_json::from_str(&json).unwrap();
        let g = FiniteGroupAction::from_file(&w.algebra, &back, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order(), 16);
    }
}
