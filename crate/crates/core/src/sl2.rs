//! Graded sl₂-triples, the integer grading they induce, and the affine
//! slices built from it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{FiniteField, Fq};
use crate::gact::Side;
use crate::glie::{DualPoint, GradedLieAlgebra, PiecePoint};
use crate::linalg::{Mat, Subspace, Vector};

/// (e, h, f) with e ∈ 𝔤_r, h ∈ 𝔤_0, f ∈ 𝔤_{-r}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl2Triple {
    pub e: PiecePoint,
    pub h: PiecePoint,
    pub f: PiecePoint,
}

impl Sl2Triple {
    pub fn zero(alg: &GradedLieAlgebra, r: usize) -> Self {
        Sl2Triple { e: alg.zero_point(r), h: alg.zero_point(0), f: alg.zero_point(alg.neg_degree(r)) }
    }

    pub fn is_zero(&self) -> bool {
        self.e.coords.iter().all(|c| c.is_zero())
    }

    /// [h,e] = 2e, [h,f] = -2f, [e,f] = h.
    pub fn check(&self, alg: &GradedLieAlgebra) -> Result<()> {
        let fl = alg.field();
        let two = fl.from_int(2);
        let scale = |p: &PiecePoint, c: Fq| -> Vector { p.coords.iter().map(|&x| fl.mul(c, x)).collect() };
        if alg.bracket(&self.h, &self.e)?.coords != scale(&self.e, two)
            || alg.bracket(&self.h, &self.f)?.coords != scale(&self.f, fl.neg(two))
            || alg.bracket(&self.e, &self.f)?.coords != self.h.coords
        {
            return Err(Error::JmFailure(format!("triple relations fail for e = {:?}", self.e.coords)));
        }
        Ok(())
    }
}

fn eigenspaces(fl: &FiniteField, a: &Mat) -> Vec<(Fq, Subspace)> {
    let n = a.rows();
    let mut out = Vec::new();
    for c in 0..fl.p() {
        let c = Fq(c);
        let shifted = a.sub(fl, &Mat::identity(n).scale(fl, c));
        let ker = shifted.nullspace(fl);
        if !ker.is_empty() {
            out.push((c, Subspace::span(fl, n, &ker)));
        }
    }
    out
}

/// Completes a nilpotent e ∈ 𝔤_r to a graded triple. Among all valid h the
/// lexicographically least is chosen; f is then unique.
pub fn complete_triple(alg: &GradedLieAlgebra, e: &PiecePoint) -> Result<Sl2Triple> {
    let r = e.degree;
    alg.check_degree(r)?;
    if e.coords.iter().all(|c| c.is_zero()) {
        return Ok(Sl2Triple::zero(alg, r));
    }
    let fl = alg.field();
    let nr = alg.neg_degree(r);
    // y ↦ [e,y] : 𝔤_{-r} → 𝔤_0 and z ↦ [z,e] = -[e,z] : 𝔤_0 → 𝔤_r
    let ad_e_neg = alg.ad_matrix(e, nr);
    let ad_e_zero = alg.ad_matrix(e, 0).scale(fl, fl.neg(Fq::ONE));
    let m = ad_e_zero.mul(fl, &ad_e_neg);
    let two_e: Vector = e.coords.iter().map(|&x| fl.mul(fl.from_int(2), x)).collect();
    let y0 = m
        .solve(fl, &two_e)
        .ok_or_else(|| Error::JmFailure(format!("no h in [e, g_-r] with [h,e] = 2e for e = {:?}", e.coords)))?;
    let dirs: Vec<Vector> = m.nullspace(fl).iter().map(|k| ad_e_neg.mul_vec(fl, k)).collect();
    let h_dirs = Subspace::span(fl, alg.dim(0), &dirs);
    let h = PiecePoint { degree: 0, coords: h_dirs.reduce(fl, &ad_e_neg.mul_vec(fl, &y0)) };
    let f_prime = ad_e_neg
        .solve(fl, &h.coords)
        .ok_or_else(|| Error::JmFailure("[e, f] = h has no solution".into()))?;
    let ad_h = alg.ad_matrix(&h, nr);
    let spaces = eigenspaces(fl, &ad_h);
    let total: usize = spaces.iter().map(|(_, s)| s.dim()).sum();
    if total != alg.dim(nr) {
        return Err(Error::JmFailure("ad(h) is not diagonalisable over the prime field".into()));
    }
    let minus_two = fl.neg(fl.from_int(2));
    let mut cols = Vec::new();
    let mut keep = Vec::new();
    for (c, s) in &spaces {
        for b in s.basis() {
            keep.push(*c == minus_two);
            cols.push(b.clone());
        }
    }
    let basis = Mat::from_cols(alg.dim(nr), &cols);
    let coeffs = basis.solve(fl, &f_prime).expect("eigenbasis spans the piece");
    let mut fv = vec![Fq::ZERO; alg.dim(nr)];
    for ((c, b), k) in coeffs.iter().zip(&cols).zip(&keep) {
        if *k {
            for (x, &bi) in fv.iter_mut().zip(b) {
                *x = fl.add(*x, fl.mul(*c, bi));
            }
        }
    }
    let t = Sl2Triple { e: e.clone(), h, f: PiecePoint { degree: nr, coords: fv } };
    t.check(alg)?;
    Ok(t)
}

/// Integer weight decomposition 𝔤_s = ⊕_j 𝔤_s(j) induced by h.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedGrading {
    pieces: Vec<BTreeMap<i64, Subspace>>,
}

impl AdaptedGrading {
    pub fn weights(&self, s: usize) -> &BTreeMap<i64, Subspace> {
        &self.pieces[s]
    }

    pub fn weight_space(&self, s: usize, j: i64) -> Subspace {
        let ambient = self.ambient(s);
        self.pieces[s].get(&j).cloned().unwrap_or_else(|| Subspace::zero(ambient))
    }

    fn ambient(&self, s: usize) -> usize {
        self.pieces[s].values().next().map_or(0, |v| v.ambient())
    }

    /// 𝔤_s(≤ j).
    pub fn at_most(&self, fl: &FiniteField, s: usize, j: i64) -> Subspace {
        let vecs: Vec<Vector> = self.pieces[s].range(..=j).flat_map(|(_, v)| v.basis().to_vec()).collect();
        Subspace::span(fl, self.ambient(s), &vecs)
    }

    /// 𝔤_s(≥ j).
    pub fn at_least(&self, fl: &FiniteField, s: usize, j: i64) -> Subspace {
        let vecs: Vec<Vector> = self.pieces[s].range(j..).flat_map(|(_, v)| v.basis().to_vec()).collect();
        Subspace::span(fl, self.ambient(s), &vecs)
    }

    /// Weight multiplicities per degree.
    pub fn multiplicities(&self) -> Vec<BTreeMap<i64, usize>> {
        self.pieces.iter().map(|m| m.iter().map(|(&j, v)| (j, v.dim())).collect()).collect()
    }

    /// Checks the decomposition is direct and exhaustive, that ad(h) acts by
    /// j mod p, and that brackets add weights.
    pub fn check(&self, alg: &GradedLieAlgebra, t: &Sl2Triple) -> Result<()> {
        let fl = alg.field();
        for s in 0..alg.grading_modulus() {
            let total: usize = self.pieces[s].values().map(Subspace::dim).sum();
            let span = self.at_most(fl, s, i64::MAX);
            if total != alg.dim(s) || span.dim() != alg.dim(s) {
                return Err(Error::Invariant(format!("weight spaces of degree {s} do not decompose the piece")));
            }
            let ad_h = alg.ad_matrix(&t.h, s);
            for (&j, v) in &self.pieces[s] {
                let c = fl.from_int(j);
                for b in v.basis() {
                    let img = ad_h.mul_vec(fl, b);
                    if img.iter().zip(b).any(|(&x, &y)| x != fl.mul(c, y)) {
                        return Err(Error::Invariant(format!("ad(h) does not act by {j} on weight space {j} of degree {s}")));
                    }
                }
            }
        }
        for s in 0..alg.grading_modulus() {
            for u in 0..alg.grading_modulus() {
                let su = alg.add_degree(s, u);
                for (&j, vj) in &self.pieces[s] {
                    for (&k, vk) in &self.pieces[u] {
                        let target = self.weight_space(su, j + k);
                        for x in vj.basis() {
                            for y in vk.basis() {
                                let z = alg.bracket_coords(s, x, u, y);
                                if !target.contains(fl, &z) {
                                    return Err(Error::PTooSmall(format!(
                                        "bracket of weights {j} and {k} leaves weight {} (degrees {s},{u})",
                                        j + k
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn lift(fl: &FiniteField, c: Fq) -> i64 {
    fl.symmetric_lift(c).expect("eigenvalue lies in the prime field")
}

/// Weight decomposition for a triple. With a matrix realisation the weights
/// are read off the defining representation; otherwise ad(h) eigenvalues
/// are lifted to the symmetric window.
pub fn adapted_grading(alg: &GradedLieAlgebra, t: &Sl2Triple) -> Result<AdaptedGrading> {
    t.check(alg)?;
    let n = alg.grading_modulus();
    if t.is_zero() {
        let pieces = (0..n).map(|s| BTreeMap::from([(0, Subspace::full(alg.dim(s)))])).collect();
        return Ok(AdaptedGrading { pieces });
    }
    let grading = match alg.realisation() {
        Some(_) => defining_weights(alg, t)?,
        None => adjoint_weights(alg)(t)?,
    };
    grading.check(alg, t)?;
    Ok(grading)
}

fn defining_weights(alg: &GradedLieAlgebra, t: &Sl2Triple) -> Result<AdaptedGrading> {
    let fl = alg.field();
    let real = alg.realisation().expect("realisation present");
    let size = real.size();
    let (hm, em, fm) = (alg.to_matrix(&t.h)?, alg.to_matrix(&t.e)?, alg.to_matrix(&t.f)?);
    let spaces = eigenspaces(fl, &hm);
    if spaces.iter().map(|(_, s)| s.dim()).sum::<usize>() != size {
        return Err(Error::JmFailure("h is not diagonalisable over the prime field".into()));
    }
    // projectors onto the h-eigenspaces of V
    let mut cols = Vec::new();
    let mut owner = Vec::new();
    for (k, (_, s)) in spaces.iter().enumerate() {
        for b in s.basis() {
            cols.push(b.clone());
            owner.push(k);
        }
    }
    let basis = Mat::from_cols(size, &cols);
    let inv = basis.inverse(fl)?;
    let projectors: Vec<Mat> = (0..spaces.len())
        .map(|k| {
            let mut d = Mat::zeros(size, size);
            for (i, &o) in owner.iter().enumerate() {
                if o == k {
                    d.set(i, i, Fq::ONE);
                }
            }
            basis.mul(fl, &d).mul(fl, &inv)
        })
        .collect();
    let weights: Vec<i64> = spaces.iter().map(|(c, _)| lift(fl, *c)).collect();
    let max_w = weights.iter().map(|w| w.abs()).max().unwrap_or(0);
    for (name, m, shift) in [("e", &em, 2i64), ("f", &fm, -2i64)] {
        for (a, pa) in projectors.iter().enumerate() {
            for (b, pb) in projectors.iter().enumerate() {
                let block = pb.mul(fl, m).mul(fl, pa);
                if !block.is_zero() && weights[b] != weights[a] + shift {
                    return Err(Error::PTooSmall(format!(
                        "{name} maps weight {} to {} in the defining representation (p = {}, weights up to {max_w})",
                        weights[a],
                        weights[b],
                        fl.p()
                    )));
                }
            }
        }
    }
    let mut pieces = Vec::with_capacity(alg.grading_modulus());
    for s in 0..alg.grading_modulus() {
        let mut candidates: Vec<i64> = weights.iter().flat_map(|b| weights.iter().map(move |a| b - a)).collect();
        candidates.sort_unstable();
        candidates.dedup();
        // g_s(j) is the image of x ↦ Σ_{w_b - w_a = j} P_b x P_a
        let mut out = BTreeMap::new();
        for &j in &candidates {
            let mut vecs = Vec::new();
            for x in real.basis(s) {
                let mut acc = Mat::zeros(size, size);
                for (a, pa) in projectors.iter().enumerate() {
                    for (b, pb) in projectors.iter().enumerate() {
                        if weights[b] - weights[a] == j {
                            acc = acc.add(fl, &pb.mul(fl, x).mul(fl, pa));
                        }
                    }
                }
                let c = real
                    .from_matrix(fl, s, &acc)
                    .ok_or_else(|| Error::JmFailure(format!("weight component leaves degree {s}")))?;
                vecs.push(c);
            }
            let sp = Subspace::span(fl, alg.dim(s), &vecs);
            if sp.dim() > 0 {
                out.insert(j, sp);
            }
        }
        if out.is_empty() {
            out.insert(0, Subspace::zero(alg.dim(s)));
        }
        distinct_mod_p(fl, s, &out)?;
        pieces.push(out);
    }
    Ok(AdaptedGrading { pieces })
}

/// Weights occurring in one piece must stay distinct after reduction mod p,
/// so that the weight spaces are exactly the ad(h)-eigenspaces.
fn distinct_mod_p(fl: &FiniteField, s: usize, spaces: &BTreeMap<i64, Subspace>) -> Result<()> {
    let p = fl.p() as i64;
    let present: Vec<i64> = spaces.iter().filter(|(_, v)| v.dim() > 0).map(|(&j, _)| j).collect();
    for (a, &j) in present.iter().enumerate() {
        for &k in &present[a + 1..] {
            if (j - k).rem_euclid(p) == 0 {
                return Err(Error::PTooSmall(format!("weights {j} and {k} coincide mod {p} in degree {s}")));
            }
        }
    }
    Ok(())
}

fn adjoint_weights(alg: &GradedLieAlgebra) -> impl Fn(&Sl2Triple) -> Result<AdaptedGrading> + '_ {
    move |t| {
        let fl = alg.field();
        let mut pieces = Vec::with_capacity(alg.grading_modulus());
        for s in 0..alg.grading_modulus() {
            let ad_h = alg.ad_matrix(&t.h, s);
            let spaces = eigenspaces(fl, &ad_h);
            if spaces.iter().map(|(_, v)| v.dim()).sum::<usize>() != alg.dim(s) {
                return Err(Error::JmFailure(format!("ad(h) is not diagonalisable on degree {s}")));
            }
            let mut out = BTreeMap::new();
            for (c, v) in spaces {
                out.insert(lift(fl, c), v);
            }
            if out.is_empty() {
                out.insert(0, Subspace::zero(alg.dim(s)));
            }
            pieces.push(out);
        }
        let grading = AdaptedGrading { pieces };
        // ad(e) raises and ad(f) lowers weights by exactly 2
        for s in 0..alg.grading_modulus() {
            for (x, shift) in [(&t.e, 2i64), (&t.f, -2i64)] {
                let target_deg = alg.add_degree(x.degree, s);
                for (&j, v) in grading.weights(s) {
                    let target = grading.weight_space(target_deg, j + shift);
                    for b in v.basis() {
                        let img = alg.bracket_coords(x.degree, &x.coords, s, b);
                        if !target.contains(fl, &img) {
                            return Err(Error::PTooSmall(format!(
                                "eigenvalue {} of ad(h) cannot be lifted consistently (p = {})",
                                j + shift,
                                fl.p()
                            )));
                        }
                    }
                }
            }
        }
        Ok(grading)
    }
}

/// An affine subspace base + span(directions) of one side of one piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceSet {
    pub degree: usize,
    pub side: Side,
    pub base: Vector,
    pub directions: Subspace,
}

impl SliceSet {
    pub fn dim(&self) -> usize {
        self.directions.dim()
    }

    pub fn contains(&self, fl: &FiniteField, v: &[Fq]) -> bool {
        let d: Vector = v.iter().zip(&self.base).map(|(&a, &b)| fl.sub(a, b)).collect();
        self.directions.contains(fl, &d)
    }

    pub fn points(&self, fl: &FiniteField) -> Vec<Vector> {
        self.directions
            .elements(fl)
            .into_iter()
            .map(|d| d.iter().zip(&self.base).map(|(&a, &b)| fl.add(a, b)).collect())
            .collect()
    }
}

/// Everything derived from a nilpotent α ∈ 𝔤_r^*: the triple through η_B(α),
/// its grading and Σ_α = α + η_B^{-1}(𝔤_{-r}(≤ 0)).
#[derive(Clone, Debug)]
pub struct SigmaData {
    pub triple: Sl2Triple,
    pub grading: AdaptedGrading,
    pub slice: SliceSet,
}

pub fn sigma_slice(alg: &GradedLieAlgebra, alpha: &DualPoint) -> Result<SigmaData> {
    let fl = alg.field();
    let r = alpha.degree;
    alg.check_degree(r)?;
    let e = alg.eta_b(alpha);
    if !alg.is_nilpotent(&e)? {
        return Err(Error::Mismatch(format!("η_B(α) is not nilpotent for α = {:?}", alpha.coords)));
    }
    let triple = complete_triple(alg, &e)?;
    let grading = adapted_grading(alg, &triple)?;
    let nr = alg.neg_degree(r);
    let le0 = grading.at_most(fl, nr, 0);
    let dirs: Vec<Vector> = le0.basis().iter().map(|v| alg.gram(r).mul_vec(fl, v)).collect();
    let slice = SliceSet { degree: r, side: Side::Dual, base: alpha.coords.clone(), directions: Subspace::span(fl, alg.dim(r), &dirs) };
    Ok(SigmaData { triple, grading, slice })
}

/// e + 𝔠_{𝔤_r}(f), the Slodowy slice through e.
pub fn slodowy_slice(alg: &GradedLieAlgebra, t: &Sl2Triple) -> Result<SliceSet> {
    let fl = alg.field();
    let r = t.e.degree;
    let ad_f = alg.ad_matrix(&t.f, r);
    let ker = ad_f.nullspace(fl);
    Ok(SliceSet { degree: r, side: Side::Primal, base: t.e.coords.clone(), directions: Subspace::span(fl, alg.dim(r), &ker) })
}

/// 𝔲_0^e = 𝔤_0^e ∩ [𝔤_{-r}, e].
pub fn u0e(alg: &GradedLieAlgebra, e: &PiecePoint) -> Subspace {
    let fl = alg.field();
    let nr = alg.neg_degree(e.degree);
    let cent = Subspace::span(fl, alg.dim(0), &alg.ad_matrix(e, 0).nullspace(fl));
    let ad = alg.ad_matrix(e, nr);
    let image: Vec<Vector> = (0..ad.cols()).map(|c| ad.col(c)).collect();
    cent.intersect(fl, &Subspace::span(fl, alg.dim(0), &image))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleCount {
    pub count: u64,
    pub expected: u64,
}

/// Number of (h, f) completing e, by enumerating the affine space of f with
/// [[e,f],e] = 2e and testing the remaining relation; compared with
/// q^{dim 𝔲_0^e}.
pub fn all_triples_count(alg: &GradedLieAlgebra, e: &PiecePoint) -> Result<TripleCount> {
    let fl = alg.field();
    let nr = alg.neg_degree(e.degree);
    let ad_e_neg = alg.ad_matrix(e, nr);
    let ad_e_zero = alg.ad_matrix(e, 0).scale(fl, fl.neg(Fq::ONE));
    let m = ad_e_zero.mul(fl, &ad_e_neg);
    let two_e: Vector = e.coords.iter().map(|&x| fl.mul(fl.from_int(2), x)).collect();
    let expected = (fl.q() as u64).pow(u0e(alg, e).dim() as u32);
    let Some(f0) = m.solve(fl, &two_e) else {
        return Ok(TripleCount { count: 0, expected });
    };
    let ker = Subspace::span(fl, alg.dim(nr), &m.nullspace(fl));
    let minus_two = fl.neg(fl.from_int(2));
    let mut count = 0;
    for d in ker.elements(fl) {
        let fv: Vector = f0.iter().zip(&d).map(|(&a, &b)| fl.add(a, b)).collect();
        let fp = PiecePoint { degree: nr, coords: fv };
        let h = alg.bracket(e, &fp)?;
        let hf = alg.bracket(&h, &fp)?;
        if hf.coords.iter().zip(&fp.coords).all(|(&x, &y)| x == fl.mul(minus_two, y)) {
            count += 1;
        }
    }
    Ok(TripleCount { count, expected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::builtin;
    use crate::gact::{nilpotent_orbits, GroupElement};

    fn pt(d: usize, c: &[u32]) -> PiecePoint {
        PiecePoint { degree: d, coords: c.iter().map(|&x| Fq(x)).collect() }
    }

    fn mat(rows: &[&[u32]]) -> Mat {
        Mat::from_rows(&rows.iter().map(|r| r.iter().map(|&x| Fq(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn zero_triple() {
        let w = builtin("sl2", 5).unwrap();
        let t = complete_triple(&w.algebra, &w.algebra.zero_point(0)).unwrap();
        assert!(t.is_zero());
        let g = adapted_grading(&w.algebra, &t).unwrap();
        assert_eq!(g.multiplicities()[0], BTreeMap::from([(0, 3)]));
        assert_eq!(g.at_most(w.algebra.field(), 0, -1).dim(), 0);
    }

    #[test]
    fn sl2_standard_triple() {
        let w = builtin("sl2", 5).unwrap();
        let t = complete_triple(&w.algebra, &pt(0, &[1, 0, 0])).unwrap();
        assert_eq!(t.h, pt(0, &[0, 1, 0]));
        assert_eq!(t.f, pt(0, &[0, 0, 1]));
        let g = adapted_grading(&w.algebra, &t).unwrap();
        assert_eq!(g.multiplicities()[0], BTreeMap::from([(-2, 1), (0, 1), (2, 1)]));
    }

    #[test]
    fn graded_gl2_grading() {
        let w = builtin("gl2-z2", 5).unwrap();
        let t = complete_triple(&w.algebra, &pt(1, &[1, 0])).unwrap();
        let g = adapted_grading(&w.algebra, &t).unwrap();
        let m = g.multiplicities();
        assert_eq!(m[1], BTreeMap::from([(-2, 1), (2, 1)]));
        assert_eq!(m[0], BTreeMap::from([(0, 2)]));
    }

    #[test]
    fn gl2_over_f3_grading_is_well_defined() {
        let w = builtin("gl2", 3).unwrap();
        let t = complete_triple(&w.algebra, &pt(0, &[1, 0, 0, 0])).unwrap();
        let g = adapted_grading(&w.algebra, &t).unwrap();
        assert_eq!(g.multiplicities()[0], BTreeMap::from([(-2, 1), (0, 2), (2, 1)]));
    }

    #[test]
    fn triple_counts() {
        for q in [5u32, 7] {
            let w = builtin("sl2", q).unwrap();
            let c = all_triples_count(&w.algebra, &pt(0, &[1, 0, 0])).unwrap();
            assert_eq!(c, TripleCount { count: q as u64, expected: q as u64 });
        }
        let w = builtin("gl2-z2", 5).unwrap();
        let c = all_triples_count(&w.algebra, &pt(1, &[1, 0])).unwrap();
        assert_eq!(c.count, c.expected);
    }

    #[test]
    fn triple_count_against_full_enumeration() {
        let w = builtin("sl2", 5).unwrap();
        let alg = &w.algebra;
        let e = pt(0, &[1, 0, 0]);
        let mut brute = 0;
        for hi in 0..125 {
            let h = alg.point(0, hi);
            for fi in 0..125 {
                let f = alg.point(0, fi);
                if (Sl2Triple { e: e.clone(), h: h.clone(), f }).check(alg).is_ok() {
                    brute += 1;
                }
            }
        }
        assert_eq!(brute, 5);
    }

    #[test]
    fn every_nilpotent_completes() {
        for (name, q) in [("sl2", 5), ("gl2", 3), ("gl2-z2", 5), ("gl3-z3", 7)] {
            let w = builtin(name, q).unwrap();
            for deg in 0..w.algebra.grading_modulus() {
                for o in nilpotent_orbits(&w.algebra, &w.group, deg, Side::Primal).unwrap() {
                    let e = w.algebra.point(deg, o.rep);
                    let t = complete_triple(&w.algebra, &e).unwrap();
                    t.check(&w.algebra).unwrap();
                    adapted_grading(&w.algebra, &t).unwrap();
                    if !t.is_zero() {
                        let c = all_triples_count(&w.algebra, &e).unwrap();
                        assert_eq!(c.count, c.expected, "{name} q={q} e={:?}", e.coords);
                    }
                }
            }
        }
    }

    #[test]
    fn slice_dimensions() {
        let w = builtin("sl2", 5).unwrap();
        let alg = &w.algebra;
        let zero = DualPoint { degree: 0, coords: vec![Fq::ZERO; 3] };
        assert_eq!(sigma_slice(alg, &zero).unwrap().slice.dim(), 3);
        let alpha = alg.eta_b_inv(&pt(0, &[1, 0, 0]));
        let s = sigma_slice(alg, &alpha).unwrap();
        assert_eq!(s.slice.dim(), 2);
        assert!(s.slice.contains(alg.field(), &alpha.coords));
        let z = builtin("gl2-z2", 5).unwrap();
        let alpha = z.algebra.eta_b_inv(&pt(1, &[1, 0]));
        assert_eq!(sigma_slice(&z.algebra, &alpha).unwrap().slice.dim(), 1);
    }

    #[test]
    fn slodowy_dimensions() {
        let w = builtin("sl2", 5).unwrap();
        let t = complete_triple(&w.algebra, &pt(0, &[1, 0, 0])).unwrap();
        assert_eq!(slodowy_slice(&w.algebra, &t).unwrap().dim(), 1);
        assert_eq!(slodowy_slice(&w.algebra, &Sl2Triple::zero(&w.algebra, 0)).unwrap().dim(), 3);
        let alg = crate::builders::build_algebra(&crate::builders::BuilderSpec::ungraded(crate::builders::Family::Gl, 3, 7)).unwrap();
        // basis [E12, E13, E23, E11, E22, E33, E21, E31, E32]
        let e = pt(0, &[1, 0, 1, 0, 0, 0, 0, 0, 0]);
        let t = complete_triple(&alg, &e).unwrap();
        assert_eq!(slodowy_slice(&alg, &t).unwrap().dim(), 3);
    }

    #[test]
    fn weight_collisions_are_rejected() {
        let w = builtin("gl3", 3).unwrap();
        let e = pt(0, &[1, 0, 0, 0, 0, 0, 0, 0, 0]);
        let t = complete_triple(&w.algebra, &e).unwrap();
        let err = adapted_grading(&w.algebra, &t).unwrap_err();
        assert!(err.to_string().starts_with("p too small for this triple"), "{err}");
    }

    #[test]
    fn gl3_regular_triple_over_f11() {
        let spec = crate::builders::BuilderSpec::ungraded(crate::builders::Family::Gl, 3, 11);
        let alg = crate::builders::build_algebra(&spec).unwrap();
        let e = pt(0, &[1, 0, 1, 0, 0, 0, 0, 0, 0]);
        let t = complete_triple(&alg, &e).unwrap();
        assert_eq!(alg.to_matrix(&t.h).unwrap(), mat(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, 9]]));
        assert_eq!(alg.to_matrix(&t.f).unwrap(), mat(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0]]));
        let g = adapted_grading(&alg, &t).unwrap();
        assert_eq!(g.multiplicities()[0], BTreeMap::from([(-4, 1), (-2, 2), (0, 3), (2, 2), (4, 1)]));
    }

    #[test]
    fn slices_from_different_triples_are_conjugate() {
        let w = builtin("sl2", 5).unwrap();
        let alg = &w.algebra;
        let fl = alg.field();
        let e = pt(0, &[1, 0, 0]);
        let t1 = complete_triple(alg, &e).unwrap();
        // a second triple: conjugate t1 by exp(ad(e)) = Ad([[1,1],[0,1]])
        let u = GroupElement::from_defining(alg, mat(&[&[1, 1], &[0, 1]])).unwrap();
        let t2 = Sl2Triple {
            e: e.clone(),
            h: PiecePoint { degree: 0, coords: u.degrees[0].mul_vec(fl, &t1.h.coords) },
            f: PiecePoint { degree: 0, coords: u.degrees[0].mul_vec(fl, &t1.f.coords) },
        };
        t2.check(alg).unwrap();
        assert_ne!(t1.h, t2.h);
        let g1 = adapted_grading(alg, &t1).unwrap();
        let g2 = adapted_grading(alg, &t2).unwrap();
        let s1 = g1.at_most(fl, 0, 0);
        let s2 = g2.at_most(fl, 0, 0);
        let moved: Vec<Vector> = s1.basis().iter().map(|v| u.degrees[0].mul_vec(fl, v)).collect();
        assert_eq!(Subspace::span(fl, 3, &moved), s2);
    }
}
