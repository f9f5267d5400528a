//! Functions on a graded piece or its dual: Fourier transform, inner
//! product, detection of invariant characters, and the orbit characters
//! χ_{𝒪*} = FT(q^{N/2}·1_{-𝒪*}).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{FiniteField, Fq, ScalarRing, ScaledCyclotomic};
use crate::gact::{orbit_lookup, Orbit, Side};
use crate::glie::GradedLieAlgebra;

/// Above this many points the dimension-by-dimension transform is used.
pub const DECIMATION_THRESHOLD: u64 = 1000;

/// Largest table a function may occupy.
pub const MAX_FUNCTION_POINTS: u64 = 1 << 25;

/// A dense table of exact scalars indexed by the points of one side of one
/// piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceFunction {
    degree: usize,
    side: Side,
    dim: usize,
    ring: ScalarRing,
    values: Vec<ScaledCyclotomic>,
}

impl PieceFunction {
    pub fn zeros(alg: &GradedLieAlgebra, degree: usize, side: Side) -> Result<Self> {
        let size = alg.piece_size(degree)?;
        if size > MAX_FUNCTION_POINTS {
            return Err(Error::PieceTooLarge(format!("{size} points exceed the dense-table limit 2^25")));
        }
        let ring = alg.field().scalar_ring();
        Ok(PieceFunction { degree, side, dim: alg.dim(degree), ring, values: vec![ScaledCyclotomic::zero(ring); size as usize] })
    }

    pub fn constant(alg: &GradedLieAlgebra, degree: usize, side: Side, c: &ScaledCyclotomic) -> Result<Self> {
        let mut f = Self::zeros(alg, degree, side)?;
        f.values.iter_mut().for_each(|v| *v = c.clone());
        Ok(f)
    }

    /// c on the given points, 0 elsewhere.
    pub fn indicator(alg: &GradedLieAlgebra, degree: usize, side: Side, points: &[u64], c: &ScaledCyclotomic) -> Result<Self> {
        let mut f = Self::zeros(alg, degree, side)?;
        for &p in points {
            f.values[p as usize] = c.clone();
        }
        Ok(f)
    }

    pub fn from_values(alg: &GradedLieAlgebra, degree: usize, side: Side, values: Vec<ScaledCyclotomic>) -> Result<Self> {
        let f = Self::zeros(alg, degree, side)?;
        if values.len() != f.values.len() {
            return Err(Error::Mismatch(format!("expected {} values, got {}", f.values.len(), values.len())));
        }
        Ok(PieceFunction { values, ..f })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[ScaledCyclotomic] {
        &self.values
    }

    pub fn get(&self, idx: u64) -> &ScaledCyclotomic {
        &self.values[idx as usize]
    }

    pub fn set(&mut self, idx: u64, v: ScaledCyclotomic) {
        self.values[idx as usize] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(ScaledCyclotomic::is_zero)
    }

    pub fn support(&self) -> Vec<u64> {
        (0..self.values.len() as u64).filter(|&i| !self.values[i as usize].is_zero()).collect()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree || self.side != other.side || self.values.len() != other.values.len() {
            return Err(Error::Mismatch("functions live on different pieces".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.checked_add(b).ok_or_else(|| Error::Mismatch("sum is not representable".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(PieceFunction { values, ..self.clone() })
    }

    pub fn scale(&self, c: &ScaledCyclotomic) -> Self {
        PieceFunction { values: self.values.iter().map(|v| v * c).collect(), ..self.clone() }
    }

    pub fn mul_int(&self, n: i128) -> Self {
        PieceFunction { values: self.values.iter().map(|v| v.mul_int(n)).collect(), ..self.clone() }
    }

    pub fn conj(&self) -> Self {
        PieceFunction { values: self.values.iter().map(ScaledCyclotomic::conj).collect(), ..self.clone() }
    }

    /// v ↦ f(-v).
    pub fn reflect(&self, alg: &GradedLieAlgebra) -> Self {
        let neg = negation_table(alg, self.degree);
        PieceFunction { values: neg.iter().map(|&j| self.values[j as usize].clone()).collect(), ..self.clone() }
    }

    /// Writes every value as q^{e/2}·c for one common e. Coefficient vectors
    /// are padded to length p so that ζ-rotation is a cyclic shift.
    fn common_form(&self) -> Result<(i32, Vec<i128>)> {
        let p = self.ring.p() as usize;
        let e = self.values.iter().filter(|v| !v.is_zero()).map(|v| v.half_q_exp()).min().unwrap_or(0);
        let mut flat = vec![0i128; self.values.len() * p];
        for (i, v) in self.values.iter().enumerate() {
            let c = v
                .coeffs_at(e)
                .ok_or_else(|| Error::Mismatch("values mix half-integer powers of q that are not representable over Q(zeta_p)".into()))?;
            flat[i * p..i * p + p - 1].copy_from_slice(&c);
        }
        Ok((e, flat))
    }

    fn from_common(template: &Self, degree: usize, side: Side, e: i32, flat: &[i128]) -> Self {
        let p = template.ring.p() as usize;
        let values = flat.chunks(p).map(|acc| ScaledCyclotomic::from_acc(template.ring, acc, e)).collect();
        PieceFunction { degree, side, dim: template.dim, ring: template.ring, values }
    }

    pub fn to_file(&self) -> FunctionFile {
        FunctionFile {
            degree: self.degree,
            side: self.side,
            p: self.ring.p(),
            k: self.ring.k(),
            values: self
                .values
                .iter()
                .map(|v| ScalarEntry { coeffs: v.coeffs().iter().map(|&c| c as i64).collect(), half_q_exp: v.half_q_exp() })
                .collect(),
        }
    }

    pub fn from_file(alg: &GradedLieAlgebra, file: &FunctionFile) -> Result<Self> {
        let ring = alg.field().scalar_ring();
        if file.p != ring.p() || file.k != ring.k() {
            return Err(Error::Mismatch("function file was written for a different field".into()));
        }
        let values = file
            .values
            .iter()
            .map(|s| {
                if s.coeffs.len() != ring.dim() {
                    return Err(Error::Mismatch("scalar has the wrong number of coefficients".into()));
                }
                Ok(ScaledCyclotomic::from_parts(ring, s.coeffs.iter().map(|&c| c as i128).collect(), s.half_q_exp))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(alg, file.degree, file.side, values)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarEntry {
    pub coeffs: Vec<i64>,
    #[serde(rename = "halfQExp")]
    pub half_q_exp: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionFile {
    pub degree: usize,
    pub side: Side,
    pub p: u32,
    pub k: u32,
    pub values: Vec<ScalarEntry>,
}

/// idx ↦ index of the negated point.
pub fn negation_table(alg: &GradedLieAlgebra, degree: usize) -> Vec<u64> {
    let fl = alg.field();
    let idx = alg.indexer(degree);
    (0..idx.count())
        .map(|i| {
            let v: Vec<Fq> = idx.decode(i).into_iter().map(|c| fl.neg(c)).collect();
            idx.encode(&v)
        })
        .collect()
}

/// tr(a·b) for all a, b ∈ 𝔽_q, as a q×q table.
fn trace_product_table(fl: &FiniteField) -> Vec<u32> {
    let q = fl.q();
    let mut t = vec![0u32; (q * q) as usize];
    for a in 0..q {
        for b in 0..q {
            t[(a * q + b) as usize] = fl.trace_to_prime(fl.mul(Fq(a), Fq(b)));
        }
    }
    t
}

#[inline]
fn rotate_add(acc: &mut [i128], src: &[i128], t: usize) {
    let p = acc.len();
    for (i, &c) in src.iter().enumerate() {
        if c != 0 {
            let j = if i + t >= p { i + t - p } else { i + t };
            acc[j] += c;
        }
    }
}

/// FT(f)(α) = q^{-N/2} Σ_v χ(α(v)) f(v), by the direct double sum.
pub fn ft_naive(alg: &GradedLieAlgebra, f: &PieceFunction) -> Result<PieceFunction> {
    let fl = alg.field();
    let p = fl.p() as usize;
    let n = f.dim;
    let (e, flat) = f.common_form()?;
    let idx = alg.indexer(f.degree);
    let size = idx.count();
    let support: Vec<(Vec<Fq>, &[i128])> = (0..size)
        .filter(|&i| flat[i as usize * p..(i as usize + 1) * p].iter().any(|&c| c != 0))
        .map(|i| (idx.decode(i), &flat[i as usize * p..(i as usize + 1) * p]))
        .collect();
    let out: Vec<i128> = (0..size)
        .into_par_iter()
        .flat_map_iter(|a| {
            let alpha = idx.decode(a);
            let mut acc = vec![0i128; p];
            for (v, c) in &support {
                let s = alpha.iter().zip(v).fold(Fq::ZERO, |s, (&x, &y)| fl.add(s, fl.mul(x, y)));
                rotate_add(&mut acc, c, fl.trace_to_prime(s) as usize);
            }
            acc
        })
        .collect();
    Ok(PieceFunction::from_common(f, f.degree, f.side.opposite(), e - n as i32, &out))
}

/// The same transform, one coordinate at a time: N passes of cost q^{N+1}.
pub fn ft_decimated(alg: &GradedLieAlgebra, f: &PieceFunction) -> Result<PieceFunction> {
    let fl = alg.field();
    let p = fl.p() as usize;
    let q = fl.q() as usize;
    let n = f.dim;
    let (e, mut cur) = f.common_form()?;
    let tr = trace_product_table(fl);
    let size = f.values.len();
    let mut stride = 1usize;
    for _ in 0..n {
        let src = &cur;
        let next: Vec<i128> = (0..size)
            .into_par_iter()
            .flat_map_iter(|out_idx| {
                let a = (out_idx / stride) % q;
                let base = out_idx - a * stride;
                let mut acc = vec![0i128; p];
                for v in 0..q {
                    let j = base + v * stride;
                    rotate_add(&mut acc, &src[j * p..(j + 1) * p], tr[a * q + v] as usize);
                }
                acc
            })
            .collect();
        cur = next;
        stride *= q;
    }
    Ok(PieceFunction::from_common(f, f.degree, f.side.opposite(), e - n as i32, &cur))
}

/// Fourier transform, choosing the decimated kernel above the threshold.
pub fn ft(alg: &GradedLieAlgebra, f: &PieceFunction) -> Result<PieceFunction> {
    if f.values.len() as u64 > DECIMATION_THRESHOLD {
        ft_decimated(alg, f)
    } else {
        ft_naive(alg, f)
    }
}

/// ⟨f, g⟩ = q^{-N} Σ_v conj(f(v))·g(v).
pub fn inner(f: &PieceFunction, g: &PieceFunction) -> Result<ScaledCyclotomic> {
    f.same_shape(g)?;
    let p = f.ring.p() as usize;
    let (ef, cf) = f.common_form()?;
    let (eg, cg) = g.common_form()?;
    let mut acc = vec![0i128; p];
    for (a, b) in cf.chunks(p).zip(cg.chunks(p)) {
        if a.iter().all(|&c| c == 0) || b.iter().all(|&c| c == 0) {
            continue;
        }
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            // conj(ζ^i) = ζ^{-i}
            let ci = (p - i) % p;
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    acc[(ci + j) % p] += x * y;
                }
            }
        }
    }
    Ok(ScaledCyclotomic::from_acc(f.ring, &acc, ef + eg - 2 * f.dim as i32))
}

/// Multiplicities c_{𝒪*} of an invariant character, keyed by orbit
/// representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterDecomposition {
    pub degree: usize,
    pub side: Side,
    pub multiplicities: BTreeMap<u64, u64>,
}

/// Decides whether f is a character of an invariant representation: FT(f)
/// must be constant on the orbits of the opposite side and take values in
/// q^{N/2}·ℕ_0. `orbits` must partition that opposite side.
pub fn is_invariant_character(alg: &GradedLieAlgebra, f: &PieceFunction, orbits: &[Orbit]) -> Result<CharacterDecomposition> {
    let hat = ft(alg, f)?;
    decompose_transform(alg, &hat, orbits)
}

/// The same test starting from an already computed FT(f).
pub fn decompose_transform(alg: &GradedLieAlgebra, hat: &PieceFunction, orbits: &[Orbit]) -> Result<CharacterDecomposition> {
    let n = alg.dim(hat.degree) as i32;
    let lookup = orbit_lookup(orbits, hat.values.len() as u64);
    if lookup.iter().any(|&o| o == u32::MAX) || orbits.iter().any(|o| o.degree != hat.degree || o.side != hat.side) {
        return Err(Error::Mismatch("orbits do not partition the transformed piece".into()));
    }
    let mut multiplicities = BTreeMap::new();
    for o in orbits {
        let first = hat.get(o.rep);
        let m = first.as_scaled_natural(n).ok_or_else(|| {
            Error::NotACharacter(format!("FT value {first} at point {} is not in q^(N/2)·N_0", o.rep))
        })?;
        if let Some(&bad) = o.points.iter().find(|&&pt| hat.get(pt) != first) {
            return Err(Error::NotACharacter(format!(
                "FT is not constant on orbit {}: points {} and {bad} differ",
                o.rep, o.rep
            )));
        }
        if m > 0 {
            multiplicities.insert(o.rep, m as u64);
        }
    }
    Ok(CharacterDecomposition { degree: hat.degree, side: hat.side, multiplicities })
}

/// χ_{𝒪*} = FT(q^{N/2}·1_{-𝒪*}), a function on the side opposite to 𝒪*.
pub fn chi_orbit(alg: &GradedLieAlgebra, orbit: &Orbit) -> Result<PieceFunction> {
    let neg = negation_table(alg, orbit.degree);
    let minus: Vec<u64> = orbit.points.iter().map(|&i| neg[i as usize]).collect();
    let ring = alg.field().scalar_ring();
    let c = ScaledCyclotomic::one(ring).scale_sqrt_q(alg.dim(orbit.degree) as i32);
    let ind = PieceFunction::indicator(alg, orbit.degree, orbit.side, &minus, &c)?;
    ft(alg, &ind)
}

/// Σ_𝒪 c_𝒪·χ_𝒪.
pub fn combine_characters(alg: &GradedLieAlgebra, chis: &[(u64, PieceFunction)], mult: &BTreeMap<u64, u64>) -> Result<PieceFunction> {
    let first = chis.first().ok_or_else(|| Error::Mismatch("no characters to combine".into()))?;
    let mut acc = PieceFunction::zeros(alg, first.1.degree, first.1.side)?;
    for (rep, chi) in chis {
        if let Some(&m) = mult.get(rep) {
            if m > 0 {
                acc = acc.add(&chi.mul_int(m as i128))?;
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_algebra, builtin, BuilderSpec, Family};
    use crate::gact::orbits;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn one_dim(q: u32) -> GradedLieAlgebra {
        // gl_1 has a single one-dimensional piece
        build_algebra(&BuilderSpec::ungraded(Family::Gl, 1, q)).unwrap()
    }

    fn random_function(alg: &GradedLieAlgebra, degree: usize, side: Side, rng: &mut ChaCha8Rng) -> PieceFunction {
        let ring = alg.field().scalar_ring();
        let size = alg.piece_size(degree).unwrap() as usize;
        let values = (0..size)
            .map(|_| {
                let c: Vec<i128> = (0..ring.dim()).map(|_| rng.gen_range(-3..=3)).collect();
                ScaledCyclotomic::from_parts(ring, c, 0)
            })
            .collect();
        PieceFunction::from_values(alg, degree, side, values).unwrap()
    }

    #[test]
    fn delta_and_constant() {
        let alg = one_dim(3);
        let ring = alg.field().scalar_ring();
        let one = ScaledCyclotomic::one(ring);
        let delta = PieceFunction::indicator(&alg, 0, Side::Primal, &[0], &one).unwrap();
        let hat = ft(&alg, &delta).unwrap();
        for v in hat.values() {
            assert_eq!(*v, one.scale_sqrt_q(-1));
        }
        let constant = PieceFunction::constant(&alg, 0, Side::Primal, &one).unwrap();
        let hat = ft(&alg, &constant).unwrap();
        assert_eq!(*hat.get(0), one.scale_sqrt_q(1));
        assert!(hat.get(1).is_zero() && hat.get(2).is_zero());
    }

    #[test]
    fn additive_character_transforms_to_delta() {
        let w = builtin("gl2-z2", 5).unwrap();
        let alg = &w.algebra;
        let fl = alg.field();
        let ring = fl.scalar_ring();
        let neg = negation_table(alg, 1);
        for b in [0u64, 1, 7, 24] {
            let beta = alg.dual_point(1, b);
            let values = (0..25)
                .map(|v| fl.additive_character(alg.pair(&beta, &alg.point(1, v))))
                .collect();
            let f = PieceFunction::from_values(alg, 1, Side::Primal, values).unwrap();
            let hat = ft(alg, &f).unwrap();
            let expect = PieceFunction::indicator(alg, 1, Side::Dual, &[neg[b as usize]], &ScaledCyclotomic::one(ring).scale_sqrt_q(2)).unwrap();
            assert_eq!(hat, expect);
        }
    }

    #[test]
    fn naive_and_decimated_agree() {
        let w = builtin("sl2", 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..3 {
            let f = random_function(&w.algebra, 0, Side::Primal, &mut rng);
            assert_eq!(ft_naive(&w.algebra, &f).unwrap(), ft_decimated(&w.algebra, &f).unwrap());
        }
        let alg9 = build_algebra(&BuilderSpec::ungraded(Family::Gl, 1, 9)).unwrap();
        let f = random_function(&alg9, 0, Side::Dual, &mut rng);
        assert_eq!(ft_naive(&alg9, &f).unwrap(), ft_decimated(&alg9, &f).unwrap());
    }

    #[test]
    fn involution_and_plancherel() {
        let w = builtin("sl2", 3).unwrap();
        let alg = &w.algebra;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let f = random_function(alg, 0, Side::Primal, &mut rng);
            let g = random_function(alg, 0, Side::Primal, &mut rng);
            let ff = ft(alg, &f).unwrap();
            let fff = ft(alg, &ff).unwrap();
            assert_eq!(fff.side(), Side::Primal);
            assert_eq!(fff, f.reflect(alg));
            let gg = ft(alg, &g).unwrap();
            assert_eq!(inner(&ff, &gg).unwrap(), inner(&f, &g).unwrap());
        }
    }

    #[test]
    fn inner_product_basics() {
        let w = builtin("sl2", 3).unwrap();
        let alg = &w.algebra;
        let ring = alg.field().scalar_ring();
        let delta = PieceFunction::indicator(alg, 0, Side::Primal, &[0], &ScaledCyclotomic::one(ring)).unwrap();
        assert_eq!(inner(&delta, &delta).unwrap(), ScaledCyclotomic::one(ring).scale_sqrt_q(-6));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_function(alg, 0, Side::Primal, &mut rng);
        let nrm = inner(&f, &f).unwrap();
        assert_eq!(nrm.is_zero(), f.is_zero());
        let z = PieceFunction::zeros(alg, 0, Side::Primal).unwrap();
        assert!(inner(&z, &z).unwrap().is_zero());
    }

    #[test]
    fn orbit_characters() {
        let w = builtin("sl2", 5).unwrap();
        let alg = &w.algebra;
        let ring = alg.field().scalar_ring();
        let dual = orbits(alg, &w.group, 0, Side::Dual).unwrap();
        let neg = negation_table(alg, 0);
        let mut chis = Vec::new();
        for o in &dual {
            let chi = chi_orbit(alg, o).unwrap();
            assert_eq!(*chi.get(0), ScaledCyclotomic::from_int(ring, o.len() as i128));
            let hat = ft(alg, &chi).unwrap();
            let expect = PieceFunction::indicator(alg, 0, Side::Dual, &o.points, &ScaledCyclotomic::one(ring).scale_sqrt_q(3)).unwrap();
            assert_eq!(hat, expect);
            let dec = is_invariant_character(alg, &chi, &dual).unwrap();
            assert_eq!(dec.multiplicities, BTreeMap::from([(o.rep, 1)]));
            let minus_rep = o.points.iter().map(|&i| neg[i as usize]).min().unwrap();
            let minus = dual.iter().find(|x| x.rep == minus_rep).unwrap();
            assert_eq!(chi.conj(), chi_orbit(alg, minus).unwrap());
            chis.push((o.rep, o.len(), chi));
        }
        assert_eq!(chis[0].2, PieceFunction::constant(alg, 0, Side::Primal, &ScaledCyclotomic::one(ring)).unwrap());
        // Gram matrix is diagonal with entries |𝒪*|
        for (i, a) in chis.iter().enumerate().step_by(3) {
            for (j, b) in chis.iter().enumerate().step_by(2) {
                let v = inner(&a.2, &b.2).unwrap();
                let want = if i == j { a.1 as i128 } else { 0 };
                assert_eq!(v, ScaledCyclotomic::from_int(ring, want));
            }
        }
    }

    #[test]
    fn regular_representation_and_trivial() {
        let w = builtin("sl2", 3).unwrap();
        let alg = &w.algebra;
        let ring = alg.field().scalar_ring();
        let dual = orbits(alg, &w.group, 0, Side::Dual).unwrap();
        let one = PieceFunction::constant(alg, 0, Side::Primal, &ScaledCyclotomic::one(ring)).unwrap();
        assert_eq!(is_invariant_character(alg, &one, &dual).unwrap().multiplicities, BTreeMap::from([(0, 1)]));
        let reg = PieceFunction::indicator(alg, 0, Side::Primal, &[0], &ScaledCyclotomic::from_int(ring, 27)).unwrap();
        let dec = is_invariant_character(alg, &reg, &dual).unwrap();
        assert_eq!(dec.multiplicities.len(), dual.len());
        assert!(dec.multiplicities.values().all(|&m| m == 1));
    }

    #[test]
    fn roundtrip_and_perturbation() {
        let w = builtin("sl2", 3).unwrap();
        let alg = &w.algebra;
        let ring = alg.field().scalar_ring();
        let dual = orbits(alg, &w.group, 0, Side::Dual).unwrap();
        let chis: Vec<(u64, PieceFunction)> = dual.iter().map(|o| (o.rep, chi_orbit(alg, o).unwrap())).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let mult: BTreeMap<u64, u64> = dual.iter().map(|o| (o.rep, rng.gen_range(0..=3))).collect();
            let f = combine_characters(alg, &chis, &mult).unwrap();
            let dec = is_invariant_character(alg, &f, &dual).unwrap();
            let nonzero: BTreeMap<u64, u64> = mult.into_iter().filter(|&(_, m)| m > 0).collect();
            assert_eq!(dec.multiplicities, nonzero);
            let mut g = f.clone();
            let bumped = g.get(4) + &ScaledCyclotomic::one(ring);
            g.set(4, bumped);
            assert!(matches!(is_invariant_character(alg, &g, &dual), Err(Error::NotACharacter(_))));
        }
    }

    #[test]
    fn file_roundtrip() {
        let w = builtin("sl2", 3).unwrap();
        let alg = &w.algebra;
        let dual = orbits(alg, &w.group, 0, Side::Dual).unwrap();
        let chi = chi_orbit(alg, &dual[1]).unwrap();
        let json = serde_json::to_string(&chi.to_file()).unwrap();
        let back: FunctionFile = serde_json::from_str(&json).unwrap();
        assert_eq!(PieceFunction::from_file(alg, &back).unwrap(), chi);
    }
}
