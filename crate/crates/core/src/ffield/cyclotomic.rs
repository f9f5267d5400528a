use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// The scalar ring ℤ[ζ_p][q^{±1/2}] for q = p^k.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScalarRing {
    p: u32,
    k: u32,
}

impl ScalarRing {
    pub fn new(p: u32, k: u32) -> Self {
        assert!(p >= 3 && k >= 1);
        ScalarRing { p, k }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> i128 {
        (self.p as i128).pow(self.k)
    }

    /// Length of the coefficient vector: the basis is {ζ^0, …, ζ^{p-2}}.
    pub fn dim(&self) -> usize {
        self.p as usize - 1
    }

    /// Reduces a vector in ℤ[x]/(x^p - 1) (length p) to the ζ-basis using
    /// 1 + ζ + … + ζ^{p-1} = 0.
    pub fn reduce(&self, acc: &[i128]) -> Vec<i128> {
        let p = self.p as usize;
        debug_assert_eq!(acc.len(), p);
        let top = acc[p - 1];
        acc[..p - 1].iter().map(|&c| c - top).collect()
    }

    /// Quadratic Gauss sum Σ_a (a/p) ζ^a in the ζ-basis; squares to p when
    /// p ≡ 1 mod 4.
    pub fn gauss_sum(&self) -> Vec<i128> {
        let p = self.p as u64;
        let mut acc = vec![0i128; p as usize];
        for a in 1..p {
            let leg = mod_pow(a, (p - 1) / 2, p);
            acc[a as usize] += if leg == 1 { 1 } else { -1 };
        }
        self.reduce(&acc)
    }

    /// Whether √q lies in ℚ(ζ_p): always for even k, otherwise iff p ≡ 1 mod 4.
    fn sqrt_q_in_field(&self) -> bool {
        self.k % 2 == 0 || self.p % 4 == 1
    }

    fn mul_coeffs(&self, a: &[i128], b: &[i128]) -> Vec<i128> {
        let p = self.p as usize;
        let mut acc = vec![0i128; p];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let t = i + j;
                acc[if t >= p { t - p } else { t }] += x * y;
            }
        }
        self.reduce(&acc)
    }
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// An exact scalar q^{e/2} · Σ a_i ζ_p^i.
///
/// Canonical form: the zero value has e = 0; otherwise non-negative exponents
/// are absorbed down to e ∈ {0, 1} (e = 0 when k is even, since √q is then an
/// integer), and negative exponents are raised while every coefficient is
/// divisible by q. When p ≡ 1 mod 4 the value √p is itself a cyclotomic
/// integer, so two canonical forms of different parity can still be equal;
/// `PartialEq` compares values, not representations.
#[derive(Clone)]
pub struct ScaledCyclotomic {
    ring: ScalarRing,
    half_q_exp: i32,
    coeffs: Vec<i128>,
}

impl ScaledCyclotomic {
    pub fn zero(ring: ScalarRing) -> Self {
        ScaledCyclotomic { ring, half_q_exp: 0, coeffs: vec![0; ring.dim()] }
    }

    pub fn one(ring: ScalarRing) -> Self {
        Self::from_int(ring, 1)
    }

    pub fn from_int(ring: ScalarRing, n: i128) -> Self {
        let mut coeffs = vec![0; ring.dim()];
        coeffs[0] = n;
        Self::from_parts(ring, coeffs, 0)
    }

    /// ζ_p^t for any integer t.
    pub fn zeta_pow(ring: ScalarRing, t: i64) -> Self {
        let p = ring.p as usize;
        let mut acc = vec![0i128; p];
        acc[t.rem_euclid(p as i64) as usize] = 1;
        Self::from_parts(ring, ring.reduce(&acc), 0)
    }

    /// q^{e/2} · Σ coeffs_i ζ^i, normalised.
    pub fn from_parts(ring: ScalarRing, coeffs: Vec<i128>, half_q_exp: i32) -> Self {
        assert_eq!(coeffs.len(), ring.dim(), "coefficient vector has wrong length");
        let mut v = ScaledCyclotomic { ring, half_q_exp, coeffs };
        v.normalize();
        v
    }

    /// Builds from an accumulator in ℤ[x]/(x^p - 1).
    pub fn from_acc(ring: ScalarRing, acc: &[i128], half_q_exp: i32) -> Self {
        Self::from_parts(ring, ring.reduce(acc), half_q_exp)
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn half_q_exp(&self) -> i32 {
        self.half_q_exp
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.half_q_exp = 0;
            return;
        }
        let q = self.ring.q();
        if self.ring.k % 2 == 0 && self.half_q_exp.rem_euclid(2) == 1 {
            let s = (self.ring.p as i128).pow(self.ring.k / 2);
            self.coeffs.iter_mut().for_each(|c| *c *= s);
            self.half_q_exp -= 1;
        }
        while self.half_q_exp >= 2 {
            self.coeffs.iter_mut().for_each(|c| *c *= q);
            self.half_q_exp -= 2;
        }
        while self.half_q_exp < 0 && self.coeffs.iter().all(|&c| c % q == 0) {
            self.coeffs.iter_mut().for_each(|c| *c /= q);
            self.half_q_exp += 2;
        }
    }

    /// Rewrites an odd exponent as an even one using √q = p^{(k-1)/2}·G.
    /// Returns the coefficients and new exponent, or `None` when √q is not
    /// in the cyclotomic field.
    fn to_even_parity(&self) -> Option<(Vec<i128>, i32)> {
        if self.half_q_exp.rem_euclid(2) == 0 {
            return Some((self.coeffs.clone(), self.half_q_exp));
        }
        if !self.ring.sqrt_q_in_field() {
            return None;
        }
        // k is odd here (even k never carries an odd exponent after normalising)
        let g = self.ring.gauss_sum();
        let s = (self.ring.p as i128).pow((self.ring.k - 1) / 2);
        let c = self.ring.mul_coeffs(&self.coeffs, &g);
        Some((c.into_iter().map(|x| x * s).collect(), self.half_q_exp - 1))
    }

    /// Brings two values to a common exponent. `None` means one is
    /// q^{odd/2} times a nonzero cyclotomic, the other q^{even/2} times a
    /// nonzero cyclotomic, and √q is not expressible over ℚ(ζ_p).
    fn align(&self, other: &Self) -> Option<(i32, Vec<i128>, Vec<i128>)> {
        assert_eq!(self.ring, other.ring, "scalars from different rings");
        if self.is_zero() {
            return Some((other.half_q_exp, vec![0; self.ring.dim()], other.coeffs.clone()));
        }
        if other.is_zero() {
            return Some((self.half_q_exp, self.coeffs.clone(), vec![0; self.ring.dim()]));
        }
        let (mut a, mut ea, mut b, mut eb) =
            (self.coeffs.clone(), self.half_q_exp, other.coeffs.clone(), other.half_q_exp);
        if (ea - eb).rem_euclid(2) == 1 {
            (a, ea) = self.to_even_parity()?;
            (b, eb) = other.to_even_parity()?;
        }
        let q = self.ring.q();
        let e = ea.min(eb);
        let lift = |c: Vec<i128>, from: i32| -> Vec<i128> {
            let f = q.pow(((from - e) / 2) as u32);
            c.into_iter().map(|x| x * f).collect()
        };
        Some((e, lift(a, ea), lift(b, eb)))
    }

    /// Sum, or `None` when the result is not representable (mixed parity with
    /// √q ∉ ℚ(ζ_p)).
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let (e, a, b) = self.align(other)?;
        let c = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
        Some(Self::from_parts(self.ring, c, e))
    }

    pub fn conj(&self) -> Self {
        let p = self.ring.p as usize;
        let mut acc = vec![0i128; p];
        for (i, &c) in self.coeffs.iter().enumerate() {
            acc[(p - i) % p] += c;
        }
        Self::from_acc(self.ring, &acc, self.half_q_exp)
    }

    /// Multiplies by q^{delta/2}.
    pub fn scale_sqrt_q(&self, delta: i32) -> Self {
        Self::from_parts(self.ring, self.coeffs.clone(), self.half_q_exp + delta)
    }

    pub fn mul_int(&self, n: i128) -> Self {
        Self::from_parts(self.ring, self.coeffs.iter().map(|&c| c * n).collect(), self.half_q_exp)
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<i128> {
        if self.is_zero() {
            return Some(0);
        }
        let (c, e) = self.to_even_parity()?;
        if c[1..].iter().any(|&x| x != 0) {
            return None;
        }
        let m = c[0];
        let q = self.ring.q();
        if e >= 0 {
            Some(m * q.pow((e / 2) as u32))
        } else {
            let d = q.pow((-e / 2) as u32);
            (m % d == 0).then(|| m / d)
        }
    }

    /// √q as a cyclotomic integer, when it is one.
    pub fn sqrt_q_coeffs(ring: ScalarRing) -> Option<Vec<i128>> {
        let mut c = vec![0i128; ring.dim()];
        if ring.k % 2 == 0 {
            c[0] = (ring.p as i128).pow(ring.k / 2);
            return Some(c);
        }
        if !ring.sqrt_q_in_field() {
            return None;
        }
        let s = (ring.p as i128).pow((ring.k - 1) / 2);
        Some(ring.gauss_sum().into_iter().map(|x| x * s).collect())
    }

    /// Coefficients c with value = q^{e/2}·c, if such integral c exist.
    pub fn coeffs_at(&self, e: i32) -> Option<Vec<i128>> {
        if self.is_zero() {
            return Some(vec![0; self.ring.dim()]);
        }
        let (mut c, mut own) = (self.coeffs.clone(), self.half_q_exp);
        if (own - e).rem_euclid(2) == 1 {
            let s = Self::sqrt_q_coeffs(self.ring)?;
            c = self.ring.mul_coeffs(&c, &s);
            own -= 1;
        }
        let q = self.ring.q();
        if own >= e {
            let f = q.pow(((own - e) / 2) as u32);
            Some(c.into_iter().map(|x| x * f).collect())
        } else {
            let d = q.pow(((e - own) / 2) as u32);
            c.iter().all(|x| x % d == 0).then(|| c.into_iter().map(|x| x / d).collect())
        }
    }

    /// Whether the value equals q^{half_exp/2}·m for some integer m ≥ 0;
    /// returns m.
    pub fn as_scaled_natural(&self, half_exp: i32) -> Option<i128> {
        self.scale_sqrt_q(-half_exp).as_integer().filter(|&m| m >= 0)
    }
}

impl PartialEq for ScaledCyclotomic {
    fn eq(&self, other: &Self) -> bool {
        match self.align(other) {
            Some((_, a, b)) => a == b,
            None => false,
        }
    }
}

impl Eq for ScaledCyclotomic {}

impl Add for &ScaledCyclotomic {
    type Output = ScaledCyclotomic;
    fn add(self, rhs: &ScaledCyclotomic) -> ScaledCyclotomic {
        self.checked_add(rhs)
            .expect("sum mixes half-integer powers of q that are not representable over Q(zeta_p)")
    }
}

impl Neg for &ScaledCyclotomic {
    type Output = ScaledCyclotomic;
    fn neg(self) -> ScaledCyclotomic {
        ScaledCyclotomic {
            ring: self.ring,
            half_q_exp: self.half_q_exp,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}

impl Sub for &ScaledCyclotomic {
    type Output = ScaledCyclotomic;
    fn sub(self, rhs: &ScaledCyclotomic) -> ScaledCyclotomic {
        self + &(-rhs)
    }
}

impl Mul for &ScaledCyclotomic {
    type Output = ScaledCyclotomic;
    fn mul(self, rhs: &ScaledCyclotomic) -> ScaledCyclotomic {
        assert_eq!(self.ring, rhs.ring, "scalars from different rings");
        let c = self.ring.mul_coeffs(&self.coeffs, &rhs.coeffs);
        ScaledCyclotomic::from_parts(self.ring, c, self.half_q_exp + rhs.half_q_exp)
    }
}

impl fmt::Debug for ScaledCyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ScaledCyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.half_q_exp != 0 {
            write!(f, "q^({}/2)*", self.half_q_exp)?;
        }
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(p: u32, k: u32) -> ScalarRing {
        ScalarRing::new(p, k)
    }

    #[test]
    fn zeta_power_sum_vanishes() {
        let r = ring(7, 1);
        let mut s = ScaledCyclotomic::zero(r);
        for t in 0..7 {
            s = &s + &ScaledCyclotomic::zeta_pow(r, t);
        }
        assert!(s.is_zero());
    }

    #[test]
    fn even_exponents_are_absorbed() {
        let r = ring(5, 1);
        let v = ScaledCyclotomic::from_parts(r, vec![1, 0, 0, 0], 4);
        assert_eq!(v.half_q_exp(), 0);
        assert_eq!(v.coeffs(), &[25, 0, 0, 0]);
        let w = ScaledCyclotomic::from_parts(r, vec![1, 0, 0, 0], 3);
        assert_eq!(w.half_q_exp(), 1);
        let z = ScaledCyclotomic::from_parts(r, vec![0, 0, 0, 0], -3);
        assert_eq!(z.half_q_exp(), 0);
    }

    #[test]
    fn gauss_sum_squares_to_p() {
        for p in [5u32, 13, 17] {
            let r = ring(p, 1);
            let g = ScaledCyclotomic::from_parts(r, r.gauss_sum(), 0);
            assert_eq!((&g * &g).as_integer(), Some(p as i128));
            // so √p and G agree, up to the representation
            assert_eq!(ScaledCyclotomic::from_int(r, 1).scale_sqrt_q(1), g);
        }
        // p ≡ 3 mod 4: G² = -p
        let r = ring(7, 1);
        let g = ScaledCyclotomic::from_parts(r, r.gauss_sum(), 0);
        assert_eq!((&g * &g).as_integer(), Some(-7));
    }

    #[test]
    fn sqrt_q_is_irrational_when_p_is_3_mod_4() {
        let r = ring(7, 1);
        let s = ScaledCyclotomic::one(r).scale_sqrt_q(1);
        assert_eq!(s.as_integer(), None);
        assert_ne!(s, ScaledCyclotomic::one(r));
        assert!(s.checked_add(&ScaledCyclotomic::one(r)).is_none());
        assert_eq!((&s * &s).as_integer(), Some(7));
    }

    #[test]
    fn square_q_has_integral_root() {
        let r = ring(3, 2);
        let s = ScaledCyclotomic::one(r).scale_sqrt_q(1);
        assert_eq!(s.as_integer(), Some(3));
        let t = ScaledCyclotomic::one(r).scale_sqrt_q(-1);
        assert_eq!(t.as_integer(), None);
        assert_eq!((&t * &ScaledCyclotomic::from_int(r, 3)).as_integer(), Some(1));
    }

    #[test]
    fn scaled_natural_test() {
        let r = ring(5, 1);
        let v = ScaledCyclotomic::from_int(r, 7).scale_sqrt_q(3);
        assert_eq!(v.as_scaled_natural(3), Some(7));
        assert_eq!(v.as_scaled_natural(1), Some(35));
        assert_eq!(v.as_scaled_natural(5), None);
        assert_eq!(ScaledCyclotomic::from_int(r, -2).as_scaled_natural(0), None);
    }

    fn arb_value(p: u32) -> impl Strategy<Value = ScaledCyclotomic> {
        (prop::collection::vec(-20i128..20, p as usize - 1), -3i32..4)
            .prop_map(move |(c, e)| ScaledCyclotomic::from_parts(ring(p, 1), c, 2 * e))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_value(5), b in arb_value(5), c in arb_value(5)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn ring_laws_p7(a in arb_value(7), b in arb_value(7)) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        }
    }
}
