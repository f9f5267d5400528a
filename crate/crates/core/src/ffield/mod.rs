//! Exact arithmetic in 𝔽_q = 𝔽_p[t]/(m(t)) and in the scalar ring of
//! p-th cyclotomic integers carrying a symbolic power of √q.
//!
//! Field elements are stored as the mixed-radix integer `Σ c_i p^i` of their
//! coefficient vector `(c_0, …, c_{k-1})`, least significant first. For prime
//! fields this is the usual residue. Extension-field multiplication goes
//! through discrete log tables built once at construction.

mod cyclotomic;
pub mod poly;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use cyclotomic::{ScalarRing, ScaledCyclotomic};

use crate::error::{Error, Result};

/// Largest field order the workbench accepts.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// An element of 𝔽_q, encoded by the mixed-radix index of its coefficients.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
struct Tables {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, coefficients low to high (length k + 1).
    modulus: Vec<u32>,
    /// `exp[i] = ω^i` for a fixed primitive element ω, length q - 1.
    exp: Vec<u32>,
    /// `log[a]` for a ≠ 0; `log[0]` is unused.
    log: Vec<u32>,
    trace: Vec<u32>,
    /// Powers p^i for digit extraction.
    pow_p: Vec<u32>,
}

/// The finite field 𝔽_{p^k}. Cheap to clone.
#[derive(Clone)]
pub struct FiniteField {
    t: Arc<Tables>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.t.p, self.t.k, self.t.modulus)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.t.p == other.t.p && self.t.k == other.t.k && self.t.modulus == other.t.modulus
    }
}

impl Eq for FiniteField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FiniteField {
    /// The prime field 𝔽_p.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// Builds 𝔽_{p^k}. Without an explicit modulus the lexicographically least
    /// monic irreducible polynomial of degree k is used, where candidates are
    /// ordered by the mixed-radix index of their lower coefficients.
    pub fn new(p: u32, k: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::Field(format!("p = {p} is not prime")));
        }
        if p < 3 {
            return Err(Error::Field("characteristic 2 is not supported".into()));
        }
        if k == 0 {
            return Err(Error::Field("extension degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or_else(|| Error::Field(format!("q = {p}^{k} exceeds {MAX_FIELD_ORDER}")))?
            as u32;
        let mut pow_p = vec![1u32; k as usize + 1];
        for i in 1..=k as usize {
            pow_p[i] = pow_p[i - 1] * p;
        }

        let modulus = if k == 1 {
            if let Some(m) = &modulus {
                if m.len() != 2 || m[1] != 1 || m[0] >= p {
                    return Err(Error::Field("modulus for k = 1 must be monic of degree 1".into()));
                }
            }
            modulus.unwrap_or_else(|| vec![0, 1])
        } else {
            let fp = FiniteField::prime(p)?;
            match modulus {
                Some(m) => {
                    if m.len() != k as usize + 1 || *m.last().unwrap() != 1 {
                        return Err(Error::Field(format!("modulus must be monic of degree {k}")));
                    }
                    if m.iter().any(|&c| c >= p) {
                        return Err(Error::Field("modulus coefficients must lie in [0, p)".into()));
                    }
                    let poly: Vec<Fq> = m.iter().map(|&c| Fq(c)).collect();
                    if !poly::is_irreducible(&fp, &poly) {
                        return Err(Error::Field(format!("modulus {m:?} is reducible over F_{p}")));
                    }
                    m
                }
                None => least_irreducible(&fp, k),
            }
        };

        let mut t = Tables {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            trace: Vec::new(),
            pow_p,
        };
        build_log_tables(&mut t)?;
        let field = FiniteField { t: Arc::new(t) };
        let trace: Vec<u32> = (0..q).map(|a| field.trace_slow(Fq(a))).collect();
        let mut t = Arc::try_unwrap(field.t).expect("fresh arc");
        t.trace = trace;
        Ok(FiniteField { t: Arc::new(t) })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.t.p
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.t.k
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.t.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    pub fn scalar_ring(&self) -> ScalarRing {
        ScalarRing::new(self.t.p, self.t.k)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.t.q).map(Fq)
    }

    /// Element from its coefficient vector (c_0, …, c_{k-1}).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Fq {
        debug_assert!(coeffs.len() <= self.t.k as usize);
        let mut idx = 0u32;
        for (i, &c) in coeffs.iter().enumerate() {
            idx += (c % self.t.p) * self.t.pow_p[i];
        }
        Fq(idx)
    }

    pub fn coeffs(&self, a: Fq) -> Vec<u32> {
        (0..self.t.k as usize)
            .map(|i| (a.0 / self.t.pow_p[i]) % self.t.p)
            .collect()
    }

    /// Image of an integer under ℤ → 𝔽_p ⊂ 𝔽_q.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.t.p as i64) as u32)
    }

    /// Checks that `a` is a canonical element of this field.
    pub fn contains(&self, a: Fq) -> bool {
        a.0 < self.t.q
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let p = self.t.p;
        if self.t.k == 1 {
            let s = a.0 + b.0;
            return Fq(if s >= p { s - p } else { s });
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Fq(out)
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        let p = self.t.p;
        if self.t.k == 1 {
            return Fq(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        Fq(out)
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        if self.t.k == 1 {
            return Fq(((a.0 as u64 * b.0 as u64) % self.t.p as u64) as u32);
        }
        let n = self.t.q - 1;
        let l = self.t.log[a.0 as usize] + self.t.log[b.0 as usize];
        Fq(self.t.exp[(if l >= n { l - n } else { l }) as usize])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.t.q - 1;
        let l = self.t.log[a.0 as usize];
        Ok(Fq(self.t.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.0 == 0 {
            return Fq::ZERO;
        }
        let n = (self.t.q - 1) as u64;
        let l = (self.t.log[a.0 as usize] as u64 * (e % n)) % n;
        Fq(self.t.exp[l as usize])
    }

    /// A fixed generator of 𝔽_q^×.
    pub fn primitive_element(&self) -> Fq {
        Fq(self.t.exp[1 % self.t.exp.len()])
    }

    /// Tr_{𝔽_q/𝔽_p}(a) as a residue in [0, p).
    #[inline]
    pub fn trace_to_prime(&self, a: Fq) -> u32 {
        self.t.trace[a.0 as usize]
    }

    fn trace_slow(&self, a: Fq) -> u32 {
        let mut acc = Fq::ZERO;
        let mut x = a;
        for _ in 0..self.t.k {
            acc = self.add(acc, x);
            x = self.pow(x, self.t.p as u64);
        }
        debug_assert!(acc.0 < self.t.p, "trace must land in the prime field");
        acc.0
    }

    /// χ(a) = ζ_p^{Tr(a)} with χ_0(x) = ζ_p^x.
    pub fn additive_character(&self, a: Fq) -> ScaledCyclotomic {
        ScaledCyclotomic::zeta_pow(self.scalar_ring(), self.trace_to_prime(a) as i64)
    }

    /// Symmetric integer lift of an element of the prime subfield.
    pub fn symmetric_lift(&self, a: Fq) -> Option<i64> {
        if a.0 >= self.t.p {
            return None;
        }
        let p = self.t.p as i64;
        let v = a.0 as i64;
        Some(if v > p / 2 { v - p } else { v })
    }
}

/// Multiplies two residue polynomials of degree < k modulo the monic modulus.
fn mulmod_digits(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for d in (k..2 * k).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (j, &m) in modulus[..k].iter().enumerate() {
            let sub = (c * m as u64) % p as u64;
            prod[d - k + j] = (prod[d - k + j] + p as u64 - sub) % p as u64;
        }
    }
    prod.truncate(k);
    prod.into_iter().map(|c| c as u32).collect()
}

fn build_log_tables(t: &mut Tables) -> Result<()> {
    let (p, k, q) = (t.p, t.k as usize, t.q);
    let to_digits = |mut a: u32| -> Vec<u32> {
        let mut d = vec![0u32; k];
        for slot in d.iter_mut() {
            *slot = a % p;
            a /= p;
        }
        d
    };
    let from_digits = |d: &[u32]| -> u32 { d.iter().rev().fold(0u32, |acc, &c| acc * p + c) };
    let n = (q - 1) as usize;
    for cand in 1..q {
        let g = to_digits(cand);
        let mut exp = Vec::with_capacity(n);
        let mut x = to_digits(1);
        let mut ok = true;
        for i in 0..n {
            let idx = from_digits(&x);
            if i > 0 && idx == 1 {
                ok = false;
                break;
            }
            exp.push(idx);
            x = if k == 1 {
                vec![((x[0] as u64 * g[0] as u64) % p as u64) as u32]
            } else {
                mulmod_digits(&x, &g, &t.modulus, p)
            };
        }
        if ok && from_digits(&x) == 1 {
            let mut log = vec![0u32; q as usize];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            t.exp = exp;
            t.log = log;
            return Ok(());
        }
    }
    Err(Error::Field("no primitive element found; modulus is not irreducible".into()))
}

fn least_irreducible(fp: &FiniteField, k: u32) -> Vec<u32> {
    let p = fp.p() as u64;
    let count = p.pow(k);
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(k as usize + 1);
        let mut x = idx;
        for _ in 0..k {
            coeffs.push((x % p) as u32);
            x /= p;
        }
        coeffs.push(1);
        let poly: Vec<Fq> = coeffs.iter().map(|&c| Fq(c)).collect();
        if poly::is_irreducible(fp, &poly) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over a finite field")
}
