//! Dense univariate polynomials over 𝔽_q, coefficients low to high.
//!
//! The zero polynomial is the empty vector; every function returns trimmed
//! output.

use super::{FiniteField, Fq};

pub type Poly = Vec<Fq>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub fn degree(a: &[Fq]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn add(f: &FiniteField, a: &[Fq], b: &[Fq]) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(Fq::ZERO);
            let y = b.get(i).copied().unwrap_or(Fq::ZERO);
            f.add(x, y)
        })
        .collect();
    trim(out)
}

pub fn sub(f: &FiniteField, a: &[Fq], b: &[Fq]) -> Poly {
    let nb: Poly = b.iter().map(|&c| f.neg(c)).collect();
    add(f, a, &nb)
}

pub fn mul(f: &FiniteField, a: &[Fq], b: &[Fq]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Fq::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Quotient and remainder; panics on division by the zero polynomial.
pub fn divrem(f: &FiniteField, a: &[Fq], b: &[Fq]) -> (Poly, Poly) {
    let db = degree(b).expect("polynomial division by zero");
    let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut r: Poly = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quo = vec![Fq::ZERO; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        quo[dr - db] = c;
        for (j, &bj) in b[..=db].iter().enumerate() {
            let idx = dr - db + j;
            r[idx] = f.sub(r[idx], f.mul(c, bj));
        }
        r = trim(r);
    }
    (trim(quo), r)
}

pub fn monic(f: &FiniteField, a: &[Fq]) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = f.inv(a[d]).expect("nonzero");
            a[..=d].iter().map(|&c| f.mul(c, inv)).collect()
        }
    }
}

pub fn gcd(f: &FiniteField, a: &[Fq], b: &[Fq]) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn derivative(f: &FiniteField, a: &[Fq]) -> Poly {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
        .collect();
    trim(out)
}

/// All monic polynomials of the given degree, in mixed-radix order of their
/// lower coefficients.
fn monic_of_degree(f: &FiniteField, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = f.q() as u64;
    let count = q.pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(Fq((idx % q) as u32));
            idx /= q;
        }
        c.push(Fq::ONE);
        c
    })
}

/// Factorisation of a nonzero polynomial into monic irreducibles with
/// multiplicities, by trial division in order of increasing degree. Factors
/// are reported in discovery order; the leading coefficient is dropped.
pub fn factor(f: &FiniteField, a: &[Fq]) -> Vec<(Poly, usize)> {
    let mut rest = monic(f, a);
    let mut out = Vec::new();
    let mut d = 1;
    while let Some(deg) = degree(&rest) {
        if deg == 0 {
            break;
        }
        if 2 * d > deg {
            out.push((rest.clone(), 1));
            break;
        }
        let mut found = false;
        for cand in monic_of_degree(f, d) {
            let (quo, r) = divrem(f, &rest, &cand);
            if r.is_empty() {
                let mut mult = 1;
                rest = quo;
                loop {
                    let (quo, r) = divrem(f, &rest, &cand);
                    if !r.is_empty() {
                        break;
                    }
                    mult += 1;
                    rest = quo;
                }
                out.push((cand, mult));
                found = true;
                break;
            }
        }
        if !found {
            d += 1;
        }
    }
    merge_factors(out)
}

fn merge_factors(factors: Vec<(Poly, usize)>) -> Vec<(Poly, usize)> {
    let mut merged: Vec<(Poly, usize)> = Vec::new();
    for (p, m) in factors {
        if let Some(slot) = merged.iter_mut().find(|(x, _)| *x == p) {
            slot.1 += m;
        } else {
            merged.push((p, m));
        }
    }
    merged
}

pub fn is_irreducible(f: &FiniteField, a: &[Fq]) -> bool {
    match degree(a) {
        None | Some(0) => false,
        Some(_) => {
            let fac = factor(f, a);
            fac.len() == 1 && fac[0].1 == 1
        }
    }
}

/// Product of the distinct monic irreducible factors.
pub fn squarefree_part(f: &FiniteField, a: &[Fq]) -> Poly {
    factor(f, a)
        .into_iter()
        .fold(vec![Fq::ONE], |acc, (p, _)| mul(f, &acc, &p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[u32]) -> Poly {
        c.iter().map(|&x| Fq(x)).collect()
    }

    #[test]
    fn factor_small() {
        let f5 = FiniteField::prime(5).unwrap();
        // (t - 1)^2 (t^2 + 2): t^2 + 2 irreducible mod 5 since -2 = 3 is a non-square
        let a = mul(&f5, &mul(&f5, &p(&[4, 1]), &p(&[4, 1])), &p(&[2, 0, 1]));
        let fac = factor(&f5, &a);
        assert_eq!(fac, vec![(p(&[4, 1]), 2), (p(&[2, 0, 1]), 1)]);
        assert_eq!(squarefree_part(&f5, &a), mul(&f5, &p(&[4, 1]), &p(&[2, 0, 1])));
    }

    #[test]
    fn pth_power_in_char_three() {
        // (t - 1)^3 has zero derivative in characteristic 3
        let f3 = FiniteField::prime(3).unwrap();
        let a = mul(&f3, &mul(&f3, &p(&[2, 1]), &p(&[2, 1])), &p(&[2, 1]));
        assert!(derivative(&f3, &a).is_empty());
        assert_eq!(squarefree_part(&f3, &a), p(&[2, 1]));
    }

    #[test]
    fn divrem_roundtrip() {
        let f7 = FiniteField::prime(7).unwrap();
        let a = p(&[3, 1, 4, 1, 5]);
        let b = p(&[2, 6, 1]);
        let (qq, r) = divrem(&f7, &a, &b);
        assert_eq!(add(&f7, &mul(&f7, &qq, &b), &r), a);
        assert!(degree(&r).map_or(true, |d| d < 2));
    }
}
