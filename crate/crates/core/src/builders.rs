//! gl_n and sl_n with the trace form, optionally ℤ/m-graded by a weight
//! vector, together with the group generated by block-diagonal elementary
//! and diagonal matrices.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{is_prime, FiniteField, Fq};
use crate::gact::{FiniteGroupAction, GeneratorFile, GroupElement, DEFAULT_GROUP_CAP};
use crate::glie::{AlgebraFile, GradedLieAlgebra, MatrixRealisation};
use crate::linalg::Mat;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gl,
    Sl,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuilderSpec {
    pub family: Family,
    pub n: usize,
    pub q: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    pub weights: Vec<u32>,
    pub m: usize,
    pub group_cap: usize,
}

impl BuilderSpec {
    pub fn ungraded(family: Family, n: usize, q: u32) -> Self {
        BuilderSpec { family, n, q, modulus: None, weights: vec![0; n], m: 1, group_cap: DEFAULT_GROUP_CAP }
    }

    pub fn graded(family: Family, n: usize, q: u32, weights: Vec<u32>, m: usize) -> Self {
        BuilderSpec { family, n, q, modulus: None, weights, m, group_cap: DEFAULT_GROUP_CAP }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.group_cap = cap;
        self
    }
}

/// An algebra together with the group acting on it.
#[derive(Clone, Debug)]
pub struct Workbench {
    pub algebra: GradedLieAlgebra,
    pub group: FiniteGroupAction,
}

/// Splits q = p^k.
pub fn prime_power(q: u32) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::Field(format!("{q} is not a prime power")));
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    if !is_prime(p as u64) {
        return Err(Error::Field(format!("{q} is not a prime power")));
    }
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    if r != 1 {
        return Err(Error::Field(format!("{q} is not a prime power")));
    }
    Ok((p, k))
}

pub const BUILTINS: [&str; 5] = ["sl2", "gl2", "gl3", "gl2-z2", "gl3-z3"];

pub fn builtin_spec(name: &str, q: u32) -> Result<BuilderSpec> {
    Ok(match name {
        "sl2" => BuilderSpec::ungraded(Family::Sl, 2, q),
        "gl2" => BuilderSpec::ungraded(Family::Gl, 2, q),
        "gl3" => BuilderSpec::ungraded(Family::Gl, 3, q),
        "gl2-z2" => BuilderSpec::graded(Family::Gl, 2, q, vec![0, 1], 2),
        "gl3-z3" => BuilderSpec::graded(Family::Gl, 3, q, vec![0, 1, 2], 3),
        _ => return Err(Error::Usage(format!("unknown builtin '{name}' (expected one of {})", BUILTINS.join(", ")))),
    })
}

pub fn builtin(name: &str, q: u32) -> Result<Workbench> {
    build(&builtin_spec(name, q)?)
}

fn unit(n: usize, j: usize, k: usize) -> Mat {
    let mut m = Mat::zeros(n, n);
    m.set(j, k, Fq::ONE);
    m
}

/// Basis of each piece: upper off-diagonal E_jk row-major, then the diagonal
/// part (degree 0 only), then lower off-diagonal row-major.
fn piece_bases(f: &FiniteField, spec: &BuilderSpec) -> Vec<Vec<Mat>> {
    let (n, m) = (spec.n, spec.m);
    let deg = |j: usize, k: usize| ((spec.weights[j] as usize + m) - spec.weights[k] as usize % m) % m;
    let mut bases = vec![Vec::new(); m];
    for j in 0..n {
        for k in j + 1..n {
            bases[deg(j, k)].push(unit(n, j, k));
        }
    }
    match spec.family {
        Family::Gl => (0..n).for_each(|j| bases[0].push(unit(n, j, j))),
        Family::Sl => (0..n - 1).for_each(|j| {
            let mut h = unit(n, j, j);
            h.set(j + 1, j + 1, f.neg(Fq::ONE));
            bases[0].push(h)
        }),
    }
    for j in 0..n {
        for k in 0..j {
            bases[deg(j, k)].push(unit(n, j, k));
        }
    }
    bases
}

fn generators(f: &FiniteField, spec: &BuilderSpec) -> Vec<Mat> {
    let n = spec.n;
    let same_block = |j: usize, k: usize| spec.weights[j] as usize % spec.m == spec.weights[k] as usize % spec.m;
    let fp_basis: Vec<Fq> = (0..f.k())
        .map(|i| {
            let mut c = vec![0u32; f.k() as usize];
            c[i as usize] = 1;
            f.from_coeffs(&c)
        })
        .collect();
    let mut gens = Vec::new();
    for j in 0..n {
        for k in 0..n {
            if j != k && same_block(j, k) {
                for &a in &fp_basis {
                    let mut t = Mat::identity(n);
                    t.set(j, k, a);
                    gens.push(t);
                }
            }
        }
    }
    let w = f.primitive_element();
    match spec.family {
        Family::Gl => {
            for j in 0..n {
                let mut d = Mat::identity(n);
                d.set(j, j, w);
                gens.push(d);
            }
        }
        Family::Sl => {
            let winv = f.inv(w).expect("primitive element is nonzero");
            for j in 0..n - 1 {
                let mut d = Mat::identity(n);
                d.set(j, j, w);
                d.set(j + 1, j + 1, winv);
                gens.push(d);
            }
        }
    }
    gens
}

/// Reads an algebra description and a generator file and closes the group.
pub fn load(algebra: &Path, group: &Path, cap: usize) -> Result<Workbench> {
    let file: AlgebraFile = serde_json::from_str(&std::fs::read_to_string(algebra)?)?;
    let algebra = GradedLieAlgebra::from_file(&file)?;
    let gens: GeneratorFile = serde_json::from_str(&std::fs::read_to_string(group)?)?;
    let group = FiniteGroupAction::from_file(&algebra, &gens, cap)?;
    Ok(Workbench { algebra, group })
}

/// Assembles the algebra from matrix commutators and the trace form,
/// validates it, and closes the group.
pub fn build(spec: &BuilderSpec) -> Result<Workbench> {
    let algebra = build_algebra(spec)?;
    let gens = generators(algebra.field(), spec)
        .into_iter()
        .map(|d| GroupElement::from_defining(&algebra, d))
        .collect::<Result<Vec<_>>>()?;
    let group = FiniteGroupAction::close(&algebra, gens, spec.group_cap)?;
    Ok(Workbench { algebra, group })
}

/// The algebra alone, without closing any group.
pub fn build_algebra(spec: &BuilderSpec) -> Result<GradedLieAlgebra> {
    let (p, k) = prime_power(spec.q)?;
    let f = FiniteField::new(p, k, spec.modulus.clone())?;
    let n = spec.n;
    if n == 0 {
        return Err(Error::Usage("matrix size must be at least 1".into()));
    }
    if spec.m == 0 {
        return Err(Error::Usage("grading modulus must be at least 1".into()));
    }
    if spec.weights.len() != n {
        return Err(Error::Usage(format!("weight vector has length {}, expected {n}", spec.weights.len())));
    }
    if spec.family == Family::Sl && n % p as usize == 0 {
        return Err(Error::Algebra(format!("trace form on sl_{n} is degenerate in characteristic {p}")));
    }
    if spec.family == Family::Sl && n < 2 {
        return Err(Error::Usage("sl_n needs n >= 2".into()));
    }
    let m = spec.m;
    let bases = piece_bases(&f, spec);
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let real = MatrixRealisation::new(&f, n, bases.clone(), true)?;
    let mut bracket = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(m);
        for j in 0..m {
            let t = (i + j) % m;
            let mut table = Vec::with_capacity(dims[i] * dims[j] * dims[t]);
            for x in &bases[i] {
                for y in &bases[j] {
                    let c = x.commutator(&f, y);
                    let coords = real
                        .from_matrix(&f, t, &c)
                        .ok_or_else(|| Error::Algebra(format!("commutator leaves degree {t}")))?;
                    table.extend(coords);
                }
            }
            row.push(table);
        }
        bracket.push(row);
    }
    let gram = (0..m)
        .map(|i| {
            let ni = (m - i) % m;
            let rows: Vec<Vec<Fq>> = bases[i]
                .iter()
                .map(|x| bases[ni].iter().map(|y| x.mul(&f, y).trace(&f)).collect())
                .collect();
            if rows.is_empty() {
                Mat::zeros(0, dims[ni])
            } else {
                Mat::from_rows(&rows)
            }
        })
        .collect();
    let label = label_for(spec);
    let algebra = GradedLieAlgebra::new(label, f, dims, bracket, gram, Some(real))?;
    algebra.check_realisation()?;
    Ok(algebra)
}

fn label_for(spec: &BuilderSpec) -> String {
    let fam = match spec.family {
        Family::Gl => "gl",
        Family::Sl => "sl",
    };
    if spec.m == 1 {
        format!("{fam}{}(F_{})", spec.n, spec.q)
    } else {
        let w: Vec<String> = spec.weights.iter().map(u32::to_string).collect();
        format!("{fam}{}(F_{}) Z/{} weights ({})", spec.n, spec.q, spec.m, w.join(","))
    }
}
