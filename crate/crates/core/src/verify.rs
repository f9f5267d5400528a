//! Named verification suites. Each suite runs a family of exact identities
//! over a workbench and reports a pass/fail verdict with concrete witnesses.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::builders::Workbench;
use crate::error::{Error, Result};
use crate::fchar::{chi_orbit, combine_characters, ft, inner, is_invariant_character, negation_table, PieceFunction};
use crate::ffield::ScaledCyclotomic;
use crate::gact::{check_automorphism, is_nilpotent_point, nilpotent_orbits, orbit_lookup, orbit_of, orbits, Side};
use crate::gggr::GggrContext;
use crate::glie::GradedLieAlgebra;
use crate::sl2::all_triples_count;
use crate::ungraded::{check_jordan, induction_dimension_failures, jordan, jordan_type, n_map, n_map_dual};

/// Witnesses kept per suite.
const MAX_WITNESSES: usize = 20;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Fourier,
    OrbitCharacters,
    CharacterTest,
    GggrProperties,
    GggrFtCounting,
    TripleCount,
    WavefrontCone,
    WavefrontBound,
    JordanNmap,
    BuilderValidation,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Fourier,
        Suite::OrbitCharacters,
        Suite::CharacterTest,
        Suite::GggrProperties,
        Suite::GggrFtCounting,
        Suite::TripleCount,
        Suite::WavefrontCone,
        Suite::WavefrontBound,
        Suite::JordanNmap,
        Suite::BuilderValidation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fourier => "fourier",
            Suite::OrbitCharacters => "orbit-characters",
            Suite::CharacterTest => "character-test",
            Suite::GggrProperties => "gggr-properties",
            Suite::GggrFtCounting => "gggr-ft-counting",
            Suite::TripleCount => "triple-count",
            Suite::WavefrontCone => "wavefront-cone",
            Suite::WavefrontBound => "wavefront-bound",
            Suite::JordanNmap => "jordan-nmap",
            Suite::BuilderValidation => "builder-validation",
        }
    }

    /// False for the type A suites on algebras outside that layer.
    pub fn applies_to(self, w: &Workbench) -> bool {
        match self {
            Suite::WavefrontBound | Suite::JordanNmap => crate::ungraded::supports(&w.algebra),
            _ => true,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            Error::Usage(format!("unknown suite '{s}' (expected one of {})", names.join(", ")))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteOptions {
    pub seed: u64,
    /// Degrees to examine; all degrees when empty.
    pub degrees: Vec<usize>,
    pub random_functions: usize,
    pub random_characters: usize,
    pub random_wavefront: usize,
    pub sampled_orbits: usize,
    pub jordan_samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            degrees: Vec::new(),
            random_functions: 200,
            random_characters: 100,
            random_wavefront: 50,
            sampled_orbits: 20,
            jordan_samples: 200,
        }
    }
}

impl SuiteOptions {
    fn degrees(&self, alg: &GradedLieAlgebra) -> Result<Vec<usize>> {
        if self.degrees.is_empty() {
            return Ok((0..alg.grading_modulus()).collect());
        }
        for &d in &self.degrees {
            alg.check_degree(d)?;
        }
        Ok(self.degrees.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub passed: bool,
    pub checks: u64,
    pub failures: Vec<String>,
    pub details: Value,
}

#[derive(Default)]
struct Tally {
    checks: u64,
    failures: Vec<String>,
    failed: u64,
}

impl Tally {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(witness());
        }
    }

    fn fail(&mut self, w: String) {
        self.failed += 1;
        if self.failures.len() < MAX_WITNESSES {
            self.failures.push(w);
        }
    }

    /// Records violated identities as failures; other errors propagate.
    fn absorb<T>(&mut self, r: Result<T>) -> Result<Option<T>> {
        self.checks += 1;
        match r {
            Ok(v) => Ok(Some(v)),
            Err(e @ (Error::Invariant(_) | Error::NotACharacter(_))) => {
                self.fail(e.to_string());
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    fn finish(self, suite: Suite, details: Value) -> SuiteResult {
        SuiteResult { suite, passed: self.failed == 0, checks: self.checks, failures: self.failures, details }
    }
}

pub fn run_suite(suite: Suite, w: &Workbench, opts: &SuiteOptions) -> Result<SuiteResult> {
    match suite {
        Suite::Fourier => fourier(w, opts),
        Suite::OrbitCharacters => orbit_characters(w, opts),
        Suite::CharacterTest => character_test(w, opts),
        Suite::GggrProperties => gggr_properties(w, opts),
        Suite::GggrFtCounting => gggr_ft_counting(w, opts),
        Suite::TripleCount => triple_count(w, opts),
        Suite::WavefrontCone => wavefront_cone(w, opts),
        Suite::WavefrontBound => wavefront_bound(w, opts),
        Suite::JordanNmap => jordan_nmap(w, opts),
        Suite::BuilderValidation => builder_validation(w),
    }
}

fn random_function(alg: &GradedLieAlgebra, degree: usize, side: Side, rng: &mut ChaCha8Rng) -> Result<PieceFunction> {
    let ring = alg.field().scalar_ring();
    let size = alg.piece_size(degree)? as usize;
    let values = (0..size)
        .map(|_| ScaledCyclotomic::from_parts(ring, (0..ring.dim()).map(|_| rng.gen_range(-3..=3)).collect(), 0))
        .collect();
    PieceFunction::from_values(alg, degree, side, values)
}

fn fourier(w: &Workbench, opts: &SuiteOptions) -> Result<SuiteResult> {
    let alg = &w.algebra;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut t = Tally::default();
    let mut details = Vec::new();
    for deg in opts.degrees(alg)? {
        for i in 0..opts.random_functions {
            let f = random_function(alg, deg, Side::Primal, &mut rng)?;
            let g = random_function(alg, deg, Side::Primal, &mut rng)?;
            let ff = ft(alg, &f)?;
            t.check(ft(alg, &ff)? == f.reflect(alg), || format!("degree {deg}, function {i}: FT(FT(f)) ≠ f(-v)"));
            let fg = ft(alg, &g)?;
            t.check(inner(&ff, &fg)? == inner(&f, &g)?, || format!("degree {deg}, function {i}: Plancherel fails"));
        }
        details.push(json!({"degree": deg, "points": alg.piece_size(deg)?, "functions": opts.random_functions}));
    }
    Ok(t.finish(Suite::Fourier, json!({ "pieces": details })))
}

fn orbit_characters(w: &Workbench, opts: &SuiteOptions) -> Result<SuiteResult> {
    let alg = &w.algebra;
    let ring = alg.field().scalar_ring();
    let mut t = Tally::default();
    let mut details = Vec::new();
    for deg in opts.degrees(alg)? {
        let dual = orbits(alg, &w.group, deg, Side::Dual)?;
        let lookup = orbit_lookup(&dual, alg.piece_size(deg)?);
        let neg = negation_table(alg, deg);
        let chis = dual.iter().map(|o| chi_orbit(alg, o)).collect::<Result<Vec<_>>>()?;
        let scale = ScaledCyclotomic::one(ring).scale_sqrt_q(alg.dim(deg) as i32);
        for (k, o) in dual.iter().enumerate() {
            let expect = PieceFunction::indicator(alg, deg, Side::Dual, &o.points, &scale)?;
            t.check(ft(alg, &chis[k])? == expect, || format!("degree {deg}, orbit {}: FT(χ) ≠ q^(N/2)·1_O", o.rep));
            let minus = lookup[neg[o.rep as usize] as usize] as usize;
            t.check(chis[k].conj() == chis[minus], || format!("degree {deg}, orbit {}: conj(χ_O) ≠ χ_(-O)", o.rep));
        }
        details.push(json!({"degree": deg, "orbits": dual.len()}));
    }
    Ok(t.finish(Suite::OrbitCharacters, json!({ "pieces": details })))
}

fn character_test(w: &Workbench, opts: &SuiteOptions) -> Result<SuiteResult> {
    let alg = &w.algebra;
    let ring = alg.field().scalar_ring();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut t = Tally::default();
    let mut details = Vec::new();
    for deg in opts.degrees(alg)? {
        let dual = orbits(alg, &w.group, deg, Side::Dual)?;
        let chis = dual.iter().map(|o| Ok((o.rep, chi_orbit(alg, o)?))).collect::<Result<Vec<_>>>()?;
        let size = alg.piece_size(deg)?;
        for trial in 0..opts.random_characters {
            let mult: BTreeMap<u64, u64> = dual.iter().map(|o| (o.rep, rng.gen_range(0..=3))).collect();
            let f = combine_characters(alg, &chis, &mult)?;
            let want: BTreeMap<u64, u64> = mult.into_iter().filter(|&(_, m)| m > 0).collect();
            match t.absorb(is_invariant_character(alg, &f, &dual))? {
                Some(dec) => t.check(dec.multiplicities == want, || format!("degree {deg}, trial {trial}: multiplicities not recovered")),
                None => continue,
            }
            let mut g = f.clone();
            let at = rng.gen_range(0..size);
            g.set(at, g.get(at) + &ScaledCyclotomic::one(ring));
            let rejected = matches!(is_invariant_character(alg, &g, &dual), Err(Error::NotACharacter(_)));
            t.check(rejected, || format!("degree {deg}, trial {trial}: perturbation at point {at} still accepted"));
        }
        details.push(json!({"degree": deg, "orbits": dual.len(), "trials": opts.random_characters}));
    }
    Ok(t.finish(Suite::CharacterTest, json!({ "pieces": details })))
}

fn gggr_properties(w: &Workbench, opts: &SuiteOptions) -> Result<SuiteResult> {
    let alg = &w.algebra;
    let mut t = Tally::default();
    let mut details = Vec::new();
    for deg in opts.degrees(alg)? {
        let ctx = GggrContext::new(alg, &w.group, deg)?;
        let mut rows = Vec::new();
        for d in ctx.nilpotent() {
            let o = &ctx.dual_orbits()[d.orbit];
            let gamma = ctx.gamma_direct(o)?;
            let support = gamma.support();
            for &x in &support {
                t.check(is_nilpotent_point(alg, deg, Side::Primal, x)?, || {
                    format!("degree {deg}, orbit {}: Γ is nonzero at non-nilpotent point {x}", o.rep)
                });
            }
            let hat = ft(alg, gamma)?;
            let mult = t.absorb(crate::fchar::decompose_transform(alg, &hat, ctx.dual_orbits()))?;
            let mut hits = Vec::new();
            for other in ctx.dual_orbits() {
                if let Some(p) = t.absorb(ctx.pairing(other, o))? {
                    if p.slice_hit {
                        hits.push(other.rep);
                    }
                }
            }
            rows.push(json!({
                "orbit": o.rep,
                "orbitSize": o.len(),
                "negDim": d.neg_dim,
                "supportSize": support.len(),
                "ftMultiplicities": mult.map(|m| m.multiplicities),
                "sliceHits": hits,
            }));
        }
        details.push(json!({"degree": deg, "dualOrbits": ctx.dual_orbits().len(), "nilpotent": rows}));
    }
    Ok(t.finish(Suite::GggrProperties, json!({ "pieces": details })))
}

fn gggr_ft_counting(w: &Workbench, opts: &SuiteOptions) -> Result<SuiteResult> {
    let alg = &w.algebra;
    let mut t = Tally::default();
    let mut details = Vec::new();
    for deg in opts.degrees(alg)? {
        let ctx = GggrContext::new(alg, &w.group, deg)?;
        for d in ctx.nilpotent() {
            let o = &ctx.dual_orbits()[d.orbit];
            let direct = ft(alg, ctx.gamma_direct(o)?)?;
            let counted = ctx.gamma_ft_counting_all(o)?;
            for (b, (x, y)) in direct.values().iter().zip(counted.values()).enumerate() {
                t.check(x == y, || format!("degree {deg}, orbit {}, β = {b}: direct {x} vs counting {y}", o.rep));
            }
        }
        details.push(json!({"degree": deg, "nilpotentOrbits": ctx.nilpotent().len(), "points": alg.piece_size(deg)?}));
    }
    Ok(t.finish(Suite::GggrFtCounting, json!({ "pieces": details })))
}

fn triple_count(w: &Workbench, opts: &SuiteOptions) -> Result<SuiteResult> {
    let alg = &w.algebra;
    let mut t = Tally::default();
    let mut rows = Vec::new();
    for deg in opts.degrees(alg)? {
        for o in nilpotent_orbits(alg, &w.group, deg, Side::Primal)? {
            if o.rep == 0 {
                continue;
            }
            let c = all_triples_count(alg, &alg.point(deg, o.rep))?;
            t.check(c.count == c.expected, || {
                format!("degree {deg}, orbit {}: {} triples, expected {}", o.rep, c.count, c.expected)
            });
            rows.push(json!({"degree": deg, "orbit": o.rep, "count": c.count, "expected": c.expected}));
        }
    }
    Ok(t.finish(Suite::TripleCount, json!({ "orbits": rows })))
}

fn wavefront_cone(w: &Workbench, opts: &SuiteOptions) -> Result<SuiteResult> {
    let alg = &w.algebra;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut t = Tally::default();
    let mut details = Vec::new();
    for deg in opts.degrees(alg)? {
        let ctx = GggrContext::new(alg, &w.group, deg)?;
        let mut rows = Vec::new();
        for (k, o) in ctx.dual_orbits().iter().enumerate() {
            let chi = ctx.chi(k)?;
            let wf = ctx.wavefront(chi)?;
            let cone = ctx.cone_of_transform(chi)?;
            t.check(wf == cone, || format!("degree {deg}, χ of orbit {}: WF {:?} vs cone {:?}", o.rep, wf.reps, cone.reps));
            rows.push(json!({"orbit": o.rep, "wavefront": wf.reps}));
        }
        let chis = (0..ctx.dual_orbits().len()).map(|k| Ok((ctx.dual_orbits()[k].rep, ctx.chi(k)?.clone()))).collect::<Result<Vec<_>>>()?;
        let mut random = Vec::new();
        for trial in 0..opts.random_wavefront {
            let mut mult = BTreeMap::new();
            for (rep, _) in &chis {
                if rng.gen_ratio(1, 4) {
                    mult.insert(*rep, rng.gen_range(1..=3));
                }
            }
            if mult.is_empty() {
                mult.insert(chis[rng.gen_range(0..chis.len())].0, 1);
            }
            let f = combine_characters(alg, &chis, &mult)?;
            let wf = ctx.wavefront(&f)?;
            let cone = ctx.cone_of_transform(&f)?;
            t.check(wf == cone, || format!("degree {deg}, random character {trial}: WF {:?} vs cone {:?}", wf.reps, cone.reps));
            random.push(wf.reps);
        }
        details.push(json!({"degree": deg, "characters": rows, "random": random}));
    }
    Ok(t.finish(Suite::WavefrontCone, json!({ "pieces": details })))
}

fn wavefront_bound(w: &Workbench, _opts: &SuiteOptions) -> Result<SuiteResult> {
    let alg = &w.algebra;
    let mut t = Tally::default();
    let ctx = GggrContext::new(alg, &w.group, 0)?;
    let mut rows = Vec::new();
    for (k, o) in ctx.dual_orbits().iter().enumerate() {
        let top = n_map_dual(alg, &alg.dual_point(0, o.rep))?;
        let wf = ctx.wavefront(ctx.chi(k)?)?;
        let mut entries = Vec::new();
        let mut attained = false;
        for &rep in &wf.reps {
            let lam = jordan_type(alg, &alg.eta_b(&alg.dual_point(0, rep)))?;
            t.check(lam.dominated_by(&top), || format!("orbit {}: WF orbit {rep} of type {lam} exceeds {top}", o.rep));
            attained |= lam == top;
            entries.push(json!({"orbit": rep, "partition": lam.to_string()}));
        }
        t.check(attained, || format!("orbit {}: no WF orbit has type {top}", o.rep));
        rows.push(json!({"orbit": o.rep, "nMap": top.to_string(), "wavefront": entries}));
    }
    Ok(t.finish(Suite::WavefrontBound, json!({ "orbits": rows })))
}

fn jordan_nmap(w: &Workbench, opts: &SuiteOptions) -> Result<SuiteResult> {
    let alg = &w.algebra;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut t = Tally::default();
    let size = alg.piece_size(0)?;
    let exhaustive = size <= 1000;
    let points: Vec<u64> = if exhaustive { (0..size).collect() } else { (0..opts.jordan_samples).map(|_| rng.gen_range(0..size)).collect() };
    for &i in &points {
        let x = alg.point(0, i);
        let jp = jordan(alg, &x)?;
        t.absorb(check_jordan(alg, &x, &jp))?;
    }
    let mut sampled = Vec::new();
    for _ in 0..opts.sampled_orbits {
        let start = rng.gen_range(0..size);
        let o = orbit_of(alg, &w.group, 0, Side::Primal, start)?;
        let top = n_map(alg, &alg.point(0, o.rep))?;
        for &x in &o.points {
            let v = n_map(alg, &alg.point(0, x))?;
            t.check(v == top, || format!("orbit {}: 𝒩 is {top} at the representative but {v} at point {x}", o.rep));
        }
        sampled.push(json!({"orbit": o.rep, "size": o.len(), "nMap": top.to_string()}));
    }
    let dim_failures = induction_dimension_failures(4);
    let pairs = dim_failures.0;
    for f in dim_failures.1 {
        t.fail(f);
    }
    t.checks += pairs as u64;
    Ok(t.finish(
        Suite::JordanNmap,
        json!({"jordanPoints": points.len(), "exhaustive": exhaustive, "orbits": sampled, "inductionPairs": pairs}),
    ))
}

fn builder_validation(w: &Workbench) -> Result<SuiteResult> {
    let alg = &w.algebra;
    let fl = alg.field();
    let mut t = Tally::default();
    let as_failure = |r: Result<()>| match r {
        Err(Error::Algebra(m)) => Err(Error::Invariant(m)),
        other => other,
    };
    t.absorb(as_failure(alg.validate()))?;
    t.absorb(as_failure(alg.check_realisation()))?;
    if let Some(real) = alg.realisation() {
        let m = alg.grading_modulus();
        for i in 0..m {
            for j in 0..m {
                for (a, x) in real.basis(i).iter().enumerate() {
                    for (b, y) in real.basis(j).iter().enumerate() {
                        let tr = x.mul(fl, y).trace(fl);
                        if (i + j) % m == 0 {
                            t.check(alg.gram(i).get(a, b) == tr, || format!("Gram entry ({i}:{a}, {j}:{b}) differs from the trace form"));
                        } else {
                            t.check(tr.is_zero(), || format!("degrees {i} and {j} are not orthogonal at basis pair ({a}, {b})"));
                        }
                    }
                }
            }
        }
    }
    for (k, g) in w.group.generators().iter().enumerate() {
        let r = check_automorphism(alg, g).map_err(|e| Error::Invariant(format!("generator {k}: {e}")));
        t.absorb(r)?;
    }
    Ok(t.finish(
        Suite::BuilderValidation,
        json!({"label": alg.label(), "dims": alg.dims(), "groupOrder": w.group.order(), "generators": w.group.generators().len()}),
    ))
}
