use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gwf_core::builders::{build, builtin_spec, load, BuilderSpec, Family, Workbench, BUILTINS};
use gwf_core::fchar::{chi_orbit, FunctionFile, PieceFunction};
use gwf_core::ffield::ScaledCyclotomic;
use gwf_core::gact::{is_nilpotent_point, orbits, Side, DEFAULT_GROUP_CAP};
use gwf_core::gggr::{GggrContext, OrbitSet};
use gwf_core::report::{with_threads, RunReport};
use gwf_core::ungraded::{jordan, jordan_type, levi_datum, n_map};
use gwf_core::verify::{run_suite, Suite, SuiteOptions};
use gwf_core::{Error, Result};

#[derive(Parser)]
#[command(name = "gwf", version, about = "Exact GGGRs, Fourier transforms and wave front sets on graded Lie algebras over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Builtin algebra
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(BUILTINS))]
    builtin: Option<String>,
    /// Field order for --builtin
    #[arg(long)]
    q: Option<u32>,
    /// Algebra description (JSON)
    #[arg(long, conflicts_with = "builtin", requires = "group")]
    algebra: Option<PathBuf>,
    /// Group generator file (JSON)
    #[arg(long, requires = "algebra")]
    group: Option<PathBuf>,
    /// Worker threads (default: available cores)
    #[arg(long)]
    threads: Option<usize>,
    /// Maximum group order during closure
    #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
    group_cap: usize,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock timings in the report
    #[arg(long)]
    timings: bool,
}

#[derive(Copy, Clone, ValueEnum)]
enum SideArg {
    Primal,
    Dual,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Primal => Side::Primal,
            SideArg::Dual => Side::Dual,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum FunctionKind {
    /// χ of the dual orbit given by --orbit
    Chi,
    /// The constant function 1
    One,
    /// q^N times the indicator of zero
    Regular,
}

#[derive(Copy, Clone, ValueEnum)]
enum FamilyArg {
    Gl,
    Sl,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra and its group; optionally write the description files
    Build {
        #[command(flatten)]
        common: Common,
        /// Custom family instead of --builtin
        #[arg(long, conflicts_with = "builtin", requires = "n")]
        family: Option<FamilyArg>,
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated weight vector for a Z/m grading
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u32>>,
        /// Grading modulus
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        algebra_out: Option<PathBuf>,
        #[arg(long)]
        group_out: Option<PathBuf>,
    },
    /// List the orbits of one piece
    Orbits {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = SideArg::Dual)]
        side: SideArg,
    },
    /// Γ for every nilpotent dual orbit of one degree
    Gggr {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        degree: usize,
    },
    /// Wave front set of a function on one piece
    Wavefront {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        degree: usize,
        #[arg(long, value_enum, conflicts_with = "function_file")]
        function: Option<FunctionKind>,
        /// Dual point index whose orbit defines χ
        #[arg(long)]
        orbit: Option<u64>,
        /// Function table (JSON) on the primal piece
        #[arg(long)]
        function_file: Option<PathBuf>,
    },
    /// Rational asymptotic cone of a set of dual orbits
    Cone {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        degree: usize,
        /// Comma-separated dual point indices; each stands for its orbit
        #[arg(long, value_delimiter = ',', required = true)]
        orbits: Vec<u64>,
    },
    /// Jordan data, Levi blocks, N map and wave front per dual orbit
    Nmap {
        #[command(flatten)]
        common: Common,
    },
    /// Run named verification suites
    Verify {
        /// Suite names, or "all"
        #[arg(required = true)]
        suites: Vec<String>,
        #[command(flatten)]
        common: Common,
        /// Restrict to these degrees (comma-separated)
        #[arg(long, value_delimiter = ',')]
        degree: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Timer {
    enabled: bool,
    phases: BTreeMap<String, f64>,
    last: Instant,
}

impl Timer {
    fn new(enabled: bool) -> Self {
        Timer { enabled, phases: BTreeMap::new(), last: Instant::now() }
    }

    fn lap(&mut self, phase: &str) {
        let now = Instant::now();
        self.phases.insert(phase.to_string(), (now - self.last).as_secs_f64());
        self.last = now;
    }

    fn attach(self, r: &mut RunReport) {
        if self.enabled {
            r.timings = Some(self.phases);
        }
    }
}

fn workbench(c: &Common) -> Result<Workbench> {
    match (&c.builtin, &c.algebra, &c.group) {
        (Some(name), _, _) => {
            let q = c.q.ok_or_else(|| Error::Usage("--builtin needs --q".into()))?;
            build(&builtin_spec(name, q)?.with_cap(c.group_cap))
        }
        (None, Some(a), Some(g)) => load(a, g, c.group_cap),
        _ => Err(Error::Usage("give --builtin with --q, or --algebra with --group".into())),
    }
}

fn args_of(c: &Common, extra: Value) -> Value {
    let mut v = json!({
        "builtin": c.builtin,
        "q": c.q,
        "algebra": c.algebra.as_ref().map(|p| p.display().to_string()),
        "group": c.group.as_ref().map(|p| p.display().to_string()),
        "groupCap": c.group_cap,
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}

fn emit(c: &Common, report: &RunReport) -> Result<()> {
    let text = report.to_json()?;
    match &c.out {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
    }
    Ok(())
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Build { common, .. }
        | Command::Orbits { common, .. }
        | Command::Gggr { common, .. }
        | Command::Wavefront { common, .. }
        | Command::Cone { common, .. }
        | Command::Nmap { common }
        | Command::Verify { common, .. } => common,
    }
}

/// Runs a command; Ok(false) means a verification suite failed.
fn run(cmd: Command) -> Result<bool> {
    let c = common(&cmd).clone();
    let mut timer = Timer::new(c.timings);
    let (name, args, w, result, suites) = match cmd {
        Command::Build { family, n, weights, m, algebra_out, group_out, .. } => {
            let w = match family {
                Some(f) => {
                    let n = n.unwrap_or(0);
                    let fam = match f {
                        FamilyArg::Gl => Family::Gl,
                        FamilyArg::Sl => Family::Sl,
                    };
                    let q = c.q.ok_or_else(|| Error::Usage("--family needs --q".into()))?;
                    let spec = BuilderSpec::graded(fam, n, q, weights.unwrap_or_else(|| vec![0; n]), m).with_cap(c.group_cap);
                    build(&spec)?
                }
                None => workbench(&c)?,
            };
            timer.lap("build");
            if let Some(p) = &algebra_out {
                std::fs::write(p, serde_json::to_string_pretty(&w.algebra.to_file())? + "\n")?;
            }
            if let Some(p) = &group_out {
                std::fs::write(p, serde_json::to_string_pretty(&w.group.to_file())? + "\n")?;
            }
            let result = json!({
                "label": w.algebra.label(),
                "dims": w.algebra.dims(),
                "groupOrder": w.group.order(),
                "generators": w.group.generators().len(),
            });
            let args = args_of(&c, json!({"family": family.map(|f| if matches!(f, FamilyArg::Gl) { "gl" } else { "sl" }), "n": n, "m": m}));
            ("build", args, w, result, None)
        }
        Command::Orbits { degree, side, .. } => {
            let w = workbench(&c)?;
            timer.lap("build");
            let side: Side = side.into();
            let list = orbits(&w.algebra, &w.group, degree, side)?;
            let rows = list
                .iter()
                .map(|o| {
                    let nil = if w.algebra.realisation().is_some() { Some(is_nilpotent_point(&w.algebra, degree, side, o.rep)?) } else { None };
                    Ok(json!({"rep": o.rep, "size": o.len(), "nilpotent": nil}))
                })
                .collect::<Result<Vec<_>>>()?;
            timer.lap("orbits");
            let args = args_of(&c, json!({"degree": degree, "side": side}));
            ("orbits", args, w, json!({"degree": degree, "side": side, "orbits": rows}), None)
        }
        Command::Gggr { degree, .. } => {
            let w = workbench(&c)?;
            timer.lap("build");
            let table = GggrContext::new(&w.algebra, &w.group, degree)?.table()?;
            timer.lap("gggr");
            let args = args_of(&c, json!({"degree": degree}));
            ("gggr", args, w, serde_json::to_value(table)?, None)
        }
        Command::Wavefront { degree, function, orbit, function_file, .. } => {
            let w = workbench(&c)?;
            timer.lap("build");
            let alg = &w.algebra;
            let ctx = GggrContext::new(alg, &w.group, degree)?;
            let ring = alg.field().scalar_ring();
            let (label, f) = match (function, &function_file) {
                (_, Some(p)) => {
                    let file: FunctionFile = serde_json::from_str(&std::fs::read_to_string(p)?)?;
                    (p.display().to_string(), PieceFunction::from_file(alg, &file)?)
                }
                (Some(FunctionKind::Chi), None) => {
                    let idx = orbit.ok_or_else(|| Error::Usage("--function chi needs --orbit".into()))?;
                    if idx >= alg.piece_size(degree)? {
                        return Err(Error::Usage(format!("--orbit {idx} is out of range")));
                    }
                    let k = ctx.orbit_of_point(idx);
                    (format!("chi[{}]", ctx.dual_orbits()[k].rep), chi_orbit(alg, &ctx.dual_orbits()[k])?)
                }
                (Some(FunctionKind::One), None) => ("one".into(), PieceFunction::constant(alg, degree, Side::Primal, &ScaledCyclotomic::one(ring))?),
                (Some(FunctionKind::Regular), None) => {
                    let c = ScaledCyclotomic::one(ring).scale_sqrt_q(2 * alg.dim(degree) as i32);
                    ("regular".into(), PieceFunction::indicator(alg, degree, Side::Primal, &[0], &c)?)
                }
                (None, None) => return Err(Error::Usage("give --function or --function-file".into())),
            };
            let wf = ctx.wavefront(&f)?;
            timer.lap("wavefront");
            let rows = orbit_rows(&w, &wf)?;
            let args = args_of(&c, json!({"degree": degree, "function": label, "orbit": orbit}));
            ("wavefront", args, w, json!({"degree": degree, "function": label, "wavefront": rows}), None)
        }
        Command::Cone { degree, orbits: pts, .. } => {
            let w = workbench(&c)?;
            timer.lap("build");
            let ctx = GggrContext::new(&w.algebra, &w.group, degree)?;
            let size = w.algebra.piece_size(degree)?;
            if let Some(bad) = pts.iter().find(|&&i| i >= size) {
                return Err(Error::Usage(format!("point {bad} is out of range")));
            }
            let reps = pts.iter().map(|&i| ctx.dual_orbits()[ctx.orbit_of_point(i)].rep).collect();
            let s = OrbitSet::new(degree, reps);
            let cone = ctx.cone(&s)?;
            timer.lap("cone");
            let rows = orbit_rows(&w, &cone)?;
            let args = args_of(&c, json!({"degree": degree, "orbits": pts}));
            ("cone", args, w, json!({"degree": degree, "input": s.reps, "cone": rows}), None)
        }
        Command::Nmap { .. } => {
            let w = workbench(&c)?;
            timer.lap("build");
            let rows = nmap_table(&w)?;
            timer.lap("nmap");
            let args = args_of(&c, json!({}));
            ("nmap", args, w, json!({"orbits": rows}), None)
        }
        Command::Verify { suites, degree, seed, .. } => {
            let all = suites.iter().any(|s| s == "all");
            let mut list: Vec<Suite> =
                if all { Suite::ALL.to_vec() } else { suites.iter().map(|s| s.parse()).collect::<Result<_>>()? };
            let w = workbench(&c)?;
            if all {
                list.retain(|s| s.applies_to(&w));
            }
            timer.lap("build");
            let opts = SuiteOptions { seed, degrees: degree.clone(), ..SuiteOptions::default() };
            let mut results = Vec::new();
            for s in &list {
                results.push(run_suite(*s, &w, &opts)?);
                timer.lap(s.name());
            }
            let names: Vec<&str> = list.iter().map(|s| s.name()).collect();
            let args = args_of(&c, json!({"suites": names, "degree": degree, "seed": seed}));
            ("verify", args, w, Value::Null, Some(results))
        }
    };
    let mut report = match &suites {
        Some(results) => RunReport::from_suites(name, &w, &args, results)?,
        None => RunReport::new(name, &w, &args, result)?,
    };
    timer.attach(&mut report);
    emit(&c, &report)?;
    if let Some(results) = &suites {
        for r in results {
            let verdict = if r.passed { "pass" } else { "FAIL" };
            eprintln!("{}: {verdict} ({} checks)", r.suite, r.checks);
            for f in &r.failures {
                eprintln!("  witness: {f}");
            }
        }
    }
    Ok(report.all_passed())
}

/// Orbit list with Jordan types where the algebra is ungraded type A.
fn orbit_rows(w: &Workbench, set: &OrbitSet) -> Result<Vec<Value>> {
    let alg = &w.algebra;
    let type_a = alg.grading_modulus() == 1 && alg.realisation().is_some_and(|r| r.is_type_a());
    set.reps
        .iter()
        .map(|&rep| {
            let part = if type_a { Some(jordan_type(alg, &alg.eta_b(&alg.dual_point(set.degree, rep)))?.to_string()) } else { None };
            Ok(json!({"rep": rep, "partition": part}))
        })
        .collect()
}

fn nmap_table(w: &Workbench) -> Result<Vec<Value>> {
    let alg = &w.algebra;
    let ctx = GggrContext::new(alg, &w.group, 0)?;
    let mut rows = Vec::new();
    for (k, o) in ctx.dual_orbits().iter().enumerate() {
        let x = alg.eta_b(&alg.dual_point(0, o.rep));
        let jp = jordan(alg, &x)?;
        let levi = levi_datum(alg, &x)?;
        let top = n_map(alg, &x)?;
        let wf = ctx.wavefront(ctx.chi(k)?)?;
        let types = wf
            .reps
            .iter()
            .map(|&r| jordan_type(alg, &alg.eta_b(&alg.dual_point(0, r))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(json!({
            "rep": o.rep,
            "size": o.len(),
            "semisimple": jp.x_s.coords.iter().map(|c| c.0).collect::<Vec<_>>(),
            "nilpotent": jp.x_n.coords.iter().map(|c| c.0).collect::<Vec<_>>(),
            "levi": levi,
            "nMap": top.to_string(),
            "wavefront": wf.reps.iter().zip(&types).map(|(r, t)| json!({"rep": r, "partition": t.to_string()})).collect::<Vec<_>>(),
            "upperBound": types.iter().all(|t| t.dominated_by(&top)),
            "attained": types.contains(&top),
        }));
    }
    Ok(rows)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let threads = common(&cli.command).threads;
    let outcome = match threads {
        Some(0) => Err(Error::Usage("--threads must be positive".into())),
        Some(n) => with_threads(n, || run(cli.command)).and_then(|r| r),
        None => run(cli.command),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e @ (Error::Invariant(_) | Error::NotACharacter(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
