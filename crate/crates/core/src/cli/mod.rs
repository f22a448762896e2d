//! Command line front end: `homology`, `s`, `verify`, `complex` and `corpus`.
//!
//! Every command takes one diagram (`--pd`) or a batch file (`--file`); batch
//! items run in parallel and are reported in input order. JSON output follows
//! the `eqkh/1` schema documented in `docs/json-schema.md`.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::coeff::BaseRing;
use crate::complex::{matrix_identities, mirror_dual_iso, split_reduced, CubeComplex, Reduction};
use crate::diagram::corpus::corpus_batch;
use crate::diagram::{parse_batch, parse_pd, LinkDiagram, NamedDiagram};
use crate::frobenius::{identity_suite, Theory, TheoryKind};
use crate::homology::{homology, nu_acyclicity};
use crate::lee::{link_basis_via_nu, s_invariant, su2_transfer, SInvariantReport};
use crate::{Error, Result};

pub const SCHEMA: &str = "eqkh/1";

#[derive(Parser, Debug)]
#[command(name = "eqkh", version, about = "Equivariant Khovanov homology with exact arithmetic")]
pub struct Cli {
    /// Worker threads for batch jobs (default: all cores).
    #[arg(long, global = true, env = "EQKH_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Homology as a bigraded module over the theory's ground ring.
    Homology {
        #[command(flatten)]
        job: Job,
    },
    /// Rasmussen s-invariant of a knot, by both routes.
    S {
        #[command(flatten)]
        job: Job,
    },
    /// Runs a verification suite and reports pass/fail per property.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Random samples per identity (frobenius suite).
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        job: Job,
    },
    /// Dumps the chain complex (generators and differentials) as JSON.
    Complex {
        #[command(flatten)]
        job: Job,
    },
    /// Prints the built-in regression corpus as a batch file.
    Corpus,
}

#[derive(Args, Debug, Clone)]
pub struct Job {
    /// A PD code, `PD[X[a,b,c,d],...]` or `[[a,b,c,d],...]`.
    #[arg(long, conflicts_with = "file")]
    pub pd: Option<String>,
    /// A batch file: one diagram per line, optional leading name, `#` comments.
    #[arg(long)]
    pub file: Option<std::path::PathBuf>,
    /// u2, u1, u1xu1, su2, su2sqrt or plain.
    #[arg(long, default_value = "u1")]
    pub theory: String,
    /// z, q or f<p>.
    #[arg(long, default_value = "q")]
    pub field: String,
    /// Use the reduced complex at the basepoint.
    #[arg(long)]
    pub reduced: bool,
    /// Arc label of the basepoint (default: the smallest label).
    #[arg(long)]
    pub basepoint: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Frobenius-algebra identities on random inputs (no diagram needed).
    Frobenius,
    /// Matrix identities on the complex of each diagram.
    Matrix,
    /// The splitting of the unreduced complex into two reduced ones.
    Splitting,
    /// Acyclicity of ν̂ on U(1) homology.
    NuAcyclic,
    /// The chain isomorphism between a mirror's complex and the dual.
    Mirror,
    /// Transfer of the Lee cycles to the SU(2) theory.
    Su2,
    /// The link basis built from reduced homology and ν̂.
    LinkBasis,
}

/// One batch item's outcome: a JSON value and its table rendering.
struct Item {
    name: String,
    out: Result<(Value, String)>,
}

impl Job {
    fn theory(&self) -> Result<Theory> {
        Theory::new(TheoryKind::parse(&self.theory)?, BaseRing::parse(&self.field)?)
    }

    fn diagrams(&self) -> Result<Vec<NamedDiagram>> {
        let mut items = match (&self.pd, &self.file) {
            (Some(pd), None) => vec![NamedDiagram { name: "input".into(), diagram: parse_pd(pd)? }],
            (None, Some(path)) => parse_batch(&std::fs::read_to_string(path)?)?,
            _ => return Err(Error::Parse("give exactly one of --pd and --file".into())),
        };
        if let Some(arc) = self.basepoint {
            for it in &mut items {
                it.diagram = it.diagram.clone().with_basepoint(arc)?;
            }
        }
        Ok(items)
    }

    fn reduction(&self) -> Reduction {
        if self.reduced {
            Reduction::Lee
        } else {
            Reduction::Unreduced
        }
    }

    fn build(&self, d: &LinkDiagram) -> Result<CubeComplex> {
        CubeComplex::build(d, &self.theory()?, self.reduction())
    }
}

fn homology_item(job: &Job, d: &LinkDiagram) -> Result<(Value, String)> {
    let h = homology(&job.build(d)?)?;
    let mut v = h.module.to_json();
    v["theory"] = json!(job.theory()?.to_string());
    v["reduced"] = json!(job.reduced);
    Ok((v, h.module.table()))
}

fn s_table(r: &SInvariantReport) -> String {
    format!(
        "s = {} (formula 2*{} + {} - {} + 1; unreduced {}, reduced {}) over {}, free q = {:?}, reduced q = {}\n",
        r.s, r.d_h, r.writhe, r.seifert_circles, r.s_unreduced, r.s_reduced, r.field, r.free_gradings, r.reduced_grading
    )
}

fn s_item(job: &Job, d: &LinkDiagram) -> Result<(Value, String)> {
    let r = s_invariant(d, BaseRing::parse(&job.field)?)?;
    Ok((jv(&r), s_table(&r)))
}

fn complex_item(job: &Job, d: &LinkDiagram) -> Result<(Value, String)> {
    let v = job.build(d)?.to_json();
    let text = serde_json::to_string_pretty(&v).expect("json") + "\n";
    Ok((v, text))
}

fn jv<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable report")
}

/// One property's outcome inside a verification report.
fn check(name: &str, r: Result<Value>) -> Result<Value> {
    match r {
        Ok(detail) => Ok(json!({ "property": name, "passed": true, "detail": detail })),
        Err(Error::Verification(msg)) | Err(Error::NotDivisible(msg)) => {
            Ok(json!({ "property": name, "passed": false, "counterexample": msg }))
        }
        Err(e) => Err(e),
    }
}

fn verify_item(job: &Job, suite: Suite, d: &LinkDiagram) -> Result<Vec<Value>> {
    let base = BaseRing::parse(&job.field)?;
    let out = match suite {
        Suite::Frobenius => unreachable!("handled without diagrams"),
        Suite::Matrix => matrix_identities(&job.build(d)?)?
            .into_iter()
            .map(|m| match m.failure {
                None => json!({ "property": m.name, "passed": true, "detail": { "columns": m.columns } }),
                Some(f) => json!({ "property": m.name, "passed": false, "counterexample": f }),
            })
            .collect(),
        Suite::Splitting => {
            let c = CubeComplex::build(d, &job.theory()?, Reduction::Unreduced)?;
            vec![check("splitting", split_reduced(&c).and_then(|s| s.verify()).map(|r| jv(&r)))?]
        }
        Suite::NuAcyclic => {
            let c = CubeComplex::build(d, &Theory::new(TheoryKind::U1, base)?, Reduction::Unreduced)?;
            let r = nu_acyclicity(&c)?;
            let value = jv(&r);
            if r.is_acyclic() {
                vec![json!({ "property": "nu-acyclic", "passed": true, "detail": value })]
            } else {
                vec![json!({ "property": "nu-acyclic", "passed": false, "counterexample": value })]
            }
        }
        Suite::Mirror => {
            vec![check("mirror duality", mirror_dual_iso(d, &job.theory()?).and_then(|m| m.verify()).map(|r| jv(&r)))?]
        }
        Suite::Su2 => vec![check("su2 transfer", su2_transfer(d, base).map(|r| jv(&r)))?],
        Suite::LinkBasis => vec![check(
            "link basis",
            link_basis_via_nu(d, base).map(|b| {
                let c = &b.complex;
                Value::Array(
                    b.entries
                        .iter()
                        .map(|e| json!({ "i": e.i, "q": e.q, "z": c.render_chain(&e.z), "nu_z": c.render_chain(&e.nu_z) }))
                        .collect(),
                )
            }),
        )?],
    };
    Ok(out)
}

fn verify_table(checks: &[Value]) -> String {
    let mut s = String::new();
    for c in checks {
        let passed = c["passed"].as_bool().unwrap_or(false);
        let name = c["property"].as_str().unwrap_or("");
        if passed {
            s.push_str(&format!("PASS {name}\n"));
        } else {
            s.push_str(&format!("FAIL {name}: {}\n", c["counterexample"]));
        }
    }
    s
}

fn all_passed(checks: &[Value]) -> bool {
    checks.iter().all(|c| c["passed"].as_bool() == Some(true))
}

fn run_batch(job: &Job, f: impl Fn(&LinkDiagram) -> Result<(Value, String)> + Sync) -> Result<Vec<Item>> {
    let items = job.diagrams()?;
    log::debug!("{} diagram(s) on {} thread(s)", items.len(), rayon::current_num_threads());
    Ok(items
        .par_iter()
        .map(|it| {
            let start = std::time::Instant::now();
            let out = f(&it.diagram);
            log::debug!("{}: {:?}", it.name, start.elapsed());
            Item { name: it.name.clone(), out }
        })
        .collect())
}

fn error_json(e: &Error) -> Value {
    json!({ "code": e.exit_code(), "message": e.to_string() })
}

/// Writes a batch report and returns the exit code: that of the first failing
/// item in input order, or `failed_code` for items that ran but did not pass.
fn emit(out: &mut impl Write, command: &str, job: &Job, items: Vec<Item>, passed: impl Fn(&Value) -> bool, failed_code: i32) -> i32 {
    let mut code = 0;
    let mut note = |c: i32| {
        if code == 0 {
            code = c;
        }
    };
    let batch = job.file.is_some();
    let mut results = Vec::new();
    for it in &items {
        match &it.out {
            Ok((v, text)) => {
                let ok = passed(v);
                if !ok {
                    note(failed_code);
                }
                match job.format {
                    Format::Json => results.push(json!({ "name": it.name, "result": v })),
                    Format::Table => {
                        if batch {
                            let _ = writeln!(out, "# {}", it.name);
                        }
                        let _ = write!(out, "{text}");
                    }
                }
            }
            Err(e) => {
                note(e.exit_code());
                match job.format {
                    Format::Json => results.push(json!({ "name": it.name, "error": error_json(e) })),
                    Format::Table => {
                        if batch {
                            let _ = writeln!(out, "# {}", it.name);
                        }
                        eprintln!("error: {}{e}", if batch { format!("{}: ", it.name) } else { String::new() });
                    }
                }
            }
        }
    }
    if job.format == Format::Json {
        let v = json!({ "schema": SCHEMA, "command": command, "results": results });
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"));
    }
    code
}

fn frobenius_suite(out: &mut impl Write, job: &Job, samples: usize) -> Result<i32> {
    let res = identity_suite(job.seed, samples)?;
    let checks: Vec<Value> = res
        .iter()
        .map(|r| match &r.counterexample {
            None => json!({ "property": r.name, "theory": r.theory, "passed": true, "detail": { "samples": r.samples } }),
            Some(c) => json!({ "property": r.name, "theory": r.theory, "passed": false, "counterexample": c }),
        })
        .collect();
    let ok = all_passed(&checks);
    match job.format {
        Format::Json => {
            let v = json!({ "schema": SCHEMA, "command": "verify", "suite": "frobenius", "seed": job.seed, "passed": ok, "results": checks });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
        Format::Table => {
            for (r, c) in res.iter().zip(&checks) {
                let line = verify_table(std::slice::from_ref(c));
                write!(out, "{} [{}]", line.trim_end(), r.theory)?;
                writeln!(out)?;
            }
        }
    }
    Ok(if ok { 0 } else { 4 })
}

fn dispatch(cli: &Cli, out: &mut impl Write) -> Result<i32> {
    let pass = |_: &Value| true;
    match &cli.command {
        Command::Homology { job } => {
            let items = run_batch(job, |d| homology_item(job, d))?;
            Ok(emit(out, "homology", job, items, pass, 0))
        }
        Command::S { job } => {
            let items = run_batch(job, |d| s_item(job, d))?;
            Ok(emit(out, "s", job, items, pass, 0))
        }
        Command::Complex { job } => {
            let mut job = job.clone();
            job.format = Format::Json;
            let items = run_batch(&job, |d| complex_item(&job, d))?;
            Ok(emit(out, "complex", &job, items, pass, 0))
        }
        Command::Verify { suite: Suite::Frobenius, samples, job } => frobenius_suite(out, job, *samples),
        Command::Verify { suite, job, .. } => {
            let items = run_batch(job, |d| {
                let checks = verify_item(job, *suite, d)?;
                let text = verify_table(&checks);
                Ok((json!({ "suite": suite_name(*suite), "passed": all_passed(&checks), "checks": checks }), text))
            })?;
            Ok(emit(out, "verify", job, items, |v| v["passed"].as_bool() == Some(true), 4))
        }
        Command::Corpus => {
            write!(out, "{}", corpus_batch()?)?;
            Ok(0)
        }
    }
}

fn suite_name(s: Suite) -> String {
    s.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

/// Runs the command line with explicit arguments, writing to `out`; returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(n) = cli.threads {
        // a second call fails harmlessly when the pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> i32 {
    env_logger::init();
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run(std::env::args_os(), &mut lock)
}
