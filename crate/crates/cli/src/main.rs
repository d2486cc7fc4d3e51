use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use bdtwist::bdtriples::{enumerate_triples, satisfies_r0h, solve_s, BDTriple, TripleSpec};
use bdtwist::classical::{check_cybe, r_t, r_ts};
use bdtwist::error::Error;
use bdtwist::exactring::Q;
use bdtwist::io;
use bdtwist::liecore::CartanBivector;
use bdtwist::quantum::{build_R_Ts, check_qybe, dynamical_R_T};
use bdtwist::suites::{golden_file, resolve_order, run_suites, RunReport, Suite, SuiteConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Exact r-matrices and twists for generalized Belavin–Drinfeld triples of sl(n).
#[derive(Parser)]
#[command(name = "bdtwist", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List triples of sl(n) as JSON lines.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        nilpotent: bool,
    },
    /// Quantum R-matrices.
    Quantum {
        #[command(subcommand)]
        cmd: QuantumCmd,
    },
    /// Classical r-matrices.
    Classical {
        #[command(subcommand)]
        cmd: ClassicalCmd,
    },
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Write the closed-form expansions used by the golden7 suite.
    Golden {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 10)]
        order: u32,
    },
}

#[derive(Args)]
struct BuildArgs {
    /// Triple file {n, gamma1, gamma2, t_map}.
    #[arg(long)]
    triple: PathBuf,
    /// "auto" for the particular solution, or a file {n, matrix} in the coroot basis.
    #[arg(long, default_value = "auto")]
    s: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum QuantumCmd {
    /// Build R(T,s), or the dynamical R_T(λ) with --dynamical.
    Build {
        #[command(flatten)]
        args: BuildArgs,
        #[arg(long)]
        dynamical: bool,
        #[arg(long)]
        order: Option<u32>,
    },
    Verify(SuiteArgs<QuantumSuite>),
}

#[derive(Subcommand)]
enum ClassicalCmd {
    /// Build r_{T,s}, or the dynamical r_T(λ) with --dynamical.
    Build {
        #[command(flatten)]
        args: BuildArgs,
        #[arg(long)]
        dynamical: bool,
    },
    Verify(SuiteArgs<ClassicalSuite>),
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantumSuite {
    Qybe,
    Hecke,
    Qdybe,
    Limit,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassicalSuite {
    Cybe,
    Cdybe,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnySuite {
    Cybe,
    Cdybe,
    Qybe,
    Hecke,
    Qdybe,
    Limit,
    Golden7,
    GaugeFlat,
    All,
}

#[derive(Args)]
struct SuiteArgs<S: ValueEnum + Clone + Send + Sync + 'static> {
    #[arg(long, value_enum)]
    suite: S,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CommonArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    order: Option<u32>,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Write the report as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: AnySuite,
    /// Golden file for the golden7 suite.
    #[arg(long)]
    golden: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

impl From<QuantumSuite> for Suite {
    fn from(s: QuantumSuite) -> Self {
        match s {
            QuantumSuite::Qybe => Suite::Qybe,
            QuantumSuite::Hecke => Suite::Hecke,
            QuantumSuite::Qdybe => Suite::Qdybe,
            QuantumSuite::Limit => Suite::Limit,
        }
    }
}

impl From<ClassicalSuite> for Suite {
    fn from(s: ClassicalSuite) -> Self {
        match s {
            ClassicalSuite::Cybe => Suite::Cybe,
            ClassicalSuite::Cdybe => Suite::Cdybe,
        }
    }
}

fn any_suites(s: AnySuite) -> Vec<Suite> {
    match s {
        AnySuite::Cybe => vec![Suite::Cybe],
        AnySuite::Cdybe => vec![Suite::Cdybe],
        AnySuite::Qybe => vec![Suite::Qybe],
        AnySuite::Hecke => vec![Suite::Hecke],
        AnySuite::Qdybe => vec![Suite::Qdybe],
        AnySuite::Limit => vec![Suite::Limit],
        AnySuite::Golden7 => vec![Suite::Golden7],
        AnySuite::GaugeFlat => vec![Suite::GaugeFlat],
        AnySuite::All => Suite::ALL.to_vec(),
    }
}

/// Error carrying a documented exit status.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

fn fail(code: u8, err: impl Into<anyhow::Error>) -> Failure {
    Failure { code, err: err.into() }
}

fn bad_args(err: impl Into<anyhow::Error>) -> Failure {
    fail(2, err)
}

/// Exit status for a library error raised while building.
fn build_failure(e: Error) -> Failure {
    match e {
        Error::NotNilpotent | Error::NoSolution => fail(3, e),
        _ => bad_args(e),
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(bad_args)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display())).map_err(bad_args)
}

fn write_or_print(out: Option<&Path>, v: &Value) -> CliResult<()> {
    let text = io::to_pretty(v);
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())).map_err(|e| fail(1, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_triple(path: &Path) -> CliResult<BDTriple> {
    let spec: TripleSpec = serde_json::from_value(read_json(path)?).map_err(|e| bad_args(anyhow!("triple file: {e}")))?;
    BDTriple::from_spec(&spec).map_err(bad_args)
}

/// s from "auto" or a file {n, matrix}; validated against the triple.
fn load_s(triple: &BDTriple, arg: &str) -> CliResult<CartanBivector> {
    if arg == "auto" {
        if !triple.nilpotent {
            return Err(fail(3, Error::NotNilpotent));
        }
        return solve_s(triple).map(|s| s.particular).map_err(build_failure);
    }
    let v = read_json(Path::new(arg))?;
    let n = v["n"].as_u64().ok_or_else(|| bad_args(anyhow!("s file needs n")))? as usize;
    if n != triple.n {
        return Err(bad_args(anyhow!("s is for sl({n}), triple is sl({})", triple.n)));
    }
    let rows = v["matrix"].as_array().ok_or_else(|| bad_args(anyhow!("s file needs matrix")))?;
    let m: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| {
            let r = r.as_array().filter(|r| r.len() == n - 1).ok_or_else(|| anyhow!("matrix must be (n-1)x(n-1)"))?;
            r.iter().map(q_value).collect::<anyhow::Result<Vec<Q>>>()
        })
        .collect::<anyhow::Result<_>>()
        .map_err(bad_args)?;
    if m.len() != n - 1 {
        return Err(bad_args(anyhow!("matrix must be (n-1)x(n-1)")));
    }
    let s = CartanBivector::from_matrix(n, m);
    if !s.is_skew() || !satisfies_r0h(triple, &s) {
        return Err(fail(4, anyhow!("s does not satisfy its defining equations for {triple}")));
    }
    Ok(s)
}

fn q_value(v: &Value) -> anyhow::Result<Q> {
    let s = v.as_str().ok_or_else(|| anyhow!("rationals are \"p/q\" strings"))?;
    Ok(io::q_parse(s)?)
}

fn report(report: &RunReport, out: Option<&Path>, started: Instant) -> CliResult<()> {
    for c in &report.checks {
        println!("{c}");
    }
    let failed = report.failures().count();
    println!("{} checks, {} failed", report.checks.len(), failed);
    eprintln!("elapsed {:.3}s", started.elapsed().as_secs_f64());
    if let Some(p) = out {
        write_or_print(Some(p), &report.to_json())?;
    }
    if failed > 0 {
        Err(fail(1, anyhow!("{failed} checks failed")))
    } else {
        Ok(())
    }
}

fn verify(suites: Vec<Suite>, common: &CommonArgs, golden: Option<Value>, command: String) -> CliResult<()> {
    let started = Instant::now();
    let cfg = SuiteConfig { n: common.n, order: common.order, jobs: common.jobs, golden };
    let r = run_suites(&suites, &cfg, command).map_err(bad_args)?;
    report(&r, common.out.as_deref(), started)
}

fn run(cli: Cli, command: String) -> CliResult<()> {
    match cli.cmd {
        Cmd::Enumerate { n, nilpotent } => {
            if !(2..=6).contains(&n) {
                return Err(bad_args(anyhow!("n must be between 2 and 6")));
            }
            for t in enumerate_triples(n, nilpotent).map_err(bad_args)? {
                let mut v = serde_json::to_value(t.to_spec()).expect("spec serializes");
                v["nilpotent"] = json!(t.nilpotent);
                println!("{}", serde_json::to_string(&v).expect("JSON serializes"));
            }
            Ok(())
        }
        Cmd::Quantum { cmd: QuantumCmd::Build { args, dynamical, order } } => {
            let t = load_triple(&args.triple)?;
            if dynamical {
                let order = resolve_order(order, t.n).map_err(bad_args)?;
                let r = dynamical_R_T(&t, order).map_err(build_failure)?;
                let v = json!({
                    "triple": t.to_spec(),
                    "R_T": io::series_tensor_to_json(&r.tensor, r.vars.len(), order),
                });
                return write_or_print(args.out.as_deref(), &v);
            }
            if !t.nilpotent {
                return Err(fail(3, Error::NotNilpotent));
            }
            let s = load_s(&t, &args.s)?;
            let r = build_R_Ts(&t, &s).map_err(build_failure)?;
            if !check_qybe(&r).is_zero() {
                return Err(fail(1, anyhow!("R(T,s) fails QYBE for {t}")));
            }
            write_or_print(args.out.as_deref(), &io::tensor_to_json(&r))
        }
        Cmd::Classical { cmd: ClassicalCmd::Build { args, dynamical } } => {
            let t = load_triple(&args.triple)?;
            if dynamical {
                let r = r_t(&t).map_err(build_failure)?;
                let v = json!({ "triple": t.to_spec(), "r_T": io::ratfunc_tensor_to_json(&r.tensor, r.vars.len()) });
                return write_or_print(args.out.as_deref(), &v);
            }
            if !t.nilpotent {
                return Err(fail(3, Error::NotNilpotent));
            }
            let s = load_s(&t, &args.s)?;
            let r = r_ts(&t, &s).map_err(build_failure)?;
            let residual = check_cybe(&r).nnz();
            eprintln!("CYBE residual nonzero entries: {residual}");
            if residual > 0 {
                return Err(fail(1, anyhow!("r_Ts fails CYBE for {t}")));
            }
            write_or_print(args.out.as_deref(), &io::tensor_to_json(&r))
        }
        Cmd::Quantum { cmd: QuantumCmd::Verify(a) } => verify(vec![a.suite.into()], &a.common, None, command),
        Cmd::Classical { cmd: ClassicalCmd::Verify(a) } => verify(vec![a.suite.into()], &a.common, None, command),
        Cmd::Verify(a) => {
            let golden = a.golden.as_deref().map(read_json).transpose()?;
            verify(any_suites(a.suite), &a.common, golden, command)
        }
        Cmd::Golden { out, order } => write_or_print(Some(&out), &golden_file(order).map_err(bad_args)?),
    }
}

fn main() -> ExitCode {
    let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let cli = Cli::parse();
    match run(cli, command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
