//! `aconv` — batch frontend for tabulated divisor systems and generalized
//! convolutions.
//!
//! Exit codes: 0 success / predicate pass, 1 predicate failure (witness
//! emitted), 2 usage or data error (one-line diagnostic on stderr).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use aconv::arith::{convolve, derived_function, distance, inverse, standard};
use aconv::catalog;
use aconv::classes::{
    extend_from_primitives, group_closure, is_class_member, maximal_class, maximal_class_exact,
};
use aconv::decomp::{
    all_decompositions, check_complete, check_paradigmatic, chi_summary, decomposition, derive,
    stats,
};
use aconv::properties::{check, check_in_class};
use aconv::raft::{approximate, convergence, evaluate_raft, DEFAULT_ROOT_TOL};
use aconv::system::{build_g, build_s, build_theta};
use aconv::triangle::{build_structured, factor_structures, triangle_of, SizeSpec};
use aconv::{ArithFunc, Chi, Derived, DeriveWhich, DivisorSystem, Predicate, Raft, Side, Standard};

const HEAVY_PREDICATE_BOUND: u64 = 2048;

#[derive(Parser)]
#[command(name = "aconv", version, about = "Divisor systems and generalized convolutions")]
struct Cli {
    /// Tabulation bound for systems and functions built by name
    #[arg(long, global = true, default_value_t = 512)]
    bound: u64,

    /// Emit machine-readable JSON instead of human-readable text
    #[arg(long, global = true)]
    json: bool,

    /// Relative tolerance for approximate value comparisons
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Seed for randomized operations
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write primary output to PATH instead of stdout
    #[arg(short, long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

/// A divisor system given either as a positional file/name or via --system.
#[derive(Args)]
struct SysArg {
    /// System JSON file, or a catalog name (dirichlet, unitary, theta, ...)
    #[arg(value_name = "SYSTEM")]
    spec: Option<String>,

    /// Same as the positional SYSTEM argument
    #[arg(long, value_name = "SYSTEM")]
    system: Option<String>,
}

impl SysArg {
    fn load(&self, bound: u64) -> Result<DivisorSystem, CliError> {
        match (&self.spec, &self.system) {
            (Some(s), None) | (None, Some(s)) => load_system(s, bound),
            _ => Err(CliError::usage("give a system exactly once (positional or --system)")),
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Copy, Clone, ValueEnum)]
enum DerivedArg {
    Mobius,
    Tau,
    Totient,
}

#[derive(Copy, Clone, ValueEnum)]
enum DeriveArg {
    PerfectP,
    ParadigmaticF,
    Gamma,
    Minimal,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a catalog system by name and emit its JSON
    Build {
        /// Catalog name, e.g. dirichlet, d^3, theta:3, suryanarayana:2
        name: String,
    },
    /// Build the theta (infinitary-style) system
    Theta,
    /// Build the non-symmetric system G
    GSystem,
    /// Build the core-peeling system S
    SSystem,
    /// Build a structured system from Cohen-triangle factor sizes
    Structured {
        /// Comma-separated finite size list, least significant first
        #[arg(long, value_delimiter = ',', value_name = "S1,S2,...")]
        sizes: Option<Vec<u32>>,
        /// Repeat one size indefinitely (theta_k)
        #[arg(long, value_name = "S")]
        repeat: Option<u32>,
    },
    /// Apply the iterate construction A -> A^1 (k times)
    Iterate {
        #[command(flatten)]
        sys: SysArg,
        #[arg(long, default_value_t = 1)]
        times: u32,
    },
    /// Print the divisor sets of a system
    Show {
        #[command(flatten)]
        sys: SysArg,
    },
    /// Convolve two functions under a system
    Conv {
        #[arg(long, value_name = "SYSTEM")]
        system: String,
        f: String,
        g: String,
    },
    /// Invert a function under a system
    Invert {
        #[arg(long, value_name = "SYSTEM")]
        system: String,
        f: String,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// Tabulate a derived function (mobius, tau, totient) of a system
    Derived {
        #[command(flatten)]
        sys: SysArg,
        #[arg(long, value_enum)]
        which: DerivedArg,
    },
    /// Tabulate a standard function (u, i, iota, mu, phi, tau, core)
    Standard { name: String },
    /// Distance between two functions in the tabulation metric
    Metric { f: String, g: String },
    /// Check a structural predicate of a system
    Check {
        #[command(flatten)]
        sys: SysArg,
        #[arg(long)]
        predicate: String,
    },
    /// Check whether system A lies in the arithmetical class of system B
    InClass { a: String, b: String },
    /// List the primitive elements of a system
    Primitives {
        #[command(flatten)]
        sys: SysArg,
    },
    /// Decompose n into primitive parts under a system
    Decompose {
        n: u64,
        #[command(flatten)]
        sys: SysArg,
        /// List every decomposition instead of requiring uniqueness
        #[arg(long)]
        all: bool,
    },
    /// Check that every n has a unique primitive decomposition
    Complete {
        #[command(flatten)]
        sys: SysArg,
    },
    /// Check that a system equals its paradigmatic closure F(A)
    Paradigmatic {
        #[command(flatten)]
        sys: SysArg,
    },
    /// Decomposition statistics (omega, nu, support, square-freeness) of n
    Stats {
        n: u64,
        #[command(flatten)]
        sys: SysArg,
    },
    /// Primitivity indices chi(q) for every primitive
    Chi {
        #[command(flatten)]
        sys: SysArg,
    },
    /// Derive a companion system (P, F, Gamma, minimal)
    Derive {
        #[command(flatten)]
        sys: SysArg,
        #[arg(long, value_enum)]
        which: DeriveArg,
    },
    /// Cohen triangle of a system at a prime
    Triangle {
        #[command(flatten)]
        sys: SysArg,
        #[arg(long, default_value_t = 2)]
        prime: u64,
        #[arg(long, default_value_t = 7)]
        depth: u32,
    },
    /// Factor sizes s whose quotient triangle reproduces the original
    FactorStructure {
        #[command(flatten)]
        sys: SysArg,
        #[arg(long, default_value_t = 2)]
        prime: u64,
        #[arg(long, default_value_t = 7)]
        depth: u32,
    },
    /// Check that a function belongs to the class of a system
    Member {
        #[arg(long, value_name = "SYSTEM")]
        system: String,
        f: String,
    },
    /// Extend primitive values to a full class function
    Extend {
        #[arg(long, value_name = "SYSTEM")]
        system: String,
        /// JSON file mapping primitive q to [re, im]
        values: PathBuf,
    },
    /// Maximal system whose class contains a function
    Maxclass {
        /// Function file or standard name (omit with --exact-witness)
        f: Option<String>,
        /// Exact variant: maximal system whose class contains e_A
        #[arg(long, value_name = "SYSTEM")]
        exact_witness: Option<String>,
    },
    /// Sampled group-closure check of a class under a convolution
    GroupClosure {
        conv: String,
        class: String,
        #[arg(long, default_value_t = 20)]
        samples: u32,
    },
    /// Evaluate a raft JSON file to a tabulated function
    RaftEval { raft: PathBuf },
    /// Approximate a class function by a k-ic raft
    Approx {
        #[arg(long, value_name = "SYSTEM")]
        system: String,
        #[arg(long, value_name = "FUNC")]
        target: String,
        #[arg(long)]
        k: usize,
    },
    /// Convergence table for k = 1..k_max (CSV)
    Converge {
        #[arg(long, value_name = "SYSTEM")]
        system: String,
        #[arg(long, value_name = "FUNC")]
        target: String,
        #[arg(long, default_value_t = 4)]
        k_max: usize,
    },
    /// Report-style experiments
    Experiment {
        #[command(subcommand)]
        which: Experiment,
    },
}

#[derive(Subcommand)]
enum Experiment {
    /// Perfectness of the iterates D^1..D^k
    PerfectDk {
        #[arg(long, default_value_t = 5)]
        k_max: u32,
    },
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self { message: message.into(), code: 2 }
    }
}

impl From<aconv::Error> for CliError {
    fn from(e: aconv::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

fn load_system(spec: &str, bound: u64) -> Result<DivisorSystem, CliError> {
    if Path::new(spec).is_file() {
        Ok(DivisorSystem::from_json(&std::fs::read_to_string(spec)?)?)
    } else {
        Ok(catalog::resolve(spec, bound)?)
    }
}

fn load_func(spec: &str, bound: u64) -> Result<ArithFunc, CliError> {
    if Path::new(spec).is_file() {
        return Ok(ArithFunc::from_json(&std::fs::read_to_string(spec)?)?);
    }
    let name = match spec {
        "u" => Standard::U,
        "i" => Standard::I,
        "iota" => Standard::Iota,
        "mu" => Standard::Mu,
        "phi" => Standard::Phi,
        "tau" => Standard::Tau,
        "core" => Standard::Core,
        other => {
            return Err(CliError::usage(format!(
                "unknown function `{other}` (expected a file or one of u, i, iota, mu, phi, tau, core)"
            )))
        }
    };
    Ok(standard(name, bound)?)
}

/// Writes the primary output to `-o PATH` when given, else stdout.
/// A closed stdout (e.g. piping into `head`) is not an error.
fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    use std::io::Write;
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n"))?,
        None => {
            if let Err(e) = writeln!(std::io::stdout(), "{text}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    Ok(())
}

/// Loads a system/function pair with a shared bound: a function file pins
/// the bound for a named system; otherwise the global `--bound` applies.
fn load_pair(
    system: &str,
    func: &str,
    bound: u64,
) -> Result<(DivisorSystem, ArithFunc), CliError> {
    if Path::new(func).is_file() {
        let f = ArithFunc::from_json(&std::fs::read_to_string(func)?)?;
        let sys = load_system(system, f.bound())?;
        Ok((sys, f))
    } else {
        let sys = load_system(system, bound)?;
        let f = load_func(func, sys.bound())?;
        Ok((sys, f))
    }
}

/// Emits a property report and converts a failed predicate into exit 1.
fn emit_report(cli: &Cli, report: &aconv::PropertyReport) -> Result<u8, CliError> {
    if cli.json {
        emit(&cli.output, &report.to_json())?;
    } else {
        let line = match (&report.pass, &report.witness) {
            (true, _) => format!("{}: pass (bound {})", report.predicate, report.bound),
            (false, Some(w)) => {
                format!("{}: FAIL witness {:?} (bound {})", report.predicate, w, report.bound)
            }
            (false, None) => format!("{}: FAIL (bound {})", report.predicate, report.bound),
        };
        emit(&cli.output, &line)?;
    }
    Ok(if report.pass { 0 } else { 1 })
}

fn complex_pretty(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    match &cli.cmd {
        Cmd::Build { name } => {
            let sys = catalog::resolve(name, cli.bound)?;
            emit(&cli.output, &sys.to_json())?;
        }
        Cmd::Theta => emit(&cli.output, &build_theta(cli.bound)?.to_json())?,
        Cmd::GSystem => emit(&cli.output, &build_g(cli.bound)?.to_json())?,
        Cmd::SSystem => emit(&cli.output, &build_s(cli.bound)?.to_json())?,
        Cmd::Structured { sizes, repeat } => {
            let spec = match (sizes, repeat) {
                (Some(list), None) => SizeSpec::Finite(list.clone()),
                (None, Some(s)) => SizeSpec::Repeat(*s),
                _ => return Err(CliError::usage("give exactly one of --sizes or --repeat")),
            };
            emit(&cli.output, &build_structured(&spec, cli.bound)?.to_json())?;
        }
        Cmd::Iterate { sys, times } => {
            let sys = sys.load(cli.bound)?;
            emit(&cli.output, &sys.iterate_times(*times).to_json())?;
        }
        Cmd::Show { sys } => {
            let sys = sys.load(cli.bound)?;
            if cli.json {
                emit(&cli.output, &sys.to_json())?;
            } else {
                let mut text = format!("{} (bound {})", sys.name(), sys.bound());
                for n in 1..=sys.bound() {
                    text.push_str(&format!("\n{n}: {:?}", sys.divisor_set(n)?));
                }
                emit(&cli.output, &text)?;
            }
        }
        Cmd::Conv { system, f, g } => {
            let (sys, f) = load_pair(system, f, cli.bound)?;
            let g = load_func(g, sys.bound())?;
            emit(&cli.output, &convolve(&sys, &f, &g)?.to_json())?;
        }
        Cmd::Invert { system, f, side } => {
            let (sys, f) = load_pair(system, f, cli.bound)?;
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            emit(&cli.output, &inverse(&sys, &f, side)?.to_json())?;
        }
        Cmd::Derived { sys, which } => {
            let sys = sys.load(cli.bound)?;
            let which = match which {
                DerivedArg::Mobius => Derived::Mobius,
                DerivedArg::Tau => Derived::Tau,
                DerivedArg::Totient => Derived::Totient,
            };
            emit(&cli.output, &derived_function(&sys, which)?.to_json())?;
        }
        Cmd::Standard { name } => {
            if Path::new(name).is_file() {
                return Err(CliError::usage("standard takes a function name, not a file"));
            }
            emit(&cli.output, &load_func(name, cli.bound)?.to_json())?;
        }
        Cmd::Metric { f, g } => {
            let f = load_func(f, cli.bound)?;
            let g = load_func(g, cli.bound)?;
            let d = distance(&f, &g, cli.tol)?;
            if cli.json {
                let first = d.first_mismatch();
                emit(
                    &cli.output,
                    &format!(
                        "{{\"distance\":\"{d}\",\"first_mismatch\":{},\"bound\":{}}}",
                        first.map_or("null".into(), |n| n.to_string()),
                        f.bound()
                    ),
                )?;
            } else {
                emit(&cli.output, &format!("distance: {d} (bound {})", f.bound()))?;
            }
        }
        Cmd::Check { sys, predicate } => {
            let sys = sys.load(cli.bound)?;
            let predicate = Predicate::from_str(predicate)?;
            if matches!(predicate, Predicate::Associative | Predicate::Split)
                && sys.bound() > HEAVY_PREDICATE_BOUND
            {
                eprintln!(
                    "warning: {} at bound {} may be slow",
                    predicate.name(),
                    sys.bound()
                );
            }
            return emit_report(cli, &check(&sys, predicate));
        }
        Cmd::InClass { a, b } => {
            let a = load_system(a, cli.bound)?;
            let b = load_system(b, cli.bound)?;
            return emit_report(cli, &check_in_class(&a, &b)?);
        }
        Cmd::Primitives { sys } => {
            let sys = sys.load(cli.bound)?;
            let qs = sys.primitives();
            if cli.json {
                emit(&cli.output, &serde_json::to_string(&qs).unwrap())?;
            } else {
                let list: Vec<String> = qs.iter().map(u64::to_string).collect();
                emit(&cli.output, &list.join(" "))?;
            }
        }
        Cmd::Decompose { sys, n, all } => {
            let sys = sys.load(cli.bound)?;
            if *all {
                let sets = all_decompositions(&sys, *n)?;
                if cli.json {
                    emit(&cli.output, &serde_json::to_string(&sets).unwrap())?;
                } else {
                    let text: Vec<String> =
                        sets.iter().map(|parts| render_parts(parts)).collect();
                    emit(&cli.output, &text.join("\n"))?;
                }
            } else {
                let dec = decomposition(&sys, *n)?;
                if cli.json {
                    emit(&cli.output, &dec.to_json())?;
                } else {
                    emit(&cli.output, &format!("{n} = {}", render_parts(&dec.parts)))?;
                }
            }
        }
        Cmd::Complete { sys } => {
            let sys = sys.load(cli.bound)?;
            return emit_report(cli, &check_complete(&sys)?);
        }
        Cmd::Paradigmatic { sys } => {
            let sys = sys.load(cli.bound)?;
            return emit_report(cli, &check_paradigmatic(&sys)?);
        }
        Cmd::Stats { sys, n } => {
            let sys = sys.load(cli.bound)?;
            let st = stats(&sys, *n)?;
            if cli.json {
                emit(
                    &cli.output,
                    &format!(
                        "{{\"n\":{n},\"omega\":{},\"nu\":{},\"support\":{},\"squarefree\":{}}}",
                        st.omega,
                        serde_json::to_string(&st.nu).unwrap(),
                        serde_json::to_string(&st.support).unwrap(),
                        st.squarefree
                    ),
                )?;
            } else {
                emit(
                    &cli.output,
                    &format!(
                        "n = {n}: omega = {}, nu = {:?}, support = {:?}, squarefree = {}",
                        st.omega, st.nu, st.support, st.squarefree
                    ),
                )?;
            }
        }
        Cmd::Chi { sys } => {
            let sys = sys.load(cli.bound)?;
            let summary = chi_summary(&sys)?;
            if cli.json {
                let chis: Vec<(u64, String)> = summary
                    .chis
                    .iter()
                    .map(|&(q, c)| (q, render_chi(c)))
                    .collect();
                emit(
                    &cli.output,
                    &format!(
                        "{{\"bound\":{},\"label\":{},\"chis\":{}}}",
                        summary.bound,
                        serde_json::to_string(&summary.label).unwrap(),
                        serde_json::to_string(&chis).unwrap()
                    ),
                )?;
            } else {
                let mut text = format!("{} (bound {})", summary.label, summary.bound);
                for &(q, c) in &summary.chis {
                    text.push_str(&format!("\nchi({q}) = {}", render_chi(c)));
                }
                emit(&cli.output, &text)?;
            }
        }
        Cmd::Derive { sys, which } => {
            let sys = sys.load(cli.bound)?;
            let which = match which {
                DeriveArg::PerfectP => DeriveWhich::PerfectP,
                DeriveArg::ParadigmaticF => DeriveWhich::ParadigmaticF,
                DeriveArg::Gamma => DeriveWhich::Gamma,
                DeriveArg::Minimal => DeriveWhich::Minimal,
            };
            emit(&cli.output, &derive(&sys, which)?.to_json())?;
        }
        Cmd::Triangle { sys, prime, depth } => {
            let sys = sys.load(cli.bound)?;
            let tri = triangle_of(&sys, *prime, *depth)?;
            if cli.json {
                emit(&cli.output, &tri.to_json())?;
            } else {
                emit(&cli.output, tri.render().trim_end())?;
            }
        }
        Cmd::FactorStructure { sys, prime, depth } => {
            let sys = sys.load(cli.bound)?;
            let tri = triangle_of(&sys, *prime, *depth)?;
            let factors = factor_structures(&tri);
            if cli.json {
                let sizes: Vec<u32> = factors.iter().map(|&(s, _)| s).collect();
                emit(&cli.output, &serde_json::to_string(&sizes).unwrap())?;
            } else if factors.is_empty() {
                emit(&cli.output, "no structure factors")?;
            } else {
                let mut text = String::new();
                for (i, (s, quotient)) in factors.iter().enumerate() {
                    if i > 0 {
                        text.push('\n');
                    }
                    text.push_str(&format!("s = {s}, quotient:\n{}", quotient.render().trim_end()));
                }
                emit(&cli.output, &text)?;
            }
        }
        Cmd::Member { system, f } => {
            let (sys, f) = load_pair(system, f, cli.bound)?;
            return emit_report(cli, &is_class_member(&sys, &f, cli.tol)?);
        }
        Cmd::Extend { system, values } => {
            let sys = load_system(system, cli.bound)?;
            let raw: BTreeMap<String, (f64, f64)> =
                serde_json::from_str(&std::fs::read_to_string(values)?)
                    .map_err(|e| CliError::usage(format!("bad values file: {e}")))?;
            let mut map = BTreeMap::new();
            for (q, (re, im)) in raw {
                let q: u64 = q
                    .parse()
                    .map_err(|_| CliError::usage(format!("non-integer primitive key `{q}`")))?;
                map.insert(q, Complex64::new(re, im));
            }
            emit(&cli.output, &extend_from_primitives(&sys, &map)?.to_json())?;
        }
        Cmd::Maxclass { f, exact_witness } => {
            let sys = match (f, exact_witness) {
                (Some(f), None) => maximal_class(&load_func(f, cli.bound)?, cli.tol)?,
                (None, Some(spec)) => maximal_class_exact(&load_system(spec, cli.bound)?)?,
                _ => {
                    return Err(CliError::usage(
                        "give either a function or --exact-witness SYSTEM",
                    ))
                }
            };
            emit(&cli.output, &sys.to_json())?;
        }
        Cmd::GroupClosure { conv, class, samples } => {
            let conv = load_system(conv, cli.bound)?;
            let class = load_system(class, cli.bound)?;
            let report = group_closure(&conv, &class, *samples, cli.seed, cli.tol)?;
            return emit_report(cli, &report);
        }
        Cmd::RaftEval { raft } => {
            let raft = Raft::from_json(&std::fs::read_to_string(raft)?)?;
            emit(&cli.output, &evaluate_raft(&raft)?.to_json())?;
        }
        Cmd::Approx { system, target, k } => {
            let (sys, f) = load_pair(system, target, cli.bound)?;
            let (raft, _, diag) = approximate(&sys, &f, *k, DEFAULT_ROOT_TOL)?;
            if !cli.json {
                eprintln!("distance: {}", diag.distance);
                eprintln!("max residual: {:.3e}", diag.max_residual);
                for (q, block) in &diag.blocks {
                    let roots: Vec<String> =
                        block.roots.iter().map(|&z| complex_pretty(z)).collect();
                    eprintln!("block {q}: roots [{}]", roots.join(", "));
                }
            }
            emit(&cli.output, &raft.to_json())?;
        }
        Cmd::Converge { system, target, k_max } => {
            let (sys, f) = load_pair(system, target, cli.bound)?;
            let rows = convergence(&sys, &f, *k_max)?;
            let mut csv = String::from("k,distance_k,first_mismatch_n,max_residual");
            for row in rows {
                csv.push_str(&format!(
                    "\n{},{},{},{:e}",
                    row.k,
                    row.distance,
                    row.first_mismatch.map_or(String::new(), |n| n.to_string()),
                    row.max_residual
                ));
            }
            emit(&cli.output, &csv)?;
        }
        Cmd::Experiment { which } => match which {
            Experiment::PerfectDk { k_max } => {
                let mut text = String::new();
                for k in 1..=*k_max {
                    let sys = catalog::resolve(&format!("d^{k}"), cli.bound)?;
                    let report = check(&sys, Predicate::Perfect);
                    if k > 1 {
                        text.push('\n');
                    }
                    match &report.witness {
                        Some(w) => text.push_str(&format!(
                            "D^{k} perfect: {} witness {w:?}",
                            report.pass
                        )),
                        None => text.push_str(&format!("D^{k} perfect: {}", report.pass)),
                    }
                }
                emit(&cli.output, &text)?;
            }
        },
    }
    Ok(0)
}

fn render_parts(parts: &[(u64, u32)]) -> String {
    if parts.is_empty() {
        return "1 (empty product)".into();
    }
    let text: Vec<String> = parts
        .iter()
        .map(|&(q, a)| if a == 1 { q.to_string() } else { format!("{q}^{a}") })
        .collect();
    text.join(" * ")
}

fn render_chi(c: Chi) -> String {
    match c {
        Chi::Finite(m) => m.to_string(),
        Chi::BeyondBound { horizon } => format!(">{horizon}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
