//! The `curvgraph` command line.
//!
//! ```text
//! curvgraph gen FAMILY SIZE [--measure unit|degree]
//! curvgraph curvature   [INPUT] [--n N]... [--format table|json|csv] [--dump-forms]
//! curvgraph diam        [INPUT] [--rho-tol T] [--pairs all|N]
//! curvgraph rho         [INPUT] [--x ID --y ID] [--with-witness] [--pairs all|N]
//! curvgraph semigroup-check [INPUT] [--n N]... [--k K] [--seed S] [--functions F]
//! curvgraph verify      [INPUT] [--n N]... [--seed S]
//! curvgraph report      [INPUT] [--n N]... [--seed S]
//! ```
//!
//! `INPUT` is a graph file path (`-` for standard input), or `--graph PATH`,
//! or `--family NAME:SIZE`. Exit codes: 0 success, 1 violated bound,
//! 2 usage error, 3 input or validation error.

use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bounds::{full_report, ReportOptions};
use crate::curvature::{graph_curvature, Dimension};
use crate::error::Error;
use crate::forms::local_forms;
use crate::graph::{format_real, parse_graph, to_json, Family, MeasureConvention, WeightedGraph};
use crate::metrics::{
    diameter_of, resistance_distance, resistance_table, Method, PairBudget, ResistanceOptions,
};
use crate::real_json;
use crate::semigroup::{
    check_cd_infty_envelope, check_cd_n_envelope, default_t_grid, random_function,
    EnvelopeCheck, HeatPropagator,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Environment variable capping the worker pool (`0` or unset picks automatically).
pub const THREADS_ENV: &str = "CURVGRAPH_THREADS";

#[derive(Debug, Parser)]
#[command(name = "curvgraph", version, about = "Bakry-Émery curvature and diameter bounds on weighted graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a standard family as a graph document.
    Gen(GenArgs),
    /// Per-vertex curvature K_x(n).
    Curvature(CurvatureArgs),
    /// Combinatorial and resistance diameters.
    Diam(DiamArgs),
    /// Resistance distances.
    Rho(RhoArgs),
    /// Heat-semigroup envelope checks on seeded random functions.
    SemigroupCheck(SemigroupArgs),
    /// Check every applicable bound; exit 1 on a violation.
    Verify(ReportArgs),
    /// Full bounds report.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverArg {
    Barrier,
    Supergradient,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Graph file, `-` for standard input.
    #[arg(value_name = "INPUT")]
    pub path: Option<String>,
    /// Graph file, `-` for standard input.
    #[arg(long, value_name = "PATH")]
    pub graph: Option<String>,
    /// Standard family, e.g. `hypercube:3`.
    #[arg(long, value_name = "NAME:SIZE")]
    pub family: Option<String>,
    /// Replace the measure (families default to `unit`).
    #[arg(long, value_name = "unit|degree")]
    pub measure: Option<MeasureConvention>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Output file, `-` for standard output.
    #[arg(short = 'o', long, value_name = "PATH", default_value = "-")]
    pub output: String,
}

#[derive(Debug, Args)]
pub struct RhoOpts {
    /// Resistance solver tolerance.
    #[arg(long, value_name = "T", default_value = "1e-5", value_parser = positive_f64)]
    pub rho_tol: f64,
    /// Pairs to evaluate: `all` or the N hop-farthest pairs.
    #[arg(long, value_name = "all|N", value_parser = parse_pairs)]
    pub pairs: Option<PairBudget>,
    #[arg(long, value_enum, default_value = "barrier")]
    pub method: SolverArg,
}

impl RhoOpts {
    fn options(&self) -> ResistanceOptions {
        ResistanceOptions {
            tol: self.rho_tol,
            method: match self.method {
                SolverArg::Barrier => Method::Barrier,
                SolverArg::Supergradient => Method::Supergradient,
            },
            ..ResistanceOptions::default()
        }
    }

    fn budget(&self, g: &WeightedGraph) -> PairBudget {
        self.pairs.unwrap_or_else(|| PairBudget::default_for(g))
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// hypercube, cycle, complete, path or star.
    pub family: String,
    pub size: usize,
    #[arg(long, default_value = "unit", value_name = "unit|degree")]
    pub measure: MeasureConvention,
    #[arg(short = 'o', long, value_name = "PATH", default_value = "-")]
    pub output: String,
}

#[derive(Debug, Args)]
pub struct CurvatureArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Dimension parameter, repeatable; `inf` accepted.
    #[arg(long = "n", value_name = "N")]
    pub n: Vec<Dimension>,
    /// Emit the local quadratic forms of every vertex instead.
    #[arg(long)]
    pub dump_forms: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DiamArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub rho: RhoOpts,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RhoArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Source vertex id; requires `--y`.
    #[arg(long, requires = "y")]
    pub x: Option<String>,
    /// Target vertex id; requires `--x`.
    #[arg(long, requires = "x")]
    pub y: Option<String>,
    #[arg(long)]
    pub with_witness: bool,
    #[command(flatten)]
    pub rho: RhoOpts,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SemigroupArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Dimension parameter, repeatable; defaults to `inf`.
    #[arg(long = "n", value_name = "N")]
    pub n: Vec<Dimension>,
    /// Curvature constant; defaults to the computed K(n).
    #[arg(long, value_name = "K")]
    pub k: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random functions drawn from seeds `seed, seed+1, ...`.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub functions: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Dimension grid, repeatable; defaults to 1, 2, 5, 10, |V|, inf.
    #[arg(long = "n", value_name = "N")]
    pub n: Vec<Dimension>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub functions: u64,
    #[command(flatten)]
    pub rho: RhoOpts,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}

fn parse_pairs(s: &str) -> Result<PairBudget, String> {
    if s == "all" {
        return Ok(PairBudget::All);
    }
    match s.parse::<usize>() {
        Ok(k) if k > 0 => Ok(PairBudget::Largest(k)),
        _ => Err(format!("expected `all` or a positive count, got `{s}`")),
    }
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn input(context: &str, err: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_INPUT,
            message: format!("{context}: {err}"),
        }
    }
}

type Outcome = std::result::Result<(String, i32), Failure>;

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
    };
    let mut buffered = Vec::new();
    if input_of(&cli.command).is_some_and(|i| i.path.as_deref() == Some("-") || i.graph.as_deref() == Some("-")) {
        if let Err(e) = stdin.read_to_end(&mut buffered) {
            let _ = writeln!(stderr, "error: standard input: {e}");
            return EXIT_INPUT;
        }
    }
    let outcome = pool.install(|| dispatch(&cli.command, &mut buffered.as_slice()));
    match outcome {
        Ok((text, code)) => match emit(output_path(&cli.command), &text, stdout) {
            Ok(()) => code,
            Err(f) => {
                let _ = writeln!(stderr, "error: {}", f.message);
                f.code
            }
        },
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn thread_pool() -> std::result::Result<rayon::ThreadPool, Failure> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v.trim().parse::<usize>().map_err(|_| {
            Failure::usage(format!("{THREADS_ENV}: expected a non-negative integer, got `{v}`"))
        })?,
        _ => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::usage(format!("{THREADS_ENV}: {e}")))
}

fn input_of(cmd: &Command) -> Option<&InputArgs> {
    match cmd {
        Command::Gen(_) => None,
        Command::Curvature(a) => Some(&a.input),
        Command::Diam(a) => Some(&a.input),
        Command::Rho(a) => Some(&a.input),
        Command::SemigroupCheck(a) => Some(&a.input),
        Command::Verify(a) | Command::Report(a) => Some(&a.input),
    }
}

fn output_path(cmd: &Command) -> &str {
    match cmd {
        Command::Gen(a) => &a.output,
        Command::Curvature(a) => &a.output.output,
        Command::Diam(a) => &a.output.output,
        Command::Rho(a) => &a.output.output,
        Command::SemigroupCheck(a) => &a.output.output,
        Command::Verify(a) | Command::Report(a) => &a.output.output,
    }
}

fn emit(path: &str, text: &str, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    if path == "-" {
        stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::input("standard output", e))
    } else {
        std::fs::write(path, text).map_err(|e| Failure::input(&format!("-o {path}"), e))
    }
}

fn dispatch(cmd: &Command, stdin: &mut dyn Read) -> Outcome {
    match cmd {
        Command::Gen(a) => gen(a),
        Command::Curvature(a) => curvature(a, stdin),
        Command::Diam(a) => diam(a, stdin),
        Command::Rho(a) => rho(a, stdin),
        Command::SemigroupCheck(a) => semigroup_check(a, stdin),
        Command::Verify(a) => report(a, stdin, true),
        Command::Report(a) => report(a, stdin, false),
    }
}

fn parse_family(arg: &str) -> std::result::Result<Family, Failure> {
    let bad = || Failure::usage(format!("--family: expected NAME:SIZE, got `{arg}`"));
    let (name, size) = arg.split_once(':').ok_or_else(bad)?;
    let size = size.parse().map_err(|_| bad())?;
    Family::from_name(name, size).map_err(|e| Failure::usage(format!("--family: {e}")))
}

fn load(input: &InputArgs, stdin: &mut dyn Read) -> std::result::Result<(WeightedGraph, String), Failure> {
    let sources = [input.path.is_some(), input.graph.is_some(), input.family.is_some()];
    match sources.iter().filter(|&&s| s).count() {
        1 => {}
        0 => return Err(Failure::usage("no input: give INPUT, --graph PATH or --family NAME:SIZE")),
        _ => return Err(Failure::usage("more than one input among INPUT, --graph and --family")),
    }
    if let Some(arg) = &input.family {
        let family = parse_family(arg)?;
        let convention = input.measure.unwrap_or_default();
        let g = family
            .generate(convention)
            .map_err(|e| Failure::input(&format!("--family {arg}"), e))?;
        return Ok((g, arg.clone()));
    }
    let (flag, path) = match (&input.path, &input.graph) {
        (Some(p), _) => ("INPUT", p.as_str()),
        (_, Some(p)) => ("--graph", p.as_str()),
        _ => unreachable!(),
    };
    let context = format!("{flag} {path}");
    let text = if path == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|e| Failure::input(&context, e))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::input(&context, e))?
    };
    let mut g = parse_graph(&text).map_err(|e| Failure::input(&context, e))?;
    if let Some(c) = input.measure {
        g = g.with_convention(c).map_err(|e| Failure::input("--measure", e))?;
    }
    let name = if path == "-" { "stdin".to_owned() } else { path.to_owned() };
    Ok((g, name))
}

fn lib(context: &str) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure::input(context, e)
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.10}")
    } else {
        format_real(v)
    }
}

fn dims_or_inf(n: &[Dimension]) -> Vec<Dimension> {
    if n.is_empty() {
        vec![Dimension::Infinite]
    } else {
        n.to_vec()
    }
}

fn gen(a: &GenArgs) -> Outcome {
    let family = Family::from_name(&a.family, a.size).map_err(|e| Failure::usage(format!("FAMILY: {e}")))?;
    let g = family
        .generate(a.measure)
        .map_err(|e| Failure::input(&format!("{} {}", a.family, a.size), e))?;
    Ok((to_json(&g), EXIT_OK))
}

fn curvature(a: &CurvatureArgs, stdin: &mut dyn Read) -> Outcome {
    let (g, _) = load(&a.input, stdin)?;
    if a.dump_forms {
        let forms = (0..g.len())
            .map(|x| Ok(local_forms(&g, x)?.to_json(&g)))
            .collect::<crate::Result<Vec<_>>>()
            .map_err(lib("--dump-forms"))?;
        return Ok((json_text(&Value::Array(forms)), EXIT_OK));
    }
    let mut rows = Vec::new();
    let mut minima = Vec::new();
    for n in dims_or_inf(&a.n) {
        let c = graph_curvature(&g, n).map_err(lib(&format!("--n {n}")))?;
        minima.push((n, c.value, c.argmin));
        rows.extend(c.per_vertex);
    }
    let text = match a.output.format {
        Format::Json => json_text(&json!({
            "rows": rows.iter().map(|r| r.to_row(&g)).collect::<Vec<_>>(),
            "minimum": minima.iter().map(|(n, k, v)| json!({
                "n": real_json::to_value(n.value()),
                "value": real_json::to_value(*k),
                "vertex": v.map(|v| g.id(v)),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("vertex,n,value,s1,s2\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    g.id(r.vertex),
                    format_real(r.n.value()),
                    format_real(r.value),
                    r.diagnostics.s1,
                    r.diagnostics.s2
                );
            }
            s
        }
        Format::Table => {
            let width = g.ids().iter().map(|s| s.len()).max().unwrap_or(1).max(6);
            let mut s = format!("{:<width$} {:>6} {:>16} {:>4} {:>4}\n", "vertex", "n", "K", "|S1|", "|S2|");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:<width$} {:>6} {:>16} {:>4} {:>4}",
                    g.id(r.vertex),
                    r.n.to_string(),
                    num(r.value),
                    r.diagnostics.s1,
                    r.diagnostics.s2
                );
            }
            for (n, k, v) in &minima {
                let at = v.map_or(String::new(), |v| format!(" at {}", g.id(v)));
                let _ = writeln!(s, "K(n={n}) = {}{at}", num(*k));
            }
            s
        }
    };
    Ok((text, EXIT_OK))
}

fn diam(a: &DiamArgs, stdin: &mut dyn Read) -> Outcome {
    let (g, _) = load(&a.input, stdin)?;
    let diam_d = g.combinatorial_diameter();
    let rho = if g.is_connected() {
        let table = resistance_table(&g, &a.rho.options(), a.rho.budget(&g)).map_err(lib("--rho-tol"))?;
        Some(diameter_of(table))
    } else {
        None
    };
    let value = rho.as_ref().map(|r| r.value);
    let pair = rho.as_ref().and_then(|r| r.pair).map(|(x, y)| (g.id(x), g.id(y)));
    let text = match a.output.format {
        Format::Json => json_text(&json!({
            "diam_d": diam_d,
            "diam_rho": value.map(real_json::to_value),
            "pair": pair,
        })),
        Format::Csv => format!(
            "diam_d,diam_rho,x,y\n{},{},{},{}\n",
            diam_d,
            value.map(format_real).unwrap_or_default(),
            pair.map_or("", |p| p.0),
            pair.map_or("", |p| p.1)
        ),
        Format::Table => {
            let mut s = format!("diam_d    {diam_d}\n");
            match (value, pair) {
                (Some(v), Some((x, y))) => {
                    let _ = writeln!(s, "diam_rho  {} between {x} and {y}", num(v));
                }
                (Some(v), None) => {
                    let _ = writeln!(s, "diam_rho  {}", num(v));
                }
                _ => s.push_str("diam_rho  UNREACHABLE\n"),
            }
            s
        }
    };
    Ok((text, EXIT_OK))
}

fn rho(a: &RhoArgs, stdin: &mut dyn Read) -> Outcome {
    let (g, _) = load(&a.input, stdin)?;
    let opts = a.rho.options();
    let results = match (&a.x, &a.y) {
        (Some(x), Some(y)) => {
            let xi = g.index_of(x).ok_or_else(|| Failure::input("--x", Error::UnknownVertex(x.clone())))?;
            let yi = g.index_of(y).ok_or_else(|| Failure::input("--y", Error::UnknownVertex(y.clone())))?;
            vec![resistance_distance(&g, xi, yi, &opts).map_err(lib(&format!("--x {x} --y {y}")))?]
        }
        _ => resistance_table(&g, &opts, a.rho.budget(&g)).map_err(lib("--pairs"))?,
    };
    let text = match a.output.format {
        Format::Json => json_text(&Value::Array(
            results.iter().map(|r| r.to_json(&g, a.with_witness)).collect(),
        )),
        Format::Csv => {
            let mut s = String::from("x,y,value,converged,iterations\n");
            for r in &results {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    g.id(r.x),
                    g.id(r.y),
                    format_real(r.value),
                    r.converged,
                    r.iterations
                );
            }
            s
        }
        Format::Table => {
            let width = g.ids().iter().map(|s| s.len()).max().unwrap_or(1).max(1);
            let mut s = format!("{:<width$} {:<width$} {:>16} {:>9} {:>6}\n", "x", "y", "rho", "converged", "iters");
            for r in &results {
                let _ = writeln!(
                    s,
                    "{:<width$} {:<width$} {:>16} {:>9} {:>6}",
                    g.id(r.x),
                    g.id(r.y),
                    num(r.value),
                    r.converged,
                    r.iterations
                );
                if a.with_witness {
                    let w: Vec<String> = r.witness.iter().map(|v| format!("{v:.6}")).collect();
                    let _ = writeln!(s, "  witness [{}]", w.join(", "));
                }
            }
            s
        }
    };
    Ok((text, EXIT_OK))
}

fn semigroup_check(a: &SemigroupArgs, stdin: &mut dyn Read) -> Outcome {
    let (g, _) = load(&a.input, stdin)?;
    let prop = HeatPropagator::build(&g).map_err(lib("heat semigroup"))?;
    let functions: Vec<Vec<f64>> = (0..a.functions)
        .map(|i| random_function(g.len(), a.seed.wrapping_add(i)))
        .collect();
    // (n, K, per-function checks)
    let mut checks: Vec<(Dimension, f64, Vec<EnvelopeCheck>)> = Vec::new();
    for n in dims_or_inf(&a.n) {
        let k = match a.k {
            Some(k) => k,
            None => graph_curvature(&g, n).map_err(lib(&format!("--n {n}")))?.value,
        };
        if !k.is_finite() {
            return Err(Failure::input("--k", format!("curvature constant {k} is not finite; pass --k")));
        }
        if n.is_finite() && !(k > 0.0) {
            return Err(Failure::input(
                &format!("--n {n}"),
                format!("the finite-dimensional envelope needs K > 0, got {k}"),
            ));
        }
        let grid = default_t_grid(if k > 0.0 { k } else { 1.0 });
        let per = functions
            .iter()
            .map(|f| match n {
                Dimension::Infinite => check_cd_infty_envelope(&g, &prop, k, f, &grid),
                Dimension::Finite(_) => check_cd_n_envelope(&g, &prop, k, n, f, &grid),
            })
            .collect::<crate::Result<Vec<_>>>()
            .map_err(lib("envelope"))?;
        checks.push((n, k, per));
    }
    let text = match a.output.format {
        Format::Csv => {
            // Grid rows for the function drawn from `--seed`.
            let mut s = String::from("t,x,lhs,rhs,violation\n");
            for (_, _, per) in &checks {
                for r in &per[0].rows {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{}",
                        format_real(r.t),
                        g.id(r.x),
                        format_real(r.lhs),
                        format_real(r.rhs),
                        format_real(r.violation)
                    );
                }
            }
            s
        }
        Format::Json => json_text(&Value::Array(
            checks
                .iter()
                .map(|(n, k, per)| {
                    json!({
                        "n": real_json::to_value(n.value()),
                        "k": real_json::to_value(*k),
                        "functions": per.iter().enumerate().map(|(i, c)| json!({
                            "seed": a.seed.wrapping_add(i as u64),
                            "max_violation": real_json::to_value(c.max_violation),
                            "max_scaled": real_json::to_value(c.max_scaled),
                            "passed": c.passed(),
                        })).collect::<Vec<_>>(),
                        "passed": per.iter().all(|c| c.passed()),
                    })
                })
                .collect(),
        )),
        Format::Table => {
            let mut s = format!("{:<6} {:>14} {:>10} {:>16}  verdict\n", "n", "K", "functions", "max scaled");
            for (n, k, per) in &checks {
                let worst = per.iter().map(|c| c.max_scaled).fold(f64::NEG_INFINITY, f64::max);
                let ok = per.iter().all(|c| c.passed());
                let _ = writeln!(
                    s,
                    "{:<6} {:>14} {:>10} {:>16.3e}  {}",
                    n.to_string(),
                    num(*k),
                    per.len(),
                    worst,
                    if ok { "ok" } else { "FAILED" }
                );
            }
            s
        }
    };
    Ok((text, EXIT_OK))
}

fn report(a: &ReportArgs, stdin: &mut dyn Read, verify: bool) -> Outcome {
    let (g, name) = load(&a.input, stdin)?;
    let convention = a.input.measure.or(a.input.family.as_ref().map(|_| MeasureConvention::Unit));
    let opts = ReportOptions {
        name,
        convention,
        rho: a.rho.options(),
        budget: a.rho.pairs,
        n_grid: (!a.n.is_empty()).then(|| a.n.clone()),
        seed: a.seed,
        functions: a.functions as usize,
    };
    let rep = full_report(&g, &opts).map_err(lib("report"))?;
    let violations = rep.violations();
    let code = if violations.is_empty() { EXIT_OK } else { EXIT_VIOLATION };
    let text = match a.output.format {
        Format::Json => json_text(&rep.to_json()),
        Format::Csv => rep.records_csv(),
        Format::Table if verify => {
            let mut s = String::new();
            for r in &rep.records {
                let n = r.n.map_or(String::new(), |n| format!(" (n={n})"));
                let detail = match (&r.verdict, r.bound, r.measured) {
                    (crate::bounds::Verdict::NotApplicable(reason), _, _) => format!("NOT-APPLICABLE: {reason}"),
                    (v, Some(b), Some(m)) => format!("{}: bound {} vs measured {}", v.label(), num(b), num(m)),
                    (v, _, _) => v.label().to_owned(),
                };
                let _ = writeln!(s, "{}{n}: {detail}", r.name);
            }
            let _ = writeln!(s, "distance-infty pairs: {}", rep.pairs.verdict.label());
            for e in &rep.envelopes {
                let _ = writeln!(
                    s,
                    "{} envelope (n={}): {}",
                    e.kind,
                    e.n,
                    if e.passed { "ok" } else { "FAILED" }
                );
            }
            for v in &violations {
                let _ = writeln!(s, "VIOLATION {v}");
            }
            for al in &rep.alerts {
                let _ = writeln!(s, "ALERT {al}");
            }
            let _ = writeln!(s, "{}", if violations.is_empty() { "all applicable bounds hold" } else { "bound violated" });
            s
        }
        Format::Table => rep.to_table(),
    };
    Ok((text, code))
}
