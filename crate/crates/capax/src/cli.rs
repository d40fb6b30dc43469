//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed verification or false verdict, 2 usage
//! or input error, 3 numerical failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use capax_core::graph::{hamming_graph, strong_power};
use capax_core::independence::{CountStatus, SearchOptions, SearchStatus};
use capax_core::scheme::{profile_matrix, profile_spectrum, DistanceProfile};
use capax_core::spectra::{
    exact_psd_certify, group_eigenvalues, lambda_max, sym_eigenvalues, MULTIPLICITY_GAP,
};
use capax_core::theta::{
    lovasz_theta, schrijver_theta, Constraint, SdpStatus, ThetaProgram, ThetaVariant,
};
use capax_core::{Graph, Rational, RationalSymMatrix, SearchBudget};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::format::{emit_graph, parse_graph, GraphFormat};
use crate::pipeline::{render_text, run_counterexample, PipelineOptions};
use crate::{fixtures, search, Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

const TOL_RANGE: (f64, f64) = (1e-8, 1e-2);

#[derive(Parser, Debug)]
#[command(
    name = "capax",
    version,
    about = "Independence numbers, theta functions and Shannon capacity bounds"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Builtin graph: hamming:<m>:<d1,d2,..>, complete:<n>, cycle:<n>, empty:<n>, petersen
    #[arg(long, global = true)]
    pub builtin: Option<String>,
    /// Graph file
    #[arg(long, global = true)]
    pub graph: Option<PathBuf>,
    #[arg(long, global = true, default_value = "edgelist")]
    pub graph_format: GraphFormat,
    /// SDP tolerance, within [1e-8, 1e-2]
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, global = true)]
    pub max_nodes: Option<u64>,
    #[arg(long, global = true)]
    pub max_seconds: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantArg {
    Lovasz,
    Schrijver,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit the selected graph
    Build,
    /// Independence number by exact branch and bound
    Alpha {
        /// Also count the maximum independent sets
        #[arg(long)]
        count: bool,
    },
    /// Lovász theta by SDP
    Theta,
    /// Schrijver theta by SDP
    ThetaPrime,
    /// Adjacency spectrum with multiplicities
    Spectrum,
    /// Emit the k-fold strong power of the graph
    StrongPower {
        #[arg(long)]
        k: usize,
    },
    /// Check that a JSON array of vertex indices is independent
    VerifySet {
        #[arg(long)]
        set: PathBuf,
    },
    /// Check a dual certificate matrix exactly
    VerifyCert {
        /// JSON matrix of integers or "p/q" strings
        #[arg(long, conflicts_with = "profile")]
        matrix: Option<PathBuf>,
        /// Hamming distance profile f(0),..,f(m), entries integers or p/q
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        profile: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = VariantArg::Schrijver)]
        variant: VariantArg,
        /// Certify λ_max(X) ≤ claim exactly
        #[arg(long)]
        claim: Option<String>,
    },
    /// Reproduce the counterexample chain and print the report
    Counterexample {
        /// Also run the budgeted exact search on the product graph
        #[arg(long)]
        exact_product: bool,
    },
}

/// Parses `argv` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match execute(&cli) {
        Ok((text, code)) => match emit(&cli.global, &text, stdout) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                exit_code(&e)
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    use capax_core::Error as C;
    match e {
        Error::FixtureCheck { .. } => EXIT_FAILED,
        Error::Numerical(_) | Error::Core(C::NoConvergence(_)) | Error::Core(C::NonFinite(..)) => {
            EXIT_NUMERICAL
        }
        _ => EXIT_USAGE,
    }
}

fn emit(global: &GlobalArgs, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match &global.out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

/// Parses a builtin graph name.
pub fn builtin_graph(name: &str) -> Result<Graph> {
    let parts: Vec<&str> = name.split(':').collect();
    let num = |s: &str| -> Result<usize> {
        s.trim()
            .parse()
            .map_err(|_| usage(format!("bad number {s:?} in builtin {name:?}")))
    };
    match parts.as_slice() {
        ["petersen"] => Ok(Graph::petersen()),
        ["complete", n] => Ok(Graph::complete(num(n)?)),
        ["empty", n] => Ok(Graph::empty(num(n)?)),
        ["cycle", n] => Ok(Graph::cycle(num(n)?)?),
        ["hamming", m, ds] => {
            let ds = ds.split(',').map(num).collect::<Result<Vec<_>>>()?;
            Ok(hamming_graph(num(m)?, &ds)?)
        }
        _ => Err(usage(format!(
            "unknown builtin {name:?}; expected hamming:<m>:<d1,..>, complete:<n>, cycle:<n>, empty:<n> or petersen"
        ))),
    }
}

fn load_graph(global: &GlobalArgs) -> Result<Graph> {
    match (&global.builtin, &global.graph) {
        (Some(name), None) => builtin_graph(name),
        (None, Some(path)) => parse_graph(&std::fs::read_to_string(path)?, global.graph_format),
        (Some(_), Some(_)) => Err(usage("give exactly one of --builtin and --graph")),
        (None, None) => Err(usage("this command needs a graph: --builtin or --graph")),
    }
}

fn budget(global: &GlobalArgs) -> Result<SearchBudget> {
    let d = SearchBudget::default();
    Ok(SearchBudget::new(
        global.max_nodes.unwrap_or(d.max_nodes),
        global.max_seconds.unwrap_or(d.max_seconds),
    )?)
}

fn check_tol(tol: f64) -> Result<()> {
    if (TOL_RANGE.0..=TOL_RANGE.1).contains(&tol) {
        Ok(())
    } else {
        Err(usage(format!(
            "--tol {tol:e} outside [{:e}, {:e}]",
            TOL_RANGE.0, TOL_RANGE.1
        )))
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("in-memory JSON");
    s.push('\n');
    s
}

fn rat_str(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| usage(format!("bad rational {s:?}")))
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    let g = &cli.global;
    check_tol(g.tol)?;
    let json = g.format == OutputFormat::Json;
    match &cli.command {
        Command::Build => {
            let graph = load_graph(g)?;
            Ok((graph_output(&graph, g), EXIT_OK))
        }
        Command::StrongPower { k } => {
            let graph = strong_power(&load_graph(g)?, *k)?;
            Ok((graph_output(&graph, g), EXIT_OK))
        }
        Command::Alpha { count } => alpha(&load_graph(g)?, budget(g)?, *count, json),
        Command::Theta => theta(&load_graph(g)?, ThetaVariant::Lovasz, g.tol, json),
        Command::ThetaPrime => theta(&load_graph(g)?, ThetaVariant::Schrijver, g.tol, json),
        Command::Spectrum => spectrum(&load_graph(g)?, json),
        Command::VerifySet { set } => {
            let graph = load_graph(g)?;
            let vertices = fixtures::parse_vertex_set(&std::fs::read_to_string(set)?)?;
            let ok = fixtures::check_independent(&graph, &vertices)?;
            let text = if json {
                pretty(&json!({ "independent": ok, "size": vertices.len() }))
            } else if ok {
                format!("independent set of size {}\n", vertices.len())
            } else {
                format!("not independent ({} vertices)\n", vertices.len())
            };
            Ok((text, if ok { EXIT_OK } else { EXIT_FAILED }))
        }
        Command::VerifyCert {
            matrix,
            profile,
            variant,
            claim,
        } => verify_cert(
            &load_graph(g)?,
            matrix.as_ref(),
            profile.as_deref(),
            *variant,
            claim.as_deref(),
            json,
        ),
        Command::Counterexample { exact_product } => {
            if g.builtin.is_some() || g.graph.is_some() {
                return Err(usage(
                    "counterexample uses its own graph; drop --builtin/--graph",
                ));
            }
            let mut options = PipelineOptions::new(budget(g)?, g.tol);
            options.exact_product = *exact_product;
            options.product_budget = budget(g)?;
            options.threads = search::threads_from_env();
            let report = run_counterexample(&options)?;
            let text = if json {
                let mut s = serde_json::to_string_pretty(&report)?;
                s.push('\n');
                s
            } else {
                render_text(&report)
            };
            Ok((text, if report.verdict { EXIT_OK } else { EXIT_FAILED }))
        }
    }
}

fn graph_output(graph: &Graph, g: &GlobalArgs) -> String {
    match g.format {
        OutputFormat::Text => emit_graph(graph, g.graph_format),
        OutputFormat::Json => {
            let edges: Vec<[usize; 2]> = graph.edges().map(|(u, v)| [u, v]).collect();
            pretty(&json!({ "n": graph.n(), "edges": edges }))
        }
    }
}

fn alpha(graph: &Graph, budget: SearchBudget, count: bool, json: bool) -> Result<(String, i32)> {
    let out = search::max_independent_set(
        graph,
        budget,
        &SearchOptions::new(),
        search::threads_from_env(),
    )?;
    let exact = out.status == SearchStatus::Exact;
    let counted = if count && exact {
        Some(search::count_independent_sets(graph, out.size, budget))
    } else {
        None
    };
    let text = if json {
        let mut v = json!({
            "alpha": out.size,
            "status": if exact { "exact" } else { "lower-bound" },
            "certificate": out.certificate.vertices(),
            "nodes": out.nodes,
        });
        if let Some((c, st)) = counted {
            v["count"] = json!(c.to_string());
            v["count_status"] = json!(if st == CountStatus::Exact {
                "exact"
            } else {
                "partial"
            });
        }
        pretty(&v)
    } else {
        let mut s = if exact {
            format!("{}\n", out.size)
        } else {
            format!("{} (lower bound, budget exhausted)\n", out.size)
        };
        if let Some((c, st)) = counted {
            let tag = if st == CountStatus::Exact {
                ""
            } else {
                " (partial)"
            };
            writeln!(s, "maximum independent sets: {c}{tag}").ok();
        }
        s
    };
    Ok((text, EXIT_OK))
}

fn theta(graph: &Graph, variant: ThetaVariant, tol: f64, json: bool) -> Result<(String, i32)> {
    let sol = match variant {
        ThetaVariant::Lovasz => lovasz_theta(graph, tol)?,
        ThetaVariant::Schrijver => schrijver_theta(graph, tol)?,
    };
    let code = if sol.status == SdpStatus::Converged {
        EXIT_OK
    } else {
        EXIT_NUMERICAL
    };
    let text = if json {
        let mut s = serde_json::to_string_pretty(&sol)?;
        s.push('\n');
        s
    } else if code == EXIT_OK {
        format!("{:.4}\n", sol.value)
    } else {
        format!("{:.4} ({:?})\n", sol.value, sol.status)
    };
    Ok((text, code))
}

fn spectrum(graph: &Graph, json: bool) -> Result<(String, i32)> {
    let eig = sym_eigenvalues(&graph.adjacency_matrix(), 1e-12)?;
    let groups = group_eigenvalues(&eig, MULTIPLICITY_GAP);
    let text = if json {
        let v: Vec<Value> = groups
            .iter()
            .map(|(x, k)| json!({ "value": round6(*x), "multiplicity": k }))
            .collect();
        pretty(&Value::Array(v))
    } else {
        groups
            .iter()
            .map(|(x, k)| format!("{:.6} x{k}\n", round6(*x)))
            .collect()
    };
    Ok((text, EXIT_OK))
}

fn round6(x: f64) -> f64 {
    let r = (x * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn load_matrix(path: &PathBuf) -> Result<RationalSymMatrix> {
    let rows: Vec<Vec<Value>> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let n = rows.len();
    let entry = |v: &Value| -> Result<Rational> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(x) => match x.as_i64() {
                Some(i) => Ok(Rational::from_integer(i.into())),
                None => x
                    .as_f64()
                    .and_then(Rational::from_float)
                    .ok_or_else(|| usage(format!("bad matrix entry {x}"))),
            },
            other => Err(usage(format!("bad matrix entry {other}"))),
        }
    };
    let mut dense = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(usage(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        dense.push(row.iter().map(entry).collect::<Result<Vec<_>>>()?);
    }
    for i in 0..n {
        for j in 0..i {
            if dense[i][j] != dense[j][i] {
                return Err(usage(format!(
                    "matrix not symmetric at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(RationalSymMatrix::from_fn(n, |i, j| dense[i][j].clone()))
}

fn verify_cert(
    graph: &Graph,
    matrix: Option<&PathBuf>,
    profile: Option<&[String]>,
    variant: VariantArg,
    claim: Option<&str>,
    json: bool,
) -> Result<(String, i32)> {
    let (x, exact_lambda) = match (matrix, profile) {
        (Some(path), None) => (load_matrix(path)?, None),
        (None, Some(values)) => {
            let p = DistanceProfile::new(
                values
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<_>>()?,
            )?;
            (profile_matrix(&p)?, Some(profile_spectrum(&p).lambda_max()))
        }
        _ => return Err(usage("give exactly one of --matrix and --profile")),
    };
    let n = graph.n();
    if x.dim() != n {
        return Err(usage(format!(
            "matrix has dimension {}, graph has {n} vertices",
            x.dim()
        )));
    }
    let variant = match variant {
        VariantArg::Lovasz => ThetaVariant::Lovasz,
        VariantArg::Schrijver => ThetaVariant::Schrijver,
    };
    let program = ThetaProgram::new(graph.clone(), variant);
    let mut violation = Rational::zero();
    for i in 0..n {
        for j in 0..=i {
            let v = x.get(i, j);
            let excess = match program.constraint(i, j) {
                None => continue,
                Some(Constraint::EqualOne) => (v - Rational::one()).abs(),
                Some(Constraint::AtLeastOne) => (Rational::one() - v).max(Rational::zero()),
            };
            violation = violation.max(excess);
        }
    }
    let feasible = violation.is_zero();
    let (lambda_text, lambda_value) = match &exact_lambda {
        Some(l) => (rat_str(l), json!(rat_str(l))),
        None => {
            let l = lambda_max(&x.to_f64(), 1e-12)?;
            (format!("{l:.6}"), json!(l))
        }
    };
    let claim_result = match claim {
        Some(c) => {
            let c = parse_rational(c)?;
            Some((
                rat_str(&c),
                exact_psd_certify(&x.shifted_negation(&c)).is_psd(),
            ))
        }
        None => None,
    };
    let ok = feasible && claim_result.as_ref().is_none_or(|(_, holds)| *holds);
    let text = if json {
        let mut v = json!({
            "feasible": feasible,
            "max_violation": rat_str(&violation),
            "lambda_max": lambda_value,
            "lambda_max_exact": exact_lambda.is_some(),
        });
        if let Some((c, holds)) = &claim_result {
            v["claim"] = json!(c);
            v["claim_certified"] = json!(holds);
        }
        pretty(&v)
    } else {
        let mut s = String::new();
        writeln!(
            s,
            "feasible: {} (max violation {})",
            if feasible { "yes" } else { "no" },
            rat_str(&violation)
        )
        .ok();
        writeln!(
            s,
            "lambda_max: {lambda_text}{}",
            if exact_lambda.is_some() {
                " (exact)"
            } else {
                ""
            }
        )
        .ok();
        if let Some((c, holds)) = &claim_result {
            writeln!(
                s,
                "lambda_max <= {c}: {}",
                if *holds { "certified" } else { "refuted" }
            )
            .ok();
        }
        s
    };
    Ok((text, if ok { EXIT_OK } else { EXIT_FAILED }))
}
