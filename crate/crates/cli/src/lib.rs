//! `lie-cx` command line.
//!
//! Exit codes: 0 on success or an integrable result, 1 when the answer is
//! mathematically negative (not integrable, not a complex structure, no
//! known structure), 2 on bad input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use lie_cx::constructions::bianchi_brackets;
use lie_cx::json::{algebra_from_json, AlgebraJson, EndomorphismJson, ReportJson};
use lie_cx::search::{emit_polynomial_system_with, numeric_search, EmitOptions, SearchConfig};
use lie_cx::{
    bianchi, catalog_specs, direct_product, format_rational, is_integrable, orthogonal_algebra,
    orthogonal_pairing, parse_rational, standard_structure, BianchiSpec, Endomorphism, Error,
    LieAlgebra, Matrix, Rational,
};
use serde_json::json;

pub const THREADS_ENV: &str = "LIE_CX_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "lie-cx",
    version,
    about = "Integrable complex structures on Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct TypeArgs {
    /// Bianchi type, 1 to 8
    #[arg(long = "type", value_name = "K")]
    type_id: u8,
    /// Parameter for types 4 and 6, as p/q
    #[arg(long, value_name = "P/Q", allow_hyphen_values = true)]
    theta: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the catalog of 3-dimensional algebras
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build g x g and its standard integrable complex structure
    Construct {
        #[command(flatten)]
        spec: TypeArgs,
        #[arg(long, value_name = "FILE")]
        algebra_out: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        j_out: Option<PathBuf>,
    },
    /// Check integrability of a structure read from JSON files
    Verify {
        #[arg(long, value_name = "FILE")]
        algebra: PathBuf,
        #[arg(long, value_name = "FILE")]
        j: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Multistart numeric search for a structure on g x g
    Search {
        #[command(flatten)]
        spec: TypeArgs,
        #[arg(long, default_value_t = 200)]
        starts: usize,
        #[arg(long, default_value_t = lie_cx::search::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 500)]
        max_iters: usize,
        /// Worker threads; falls back to LIE_CX_THREADS
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the polynomial integrability system of g x g
    Emit {
        #[command(flatten)]
        spec: TypeArgs,
        /// Keep only Nijenhuis equations on pairs inside the first factor
        #[arg(long)]
        reduce: bool,
        /// New basis of g as columns "a,b,c;d,e,f;g,h,i" (applied to both factors)
        #[arg(long, value_name = "COLUMNS", allow_hyphen_values = true)]
        basis: Option<String>,
        /// Fix entry (r, c) of J, 1-based: "r,c=p/q"; repeatable
        #[arg(long = "fix", value_name = "R,C=P/Q", allow_hyphen_values = true)]
        fix: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build o(n) x o(n) and its pairing structure
    Son {
        #[arg(long, value_name = "N")]
        n: usize,
        /// Print an integrability report instead of the structure
        #[arg(long)]
        verify: bool,
        #[arg(long, value_name = "FILE")]
        algebra_out: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        j_out: Option<PathBuf>,
    },
}

enum Failure {
    Negative(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoKnownStructure { .. } | Error::NotAComplexStructure => {
                Failure::Negative(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Run with `args` (program name first); returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments");
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Negative(msg)) => {
            let _ = writeln!(err, "{msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Catalog { format } => catalog(format, out),
        Command::Construct {
            spec,
            algebra_out,
            j_out,
        } => construct(&spec, algebra_out.as_deref(), j_out.as_deref(), out),
        Command::Verify { algebra, j, format } => verify(&algebra, &j, format, out),
        Command::Search {
            spec,
            starts,
            seed,
            tol,
            max_iters,
            threads,
            format,
        } => {
            if starts == 0 {
                return Err(Failure::Usage("--starts must be at least 1".into()));
            }
            let config = SearchConfig {
                starts,
                seed,
                tol,
                max_iters,
                ..SearchConfig::default()
            };
            search(&spec, &config, threads, format, out)
        }
        Command::Emit {
            spec,
            reduce,
            basis,
            fix,
            format,
        } => emit(&spec, reduce, basis.as_deref(), &fix, format, out),
        Command::Son {
            n,
            verify,
            algebra_out,
            j_out,
        } => son(n, verify, algebra_out.as_deref(), j_out.as_deref(), out),
    }
}

fn parse_spec(args: &TypeArgs) -> Result<BianchiSpec, Failure> {
    let theta = args.theta.as_deref().map(parse_rational).transpose()?;
    Ok(BianchiSpec::new(args.type_id, theta)?)
}

fn io_error(path: &Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn emit_line(out: &mut dyn Write, text: &str) -> Outcome {
    writeln!(out, "{text}").map_err(|e| Failure::Usage(format!("writing output: {e}")))
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn to_value<T: serde::Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("serializable")
}

fn catalog(format: Format, out: &mut dyn Write) -> Outcome {
    let specs = catalog_specs();
    match format {
        Format::Text => {
            for spec in &specs {
                let g = bianchi(spec);
                let brackets: Vec<String> = bianchi_brackets(spec)
                    .into_iter()
                    .fold(
                        Vec::<(usize, usize, Vec<String>)>::new(),
                        |mut acc, (i, j, k, c)| {
                            let term = format!("{}{}", coefficient(&c), g.labels()[k]);
                            match acc.last_mut() {
                                Some((a, b, terms)) if (*a, *b) == (i, j) => terms.push(term),
                                _ => acc.push((i, j, vec![term])),
                            }
                            acc
                        },
                    )
                    .into_iter()
                    .map(|(i, j, terms)| {
                        format!(
                            "[{},{}] = {}",
                            g.labels()[i],
                            g.labels()[j],
                            signed_sum(&terms)
                        )
                    })
                    .collect();
                let shown = if brackets.is_empty() {
                    "abelian".to_string()
                } else {
                    brackets.join(", ")
                };
                let admits = if spec.admits_structure() { "yes" } else { "no" };
                emit_line(
                    out,
                    &format!("{spec}: {shown}; integrable structure on g x g: {admits}"),
                )?;
            }
        }
        Format::Json => {
            let entries: Vec<_> = specs
                .iter()
                .map(|spec| {
                    json!({
                        "type": spec.type_id(),
                        "theta": spec.theta().map(format_rational),
                        "admits_structure": spec.admits_structure(),
                        "algebra": to_value(&AlgebraJson::from_algebra(&bianchi(spec))),
                    })
                })
                .collect();
            emit_line(out, &pretty(&json!(entries)))?;
        }
    }
    Ok(())
}

fn signed_sum(terms: &[String]) -> String {
    let mut s = terms[0].clone();
    for t in &terms[1..] {
        match t.strip_prefix('-') {
            Some(rest) => s.push_str(&format!(" - {rest}")),
            None => s.push_str(&format!(" + {t}")),
        }
    }
    s
}

fn coefficient(c: &Rational) -> String {
    match format_rational(c).as_str() {
        "1" => String::new(),
        "-1" => "-".into(),
        s => format!("{s} "),
    }
}

fn write_or_embed(
    g: &LieAlgebra<Rational>,
    j: &Endomorphism<Rational>,
    algebra_out: Option<&Path>,
    j_out: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    let algebra = to_value(&AlgebraJson::from_algebra(g));
    let structure = to_value(&EndomorphismJson::from_endomorphism(j));
    if let Some(path) = algebra_out {
        fs::write(path, pretty(&algebra)).map_err(|e| io_error(path, e))?;
    }
    if let Some(path) = j_out {
        fs::write(path, pretty(&structure)).map_err(|e| io_error(path, e))?;
    }
    emit_line(out, &pretty(&json!({ "algebra": algebra, "j": structure })))
}

fn construct(
    args: &TypeArgs,
    algebra_out: Option<&Path>,
    j_out: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    let spec = parse_spec(args)?;
    let (g, j) = standard_structure(&spec)?;
    write_or_embed(&g, &j, algebra_out, j_out, out)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

fn verify(algebra: &Path, j: &Path, format: Format, out: &mut dyn Write) -> Outcome {
    let g = algebra_from_json(&read(algebra)?)?;
    let j = serde_json::from_str::<EndomorphismJson>(&read(j)?)
        .map_err(|e| Failure::Usage(e.to_string()))?
        .to_endomorphism()?;
    if g.dim() != j.dim() {
        return Err(Failure::Usage(format!(
            "algebra has dimension {} but J is {}x{}",
            g.dim(),
            j.dim(),
            j.dim()
        )));
    }
    let report = is_integrable(&g, &j)?;
    report_output(&ReportJson::from_report(&report), format, out)?;
    if report.integrable {
        Ok(())
    } else {
        Err(Failure::Negative("not integrable".into()))
    }
}

fn report_output(report: &ReportJson, format: Format, out: &mut dyn Write) -> Outcome {
    match format {
        Format::Json => emit_line(out, &pretty(&to_value(report))),
        Format::Text => {
            emit_line(
                out,
                &format!(
                    "integrable: {} ({} basis pairs checked, {} nonzero)",
                    if report.integrable { "yes" } else { "no" },
                    report.pairs_checked,
                    report.nonzero_pairs.len()
                ),
            )?;
            for p in &report.nonzero_pairs {
                emit_line(
                    out,
                    &format!("N(e{},e{}) = [{}]", p.a, p.b, p.value.join(", ")),
                )?;
            }
            Ok(())
        }
    }
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            Failure::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(None),
    }
}

fn search(
    args: &TypeArgs,
    config: &SearchConfig,
    threads: Option<usize>,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let spec = parse_spec(args)?;
    let g = bianchi(&spec);
    let product = direct_product(&g, &g);
    let result = match thread_count(threads)? {
        Some(0) => return Err(Failure::Usage("thread count must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::Usage(e.to_string()))?
            .install(|| numeric_search(&product, config)),
        None => numeric_search(&product, config),
    };
    match format {
        Format::Json => emit_line(out, &pretty(&result.to_json())),
        Format::Text => {
            emit_line(
                out,
                &format!(
                    "{spec}: best residual {:e} at start {}; {} of {} starts converged (seed {})",
                    result.best_residual,
                    result.best_start,
                    result.converged_starts,
                    result.starts,
                    result.seed
                ),
            )?;
            match &result.certified {
                Some(c) => emit_line(
                    out,
                    &format!("certified exact structure from start {}", c.start),
                ),
                None => emit_line(out, "no certified structure (numeric evidence only)"),
            }
        }
    }
}

fn parse_basis(s: &str) -> Result<Matrix<Rational>, Failure> {
    let columns = s
        .split(';')
        .map(|col| col.split(',').map(|x| parse_rational(x.trim())).collect())
        .collect::<lie_cx::Result<Vec<Vec<Rational>>>>()?;
    if columns.len() != 3 || columns.iter().any(|c| c.len() != 3) {
        return Err(Failure::Usage(
            "--basis needs three columns of three entries".into(),
        ));
    }
    Ok(Matrix::from_columns(&columns)?)
}

fn parse_fix(s: &str, dim: usize) -> Result<(usize, Rational), Failure> {
    let bad = || Failure::Usage(format!("--fix expects r,c=p/q, got {s:?}"));
    let (pos, value) = s.split_once('=').ok_or_else(bad)?;
    let (r, c) = pos.split_once(',').ok_or_else(bad)?;
    let r: usize = r.trim().parse().map_err(|_| bad())?;
    let c: usize = c.trim().parse().map_err(|_| bad())?;
    if r == 0 || c == 0 || r > dim || c > dim {
        return Err(Failure::Usage(format!(
            "--fix position ({r},{c}) outside 1..={dim}"
        )));
    }
    Ok(((r - 1) * dim + (c - 1), parse_rational(value.trim())?))
}

fn emit(
    args: &TypeArgs,
    reduce: bool,
    basis: Option<&str>,
    fix: &[String],
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let spec = parse_spec(args)?;
    let mut g = bianchi(&spec);
    if let Some(b) = basis {
        g = g.change_of_basis(&parse_basis(b)?)?;
    }
    let product = direct_product(&g, &g);
    let fixed = fix
        .iter()
        .map(|f| parse_fix(f, product.dim()))
        .collect::<Result<Vec<_>, _>>()?;
    let system = emit_polynomial_system_with(&product, &fixed, &EmitOptions { reduce })?;
    match format {
        Format::Text => write!(out, "{}", system.to_text())
            .map_err(|e| Failure::Usage(format!("writing output: {e}"))),
        Format::Json => emit_line(out, &pretty(&system.to_json())),
    }
}

fn son(
    n: usize,
    verify: bool,
    algebra_out: Option<&Path>,
    j_out: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    let g = orthogonal_algebra(n)?;
    let product = direct_product(&g, &g);
    let j = orthogonal_pairing(n)?;
    if !verify {
        return write_or_embed(&product, &j, algebra_out, j_out, out);
    }
    let report = is_integrable(&product, &j)?;
    report_output(&ReportJson::from_report(&report), Format::Json, out)?;
    if report.integrable {
        Ok(())
    } else {
        Err(Failure::Negative("not integrable".into()))
    }
}
