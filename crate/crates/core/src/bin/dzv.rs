//! Command-line front end: reductions, generator and spanning sets, the
//! `ζ(odd,odd)` equations, dimension counts, verification and persisted tables.
//!
//! Exit codes: 0 success, 1 internal failure, 2 invalid input, 3 verification
//! failure, 4 I/O failure. Payloads go to stdout, diagnostics to stderr.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use dzv::exactsys::{exact_system_with, nontrivial_equations_with, spanning_set_dz};
use dzv::io::{equation_latex, reduction_latex, relation_latex, sum_latex, symbol_latex, write_table, JsonCodec, TableFile, TableStatus};
use dzv::numeric::{Evaluator, VerifyReport};
use dzv::reduce::{dim_bounds, generator_set, parse_epsilon, Reducer};
use dzv::relations::{cyclic, exact_relations_of_weight};
use dzv::{Error, Relation};

#[derive(Parser)]
#[command(name = "dzv", version, about = "Double zeta values of even weight: reduction and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce ζ(q,p) onto a generator set modulo products.
    Reduce {
        #[arg(short)]
        k: u32,
        #[arg(short)]
        q: u32,
        #[arg(short)]
        p: u32,
        /// Generator choice as a bit-string of length ⌊(k-2)/6⌋ (default all zeros).
        #[arg(short)]
        e: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Also certify the reduction numerically at this many digits.
        #[arg(long, value_name = "DIGITS")]
        verify: Option<u32>,
    },
    /// List the generator set of weight k.
    Generators {
        #[arg(short)]
        k: u32,
        #[arg(short)]
        e: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List the spanning set of DZ_k by ζ(odd,odd) combinations.
    Span {
        #[arg(short)]
        k: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List the nontrivial equations among ζ(odd,odd) of weight k.
    Relations {
        #[arg(short)]
        k: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print the dimension bounds of weight k.
    Dims {
        #[arg(short)]
        k: u32,
    },
    /// Verify every relation of weight k numerically.
    Verify {
        #[arg(short)]
        k: u32,
        #[arg(short, env = "DZV_DEFAULT_DIGITS", default_value_t = 50)]
        d: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Write reduction tables for weights 8..=max-k and both constant generator choices.
    Table {
        #[arg(long)]
        max_k: u32,
        #[arg(short, long)]
        o: PathBuf,
        /// Overwrite existing files instead of validating them.
        #[arg(long)]
        force: bool,
    },
}

/// A failure together with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidSymbol(_)
            | Error::MixedWeight { .. }
            | Error::Precondition(_)
            | Error::Parse(_) => 2,
            Error::NoRational(_)
            | Error::Reverification { .. }
            | Error::InsufficientPrecision { .. }
            | Error::TableMismatch(_) => 3,
            Error::Io(_) | Error::Json(_) => 4,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn even_weight(k: u32, min: u32) -> Result<(), Failure> {
    if k % 2 == 1 {
        return Err(invalid(format!("weight must be even, got {k}")));
    }
    if k < min {
        return Err(invalid(format!("weight must be at least {min}, got {k}")));
    }
    Ok(())
}

fn epsilon_for(k: u32, e: Option<&str>) -> Result<Vec<u8>, Failure> {
    let n = dim_bounds(k)?.dm_bound as usize;
    match e {
        None => Ok(vec![0; n]),
        Some(s) => Ok(parse_epsilon(s)?),
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn report_json(r: &VerifyReport) -> Value {
    json!({
        "label": r.label,
        "mode": r.mode.as_str(),
        "pass": r.pass,
        "digits": r.digits,
        "residual_log10": r.residual_log10,
        "threshold_log10": r.threshold_log10,
        "reverify": r.reverify.map(|(res, thr)| json!({"residual_log10": res, "threshold_log10": thr})),
        "coeffs": r.coefficients.as_ref().map(|c| c.to_repr()),
        "note": r.note,
    })
}

fn report_line(r: &VerifyReport) -> String {
    format!(
        "{} {} residual 1e{:.1} (threshold 1e{:.1}){}",
        if r.pass { "PASS" } else { "FAIL" },
        r.label,
        r.residual_log10,
        r.threshold_log10,
        r.note.as_ref().map(|n| format!(" — {n}")).unwrap_or_default()
    )
}

fn cmd_reduce(k: u32, q: u32, p: u32, e: Option<String>, format: Format, verify: Option<u32>) -> Outcome {
    even_weight(k, 4)?;
    if q + p != k {
        return Err(invalid(format!("q + p must equal the weight {k}, got {q} + {p}")));
    }
    let eps = epsilon_for(k, e.as_deref())?;
    let result = Reducer::new(k, &eps)?.reduce(q, p)?;
    let note = result
        .coefficients
        .is_empty()
        .then(|| format!("lies in PZ_{k}"));
    let report = match verify {
        Some(d) => Some(Evaluator::new().verify(&result.relation(), d)?),
        None => None,
    };
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(result.to_repr()).expect("serializable");
            if let Some(n) = &note {
                v["note"] = json!(n);
            }
            if let Some(r) = &report {
                v["verify"] = report_json(r);
            }
            print_json(&v);
        }
        Format::Text => {
            println!("{} = {} mod PZ_{k}", result.input, result.coefficients);
            if let Some(n) = &note {
                println!("note: {n}");
            }
            println!("generators: {}", result.generators);
            for step in &result.trace {
                println!("  {step}");
            }
            if let Some(r) = &report {
                println!("{}", report_line(r));
            }
        }
        Format::Latex => println!("{}", reduction_latex(&result)),
    }
    match report {
        Some(r) if !r.pass => Err(Failure {
            code: 3,
            message: format!("verification failed: {}", report_line(&r)),
        }),
        _ => Ok(()),
    }
}

fn cmd_generators(k: u32, e: Option<String>, format: Format) -> Outcome {
    even_weight(k, 2)?;
    let gens = generator_set(k, &epsilon_for(k, e.as_deref())?)?;
    match format {
        Format::Json => print_json(&json!({
            "weight": k,
            "epsilon": gens.epsilon_string(),
            "generators": gens.members().iter().map(|g| g.to_repr()).collect::<Vec<_>>(),
        })),
        Format::Text => {
            for g in gens.members() {
                println!("{g}");
            }
        }
        Format::Latex => {
            let items: Vec<String> = gens.members().iter().map(symbol_latex).collect();
            println!("\\{{{}\\}}", items.join(", "));
        }
    }
    Ok(())
}

fn cmd_span(k: u32, format: Format) -> Outcome {
    even_weight(k, 4)?;
    let span = spanning_set_dz(k)?;
    match format {
        Format::Json => print_json(&json!(span.iter().map(|s| s.to_repr()).collect::<Vec<_>>())),
        Format::Text => span.iter().for_each(|s| println!("{s}")),
        Format::Latex => span.iter().for_each(|s| println!("{}", sum_latex(s))),
    }
    Ok(())
}

fn cmd_relations(k: u32, format: Format) -> Outcome {
    even_weight(k, 4)?;
    let eqs = nontrivial_equations_with(&Evaluator::new(), k)?;
    match format {
        Format::Json => print_json(&json!(eqs.iter().map(|e| e.to_repr()).collect::<Vec<_>>())),
        Format::Text => eqs.iter().for_each(|e| println!("{e}")),
        Format::Latex => eqs.iter().for_each(|e| println!("{}", equation_latex(e))),
    }
    Ok(())
}

fn cmd_dims(k: u32) -> Outcome {
    even_weight(k, 2)?;
    println!("{}", serde_json::to_string(&dim_bounds(k)?).expect("serializable"));
    Ok(())
}

/// Every relation the library produces at weight `k`.
fn relation_suite(ev: &Evaluator, k: u32) -> Result<Vec<Relation>, Failure> {
    let mut suite = exact_relations_of_weight(k)?;
    for p in 1..=k / 3 {
        for q in p..=(k - p) / 2 {
            suite.push(cyclic(k - p - q, q, p)?);
        }
    }
    if k % 2 == 0 && k >= 4 {
        suite.extend(exact_system_with(ev, k)?.relations().iter().filter(|r| r.numerically_lifted).cloned());
        let n = dim_bounds(k)?.dm_bound as usize;
        for eps in [vec![0; n], vec![1; n]] {
            let mut engine = Reducer::new(k, &eps)?;
            for j in 2..k {
                let mut rel = engine.reduce(j, k - j)?.relation();
                rel.label = format!("{} e={}", rel.label, engine.generators().epsilon_string());
                suite.push(rel);
            }
            if n == 0 {
                break;
            }
        }
        suite.extend(nontrivial_equations_with(ev, k)?.iter().map(|e| e.relation()));
    }
    Ok(suite)
}

fn cmd_verify(k: u32, d: u32, format: Format) -> Outcome {
    if k < 3 {
        return Err(invalid(format!("weight must be at least 3, got {k}")));
    }
    dzv::numeric::check_digits(d)?;
    let ev = Evaluator::new();
    let suite = relation_suite(&ev, k)?;
    let reports = suite
        .iter()
        .map(|rel| ev.verify(rel, d))
        .collect::<Result<Vec<_>, _>>()?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    match format {
        Format::Json => print_json(&json!({
            "weight": k,
            "digits": d,
            "total": reports.len(),
            "failed": failed,
            "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
        })),
        Format::Text => {
            reports.iter().for_each(|r| println!("{}", report_line(r)));
            println!("{} relations, {failed} failed", reports.len());
        }
        Format::Latex => {
            for (rel, r) in suite.iter().zip(&reports) {
                println!("% {}", report_line(r));
                println!("{}", relation_latex(rel));
            }
        }
    }
    if failed > 0 {
        return Err(Failure {
            code: 3,
            message: format!("{failed} of {} relations failed verification at {d} digits", reports.len()),
        });
    }
    Ok(())
}

fn cmd_table(max_k: u32, dir: PathBuf, force: bool) -> Outcome {
    if max_k < 8 {
        return Err(invalid(format!("max-k must be at least 8, got {max_k}")));
    }
    let jobs: Vec<(u32, Vec<u8>)> = (8..=max_k)
        .step_by(2)
        .flat_map(|k| {
            let n = ((k - 2) / 6) as usize;
            [(k, vec![0; n]), (k, vec![1; n])]
        })
        .collect();
    let results: Vec<Result<(PathBuf, TableStatus), Error>> = jobs
        .par_iter()
        .map(|(k, eps)| write_table(&dir, &TableFile::build(*k, eps)?, force))
        .collect();
    let mut listing = Vec::new();
    for r in results {
        let (path, status) = r?;
        listing.push(json!({
            "file": path.display().to_string(),
            "status": match status {
                TableStatus::Written => "written",
                TableStatus::Validated => "validated",
            },
        }));
    }
    print_json(&json!(listing));
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Reduce { k, q, p, e, format, verify } => cmd_reduce(k, q, p, e, format, verify),
        Command::Generators { k, e, format } => cmd_generators(k, e, format),
        Command::Span { k, format } => cmd_span(k, format),
        Command::Relations { k, format } => cmd_relations(k, format),
        Command::Dims { k } => cmd_dims(k),
        Command::Verify { k, d, format } => cmd_verify(k, d, format),
        Command::Table { max_k, o, force } => cmd_table(max_k, o, force),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
