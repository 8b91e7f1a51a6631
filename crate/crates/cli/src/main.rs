use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quiverstokes::algebra::{parse_rational, render_rows, Basis, PolyMatrix, RatMatrix, Rational, TruncatedPoly};
use quiverstokes::braid::{equivalent, SearchLimits, SearchOutcome};
use quiverstokes::goodness::{check_good, find_good_quivers, mutation_basis};
use quiverstokes::quiver::Quiver;
use quiverstokes::stokes::{pipeline, stokes_product, Chamber, DtModel, StokesData};
use quiverstokes::verify::{verify, Scope};
use quiverstokes::{Error, Result};

#[derive(Parser)]
#[command(name = "quiverstokes", version, about = "Stokes data of quiver hearts")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate a quiver at a sequence of vertices, applied left to right.
    Mutate {
        /// Quiver JSON file, or `A<n>` for the linear quiver.
        quiver: String,
        /// Vertices, 1-based, comma separated.
        #[arg(long, value_delimiter = ',')]
        word: Vec<usize>,
    },
    /// Check whether a basis is good for a quiver, or list the good quivers
    /// of a basis when no quiver is given.
    Goodness {
        /// Basis JSON file (`{"rows": ...}`) or `tau<n>` for the triangular basis.
        basis: String,
        /// Quiver JSON file, or `A<n>`.
        quiver: Option<String>,
        #[arg(long, default_value_t = 3)]
        p: u32,
        /// Scale of the form when listing good quivers.
        #[arg(long, default_value_t = 1)]
        lambda: i64,
    },
    /// Ordered product of Stokes factors.
    Stokes {
        /// Quiver JSON file, or `A<n>`.
        quiver: String,
        /// Basis file or `tau<n>`; defaults to the basis found by mutation.
        #[arg(long)]
        basis: Option<String>,
        /// Chamber JSON file; defaults to every phase chamber.
        #[arg(long)]
        chamber: Option<String>,
        /// DT rule for classes without a value in the chamber.
        #[arg(long, value_enum, default_value_t = Model::Simples)]
        model: Model,
        /// Truncation order; exact when absent.
        #[arg(long)]
        p: Option<u32>,
        /// Evaluate at `sJ`, `0`, or a comma-separated point.
        #[arg(long)]
        eval: Option<String>,
    },
    /// Search for a braid, permutation and sign word relating two Stokes matrices.
    Equiv {
        /// Matrix JSON file (`{"entries": ...}`, entries integers or polynomials in s1..sn).
        source: String,
        target: String,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[arg(long, default_value_t = 64)]
        entry_bound: i64,
        /// Point at which polynomial entries are evaluated.
        #[arg(long, default_value = "sJ")]
        eval: String,
    },
    /// Reproduce the reference tables, matrices and relations.
    VerifyPaper {
        #[arg(default_value = "all")]
        scope: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Simples,
    Intervals,
}

/// Result of a command: the document to print and whether it passed.
struct Output {
    json: Value,
    text: String,
    pass: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
                Format::Text => print!("{}", out.text),
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: &Command) -> Result<Output> {
    match command {
        Command::Mutate { quiver, word } => {
            let q = read_quiver(quiver)?.mutate_word(word)?;
            Ok(Output { json: serde_json::to_value(&q)?, text: format!("{q}\n"), pass: true })
        }
        Command::Goodness { basis, quiver, p, lambda } => {
            let basis = read_basis(basis, None)?;
            match quiver {
                Some(q) => {
                    let q = read_quiver(q)?;
                    let report = check_good(&basis, &q.euler_form(), *p);
                    let mut text = format!("{}\n", if report.ok() { "good" } else { "not good" });
                    for v in &report.violations {
                        text.push_str(&format!("  {}\n", serde_json::to_string(v)?));
                    }
                    Ok(Output { json: report.to_json(), text, pass: report.ok() })
                }
                None => {
                    let found = find_good_quivers(&basis, *lambda, *p);
                    let text = found.iter().map(|g| format!("{}\n", g.describe())).collect();
                    let json = json!({ "count": found.len(), "quivers": found.iter().map(|g| g.to_json()).collect::<Vec<_>>() });
                    Ok(Output { json, text, pass: true })
                }
            }
        }
        Command::Stokes { quiver, basis, chamber, model, p, eval } => {
            let q = read_quiver(quiver)?;
            let basis = read_basis(basis.as_deref().unwrap_or("mutation"), Some(&q))?;
            let model = match model {
                Model::Simples => DtModel::SimplesOnly,
                Model::Intervals => DtModel::AnIntervals,
            };
            let runs: Vec<StokesData> = match chamber {
                Some(path) => {
                    let ch = Chamber::from_json(&read_json(path)?)?;
                    vec![stokes_product(&basis, &q.euler_form(), &model, &ch, *p)?]
                }
                None => pipeline(&q, &basis, *p)?.into_iter().map(|(_, d)| d).collect(),
            };
            stokes_output(&runs, eval.as_deref(), basis.rank())
        }
        Command::Equiv { source, target, depth, entry_bound, eval } => {
            let s1 = read_matrix(source, eval)?;
            let s2 = read_matrix(target, eval)?;
            let limits = SearchLimits { depth: *depth, entry_bound: *entry_bound, ..SearchLimits::default() };
            Ok(match equivalent(&s1, &s2, limits)? {
                SearchOutcome::Found(cert) => {
                    let text = format!(
                        "equivalent, {} braid moves, verified {}\n{}\n",
                        cert.word.braid_count(),
                        cert.verified && cert.replay(),
                        cert.word.to_json()
                    );
                    let pass = cert.verified && cert.replay();
                    Output { json: json!({ "outcome": "found", "certificate": cert.to_json() }), text, pass }
                }
                SearchOutcome::Inconclusive { states } => Output {
                    json: json!({ "outcome": "inconclusive", "states": states }),
                    text: format!("inconclusive after {states} states\n"),
                    pass: false,
                },
            })
        }
        Command::VerifyPaper { scope } => {
            let report = verify(Scope::parse(scope)?);
            Ok(Output { json: report.to_json(), text: report.to_text(), pass: report.pass() })
        }
    }
}

fn stokes_output(runs: &[StokesData], eval: Option<&str>, n: usize) -> Result<Output> {
    let mut products: Vec<(PolyMatrix, Vec<usize>)> = Vec::new();
    for (k, d) in runs.iter().enumerate() {
        match products.iter_mut().find(|(m, _)| *m == d.product) {
            Some((_, ks)) => ks.push(k + 1),
            None => products.push((d.product.clone(), vec![k + 1])),
        }
    }
    let point = eval.map(|e| parse_point(e, n)).transpose()?;
    let mut text = String::new();
    let mut distinct = Vec::new();
    for (m, ks) in &products {
        let mut entry = json!({ "chambers": ks, "product": m.to_json() });
        text.push_str(&format!("chambers {ks:?}\n{}", render_rows(&m.to_strings())));
        if let Some(pt) = &point {
            let v = m.evaluate(pt)?;
            text.push_str(&format!("evaluated\n{}", render_rows(&v.to_strings())));
            entry["evaluated"] = v.to_json();
        }
        distinct.push(entry);
    }
    let json = json!({
        "chambers": runs.len(),
        "unique": products.len() == 1,
        "products": distinct,
        "first": runs.first().map(StokesData::to_json),
    });
    Ok(Output { json, text, pass: products.len() == 1 })
}

fn read_json(path: &str) -> Result<Value> {
    let text = fs::read_to_string(Path::new(path)).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    Ok(serde_json::from_str(&text)?)
}

fn shorthand(s: &str, prefix: &str) -> Option<usize> {
    s.strip_prefix(prefix)?.parse().ok().filter(|&n| n > 0)
}

fn read_quiver(s: &str) -> Result<Quiver> {
    match shorthand(s, "A") {
        Some(n) => Ok(Quiver::linear_a(n)),
        None => Ok(serde_json::from_value(read_json(s)?)?),
    }
}

fn read_basis(s: &str, quiver: Option<&Quiver>) -> Result<Basis> {
    if let Some(n) = shorthand(s, "tau") {
        return Ok(Basis::triangular(n));
    }
    if s == "mutation" {
        let q = quiver.ok_or_else(|| Error::Parse("the mutation basis needs a quiver".into()))?;
        return mutation_basis(q);
    }
    let v = read_json(s)?;
    let rows: Vec<Vec<i64>> = serde_json::from_value(v.get("rows").cloned().unwrap_or(v))?;
    Basis::from_rows(rows)
}

fn parse_point(s: &str, n: usize) -> Result<Vec<Rational>> {
    match s {
        "sJ" => Ok(vec![Rational::from_integer(1.into()); n]),
        "0" => Ok(vec![Rational::from_integer(0.into()); n]),
        _ => {
            let point = s.split(',').map(|x| parse_rational(x.trim())).collect::<Result<Vec<_>>>()?;
            if point.len() != n {
                return Err(Error::VariableCount { left: n, right: point.len() });
            }
            Ok(point)
        }
    }
}

/// A matrix whose entries are integers, rationals or polynomials in
/// `s1..sn`, evaluated at `eval`.
fn read_matrix(path: &str, eval: &str) -> Result<RatMatrix> {
    let v = read_json(path)?;
    let rows = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse(format!("{path}: matrix needs an \"entries\" array")))?;
    let n = rows.len();
    let mut out = Vec::with_capacity(n);
    for r in rows {
        let r = r.as_array().ok_or_else(|| Error::Parse("row must be an array".into()))?;
        let row = r
            .iter()
            .map(|e| match e {
                Value::String(s) => TruncatedPoly::parse(s, n),
                Value::Number(x) => TruncatedPoly::parse(&x.to_string(), n),
                _ => Err(Error::Parse("entry must be a string or number".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(row);
    }
    PolyMatrix::from_rows(out)?.evaluate(&parse_point(eval, n)?)
}
