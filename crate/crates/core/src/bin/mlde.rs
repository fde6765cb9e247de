#![allow(clippy::result_large_err)]

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use mlde_core::catalog::{self, Designated};
use mlde_core::characters::{characters_full, verify_characters};
use mlde_core::classify::{classify_all, classify_case, CaseSpec, DEFAULT_DEPTHS};
use mlde_core::forms::{named_form, relations, FormName};
use mlde_core::mlde::{build_flat, frobenius_solve, frobenius_solve_log, indicial};
use mlde_core::rational::{fmt_rational, parse_rational};
use mlde_core::report::reproduce;
use mlde_core::series::SeriesJson;
use mlde_core::{Error, LogSeries, PuiseuxSeries, Rational};

const EXIT_VERIFY: u8 = 2;
const EXIT_USAGE: u8 = 3;
const EXIT_ORDER: u8 = 4;

#[derive(Parser)]
#[command(
    name = "mlde",
    version,
    about = "Exact q-series tools for the (♯_s)/(♭_s) MLDE families"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Truncation order; commands with their own verification defaults use those when unset.
    #[arg(long, global = true, env = "MLDE_DEFAULT_ORDER")]
    order: Option<usize>,
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (defaults to the number of processors).
    #[arg(long, global = true)]
    parallel: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Named forms and their differential relations.
    Forms {
        #[command(subcommand)]
        cmd: FormsCmd,
    },
    /// Indicial roots of (♭_s).
    Indicial {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Frobenius solution of (♭_s) at an indicial root.
    Solve {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        log: bool,
    },
    /// Applies (♭_s) to a series read from a JSON file.
    Apply {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        series: PathBuf,
    },
    /// The Diophantine classification of CFT-type parameters.
    Classify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4), conflicts_with = "all")]
        case: Option<u8>,
        #[arg(long, requires = "case")]
        depth: Option<usize>,
        #[arg(long)]
        all: bool,
    },
    /// Closed-form catalog solutions.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Ramond-twisted characters of the Deligne-series W-algebras.
    Characters {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        verify: bool,
    },
    /// Runs every verification and emits one report.
    Reproduce,
}

#[derive(Subcommand)]
enum FormsCmd {
    Dump {
        #[arg(long)]
        name: String,
    },
    Verify {
        #[arg(long)]
        group: Option<char>,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Build {
        #[arg(long)]
        label: String,
    },
    Verify {
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["all", "label"])]
        s: Option<String>,
        #[arg(long, conflicts_with = "all")]
        label: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Dumps a polynomial table in the data-file format.
    Polynomial {
        #[arg(long)]
        name: Option<String>,
    },
}

/// A command's result: the JSON payload, a table rendering, and whether it verified.
struct Outcome {
    json: serde_json::Value,
    table: String,
    ok: bool,
}

impl Outcome {
    fn new<T: Serialize>(v: &T, table: String, ok: bool) -> Result<Self, Error> {
        let json = serde_json::to_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Outcome { json, table, ok })
    }
}

fn rat_arg(s: &str) -> Result<Rational, Error> {
    parse_rational(s)
}

fn set_notation(v: &[Rational]) -> String {
    format!(
        "{{{}}}",
        v.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
    )
}

fn series_table(f: &PuiseuxSeries) -> String {
    let mut out = format!("q^{} · (", fmt_rational(f.base_exponent()));
    let body: Vec<String> = f
        .terms()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(e, c)| {
            let k = e - f.base_exponent();
            if num_traits::Zero::is_zero(&k) {
                fmt_rational(c)
            } else {
                format!("{}·q^{}", fmt_rational(c), fmt_rational(&k))
            }
        })
        .collect();
    out.push_str(&body.join(" + "));
    out.push_str(&format!(
        " + O(q^{}))",
        fmt_rational(&(f.precision() - f.base_exponent()))
    ));
    out
}

fn log_table(f: &LogSeries) -> String {
    format!(
        "plain: {}\nlog:   {}",
        series_table(&f.plain),
        series_table(&f.log_part)
    )
}

fn run(cmd: &Cmd, order: Option<usize>) -> Result<Outcome, Error> {
    let n = order.unwrap_or(50);
    match cmd {
        Cmd::Forms {
            cmd: FormsCmd::Dump { name },
        } => {
            let f = named_form(name.parse::<FormName>()?, n);
            Outcome::new(&SeriesJson::from(&f.series), series_table(&f.series), true)
        }
        Cmd::Forms {
            cmd: FormsCmd::Verify { group },
        } => {
            let groups: Vec<char> = match group {
                Some(g) if ('a'..='g').contains(g) => vec![*g],
                Some(g) => return Err(Error::Parse(format!("group must be a..g, got {g}"))),
                None => ('a'..='g').collect(),
            };
            let mut reps = Vec::new();
            for g in groups {
                reps.extend(relations::verify_group(g, order)?);
            }
            let ok = reps.iter().all(|r| {
                r.status.is_verified() || relations::QUARANTINED.contains(&r.label.as_str())
            });
            let table = reps
                .iter()
                .map(|r| {
                    let q = if relations::QUARANTINED.contains(&r.label.as_str()) {
                        " (quarantined)"
                    } else {
                        ""
                    };
                    format!(
                        "{:<8} {}{}",
                        r.label,
                        if r.status.is_verified() {
                            "verified"
                        } else {
                            "FAILED"
                        },
                        q
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Outcome::new(&reps, table, ok)
        }
        Cmd::Indicial { s } => {
            let r = indicial(&build_flat(&rat_arg(s)?, 1))?;
            let mut sorted = r.roots.clone();
            sorted.sort();
            let table = format!("roots {}", set_notation(&sorted));
            Outcome::new(&r, table, true)
        }
        Cmd::Solve { s, alpha, log } => {
            let (s, a) = (rat_arg(s)?, rat_arg(alpha)?);
            let op = build_flat(&s, n + 1);
            if *log {
                let f = frobenius_solve_log(&op, &a, n)?;
                Outcome::new(&SeriesJson::from(&f), log_table(&f), true)
            } else {
                let f = frobenius_solve(&op, &a, n)?;
                Outcome::new(&SeriesJson::from(&f), series_table(&f), true)
            }
        }
        Cmd::Apply { s, series } => {
            let text = std::fs::read_to_string(series)
                .map_err(|e| Error::Parse(format!("{}: {e}", series.display())))?;
            let input: SeriesJson =
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let f = input.to_log_series()?;
            let lo = std::cmp::min(f.plain.base_exponent(), f.log_part.base_exponent()).clone();
            let span = num_traits::ToPrimitive::to_usize(&(f.precision() - lo).ceil().to_integer())
                .unwrap_or(0);
            let r = build_flat(&rat_arg(s)?, span + 1).apply_log(&f)?;
            let zero = r.plain.is_zero() && r.log_part.is_zero();
            Outcome::new(
                &json!({ "residual": SeriesJson::from(&r), "annihilated": zero }),
                log_table(&r),
                true,
            )
        }
        Cmd::Classify {
            case: Some(k),
            depth,
            ..
        } => {
            let mut c = CaseSpec::new(*k)?;
            if let Some(d) = depth {
                c = c.with_depth(*d);
            }
            let r = classify_case(&c);
            Outcome::new(&r, set_notation(&r.final_set), true)
        }
        Cmd::Classify { .. } => {
            let (all, reports) = classify_all(DEFAULT_DEPTHS)?;
            let v = json!({
                "final": all.iter().map(fmt_rational).collect::<Vec<_>>(),
                "cases": reports,
            });
            Outcome::new(&v, set_notation(&all), true)
        }
        Cmd::Catalog { cmd } => run_catalog(cmd, order),
        Cmd::Characters { algebra, verify } => {
            let r = if *verify {
                verify_characters(algebra, n)?
            } else {
                characters_full(algebra, n)?
            };
            let v = json!({
                "algebra": r.algebra,
                "s": fmt_rational(&r.s),
                "exponents": r.exponents.iter().map(fmt_rational).collect::<Vec<_>>(),
                "characters": r.characters,
                "verified": r.verified,
                "checks": if *verify { serde_json::to_value(&r).ok() } else { None },
            });
            let table = format!(
                "{} s={} exponents {} verified={}",
                r.algebra,
                fmt_rational(&r.s),
                set_notation(&r.exponents),
                r.verified
            );
            Outcome::new(&v, table, !*verify || r.verified)
        }
        Cmd::Reproduce => {
            let r = reproduce(order)?;
            let mut table = format!(
                "forms: unexpected failures {:?}, quarantined {:?}\n",
                r.forms.unexpected_failures, r.forms.quarantined
            );
            table += &format!("classify: {}\n", r.classify.final_set.join(", "));
            table += &format!(
                "catalog: unexpected failures {:?}, quarantined {}\n",
                r.catalog.unexpected_failures,
                r.catalog.quarantined.len()
            );
            for (k, v) in &r.characters {
                table += &format!("characters {k}: verified={}\n", v.verified);
            }
            table += &format!("ok={}", r.ok);
            Outcome::new(&r, table, r.ok)
        }
    }
}

fn run_catalog(cmd: &CatalogCmd, order: Option<usize>) -> Result<Outcome, Error> {
    match cmd {
        CatalogCmd::List => {
            let rows: Vec<serde_json::Value> = catalog::all_entries()
                .iter()
                .map(|e| {
                    let ops: Vec<String> = e
                        .operators
                        .iter()
                        .map(|o| match o {
                            Designated::Flat => "flat".to_string(),
                            Designated::Sharp(t) => format!("sharp_{}", fmt_rational(t)),
                            Designated::ThirdOrderBc => "third_order_Bc".to_string(),
                            Designated::ThirdOrderBk => "third_order_Bk".to_string(),
                        })
                        .collect();
                    json!({
                        "label": e.label,
                        "s": fmt_rational(&e.s),
                        "exponent": fmt_rational(&e.exponent),
                        "operators": ops,
                        "flags": e.flags,
                        "quarantined": catalog::QUARANTINED.contains(&e.label.as_str()),
                    })
                })
                .collect();
            let table = catalog::all_entries()
                .iter()
                .map(|e| {
                    format!(
                        "{:<12} s={:<8} α={}",
                        e.label,
                        fmt_rational(&e.s),
                        fmt_rational(&e.exponent)
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Outcome::new(&rows, table, true)
        }
        CatalogCmd::Build { label } => {
            let e = catalog::entry(label)?;
            let f =
                catalog::build_entry(label, order.unwrap_or_else(|| catalog::default_order(&e)))?;
            Outcome::new(&SeriesJson::from(&f), series_table(&f), true)
        }
        CatalogCmd::Verify { s, label, .. } => {
            let reps = match (s, label) {
                (_, Some(l)) => vec![catalog::verify_label(l, order)?],
                (Some(s), None) => catalog::verify_all(Some(&rat_arg(s)?), order),
                (None, None) => catalog::verify_all(None, order),
            };
            if reps.is_empty() {
                return Err(Error::NotInCandidateList(rat_arg(
                    s.as_deref().unwrap_or("0"),
                )?));
            }
            let ok = reps.iter().all(|r| {
                let printed =
                    r.status.is_verified() && r.companion.as_ref().is_none_or(|c| c.is_verified());
                printed || catalog::QUARANTINED.contains(&r.label.as_str())
            });
            let table = reps
                .iter()
                .map(|r| {
                    let st = if r.status.is_verified() {
                        "verified"
                    } else {
                        "FAILED"
                    };
                    let am = match &r.amendment {
                        Some(a) if a.status.is_verified() => " (amendment verified)",
                        Some(_) => " (amendment FAILED)",
                        None => "",
                    };
                    format!("{:<12} {st}{am}", r.label)
                })
                .collect::<Vec<_>>()
                .join("\n");
            Outcome::new(&reps, table, ok)
        }
        CatalogCmd::Polynomial { name } => {
            let data: Vec<_> = catalog::raw_data()
                .into_iter()
                .filter(|d| name.as_ref().is_none_or(|n| &d.name == n))
                .collect();
            if data.is_empty() {
                return Err(Error::UnknownLabel(name.clone().unwrap_or_default()));
            }
            let table = data
                .iter()
                .map(|d| format!("{} degree {} ({} terms)", d.name, d.degree, d.terms.len()))
                .collect::<Vec<_>>()
                .join("\n");
            if data.len() == 1 {
                Outcome::new(&data[0], table, true)
            } else {
                Outcome::new(&data, table, true)
            }
        }
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> std::io::Result<()> {
    match output {
        Some(p) => std::fs::write(p, format!("{text}\n")),
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{text}")
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.global.parallel {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    match run(&cli.cmd, cli.global.order) {
        Ok(o) => {
            let text = match cli.global.format {
                Format::Json => serde_json::to_string_pretty(&o.json).expect("serializable"),
                Format::Table => o.table,
            };
            if let Err(e) = emit(&text, cli.global.output.as_ref()) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InsufficientOrder { .. } => EXIT_ORDER,
                Error::NotAnnihilated { .. } | Error::PrefixMismatch { .. } => EXIT_VERIFY,
                _ => EXIT_USAGE,
            })
        }
    }
}
