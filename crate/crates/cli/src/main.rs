use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use slopestab::catalog;
use slopestab::exactalg::rat::{parse_rat, to_pq};
use slopestab::exactalg::Rat;
use slopestab::report::{self, Caps, Scope};
use slopestab::schema::VarietySpecDoc;
use slopestab::Error;

/// Exact slope-stability invariants of polarised varieties.
#[derive(Parser)]
#[command(name = "slopestab", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Upper end of every enumeration range (overrides SLOPESTAB_KMAX).
    #[arg(long, global = true, value_name = "INT")]
    kmax: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArg {
    /// Input document (JSON).
    #[arg(long, value_name = "FILE")]
    spec: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Slope of X, stability verdict, and the slope of Z at c when given.
    Slope {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, value_name = "RAT")]
        c: Option<String>,
    },
    /// Donaldson-Futaki invariant of the deformation to the normal cone.
    Futaki {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, value_name = "RAT")]
        c: String,
    },
    /// Chow slopes and, for curves, the asymptotic Chow verdict.
    Chow {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, value_name = "INT", default_value = "1")]
        c: String,
    },
    /// Newton diagram decomposition of a monomial test configuration.
    Newton {
        #[command(flatten)]
        spec: SpecArg,
    },
    /// Formula against enumeration.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
    /// Worked examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum OracleAction {
    Compare {
        /// p1, p2, graded, curve-local or all.
        #[arg(long, default_value = "all")]
        scope: String,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Run { id: String },
}

const EXIT_INTERNAL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InconsistentSamples(_) => EXIT_MISMATCH,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

/// What a command produced: a JSON value, its text form, and the exit code.
struct Outcome {
    value: Value,
    text: String,
    code: u8,
}

fn to_value<T: serde::Serialize>(x: &T) -> Result<Value, Failure> {
    serde_json::to_value(x).map_err(|e| Failure {
        code: EXIT_INTERNAL,
        message: e.to_string(),
    })
}

fn load(spec: &SpecArg) -> Result<VarietySpecDoc, Failure> {
    let raw = std::fs::read_to_string(&spec.spec)
        .map_err(|e| input(format!("cannot read {}: {e}", spec.spec.display())))?;
    Ok(VarietySpecDoc::from_json(&raw)?)
}

fn rat_arg(s: &str) -> Result<Rat, Failure> {
    parse_rat(s).map_err(|e| input(format!("--c: {e}")))
}

fn caps(kmax: Option<u64>) -> Result<Caps, Failure> {
    Ok(match kmax {
        Some(k) => Caps::uniform(k)?,
        None => Caps::from_env()?,
    })
}

fn text_of(v: &Value) -> String {
    let mut out = String::new();
    flatten("", v, &mut out);
    out
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

fn plain(value: Value, code: u8) -> Outcome {
    Outcome {
        text: text_of(&value),
        value,
        code,
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Slope { spec, c } => {
            let doc = load(spec)?;
            let c = c.as_deref().map(rat_arg).transpose()?;
            let rep = report::run_slope(&doc, c.as_ref())?;
            Ok(plain(to_value(&rep)?, 0))
        }
        Command::Futaki { spec, c } => {
            let doc = load(spec)?;
            let rep = report::run_futaki(&doc, &rat_arg(c)?)?;
            let code = if rep.agree { 0 } else { EXIT_INTERNAL };
            Ok(plain(to_value(&rep)?, code))
        }
        Command::Chow { spec, c } => {
            let doc = load(spec)?;
            let c: u64 = c
                .parse()
                .map_err(|_| input(format!("--c {c:?}: chow needs a positive integer")))?;
            let rep = report::run_chow(&doc, c)?;
            let code = if rep.leading_chow_weight.iter().all(|x| x.agree) {
                0
            } else {
                EXIT_MISMATCH
            };
            Ok(plain(to_value(&rep)?, code))
        }
        Command::Newton { spec } => {
            let doc = load(spec)?;
            let rep = report::run_newton(&doc, &caps(cli.kmax)?)?;
            let code = match &rep.oracle {
                Some(o) if !o.b0_match => EXIT_MISMATCH,
                _ => 0,
            };
            Ok(plain(to_value(&rep)?, code))
        }
        Command::Oracle {
            action: OracleAction::Compare { scope },
        } => {
            let scope: Scope = scope.parse()?;
            let rep = report::run_oracle_suite(scope, &caps(cli.kmax)?);
            let code = if rep.all_pass { 0 } else { EXIT_MISMATCH };
            Ok(Outcome {
                text: report::oracle_table(&rep),
                value: to_value(&rep)?,
                code,
            })
        }
        Command::Catalog {
            action: CatalogAction::List,
        } => {
            let entries = catalog::entries();
            let text = entries
                .iter()
                .map(|e| {
                    format!(
                        "{:<24} {:<22} {}\n",
                        e.id,
                        e.expected.status.as_str(),
                        e.description
                    )
                })
                .collect();
            Ok(Outcome {
                value: to_value(&entries)?,
                text,
                code: 0,
            })
        }
        Command::Catalog {
            action: CatalogAction::Run { id },
        } => {
            let entry = catalog::find(id)?;
            let run = catalog::run_entry(&entry)?;
            let code = if run.matches { 0 } else { EXIT_MISMATCH };
            let mut text = format!(
                "{}: {} (expected {})\nmu(X) = {}\n",
                run.id,
                run.report.verdict.status,
                run.expected.status,
                to_pq(&run.report.mu_x)
            );
            if let Some(c) = &run.report.verdict.c_star {
                text.push_str(&format!("c* = {}\n", to_pq(c)));
            }
            for m in &run.mismatches {
                text.push_str(&format!("MISMATCH {m}\n"));
            }
            Ok(Outcome {
                value: to_value(&run)?,
                text,
                code,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.json;
    let result = std::panic::catch_unwind(|| run(&cli)).unwrap_or_else(|p| {
        let message = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "internal error".into());
        Err(Failure {
            code: EXIT_INTERNAL,
            message,
        })
    });
    match result {
        Ok(out) => {
            let body = if json {
                serde_json::to_string_pretty(&out.value).expect("value serialises") + "\n"
            } else {
                out.text
            };
            // A closed pipe (e.g. `| head`) is not an error of ours.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(out.code)
        }
        Err(f) => {
            if json {
                eprintln!("{}", json!({"error": f.message, "exit_code": f.code}));
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
