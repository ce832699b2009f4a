//! Command-line front end: JSON input documents for user-defined groups,
//! homomorphisms, and diagram assertions; commands for normal forms,
//! diagram checks, and the built-in verification suite; stable text and
//! JSON reports.

mod input;
mod report;

pub use input::{parse_input, run_assertions as run_doc, Assertion, CliError, InputDocument};
pub use report::{emit_json, emit_text};

use crate::abgroup::{smith_normal_form, IntMatrix};
use crate::fixtures::{load_fixture, FixtureName};
use crate::verify::{run_all, Case, VerifyConfig, VerifyReport};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "totalk",
    about = "Exact verification of graded K-theory invariants: normal forms, diagram checks, and the built-in suite",
    disable_help_subcommand = true
)]
struct TopLevel {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form of an integer matrix read from a JSON file.
    Snf {
        file: String,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Validate and run the assertions of a JSON input document.
    Check {
        file: String,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// The built-in verification suite over the bundled fixtures.
    Paper {
        #[command(subcommand)]
        action: PaperAction,
    },
    /// Inspect the bundled fixtures.
    Fixture {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand)]
enum PaperAction {
    /// Run the verification cases.
    Verify {
        #[arg(long, default_value = "all")]
        case: String,
        #[arg(long)]
        max_coeff: Option<u64>,
        #[arg(long)]
        window: Option<u64>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    /// Print the groups, maps, scale, and cone of a fixture.
    Dump {
        name: String,
        #[arg(long)]
        max_coeff: Option<u64>,
        #[arg(long, default_value = "json")]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exit codes: 0 = all checks pass, 1 = a verification failed (witnesses in
/// the report), 2 = input error.
pub fn dispatch(args: &[String]) -> (i32, String) {
    let parsed = match TopLevel::try_parse_from(args) {
        Ok(p) => p,
        Err(e) => return (2, e.to_string()),
    };
    match parsed.command {
        Command::Snf { file, format } => cmd_snf(&file, format),
        Command::Check { file, format } => cmd_check(&file, format),
        Command::Paper { action: PaperAction::Verify { case, max_coeff, window, format } } => {
            cmd_verify(&case, max_coeff, window, format)
        }
        Command::Fixture { action: FixtureAction::Dump { name, max_coeff, format } } => {
            cmd_dump(&name, max_coeff, format)
        }
    }
}

fn env_u64(name: &str) -> Option<u64> {
    std::env::var(name).ok().and_then(|v| v.parse().ok())
}

fn config_from(max_coeff: Option<u64>, window: Option<u64>) -> VerifyConfig {
    let defaults = VerifyConfig::default();
    VerifyConfig {
        max_coeff: max_coeff.or_else(|| env_u64("MAX_COEFF")).unwrap_or(defaults.max_coeff),
        window: window.or_else(|| env_u64("WINDOW")).unwrap_or(defaults.window),
    }
}

fn cmd_snf(file: &str, format: Format) -> (i32, String) {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return (2, format!("error: cannot read {}: {}", file, e)),
    };
    let matrix = match parse_matrix_file(&text) {
        Ok(m) => m,
        Err(e) => return (2, format!("error: {}", e)),
    };
    let snf = smith_normal_form(&matrix);
    match format {
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!("input ({}x{}):\n{}", matrix.rows(), matrix.cols(), matrix));
            out.push_str(&format!("S = U*M*V with diagonal {:?}\n", snf
                .diagonal()
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()));
            out.push_str(&format!("U:\n{}", snf.u));
            out.push_str(&format!("S:\n{}", snf.s));
            out.push_str(&format!("V:\n{}", snf.v));
            (0, out)
        }
        Format::Json => {
            let to_rows = |m: &IntMatrix| -> Vec<Vec<String>> {
                (0..m.rows())
                    .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
                    .collect()
            };
            let value = serde_json::json!({
                "rows": matrix.rows(),
                "cols": matrix.cols(),
                "diagonal": snf.diagonal().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                "u": to_rows(&snf.u),
                "s": to_rows(&snf.s),
                "v": to_rows(&snf.v),
            });
            (0, serde_json::to_string_pretty(&value).expect("serializable") + "\n")
        }
    }
}

fn parse_matrix_file(text: &str) -> Result<IntMatrix, String> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| format!("invalid JSON: {}", e))?;
    let rows_value = match &value {
        serde_json::Value::Array(_) => &value,
        serde_json::Value::Object(map) => map
            .get("entries")
            .ok_or_else(|| "expected a JSON array or an object with \"entries\"".to_string())?,
        _ => return Err("expected a JSON array or an object with \"entries\"".to_string()),
    };
    let serde_json::Value::Array(rows) = rows_value else {
        return Err("matrix entries must be an array of rows".to_string());
    };
    let mut data: Vec<Vec<BigInt>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let serde_json::Value::Array(cells) = row else {
            return Err(format!("row {} is not an array", i));
        };
        let mut out = Vec::new();
        for (j, cell) in cells.iter().enumerate() {
            out.push(input::json_bigint(cell).ok_or_else(|| {
                format!("entry ({}, {}) is not an integer", i, j)
            })?);
        }
        data.push(out);
    }
    if data.is_empty() {
        return Ok(IntMatrix::zero(0, 0));
    }
    let cols = data[0].len();
    if data.iter().any(|r| r.len() != cols) {
        return Err("ragged rows".to_string());
    }
    Ok(IntMatrix::from_rows(data))
}

fn cmd_check(file: &str, format: Format) -> (i32, String) {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return (2, format!("error: cannot read {}: {}", file, e)),
    };
    let doc = match parse_input(&text) {
        Ok(d) => d,
        Err(e) => return (2, format!("error: {}", e)),
    };
    let report = match input::run_assertions(&doc) {
        Ok(r) => r,
        Err(e) => return (2, format!("error: {}", e)),
    };
    let code = i32::from(!report.passed());
    let out = match format {
        Format::Text => emit_text(std::slice::from_ref(&report)),
        Format::Json => emit_json(std::slice::from_ref(&report)),
    };
    (code, out)
}

fn cmd_verify(
    case: &str,
    max_coeff: Option<u64>,
    window: Option<u64>,
    format: Format,
) -> (i32, String) {
    let case = match Case::from_str(case) {
        Ok(c) => c,
        Err(e) => return (2, format!("error: {}", e)),
    };
    let config = config_from(max_coeff, window);
    let reports: Vec<VerifyReport> = match run_all(case, config) {
        Ok(r) => r,
        Err(e) => return (2, format!("error: {}", e)),
    };
    let all_pass = reports.iter().all(VerifyReport::passed);
    let out = match format {
        Format::Text => emit_text(&reports),
        Format::Json => emit_json(&reports),
    };
    (i32::from(!all_pass), out)
}

fn cmd_dump(name: &str, max_coeff: Option<u64>, format: Format) -> (i32, String) {
    let fixture_name = match FixtureName::from_str(name) {
        Ok(n) => n,
        Err(e) => return (2, format!("error: {}", e)),
    };
    let config = config_from(max_coeff, None);
    let bundle = match load_fixture(fixture_name, config.max_coeff) {
        Ok(b) => b,
        Err(e) => return (2, format!("error: {}", e)),
    };
    let value = report::bundle_to_json(&bundle);
    match format {
        Format::Json => (0, serde_json::to_string_pretty(&value).expect("serializable") + "\n"),
        Format::Text => (0, report::bundle_to_text(&bundle)),
    }
}
