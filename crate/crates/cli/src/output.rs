use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};
use waring_core::table::RowOutcome;

use crate::Cli;

pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn validation(m: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VALIDATION,
            message: m.into(),
        }
    }

    pub fn inconclusive(m: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INCONCLUSIVE,
            message: m.into(),
        }
    }

    pub fn budget(m: impl Into<String>) -> Self {
        Failure {
            code: EXIT_BUDGET,
            message: m.into(),
        }
    }

    pub fn mismatch(m: impl Into<String>) -> Self {
        Failure {
            code: EXIT_MISMATCH,
            message: m.into(),
        }
    }
}

/// JSON on one line, or `key: value` lines.
pub fn emit(json: bool, v: &Value) {
    if json {
        println!("{v}");
        return;
    }
    match v {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, val) in map {
                let shown = match val {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                println!("{k:<width$}  {shown}");
            }
        }
        other => println!("{other}"),
    }
}

/// JSON lines, the first of which records the full configuration.
pub fn write_with_header(path: &Path, cli: &Cli, lines: &[Value]) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::validation(format!("{}: {e}", path.display()));
    let mut file = std::fs::File::create(path).map_err(io)?;
    let header = json!({ "config": format!("{cli:?}"), "seed": cli.seed });
    writeln!(file, "{header}").map_err(io)?;
    for l in lines {
        writeln!(file, "{l}").map_err(io)?;
    }
    Ok(())
}

pub fn print_table(rows: &[RowOutcome]) {
    let w = rows.iter().map(|r| r.label.chars().count()).max().unwrap_or(4).max(4);
    println!(
        "{:>3}  {:<w$} {:>3}  {:>5} {:>5}  {:>12} {:>12}  {:<10} status",
        "id", "case", "k", "δ exp", "δ obs", "# expected", "# observed", "method"
    );
    for r in rows {
        let obs = r.observed_delta.map_or("-".to_string(), |d| d.to_string());
        println!(
            "{:>3}  {:<w$} {:>3}  {:>5} {:>5}  {:>12} {:>12}  {:<10} {:?}{}",
            r.id,
            r.label,
            r.k,
            r.expected_delta,
            obs,
            r.expected_count.as_deref().unwrap_or(""),
            r.observed_count.as_deref().unwrap_or(""),
            r.method,
            r.status,
            if r.note.is_empty() {
                String::new()
            } else {
                format!("  ({})", r.note)
            }
        );
    }
}
