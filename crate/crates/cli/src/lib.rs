//! Script interpreter for exact henselization computations.
//!
//! A script is a sequence of commands, one per line:
//!
//! ```text
//! field Q 5
//! hensel a := (x^2 - 6, 1)
//! describe a^2 - 6
//! check a
//! ```

pub mod expr;
pub mod render;
pub mod session;

pub use expr::{parse_expr, SyntaxError};
pub use session::{CommandError, Report, Session};

/// Output of a whole script run.
#[derive(Debug, Clone, Default)]
pub struct RunOutcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

/// Runs every line of `script`, continuing past failures. The exit code is
/// the most severe failure seen: 2 for a parse error, 1 for a command
/// error, 0 otherwise.
pub fn run_script(script: &str, structured: bool, precision: u32) -> RunOutcome {
    let mut session = Session::new(precision);
    let mut out = RunOutcome::default();
    for (i, line) in script.lines().enumerate() {
        let lineno = i + 1;
        match session.execute(line) {
            Ok(None) => {}
            Ok(Some(report)) if structured => {
                out.stdout.push_str(&report.data.to_string());
                out.stdout.push('\n');
            }
            Ok(Some(report)) => {
                out.stdout.push_str(&report.text);
                out.stdout.push('\n');
            }
            Err(e) => {
                out.exit_code = out.exit_code.max(e.exit_code());
                let kind = if e.exit_code() == 2 { "parse" } else { "command" };
                if structured {
                    let v = serde_json::json!({ "error": e.to_string(), "kind": kind, "line": lineno });
                    out.stdout.push_str(&v.to_string());
                    out.stdout.push('\n');
                }
                out.stderr.push_str(&format!("line {lineno}: {kind} error: {e}\n"));
            }
        }
    }
    out
}
