//! Front end for the `nh-lab` binary: argument parsing, dispatch onto the
//! library, and JSON or table rendering.

pub mod args;
mod cache;
pub mod execute;
pub mod report;
mod selftest;

pub use args::{parse, OutputFormat, Request, UsageError};
pub use execute::{execute, execute_with_threads};
pub use report::{render_table, Report, Status};

/// Everything the binary writes, and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses, executes and renders one invocation.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let req = match parse(argv) {
        Ok(r) => r,
        Err(UsageError::Clap(e)) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { stdout: String::new(), stderr: text, code: 2 }
            } else {
                Output { stdout: text, stderr: String::new(), code: 0 }
            };
        }
        Err(e) => {
            return Output {
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
                code: 2,
            }
        }
    };
    let report = execute_with_threads(&req);
    let stdout = match req.output {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Table => render_table(&report),
    };
    let stderr = match &report.error {
        Some(e) => format!("error ({}): {}\n", e.module, e.message),
        None => String::new(),
    };
    Output {
        stdout,
        stderr,
        code: report.status.exit_code(),
    }
}
