//! Command-line front end. Each subcommand returns an [`Output`]; `run`
//! writes it and maps the outcome to an exit code.
//!
//! Exit codes: 0 success, 1 refuted claim or inequality (a witness is in the
//! report), 2 usage error or invalid parameters, 3 operation failure.

mod args;
mod build;
mod code;
mod render;
mod verify;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde_json::Value;
use unex::report::{FileDigest, Report, RunManifest};

pub use args::Cli;
use args::Command;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => m,
        }
    }
}

impl From<unex::Error> for CliError {
    fn from(e: unex::Error) -> Self {
        use unex::Error as E;
        match e {
            E::InvalidParameter(_) | E::Parse { .. } | E::OutOfRange { .. } | E::SideMismatch { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failure(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// What a subcommand produced.
pub struct Output {
    pub command: &'static str,
    pub params: Value,
    pub report: Report,
    /// Primary artifact (a graph or an alist matrix). With `--out` it goes to
    /// the named file and the report to `<out>.dossier`.
    pub artifact: Option<String>,
    /// Secondary artifacts written to `<out>.<suffix>`; dropped without `--out`.
    pub extras: Vec<(&'static str, String)>,
    pub inputs: Vec<FileDigest>,
    /// Seed actually used, when a command takes it from its inputs.
    pub seed: Option<u64>,
    pub exit: i32,
}

impl Output {
    pub fn new(command: &'static str, params: Value, report: Report) -> Self {
        Output {
            command,
            params,
            report,
            artifact: None,
            extras: Vec::new(),
            inputs: Vec::new(),
            seed: None,
            exit: EXIT_OK,
        }
    }

    pub fn refuted_if(mut self, refuted: bool) -> Self {
        if refuted {
            self.exit = EXIT_REFUTED;
        }
        self
    }
}

/// Shared state handed to every subcommand.
pub struct Ctx {
    pub seed: u64,
    /// True when `--seed` was given explicitly.
    pub seed_given: bool,
    pub workers: usize,
    inputs: std::cell::RefCell<Vec<FileDigest>>,
}

impl Ctx {
    pub fn read(&self, path: &Path) -> CliResult<String> {
        let bytes = fs::read(path).map_err(|e| CliError::Failure(format!("cannot read {}: {e}", path.display())))?;
        self.inputs.borrow_mut().push(FileDigest::new(path, &bytes));
        String::from_utf8(bytes).map_err(|_| CliError::Usage(format!("{} is not UTF-8 text", path.display())))
    }
}

fn write_file(path: &Path, content: &str, digests: &mut Vec<FileDigest>) -> CliResult<()> {
    fs::write(path, content).map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display())))?;
    digests.push(FileDigest::new(path, content.as_bytes()));
    Ok(())
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}

fn emit(out: Output, out_path: Option<&Path>, seed: u64) -> CliResult<()> {
    let report = out.report.render();
    let Some(path) = out_path else {
        match &out.artifact {
            Some(a) => {
                print!("{a}");
                eprint!("{report}");
            }
            None => print!("{report}"),
        }
        return Ok(());
    };
    let mut written = Vec::new();
    match &out.artifact {
        Some(a) => {
            write_file(path, a, &mut written)?;
            write_file(&with_suffix(path, "dossier"), &report, &mut written)?;
        }
        None => write_file(path, &report, &mut written)?,
    }
    for (suffix, content) in &out.extras {
        write_file(&with_suffix(path, suffix), content, &mut written)?;
    }
    let mut manifest = RunManifest::new(out.command, out.params, out.seed.unwrap_or(seed));
    manifest.inputs = out.inputs;
    manifest.outputs = written;
    let mut ignored = Vec::new();
    write_file(&with_suffix(path, "manifest"), &manifest.to_json(), &mut ignored)?;
    print!("{report}");
    Ok(())
}

fn dispatch(cli: &Cli) -> CliResult<Output> {
    let ctx = Ctx {
        seed: cli.seed.unwrap_or(0),
        seed_given: cli.seed.is_some(),
        workers: cli.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        inputs: Default::default(),
    };
    let mut output = match &cli.command {
        Command::Build(cmd) => build::run(cmd, &ctx)?,
        Command::Verify(cmd) => verify::run(cmd, &ctx)?,
        Command::Code(cmd) => code::run(cmd, &ctx)?,
    };
    output.inputs = ctx.inputs.take();
    Ok(output)
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run_from<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if cli.workers == Some(0) {
        eprintln!("error: --workers must be positive");
        return EXIT_USAGE;
    }
    let result = dispatch(&cli).and_then(|output| {
        let exit = output.exit;
        emit(output, cli.out.as_deref(), cli.seed.unwrap_or(0))?;
        Ok(exit)
    });
    let _ = std::io::stdout().flush();
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}
