//! Command-line driver for `quadunit`: configuration, dispatch, report
//! serialization and the acceptance suite.

pub mod acceptance;
pub mod args;
pub mod commands;
pub mod report;

use std::path::PathBuf;

use args::{Cli, Command, Format};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] quadunit::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 1 for exhausted budgets and internal failures, 2 for bad input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_budget() => 1,
            CliError::Core(quadunit::Error::Internal(_)) => 1,
            CliError::Core(_) | CliError::Usage(_) | CliError::Output { .. } => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub jobs: Option<usize>,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub precision: u64,
    pub cutoff: u64,
    pub factor_budget: Option<u64>,
}

impl From<Cli> for RunConfig {
    fn from(c: Cli) -> Self {
        RunConfig {
            command: c.command,
            format: c.format,
            jobs: c.jobs.map(|j| j as usize),
            seed: c.seed,
            output: c.output,
            precision: c.precision,
            cutoff: c.cutoff,
            factor_budget: c.factor_budget,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: u8,
    /// The serialized report, empty on error.
    pub output: String,
    /// Diagnostics for stderr.
    pub messages: Vec<String>,
}

/// Runs one command and writes the report to `config.output` when set.
pub fn run(config: &RunConfig) -> Outcome {
    if let Some(b) = config.factor_budget {
        if !quadunit::arith::Factorizer::install_global(b) && quadunit::arith::Factorizer::global().bound() != b {
            return Outcome {
                status: 2,
                output: String::new(),
                messages: vec!["factor budget was already fixed for this process".into()],
            };
        }
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(config.jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => return Outcome { status: 2, output: String::new(), messages: vec![e.to_string()] },
    };
    let mut messages = Vec::new();
    let result = pool.install(|| {
        if let Command::Verify { only } = &config.command {
            let results = acceptance::run(only, config.seed);
            messages.extend(results.iter().map(acceptance::Criterion::line));
            let failed = results.iter().any(|c| !c.passed);
            return Ok((acceptance::report(&results), failed));
        }
        commands::dispatch(config).map(|r| (r, false))
    });
    let (report, failed) = match result {
        Ok(r) => r,
        Err(e) => {
            messages.push(format!("error: {e}"));
            return Outcome { status: e.exit_code(), output: String::new(), messages };
        }
    };
    let output = report.render(config.format);
    if let Some(path) = &config.output {
        if let Err(source) = std::fs::write(path, &output) {
            let e = CliError::Output { path: path.clone(), source };
            messages.push(format!("error: {e}"));
            return Outcome { status: e.exit_code(), output, messages };
        }
    }
    Outcome { status: u8::from(failed), output, messages }
}
