//! Command-line front end: instance files, commands, and reports.

pub mod catalog;
pub mod commands;
pub mod instance;
pub mod oracle;
pub mod report;
pub mod scalar;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use commands::Options;
use report::{Format, Report};

#[derive(Debug, Parser)]
#[command(
    name = "artinian",
    version,
    about = "Exact verification of base change along free local maps"
)]
pub struct Cli {
    /// Seed for every random module and property check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Depth of the free resolutions behind Ext.
    #[arg(long, global = true, default_value_t = artinian::modules::DEFAULT_DEPTH)]
    pub depth: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write the report here instead of stdout; the file appears only when complete.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate an instance file.
    Validate { file: PathBuf },
    /// Dimensions, residue data, nilpotency and free basis of each map.
    Analyze { file: PathBuf },
    /// Presentation of A ⊗_R S over S.
    Tensor {
        file: PathBuf,
        #[arg(long)]
        map: Option<String>,
        /// Module over the source; the residue field when omitted.
        #[arg(long)]
        module: Option<String>,
    },
    /// Full base-change verification of every request in a file.
    Thm37 { file: PathBuf },
    /// The built-in ℚ → ℚ(√2) comparison of the two structures on S².
    Remark38,
    /// Every `*.json` in a directory plus seeded property checks.
    Suite { dir: PathBuf },
}

pub fn execute(cli: &Cli) -> Report {
    let opts = Options {
        seed: cli.seed,
        depth: cli.depth,
    };
    match &cli.command {
        Command::Validate { file } => commands::validate(file, opts),
        Command::Analyze { file } => commands::analyze(file, opts),
        Command::Tensor { file, map, module } => {
            commands::tensor(file, map.as_deref(), module.as_deref(), opts)
        }
        Command::Thm37 { file } => commands::thm37(file, opts),
        Command::Remark38 => commands::remark38(opts),
        Command::Suite { dir } => commands::suite(dir, opts),
    }
}

/// Writes through a sibling temporary file and a rename.
pub fn write_atomically(path: &Path, contents: &str) -> std::io::Result<()> {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.{}.tmp", std::process::id()));
    let result = std::fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(contents.as_bytes()).and_then(|_| f.sync_all()))
        .and_then(|_| std::fs::rename(&tmp, path));
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    result
}

/// Runs a parsed command line; returns the rendered report and exit code.
pub fn run(cli: &Cli) -> (String, i32) {
    let report = execute(cli);
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    (report.render(format), report.outcome().code())
}
