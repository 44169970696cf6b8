//! Command-line front end.
//!
//! ```text
//! adaptive-linkage cluster --fixture para --format trace
//! adaptive-linkage compare --input table.csv --method complete
//! adaptive-linkage export  --fixture meta --format dot --output meta.dot
//! ```

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::adaptive::build_dendrogram;
use crate::baseline::{compare_compactness, stepwise_cluster_with, LinkageMethod};
use crate::data::{Dataset, NormalizedDataset, SdMode};
use crate::dendrogram::Dendrogram;
use crate::io::{
    dataset_sha256, fixture::Fixture, parse_table, write_dot, write_trace, write_tree_text,
    RunMetadata,
};
use crate::Error;

#[derive(Debug, Parser)]
#[command(name = "adaptive-linkage", version, about = "Adaptive mean-linkage hierarchical clustering")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cluster a table and print the trace (default), DOT or a text tree.
    Cluster(RunArgs),
    /// Compare adaptive tree depth with a stepwise linkage method.
    Compare(RunArgs),
    /// Like `cluster`, but defaults to DOT output.
    Export(RunArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Clustering method; for `compare`, the stepwise baseline (default average).
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    /// Standard deviation denominator used for z-scores.
    #[arg(long, value_enum, default_value_t = SdArg::Sample)]
    pub sd: SdArg,
    /// Cluster the raw values without z-scoring.
    #[arg(long)]
    pub no_normalize: bool,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Write the document here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Stop stepwise methods before the first merge above this distance.
    #[arg(long)]
    pub threshold: Option<f64>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Comma-separated table: header row, label column, numeric descriptors.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Bundled substituent table.
    #[arg(long, value_enum)]
    pub fixture: Option<FixtureArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Adaptive,
    Single,
    Complete,
    Average,
    Centroid,
}

impl MethodArg {
    fn linkage(self) -> Option<LinkageMethod> {
        match self {
            MethodArg::Adaptive => None,
            MethodArg::Single => Some(LinkageMethod::Single),
            MethodArg::Complete => Some(LinkageMethod::Complete),
            MethodArg::Average => Some(LinkageMethod::Average),
            MethodArg::Centroid => Some(LinkageMethod::Centroid),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SdArg {
    Sample,
    Population,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Trace,
    Dot,
    TreeText,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FixtureArg {
    Para,
    Meta,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Path(PathBuf),
    Fixture(Fixture),
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: Source,
    pub sd: SdMode,
    pub normalize: bool,
    pub format: FormatArg,
    pub method: MethodArg,
    pub threshold: Option<f64>,
    pub output: Option<PathBuf>,
}

/// Failure carrying the process exit status.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Invariant(_)) { 2 } else { 1 };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl RunConfig {
    pub fn from_args(args: &RunArgs, default_format: FormatArg) -> Result<Self, CliError> {
        let source = match (&args.source.input, args.source.fixture) {
            (Some(p), None) => Source::Path(p.clone()),
            (None, Some(FixtureArg::Para)) => Source::Fixture(Fixture::Para),
            (None, Some(FixtureArg::Meta)) => Source::Fixture(Fixture::Meta),
            _ => return Err(CliError::usage("exactly one of --input or --fixture is required")),
        };
        if let Some(t) = args.threshold {
            if !t.is_finite() || t < 0.0 {
                return Err(CliError::usage(format!("invalid threshold {t}")));
            }
        }
        Ok(Self {
            source,
            sd: match args.sd {
                SdArg::Sample => SdMode::Sample,
                SdArg::Population => SdMode::Population,
            },
            normalize: !args.no_normalize,
            format: args.format.unwrap_or(default_format),
            method: args.method.unwrap_or(MethodArg::Adaptive),
            threshold: args.threshold,
            output: args.output.clone(),
        })
    }

    fn load(&self) -> Result<(Dataset, NormalizedDataset), CliError> {
        let data = match &self.source {
            Source::Fixture(f) => f.dataset(),
            Source::Path(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| {
                    CliError::usage(format!("cannot read `{}`: {e}", p.display()))
                })?;
                parse_table(&text)
                    .map_err(|e| CliError::usage(format!("{}: {e}", p.display())))?
            }
        };
        let nd = if self.normalize {
            data.normalize(self.sd)?
        } else {
            NormalizedDataset::raw(&data)
        };
        Ok((data, nd))
    }

    fn sd_label(&self) -> &'static str {
        if self.normalize {
            self.sd.as_str()
        } else {
            "none"
        }
    }
}

fn render(cfg: &RunConfig, data: &Dataset, tree: &Dendrogram, method: &str) -> String {
    match cfg.format {
        FormatArg::Trace => {
            let meta = RunMetadata {
                method: method.to_owned(),
                sd_mode: cfg.sd_label().to_owned(),
                dataset_sha256: dataset_sha256(data),
                columns: data.column_names().to_vec(),
            };
            write_trace(tree, &meta).to_json()
        }
        FormatArg::Dot => write_dot(tree),
        FormatArg::TreeText => write_tree_text(tree),
    }
}

/// Clusters the configured input and renders the selected document.
pub fn cmd_cluster(cfg: &RunConfig) -> Result<String, CliError> {
    let (data, nd) = cfg.load()?;
    match cfg.method.linkage() {
        None => {
            if cfg.threshold.is_some() {
                return Err(CliError::usage("--threshold applies to stepwise methods only"));
            }
            let tree = build_dendrogram(&nd)?;
            Ok(render(cfg, &data, &tree, "adaptive"))
        }
        Some(linkage) => {
            let stepwise = stepwise_cluster_with(&nd, linkage, cfg.threshold)?;
            Ok(render(cfg, &data, stepwise.dendrogram(), linkage.as_str()))
        }
    }
}

/// Adaptive versus stepwise compactness report.
pub fn cmd_compare(cfg: &RunConfig) -> Result<String, CliError> {
    let (_, nd) = cfg.load()?;
    let linkage = cfg.method.linkage().unwrap_or(LinkageMethod::Average);
    let adaptive = build_dendrogram(&nd)?;
    let stepwise = stepwise_cluster_with(&nd, linkage, cfg.threshold)?;
    Ok(compare_compactness(&adaptive, &stepwise)?.to_string())
}

/// Runs a parsed command, writing the document to `--output` or `stdout`.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let (args, text) = match &cli.command {
        Command::Cluster(args) => (args, cmd_cluster(&RunConfig::from_args(args, FormatArg::Trace)?)?),
        Command::Export(args) => (args, cmd_cluster(&RunConfig::from_args(args, FormatArg::Dot)?)?),
        Command::Compare(args) => (args, cmd_compare(&RunConfig::from_args(args, FormatArg::Trace)?)?),
    };
    match &args.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::usage(format!("cannot write `{}`: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::usage(format!("cannot write output: {e}"))),
    }
}

/// Parses `argv` and runs it; returns the process exit status.
pub fn main_with_args<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    1
                }
            };
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}
