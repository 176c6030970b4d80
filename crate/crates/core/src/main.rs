use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use toric_ke::conjectures::DEFAULT_EHRHART_MAX_DIM;
use toric_ke::io::{emit, fixtures, parse, scan, Format, PolytopeEntry, PolytopeFile, ScanOptions};
use toric_ke::polyhedra::LatticePolytope;
use toric_ke::Error;

/// Exact Kähler–Einstein, symmetry and alpha-invariant checks for smooth toric
/// Fano polytopes. Reads polytope files in the `polytope / dim / vertices / end`
/// format; `-` reads standard input.
#[derive(Parser)]
#[command(name = "toric-ke", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(clap::Args)]
struct AnalysisArgs {
    /// Also run the conjecture and inequality checks.
    #[arg(long)]
    conjectures: bool,
    /// Largest dimension for Ehrhart-based checks.
    #[arg(long, value_name = "D", default_value_t = DEFAULT_EHRHART_MAX_DIM)]
    ehrhart_max_dim: usize,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Record per-entry wall-clock time (output is then not reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse one entry (or every entry) of a file and print the report.
    Check {
        file: PathBuf,
        /// Entry to analyse; all entries when omitted.
        #[arg(long)]
        name: Option<String>,
        #[command(flatten)]
        args: AnalysisArgs,
    },
    /// Analyse every entry of a file in parallel.
    Scan {
        file: PathBuf,
        /// Worker threads.
        #[arg(long, value_name = "K")]
        jobs: Option<usize>,
        /// Write the report here instead of standard output.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[command(flatten)]
        args: AnalysisArgs,
    },
    /// Print the dual polytope of an entry in the same file format.
    Dual {
        file: PathBuf,
        #[arg(long)]
        name: String,
    },
    /// Print the embedded fixture corpus.
    Corpus,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Lib(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

fn read_file(path: &Path) -> Result<PolytopeFile, CliError> {
    let io_err = |source| CliError::Io { path: path.display().to_string(), source };
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        s
    } else {
        fs::read_to_string(path).map_err(io_err)?
    };
    Ok(parse(&text).map_err(Error::from)?)
}

fn select(file: PolytopeFile, name: Option<&str>) -> Result<PolytopeFile, CliError> {
    match name {
        None => Ok(file),
        Some(n) => {
            let e = file.get(n).cloned().ok_or_else(|| Error::UnknownEntry(n.to_string()))?;
            Ok(PolytopeFile { entries: vec![e] })
        }
    }
}

fn options(args: &AnalysisArgs, jobs: Option<usize>) -> ScanOptions {
    ScanOptions { jobs, conjectures: args.conjectures, ehrhart_max_dim: args.ehrhart_max_dim, timing: args.timing }
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Check { file, name, args } => {
            let pf = select(read_file(&file)?, name.as_deref())?;
            write_out(None, &emit(&scan(&pf, &options(&args, None)), args.format.into()))
        }
        Command::Scan { file, jobs, out, args } => {
            let pf = read_file(&file)?;
            write_out(out.as_deref(), &emit(&scan(&pf, &options(&args, jobs)), args.format.into()))
        }
        Command::Dual { file, name } => {
            let pf = select(read_file(&file)?, Some(&name))?;
            let entry = &pf.entries[0];
            let p = LatticePolytope::hull(&entry.vertices)?.polar()?;
            let dual = PolytopeEntry { name: format!("{name}_dual"), dim: p.dim(), vertices: p.vertices().to_vec() };
            let mut text = String::new();
            dual.write_text(&mut text);
            write_out(None, &text)
        }
        Command::Corpus => write_out(None, &fixtures::corpus().to_text()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
