use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use exotica::dsl::{self, ExecConfig, VerificationReport, BUNDLED_SCRIPTS, DEFAULT_BUDGET};

/// Runs construction scripts and reports on their assertions.
///
/// Exit status: 0 all assertions pass, 1 some fail, 2 none fail but some
/// are undecided within the coset budget, 3 parse or runtime error.
#[derive(Parser)]
#[command(name = "exotica", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one script.
    Run {
        script: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Run every script shipped with the library.
    CheckAll {
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(clap::Args)]
struct Opts {
    /// Coset budget for assertions without their own `budget` clause.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Evaluate independent assertions on separate threads.
    #[arg(long)]
    parallel_asserts: bool,
    /// Report every elapsed time as zero, so runs compare byte for byte.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl Opts {
    fn config(&self) -> ExecConfig {
        ExecConfig { budget: self.budget, parallel_asserts: self.parallel_asserts }
    }

    fn render(&self, reports: &[VerificationReport], single: bool) -> String {
        let reports: Vec<VerificationReport> =
            reports.iter().map(|r| if self.no_timing { r.without_timing() } else { r.clone() }).collect();
        match self.format {
            Format::Json if single => reports[0].to_json(),
            Format::Json => serde_json::to_string_pretty(&reports).expect("reports serialize"),
            Format::Text => reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n\n"),
        }
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display())),
            None => match writeln!(io::stdout().lock(), "{text}") {
                // a closed pipe (`| head`) is not an error
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
                r => r.context("writing to standard output"),
            },
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Run { script, opts } => {
            let text = fs::read_to_string(&script).with_context(|| format!("reading {}", script.display()))?;
            let report = dsl::run(&text, &script.display().to_string(), &opts.config())
                .with_context(|| format!("in {}", script.display()))?;
            opts.emit(&opts.render(std::slice::from_ref(&report), true))?;
            Ok(report.exit_code())
        }
        Command::CheckAll { opts } => {
            let mut reports = Vec::new();
            for (name, text) in BUNDLED_SCRIPTS {
                reports.push(dsl::run(text, name, &opts.config()).with_context(|| format!("in {name}"))?);
            }
            opts.emit(&opts.render(&reports, false))?;
            Ok(reports.iter().map(VerificationReport::exit_code).max_by_key(|&c| severity(c)).unwrap_or(0))
        }
    }
}

/// Failure outranks an undecided result.
fn severity(code: i32) -> i32 {
    match code {
        1 => 2,
        2 => 1,
        c => c,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
