//! `upst`: construct graphs, certify universal perfect state transfer and
//! tabulate transfer times.

mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use thiserror::Error;
use upst_core::walk::DEFAULT_SCAN_STEPS;
use upst_core::{denseness_check, is_type_ii, spacing_test, verify_upst, ScanConfig, TransferReport};

use input::{load_job, parse_descriptor, parse_shift, read_json, GraphFile, Job};
use output::{num, report_json, times_csv, verify_table, CheckResult, VerifyOutput};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

#[derive(Parser)]
#[command(name = "upst", version, about = "Construct and certify graphs with universal perfect state transfer")]
struct Cli {
    /// Grid points per return time in the transfer-time scan.
    #[arg(long, global = true, env = "UPST_SCAN_STEPS", default_value_t = DEFAULT_SCAN_STEPS)]
    scan_steps: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from a construction descriptor and write it as JSON.
    Generate {
        /// Descriptor JSON, inline or as a file path.
        descriptor: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run checks on a descriptor, graph file or matrix file.
    Verify {
        input: String,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "upst")]
        checks: Vec<Check>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Write the transfer-time table of a UPST graph as CSV.
    Times {
        input: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Add this rational multiple of the identity (e.g. `5/2`).
    #[arg(long, value_parser = parse_shift, allow_hyphen_values = true)]
    shift: Option<BigRational>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Upst,
    Spacing,
    Dense,
    Typeii,
    Connectivity,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Table,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn scan_config(steps: usize) -> Result<ScanConfig, CliError> {
    if steps == 0 {
        return Err(CliError::Input("scan steps must be positive".into()));
    }
    Ok(ScanConfig { steps, ..ScanConfig::default() })
}

fn certify(job: &Job, steps: usize) -> Result<TransferReport, CliError> {
    verify_upst(&job.graph, &job.es, &scan_config(steps)?).map_err(|e| CliError::Input(e.to_string()))
}

fn generate(descriptor: &str, common: &Common) -> Result<(), CliError> {
    let built = parse_descriptor(read_json(descriptor)?)?.build().map_err(|e| CliError::Input(e.to_string()))?;
    let (graph, es) = match &common.shift {
        Some(a) => (built.graph.shifted(a), built.eigensystem.shifted(a)),
        None => (built.graph, built.eigensystem),
    };
    let file = GraphFile { graph, eigensystem: Some(es) };
    let text = serde_json::to_string_pretty(&file).map_err(|e| CliError::Input(e.to_string()))?;
    emit(&common.out, &text)
}

fn run_check(check: Check, job: &Job, report: Option<&TransferReport>) -> Result<CheckResult, CliError> {
    let reasons = |r: &TransferReport| r.reasons.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
    let (name, pass, detail) = match check {
        Check::Upst => {
            let r = report.expect("report computed for upst");
            let detail = if r.upst {
                format!("return time {}", r.return_time.map(num).unwrap_or_default())
            } else {
                reasons(r)
            };
            ("upst", r.upst, detail)
        }
        Check::Spacing => {
            let r = report.expect("report computed for spacing");
            match spacing_test(r) {
                Ok(s) if s.circulant => ("spacing", true, "consecutive transfer times are equal".into()),
                Ok(s) => (
                    "spacing",
                    false,
                    format!("unequal consecutive transfer times (deviation {}); timing is not circulant", num(s.max_deviation)),
                ),
                Err(e) if r.upst => ("spacing", false, e.to_string()),
                Err(_) => ("spacing", false, format!("requires UPST: {}", reasons(r))),
            }
        }
        Check::Dense => {
            let spec = job
                .graph
                .circulant()
                .ok_or_else(|| CliError::Input("dense check needs exact circulant data".into()))?;
            let (dense, zeros) = denseness_check(spec);
            let detail = if dense { "every a_j, j >= 1, is nonzero".into() } else { format!("a_j = 0 for j in {zeros:?}") };
            ("dense", dense, detail)
        }
        Check::Typeii => {
            let pass = is_type_ii(job.es.diagonalizer(), 1e-10);
            let detail = if pass { "eigenvector entries have constant modulus" } else { "eigenvector entries vary in modulus" };
            ("typeii", pass, detail.into())
        }
        Check::Connectivity => {
            let pass = job.graph.is_connected(1e-12);
            ("connectivity", pass, if pass { "connected" } else { "disconnected" }.into())
        }
    };
    Ok(CheckResult { check: name, pass, detail })
}

fn verify(input: &str, checks: &[Check], format: Format, common: &Common, steps: usize) -> Result<(), CliError> {
    let mut checks = checks.to_vec();
    checks.dedup();
    if checks.is_empty() {
        return Err(CliError::Input("at least one check is required".into()));
    }
    let job = load_job(read_json(input)?, common.shift.as_ref())?;
    let needs_report = checks.iter().any(|c| matches!(c, Check::Upst | Check::Spacing));
    let report = if needs_report { Some(certify(&job, steps)?) } else { None };
    let results = checks.iter().map(|&c| run_check(c, &job, report.as_ref())).collect::<Result<Vec<_>, _>>()?;
    let all_pass = results.iter().all(|c| c.pass);
    let out = VerifyOutput {
        n: job.graph.order(),
        eigensystem: if job.solved { "dense" } else { "input" },
        lambdas: job.es.lambdas(),
        exact_lambdas: job.es.exact_lambdas().map(|v| v.iter().map(ToString::to_string).collect()),
        checks: results,
        all_pass,
        report: report.as_ref(),
    };
    let text = match format {
        Format::Json => report_json(&out).map_err(|e| CliError::Input(e.to_string()))?,
        Format::Table => verify_table(&out),
    };
    emit(&common.out, &text)?;
    if all_pass {
        Ok(())
    } else {
        let failed: Vec<&str> = out.checks.iter().filter(|c| !c.pass).map(|c| c.check).collect();
        Err(CliError::CheckFailed(format!("failed checks: {}", failed.join(", "))))
    }
}

fn times(input: &str, common: &Common, steps: usize) -> Result<(), CliError> {
    let job = load_job(read_json(input)?, common.shift.as_ref())?;
    let report = certify(&job, steps)?;
    if !report.upst {
        let reasons: Vec<String> = report.reasons.iter().map(ToString::to_string).collect();
        return Err(CliError::CheckFailed(format!("not a UPST graph: {}", reasons.join("; "))));
    }
    emit(&common.out, &times_csv(&report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate { descriptor, common } => generate(descriptor, common),
        Command::Verify { input, checks, format, common } => verify(input, checks, *format, common, cli.scan_steps),
        Command::Times { input, common } => times(input, common, cli.scan_steps),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("upst: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
