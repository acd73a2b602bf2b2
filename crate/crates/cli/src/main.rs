use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use singclass_cli::{parse_job, read_manifest, run_job, run_suite, Overrides};

/// Exact singularity invariants from declarative job files.
#[derive(Parser, Debug)]
#[command(name = "singclass", version)]
struct Args {
    /// Run a single job file.
    #[arg(long, conflicts_with = "suite", required_unless_present = "suite")]
    job: Option<PathBuf>,
    /// Run every job listed in a manifest.
    #[arg(long)]
    suite: Option<PathBuf>,
    /// Seed for all generic draws; overrides the job file.
    #[arg(long)]
    seed: Option<u64>,
    /// Redraw budget when two generic draws disagree.
    #[arg(long)]
    retries: Option<u32>,
    /// Search dimensions modulo a prime before working over Q.
    #[arg(long)]
    prescreen: bool,
    /// Record wall-clock times (makes output depend on the machine).
    #[arg(long)]
    timings: bool,
    /// Write the JSON result here instead of standard output.
    #[arg(long)]
    json_out: Option<PathBuf>,
    /// No table or JSON on standard output.
    #[arg(long)]
    quiet: bool,
}

fn emit(args: &Args, json: String) -> Result<(), String> {
    match &args.json_out {
        Some(p) => fs::write(p, json + "\n").map_err(|e| format!("{}: {e}", p.display())),
        None if !args.quiet => {
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout(), "{json}");
            Ok(())
        }
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let ov = Overrides { seed: args.seed, retries: args.retries, prescreen: args.prescreen, timings: args.timings };
    let code = if let Some(path) = &args.suite {
        let files = match read_manifest(path) {
            Ok(f) => f,
            Err(e) => {
                eprintln!("singclass: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        };
        let report = run_suite(&files, &ov);
        if !args.quiet {
            let _ = write!(std::io::stdout(), "{}", report.table());
        }
        if args.json_out.is_some() {
            if let Err(e) = emit(&args, serde_json::to_string_pretty(&report).unwrap()) {
                eprintln!("singclass: {e}");
                return ExitCode::from(1);
            }
        }
        report.exit_code()
    } else {
        let path = args.job.as_ref().unwrap();
        let job = match fs::read_to_string(path).map_err(|e| e.to_string()).and_then(|t| parse_job(&t).map_err(|e| e.to_string())) {
            Ok(j) => j,
            Err(e) => {
                eprintln!("singclass: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        };
        let doc = run_job(&job, &ov);
        if let Err(e) = emit(&args, serde_json::to_string_pretty(&doc).unwrap()) {
            eprintln!("singclass: {e}");
            return ExitCode::from(1);
        }
        if let Some(e) = &doc.error {
            eprintln!("singclass: {e}");
        }
        doc.status.exit_code()
    };
    ExitCode::from(code as u8)
}
