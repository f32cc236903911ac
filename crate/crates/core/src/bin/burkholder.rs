//! Command-line front end over `burkholder::cli::run`.
//!
//! Exit status: 0 when every check passed, 1 on a failed check or numerical
//! failure, 2 on a configuration or input error.

use burkholder::cli::{error_exit_status, run, Command, RunConfig};
use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "burkholder", version, about = "Sharp martingale and multiplier inequality experiments")]
struct Args {
    /// constants | verify | multiplier | lehto | simulate | quasiconvex | probe
    command: String,
    /// Exponents, comma separated or repeated.
    #[arg(long, value_delimiter = ',')]
    p: Vec<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long = "box")]
    box_length: Option<f64>,
    #[arg(long)]
    paths: Option<usize>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long = "out")]
    output: Option<PathBuf>,
    /// Write the JSON report here (metadata goes to <name>.meta.json).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Comma-separated suites for `verify`, or `all`.
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    symbol: Option<String>,
    /// Pair kind for `simulate`, deformation family for `quasiconvex`, test
    /// family for `probe`.
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    blocks: Option<usize>,
    /// JSON config file; flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn config_from(args: Args) -> burkholder::Result<RunConfig> {
    let command: Command = args.command.parse()?;
    let mut cfg = match &args.config {
        Some(path) => RunConfig::from_json_file(path)?,
        None => RunConfig::default(),
    };
    cfg.command = command;
    if !args.p.is_empty() {
        cfg.p = args.p;
    }
    macro_rules! take {
        ($($field:ident),*) => { $( if args.$field.is_some() { cfg.$field = args.$field; } )* };
    }
    take!(samples, grid, paths, steps, tol, input, output, json, suite, symbol, kind);
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(blocks) = args.blocks {
        cfg.blocks = blocks;
    }
    if let Some(l) = args.box_length {
        cfg.box_length = l;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let outcome = config_from(args).and_then(|cfg| run(&cfg));
    match outcome {
        Ok(out) => {
            print!("{}", out.text);
            for r in out.report.failures() {
                eprintln!("violated: {} ({})", r.reference, r.suite);
            }
            ExitCode::from(out.exit_status() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit_status(&e) as u8)
        }
    }
}
