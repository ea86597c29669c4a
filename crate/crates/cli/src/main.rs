use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use limitshape_cli::{run, write_artifacts, Command, RunConfig};

#[derive(Parser)]
#[command(name = "limitshape", version, about = "Limit shapes and arctic curves on polygons")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Solve for the anchors and write solved.json
    Solve(RunArgs),
    /// Sample the limit shape and write surface.csv
    Surface(RunArgs),
    /// Trace the arctic curve and write arctic.svg and arctic.csv
    Arctic(RunArgs),
    /// Build the four-vertex curve from a lozenge hexagon
    Fourvertex(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON run configuration
    #[arg(long)]
    config: PathBuf,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Surface grid size per axis (overrides the config)
    #[arg(long)]
    grid: Option<usize>,
    /// Samples per arctic arc (overrides the config)
    #[arg(long)]
    arc_samples: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Sub::Solve(a) => (Command::Solve, a),
        Sub::Surface(a) => (Command::Surface, a),
        Sub::Arctic(a) => (Command::Arctic, a),
        Sub::Fourvertex(a) => (Command::Fourvertex, a),
    };
    let result = RunConfig::load(&args.config).and_then(|mut config| {
        config.grid = args.grid.or(config.grid);
        config.arc_samples = args.arc_samples.or(config.arc_samples);
        config.validate()?;
        let artifacts = run(command, &config)?;
        write_artifacts(&args.out, &artifacts)
    });
    match result {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
