//! `lifecircle`: travel feature mining over POI and bus trajectory CSVs.

use clap::{Args, Parser, Subcommand};
use lifecircle::config::{Overrides, PipelineConfig};
use lifecircle::pipeline;
use lifecircle::CliResult;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "lifecircle",
    about = "Mine passenger travel features from POI and bus trajectory data",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON config file; omitted keys use built-in defaults.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory for this run.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Master random seed.
    #[arg(long, value_name = "N")]
    rng_seed: Option<u64>,
    /// Keep passengers with strictly more than this many records.
    #[arg(long, value_name = "N")]
    min_records: Option<usize>,
    /// POI search radius / life-circle radius in meters.
    #[arg(long, value_name = "N")]
    dis_m: Option<f64>,
    /// Pattern matrix row total L.
    #[arg(long, value_name = "N")]
    row_total: Option<u32>,
    /// Comma-separated attribute subset (default: all seven).
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    attributes: Option<Vec<String>>,
}

impl Common {
    fn resolve(&self) -> CliResult<PipelineConfig> {
        let mut config = match &self.config {
            Some(path) => PipelineConfig::from_file(path)?,
            None => PipelineConfig::default(),
        };
        let overrides = Overrides {
            out: self.out.clone(),
            rng_seed: self.rng_seed,
            min_records: self.min_records,
            dis_m: self.dis_m,
            row_total: self.row_total,
            attributes: self.attributes.clone(),
        };
        overrides.apply(&mut config)?;
        Ok(config)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Mode-seek per-label POI seeds.
    Seed(Common),
    /// Seeded clustering of trajectory points plus the K sweep.
    Cluster(Common),
    /// Build the travel pattern matrix.
    Matrix(Common),
    /// Fit per-attribute topic models and infer profiles.
    Lda(Common),
    /// Score held-out predictions against ground truth.
    Eval(Common),
    /// Generate synthetic input CSVs.
    Synth(Common),
    /// Run every stage in sequence.
    Pipeline(Common),
}

fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Seed(common) => {
            pipeline::cmd_seed(&common.resolve()?)?;
        }
        Command::Cluster(common) => {
            pipeline::cmd_cluster(&common.resolve()?)?;
        }
        Command::Matrix(common) => {
            pipeline::cmd_matrix(&common.resolve()?)?;
        }
        Command::Lda(common) => {
            let config = common.resolve()?;
            let matrix = pipeline::cmd_matrix(&config)?;
            pipeline::cmd_lda(&config, &matrix)?;
        }
        Command::Eval(common) => {
            let config = common.resolve()?;
            let matrix = pipeline::cmd_matrix(&config)?;
            pipeline::cmd_eval(&config, &matrix)?;
        }
        Command::Synth(common) => {
            pipeline::cmd_synth(&common.resolve()?)?;
        }
        Command::Pipeline(common) => {
            pipeline::cmd_pipeline(&common.resolve()?)?;
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
