use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sds_core::{ModelParams, TaskKind};

use crate::commands::{self, Emit, Quantity, SimSettings, SweepGrid};
use crate::csv::CsvDocument;
use crate::error::CliError;
use crate::grid;

#[derive(Debug, Parser)]
#[command(name = "sds", version, about = "Stochastic diffusion search: model predictions and simulations as CSV")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analytic steady state for one parameter triple.
    Model {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Simulated statistics for the four reference false-negative rates.
    Table1 {
        #[arg(long, default_value_t = 1000)]
        n_agents: usize,
        #[arg(long, default_value_t = 0.001)]
        p_m: f64,
        #[command(flatten)]
        sim: SimArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Model predictions for the four reference false-negative rates.
    Table2 {
        #[arg(long, default_value_t = 1000)]
        n_agents: usize,
        #[arg(long, default_value_t = 0.001)]
        p_m: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Analytic quantity over a parameter grid.
    Sweep {
        #[arg(long, value_enum, default_value_t = QuantityArg::NormalizedMean)]
        quantity: QuantityArg,
        /// `a:b:step` or a comma list.
        #[arg(long, default_value = "0:0.99:0.01")]
        grid_p_minus: String,
        #[arg(long, default_value = "0.0001,0.0002,0.0005,0.001,0.002,0.005,0.01,0.02,0.05,0.1,0.2,0.5")]
        grid_p_m: String,
        #[arg(long, default_value = "1000")]
        grid_n: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// One simulation run: trace, summary or band coverage.
    Simulate {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long, value_enum, default_value_t = EmitArg::Trace)]
        emit: EmitArg,
        /// Window of the stability (halting) criterion.
        #[arg(long, default_value_t = 50)]
        window: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Ergodicity coefficient along a simulated trajectory.
    Ergodicity {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 2000)]
        iterations: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long, default_value_t = 1000)]
    pub n_agents: usize,
    #[arg(long)]
    pub p_minus: f64,
    #[arg(long, default_value_t = 0.001)]
    pub p_m: f64,
}

impl ParamArgs {
    fn model_params(&self) -> Result<ModelParams, CliError> {
        Ok(ModelParams::new(self.n_agents, self.p_minus, self.p_m)?)
    }
}

#[derive(Debug, Args)]
pub struct SimArgs {
    #[arg(long, value_enum, default_value_t = TaskArg::Urn)]
    pub task: TaskArg,
    #[arg(long, default_value_t = 2000)]
    pub iterations: usize,
    #[arg(long, default_value_t = 500)]
    pub burn_in: usize,
    #[arg(long, default_value_t = 10)]
    pub template_length: usize,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TaskArg {
    Urn,
    String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum QuantityArg {
    NormalizedMean,
    Std,
    RescaledStd,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EmitArg {
    Trace,
    Summary,
    Band,
}

impl SimArgs {
    fn settings(&self, seed: u64) -> SimSettings {
        SimSettings {
            task: match self.task {
                TaskArg::Urn => TaskKind::Urn,
                TaskArg::String => TaskKind::String,
            },
            iterations: self.iterations,
            burn_in: self.burn_in,
            seed,
            template_length: self.template_length,
        }
    }
}

impl Command {
    pub fn out(&self) -> Option<&PathBuf> {
        match self {
            Command::Model { common, .. }
            | Command::Table1 { common, .. }
            | Command::Table2 { common, .. }
            | Command::Sweep { common, .. }
            | Command::Simulate { common, .. }
            | Command::Ergodicity { common, .. } => common.out.as_ref(),
        }
    }
}

/// Runs a parsed command line and returns the document it produces.
pub fn execute(cli: &Cli) -> Result<CsvDocument, CliError> {
    match &cli.command {
        Command::Model { params, common } => Ok(commands::cmd_model(&params.model_params()?, common.seed)),
        Command::Table1 {
            n_agents,
            p_m,
            sim,
            common,
        } => commands::cmd_table1(*n_agents, *p_m, &sim.settings(common.seed)),
        Command::Table2 {
            n_agents,
            p_m,
            common,
        } => commands::cmd_table2(*n_agents, *p_m, common.seed),
        Command::Sweep {
            quantity,
            grid_p_minus,
            grid_p_m,
            grid_n,
            common,
        } => {
            let grid = SweepGrid {
                p_minus: grid::parse_real_grid(grid_p_minus)?,
                p_m: grid::parse_real_grid(grid_p_m)?,
                n_agents: grid::parse_count_grid(grid_n)?,
            };
            let quantity = match quantity {
                QuantityArg::NormalizedMean => Quantity::NormalizedMean,
                QuantityArg::Std => Quantity::Std,
                QuantityArg::RescaledStd => Quantity::RescaledStd,
            };
            commands::cmd_sweep(&grid, quantity, common.seed)
        }
        Command::Simulate {
            params,
            sim,
            emit,
            window,
            common,
        } => {
            let emit = match emit {
                EmitArg::Trace => Emit::Trace,
                EmitArg::Summary => Emit::Summary,
                EmitArg::Band => Emit::Band,
            };
            commands::cmd_simulate(&params.model_params()?, &sim.settings(common.seed), emit, *window)
        }
        Command::Ergodicity {
            params,
            iterations,
            common,
        } => commands::cmd_ergodicity(&params.model_params()?, *iterations, common.seed),
    }
}
