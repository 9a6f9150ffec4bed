//! One function per subcommand. Every command is a pure function of its
//! inputs and returns a [`CsvDocument`].

use rayon::prelude::*;
use sds_core::model::{
    build_transition_matrix, ergodicity_coefficient, steady_state, weak_ergodicity_partial_sums,
    ModelParams, SteadyState,
};
use sds_core::sim::{self, derive_seed, make_string_task, BernoulliTask, RngStream, SearchTask, TaskKind};
use sds_core::stats::{band_coverage, summarize};
use sds_core::Trace;

use crate::csv::{Cell, CsvDocument};
use crate::error::CliError;

pub const VERSION: &str = concat!("sds ", env!("CARGO_PKG_VERSION"));

/// False-negative rates of the reference experiment.
pub const REFERENCE_P_MINUS: [f64; 4] = [0.1, 0.2, 0.5, 0.7];

/// Published model values for the reference rows, `(p_minus, mean, std)`.
/// Only the first row disagrees with the balance root.
pub const PUBLISHED_MODEL_ROWS: [(f64, f64, f64); 4] = [
    (0.1, 888.06, 9.97),
    (0.2, 750.1, 13.69),
    (0.5, 30.65, 5.45),
    (0.7, 0.75, 0.86),
];

/// Settings shared by the simulating commands.
#[derive(Debug, Clone)]
pub struct SimSettings {
    pub task: TaskKind,
    pub iterations: usize,
    pub burn_in: usize,
    pub seed: u64,
    pub template_length: usize,
}

impl Default for SimSettings {
    fn default() -> Self {
        Self {
            task: TaskKind::Urn,
            iterations: 2000,
            burn_in: 500,
            seed: 0,
            template_length: 10,
        }
    }
}

impl SimSettings {
    fn validate(&self) -> Result<(), CliError> {
        if self.iterations == 0 {
            return Err(CliError::Usage("--iterations must be at least 1".into()));
        }
        if self.burn_in >= self.iterations {
            return Err(CliError::Usage(format!(
                "--burn-in {} must be below --iterations {}",
                self.burn_in, self.iterations
            )));
        }
        Ok(())
    }

    fn annotate(&self, doc: &mut CsvDocument) {
        doc.push_meta("task", self.task);
        doc.push_meta("iterations", self.iterations);
        doc.push_meta("burn_in", self.burn_in);
        if self.task == TaskKind::String {
            doc.push_meta("template_length", self.template_length);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    NormalizedMean,
    Std,
    RescaledStd,
}

impl Quantity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Quantity::NormalizedMean => "normalized_mean",
            Quantity::Std => "std",
            Quantity::RescaledStd => "rescaled_std",
        }
    }
}

impl std::str::FromStr for Quantity {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "normalized_mean" => Ok(Quantity::NormalizedMean),
            "std" => Ok(Quantity::Std),
            "rescaled_std" => Ok(Quantity::RescaledStd),
            other => Err(CliError::Usage(format!("unknown quantity `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emit {
    Trace,
    Summary,
    Band,
}

/// Multiples of sigma reported by the band emitter.
const BAND_SIGMAS: [f64; 6] = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0];

fn document(command: &str, header: &[&str], seed: u64) -> CsvDocument {
    CsvDocument::new(header)
        .with_meta("command", command)
        .with_meta("version", VERSION)
        .with_meta("seed", seed)
        .with_meta("rng", RngStream::ALGORITHM)
}

fn annotate_params(doc: &mut CsvDocument, params: &ModelParams) {
    doc.push_meta("n_agents", params.n_agents());
    doc.push_meta("p_minus", crate::csv::format_number(params.p_minus()));
    doc.push_meta("p_m", crate::csv::format_number(params.p_m()));
}

const MODEL_HEADER: [&str; 7] = [
    "p_minus",
    "p_m",
    "n_agents",
    "pi1",
    "expected_active",
    "std_active",
    "mode",
];

fn model_row(params: &ModelParams, ss: &SteadyState) -> Vec<Cell> {
    vec![
        params.p_minus().into(),
        params.p_m().into(),
        params.n_agents().into(),
        ss.pi1.into(),
        ss.expected_active.into(),
        ss.std_active.into(),
        ss.mode().into(),
    ]
}

/// Analytic steady state for one parameter triple.
pub fn cmd_model(params: &ModelParams, seed: u64) -> CsvDocument {
    let mut doc = document("model", &MODEL_HEADER, seed);
    annotate_params(&mut doc, params);
    doc.push_row(model_row(params, &steady_state(params)));
    doc
}

/// Analytic rows for the four reference false-negative rates.
pub fn cmd_table2(n_agents: usize, p_m: f64, seed: u64) -> Result<CsvDocument, CliError> {
    let mut doc = document("table2", &MODEL_HEADER, seed);
    doc.push_meta("n_agents", n_agents);
    doc.push_meta("p_m", crate::csv::format_number(p_m));
    doc.push_meta("p_minus_grid", "0.1;0.2;0.5;0.7");
    if n_agents == 1000 && p_m == 0.001 {
        doc.push_meta(
            "note",
            "published reference values for p_minus=0.1 are 888.06/9.97; the balance root gives 888.90/9.94",
        );
    }
    for p_minus in REFERENCE_P_MINUS {
        let params = ModelParams::new(n_agents, p_minus, p_m)?;
        doc.push_row(model_row(&params, &steady_state(&params)));
    }
    Ok(doc)
}

/// Builds the search task for one simulated cell. String tasks need an
/// integer hypothesis count `1 / p_m`.
pub fn build_task(
    kind: TaskKind,
    params: &ModelParams,
    template_length: usize,
) -> Result<Box<dyn SearchTask + Send + Sync>, CliError> {
    match kind {
        TaskKind::Urn => Ok(Box::new(BernoulliTask::from_params(params)?)),
        TaskKind::String => {
            if params.p_m() == 0.0 {
                return Err(CliError::Usage("string task needs p_m > 0".into()));
            }
            let inverse = 1.0 / params.p_m();
            if (inverse - inverse.round()).abs() > 1e-9 {
                return Err(CliError::Usage(format!(
                    "string task needs 1/p_m to be an integer, got {inverse}"
                )));
            }
            let task = make_string_task(params.p_minus(), template_length, inverse.round() as usize)?;
            Ok(Box::new(task))
        }
    }
}

/// Simulates the four reference rows and compares post-burn-in statistics
/// with the model. Row `i` runs with seed `derive_seed(seed, i)`.
pub fn cmd_table1(n_agents: usize, p_m: f64, settings: &SimSettings) -> Result<CsvDocument, CliError> {
    settings.validate()?;
    let mut doc = document(
        "table1",
        &[
            "p_minus",
            "p_m",
            "n_agents",
            "row_seed",
            "empirical_mean",
            "empirical_std",
            "model_mean",
            "model_std",
            "mean_gap_sigmas",
        ],
        settings.seed,
    );
    doc.push_meta("n_agents", n_agents);
    doc.push_meta("p_m", crate::csv::format_number(p_m));
    doc.push_meta("p_minus_grid", "0.1;0.2;0.5;0.7");
    settings.annotate(&mut doc);

    let rows: Vec<Result<Vec<Cell>, CliError>> = REFERENCE_P_MINUS
        .par_iter()
        .enumerate()
        .map(|(i, &p_minus)| {
            let requested = ModelParams::new(n_agents, p_minus, p_m)?;
            let task = build_task(settings.task, &requested, settings.template_length)?;
            let params = task.model_params(n_agents)?;
            let row_seed = derive_seed(settings.seed, i as u64);
            let trace = sim::run(task.as_ref(), n_agents, settings.iterations, row_seed)?;
            let stats = summarize(&trace, settings.burn_in)?;
            let ss = steady_state(&params);
            let gap = if ss.std_active > 0.0 {
                Cell::from((stats.mean - ss.expected_active).abs() / ss.std_active)
            } else {
                Cell::from("none")
            };
            Ok(vec![
                params.p_minus().into(),
                params.p_m().into(),
                n_agents.into(),
                row_seed.into(),
                stats.mean.into(),
                stats.std.into(),
                ss.expected_active.into(),
                ss.std_active.into(),
                gap,
            ])
        })
        .collect();
    for row in rows {
        doc.push_row(row?);
    }
    Ok(doc)
}

#[derive(Debug, Clone)]
pub struct SweepGrid {
    pub p_minus: Vec<f64>,
    pub p_m: Vec<f64>,
    pub n_agents: Vec<usize>,
}

/// Analytic quantity over the Cartesian grid, ordered by `n_agents`, then
/// `p_m`, then `p_minus`.
pub fn cmd_sweep(grid: &SweepGrid, quantity: Quantity, seed: u64) -> Result<CsvDocument, CliError> {
    if grid.p_minus.is_empty() || grid.p_m.is_empty() || grid.n_agents.is_empty() {
        return Err(CliError::Usage("sweep grids must be nonempty".into()));
    }
    let mut header = vec!["p_minus", "p_m", "n_agents", quantity.as_str()];
    if quantity == Quantity::RescaledStd {
        header.push("scaling_factor");
    }
    let mut doc = document("sweep", &header, seed);
    doc.push_meta("quantity", quantity.as_str());
    doc.push_meta("grid_p_minus", join(&grid.p_minus));
    doc.push_meta("grid_p_m", join(&grid.p_m));
    doc.push_meta(
        "grid_n",
        grid.n_agents
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(";"),
    );

    let cells: Vec<(usize, f64, f64)> = grid
        .n_agents
        .iter()
        .flat_map(|&n| {
            grid.p_m
                .iter()
                .flat_map(move |&pm| grid.p_minus.iter().map(move |&pmin| (n, pm, pmin)))
        })
        .collect();
    let rows: Vec<Result<Vec<Cell>, CliError>> = cells
        .par_iter()
        .map(|&(n, p_m, p_minus)| {
            let params = ModelParams::new(n, p_minus, p_m)?;
            let ss = steady_state(&params);
            let mut row: Vec<Cell> = vec![p_minus.into(), p_m.into(), n.into()];
            match quantity {
                Quantity::NormalizedMean => row.push(ss.pi1.into()),
                Quantity::Std => row.push(ss.std_active.into()),
                Quantity::RescaledStd => {
                    let scale = 1.0 / (n as f64).sqrt();
                    row.push((ss.std_active * scale).into());
                    row.push(scale.into());
                }
            }
            Ok(row)
        })
        .collect();
    for row in rows {
        doc.push_row(row?);
    }
    Ok(doc)
}

fn join(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| crate::csv::format_number(*v))
        .collect::<Vec<_>>()
        .join(";")
}

/// One simulation run rendered as a trace, a summary row, or band coverage
/// at several widths. Window is the halting-criterion window.
pub fn cmd_simulate(
    params: &ModelParams,
    settings: &SimSettings,
    emit: Emit,
    window: usize,
) -> Result<CsvDocument, CliError> {
    settings.validate()?;
    let task = build_task(settings.task, params, settings.template_length)?;
    // The string task realizes a rounded false-negative rate.
    let achieved = task.model_params(params.n_agents())?;
    let trace = sim::run(task.as_ref(), params.n_agents(), settings.iterations, settings.seed)?;
    let ss = steady_state(&achieved);
    let stable_at = sim::detect_stability(&trace, &ss, window)?;

    let header: &[&str] = match emit {
        Emit::Trace => &["iteration", "m", "model_mean", "band_low", "band_high"],
        Emit::Summary => &[
            "count",
            "mean",
            "std",
            "model_mean",
            "model_std",
            "band_coverage",
            "stable_at",
        ],
        Emit::Band => &["sigmas", "halfwidth", "coverage"],
    };
    let mut doc = document("simulate", header, settings.seed);
    annotate_params(&mut doc, &achieved);
    settings.annotate(&mut doc);
    doc.push_meta("window", window);
    doc.push_meta(
        "emit",
        match emit {
            Emit::Trace => "trace",
            Emit::Summary => "summary",
            Emit::Band => "band",
        },
    );

    let (lo, hi) = (
        ss.expected_active - 2.0 * ss.std_active,
        ss.expected_active + 2.0 * ss.std_active,
    );
    match emit {
        Emit::Trace => {
            for (i, &m) in trace.values().iter().enumerate() {
                doc.push_row(vec![
                    (i + 1).into(),
                    m.into(),
                    ss.expected_active.into(),
                    lo.into(),
                    hi.into(),
                ]);
            }
        }
        Emit::Summary => {
            let stats = summarize(&trace, settings.burn_in)?;
            let coverage = band_coverage(&trace, settings.burn_in, ss.expected_active, 2.0 * ss.std_active)?;
            doc.push_row(vec![
                stats.count.into(),
                stats.mean.into(),
                stats.std.into(),
                ss.expected_active.into(),
                ss.std_active.into(),
                coverage.into(),
                stable_at.into(),
            ]);
        }
        Emit::Band => {
            for k in BAND_SIGMAS {
                let half = k * ss.std_active;
                let coverage = band_coverage(&trace, settings.burn_in, ss.expected_active, half)?;
                doc.push_row(vec![k.into(), half.into(), coverage.into()]);
            }
        }
    }
    Ok(doc)
}

/// Ergodicity diagnostics along a simulated urn trajectory.
pub fn cmd_ergodicity(params: &ModelParams, iterations: usize, seed: u64) -> Result<CsvDocument, CliError> {
    if iterations == 0 {
        return Err(CliError::Usage("--iterations must be at least 1".into()));
    }
    let task = BernoulliTask::from_params(params)?;
    let trace = sim::run(&task, params.n_agents(), iterations, seed)?;
    let mut doc = ergodicity_table(params, &trace)?;
    doc.push_meta("iterations", iterations);
    Ok(doc)
}

/// Per-step coefficient `lambda(P_m)`, its running complement sum, and the
/// linear lower bound `t p_m (1 - p_minus)`.
pub fn ergodicity_table(params: &ModelParams, trace: &Trace) -> Result<CsvDocument, CliError> {
    let mut doc = document(
        "ergodicity",
        &[
            "iteration",
            "m",
            "lambda",
            "cumulative_one_minus_lambda",
            "lower_bound",
        ],
        trace.meta().seed,
    );
    annotate_params(&mut doc, params);
    let sums = weak_ergodicity_partial_sums(trace.values(), params)?;
    let slope = params.p_m() * (1.0 - params.p_minus());
    for (i, (&m, &cum)) in trace.values().iter().zip(&sums).enumerate() {
        let lambda = ergodicity_coefficient(&build_transition_matrix(m, params)?);
        doc.push_row(vec![
            (i + 1).into(),
            m.into(),
            lambda.into(),
            cum.into(),
            ((i + 1) as f64 * slope).into(),
        ]);
    }
    Ok(doc)
}
