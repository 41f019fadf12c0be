//! Instance generators and the benchmark runner.

mod experiment;
mod generate;

pub use experiment::{
    min_dominating_set, min_set_cover, run_experiment, Aggregate, Algorithm, ExperimentConfig, ExperimentReport,
    Family, ReportRow, RowStatus, WORKERS_ENV,
};
pub use generate::{gnp, random_regular, random_set_system, random_weights};
