//! Monte Carlo experiments on extreme eigenvalues and their comparison with
//! the Tracy-Widom laws.

mod experiment;
mod fit;
mod output;
mod stats;

pub use experiment::{
    gap_monte_carlo, run_experiment, run_experiment_with_threads, sample_extremes, Adjustment, EdgeResult,
    ExperimentConfig, ExperimentResult, Extremes, FitReport, GapEstimate, FIT_C,
};
pub use fit::{fit_location_scale, FitBounds, LocationScaleFit};
pub use output::{fmt_sig, histogram_csv, samples_csv, write_outputs, EdgeSummary, ExperimentSummary, SpectrumSummary};
pub use stats::{ecdf, ks_distance, pdf_histogram, Ecdf, Histogram, TabulatedCdf};
