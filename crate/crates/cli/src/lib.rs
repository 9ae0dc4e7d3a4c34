//! Orchestration behind the `jonesq` binary: knot resolution, exact
//! evaluation, repeated noisy simulation, extrapolation and the
//! Reidemeister-move benchmark.

pub mod analysis;
pub mod benchmark;
pub mod config;
mod error;
pub mod exact;
pub mod io;
pub mod simulate;

pub use analysis::{analyse, plot_data, PlotData, ZneReport};
pub use benchmark::{benchmark, BenchmarkReport};
pub use config::{resolve_knot, KnotSource, RunConfig};
pub use error::CliError;
pub use exact::{exact_report, knot_info, ExactReport};
pub use simulate::simulate;
