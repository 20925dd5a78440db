//! Parameter sweeps of the entropic chaos degree.
//!
//! A [`SweepConfig`] names a target dynamics, the swept parameter and its
//! grid. [`run_sweep`] evaluates every grid point in parallel and returns
//! rows in grid order, which [`output`] renders as CSV or SVG.

pub mod config;
pub mod error;
pub mod output;
pub mod sweep;

pub use config::{
    parse_bins, parse_grid, parse_reals, parse_vec3, ConfigLayer, Grid, Model, Param, SweepConfig,
    Target,
};
pub use error::{Result, SweepError};
pub use output::{csv_string, format_sig, parse_csv, render_svg, write_csv, CSV_HEADER};
pub use sweep::{evaluate, run_sweep, SweepResult, SweepRow};
