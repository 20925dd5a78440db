//! Entropic chaos degree of discrete dynamics.
//!
//! An orbit window is binned over an equipartition of its range; the
//! occupation frequencies `p_i`, the consecutive-pair frequencies `p_ij` and
//! the induced transition channel `p_ij / p_i` give the chaos degree
//! `D = Σ_ij p_ij log(p_i / p_ij)`, the conditional entropy of one step. `D`
//! vanishes for stable (eventually periodic) dynamics and is positive for
//! chaotic ones.
//!
//! Orbit sources: the logistic, baker and Tinkerbell maps ([`maps`]) and a
//! spin-1/2 driven by a discrete field recurrence ([`spin`]).

pub mod channel;
pub mod degree;
pub mod empirical;
pub mod error;
pub mod maps;
pub mod partition;
pub mod selftest;
pub mod spin;

pub use channel::{channel_from, TransitionChannel};
pub use degree::{
    chaos_degree, chaos_degree_via_channel, ecd_monte_carlo, ecd_of_sequence,
    ecd_sup_over_partitions, Binning, EcdReport, LogBase, DEFAULT_BINS,
};
pub use empirical::{
    empirical_joint, empirical_marginal, empirical_pair, EmpiricalJoint, EmpiricalMarginal, Window,
};
pub use error::{EcdError, Result};
pub use partition::{PartitionSpec, Point};
