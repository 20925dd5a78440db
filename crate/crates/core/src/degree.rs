//! The entropic chaos degree `D = Σ_ij p_ij log(p_i / p_ij)`.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channel::{channel_from, check_consistent};
use crate::empirical::{
    accumulate, empirical_pair, from_accumulated, window_bins, EmpiricalJoint, EmpiricalMarginal,
    Window,
};
use crate::error::{EcdError, Result};
use crate::partition::{PartitionSpec, Point};

pub const DEFAULT_BINS: u32 = 100;

/// How the partition of an orbit window is chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum Binning {
    /// `[r, R]` taken as the min and max over the window on every axis, cut
    /// into the given number of bins per axis.
    Auto {
        bins: u32,
    },
    Fixed(PartitionSpec),
}

impl Default for Binning {
    fn default() -> Self {
        Binning::Auto { bins: DEFAULT_BINS }
    }
}

impl Binning {
    fn resolve<P: Point>(&self, orbit: &[P], window: Window) -> Result<PartitionSpec> {
        match self {
            Binning::Fixed(p) => Ok(p.clone()),
            Binning::Auto { bins } => {
                check_len(window, orbit.len())?;
                PartitionSpec::bounding(orbit[window.joint_range()].iter(), *bins)
            }
        }
    }
}

fn check_len(window: Window, got: usize) -> Result<()> {
    if got < window.joint_len() {
        Err(EcdError::OrbitTooShort {
            needed: window.joint_len(),
            got,
        })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Nats,
    Bits,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EcdReport {
    /// Chaos degree in nats.
    pub degree: f64,
    /// Distinct bins visited by the window, counting the final successor.
    pub occupied_bins: usize,
    pub partition: PartitionSpec,
    pub window: Window,
}

impl EcdReport {
    pub fn degree_in(&self, base: LogBase) -> f64 {
        match base {
            LogBase::Nats => self.degree,
            LogBase::Bits => self.degree / std::f64::consts::LN_2,
        }
    }

    pub fn bins_per_axis(&self) -> u32 {
        self.partition.bins_per_axis()
    }
}

/// Chaos degree of a consistent joint/marginal pair, in the log-ratio form.
///
/// Terms are summed in ascending `(i, j)` order. A row with a single successor
/// contributes `log 1 = 0` exactly.
pub fn chaos_degree(joint: &EmpiricalJoint, marginal: &EmpiricalMarginal) -> Result<EcdReport> {
    check_consistent(joint, marginal)?;
    let total = joint.total() as f64;
    let degree = joint
        .counts()
        .iter()
        .map(|(&(i, _), &cij)| {
            let ci = marginal.counts()[&i];
            (cij as f64 / total) * (ci as f64 / cij as f64).ln()
        })
        .sum();
    Ok(EcdReport {
        degree,
        occupied_bins: joint.support_bins(),
        partition: joint.partition().clone(),
        window: joint.window(),
    })
}

/// The same quantity as `Σ_i p_i S(Λ* δ_i)`, through the transition channel.
pub fn chaos_degree_via_channel(
    joint: &EmpiricalJoint,
    marginal: &EmpiricalMarginal,
) -> Result<f64> {
    let channel = channel_from(joint, marginal)?;
    Ok(marginal
        .probs()
        .map(|(i, pi)| pi * channel.row_entropy(i))
        .sum())
}

/// Chaos degree of one orbit window.
///
/// A constant window under [`Binning::Auto`] gives a degenerate interval
/// `r = R`; every point then sits in bin 0 and the degree is 0.
pub fn ecd_of_sequence<P: Point>(
    orbit: &[P],
    window: Window,
    binning: &Binning,
) -> Result<EcdReport> {
    let partition = binning.resolve(orbit, window)?;
    let (marginal, joint) = empirical_pair(orbit, window, &partition)?;
    chaos_degree(&joint, &marginal)
}

/// Maximum degree over automatic equipartitions with each of `bin_counts`
/// bins per axis. Ties keep the first count listed.
pub fn ecd_sup_over_partitions<P: Point>(
    orbit: &[P],
    window: Window,
    bin_counts: &[u32],
) -> Result<EcdReport> {
    let mut best: Option<EcdReport> = None;
    for &bins in bin_counts {
        let r = ecd_of_sequence(orbit, window, &Binning::Auto { bins })?;
        if best.as_ref().is_none_or(|b| r.degree > b.degree) {
            best = Some(r);
        }
    }
    best.ok_or_else(|| EcdError::InvalidArgument("no bin counts given".into()))
}

/// Chaos degree with the initial point drawn from a measure.
///
/// `sampler` draws `samples` initial points from a ChaCha8 stream seeded with
/// `seed`; `orbit_factory` turns each into an orbit. Occupation counts are
/// summed over all orbits before normalisation. Under [`Binning::Auto`] the
/// interval spans every sampled window.
pub fn ecd_monte_carlo<I, P, F, S>(
    mut orbit_factory: F,
    mut sampler: S,
    seed: u64,
    samples: usize,
    window: Window,
    binning: &Binning,
) -> Result<EcdReport>
where
    P: Point,
    F: FnMut(I) -> Result<Vec<P>>,
    S: FnMut(&mut ChaCha8Rng) -> I,
{
    if samples == 0 {
        return Err(EcdError::InvalidArgument(
            "at least one sample required".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut orbits = Vec::with_capacity(samples);
    for _ in 0..samples {
        let orbit = orbit_factory(sampler(&mut rng))?;
        check_len(window, orbit.len())?;
        orbits.push(orbit);
    }
    let partition = match binning {
        Binning::Fixed(p) => p.clone(),
        Binning::Auto { bins } => PartitionSpec::bounding(
            orbits.iter().flat_map(|o| o[window.joint_range()].iter()),
            *bins,
        )?,
    };
    let mut marginal = BTreeMap::new();
    let mut joint = BTreeMap::new();
    for orbit in &orbits {
        let bins = window_bins(orbit, window, &partition)?;
        accumulate(&bins, &mut marginal, &mut joint);
    }
    let (marginal, joint) = from_accumulated(&partition, window, marginal, joint);
    chaos_degree(&joint, &marginal)
}
