//! Empirical orbit distributions over a partition.
//!
//! Distributions keep integer occupation counts next to their normaliser, so
//! the row marginal of a joint is the marginal built from the same window
//! exactly, not merely up to round-off.

use std::collections::BTreeMap;

use crate::error::{EcdError, Result};
use crate::partition::{PartitionSpec, Point};

/// Transient skip `n` and window span `m`: the window covers orbit indices
/// `n..=n+m`, i.e. `m + 1` samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub skip: usize,
    pub span: usize,
}

impl Window {
    pub const DEFAULT_SKIP: usize = 10_000;
    pub const DEFAULT_SPAN: usize = 100_000;

    pub fn new(skip: usize, span: usize) -> Result<Self> {
        if span == 0 {
            return Err(EcdError::InvalidArgument(
                "window span must be at least 1".into(),
            ));
        }
        Ok(Self { skip, span })
    }

    /// Number of samples `m + 1`.
    pub fn samples(&self) -> usize {
        self.span + 1
    }

    /// Minimum orbit length for the marginal.
    pub fn marginal_len(&self) -> usize {
        self.skip + self.span + 1
    }

    /// Minimum orbit length for the joint (one extra successor).
    pub fn joint_len(&self) -> usize {
        self.skip + self.span + 2
    }

    /// Indices of every point the joint touches, including the final successor.
    pub fn joint_range(&self) -> std::ops::Range<usize> {
        self.skip..self.joint_len()
    }
}

impl Default for Window {
    fn default() -> Self {
        Self {
            skip: Self::DEFAULT_SKIP,
            span: Self::DEFAULT_SPAN,
        }
    }
}

fn check_len(needed: usize, got: usize) -> Result<()> {
    if got < needed {
        Err(EcdError::OrbitTooShort { needed, got })
    } else {
        Ok(())
    }
}

/// `p^(n)`: occupation frequencies of the window over the partition bins.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalMarginal {
    partition: PartitionSpec,
    window: Window,
    counts: BTreeMap<u64, u64>,
    total: u64,
}

impl EmpiricalMarginal {
    /// Builds a marginal from raw occupation counts. Zero counts are dropped.
    pub fn from_counts(
        partition: PartitionSpec,
        window: Window,
        counts: impl IntoIterator<Item = (u64, u64)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (bin, c) in counts {
            if bin >= partition.total_bins() {
                return Err(EcdError::InvalidArgument(format!(
                    "bin {bin} not in partition"
                )));
            }
            if c > 0 {
                *map.entry(bin).or_insert(0) += c;
            }
        }
        let total: u64 = map.values().sum();
        if total == 0 {
            return Err(EcdError::InvalidArgument("empty distribution".into()));
        }
        Ok(Self {
            partition,
            window,
            counts: map,
            total,
        })
    }

    pub fn partition(&self) -> &PartitionSpec {
        &self.partition
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Occupation counts by bin, ascending.
    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    /// Normaliser: `m + 1` for one orbit, times the sample count for averaged runs.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn occupied(&self) -> usize {
        self.counts.len()
    }

    pub fn prob(&self, bin: u64) -> f64 {
        self.counts
            .get(&bin)
            .map_or(0.0, |&c| c as f64 / self.total as f64)
    }

    /// `(bin, probability)` pairs over occupied bins, ascending by bin.
    pub fn probs(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        let total = self.total as f64;
        self.counts
            .iter()
            .map(move |(&b, &c)| (b, c as f64 / total))
    }
}

/// `p^(n,n+1)`: frequencies of consecutive bin pairs over the window.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalJoint {
    partition: PartitionSpec,
    window: Window,
    counts: BTreeMap<(u64, u64), u64>,
    total: u64,
}

impl EmpiricalJoint {
    /// Builds a joint from raw pair counts. Zero counts are dropped.
    pub fn from_counts(
        partition: PartitionSpec,
        window: Window,
        counts: impl IntoIterator<Item = ((u64, u64), u64)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for ((i, j), c) in counts {
            if i >= partition.total_bins() || j >= partition.total_bins() {
                return Err(EcdError::InvalidArgument(format!(
                    "pair ({i}, {j}) not in partition"
                )));
            }
            if c > 0 {
                *map.entry((i, j)).or_insert(0) += c;
            }
        }
        let total: u64 = map.values().sum();
        if total == 0 {
            return Err(EcdError::InvalidArgument("empty distribution".into()));
        }
        Ok(Self {
            partition,
            window,
            counts: map,
            total,
        })
    }

    pub fn partition(&self) -> &PartitionSpec {
        &self.partition
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Pair counts, ascending by `(i, j)`.
    pub fn counts(&self) -> &BTreeMap<(u64, u64), u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn prob(&self, i: u64, j: u64) -> f64 {
        self.counts
            .get(&(i, j))
            .map_or(0.0, |&c| c as f64 / self.total as f64)
    }

    pub fn probs(&self) -> impl Iterator<Item = ((u64, u64), f64)> + '_ {
        let total = self.total as f64;
        self.counts
            .iter()
            .map(move |(&k, &c)| (k, c as f64 / total))
    }

    /// `Σ_j p_ij`, summed in integer counts.
    pub fn row_marginal(&self) -> EmpiricalMarginal {
        let mut rows = BTreeMap::new();
        for (&(i, _), &c) in &self.counts {
            *rows.entry(i).or_insert(0) += c;
        }
        EmpiricalMarginal {
            partition: self.partition.clone(),
            window: self.window,
            counts: rows,
            total: self.total,
        }
    }

    /// `Σ_i p_ij`, the distribution `p^(n+1)` one step later.
    pub fn column_marginal(&self) -> EmpiricalMarginal {
        let mut cols = BTreeMap::new();
        for (&(_, j), &c) in &self.counts {
            *cols.entry(j).or_insert(0) += c;
        }
        EmpiricalMarginal {
            partition: self.partition.clone(),
            window: Window {
                skip: self.window.skip + 1,
                span: self.window.span,
            },
            counts: cols,
            total: self.total,
        }
    }

    /// Distinct bins appearing as either source or successor.
    pub fn support_bins(&self) -> usize {
        let mut bins: Vec<u64> = self.counts.keys().flat_map(|&(i, j)| [i, j]).collect();
        bins.sort_unstable();
        bins.dedup();
        bins.len()
    }
}

/// Bin indices of the orbit points touched by the joint window.
pub(crate) fn window_bins<P: Point>(
    orbit: &[P],
    window: Window,
    partition: &PartitionSpec,
) -> Result<Vec<u64>> {
    check_len(window.joint_len(), orbit.len())?;
    orbit[window.joint_range()]
        .iter()
        .map(|x| partition.bin_index(x))
        .collect()
}

/// Adds one orbit's window to running marginal and joint counts.
pub(crate) fn accumulate(
    bins: &[u64],
    marginal: &mut BTreeMap<u64, u64>,
    joint: &mut BTreeMap<(u64, u64), u64>,
) {
    for pair in bins.windows(2) {
        *marginal.entry(pair[0]).or_insert(0) += 1;
        *joint.entry((pair[0], pair[1])).or_insert(0) += 1;
    }
}

/// Marginal and joint of one window in a single pass.
pub(crate) fn from_accumulated(
    partition: &PartitionSpec,
    window: Window,
    marginal: BTreeMap<u64, u64>,
    joint: BTreeMap<(u64, u64), u64>,
) -> (EmpiricalMarginal, EmpiricalJoint) {
    let total: u64 = marginal.values().sum();
    (
        EmpiricalMarginal {
            partition: partition.clone(),
            window,
            counts: marginal,
            total,
        },
        EmpiricalJoint {
            partition: partition.clone(),
            window,
            counts: joint,
            total,
        },
    )
}

/// `p_i = (1/(m+1)) Σ_{k=n}^{n+m} 1_{B_i}(x_k)`.
pub fn empirical_marginal<P: Point>(
    orbit: &[P],
    window: Window,
    partition: &PartitionSpec,
) -> Result<EmpiricalMarginal> {
    check_len(window.marginal_len(), orbit.len())?;
    let mut counts = BTreeMap::new();
    for x in &orbit[window.skip..window.marginal_len()] {
        *counts.entry(partition.bin_index(x)?).or_insert(0) += 1;
    }
    Ok(EmpiricalMarginal {
        partition: partition.clone(),
        window,
        counts,
        total: window.samples() as u64,
    })
}

/// `p_ij = (1/(m+1)) Σ_{k=n}^{n+m} 1_{B_i}(x_k) 1_{B_j}(x_{k+1})`.
pub fn empirical_joint<P: Point>(
    orbit: &[P],
    window: Window,
    partition: &PartitionSpec,
) -> Result<EmpiricalJoint> {
    let bins = window_bins(orbit, window, partition)?;
    let mut counts = BTreeMap::new();
    for pair in bins.windows(2) {
        *counts.entry((pair[0], pair[1])).or_insert(0) += 1;
    }
    Ok(EmpiricalJoint {
        partition: partition.clone(),
        window,
        counts,
        total: window.samples() as u64,
    })
}

/// Both distributions of one window, sharing a single binning pass.
pub fn empirical_pair<P: Point>(
    orbit: &[P],
    window: Window,
    partition: &PartitionSpec,
) -> Result<(EmpiricalMarginal, EmpiricalJoint)> {
    let bins = window_bins(orbit, window, partition)?;
    let mut marginal = BTreeMap::new();
    let mut joint = BTreeMap::new();
    accumulate(&bins, &mut marginal, &mut joint);
    Ok(from_accumulated(partition, window, marginal, joint))
}
