use std::collections::BTreeMap;

use crate::empirical::{EmpiricalJoint, EmpiricalMarginal};
use crate::error::{EcdError, Result};

/// Row-stochastic transition matrix `Λ*` between occupied bins, row `i` being
/// `(p_ij / p_i)_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionChannel {
    rows: BTreeMap<u64, BTreeMap<u64, f64>>,
}

/// Checks that `joint` and `marginal` describe the same window over the same
/// partition, and that every joint row sums to the marginal exactly.
pub(crate) fn check_consistent(joint: &EmpiricalJoint, marginal: &EmpiricalMarginal) -> Result<()> {
    if joint.partition() != marginal.partition() {
        return Err(EcdError::Inconsistent("different partitions".into()));
    }
    if joint.window() != marginal.window() {
        return Err(EcdError::Inconsistent(format!(
            "joint window {:?} vs marginal window {:?}",
            joint.window(),
            marginal.window()
        )));
    }
    if joint.total() != marginal.total() {
        return Err(EcdError::Inconsistent(format!(
            "normalisers differ: {} vs {}",
            joint.total(),
            marginal.total()
        )));
    }
    let rows = joint.row_marginal();
    for (&i, &c) in rows.counts() {
        match marginal.counts().get(&i) {
            None => {
                return Err(EcdError::Inconsistent(format!(
                    "marginal is zero on occupied joint row {i}"
                )))
            }
            Some(&pc) if pc != c => {
                return Err(EcdError::Inconsistent(format!(
                    "row {i} sums to {c} counts, marginal has {pc}"
                )))
            }
            Some(_) => {}
        }
    }
    if rows.occupied() != marginal.occupied() {
        return Err(EcdError::Inconsistent(
            "marginal occupies bins with no joint row".into(),
        ));
    }
    Ok(())
}

/// Builds `Λ*_{n,B}` from a consistent joint/marginal pair.
pub fn channel_from(
    joint: &EmpiricalJoint,
    marginal: &EmpiricalMarginal,
) -> Result<TransitionChannel> {
    check_consistent(joint, marginal)?;
    let mut rows: BTreeMap<u64, BTreeMap<u64, f64>> = BTreeMap::new();
    for (&(i, j), &c) in joint.counts() {
        let ci = marginal.counts()[&i];
        rows.entry(i).or_default().insert(j, c as f64 / ci as f64);
    }
    Ok(TransitionChannel { rows })
}

impl TransitionChannel {
    pub fn row(&self, i: u64) -> Option<&BTreeMap<u64, f64>> {
        self.rows.get(&i)
    }

    pub fn rows(&self) -> &BTreeMap<u64, BTreeMap<u64, f64>> {
        &self.rows
    }

    /// `Λ* p`: pushes a distribution one step forward.
    pub fn apply(&self, p: &EmpiricalMarginal) -> BTreeMap<u64, f64> {
        let mut out: BTreeMap<u64, f64> = BTreeMap::new();
        for (i, pi) in p.probs() {
            if let Some(row) = self.rows.get(&i) {
                for (&j, &t) in row {
                    *out.entry(j).or_insert(0.0) += pi * t;
                }
            }
        }
        out
    }

    /// Shannon entropy of row `i` (natural log), `S(Λ* δ_i)`.
    pub fn row_entropy(&self, i: u64) -> f64 {
        self.rows.get(&i).map_or(0.0, |row| {
            row.values()
                .filter(|&&t| t > 0.0)
                .map(|&t| -t * t.ln())
                .sum()
        })
    }
}
