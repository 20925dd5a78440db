//! Axis-aligned equipartitions of a box in `R^L`.
//!
//! Each axis `[lo, hi]` is cut into `M` equal half-open bins; the last bin is
//! closed so that `hi` itself is covered. Bin multi-indices are flattened
//! row-major into a single `u64`, so the full `M^L` grid is never stored.

use crate::error::{EcdError, Result};

/// A point of an orbit: a fixed-length vector of real coordinates.
pub trait Point {
    fn dim(&self) -> usize;
    fn coord(&self, axis: usize) -> f64;
}

impl Point for f64 {
    fn dim(&self) -> usize {
        1
    }
    fn coord(&self, _axis: usize) -> f64 {
        *self
    }
}

impl<const N: usize> Point for [f64; N] {
    fn dim(&self) -> usize {
        N
    }
    fn coord(&self, axis: usize) -> f64 {
        self[axis]
    }
}

impl Point for Vec<f64> {
    fn dim(&self) -> usize {
        self.len()
    }
    fn coord(&self, axis: usize) -> f64 {
        self[axis]
    }
}

impl Point for &[f64] {
    fn dim(&self) -> usize {
        self.len()
    }
    fn coord(&self, axis: usize) -> f64 {
        self[axis]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionSpec {
    lo: Vec<f64>,
    hi: Vec<f64>,
    bins_per_axis: u32,
    total_bins: u64,
}

impl PartitionSpec {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>, bins_per_axis: u32) -> Result<Self> {
        if lo.is_empty() {
            return Err(EcdError::InvalidPartition("zero dimensions".into()));
        }
        if lo.len() != hi.len() {
            return Err(EcdError::InvalidPartition(format!(
                "lo has {} axes, hi has {}",
                lo.len(),
                hi.len()
            )));
        }
        if bins_per_axis == 0 {
            return Err(EcdError::InvalidPartition(
                "bins per axis must be positive".into(),
            ));
        }
        for (axis, (&l, &h)) in lo.iter().zip(&hi).enumerate() {
            if !l.is_finite() || !h.is_finite() {
                return Err(EcdError::InvalidPartition(format!(
                    "axis {axis}: non-finite bound"
                )));
            }
            if l > h {
                return Err(EcdError::InvalidPartition(format!(
                    "axis {axis}: lo {l} > hi {h}"
                )));
            }
        }
        let dims = u32::try_from(lo.len())
            .map_err(|_| EcdError::InvalidPartition("too many axes".into()))?;
        let total_bins = u64::from(bins_per_axis).checked_pow(dims).ok_or_else(|| {
            EcdError::InvalidPartition(format!("{bins_per_axis}^{dims} bins overflow u64"))
        })?;
        Ok(Self {
            lo,
            hi,
            bins_per_axis,
            total_bins,
        })
    }

    /// One-dimensional partition of `[lo, hi]`.
    pub fn interval(lo: f64, hi: f64, bins: u32) -> Result<Self> {
        Self::new(vec![lo], vec![hi], bins)
    }

    /// Bounding box of `points` (per-axis min and max), cut into `bins` per axis.
    pub fn bounding<'a, P, I>(points: I, bins: u32) -> Result<Self>
    where
        P: Point + 'a,
        I: IntoIterator<Item = &'a P>,
    {
        let mut iter = points.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| EcdError::InvalidArgument("no points to bound".into()))?;
        let dims = first.dim();
        let mut lo = vec![f64::INFINITY; dims];
        let mut hi = vec![f64::NEG_INFINITY; dims];
        for p in std::iter::once(first).chain(iter) {
            if p.dim() != dims {
                return Err(EcdError::InvalidArgument(format!(
                    "mixed point dimensions {} and {}",
                    dims,
                    p.dim()
                )));
            }
            for axis in 0..dims {
                let v = p.coord(axis);
                if !v.is_finite() {
                    return Err(EcdError::OutOfRange {
                        axis,
                        value: v,
                        lo: f64::MIN,
                        hi: f64::MAX,
                    });
                }
                lo[axis] = lo[axis].min(v);
                hi[axis] = hi[axis].max(v);
            }
        }
        Self::new(lo, hi, bins)
    }

    pub fn dims(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn bins_per_axis(&self) -> u32 {
        self.bins_per_axis
    }

    /// `M^L`.
    pub fn total_bins(&self) -> u64 {
        self.total_bins
    }

    /// Row-major flattened bin index of `x`.
    ///
    /// On each axis the index is `floor(M (v - lo) / (hi - lo))` clamped to
    /// `[0, M-1]`, so `v == hi` lands in the last bin. A degenerate axis
    /// (`lo == hi`) has every admissible value in bin 0.
    pub fn bin_index<P: Point + ?Sized>(&self, x: &P) -> Result<u64> {
        if x.dim() != self.dims() {
            return Err(EcdError::InvalidArgument(format!(
                "point has {} coordinates, partition has {} axes",
                x.dim(),
                self.dims()
            )));
        }
        let m = u64::from(self.bins_per_axis);
        let mut flat = 0u64;
        for axis in 0..self.dims() {
            let (lo, hi) = (self.lo[axis], self.hi[axis]);
            let v = x.coord(axis);
            // NaN fails both comparisons
            if !(v >= lo && v <= hi) {
                return Err(EcdError::OutOfRange {
                    axis,
                    value: v,
                    lo,
                    hi,
                });
            }
            let idx = if hi > lo {
                let scaled = (m as f64) * (v - lo) / (hi - lo);
                (scaled.floor() as u64).min(m - 1)
            } else {
                0
            };
            flat = flat * m + idx;
        }
        Ok(flat)
    }

    /// Inverse of the flattening in [`bin_index`](Self::bin_index).
    pub fn unflatten(&self, mut flat: u64) -> Vec<u32> {
        let m = u64::from(self.bins_per_axis);
        let mut out = vec![0u32; self.dims()];
        for slot in out.iter_mut().rev() {
            *slot = (flat % m) as u32;
            flat /= m;
        }
        out
    }
}
