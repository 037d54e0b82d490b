//! Degree histograms `(n_1, ..., n_delta)` and the counting identities they
//! satisfy on bicyclic graphs.
//!
//! For a connected graph with `m = n + 1` the handshake identity forces
//! `sum(i * n_i) = 2n + 2`, equivalently `sum((i - 1) * n_i) = n + 2`. Those
//! corrected right-hand sides are what this module checks; everything
//! downstream (the optimization layer, the bound audit) builds on them.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, Overflow};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HistogramError {
    #[error("histogram needs at least one degree class")]
    Empty,
    #[error("count for the maximum degree must be positive")]
    DeltaNotAttained,
    #[error("stored delta {delta} does not match {len} degree classes")]
    DeltaMismatch { delta: usize, len: usize },
    #[error("graph has no edges")]
    NoEdges,
    #[error("vertex {0} is isolated; histograms require minimum degree 1")]
    IsolatedVertex(u32),
    #[error("histogram order {0} too large to expand into a degree multiset")]
    TooLargeToExpand(u64),
}

/// Counts of vertices per degree: `counts()[i]` is the number of vertices of
/// degree `i + 1`. The maximum degree is stored explicitly and must be
/// attained (`n_delta >= 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHistogram")]
pub struct DegreeHistogram {
    delta: usize,
    counts: Vec<u64>,
}

#[derive(Deserialize)]
struct RawHistogram {
    delta: usize,
    counts: Vec<u64>,
}

impl TryFrom<RawHistogram> for DegreeHistogram {
    type Error = HistogramError;

    fn try_from(raw: RawHistogram) -> Result<Self, Self::Error> {
        if raw.delta != raw.counts.len() {
            return Err(HistogramError::DeltaMismatch {
                delta: raw.delta,
                len: raw.counts.len(),
            });
        }
        DegreeHistogram::from_counts(raw.counts)
    }
}

impl DegreeHistogram {
    /// `counts[i]` is the number of vertices of degree `i + 1`.
    pub fn from_counts(counts: Vec<u64>) -> Result<Self, HistogramError> {
        if counts.is_empty() {
            return Err(HistogramError::Empty);
        }
        if *counts.last().unwrap() == 0 {
            return Err(HistogramError::DeltaNotAttained);
        }
        Ok(DegreeHistogram {
            delta: counts.len(),
            counts,
        })
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Number of vertices of degree `d` (zero outside `1..=delta`).
    pub fn count_of_degree(&self, d: usize) -> u64 {
        if d >= 1 && d <= self.delta {
            self.counts[d - 1]
        } else {
            0
        }
    }

    /// Total number of vertices.
    pub fn order(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `sum(i * n_i)`, i.e. twice the edge count of any realization.
    pub fn degree_sum(&self) -> u128 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u128 + 1) * c as u128)
            .sum()
    }

    /// `sum((i - 1) * n_i)` over all degrees.
    pub fn reduced_sum(&self) -> u128 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| i as u128 * c as u128)
            .sum()
    }

    /// Degrees as a non-increasing list, one entry per vertex.
    pub fn degree_multiset(&self) -> Result<Vec<usize>, HistogramError> {
        let n = self.order();
        let len = usize::try_from(n).map_err(|_| HistogramError::TooLargeToExpand(n))?;
        if len > (1 << 28) {
            return Err(HistogramError::TooLargeToExpand(n));
        }
        let mut out = Vec::with_capacity(len);
        for d in (1..=self.delta).rev() {
            for _ in 0..self.counts[d - 1] {
                out.push(d);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for DegreeHistogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub fn histogram_from_graph(g: &Graph) -> Result<DegreeHistogram, HistogramError> {
    if g.m() == 0 {
        return Err(HistogramError::NoEdges);
    }
    let delta = g.max_degree();
    let mut counts = vec![0u64; delta];
    for (v, d) in g.degrees().enumerate() {
        if d == 0 {
            return Err(HistogramError::IsolatedVertex(v as u32));
        }
        counts[d - 1] += 1;
    }
    DegreeHistogram::from_counts(counts)
}

/// Both sides of the bicyclic counting identities, for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityCheck {
    /// `sum(i * n_i)` and its required value `2n + 2`.
    pub degree_sum: u128,
    pub expected_degree_sum: u128,
    /// `sum((i - 1) * n_i)` and its required value `n + 2`.
    pub reduced_sum: u128,
    pub expected_reduced_sum: u128,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.degree_sum == self.expected_degree_sum
    }
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds() {
            write!(f, "bicyclic identities hold")
        } else {
            write!(
                f,
                "sum(i*n_i) = {} but 2n+2 = {}; sum((i-1)*n_i) = {} but n+2 = {}",
                self.degree_sum,
                self.expected_degree_sum,
                self.reduced_sum,
                self.expected_reduced_sum
            )
        }
    }
}

/// Check `sum(i * n_i) = 2n + 2` (and the equivalent reduced form).
pub fn check_bicyclic_identities(h: &DegreeHistogram) -> IdentityCheck {
    let n = h.order() as u128;
    IdentityCheck {
        degree_sum: h.degree_sum(),
        expected_degree_sum: 2 * n + 2,
        reduced_sum: h.reduced_sum(),
        expected_reduced_sum: n + 2,
    }
}

/// `sum(i^3 * n_i)`: the forgotten index of any graph realizing `h`.
pub fn f_from_histogram(h: &DegreeHistogram) -> Result<u64, Overflow> {
    let mut total: u64 = 0;
    for (i, &c) in h.counts().iter().enumerate() {
        let d = i as u64 + 1;
        total = arith::add(total, arith::mul(arith::cube(d)?, c)?)?;
    }
    Ok(total)
}

/// The partition with `n_{i+1}` parts equal to `i`, non-increasing. Its parts
/// sum to `n + 2` exactly when the bicyclic identities hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaPartition {
    parts: Vec<u64>,
}

impl DeltaPartition {
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn sum(&self) -> u128 {
        self.parts.iter().map(|&p| p as u128).sum()
    }
}

pub fn delta_partition(h: &DegreeHistogram) -> Result<DeltaPartition, HistogramError> {
    let size: u128 = h.counts()[1..].iter().map(|&c| c as u128).sum();
    if size > (1 << 28) {
        return Err(HistogramError::TooLargeToExpand(size as u64));
    }
    let mut parts = Vec::with_capacity(size as usize);
    for d in (2..=h.delta()).rev() {
        for _ in 0..h.count_of_degree(d) {
            parts.push(d as u64 - 1);
        }
    }
    Ok(DeltaPartition { parts })
}
