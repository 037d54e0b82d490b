//! The optimization layer over degree histograms.
//!
//! For a bicyclic graph of order `n` with maximum degree `delta`, write
//! `n = (delta - 1) * k + p` with `0 <= p <= delta - 2`. The residue `p`
//! selects which closed-form bound applies, and the quantity
//! `r = k - n_delta` measures how far a histogram is from putting as many
//! vertices as possible at the top degree.
//!
//! Two routes to the extremal histogram live here:
//! * [`major_sequence`] builds the claimed `r = 0` optimum tuple
//!   directly (only defined for `p <= delta - 3`, and rejecting the
//!   `p + 3 = delta` collision where the tuple's two slots coincide);
//! * [`exact_histogram_max`] maximizes `sum(i^3 * n_i)` over *all* feasible
//!   histograms by exhaustive search. It ignores graph realizability, so it
//!   is a sound upper bound for every actual graph, and it is the oracle the
//!   tuple route is audited against.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::Overflow;
use crate::histogram::DegreeHistogram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("maximum degree {0} is below 3; no bicyclic graph attains it")]
    DeltaTooSmall(usize),
    #[error(
        "order {n} is below {min} = delta + 1, the smallest order with maximum degree {delta}"
    )]
    OrderTooSmall { n: u64, delta: usize, min: u64 },
    #[error("histogram delta {actual} does not match parameter delta {expected}")]
    DeltaMismatch { expected: usize, actual: usize },
    #[error("r is not an integer; the histogram violates the bicyclic degree identities")]
    NonIntegralR,
    #[error("residue p = {p} exceeds delta - 3 = {limit}; no optimum tuple is defined")]
    ResidueNotCovered { p: u64, limit: i64 },
    #[error("p + 3 = delta = {delta}: the tuple's two slots collide; use the exact maximizer")]
    DeltaCollision { delta: usize },
    #[error("r must be at least -1, got {0}")]
    ROutOfRange(i64),
    #[error("maximum degree {0} is beyond what the exact maximizer supports")]
    OracleRange(usize),
    #[error("no feasible histogram for these parameters")]
    Infeasible,
    #[error(transparent)]
    Overflow(#[from] Overflow),
}

/// Largest maximum degree accepted by [`exact_histogram_max`]. Far beyond
/// anything the search could finish in reasonable time anyway.
pub const MAX_ORACLE_DELTA: usize = 64;

/// `n = (delta - 1) * k + p` with `0 <= p <= delta - 2` and `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueParams {
    pub n: u64,
    pub delta: usize,
    pub k: u64,
    pub p: u64,
}

pub fn residue_params(n: u64, delta: usize) -> Result<ResidueParams, PartitionError> {
    if delta < 3 {
        return Err(PartitionError::DeltaTooSmall(delta));
    }
    let min = delta as u64 + 1;
    if n < min {
        return Err(PartitionError::OrderTooSmall { n, delta, min });
    }
    let q = delta as u64 - 1;
    Ok(ResidueParams {
        n,
        delta,
        k: n / q,
        p: n % q,
    })
}

/// The decomposition `p + r + 2 = t * (delta - 2) + s` with `0 <= s < delta - 2`,
/// specializing to `r + 2` when `p = 0` and to `r + 3` when `p = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseParams {
    pub r: i64,
    pub t: u64,
    pub s: u64,
}

pub fn case_params(r: i64, params: &ResidueParams) -> Result<CaseParams, PartitionError> {
    if r < -1 {
        return Err(PartitionError::ROutOfRange(r));
    }
    let total = params.p as i64 + r + 2;
    debug_assert!(total >= 1);
    let base = params.delta as i64 - 2;
    Ok(CaseParams {
        r,
        t: (total / base) as u64,
        s: (total % base) as u64,
    })
}

/// The partition of `total` with as many parts equal to `delta` as possible:
/// `t` copies of `delta` followed by the positive remainder, if any.
pub fn dominant_partition(total: u64, delta: u64) -> Vec<u64> {
    assert!(delta >= 1, "parts must be positive");
    if total == 0 {
        return Vec::new();
    }
    let t = total / delta;
    let b = total % delta;
    let mut parts = vec![delta; t as usize];
    if b > 0 {
        parts.push(b);
    }
    parts
}

/// `r = (sum_{i=2}^{delta-1} (i-1) n_i - (p + 2)) / (delta - 1)`.
///
/// Exact whenever the histogram satisfies the bicyclic identities, in which
/// case it equals `k - n_delta`.
pub fn r_value(h: &DegreeHistogram, params: &ResidueParams) -> Result<i64, PartitionError> {
    if h.delta() != params.delta {
        return Err(PartitionError::DeltaMismatch {
            expected: params.delta,
            actual: h.delta(),
        });
    }
    let mut mid: i128 = 0;
    for d in 2..params.delta {
        mid += (d as i128 - 1) * h.count_of_degree(d) as i128;
    }
    let numer = mid - (params.p as i128 + 2);
    let denom = params.delta as i128 - 1;
    if numer.rem_euclid(denom) != 0 {
        return Err(PartitionError::NonIntegralR);
    }
    Ok((numer / denom) as i64)
}

/// The `r = 0` optimum tuple: `n_delta = k`, one vertex of degree `p + 3`,
/// and `n - k - 1` pendant vertices.
///
/// Defined only for `p <= delta - 3`; the `p + 3 = delta` collision (where
/// the two populated slots would merge into `n_delta = k + 1`) is rejected
/// and left to [`exact_histogram_max`].
pub fn major_sequence(params: &ResidueParams) -> Result<DegreeHistogram, PartitionError> {
    let limit = params.delta as i64 - 3;
    if params.p as i64 > limit {
        return Err(PartitionError::ResidueNotCovered { p: params.p, limit });
    }
    if params.p as usize + 3 == params.delta {
        return Err(PartitionError::DeltaCollision {
            delta: params.delta,
        });
    }
    let pendants = params
        .n
        .checked_sub(params.k + 1)
        .ok_or(PartitionError::OrderTooSmall {
            n: params.n,
            delta: params.delta,
            min: params.k + 1,
        })?;
    let mut counts = vec![0u64; params.delta];
    counts[0] = pendants;
    counts[params.p as usize + 2] = 1;
    counts[params.delta - 1] = params.k;
    Ok(DegreeHistogram::from_counts(counts).expect("k >= 1"))
}

/// Exhaustively maximize `sum(i^3 * n_i)` over histograms with
/// `sum(n_i) = n`, `sum(i * n_i) = 2n + 2` and `n_delta >= 1`.
///
/// The search walks `n_delta, n_{delta-1}, ..., n_2` with descending counts,
/// pruning branches whose remaining weight budget cannot be absorbed and
/// branches whose objective ceiling (`(d^3 - 1)/(d - 1) = d^2 + d + 1` per
/// unit of weight, plus one per leftover vertex) cannot beat the incumbent.
/// Ties keep the lexicographically largest `(n_delta, n_{delta-1}, ...)`.
pub fn exact_histogram_max(
    params: &ResidueParams,
) -> Result<(DegreeHistogram, u64), PartitionError> {
    if params.delta > MAX_ORACLE_DELTA {
        return Err(PartitionError::OracleRange(params.delta));
    }
    let delta = params.delta;
    let n = params.n as u128;
    let weight_total = n + 2;

    let mut cur = vec![0u64; delta];
    let mut best: Option<(u128, Vec<u64>)> = None;

    let w_top = (delta - 1) as u128;
    let top_max = (weight_total / w_top).min(n);
    let d3_top = (delta as u128).pow(3);
    for x in (1..=top_max).rev() {
        cur[delta - 1] = x as u64;
        fill(
            delta - 1,
            n - x,
            weight_total - x * w_top,
            x * d3_top,
            &mut cur,
            &mut best,
        );
    }

    let (value, counts) = best.ok_or(PartitionError::Infeasible)?;
    let value = u64::try_from(value).map_err(|_| Overflow)?;
    let hist = DegreeHistogram::from_counts(counts).expect("top count is positive");
    Ok((hist, value))
}

/// Choose counts for `degree` down to 2; degree-1 vertices absorb the rest.
fn fill(
    degree: usize,
    count_left: u128,
    weight_left: u128,
    value: u128,
    cur: &mut Vec<u64>,
    best: &mut Option<(u128, Vec<u64>)>,
) {
    if degree == 1 {
        if weight_left == 0 {
            let total = value + count_left;
            if best.as_ref().is_none_or(|(b, _)| total > *b) {
                cur[0] = count_left as u64;
                *best = Some((total, cur.clone()));
                cur[0] = 0;
            }
        }
        return;
    }
    let w = (degree - 1) as u128;
    if weight_left > w * count_left {
        return; // lower degrees absorb even less weight per vertex
    }
    if let Some((incumbent, _)) = best.as_ref() {
        let d = degree as u128;
        let ceiling = value + count_left + weight_left * (d * d + d + 1);
        if ceiling <= *incumbent {
            return;
        }
    }
    let d3 = (degree as u128).pow(3);
    let hi = (weight_left / w).min(count_left);
    for x in (0..=hi).rev() {
        cur[degree - 1] = x as u64;
        fill(
            degree - 1,
            count_left - x,
            weight_left - x * w,
            value + x * d3,
            cur,
            best,
        );
    }
    cur[degree - 1] = 0;
}
