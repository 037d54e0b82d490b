//! Closed-form upper bounds on the forgotten index of bicyclic graphs, one
//! per residue class of `n mod (delta - 1)`, together with the audit that
//! compares each bound against two independent oracles: the exact histogram
//! relaxation and exhaustive enumeration of the actual graph class.
//!
//! The audit treats a failed bound as a first-class outcome. A record is
//! `VIOLATED` when a real graph beats the closed form, and it always carries
//! a graph6 witness that can be re-checked from the string alone.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, Overflow};
use crate::enumeration::{
    enumerate_bicyclic, EnumError, EnumSpec, DEFAULT_ENUM_CAP, MAX_ENUM_ORDER,
};
use crate::partition::{exact_histogram_max, residue_params, PartitionError, ResidueParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("n = {n} has residue {actual}, not {expected}, mod (delta - 1) = {modulus}")]
    ResidueMismatch {
        n: u64,
        expected: u64,
        actual: u64,
        modulus: u64,
    },
    #[error("p = {p} outside the covered range 2..={limit}")]
    POutOfRange { p: u64, limit: i64 },
    #[error(transparent)]
    Params(#[from] PartitionError),
    #[error(transparent)]
    Overflow(#[from] Overflow),
}

/// Which closed form applies to a given `(n, delta)`.
///
/// `BoundaryPDeltaMinus3` marks `p = delta - 3` for `p >= 2`: the general
/// formula is still evaluated there, but its applicability is uncertain and
/// the audit checks it empirically rather than assuming it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TheoremTag {
    #[serde(rename = "T_p0")]
    P0,
    #[serde(rename = "T_p1")]
    P1,
    #[serde(rename = "T_general_p")]
    GeneralP,
    #[serde(rename = "boundary_p_eq_delta_minus_3")]
    BoundaryPDeltaMinus3,
    #[serde(rename = "none")]
    NoTheorem,
}

impl TheoremTag {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremTag::P0 => "T_p0",
            TheoremTag::P1 => "T_p1",
            TheoremTag::GeneralP => "T_general_p",
            TheoremTag::BoundaryPDeltaMinus3 => "boundary_p_eq_delta_minus_3",
            TheoremTag::NoTheorem => "none",
        }
    }
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn lead_coefficient(delta: usize) -> Result<u64, Overflow> {
    // delta^2 + delta + 2
    let d = delta as u64;
    arith::add(arith::add(arith::square(d)?, d)?, 2)
}

/// `(delta^2 + delta + 2) n + 26`, for `n ≡ 0 mod (delta - 1)`.
pub fn bound_p0(n: u64, delta: usize) -> Result<u64, BoundError> {
    let params = residue_params(n, delta)?;
    if params.p != 0 {
        return Err(BoundError::ResidueMismatch {
            n,
            expected: 0,
            actual: params.p,
            modulus: delta as u64 - 1,
        });
    }
    Ok(arith::add(arith::mul(lead_coefficient(delta)?, n)?, 26)?)
}

/// `(delta^2 + delta + 2) n - (delta^2 + delta - 6)`, for `n ≡ 1`.
pub fn bound_p1(n: u64, delta: usize) -> Result<u64, BoundError> {
    let params = residue_params(n, delta)?;
    if params.p != 1 {
        return Err(BoundError::ResidueMismatch {
            n,
            expected: 1,
            actual: params.p,
            modulus: delta as u64 - 1,
        });
    }
    let c = lead_coefficient(delta)?;
    let value = arith::mul(c, n)?
        .checked_sub(c - 8) // delta^2 + delta - 6
        .ok_or(Overflow)?;
    Ok(value)
}

/// `(delta^2 + delta + 2)(n - p) + p^3 + 9p^2 + 28p + 26`, for
/// `n ≡ p mod (delta - 1)` with `2 <= p <= delta - 3`.
pub fn bound_general_p(n: u64, delta: usize, p: u64) -> Result<u64, BoundError> {
    let params = residue_params(n, delta)?;
    let limit = delta as i64 - 3;
    if !(2..=limit.max(0) as u64).contains(&p) || p as i64 > limit {
        return Err(BoundError::POutOfRange { p, limit });
    }
    if params.p != p {
        return Err(BoundError::ResidueMismatch {
            n,
            expected: p,
            actual: params.p,
            modulus: delta as u64 - 1,
        });
    }
    let c = lead_coefficient(delta)?;
    let tail = arith::add(
        arith::add(arith::cube(p)?, arith::mul(9, arith::square(p)?)?)?,
        arith::add(arith::mul(28, p)?, 26)?,
    )?;
    Ok(arith::add(arith::mul(c, n - p)?, tail)?)
}

/// The applicable theorem and its value for already-validated parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundResult {
    pub theorem: TheoremTag,
    pub value: Option<u64>,
    pub params: ResidueParams,
}

pub fn classify_bound(params: &ResidueParams) -> Result<BoundResult, Overflow> {
    let limit = params.delta as i64 - 3;
    let theorem = match params.p {
        0 => TheoremTag::P0,
        1 => TheoremTag::P1,
        p if (p as i64) < limit => TheoremTag::GeneralP,
        p if (p as i64) == limit => TheoremTag::BoundaryPDeltaMinus3,
        _ => TheoremTag::NoTheorem,
    };
    let c = lead_coefficient(params.delta)?;
    let value = match theorem {
        TheoremTag::P0 => Some(arith::add(arith::mul(c, params.n)?, 26)?),
        TheoremTag::P1 => Some(
            arith::mul(c, params.n)?
                .checked_sub(c - 8)
                .ok_or(Overflow)?,
        ),
        TheoremTag::GeneralP | TheoremTag::BoundaryPDeltaMinus3 => {
            let p = params.p;
            let tail = arith::add(
                arith::add(arith::cube(p)?, arith::mul(9, arith::square(p)?)?)?,
                arith::add(arith::mul(28, p)?, 26)?,
            )?;
            Some(arith::add(arith::mul(c, params.n - p)?, tail)?)
        }
        TheoremTag::NoTheorem => None,
    };
    Ok(BoundResult {
        theorem,
        value,
        params: *params,
    })
}

// ---------------------------------------------------------------------------
// audit
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AuditStatus {
    #[serde(rename = "HOLDS_TIGHT")]
    HoldsTight,
    #[serde(rename = "HOLDS_SLACK")]
    HoldsSlack,
    #[serde(rename = "VIOLATED")]
    Violated,
    #[serde(rename = "NO_THEOREM")]
    NoTheorem,
    #[serde(rename = "UNVERIFIED")]
    Unverified,
}

impl AuditStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            AuditStatus::HoldsTight => "HOLDS_TIGHT",
            AuditStatus::HoldsSlack => "HOLDS_SLACK",
            AuditStatus::Violated => "VIOLATED",
            AuditStatus::NoTheorem => "NO_THEOREM",
            AuditStatus::Unverified => "UNVERIFIED",
        }
    }
}

impl fmt::Display for AuditStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RuntimeMs {
    pub closed: u64,
    pub histogram: u64,
    pub enumeration: u64,
}

/// One `(n, delta)` audit row. Field names and order define the JSON schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub n: u64,
    pub delta: usize,
    pub p: u64,
    pub k: u64,
    pub theorem: TheoremTag,
    pub closed_form: Option<u64>,
    pub histogram_max: u64,
    pub empirical_max: Option<u64>,
    pub status: AuditStatus,
    pub gap: Option<i64>,
    pub witness_graph6: Option<String>,
    pub runtime_ms: RuntimeMs,
}

#[derive(Debug, Clone)]
pub struct AuditOptions {
    /// Orders above this skip the enumeration tier (`UNVERIFIED`).
    pub enum_cap: usize,
    pub jobs: usize,
    /// Audit against maximum degree `<= delta` instead of exactly `delta`.
    pub delta_at_most: bool,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            enum_cap: DEFAULT_ENUM_CAP,
            jobs: 1,
            delta_at_most: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error(transparent)]
    Params(#[from] PartitionError),
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error(transparent)]
    Overflow(#[from] Overflow),
}

/// Compare the applicable closed form, the histogram relaxation maximum and
/// (within budget) the true empirical maximum for `(n, delta)`.
pub fn audit(n: u64, delta: usize, opts: &AuditOptions) -> Result<AuditRecord, AuditError> {
    let params = residue_params(n, delta)?;

    let t = Instant::now();
    let bound = classify_bound(&params)?;
    let closed_ms = t.elapsed().as_millis() as u64;

    let t = Instant::now();
    let (_, histogram_max) = exact_histogram_max(&params)?;
    let histogram_ms = t.elapsed().as_millis() as u64;

    let cap = opts.enum_cap.min(MAX_ENUM_ORDER);
    let mut enumeration_ms = 0;
    let (empirical_max, witness_graph6) = if n as usize <= cap {
        let mut spec = EnumSpec::new(n as usize);
        spec.cap = cap;
        spec.jobs = opts.jobs;
        if opts.delta_at_most {
            spec.delta_at_most = Some(delta);
        } else {
            spec.delta_exact = Some(delta);
        }
        let t = Instant::now();
        let summary = enumerate_bicyclic(&spec)?;
        enumeration_ms = t.elapsed().as_millis() as u64;
        let witness = summary.argmax_graph6.iter().next().cloned();
        (summary.max_f, witness)
    } else {
        (None, None)
    };

    let status = match (bound.value, empirical_max) {
        (Some(cf), Some(em)) if em > cf => AuditStatus::Violated,
        (Some(cf), Some(em)) if em == cf => AuditStatus::HoldsTight,
        (Some(_), Some(_)) => AuditStatus::HoldsSlack,
        (Some(_), None) => AuditStatus::Unverified,
        (None, _) => AuditStatus::NoTheorem,
    };
    let gap = match (bound.value, empirical_max) {
        (Some(cf), Some(em)) => Some(i64::try_from(cf as i128 - em as i128).map_err(|_| Overflow)?),
        _ => None,
    };

    Ok(AuditRecord {
        n,
        delta,
        p: params.p,
        k: params.k,
        theorem: bound.theorem,
        closed_form: bound.value,
        histogram_max,
        empirical_max,
        status,
        gap,
        witness_graph6,
        runtime_ms: RuntimeMs {
            closed: closed_ms,
            histogram: histogram_ms,
            enumeration: enumeration_ms,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::parse_graph6;
    use crate::graph::Graph;

    #[test]
    fn bound_p0_values() {
        assert_eq!(bound_p0(9, 4).unwrap(), 224);
        assert_eq!(bound_p0(4, 3).unwrap(), 82);
        assert_eq!(bound_p0(12, 4).unwrap(), 290);
    }

    #[test]
    fn bound_p1_values() {
        assert_eq!(bound_p1(7, 4).unwrap(), 140);
        assert_eq!(bound_p1(9, 5).unwrap(), 264);
        assert_eq!(bound_p1(10, 4).unwrap(), 206);
    }

    #[test]
    fn bound_general_values() {
        assert_eq!(bound_general_p(14, 7, 2).unwrap(), 822);
        assert_eq!(bound_general_p(20, 7, 2).unwrap(), 1170);
        // (17, 8): p = 3, coefficient 74, so 74 * 14 + (27 + 81 + 84 + 26)
        assert_eq!(bound_general_p(17, 8, 3).unwrap(), 1254);
    }

    #[test]
    fn bound_domain_errors() {
        assert!(matches!(
            bound_p0(10, 4).unwrap_err(),
            BoundError::ResidueMismatch { actual: 1, .. }
        ));
        assert!(matches!(
            bound_p1(9, 4).unwrap_err(),
            BoundError::ResidueMismatch { actual: 0, .. }
        ));
        assert!(matches!(
            bound_general_p(14, 7, 3).unwrap_err(),
            BoundError::ResidueMismatch { .. }
        ));
        assert!(matches!(
            bound_general_p(10, 4, 1).unwrap_err(),
            BoundError::POutOfRange { p: 1, .. }
        ));
        // p = delta - 2 is covered by nothing
        assert!(matches!(
            bound_general_p(5, 4, 2).unwrap_err(),
            BoundError::POutOfRange { p: 2, limit: 1 }
        ));
    }

    #[test]
    fn classification_by_residue() {
        let tag = |n, d| {
            classify_bound(&residue_params(n, d).unwrap())
                .unwrap()
                .theorem
        };
        assert_eq!(tag(9, 4), TheoremTag::P0);
        assert_eq!(tag(7, 4), TheoremTag::P1);
        assert_eq!(tag(5, 4), TheoremTag::NoTheorem); // p = delta - 2
        assert_eq!(tag(14, 7), TheoremTag::GeneralP); // p = 2 < 4
        assert_eq!(tag(10, 5), TheoremTag::BoundaryPDeltaMinus3); // p = 2 = delta - 3

        let b = classify_bound(&residue_params(10, 5).unwrap()).unwrap();
        assert_eq!(b.value, Some(382)); // 32 * 8 + 126

        let uncovered = classify_bound(&residue_params(5, 4).unwrap()).unwrap();
        assert_eq!(uncovered.value, None);
    }

    #[test]
    fn bounds_grow_with_n() {
        for delta in 3..=9usize {
            let q = delta as u64 - 1;
            for p in 0..q {
                let mut prev: Option<u64> = None;
                for k in 2..8u64 {
                    let n = q * k + p;
                    if n < delta as u64 + 1 {
                        continue;
                    }
                    let b = classify_bound(&residue_params(n, delta).unwrap()).unwrap();
                    if let Some(v) = b.value {
                        if let Some(prev) = prev {
                            assert!(v > prev, "bound not increasing at n={n} delta={delta}");
                        }
                        prev = Some(v);
                    }
                }
            }
        }
    }

    #[test]
    fn audit_detects_violation_at_7_4() {
        let rec = audit(7, 4, &AuditOptions::default()).unwrap();
        assert_eq!(rec.theorem, TheoremTag::P1);
        assert_eq!(rec.closed_form, Some(140));
        assert_eq!(rec.histogram_max, 196);
        assert_eq!(rec.empirical_max, Some(166));
        assert_eq!(rec.status, AuditStatus::Violated);
        assert_eq!(rec.gap, Some(-26));

        // the witness must re-check from its graph6 string alone
        let witness = parse_graph6(rec.witness_graph6.as_ref().unwrap()).unwrap();
        assert!(witness.is_bicyclic());
        assert_eq!(witness.max_degree(), 4);
        assert_eq!(witness.forgotten_index().unwrap(), 166);
    }

    #[test]
    fn audit_reports_no_theorem_at_5_4() {
        let rec = audit(5, 4, &AuditOptions::default()).unwrap();
        assert_eq!(rec.theorem, TheoremTag::NoTheorem);
        assert_eq!(rec.closed_form, None);
        assert_eq!(rec.status, AuditStatus::NoTheorem);
        assert_eq!(rec.empirical_max, Some(108));
    }

    #[test]
    fn audit_degrades_to_unverified_over_budget() {
        let opts = AuditOptions {
            enum_cap: 8,
            ..Default::default()
        };
        let rec = audit(9, 4, &opts).unwrap();
        assert_eq!(rec.status, AuditStatus::Unverified);
        assert_eq!(rec.empirical_max, None);
        assert_eq!(rec.closed_form, Some(224));
        assert_eq!(rec.histogram_max, 224);
    }

    #[test]
    fn audit_json_schema() {
        let rec = audit(7, 4, &AuditOptions::default()).unwrap();

        // field names and order come from the struct serialization itself
        let text = serde_json::to_string(&rec).unwrap();
        let expected_order = [
            "\"n\"",
            "\"delta\"",
            "\"p\"",
            "\"k\"",
            "\"theorem\"",
            "\"closed_form\"",
            "\"histogram_max\"",
            "\"empirical_max\"",
            "\"status\"",
            "\"gap\"",
            "\"witness_graph6\"",
            "\"runtime_ms\"",
        ];
        let mut last = 0;
        for key in expected_order {
            let pos = text.find(key).unwrap_or_else(|| panic!("missing {key}"));
            assert!(pos >= last, "{key} out of schema order");
            last = pos;
        }

        let json = serde_json::to_value(&rec).unwrap();
        assert_eq!(json.as_object().unwrap().len(), 12);
        assert_eq!(json["theorem"], "T_p1");
        assert_eq!(json["status"], "VIOLATED");
        assert!(json["runtime_ms"]["enumeration"].is_u64());

        let back: AuditRecord = serde_json::from_value(json).unwrap();
        assert_eq!(back, rec);
    }

    #[test]
    fn empirical_never_beats_histogram_relaxation() {
        for n in 4..=7u64 {
            for delta in 3..=(n as usize - 1) {
                let rec = audit(n, delta, &AuditOptions::default()).unwrap();
                let em = rec.empirical_max.expect("within budget");
                assert!(
                    em <= rec.histogram_max,
                    "relaxation unsound at n={n} delta={delta}"
                );
                if let Some(w) = &rec.witness_graph6 {
                    let g: Graph = parse_graph6(w).unwrap();
                    assert_eq!(g.forgotten_index().unwrap(), em);
                }
            }
        }
    }
}
