//! Forgotten topological index (`F(G) = sum of d(v)^3`) of bicyclic graphs.
//!
//! The crate has three layers:
//!
//! * exact graph machinery: [`graph::Graph`], degree histograms and the
//!   counting identities they satisfy when `m = n + 1`
//!   ([`histogram`]), and text formats ([`formats`]);
//! * the optimization layer over histograms ([`partition`]): residue
//!   parameters, the claimed optimum tuples, and an exhaustive relaxation
//!   maximizer that ignores realizability;
//! * verification: exhaustive enumeration of the actual graph class with
//!   realizability tests ([`enumeration`]), and closed-form bounds with a
//!   three-tier audit ([`bounds`]).
//!
//! A note on conventions: "bicyclic" here means *connected* with
//! `m = n + 1`, and the degree-sum identity used throughout is
//! `sum(i * n_i) = 2n + 2` (the value forced by the handshake lemma for
//! `m = n + 1`).

mod arith;
pub mod bounds;
pub mod enumeration;
pub mod formats;
pub mod graph;
pub mod histogram;
pub mod partition;

pub use arith::Overflow;
pub use bounds::{audit, AuditOptions, AuditRecord, AuditStatus, BoundResult, TheoremTag};
pub use enumeration::{
    enumerate_bicyclic, enumerate_bicyclic_collect, enumerate_bicyclic_visit, EnumSpec, EnumSummary,
};
pub use graph::Graph;
pub use histogram::DegreeHistogram;
pub use partition::ResidueParams;
