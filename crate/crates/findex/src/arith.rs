//! Checked integer helpers shared by the index computations.

use thiserror::Error;

/// Arithmetic left the 64-bit range. Index values are exact integers; a
/// result that does not fit is reported, never wrapped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("value exceeds the 64-bit integer range")]
pub struct Overflow;

pub(crate) fn cube(x: u64) -> Result<u64, Overflow> {
    x.checked_mul(x)
        .and_then(|s| s.checked_mul(x))
        .ok_or(Overflow)
}

pub(crate) fn square(x: u64) -> Result<u64, Overflow> {
    x.checked_mul(x).ok_or(Overflow)
}

pub(crate) fn add(a: u64, b: u64) -> Result<u64, Overflow> {
    a.checked_add(b).ok_or(Overflow)
}

pub(crate) fn mul(a: u64, b: u64) -> Result<u64, Overflow> {
    a.checked_mul(b).ok_or(Overflow)
}
