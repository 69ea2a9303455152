//! The symmetric differences
//!
//! ```text
//! f(k, m, b) = [m choose k]_q - q^(k(m-b)/2 + b - 2k + 2) [b choose k-2]_q
//! ```
//!
//! and everything needed to test when they are nonnegative and unimodal:
//! parameter validation, the predicted exceptional sets, the verdict
//! harness and scan driver, the `b -> b - (2k-6)` reduction, and the
//! explicit `k = 5` case families with their closed-form coefficients.

mod check;
mod kfive;
mod predict;
mod reduction;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qbinom::qbinomial;
use crate::qpoly::IntPoly;

pub use check::{check, scan, scan_sequential, CheckReport};
#[cfg(feature = "parallel")]
pub use check::{scan_parallel, scan_with_workers};
pub use kfive::{
    ci_closed_form, ci_direct, di_closed_form, di_direct, middle_degree_delta,
    middle_degree_delta_via_koh, twelve_cases, ClosedFormError, TwelveCase,
};
pub use predict::{
    predicted_exception, ExceptionReason, Prediction, ThresholdError, ThresholdTable,
};
pub use reduction::{largest_bs, reduction_inequality_holds, reduction_sides, ReductionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("k = {0} is below 2")]
    KTooSmall(i64),
    #[error("m = {m} is below k = {k}")]
    MBelowK { k: i64, m: i64 },
    #[error("parity: k(m - b) = {k}·({m} - {b}) is odd")]
    Parity { k: i64, m: i64, b: i64 },
    #[error(
        "range: b = {b} outside k-2 <= b <= (km-4k+4)/(k-2) = [{lo}, {hi}] for k = {k}, m = {m}"
    )]
    Range {
        k: i64,
        m: i64,
        b: i64,
        lo: i64,
        hi: i64,
    },
}

/// A validated parameter triple `(k, m, b)` for `f(k, m, b)`.
///
/// For `k = 2` the difference does not depend on `b`, which is stored as 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawDiffSpec")]
pub struct DiffSpec {
    k: usize,
    m: usize,
    b: usize,
    shift_exponent: usize,
    center_twice: usize,
}

#[derive(Deserialize)]
struct RawDiffSpec {
    k: i64,
    m: i64,
    b: i64,
    shift_exponent: Option<i64>,
    center_twice: Option<i64>,
}

impl TryFrom<RawDiffSpec> for DiffSpec {
    type Error = String;

    fn try_from(raw: RawDiffSpec) -> Result<Self, String> {
        let spec = DiffSpec::new(raw.k, raw.m, raw.b).map_err(|e| e.to_string())?;
        if raw
            .shift_exponent
            .is_some_and(|s| s != spec.shift_exponent as i64)
            || raw
                .center_twice
                .is_some_and(|c| c != spec.center_twice as i64)
        {
            return Err(format!("inconsistent derived fields for {spec}"));
        }
        Ok(spec)
    }
}

/// Largest admissible `b` for `k >= 3`: `floor((km - 4k + 4) / (k - 2))`.
fn b_upper(k: i64, m: i64) -> i64 {
    (k * m - 4 * k + 4).div_euclid(k - 2)
}

impl DiffSpec {
    pub fn new(k: i64, m: i64, b: i64) -> Result<Self, SpecError> {
        if k < 2 {
            return Err(SpecError::KTooSmall(k));
        }
        if m < k {
            return Err(SpecError::MBelowK { k, m });
        }
        let b = if k == 2 { 0 } else { b };
        if k > 2 {
            let (lo, hi) = (k - 2, b_upper(k, m));
            if b < lo || b > hi {
                return Err(SpecError::Range { k, m, b, lo, hi });
            }
        }
        if (k * (m - b)) % 2 != 0 {
            return Err(SpecError::Parity { k, m, b });
        }
        let shift = k * (m - b) / 2 + b - 2 * k + 2;
        debug_assert!(shift >= 0);
        Ok(DiffSpec {
            k: k as usize,
            m: m as usize,
            b: b as usize,
            shift_exponent: shift as usize,
            center_twice: (k * (m - k)) as usize,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// `k(m-b)/2 + b - 2k + 2`.
    pub fn shift_exponent(&self) -> usize {
        self.shift_exponent
    }

    /// `k(m-k)`, twice the common center of symmetry.
    pub fn center_twice(&self) -> usize {
        self.center_twice
    }

    /// The middle degree `floor(k(m-k)/2)`.
    pub fn middle_degree(&self) -> usize {
        self.center_twice / 2
    }

    pub fn minuend(&self) -> IntPoly {
        qbinomial(self.m as i64, self.k as i64)
    }

    /// `q^shift [b choose k-2]_q`.
    pub fn subtrahend(&self) -> IntPoly {
        qbinomial(self.b as i64, self.k as i64 - 2).shift(self.shift_exponent)
    }
}

impl std::fmt::Display for DiffSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "f({},{},{})", self.k, self.m, self.b)
    }
}

pub fn f_poly(spec: &DiffSpec) -> IntPoly {
    &spec.minuend() - &spec.subtrahend()
}

/// Every admissible `b` for `(k, m)`, ascending. For `k = 2` this is `[0]`.
pub fn valid_bs(k: usize, m: usize) -> Vec<usize> {
    if k < 2 || m < k {
        return Vec::new();
    }
    if k == 2 {
        return vec![0];
    }
    let (ki, mi) = (k as i64, m as i64);
    let hi = b_upper(ki, mi);
    (ki - 2..=hi)
        .filter(|b| (ki * (mi - b)) % 2 == 0)
        .map(|b| b as usize)
        .collect()
}

/// `(km - 4k + 2)/(k - 2)` when it is an integer: the `b` for which the
/// subtracted q-binomial is shifted by exactly one degree.
pub fn one_degree_shift_b(k: usize, m: usize) -> Option<usize> {
    if k < 3 {
        return None;
    }
    let num = (k * m + 2).checked_sub(4 * k)?;
    (num % (k - 2) == 0).then(|| num / (k - 2))
}

/// The part of the `(k, m)` parameter space covered by the original
/// Reiner–Stanton conjecture: `m` even, `b >= m - 4`, `b ≡ m (mod 4)`.
pub fn reiner_stanton_correspondence(k: usize, m: usize) -> Vec<DiffSpec> {
    if !m.is_multiple_of(2) {
        return Vec::new();
    }
    valid_bs(k, m)
        .into_iter()
        .filter(|&b| b + 4 >= m && (b as i64 - m as i64).rem_euclid(4) == 0)
        .filter_map(|b| DiffSpec::new(k as i64, m as i64, b as i64).ok())
        .collect()
}
