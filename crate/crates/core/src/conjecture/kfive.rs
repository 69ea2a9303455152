//! The `k = 5` families. Writing `m = 6n + j`, the two largest admissible
//! `b` for each residue `j` give twelve differences
//! `[6n+j choose 5]_q - q^s [t choose 3]_q`; the closed forms below describe
//! the truncated first differences used to compare the `(3,2)` KOH summand
//! of `[6n choose 5]_q` against `q^4 [10n-8 choose 3]_q`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::DiffSpec;
use crate::koh::{koh_term, Partition};
use crate::qbinom::qbinomial;
use crate::qpoly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("n = {0} is below 4")]
    NTooSmall(usize),
    #[error("t = {0} is below 2")]
    TTooSmall(usize),
    #[error("degree {i} outside [{lo}, {hi}] for n = {n}")]
    DegreeOutOfRange {
        n: usize,
        i: usize,
        lo: usize,
        hi: usize,
    },
}

/// One of the twelve differences, labelled `n1`..`n12`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwelveCase {
    pub label: String,
    pub spec: DiffSpec,
    /// Top of the subtracted `[t choose 3]_q`.
    pub bottom_top: usize,
}

/// `(shift, t)` offsets per residue `j`: `t = 10n + offset`.
const FAMILIES: [[(usize, i64); 2]; 6] = [
    [(4, -8), (7, -10)],
    [(2, -5), (5, -7)],
    [(0, -2), (3, -4)],
    [(4, -3), (7, -5)],
    [(2, 0), (5, -2)],
    [(0, 3), (3, 1)],
];

pub fn twelve_cases(n: usize) -> Result<Vec<TwelveCase>, ClosedFormError> {
    if n < 4 {
        return Err(ClosedFormError::NTooSmall(n));
    }
    let mut out = Vec::with_capacity(12);
    for (j, family) in FAMILIES.iter().enumerate() {
        for (idx, &(shift, offset)) in family.iter().enumerate() {
            let m = 6 * n + j;
            let t = 10 * n as i64 + offset;
            let spec =
                DiffSpec::new(5, m as i64, t).expect("twelve-case parameters are admissible");
            assert_eq!(
                spec.shift_exponent(),
                shift,
                "shift mismatch for m = {m}, b = {t}"
            );
            out.push(TwelveCase {
                label: format!("n{}", 2 * j + idx + 1),
                spec,
                bottom_top: t as usize,
            });
        }
    }
    Ok(out)
}

fn check_degree(n: usize, i: usize, lo: usize) -> Result<(), ClosedFormError> {
    if n < 4 {
        return Err(ClosedFormError::NTooSmall(n));
    }
    let hi = 15 * n - 13;
    if i < lo || i > hi {
        return Err(ClosedFormError::DegreeOutOfRange { n, i, lo, hi });
    }
    Ok(())
}

/// Coefficient of `q^i` in `(1-q) q^8 [6n-8, 1]_q [12n-14, 2]_q`,
/// valid for `8 <= i <= 15n - 13`.
pub fn ci_closed_form(n: usize, i: usize) -> Result<i64, ClosedFormError> {
    check_degree(n, i, 8)?;
    let (n, i) = (n as i64, i as i64);
    Ok(if i < 6 * n {
        i / 2 - 3
    } else if i <= 12 * n - 8 {
        3 * n - 4
    } else {
        15 * n - 12 - i
    })
}

/// Coefficient of `q^i` in `(1-q) q^4 [10n-8, 3]_q`, valid for
/// `0 <= i <= 15n - 13`.
pub fn di_closed_form(n: usize, i: usize) -> Result<i64, ClosedFormError> {
    check_degree(n, i, 0)?;
    let (n, i) = (n as i64, i as i64);
    Ok(if i <= 10 * n - 7 {
        (i + 2) / 6 - i64::from(i % 6 == 5)
    } else {
        // ceil((15n - 13 - i) / 3) with a nonnegative numerator
        (15 * n - 13 - i + 2) / 3
    })
}

/// Truncated first difference of the `(3,2)` summand
/// `q^8 [6n-8, 1]_q [12n-14, 2]_q` of `[6n choose 5]_q`.
pub fn ci_direct(n: usize) -> IntPoly {
    let n = n as i64;
    let term = (&qbinomial(6 * n - 8, 1) * &qbinomial(12 * n - 14, 2)).shift(8);
    term.truncated_first_difference(30 * n - 26)
        .expect("nonnegative center")
}

/// Truncated first difference of `q^4 [10n-8, 3]_q`.
pub fn di_direct(n: usize) -> IntPoly {
    let n = n as i64;
    qbinomial(10 * n - 8, 3)
        .shift(4)
        .truncated_first_difference(30 * n - 26)
        .expect("nonnegative center")
}

/// `α_{6t-5} - α_{6t-6}` for `[12t-1 choose 3]_q = Σ α_i q^i`: the first
/// difference, in the middle degree `30t+5`, of the `(4,1)` summand of
/// `[12t+7 choose 5]_q`.
pub fn middle_degree_delta(t: usize) -> Result<BigInt, ClosedFormError> {
    if t < 2 {
        return Err(ClosedFormError::TTooSmall(t));
    }
    let alpha = qbinomial(12 * t as i64 - 1, 3);
    Ok(alpha.coeff(6 * t - 5) - alpha.coeff(6 * t - 6))
}

/// The same quantity read off the `(4,1)` KOH summand directly.
pub fn middle_degree_delta_via_koh(t: usize) -> Result<BigInt, ClosedFormError> {
    if t < 2 {
        return Err(ClosedFormError::TTooSmall(t));
    }
    let lam = Partition::new(vec![4, 1]).expect("valid partition");
    let term = koh_term(12 * t + 2, &lam);
    let middle = 30 * t + 5;
    let diff = term
        .poly
        .truncated_first_difference(2 * middle as i64)
        .expect("nonnegative center");
    Ok(diff.coeff(middle))
}
