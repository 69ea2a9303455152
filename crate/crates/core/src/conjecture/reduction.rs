//! Passing from `b` to `b - (2k-6)`.
//!
//! The `(k-2)` summand of the KOH decomposition of `[b choose k-2]_q` is
//! `q^(2 C(k-2, 2)) [b-2k+6 choose k-2]_q`, and every other summand has a
//! nonnegative truncated first difference, so
//!
//! ```text
//! (1-q) [b choose k-2]_q  >=  (1-q) q^(2 C(k-2,2)) [b-2k+6 choose k-2]_q
//! ```
//!
//! up to the middle degree. This is what lets a verdict for `f(k, m, b)`
//! carry over to `f(k, m, b - (2k-6))`.

use thiserror::Error;

use super::{one_degree_shift_b, valid_bs};
use crate::qbinom::qbinomial;
use crate::qpoly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("reduction needs k >= 4, got {0}")]
    KTooSmall(usize),
    #[error("b = {b} too small for k = {k}: need b - 2k + 6 >= k - 2")]
    BTooSmall { k: usize, b: usize },
}

/// Both truncated first differences and the middle degree they are cut at.
pub fn reduction_sides(k: usize, b: usize) -> Result<(IntPoly, IntPoly, usize), ReductionError> {
    if k < 4 {
        return Err(ReductionError::KTooSmall(k));
    }
    if b + 6 < 3 * k - 2 {
        return Err(ReductionError::BTooSmall { k, b });
    }
    let j = k - 2;
    let center_twice = j * (b - j);
    let big = qbinomial(b as i64, j as i64);
    let small = qbinomial((b + 6 - 2 * k) as i64, j as i64).shift(j * (j - 1));
    let lhs = big
        .truncated_first_difference(center_twice as i64)
        .expect("nonnegative center");
    let rhs = small
        .truncated_first_difference(center_twice as i64)
        .expect("nonnegative center");
    Ok((lhs, rhs, center_twice / 2))
}

pub fn reduction_inequality_holds(k: usize, b: usize) -> Result<bool, ReductionError> {
    let (lhs, rhs, upto) = reduction_sides(k, b)?;
    Ok(lhs.dominates(&rhs, upto))
}

/// The values of `b` from which every admissible `b` is reached by
/// repeatedly subtracting `2k - 6`, descending: the largest admissible `b` in
/// each residue class modulo `2k - 6`, with the one-degree-shift value left
/// out. For odd `k` the parity constraint leaves `k - 3` classes.
pub fn largest_bs(k: usize, m: usize) -> Result<Vec<usize>, ReductionError> {
    if k < 4 {
        return Err(ReductionError::KTooSmall(k));
    }
    let step = 2 * k - 6;
    let skip = one_degree_shift_b(k, m);
    let mut seen = vec![false; step];
    let mut out = Vec::new();
    for b in valid_bs(k, m).into_iter().rev() {
        if Some(b) == skip || seen[b % step] {
            continue;
        }
        seen[b % step] = true;
        out.push(b);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        assert_eq!(reduction_inequality_holds(4, 8), Ok(true));
        assert_eq!(reduction_inequality_holds(5, 12), Ok(true));
        assert_eq!(reduction_inequality_holds(8, 20), Ok(true));
        assert_eq!(
            reduction_inequality_holds(3, 8),
            Err(ReductionError::KTooSmall(3))
        );
        assert_eq!(
            reduction_inequality_holds(5, 6),
            Err(ReductionError::BTooSmall { k: 5, b: 6 })
        );
    }

    #[test]
    fn untruncated_difference_would_fail() {
        // Past the middle degree the other KOH summands fall off, so the
        // comparison only makes sense up to the middle.
        let (k, b) = (5, 12);
        let j = k - 2;
        let full = (j * (b - j)) as i64 * 2;
        let lhs = qbinomial(b as i64, j as i64)
            .truncated_first_difference(full)
            .unwrap();
        let rhs = qbinomial((b + 6 - 2 * k) as i64, j as i64)
            .shift(j * (j - 1))
            .truncated_first_difference(full)
            .unwrap();
        assert!(!lhs.dominates(&rhs, (full / 2) as usize));
    }

    #[test]
    fn largest_bs_k5() {
        for n in 4..=8usize {
            assert_eq!(largest_bs(5, 6 * n).unwrap(), vec![10 * n - 8, 10 * n - 10]);
            assert_eq!(
                largest_bs(5, 6 * n + 2).unwrap(),
                vec![10 * n - 2, 10 * n - 4]
            );
        }
    }

    #[test]
    fn largest_bs_k4_keeps_one_per_parity() {
        assert_eq!(largest_bs(4, 10).unwrap(), vec![14, 11]);
        assert_eq!(largest_bs(6, 40).unwrap().len(), 6);
    }
}
