//! Exact q-binomial coefficients, Zeilberger's KOH decomposition, and a
//! verification harness for the nonnegativity and unimodality of the
//! symmetric differences
//! `[m choose k]_q - q^(k(m-b)/2 + b - 2k + 2) [b choose k-2]_q`.
//!
//! All arithmetic is over arbitrary-precision integers. With the default
//! `parallel` feature, parameter scans run on rayon; without it they run
//! sequentially with identical output.

pub mod conjecture;
pub mod koh;
pub mod qbinom;
pub mod qpoly;

pub use conjecture::{
    check, f_poly, scan, valid_bs, CheckReport, DiffSpec, Prediction, ThresholdTable,
};
pub use koh::{koh_decompose, partitions, KohTerm, Partition};
pub use qbinom::{qbinomial, qbinomial_uncached};
pub use qpoly::IntPoly;
