use serde::{Deserialize, Serialize};

use super::predict::{predicted_exception, Prediction, ThresholdTable};
use super::{f_poly, valid_bs, DiffSpec};

/// Observed verdicts for one `f(k, m, b)` next to what the conjecture
/// predicts for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    #[serde(flatten)]
    pub spec: DiffSpec,
    pub nonnegative: bool,
    pub unimodal: bool,
    pub symmetric: bool,
    pub first_negative_degree: Option<usize>,
    pub first_unimodality_violation: Option<usize>,
    #[serde(flatten)]
    pub prediction: Prediction,
    pub predicted_exception: bool,
    pub agrees_with_prediction: bool,
}

impl CheckReport {
    pub fn passes(&self) -> bool {
        self.nonnegative && self.unimodal
    }

    pub fn is_disagreement(&self) -> bool {
        !self.agrees_with_prediction
    }
}

pub fn check(spec: &DiffSpec, thresholds: &ThresholdTable) -> CheckReport {
    let f = f_poly(spec);
    let first_negative_degree = f.first_negative();
    let first_unimodality_violation = f.unimodality_violation();
    let nonnegative = first_negative_degree.is_none();
    let unimodal = first_unimodality_violation.is_none();
    let prediction = predicted_exception(spec, thresholds);
    CheckReport {
        spec: *spec,
        nonnegative,
        unimodal,
        symmetric: f.is_symmetric_about(spec.center_twice()),
        first_negative_degree,
        first_unimodality_violation,
        prediction,
        predicted_exception: prediction.is_exception(),
        agrees_with_prediction: prediction.agrees_with(nonnegative && unimodal),
    }
}

fn scan_specs(k: usize, m_lo: usize, m_hi: usize) -> Vec<DiffSpec> {
    (m_lo.max(k)..=m_hi)
        .flat_map(|m| {
            valid_bs(k, m)
                .into_iter()
                .filter_map(move |b| DiffSpec::new(k as i64, m as i64, b as i64).ok())
        })
        .collect()
}

/// Checks every admissible `(m, b)` with `m_lo <= m <= m_hi` on the calling
/// thread. Reports come back ordered by `m`, then `b`.
pub fn scan_sequential(
    k: usize,
    m_lo: usize,
    m_hi: usize,
    thresholds: &ThresholdTable,
) -> Vec<CheckReport> {
    scan_specs(k, m_lo, m_hi)
        .iter()
        .map(|s| check(s, thresholds))
        .collect()
}

/// Same output as [`scan_sequential`], computed on the current rayon pool.
#[cfg(feature = "parallel")]
pub fn scan_parallel(
    k: usize,
    m_lo: usize,
    m_hi: usize,
    thresholds: &ThresholdTable,
) -> Vec<CheckReport> {
    use rayon::prelude::*;

    let mut reports: Vec<CheckReport> = scan_specs(k, m_lo, m_hi)
        .into_par_iter()
        .map(|s| check(&s, thresholds))
        .collect();
    reports.sort_by_key(|r| (r.spec.m(), r.spec.b()));
    reports
}

/// [`scan_parallel`] on a dedicated pool of `workers` threads.
#[cfg(feature = "parallel")]
pub fn scan_with_workers(
    k: usize,
    m_lo: usize,
    m_hi: usize,
    thresholds: &ThresholdTable,
    workers: usize,
) -> Result<Vec<CheckReport>, rayon::ThreadPoolBuildError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()?;
    Ok(pool.install(|| scan_parallel(k, m_lo, m_hi, thresholds)))
}

/// Parallel when the `parallel` feature is on, sequential otherwise.
pub fn scan(k: usize, m_lo: usize, m_hi: usize, thresholds: &ThresholdTable) -> Vec<CheckReport> {
    #[cfg(feature = "parallel")]
    {
        scan_parallel(k, m_lo, m_hi, thresholds)
    }
    #[cfg(not(feature = "parallel"))]
    {
        scan_sequential(k, m_lo, m_hi, thresholds)
    }
}
