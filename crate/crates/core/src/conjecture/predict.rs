//! Which `f(k, m, b)` are expected to fail nonnegativity or unimodality.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{one_degree_shift_b, DiffSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("threshold m = {m} for k = {k} must be at least k")]
pub struct ThresholdError {
    pub k: usize,
    pub m: usize,
}

/// Minimal `m`, per `k >= 5`, from which the general prediction is asserted.
/// Values of `k` missing from the table carry no prediction at all.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ThresholdTable(BTreeMap<usize, usize>);

impl Default for ThresholdTable {
    fn default() -> Self {
        ThresholdTable(BTreeMap::from([
            (5, 20),
            (6, 32),
            (7, 18),
            (8, 18),
            (9, 20),
            (10, 24),
        ]))
    }
}

impl ThresholdTable {
    pub fn empty() -> Self {
        ThresholdTable(BTreeMap::new())
    }

    pub fn get(&self, k: usize) -> Option<usize> {
        self.0.get(&k).copied()
    }

    pub fn set(&mut self, k: usize, m: usize) -> Result<(), ThresholdError> {
        if m < k {
            return Err(ThresholdError { k, m });
        }
        self.0.insert(k, m);
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().map(|(&k, &m)| (k, m))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExceptionReason {
    /// k = 2, m odd.
    K2OddM,
    /// k = 3, b = 3m - 10: the subtracted term starts in degree 1.
    K3BEquals3mMinus10,
    /// k = 3, m even, b = 2.
    K3EvenMB2,
    /// k = 3, m ≡ 1 (mod 4), b = 1.
    K3Mod1B1,
    /// k = 3, m ≡ 1 (mod 4), b = 5.
    K3Mod1B5,
    /// k = 3, m ≡ 3 (mod 4), b = 3.
    K3Mod3B3,
    /// k = 4, b odd.
    K4OddB,
    /// k = 4, m = 5.
    K4M5,
    /// k >= 5, b = (km - 4k + 2)/(k - 2): shifted by exactly one degree.
    OneDegreeShift,
}

impl fmt::Display for ExceptionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExceptionReason::K2OddM => "k=2, m odd",
            ExceptionReason::K3BEquals3mMinus10 => "k=3, b=3m-10",
            ExceptionReason::K3EvenMB2 => "k=3, b=2, m even",
            ExceptionReason::K3Mod1B1 => "k=3, b=1, m=1 mod 4",
            ExceptionReason::K3Mod1B5 => "k=3, b=5, m=1 mod 4",
            ExceptionReason::K3Mod3B3 => "k=3, b=3, m=3 mod 4",
            ExceptionReason::K4OddB => "k=4, b odd",
            ExceptionReason::K4M5 => "k=4, m=5",
            ExceptionReason::OneDegreeShift => "one-degree shift b=(km-4k+2)/(k-2)",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "prediction", content = "reason", rename_all = "snake_case")]
pub enum Prediction {
    /// Expected nonnegative and unimodal.
    Pass,
    Exception(ExceptionReason),
    /// `k >= 5` with `m` below the threshold (or no threshold known).
    NoPrediction,
}

impl Prediction {
    pub fn is_exception(&self) -> bool {
        matches!(self, Prediction::Exception(_))
    }

    /// Whether an observed verdict is consistent with this prediction.
    pub fn agrees_with(&self, passes: bool) -> bool {
        match self {
            Prediction::Pass => passes,
            Prediction::Exception(_) => !passes,
            Prediction::NoPrediction => true,
        }
    }
}

pub fn predicted_exception(spec: &DiffSpec, thresholds: &ThresholdTable) -> Prediction {
    let (k, m, b) = (spec.k(), spec.m(), spec.b());
    let reason = match k {
        2 => (m % 2 == 1).then_some(ExceptionReason::K2OddM),
        3 => {
            if b + 10 == 3 * m {
                Some(ExceptionReason::K3BEquals3mMinus10)
            } else {
                match (m % 4, b) {
                    (0 | 2, 2) => Some(ExceptionReason::K3EvenMB2),
                    (1, 1) => Some(ExceptionReason::K3Mod1B1),
                    (1, 5) => Some(ExceptionReason::K3Mod1B5),
                    (3, 3) => Some(ExceptionReason::K3Mod3B3),
                    _ => None,
                }
            }
        }
        4 => {
            if b % 2 == 1 {
                Some(ExceptionReason::K4OddB)
            } else if m == 5 {
                Some(ExceptionReason::K4M5)
            } else {
                None
            }
        }
        _ => {
            if thresholds.get(k).is_none_or(|t| m < t) {
                return Prediction::NoPrediction;
            }
            (one_degree_shift_b(k, m) == Some(b)).then_some(ExceptionReason::OneDegreeShift)
        }
    };
    reason.map_or(Prediction::Pass, Prediction::Exception)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn predict(k: i64, m: i64, b: i64) -> Prediction {
        predicted_exception(&DiffSpec::new(k, m, b).unwrap(), &ThresholdTable::default())
    }

    #[test]
    fn examples() {
        assert_eq!(
            predict(3, 6, 2),
            Prediction::Exception(ExceptionReason::K3EvenMB2)
        );
        assert_eq!(
            predict(5, 21, 29),
            Prediction::Exception(ExceptionReason::OneDegreeShift)
        );
        assert_eq!(predict(4, 8, 4), Prediction::Pass);
        assert_eq!(
            predict(2, 5, 0),
            Prediction::Exception(ExceptionReason::K2OddM)
        );
        assert_eq!(predict(2, 6, 0), Prediction::Pass);
    }

    #[test]
    fn k3_reasons() {
        assert_eq!(
            predict(3, 9, 1),
            Prediction::Exception(ExceptionReason::K3Mod1B1)
        );
        assert_eq!(
            predict(3, 9, 5),
            Prediction::Exception(ExceptionReason::K3Mod1B5)
        );
        assert_eq!(
            predict(3, 11, 3),
            Prediction::Exception(ExceptionReason::K3Mod3B3)
        );
        assert_eq!(
            predict(3, 11, 23),
            Prediction::Exception(ExceptionReason::K3BEquals3mMinus10)
        );
        assert_eq!(predict(3, 11, 5), Prediction::Pass);
    }

    #[test]
    fn k4_reasons() {
        assert_eq!(
            predict(4, 8, 5),
            Prediction::Exception(ExceptionReason::K4OddB)
        );
        assert_eq!(
            predict(4, 5, 4),
            Prediction::Exception(ExceptionReason::K4M5)
        );
    }

    #[test]
    fn below_threshold_has_no_prediction() {
        assert_eq!(predict(5, 19, 3), Prediction::NoPrediction);
        assert_eq!(predict(11, 400, 20), Prediction::NoPrediction);
        let mut t = ThresholdTable::default();
        t.set(5, 15).unwrap();
        let s = DiffSpec::new(5, 15, 19).unwrap();
        assert_eq!(
            predicted_exception(&s, &t),
            Prediction::Exception(ExceptionReason::OneDegreeShift)
        );
        assert!(t.set(7, 6).is_err());
    }

    #[test]
    fn agreement_table() {
        assert!(Prediction::Pass.agrees_with(true));
        assert!(!Prediction::Pass.agrees_with(false));
        assert!(Prediction::Exception(ExceptionReason::K4M5).agrees_with(false));
        assert!(Prediction::NoPrediction.agrees_with(false));
    }

    #[test]
    fn prediction_json_shape() {
        let json =
            serde_json::to_string(&Prediction::Exception(ExceptionReason::K3EvenMB2)).unwrap();
        assert_eq!(
            json,
            r#"{"prediction":"exception","reason":"k3_even_m_b2"}"#
        );
        assert_eq!(
            serde_json::to_string(&Prediction::Pass).unwrap(),
            r#"{"prediction":"pass"}"#
        );
    }
}
