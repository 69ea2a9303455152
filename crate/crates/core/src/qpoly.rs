//! Dense univariate polynomials in `q` with arbitrary-precision integer
//! coefficients.
//!
//! Besides ring arithmetic this module carries the structural predicates the
//! rest of the crate is built on: symmetry, unimodality and nonnegativity of
//! a coefficient sequence, the first difference `(1 - q) p` truncated after
//! the middle degree, and coefficientwise dominance over a degree range.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("undefined symmetry: the zero polynomial has no degree")]
    UndefinedSymmetry,
    #[error("negative center ({0}) for truncated first difference")]
    NegativeCenter(i64),
}

/// A polynomial `sum_i coeffs[i] q^i`.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// `q^e`.
    pub fn monomial(e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::one();
        IntPoly { coeffs }
    }

    /// `1 + q + ... + q^(len-1)`; zero when `len == 0`.
    pub fn ones(len: usize) -> Self {
        IntPoly {
            coeffs: vec![BigInt::one(); len],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().copied().map(BigInt::from).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum of the coefficients, i.e. the value at `q = 1`.
    pub fn coeff_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + e);
        coeffs.resize(e, BigInt::zero());
        coeffs.extend_from_slice(&self.coeffs);
        IntPoly { coeffs }
    }

    /// Returns twice the center of symmetry when `coeff(i) == coeff(d - i)`
    /// for all `i`, with `d` the degree, and `None` otherwise.
    pub fn symmetry(&self) -> Result<Option<usize>, PolyError> {
        let d = self.degree().ok_or(PolyError::UndefinedSymmetry)?;
        let symmetric = self
            .coeffs
            .iter()
            .zip(self.coeffs.iter().rev())
            .take(self.coeffs.len() / 2)
            .all(|(lo, hi)| lo == hi);
        Ok(symmetric.then_some(d))
    }

    pub fn is_symmetric(&self) -> Result<bool, PolyError> {
        self.symmetry().map(|c| c.is_some())
    }

    /// Symmetry about a prescribed center `center_twice / 2`, which also
    /// accounts for vanishing end coefficients: every coefficient above
    /// `center_twice` must be zero. The zero polynomial is symmetric about
    /// any center.
    pub fn is_symmetric_about(&self, center_twice: usize) -> bool {
        if self.coeffs.len() > center_twice + 1 {
            return false;
        }
        (0..=center_twice / 2).all(|i| self.coeff(i) == self.coeff(center_twice - i))
    }

    /// Index of the first strict rise that follows a strict fall, if any.
    pub fn unimodality_violation(&self) -> Option<usize> {
        let mut fallen = false;
        for (i, w) in self.coeffs.windows(2).enumerate() {
            if w[1] < w[0] {
                fallen = true;
            } else if w[1] > w[0] && fallen {
                return Some(i + 1);
            }
        }
        None
    }

    /// Constants and the zero polynomial count as unimodal.
    pub fn is_unimodal(&self) -> bool {
        self.unimodality_violation().is_none()
    }

    pub fn first_negative(&self) -> Option<usize> {
        self.coeffs.iter().position(Signed::is_negative)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    /// `(1 - q) p` with every term above degree `floor(center_twice / 2)`
    /// dropped.
    pub fn truncated_first_difference(&self, center_twice: i64) -> Result<IntPoly, PolyError> {
        if center_twice < 0 {
            return Err(PolyError::NegativeCenter(center_twice));
        }
        let top = (center_twice / 2) as usize;
        let len = (top + 1).min(self.coeffs.len() + 1);
        let coeffs = (0..len)
            .map(|i| match i {
                0 => self.coeff(0),
                _ => self.coeff(i) - self.coeff(i - 1),
            })
            .collect();
        Ok(IntPoly::from_coeffs(coeffs))
    }

    /// First degree `i <= upto` with `self[i] < other[i]`, if any.
    pub fn dominance_failure(&self, other: &IntPoly, upto: usize) -> Option<usize> {
        let len = self.coeffs.len().max(other.coeffs.len()).min(upto + 1);
        (0..len).find(|&i| self.coeff(i) < other.coeff(i))
    }

    /// Coefficientwise `self >= other` in every degree `0..=upto`.
    pub fn dominates(&self, other: &IntPoly, upto: usize) -> bool {
        self.dominance_failure(other, upto).is_none()
    }
}

fn add_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::from_coeffs(add_slices(&self.coeffs, &rhs.coeffs))
    }
}

impl Add for IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        -&self
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    // Schoolbook convolution.
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

/// Human-readable rendering, lowest degree first: `1 + q + 2q^2 - q^5`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{i}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as a JSON array of decimal strings, lowest degree first.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CoeffsVisitor;

        impl<'de> Visitor<'de> for CoeffsVisitor {
            type Value = IntPoly;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an array of decimal integer strings")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<IntPoly, A::Error> {
                let mut coeffs = Vec::with_capacity(seq.size_hint().unwrap_or(0));
                while let Some(s) = seq.next_element::<String>()? {
                    let c = s
                        .parse::<BigInt>()
                        .map_err(|_| de::Error::custom(format!("bad coefficient {s:?}")))?;
                    coeffs.push(c);
                }
                Ok(IntPoly::from_coeffs(coeffs))
            }
        }

        deserializer.deserialize_seq(CoeffsVisitor)
    }
}
