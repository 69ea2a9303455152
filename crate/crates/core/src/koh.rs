//! Zeilberger's KOH decomposition of `[a+k choose k]_q` into a sum over the
//! partitions `λ ⊢ k` of nonnegative, unimodal, symmetric pieces
//!
//! ```text
//! F_λ(q) = q^(2 Σ C(λ_i, 2)) Π_j [ j(a+2) - Y_{j-1} - Y_{j+1} choose λ_j - λ_{j+1} ]_q
//! ```
//!
//! where `Y_i` are the partial sums of `λ`. Also hosts the iterated form of
//! the decomposition for `k = 3`, which is what the flat-degree analysis of
//! `[m choose 3]_q` rests on.

use serde::{Deserialize, Serialize};

use crate::qbinom::qbinomial;
use crate::qpoly::IntPoly;

/// A weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// `None` unless the parts are positive and weakly decreasing.
    pub fn new(parts: Vec<usize>) -> Option<Self> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        ok.then_some(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `λ_j`, 1-based, zero past the last part.
    pub fn part(&self, j: usize) -> usize {
        match j {
            0 => 0,
            _ => self.parts.get(j - 1).copied().unwrap_or(0),
        }
    }

    /// `Y_i = λ_1 + ... + λ_i`, with `Y_0 = 0` and `Y_i = |λ|` once `i`
    /// runs past the last part.
    pub fn partial_sum(&self, i: usize) -> usize {
        self.parts.iter().take(i).sum()
    }

    /// `2 Σ C(λ_i, 2)`.
    pub fn koh_exponent(&self) -> usize {
        self.parts.iter().map(|&p| p * p.saturating_sub(1)).sum()
    }
}

/// All partitions of `k` in reverse-lexicographic order, `(k)` first and
/// `(1, ..., 1)` last.
pub fn partitions(k: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_partitions(k, k, &mut current, &mut out);
    out
}

fn fill_partitions(rest: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        current.push(p);
        fill_partitions(rest - p, p, current, out);
        current.pop();
    }
}

/// `[top choose bottom]_q`; `top` may be negative, which gives zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub top: i64,
    pub bottom: usize,
}

/// `q^exponent` times a product of q-binomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductTerm {
    pub exponent: usize,
    pub factors: Vec<Factor>,
}

impl ProductTerm {
    pub fn new(exponent: usize, factors: &[(i64, usize)]) -> Self {
        ProductTerm {
            exponent,
            factors: factors
                .iter()
                .map(|&(top, bottom)| Factor { top, bottom })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> IntPoly {
        let product = self.factors.iter().fold(IntPoly::one(), |acc, f| {
            &acc * &qbinomial(f.top, f.bottom as i64)
        });
        product.shift(self.exponent)
    }
}

/// One summand `F_λ(q)` of a KOH decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KohTerm {
    pub partition: Partition,
    #[serde(flatten)]
    pub term: ProductTerm,
    pub poly: IntPoly,
}

impl KohTerm {
    pub fn exponent(&self) -> usize {
        self.term.exponent
    }
}

/// The factor list of `F_λ` for parameters `(a, k = |λ|)`. Factors with
/// `λ_j = λ_{j+1}` are identically one and are left out.
pub fn koh_factors(a: usize, lam: &Partition) -> ProductTerm {
    let step = a as i64 + 2;
    let factors = (1..=lam.len())
        .filter_map(|j| {
            let bottom = lam.part(j) - lam.part(j + 1);
            (bottom > 0).then(|| {
                let top =
                    j as i64 * step - lam.partial_sum(j - 1) as i64 - lam.partial_sum(j + 1) as i64;
                Factor { top, bottom }
            })
        })
        .collect();
    ProductTerm {
        exponent: lam.koh_exponent(),
        factors,
    }
}

pub fn koh_term(a: usize, lam: &Partition) -> KohTerm {
    let term = koh_factors(a, lam);
    let poly = term.to_poly();
    KohTerm {
        partition: lam.clone(),
        term,
        poly,
    }
}

/// One term per partition of `k`; their sum is `[a+k choose k]_q`.
pub fn koh_decompose(a: usize, k: usize) -> Vec<KohTerm> {
    partitions(k).iter().map(|lam| koh_term(a, lam)).collect()
}

pub fn koh_sum(terms: &[KohTerm]) -> IntPoly {
    terms.iter().fold(IntPoly::zero(), |acc, t| &acc + &t.poly)
}

/// `[m choose 3]_q` after iterating the KOH decomposition `c = floor(m/4)`
/// times on the `(3)` summand:
///
/// ```text
/// ε q^((3m-9)/2) + Σ_{i<c} ( q^(6i+2) [m-4i-4, 1] [2m-8i-7, 1] + q^(6i) [3m-12i-8, 1] )
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K3Expansion {
    pub m: usize,
    /// 1 iff `m ≡ 3 (mod 4)`.
    pub epsilon: u8,
    pub iterations: usize,
    /// For each `i < c`, the `(2,1)` and `(1,1,1)` terms of that round.
    pub rounds: Vec<(ProductTerm, ProductTerm)>,
}

impl K3Expansion {
    pub fn assemble(&self) -> IntPoly {
        let mut total = if self.epsilon == 1 {
            IntPoly::monomial((3 * self.m - 9) / 2)
        } else {
            IntPoly::zero()
        };
        for (pair, single) in &self.rounds {
            total = &total + &pair.to_poly();
            total = &total + &single.to_poly();
        }
        total
    }
}

/// # Panics
/// If `m < 3`.
pub fn k3_iterated(m: usize) -> K3Expansion {
    assert!(m >= 3, "k3_iterated needs m >= 3");
    let c = m / 4;
    let mi = m as i64;
    let rounds = (0..c)
        .map(|i| {
            let ii = i as i64;
            (
                ProductTerm::new(6 * i + 2, &[(mi - 4 * ii - 4, 1), (2 * mi - 8 * ii - 7, 1)]),
                ProductTerm::new(6 * i, &[(3 * mi - 12 * ii - 8, 1)]),
            )
        })
        .collect();
    K3Expansion {
        m,
        epsilon: u8::from(m % 4 == 3),
        iterations: c,
        rounds,
    }
}

/// Degrees `j` with `2 <= j <= (3m-9)/2` where `[m choose 3]_q` has equal
/// coefficients in degrees `j-1` and `j`, ascending.
pub fn k3_flat_degrees(m: usize) -> Vec<usize> {
    let poly = qbinomial(m as i64, 3);
    let upper = (3 * m).saturating_sub(9) / 2;
    (2..=upper)
        .filter(|&j| poly.coeff(j) == poly.coeff(j - 1))
        .collect()
}

/// The flat degrees the residue of `m` modulo 4 predicts, restricted to
/// `2 <= j <= (3m-9)/2`, ascending.
pub fn k3_predicted_flat_degrees(m: usize) -> Vec<usize> {
    let t = 3 * m;
    let candidates = match m % 4 {
        0 | 2 => vec![t.saturating_sub(10)],
        1 => vec![t.saturating_sub(13), t.saturating_sub(9)],
        _ => vec![t.saturating_sub(11)],
    };
    let upper = t.saturating_sub(9) / 2;
    candidates
        .into_iter()
        .map(|c| c / 2)
        .filter(|j| (2..=upper).contains(j))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn partitions_of_small_numbers() {
        assert_eq!(partitions(1), vec![lam(&[1])]);
        assert_eq!(
            partitions(3),
            vec![lam(&[3]), lam(&[2, 1]), lam(&[1, 1, 1])]
        );
        let five: Vec<Vec<usize>> = partitions(5).iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(
            five,
            vec![
                vec![5],
                vec![4, 1],
                vec![3, 2],
                vec![3, 1, 1],
                vec![2, 2, 1],
                vec![2, 1, 1, 1],
                vec![1, 1, 1, 1, 1]
            ]
        );
        assert_eq!(partitions(8).len(), 22);
        assert!(partitions(0) == vec![lam(&[])]);
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![1, 2]).is_none());
        assert!(Partition::new(vec![2, 0]).is_none());
        assert_eq!(lam(&[3, 3, 1]).size(), 7);
    }

    #[test]
    fn partial_sums() {
        let p = lam(&[2, 1]);
        let ys: Vec<usize> = (0..4).map(|i| p.partial_sum(i)).collect();
        assert_eq!(ys, vec![0, 2, 3, 3]);
        assert_eq!(lam(&[3]).partial_sum(1), 3);
        assert_eq!(lam(&[3]).partial_sum(2), 3);
        assert_eq!(lam(&[1, 1, 1]).partial_sum(2), 2);
        assert_eq!(lam(&[1, 1, 1]).partial_sum(4), 3);
    }

    #[test]
    fn worked_terms_a2_k3() {
        let t = koh_term(2, &lam(&[3]));
        assert_eq!(t.term.factors, vec![Factor { top: 1, bottom: 3 }]);
        assert!(t.poly.is_zero());

        let t = koh_term(2, &lam(&[2, 1]));
        assert_eq!(t.exponent(), 2);
        assert_eq!(t.poly, IntPoly::from_i64s(&[0, 0, 1, 1, 1]));

        let t = koh_term(2, &lam(&[1, 1, 1]));
        assert_eq!(t.poly, IntPoly::ones(7));

        let total = koh_sum(&koh_decompose(2, 3));
        assert_eq!(total, IntPoly::from_i64s(&[1, 1, 2, 2, 2, 1, 1]));
        assert_eq!(total, qbinomial(5, 3));
    }

    #[test]
    fn k3_expansion_small_m() {
        let e = k3_iterated(7);
        assert_eq!((e.epsilon, e.iterations), (1, 1));
        assert_eq!(e.assemble(), qbinomial(7, 3));

        let e = k3_iterated(4);
        assert_eq!((e.epsilon, e.iterations), (0, 1));
        assert_eq!(e.assemble(), IntPoly::ones(4));

        let e = k3_iterated(20);
        assert_eq!((e.epsilon, e.iterations), (0, 5));
        assert_eq!(e.assemble(), qbinomial(20, 3));

        assert_eq!(k3_iterated(3).assemble(), IntPoly::one());
    }

    #[test]
    fn k3_flat_degree_examples() {
        assert_eq!(k3_flat_degrees(8), vec![7]);
        assert_eq!(k3_flat_degrees(9), vec![7, 9]);
        assert_eq!(k3_flat_degrees(11), vec![11]);
        assert_eq!(k3_predicted_flat_degrees(9), vec![7, 9]);
        assert_eq!(k3_predicted_flat_degrees(5), vec![3]);
        assert_eq!(k3_flat_degrees(5), vec![3]);
    }
}
