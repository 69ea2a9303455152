use std::sync::Arc;
use std::thread;

use num_bigint::BigInt;
use qkoh_core::qbinom::{
    binomial, box_partition_counts, coeff_by_partition_count, qbinomial, qbinomial_uncached,
    QBinomCache,
};
use qkoh_core::IntPoly;

/// `(1 - q)(1 - q^2)...(1 - q^n)`.
fn q_factorial_product(n: usize) -> IntPoly {
    (1..=n).fold(IntPoly::one(), |acc, i| {
        &acc * &(&IntPoly::one() - &IntPoly::monomial(i))
    })
}

/// Counts partitions fitting in a `rows x cols` box by listing them.
fn enumerate_box(rows: usize, cols: usize, total: usize) -> u64 {
    fn go(rows: usize, max: usize, rest: usize) -> u64 {
        if rest == 0 {
            return 1;
        }
        if rows == 0 {
            return 0;
        }
        (1..=max.min(rest)).map(|p| go(rows - 1, p, rest - p)).sum()
    }
    go(rows, cols, total)
}

#[test]
fn defining_product_identity() {
    for m in 0..=20usize {
        for k in 0..=m {
            let lhs = &(&qbinomial(m as i64, k as i64) * &q_factorial_product(k))
                * &q_factorial_product(m - k);
            assert_eq!(lhs, q_factorial_product(m), "m={m} k={k}");
        }
    }
}

#[test]
fn structural_properties() {
    for m in 0..=40i64 {
        for k in 0..=m {
            let p = qbinomial(m, k);
            let d = (k * (m - k)) as usize;
            assert_eq!(p.degree(), Some(d));
            assert_eq!(p.coeff_sum(), binomial(m as u64, k as u64));
            assert_eq!(p.symmetry(), Ok(Some(d)));
            assert!(p.is_unimodal() && p.is_nonnegative());
            assert_eq!(p, qbinomial(m, m - k));
        }
    }
}

#[test]
fn unimodal_up_to_twelve() {
    for m in 0..=12 {
        for k in 0..=m {
            assert!(qbinomial(m, k).is_unimodal());
        }
    }
}

#[test]
fn partition_dp_matches_enumeration() {
    for m in 0..=14usize {
        for k in 0..=m {
            let counts = box_partition_counts(m, k);
            for (i, c) in counts.iter().enumerate() {
                assert_eq!(
                    *c,
                    BigInt::from(enumerate_box(k, m - k, i)),
                    "m={m} k={k} i={i}"
                );
            }
        }
    }
    assert_eq!(coeff_by_partition_count(6, 3, 100), BigInt::from(0));
}

#[test]
fn cached_and_uncached_agree() {
    let none = QBinomCache::with_limit(0);
    let fresh = QBinomCache::default();
    for m in 0..=60i64 {
        for k in [0, 1, 2, 3, 5, 8, m / 2] {
            let want = qbinomial_uncached(m, k);
            assert_eq!(*none.get(m, k), want);
            assert_eq!(*fresh.get(m, k), want);
            assert_eq!(qbinomial(m, k), want);
        }
    }
    assert!(none.is_empty());
}

#[test]
fn large_coefficients_stay_exact() {
    // The q = 1 value checks every coefficient at once.
    let p = qbinomial(300, 5);
    assert_eq!(p.coeff_sum(), binomial(300, 5));
    let p = qbinomial(120, 60);
    assert_eq!(p.coeff_sum(), binomial(120, 60));
    // The central coefficient alone overflows 64 bits.
    assert!(p.coeff(60 * 60 / 2) > BigInt::from(u64::MAX));
    assert!(binomial(120, 60) > BigInt::from(u64::MAX));
}

#[test]
fn concurrent_cache_access_is_consistent() {
    let cache = Arc::new(QBinomCache::default());
    let handles: Vec<_> = (0..8)
        .map(|t| {
            let cache = Arc::clone(&cache);
            thread::spawn(move || {
                (0..40i64)
                    .map(|i| {
                        let m = 20 + (i * 7 + t) % 40;
                        (m, cache.get(m, 5).as_ref().clone())
                    })
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    for h in handles {
        for (m, p) in h.join().unwrap() {
            assert_eq!(p, qbinomial_uncached(m, 5));
        }
    }
}

#[test]
fn cache_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    let cache = QBinomCache::default();
    cache.get(30, 4);
    cache.get(17, 9);
    cache.save_json(&path).unwrap();

    let restored = QBinomCache::default();
    assert_eq!(restored.load_json(&path).unwrap(), cache.len());
    assert_eq!(restored.len(), cache.len());
    assert_eq!(*restored.get(30, 4), qbinomial_uncached(30, 4));
}

#[test]
fn corrupt_cache_files_are_discarded() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");

    std::fs::write(&path, "{not json").unwrap();
    let cache = QBinomCache::default();
    assert!(cache.load_json(&path).is_err());
    assert_eq!(cache.load_json_lenient(&path), 0);
    assert!(cache.is_empty());

    // Well-formed JSON holding a wrong polynomial.
    std::fs::write(&path, r#"{"4,2":["1","1","1","1","1"]}"#).unwrap();
    assert!(cache.load_json(&path).is_err());
    assert!(cache.is_empty());

    // One bad entry poisons the whole file.
    std::fs::write(&path, r#"{"2,1":["1","1"],"5,1":["1","1"]}"#).unwrap();
    assert_eq!(cache.load_json_lenient(&path), 0);
    assert!(cache.is_empty());

    assert_eq!(cache.load_json_lenient(&dir.path().join("missing.json")), 0);
}
