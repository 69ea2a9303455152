use num_bigint::BigInt;
use qkoh_core::conjecture::{
    check, f_poly, largest_bs, middle_degree_delta, middle_degree_delta_via_koh,
    one_degree_shift_b, scan_sequential, twelve_cases, valid_bs, DiffSpec, Prediction,
    ThresholdTable,
};
use qkoh_core::qbinom::qbinomial;
use qkoh_core::IntPoly;

fn spec(k: usize, m: usize, b: usize) -> DiffSpec {
    DiffSpec::new(k as i64, m as i64, b as i64).unwrap()
}

/// Nonnegative and unimodal, decided through the truncated first
/// differences instead of the coefficient sequence of `f` itself.
fn passes_by_dominance(s: &DiffSpec) -> bool {
    let c2 = s.center_twice() as i64;
    let lhs = s.minuend().truncated_first_difference(c2).unwrap();
    let rhs = s.subtrahend().truncated_first_difference(c2).unwrap();
    lhs.dominates(&rhs, s.middle_degree())
}

#[test]
fn differences_are_symmetric_about_the_box_center() {
    for k in 2..=8 {
        for m in k..=60 {
            for b in valid_bs(k, m) {
                let s = spec(k, m, b);
                assert!(f_poly(&s).is_symmetric_about(s.center_twice()), "{s}");
            }
        }
    }
}

#[test]
fn dominance_route_agrees_with_direct_verdicts() {
    let t = ThresholdTable::default();
    for k in 3..=6 {
        for m in k..=36 {
            for b in valid_bs(k, m) {
                let s = spec(k, m, b);
                assert_eq!(check(&s, &t).passes(), passes_by_dominance(&s), "{s}");
            }
        }
    }
}

#[test]
fn one_degree_shift_starts_one_zero_positive() {
    for k in 5..=8 {
        for m in (k + 2)..=60 {
            let Some(b) = one_degree_shift_b(k, m) else {
                continue;
            };
            let s = spec(k, m, b);
            assert_eq!(s.shift_exponent(), 1);
            let f = f_poly(&s);
            if f.degree().is_some_and(|d| d >= 2) {
                assert_eq!(f.coeff(0), BigInt::from(1), "{s}");
                assert_eq!(f.coeff(1), BigInt::from(0), "{s}");
                assert!(f.coeff(2) >= BigInt::from(1), "{s}");
                assert!(!f.is_unimodal());
            }
        }
    }
}

#[test]
fn verdicts_carry_down_by_2k_minus_6() {
    let t = ThresholdTable::default();
    for k in 4..=6usize {
        for m in k..=48 {
            for b in valid_bs(k, m) {
                let Some(lower) = b.checked_sub(2 * k - 6) else {
                    continue;
                };
                let Ok(lower) = DiffSpec::new(k as i64, m as i64, lower as i64) else {
                    continue;
                };
                if check(&spec(k, m, b), &t).passes() {
                    assert!(
                        check(&lower, &t).passes(),
                        "{} passes but {lower} fails",
                        spec(k, m, b)
                    );
                }
            }
        }
    }
}

#[test]
fn largest_bs_decide_the_whole_ladder() {
    let t = ThresholdTable::default();
    for k in [5usize, 6] {
        for m in t.get(k).unwrap()..=48 {
            let skip = one_degree_shift_b(k, m);
            let reps = largest_bs(k, m).unwrap();
            let reps_pass = reps.iter().all(|&b| check(&spec(k, m, b), &t).passes());
            let all_pass = valid_bs(k, m)
                .into_iter()
                .filter(|&b| Some(b) != skip)
                .all(|b| check(&spec(k, m, b), &t).passes());
            assert_eq!(reps_pass, all_pass, "k={k} m={m}");
        }
    }
}

#[test]
fn odd_k_needs_only_k_minus_3_values() {
    for m in 20..=80usize {
        assert_eq!(largest_bs(5, m).unwrap().len(), 2, "m={m}");
    }
    for m in 18..=60usize {
        assert_eq!(largest_bs(7, m).unwrap().len(), 4, "m={m}");
    }
    for n in 4..=10usize {
        let cases = twelve_cases(n).unwrap();
        for pair in cases.chunks(2) {
            let m = pair[0].spec.m();
            let want: Vec<usize> = pair.iter().map(|c| c.spec.b()).collect();
            assert_eq!(largest_bs(5, m).unwrap(), want, "m={m}");
        }
    }
}

#[test]
fn twelve_cases_are_the_expected_differences() {
    for n in 4..=10usize {
        for (idx, case) in twelve_cases(n).unwrap().into_iter().enumerate() {
            let j = idx / 2;
            let m = (6 * n + j) as i64;
            let want = &qbinomial(m, 5)
                - &qbinomial(case.bottom_top as i64, 3).shift(case.spec.shift_exponent());
            assert_eq!(f_poly(&case.spec), want, "{}", case.label);
        }
    }
}

#[test]
fn middle_degree_delta_two_ways() {
    for t in 2..=10 {
        let d = middle_degree_delta(t).unwrap();
        assert!(d >= BigInt::from(1));
        assert_eq!(middle_degree_delta_via_koh(t).unwrap(), d, "t={t}");
    }
}

#[test]
fn f_5_20_8_dominance() {
    let s = spec(5, 20, 8);
    assert_eq!(s.shift_exponent(), 30);
    let lhs = qbinomial(20, 5).truncated_first_difference(75).unwrap();
    let rhs = qbinomial(8, 3)
        .shift(30)
        .truncated_first_difference(75)
        .unwrap();
    assert!(lhs.dominates(&rhs, 37));
    assert!(check(&s, &ThresholdTable::default()).passes());
}

#[test]
fn k2_is_independent_of_b() {
    for m in 2..=30 {
        let base = f_poly(&spec(2, m, 0));
        assert_eq!(base, &qbinomial(m as i64, 2) - &IntPoly::monomial(m - 2));
        assert_eq!(f_poly(&DiffSpec::new(2, m as i64, 11).unwrap()), base);
    }
}

#[test]
fn threshold_override_changes_only_predictions() {
    let mut loose = ThresholdTable::default();
    loose.set(5, 5).unwrap();
    let strict = scan_sequential(5, 5, 30, &ThresholdTable::default());
    let probed = scan_sequential(5, 5, 30, &loose);
    for (a, b) in strict.iter().zip(&probed) {
        assert_eq!((a.nonnegative, a.unimodal), (b.nonnegative, b.unimodal));
        if a.spec.m() >= 20 {
            assert_eq!(a.prediction, b.prediction);
        } else {
            assert_eq!(a.prediction, Prediction::NoPrediction);
        }
    }
    // Any disagreement the loosened table exposes lies below the default threshold.
    assert!(probed
        .iter()
        .filter(|r| r.is_disagreement())
        .all(|r| r.spec.m() < 20));
}
