//! Invariants of the staircase model and the closed forms, checked over the
//! grids where enumeration is cheap.

use num_bigint::BigUint;
use proptest::prelude::*;

use hkdet::closedforms::{hk_closed, mq_closed, nq_col_bounded_closed};
use hkdet::polyfit::interpolate_hk;
use hkdet::staircase::{count_oracle, mirror_count_oracle, Bound, CountKind, CountSpec};
use hkdet::WorkBudget;

fn constant_spec(kind: CountKind, m: u32, n: u32, q: u64, row: Bound, col: Bound) -> CountSpec {
    CountSpec::new(kind, m, n, q, vec![row; m as usize], vec![col; n as usize]).unwrap()
}

#[test]
fn mirror_invariance_on_constant_bounds() {
    let bounds = [
        Bound::Finite(0),
        Bound::Finite(1),
        Bound::Finite(2),
        Bound::Finite(3),
        Bound::Infinite,
    ];
    let mut budget = WorkBudget::default();
    for m in 1..=3 {
        for n in 1..=3 {
            for q in 0..=4 {
                for kind in [CountKind::N, CountKind::M] {
                    for &row in &bounds {
                        for &col in &bounds {
                            let s = constant_spec(kind, m, n, q, row, col);
                            assert_eq!(
                                count_oracle(&s, &mut budget).unwrap(),
                                mirror_count_oracle(&s, &mut budget).unwrap(),
                                "{s:?}"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn closed_forms_match_enumeration_including_q_zero() {
    let mut budget = WorkBudget::default();
    for m in 1..=3 {
        for n in 1..=3 {
            for q in 0..=5 {
                let hk = count_oracle(&CountSpec::hk(m, n, q).unwrap(), &mut budget).unwrap();
                let nq =
                    count_oracle(&CountSpec::col_bounded(m, n, q).unwrap(), &mut budget).unwrap();
                let mq = count_oracle(&CountSpec::mq(m, n, q).unwrap(), &mut budget).unwrap();
                assert_eq!(hk, hk_closed(m, n, q));
                assert_eq!(nq, nq_col_bounded_closed(m, n, q));
                assert_eq!(mq, mq_closed(m, n, q));
            }
        }
    }
}

#[test]
fn hk_of_a_single_row_is_a_power() {
    let mut budget = WorkBudget::default();
    for n in 1..=3 {
        for q in 1..=4u64 {
            let counted = count_oracle(&CountSpec::hk(1, n, q).unwrap(), &mut budget).unwrap();
            assert_eq!(counted, BigUint::from(q).pow(n));
        }
    }
}

#[test]
fn fitted_leading_coefficients_are_transpose_symmetric() {
    for m in 1..=4 {
        for n in 1..=4 {
            let a = interpolate_hk(m, n).unwrap();
            let b = interpolate_hk(n, m).unwrap();
            assert_eq!(
                a.leading_coefficient().unwrap(),
                b.leading_coefficient().unwrap()
            );
        }
    }
}

proptest! {
    #[test]
    fn hk_transpose_symmetry(m in 1u32..12, n in 1u32..12, q in 0u64..500) {
        prop_assert_eq!(hk_closed(m, n, q), hk_closed(n, m, q));
    }

    #[test]
    fn hk_splits_into_column_bounded_and_m_parts(m in 1u32..10, n in 1u32..10, q in 0u64..200) {
        // Neither part can exceed the total.
        let hk = hk_closed(m, n, q);
        prop_assert!(nq_col_bounded_closed(m, n, q) <= hk);
        prop_assert!(mq_closed(m, n, q) <= hk);
    }

    #[test]
    fn hk_is_monotone_in_q(m in 1u32..8, n in 1u32..8, q in 0u64..300) {
        prop_assert!(hk_closed(m, n, q) <= hk_closed(m, n, q + 1));
    }
}
