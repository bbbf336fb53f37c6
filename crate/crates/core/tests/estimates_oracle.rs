use std::collections::BTreeSet;

use ncstab_core::estimates::*;
use num_rational::Ratio;

fn q(n: i128) -> Q {
    Q::from_integer(n)
}

fn sum(range: std::ops::RangeInclusive<i128>, f: impl Fn(i128) -> i128) -> i128 {
    range.map(f).sum()
}

#[test]
fn zeta_closed_forms_match_direct_sums() {
    for n in 1..=10_000 {
        for j in 0..3 {
            assert_eq!(zeta(j, n), zeta_direct(j, n), "zeta_{j}({n})");
        }
        assert!(zeta_identity_check(n), "n = {n}");
    }
}

/// Weight bounds re-derived from their defining sums.
fn weight_oracle(case: EstimateCase, n: i128) -> Option<(Q, Q)> {
    let h = n / 2;
    let t = n / 3;
    Some(match case {
        EstimateCase::POffX => (
            q(sum(1..=n - 1, |_| 3 * n) + 2),
            q(sum(1..=n - 1, |b| 3 * n - 3 * b) + 1),
        ),
        EstimateCase::POnXLGeM => {
            if n < 2 {
                return None;
            }
            (
                q(sum(1..=h, |_| 3 * n) + sum(h + 1..=n - 1, |a| 4 * n - 2 * a) + 2),
                q(sum(1..=n - 2, |b| 2 * n + 2 - 2 * b) + 3 + 1),
            )
        }
        EstimateCase::POnXMGtL => {
            let h1 = (n + 1) / 2;
            (
                q(sum(1..=h1, |b| 3 * n + 1 - 2 * b) + sum(h1 + 1..=n, |b| 4 * n + 2 - 4 * b)),
                q(sum(1..=h, |b| 3 * n - 2 * b) + sum(h + 1..=n, |b| 4 * n - 4 * b) + 1),
            )
        }
        EstimateCase::PSmoothFixed => (
            q(sum(1..=n, |a| 3 * n - a)),
            q(sum(1..=h, |b| 2 * n - b) + sum(h + 1..=n, |b| 3 * n - 3 * b) + 1),
        ),
        EstimateCase::PNode => (
            q(sum(1..=h, |_| 3 * n) + sum(h + 1..=n, |a| 5 * n + 1 - 4 * a) + 1),
            q(sum(1..=n, |b| n + 1 - b)),
        ),
        EstimateCase::YLinearL0 => (q(0), y_linear_m_oracle(n)),
        EstimateCase::YLinearLPos => {
            if t < 1 {
                return None;
            }
            let mut wl = Ratio::from_integer(
                sum(0..=t, |_| 3 * n) + sum(t + 1..=2 * t - 1, |b| 3 * n + 3 - 6 * (b - t)),
            );
            match n % 3 {
                1 => wl += q(n + 4),
                2 => wl += q(3 * n + 3 - 6 * t) + q(n + 1),
                _ => {}
            }
            (wl, y_linear_m_oracle(n))
        }
    })
}

fn y_linear_m_oracle(n: i128) -> Q {
    let t = n / 3;
    let base = q(sum(1..=t, |_| 3 * n) + sum(t + 1..=2 * t, |b| 3 * n + 3 - 6 * (b - t)));
    match n % 3 {
        1 => base + Q::new(2 * n + 1, 3),
        2 => base + Q::new(2 * (2 * n + 5), 3),
        _ => base,
    }
}

#[test]
fn weights_match_their_defining_sums() {
    for case in EstimateCase::ALL {
        for n in 1..=60 {
            if let Some(expected) = weight_oracle(case, n) {
                assert_eq!(case.weights(n), expected, "{case} n = {n}");
            }
        }
    }
}

#[test]
fn g_is_the_bootstrap_of_the_weights_up_to_parity() {
    // cases without a {n/2} term agree exactly with the term-by-term sum
    for case in [
        EstimateCase::POffX,
        EstimateCase::PNode,
        EstimateCase::YLinearL0,
        EstimateCase::YLinearLPos,
    ] {
        for n in 1..=300 {
            assert_eq!(case.g(n), case.g_bootstrapped(n), "{case} n = {n}");
        }
    }
    // with a {n/2} term they agree for n ≤ 3, where only one parity occurs
    for case in [EstimateCase::POnXLGeM, EstimateCase::POnXMGtL, EstimateCase::PSmoothFixed] {
        for n in 1..=3 {
            assert_eq!(case.g(n), case.g_bootstrapped(n), "{case} n = {n}");
        }
        assert_ne!(case.g(4), case.g_bootstrapped(4), "{case}");
    }
}

#[test]
fn uncorrected_weights_are_weaker() {
    for case in EstimateCase::ALL {
        for n in 3..=60 {
            if let Some((bl, bm)) = case.weights_uncorrected(n) {
                let (wl, wm) = case.weights(n);
                assert!(bl <= wl && bm <= wm, "{case} n = {n}");
            }
        }
    }
}

#[test]
fn every_case_passes_its_scan() {
    for case in EstimateCase::ALL {
        for l in 0..=4 {
            for m in 0..=4 {
                if let Some(r) = positivity_scan(case, 1, 300, l, m) {
                    assert!(r.passed(), "{case} l={l} m={m}: {r:?}");
                    assert!(r.bootstrapped_claims.iter().all(|c| c.passed), "{case} l={l} m={m}");
                }
            }
        }
    }
}

/// Exponent pairs read off every assignment of levels to the `n` factors.
fn brute_force(l: u32, m: u32, n: u32, k: i64) -> BTreeSet<(u32, u32)> {
    let top = l + m;
    let mut out = BTreeSet::new();
    let mut levels = vec![0u32; n as usize];
    loop {
        let total: i64 = levels.iter().map(|&x| i64::from(x)).sum();
        let k_eff = k.max(0);
        if total == k_eff {
            let alpha = levels.iter().filter(|&&x| x >= 1 && x <= l).count() as u32;
            let beta = levels.iter().filter(|&&x| x > l).count() as u32;
            out.insert((alpha, beta));
        }
        let mut i = 0;
        loop {
            if i == levels.len() {
                return out;
            }
            if levels[i] < top {
                levels[i] += 1;
                break;
            }
            levels[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn composition_conditions_match_enumeration() {
    for l in 0..=4 {
        for m in 0..=4 {
            for n in 1..=6 {
                for k in 0..=i64::from(n * (l + m)) + 1 {
                    assert_eq!(
                        composition_conditions(l, m, n, k),
                        brute_force(l, m, n, k),
                        "l={l} m={m} n={n} k={k}"
                    );
                }
            }
        }
    }
}

#[test]
fn claimed_inclusions_follow_from_conditions() {
    // {V^γ W^α U^β} ⊆ {V^γ' W^α' U^β'} whenever β ≥ β' and α+β ≥ α'+β'
    for l in 0..=4 {
        for m in 0..=4 {
            for n in 1..=6 {
                for (k, _, alpha, beta) in claimed_inclusions(l, m, n) {
                    let ok = composition_conditions(l, m, n, k)
                        .into_iter()
                        .any(|(a2, b2)| beta >= b2 && alpha + beta >= a2 + b2);
                    assert!(ok, "l={l} m={m} n={n} k={k} alpha={alpha} beta={beta}");
                }
            }
        }
    }
}

#[test]
fn triangle_sections_cases() {
    let n = 6;
    assert_eq!(triangle_sections((n, n, n), Vanishing::Edge { beta: 1 }), Some(2 * n - 1));
    assert_eq!(triangle_sections((n, n, n), Vanishing::TwoEdges { beta: 2, gamma: 1 }), Some(n - 2));
    assert_eq!(triangle_sections((n, n, n), Vanishing::Node { beta: 2 }), Some(3 * n - 3));
    assert_eq!(triangle_sections((n, n, n), Vanishing::EdgeAndNode { beta: 1, gamma: 1 }), Some(2 * n - 2));
    assert_eq!(triangle_sections((n, n, n), Vanishing::TwoNodes { beta: 1, gamma: 2 }), Some(3 * n - 4));
    assert_eq!(
        triangle_sections((n, n, n), Vanishing::ThreeNodes { alpha: 1, beta: 1, gamma: 1 }),
        Some(3 * n - 3)
    );
    assert_eq!(triangle_sections((n, n, n), Vanishing::Edge { beta: 0 }), None);
}
