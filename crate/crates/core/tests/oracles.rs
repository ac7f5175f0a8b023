//! Cross-checks against definition-level searches that share no code with
//! the library algorithms.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

use seqc::aperiodic::{bm_profile, rational_complexity, rational_complexity_fast};
use seqc::expectation::{self, Measures};
use seqc::periodic;
use seqc::{FiniteWord, PeriodicSequence};

/// `min max(q, |f|)` over every odd `q` in `[1, 2^N]` and every `f` with
/// `|f| <= 2^N` satisfying the congruence.
fn lambda_by_definition(s: i64, n: u32) -> i64 {
    let m = 1i64 << n;
    let mut best = i64::MAX;
    for q in (1..=m).step_by(2) {
        for f in -m..=m {
            if (q * s - f).rem_euclid(m) == 0 {
                best = best.min(q.max(f.abs()));
            }
        }
    }
    best
}

/// Smallest `L` admitting coefficients `c_0..c_{L-1}` with
/// `s_{i+L} = sum_j c_j s_{i+j}` for every `i < N - L`.
fn linear_by_definition(bits: u64, n: usize) -> usize {
    let s = |i: usize| (bits >> i) & 1;
    (0..=n)
        .find(|&l| {
            (0..1u64 << l)
                .any(|c| (0..n - l).all(|i| (0..l).fold(0, |acc, j| acc ^ ((c >> j) & 1 & s(i + j))) == s(i + l)))
        })
        .unwrap()
}

fn rev(v: u64, n: usize) -> u64 {
    (0..n).fold(0, |acc, i| acc | (((v >> i) & 1) << (n - 1 - i)))
}

#[test]
fn rational_complexity_matches_definition() {
    for n in 1..=7u32 {
        for s in 0..1i64 << n {
            let w = FiniteWord::from_u64(s as u64, n as usize).unwrap();
            let expect = BigUint::from(lambda_by_definition(s, n) as u64);
            let got = rational_complexity(&w).unwrap();
            assert_eq!(got.norm, expect, "N={n} s={s}");
            assert!(got.witnesses(&w));
            assert_eq!(rational_complexity_fast(&w).unwrap().norm, expect);
        }
    }
}

#[test]
fn expectations_match_definition_sums() {
    for n in 1..=7usize {
        let (mut rat, mut rat_sym, mut lin, mut lin_sym, mut exp, mut exp_sym) = (0i64, 0i64, 0i64, 0i64, 0i64, 0i64);
        for v in 0..1u64 << n {
            let (a, b) = (
                lambda_by_definition(v as i64, n as u32),
                lambda_by_definition(rev(v, n) as i64, n as u32),
            );
            rat += a;
            rat_sym += a.min(b);
            let (x, y) = (
                linear_by_definition(v, n) as i64,
                linear_by_definition(rev(v, n), n) as i64,
            );
            lin += x;
            lin_sym += x.min(y);
            exp += 1 << x;
            exp_sym += 1 << x.min(y);
        }
        let q = |x: i64| Some(BigRational::new(BigInt::from(x), BigInt::from(1i64 << n)));
        let row = expectation::enumerate_expectations(n, Measures::all()).unwrap();
        assert_eq!(row.e_rat, q(rat), "N={n}");
        assert_eq!(row.e_rat_sym, q(rat_sym), "N={n}");
        assert_eq!(row.e_lin, q(lin), "N={n}");
        assert_eq!(row.e_lin_sym, q(lin_sym), "N={n}");
        assert_eq!(row.e_linexp, q(exp), "N={n}");
        assert_eq!(row.e_linexp_sym, q(exp_sym), "N={n}");
    }
}

#[test]
fn profiles_match_definition() {
    for n in 1..=10usize {
        for v in 0..1u64 << n {
            let w = FiniteWord::from_u64(v, n).unwrap();
            let p = bm_profile(&w).unwrap();
            for (k, &entry) in p.entries.iter().enumerate() {
                assert_eq!(entry, linear_by_definition(v & ((1 << (k + 1)) - 1), k + 1));
            }
            assert!(p.obeys_jump_rule() && p.recurrence_generates(&w));
        }
    }
}

#[test]
fn periodic_linear_complexity_matches_two_periods() {
    for t in 1..=8usize {
        for v in 0..1u64 << t {
            let s = PeriodicSequence::new(FiniteWord::from_u64(v, t).unwrap()).unwrap();
            let two: u64 = v | (v << t);
            assert_eq!(
                periodic::linear_complexity_periodic(&s),
                linear_by_definition(two, 2 * t)
            );
        }
    }
}

/// The connection integer is the least `q` for which `q * S_T(2)` is a
/// multiple of `2^T - 1`, read off without any gcd.
#[test]
fn connection_is_least_annihilating_divisor() {
    for t in 1..=10u32 {
        let m = (1u64 << t) - 1;
        for v in 0..1u64 << t {
            let least = (1..=m).find(|q| m.is_multiple_of(*q) && (q * v) % m == 0).unwrap();
            let s = PeriodicSequence::from_natural(&BigUint::from(v), t as usize).unwrap();
            let got = periodic::adic_periodic(&s).connection;
            // v = 2^T - 1 is the all-ones sequence, the same as v = 0.
            assert_eq!(got, BigUint::from(least), "T={t} v={v}");
        }
    }
}

proptest! {
    #[test]
    fn symmetric_measures_ignore_reversal(bits in proptest::collection::vec(any::<bool>(), 2..40)) {
        let w = FiniteWord::from_fn(bits.len(), |i| bits[i]);
        let a = seqc::aperiodic::symmetric_rational_complexity(&w).unwrap();
        let b = seqc::aperiodic::symmetric_rational_complexity(&w.reverse()).unwrap();
        prop_assert_eq!(a.min_norm, b.min_norm);
        prop_assert_eq!(
            seqc::aperiodic::symmetric_linear_complexity_N(&w).unwrap(),
            seqc::aperiodic::symmetric_linear_complexity_N(&w.reverse()).unwrap()
        );
    }

    #[test]
    fn lattice_path_matches_oracle(v in any::<u64>(), n in 17usize..=36) {
        let w = FiniteWord::from_u64(v & ((1 << n) - 1), n).unwrap();
        let fast = rational_complexity_fast(&w).unwrap();
        prop_assert!(fast.witnesses(&w));
        prop_assert_eq!(fast.norm, rational_complexity(&w).unwrap().norm);
    }
}
