//! Property suites run by `seqc verify` and `seqc selftest`.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use seqc::aperiodic::{bm_profile, rational_complexity, rational_complexity_fast};
use seqc::constructions::{all_tails, verify_family, Family, FamilySpec};
use seqc::expectation::{self, Measure, Measures};
use seqc::periodic::{self, Remark6Variant};
use seqc::{numtheory, reference, FiniteWord, PeriodicSequence, Result};

pub const SUITES: [&str; 6] = [
    "lin-eq-sym",
    "mersenne",
    "theorem1-all",
    "families",
    "oracle-equivalence",
    "counting",
];

/// Sizes of the sweeps; [`Scale::full`] is what `verify` runs.
#[derive(Clone, Copy, Debug)]
pub struct Scale {
    pub lin_max_t: usize,
    pub lin_random: usize,
    pub families_max_n: usize,
    pub oracle_max_n: usize,
    pub oracle_random_max_n: usize,
    pub oracle_samples: usize,
    pub counting_max_n: usize,
    pub seed: u64,
}

impl Scale {
    pub fn full(seed: u64) -> Self {
        Scale {
            lin_max_t: 10,
            lin_random: 10_000,
            families_max_n: 12,
            oracle_max_n: 14,
            oracle_random_max_n: 40,
            oracle_samples: 100_000,
            counting_max_n: 16,
            seed,
        }
    }

    pub fn quick(seed: u64) -> Self {
        Scale {
            lin_max_t: 8,
            lin_random: 500,
            families_max_n: 9,
            oracle_max_n: 10,
            oracle_random_max_n: 24,
            oracle_samples: 200,
            counting_max_n: 10,
            seed,
        }
    }
}

#[derive(Debug, Default, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: u64,
    pub passed: bool,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            ..Default::default()
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(mut self) -> Self {
        self.passed = self.failures.is_empty();
        self
    }
}

pub fn run(name: &str, scale: Scale) -> Result<SuiteReport> {
    match name {
        "lin-eq-sym" => lin_eq_sym(scale),
        "mersenne" => mersenne(),
        "theorem1-all" => theorem1_all(),
        "families" => families(scale),
        "oracle-equivalence" => oracle_equivalence(scale),
        "counting" => counting(scale),
        other => Err(seqc::Error::Precondition(format!(
            "unknown suite {other:?} (known: {})",
            SUITES.join(", ")
        ))),
    }
}

fn lin_eq_sym(scale: Scale) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("lin-eq-sym");
    let check = |seq: &PeriodicSequence, rep: &mut SuiteReport| {
        let l = periodic::linear_complexity_periodic(seq);
        let l_rev = periodic::linear_complexity_periodic(&seq.reverse());
        rep.check(l == l_rev, || {
            format!("L(S) = {l} but L(S^rev) = {l_rev} for S_T = {}", seq.initial())
        });
    };
    for t in 1..=scale.lin_max_t {
        for v in 0..1u64 << t {
            check(&PeriodicSequence::new(FiniteWord::from_u64(v, t)?)?, &mut rep);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(scale.seed);
    for _ in 0..scale.lin_random {
        let t = rng.gen_range(1..=128usize);
        let word = FiniteWord::from_fn(t, |_| rng.gen());
        let seq = PeriodicSequence::new(word)?;
        check(&seq, &mut rep);
        // The gcd formula agrees with Berlekamp-Massey on two periods.
        let l = periodic::linear_complexity_periodic(&seq);
        let bm = bm_profile(&seq.expand(2 * t))?.final_complexity();
        rep.check(l == bm, || {
            format!("gcd formula {l} vs recurrence {bm} for S_T = {}", seq.initial())
        });
    }
    Ok(rep.finish())
}

fn mersenne() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("mersenne");
    for t in [2u32, 3, 5, 7, 13] {
        let ok = periodic::verify_mersenne_maximality(t)?;
        rep.check(ok, || {
            format!("a non-constant {t}-periodic sequence has connection below 2^{t} - 1")
        });
    }
    Ok(rep.finish())
}

/// Non-palindromic primes from the reference pair tables.
pub fn reference_primes() -> Vec<u64> {
    let mut primes: Vec<u64> = reference::table1()
        .into_iter()
        .flat_map(|(p, q, _, _)| [p, q])
        .chain(reference::table2().into_iter().map(|(p, ..)| p))
        .filter(|&p| numtheory::is_prime_u64(p))
        .collect();
    primes.sort_unstable();
    primes.dedup();
    primes
}

fn theorem1_all() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("theorem1-all");
    for p in reference_primes() {
        let period = match periodic::find_valid_T(p, 64) {
            Ok(t) => t,
            // ord_p(2) | ord_q(2): the period condition cannot be met.
            Err(seqc::Error::Precondition(msg)) if msg.contains("divides") => continue,
            Err(e) => return Err(e),
        };
        let r = periodic::verify_theorem1(p, period)?;
        rep.check(r.ok, || {
            format!(
                "p = {p}, T = {period}: connection {} vs 2^T - 1 and q * {}",
                r.connection, r.connection_rev
            )
        });
    }
    Ok(rep.finish())
}

fn record(rep: &mut SuiteReport, spec: &FamilySpec) -> Result<()> {
    let r = verify_family(spec)?;
    for c in &r.claims {
        rep.check(c.holds, || format!("{} {}: {}", r.family, r.sequence, c.claim));
    }
    Ok(())
}

fn families(scale: Scale) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("families");
    for t in [12usize, 24, 36, 48] {
        record(&mut rep, &FamilySpec::Intro21 { period: t })?;
    }
    record(&mut rep, &FamilySpec::Remark5)?;
    for p in reference_primes() {
        if let Ok(period) = periodic::find_valid_T(p, 64) {
            record(&mut rep, &FamilySpec::Theorem1 { p, period })?;
        }
    }
    let family_list = [Family::Example1, Family::Example2, Family::Example3, Family::Example4];
    for n in 2..=scale.families_max_n {
        for k in n / 2..n {
            for family in family_list {
                for tail in all_tails(n - k - 1) {
                    if let Ok(spec) = FamilySpec::example(family, n, k, tail) {
                        record(&mut rep, &spec)?;
                    }
                }
            }
        }
    }
    for t in 3..=10usize {
        for k in 1..t - 1 {
            for q in numtheory::palindromes((t - k) as u32) {
                record(
                    &mut rep,
                    &FamilySpec::Remark6 {
                        variant: Remark6Variant::A,
                        q_pal: q,
                        k,
                        period: t,
                    },
                )?;
            }
        }
    }
    // Second variant: only the lambda equality. Its stated reverse value is
    // reported by `construct remark6B`, which fails on it.
    let b = periodic::verify_remark6(7, 2, 8, Remark6Variant::B)?;
    rep.check(b.lambda_equal, || {
        "remark6B q=7 k=2 T=8: lambda(S) = lambda(S^rev)".into()
    });
    Ok(rep.finish())
}

fn oracle_equivalence(scale: Scale) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("oracle-equivalence");
    let compare = |w: &FiniteWord| -> Result<Option<String>> {
        let fast = rational_complexity_fast(w)?;
        let slow = rational_complexity(w)?;
        Ok((fast.norm != slow.norm || !fast.witnesses(w))
            .then(|| format!("{w}: fast {} vs oracle {}", fast.norm, slow.norm)))
    };
    for n in 1..=scale.oracle_max_n {
        let failures: Vec<String> = (0..1u64 << n)
            .into_par_iter()
            .map(|v| compare(&FiniteWord::from_u64(v, n)?))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        rep.checks += 1 << n;
        rep.failures.extend(failures);
    }
    for n in scale.oracle_max_n + 1..=scale.oracle_random_max_n {
        let mut rng = ChaCha8Rng::seed_from_u64(scale.seed ^ ((n as u64) << 32));
        let words: Vec<u64> = (0..scale.oracle_samples)
            .map(|_| rng.gen::<u64>() & ((1u64 << n) - 1))
            .collect();
        let failures: Vec<String> = words
            .par_iter()
            .map(|&v| compare(&FiniteWord::from_u64(v, n)?))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        rep.checks += words.len() as u64;
        rep.failures.extend(failures);
    }
    Ok(rep.finish())
}

fn counting(scale: Scale) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("counting");
    for n in 1..=scale.counting_max_n {
        let counts = expectation::count_by_linear_complexity(n)?;
        for (l, &c) in counts.iter().enumerate() {
            let formula = expectation::a_n(n, l);
            rep.check(BigUint::from(c) == formula, || {
                format!("A_{n}({l}) = {c}, formula {formula}")
            });
        }
        let total: u64 = counts.iter().sum();
        rep.check(total == 1 << n, || format!("A_{n} sums to {total}"));
        let row = expectation::enumerate_expectations(n, Measures::only(Measure::LinExp))?;
        let closed = expectation::linexp_closed_form(n)?;
        rep.check(row.e_linexp.as_ref() == Some(&closed), || {
            format!("E_{n}^lin-exp enumerated {:?} vs closed form {closed}", row.e_linexp)
        });
        let report = expectation::linexp_report(n)?;
        rep.check(report.delta_is_zero_word, || {
            format!("N = {n}: closed form minus asymptotic expression is {}", report.delta)
        });
    }
    for w in 0..=8 {
        let ok = expectation::m_of_w(w).is_ok();
        rep.check(ok, || format!("M({w}) closed form"));
    }
    Ok(rep.finish())
}
