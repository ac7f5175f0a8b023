//! Integer utilities: gcd, multiplicative order of 2, primality, base-2 digit
//! reversal and the enumeration of reversible pairs.

use std::fmt::Write as _;

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this modulus the order of 2 is found by repeated doubling.
const NAIVE_ORDER_LIMIT: u64 = 1 << 20;
/// Largest trial divisor tried when factoring for the order computation.
const TRIAL_DIVISION_LIMIT: u64 = 1 << 22;
/// Step cap for the doubling loop once factoring has given up.
const ORDER_STEP_CAP: u64 = 1 << 28;
/// Witnesses for a deterministic strong-pseudoprime test; sufficient for
/// every n < 3.3 * 10^24, which covers all of u64.
const MR_BASES_U64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const MR_ROUNDS_BIG: usize = 64;
const MR_SEED: u64 = 0x05ee_d0f2_ad1c;

/// `gcd(a, b)`; `(0, 0)` is rejected.
pub fn gcd(a: &BigUint, b: &BigUint) -> Result<BigUint> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::precondition("gcd(0, 0) is undefined"));
    }
    Ok(a.gcd(b))
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn as_u64(n: &BigUint, what: &str) -> Result<u64> {
    n.to_u64()
        .ok_or_else(|| Error::precondition(format!("{what} {n} exceeds the supported range 2^64")))
}

/// Outcome of a primality test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Primality {
    Composite,
    /// Proven prime (deterministic test, n < 2^64).
    Prime,
    /// Passed 64 randomized strong-pseudoprime rounds (n >= 2^64).
    ProbablePrime,
}

impl Primality {
    pub fn is_prime(self) -> bool {
        !matches!(self, Primality::Composite)
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES_U64 {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES_U64 {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(n: &BigUint, a: &BigUint, d: &BigUint, s: u64) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let mut x = a.modpow(d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

pub fn primality(n: &BigUint) -> Primality {
    if let Some(small) = n.to_u64() {
        return if is_prime_u64(small) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    for &p in &MR_BASES_U64 {
        if (n % p).is_zero() {
            return Primality::Composite;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut rng = ChaCha8Rng::seed_from_u64(MR_SEED);
    let low = BigUint::from(2u32);
    for _ in 0..MR_ROUNDS_BIG {
        let a = rng.gen_biguint_range(&low, &n_minus_1);
        if !strong_probable_prime(n, &a, &d, s) {
            return Primality::Composite;
        }
    }
    Primality::ProbablePrime
}

pub fn is_prime(n: &BigUint) -> bool {
    primality(n).is_prime()
}

/// Distinct prime factors of `n` in increasing order.
///
/// Trial division runs up to [`TRIAL_DIVISION_LIMIT`]; a remaining cofactor
/// is accepted only if it is prime, otherwise the budget error is returned.
pub fn prime_factors_u64(mut n: u64) -> Result<Vec<u64>> {
    let mut factors = Vec::new();
    if n < 2 {
        return Ok(factors);
    }
    if n.is_multiple_of(2) {
        factors.push(2);
        n >>= n.trailing_zeros();
    }
    let mut d = 3u64;
    while d <= TRIAL_DIVISION_LIMIT && d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            factors.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 2;
    }
    if n > 1 {
        if d.saturating_mul(d) > n || is_prime_u64(n) {
            factors.push(n);
        } else {
            return Err(Error::Budget(format!(
                "cofactor {n} has no prime factor below {TRIAL_DIVISION_LIMIT}"
            )));
        }
    }
    Ok(factors)
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}

/// Carmichael function of an odd modulus, from its factorization.
fn carmichael_odd(m: u64) -> Result<u64> {
    let mut lambda = 1u64;
    for p in prime_factors_u64(m)? {
        let mut pk = p;
        while pk.checked_mul(p).is_some_and(|next| m.is_multiple_of(next)) {
            pk *= p;
        }
        lambda = lcm_u64(lambda, pk / p * (p - 1));
    }
    Ok(lambda)
}

fn order_by_doubling(m: u64, cap: u64) -> Option<u64> {
    let mut x = 2 % m;
    let mut o = 1u64;
    while x != 1 {
        if o >= cap {
            return None;
        }
        x = ((x as u128 * 2) % m as u128) as u64;
        o += 1;
    }
    Some(o)
}

/// Multiplicative order of 2 modulo an odd `m >= 3`.
pub fn mult_order_2_u64(m: u64) -> Result<u64> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::precondition(format!(
            "order of 2 needs an odd modulus >= 3, got {m}"
        )));
    }
    if m < NAIVE_ORDER_LIMIT {
        return Ok(order_by_doubling(m, m).expect("order is below the modulus"));
    }
    let descend = || -> Result<u64> {
        let mut order = carmichael_odd(m)?;
        for r in prime_factors_u64(order)? {
            while order % r == 0 && pow_mod(2, order / r, m) == 1 {
                order /= r;
            }
        }
        Ok(order)
    };
    match descend() {
        Ok(o) => Ok(o),
        Err(Error::Budget(why)) => order_by_doubling(m, ORDER_STEP_CAP).ok_or_else(|| {
            Error::Budget(format!(
                "order of 2 mod {m}: factoring failed ({why}) and {ORDER_STEP_CAP} doublings did not reach 1"
            ))
        }),
        Err(e) => Err(e),
    }
}

pub fn mult_order_2(m: &BigUint) -> Result<BigUint> {
    mult_order_2_u64(as_u64(m, "modulus")?).map(BigUint::from)
}

/// Reverses the base-2 digits of an odd `p`. Oddness keeps the digit count.
pub fn reverse_bits_u64(p: u64) -> Result<u64> {
    if p.is_multiple_of(2) {
        return Err(Error::precondition(format!(
            "digit reversal needs an odd integer, got {p}"
        )));
    }
    Ok(p.reverse_bits() >> p.leading_zeros())
}

pub fn reverse_bits(p: &BigUint) -> Result<BigUint> {
    if p.is_even() {
        return Err(Error::precondition(format!(
            "digit reversal needs an odd integer, got {p}"
        )));
    }
    let t = p.bits();
    let mut q = BigUint::zero();
    for i in 0..t {
        if p.bit(i) {
            q.set_bit(t - 1 - i, true);
        }
    }
    Ok(q)
}

pub fn is_palindromic(p: &BigUint) -> Result<bool> {
    Ok(reverse_bits(p)? == *p)
}

/// A base-2 reversible pair with the orders of 2 modulo both members.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReversiblePair {
    pub p: u64,
    pub q: u64,
    pub ord_p: u64,
    pub ord_q: u64,
    pub q_is_prime: bool,
}

impl ReversiblePair {
    pub fn for_prime(p: u64) -> Result<Self> {
        let q = reverse_bits_u64(p)?;
        Ok(ReversiblePair {
            p,
            q,
            ord_p: mult_order_2_u64(p)?,
            ord_q: mult_order_2_u64(q)?,
            q_is_prime: is_prime_u64(q),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairMode {
    /// `p` and its reverse `q` both prime, `p < q`.
    PrimePrime,
    /// `p` prime, `q` composite, `q != p`; `q` may be smaller than `p`.
    PrimeComposite,
}

/// Odd candidates in `(2^{t-1}, 2^t)` tested in parallel; results come back
/// sorted by `p` regardless of how the work was split.
fn odd_candidates<T: Send>(t: u32, test: impl Fn(u64) -> Option<Result<T>> + Sync) -> Result<Vec<T>> {
    let base = 1u64 << (t - 1);
    let count = 1u64 << (t - 2);
    (0..count)
        .into_par_iter()
        .filter_map(|i| test(base + 1 + 2 * i))
        .collect()
}

pub fn enumerate_reversible_pairs(t_min: u32, t_max: u32, mode: PairMode) -> Result<Vec<ReversiblePair>> {
    if !(2 <= t_min && t_min <= t_max && t_max <= 64) {
        return Err(Error::precondition(format!(
            "bit-length range must satisfy 2 <= t_min <= t_max <= 64, got {t_min}..{t_max}"
        )));
    }
    let mut pairs = Vec::new();
    for t in t_min..=t_max {
        pairs.extend(odd_candidates(t, |p| {
            if !is_prime_u64(p) {
                return None;
            }
            let q = p.reverse_bits() >> p.leading_zeros();
            let keep = match mode {
                PairMode::PrimePrime => p < q && is_prime_u64(q),
                PairMode::PrimeComposite => q != p && !is_prime_u64(q),
            };
            keep.then(|| ReversiblePair::for_prime(p))
        })?);
    }
    Ok(pairs)
}

pub const PAIR_TSV_HEADER: &str = "p\tq\tord_p\tord_q";

pub fn pairs_to_tsv(pairs: &[ReversiblePair]) -> String {
    let mut out = String::from(PAIR_TSV_HEADER);
    out.push('\n');
    for r in pairs {
        let _ = writeln!(out, "{}\t{}\t{}\t{}", r.p, r.q, r.ord_p, r.ord_q);
    }
    out
}

fn check_counting_range(t: u32) -> Result<()> {
    if !(2..=40).contains(&t) {
        return Err(Error::precondition(format!("bit length must be in 2..=40, got {t}")));
    }
    Ok(())
}

/// The odd palindromes with exactly `t` binary digits.
pub fn palindromes(t: u32) -> impl Iterator<Item = u64> {
    let free = t.div_ceil(2) - 1;
    (0..1u64 << free).map(move |mask| {
        let mut p = 1u64 | (1u64 << (t - 1));
        for j in 0..free {
            if (mask >> j) & 1 == 1 {
                p |= 1 << (1 + j);
                p |= 1 << (t - 2 - j);
            }
        }
        p
    })
}

/// Palindromic primes in `(2^{t-1}, 2^t)`. Checks the `2^{t/2}` upper bound.
pub fn count_palindromic_primes(t: u32) -> Result<u64> {
    check_counting_range(t)?;
    let count = palindromes(t).filter(|&p| is_prime_u64(p)).count() as u64;
    if (count as u128) * (count as u128) > 1u128 << t {
        return Err(Error::Property(format!(
            "{count} palindromic primes with {t} digits exceeds 2^(t/2)"
        )));
    }
    Ok(count)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThetaReport {
    pub t: u32,
    /// Primes `p` in `(2^{t-1}, 2^t)` whose reverse is prime, palindromic `p` included.
    pub count: u64,
    /// Heuristic reference `3 * 2^{t-1} / t^2`; not a bound.
    pub heuristic: f64,
}

pub fn theta(t: u32) -> Result<ThetaReport> {
    check_counting_range(t)?;
    let count = odd_candidates(t, |p| {
        (is_prime_u64(p) && is_prime_u64(p.reverse_bits() >> p.leading_zeros())).then_some(Ok(()))
    })?
    .len() as u64;
    Ok(ThetaReport {
        t,
        count,
        heuristic: 3.0 * 2f64.powi(t as i32 - 1) / f64::from(t * t),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&big(4095), &big(11)).unwrap(), big(1));
        assert_eq!(gcd(&big(4095), &big(3328)).unwrap(), big(13));
        assert_eq!(gcd(&big(77), &big(77)).unwrap(), big(77));
        assert_eq!(gcd(&big(9), &big(0)).unwrap(), big(9));
        assert!(gcd(&big(0), &big(0)).is_err());
    }

    #[test]
    fn order_examples() {
        assert_eq!(mult_order_2(&big(11)).unwrap(), big(10));
        assert_eq!(mult_order_2(&big(25)).unwrap(), big(20));
        assert_eq!(mult_order_2(&big(19)).unwrap(), big(18));
        assert!(mult_order_2(&big(10)).is_err());
        assert!(mult_order_2(&big(1)).is_err());
    }

    #[test]
    fn order_large_modulus_matches_doubling() {
        // Above the naive limit the factor-descent path is taken.
        for m in [
            1_048_583u64,
            1_048_577,
            3 * 5 * 7 * 11 * 13 * 17 * 19 + 2,
            2_147_483_647,
            4_194_305,
        ] {
            let fast = mult_order_2_u64(m).unwrap();
            assert_eq!(Some(fast), order_by_doubling(m, u64::MAX), "m = {m}");
        }
        // 2^61 - 1 is prime and 2 has order 61.
        assert_eq!(mult_order_2_u64((1 << 61) - 1).unwrap(), 61);
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(&big(223)));
        assert!(!is_prime(&big(1)));
        assert!(!is_prime(&big(209)));
        assert!(!is_prime(&big(0)));
        assert!(is_prime(&big(2)));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        let m127 = (BigUint::one() << 127u32) - 1u32;
        assert_eq!(primality(&m127), Primality::ProbablePrime);
        assert_eq!(primality(&(&m127 * &m127)), Primality::Composite);
        let m67 = (BigUint::one() << 67u32) - 1u32; // 193707721 * 761838257287
        assert_eq!(primality(&m67), Primality::Composite);
    }

    #[test]
    fn primality_agrees_with_sieve() {
        let limit = 20_000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (n, &prime) in sieve.iter().enumerate() {
            assert_eq!(is_prime_u64(n as u64), prime, "n = {n}");
        }
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(reverse_bits(&big(11)).unwrap(), big(13));
        assert_eq!(reverse_bits(&big(19)).unwrap(), big(25));
        assert_eq!(reverse_bits(&big(5)).unwrap(), big(5));
        assert!(reverse_bits(&big(6)).is_err());
        assert!(reverse_bits_u64(6).is_err());
    }

    #[test]
    fn palindrome_examples() {
        assert!(is_palindromic(&big(7)).unwrap());
        assert!(!is_palindromic(&big(11)).unwrap());
        for k in 1..70u32 {
            let p = (BigUint::one() << k) + 1u32;
            assert!(is_palindromic(&p).unwrap(), "2^{k}+1");
        }
        assert!(is_palindromic(&big(4)).is_err());
    }

    #[test]
    fn first_pairs() {
        let pp = enumerate_reversible_pairs(2, 8, PairMode::PrimePrime).unwrap();
        let first = pp[0];
        assert_eq!((first.p, first.q, first.ord_p, first.ord_q), (11, 13, 10, 12));
        let last = pp[14];
        assert_eq!((last.p, last.q, last.ord_p, last.ord_q), (223, 251, 37, 50));
        assert_eq!(pp.len(), 15);
        let pc = enumerate_reversible_pairs(2, 8, PairMode::PrimeComposite).unwrap();
        let first = pc[0];
        assert_eq!((first.p, first.q, first.ord_p, first.ord_q), (19, 25, 18, 20));
        assert!(pc.iter().any(|r| r.q < r.p));
        assert!(enumerate_reversible_pairs(2, 3, PairMode::PrimePrime)
            .unwrap()
            .is_empty());
        assert!(enumerate_reversible_pairs(3, 2, PairMode::PrimePrime).is_err());
        assert!(enumerate_reversible_pairs(2, 65, PairMode::PrimePrime).is_err());
    }

    #[test]
    fn pair_invariants() {
        for mode in [PairMode::PrimePrime, PairMode::PrimeComposite] {
            for r in enumerate_reversible_pairs(2, 12, mode).unwrap() {
                assert!(is_prime_u64(r.p));
                assert_eq!(r.q, reverse_bits_u64(r.p).unwrap());
                assert_eq!(r.q_is_prime, is_prime_u64(r.q));
                assert_eq!((r.p - 1) % r.ord_p, 0);
                for (m, o) in [(r.p, r.ord_p), (r.q, r.ord_q)] {
                    assert_eq!(pow_mod(2, o, m), 1);
                    for f in prime_factors_u64(o).unwrap() {
                        assert_ne!(pow_mod(2, o / f, m), 1, "order of 2 mod {m} is not minimal");
                    }
                }
            }
        }
    }

    #[test]
    fn tsv_layout() {
        let pairs = enumerate_reversible_pairs(4, 4, PairMode::PrimePrime).unwrap();
        assert_eq!(pairs_to_tsv(&pairs), "p\tq\tord_p\tord_q\n11\t13\t10\t12\n");
    }

    #[test]
    fn palindromic_prime_counts() {
        assert_eq!(count_palindromic_primes(2).unwrap(), 1);
        assert_eq!(count_palindromic_primes(3).unwrap(), 2);
        assert_eq!(count_palindromic_primes(4).unwrap(), 0);
        assert!(count_palindromic_primes(1).is_err());
        assert!(count_palindromic_primes(41).is_err());
        // Independent count: every odd number in range, filtered by digit palindromy.
        for t in 2..=16u32 {
            let brute = ((1u64 << (t - 1)) + 1..1u64 << t)
                .step_by(2)
                .filter(|&p| reverse_bits_u64(p).unwrap() == p && is_prime_u64(p))
                .count() as u64;
            assert_eq!(count_palindromic_primes(t).unwrap(), brute, "t = {t}");
        }
    }

    #[test]
    fn theta_counts() {
        assert_eq!(theta(4).unwrap().count, 2);
        assert_eq!(theta(2).unwrap().count, 1);
        let pp = enumerate_reversible_pairs(2, 10, PairMode::PrimePrime).unwrap();
        for t in 2..=10u32 {
            let th = theta(t).unwrap();
            let pal = count_palindromic_primes(t).unwrap();
            let listed = pp.iter().filter(|r| 64 - r.p.leading_zeros() == t).count() as u64;
            assert_eq!(th.count, 2 * listed + pal, "t = {t}");
            assert!(th.count >= pal);
            assert!(th.heuristic > 0.0);
        }
    }

    proptest! {
        #[test]
        fn reverse_is_involution(half in 0u64..(1 << 62)) {
            let p = 2 * half + 1;
            let q = reverse_bits_u64(p).unwrap();
            prop_assert_eq!(q % 2, 1);
            prop_assert_eq!(64 - q.leading_zeros(), 64 - p.leading_zeros());
            prop_assert_eq!(reverse_bits_u64(q).unwrap(), p);
            prop_assert_eq!(reverse_bits(&BigUint::from(p)).unwrap(), BigUint::from(q));
        }

        #[test]
        fn order_divides_p_minus_one(n in 3u64..1_000_000) {
            if is_prime_u64(n) {
                prop_assert_eq!((n - 1) % mult_order_2_u64(n).unwrap(), 0);
            }
        }
    }
}
