//! Measures of finite words: the Nth rational complexity `Λ(S_N)`, the Nth
//! 2-adic complexity `log2 Λ(S_N)`, the linear complexity profile and the
//! symmetric variants that minimize over a word and its reversal.
//!
//! `Λ(S_N)` is the least `max(q, |f|)` over odd `q > 0` and integers `f`
//! with `q * S_N(2) ≡ f (mod 2^N)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, PrimInt, Signed, ToPrimitive, WrappingAdd, Zero};
use serde::Serialize;

use crate::bitseq::FiniteWord;
use crate::error::{Error, Result};
use crate::gf2::Gf2Poly;
use crate::serde_big;

/// Coefficient bound on the longer reduced basis vector.
const LATTICE_RADIUS: i32 = 8;

/// A pair `(q, f)` attaining `Λ(S_N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalApproximation {
    #[serde(serialize_with = "serde_big::uint")]
    pub q: BigUint,
    #[serde(serialize_with = "serde_big::int")]
    pub f: BigInt,
    #[serde(serialize_with = "serde_big::uint")]
    pub norm: BigUint,
}

impl RationalApproximation {
    fn new(q: BigUint, f: BigInt) -> Self {
        let norm = std::cmp::max(q.clone(), f.magnitude().clone());
        RationalApproximation { q, f, norm }
    }

    /// Checks parity, positivity, the congruence against `word` and the norm.
    pub fn witnesses(&self, word: &FiniteWord) -> bool {
        let modulus = BigInt::one() << word.len();
        let lhs = BigInt::from(self.q.clone()) * BigInt::from(word.evaluate2());
        self.q.is_odd()
            && (lhs - &self.f).mod_floor(&modulus).is_zero()
            && self.norm == std::cmp::max(self.q.clone(), self.f.magnitude().clone())
    }

    /// `log2(norm)`, for display.
    pub fn log2_norm(&self) -> f64 {
        log2_big(&self.norm)
    }
}

pub(crate) fn log2_big(v: &BigUint) -> f64 {
    match v.to_f64() {
        Some(x) if x.is_finite() => x.log2(),
        _ => {
            let shift = v.bits().saturating_sub(64);
            (v >> shift).to_f64().unwrap_or(f64::MAX).log2() + shift as f64
        }
    }
}

fn require_nonempty(word: &FiniteWord) -> Result<()> {
    if word.is_empty() {
        return Err(Error::precondition("complexity measures need N >= 1"));
    }
    Ok(())
}

/// Oracle search on machine words: returns `(q, |f|, f_negative)`.
///
/// `f` runs through `q * s mod 2^N` incrementally (`+ 2s` per step) and is
/// mapped to the absolutely least residue, `+2^{N-1}` on the tie.
fn oracle_prim<U: PrimInt + WrappingAdd>(s: U, n: u32) -> (U, U, bool) {
    let width = U::zero().count_zeros();
    debug_assert!(n >= 1 && n <= width);
    let mask = if n == width {
        U::max_value()
    } else {
        (U::one() << n as usize) - U::one()
    };
    let half = U::one() << (n as usize - 1);
    let s = s & mask;
    let step = s.wrapping_add(&s) & mask;
    let two = U::one() + U::one();
    let least = |f: U| -> (U, bool) {
        if f > half {
            ((mask - f) + U::one(), true)
        } else {
            (f, false)
        }
    };
    let (mag, neg) = least(s);
    let mut best = (U::one(), mag, neg);
    let mut best_norm = mag.max(U::one());
    let mut q = U::one() + two;
    let mut f = s.wrapping_add(&step) & mask;
    while q < best_norm {
        let (mag, neg) = least(f);
        let norm = mag.max(q);
        if norm < best_norm {
            best_norm = norm;
            best = (q, mag, neg);
        }
        q = q + two;
        f = f.wrapping_add(&step) & mask;
    }
    best
}

/// `Λ` of the `n`-bit word with radix-2 value `s`; the memo-table kernel of
/// the expectation sweeps. Requires `1 <= n <= 63`.
pub fn rational_norm_u64(s: u64, n: u32) -> u64 {
    let (q, f, _) = oracle_prim(s, n);
    q.max(f)
}

fn oracle_big(word: &FiniteWord) -> RationalApproximation {
    let n = word.len();
    let modulus = BigUint::one() << n;
    let half = BigUint::one() << (n - 1);
    let s = word.evaluate2();
    let step = (&s << 1u32) % &modulus;
    let least = |f: &BigUint| -> BigInt {
        if *f > half {
            -BigInt::from(&modulus - f)
        } else {
            BigInt::from(f.clone())
        }
    };
    let mut best = RationalApproximation::new(BigUint::one(), least(&s));
    let mut q = BigUint::from(3u32);
    let mut f = (&s + &step) % &modulus;
    while q < best.norm {
        let cand = least(&f);
        if std::cmp::max(&q, cand.magnitude()) < &best.norm {
            best = RationalApproximation::new(q.clone(), cand);
        }
        q += 2u32;
        f = (f + &step) % &modulus;
    }
    best
}

fn from_parts<U: Into<BigUint>>(q: U, mag: U, neg: bool) -> RationalApproximation {
    let mag = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, mag.into());
    RationalApproximation::new(q.into(), mag)
}

/// Exact `Λ(S_N)` by exhaustive search over odd `q`, stopping once `q`
/// reaches the best norm found. The witness has the smallest such `q`.
pub fn rational_complexity(word: &FiniteWord) -> Result<RationalApproximation> {
    require_nonempty(word)?;
    let n = word.len() as u32;
    Ok(if let Some(s) = word.to_u64() {
        let (q, mag, neg) = oracle_prim(s, n);
        from_parts(q, mag, neg)
    } else if let Some(s) = word.to_u128() {
        let (q, mag, neg) = oracle_prim(s, n);
        from_parts(q, mag, neg)
    } else {
        oracle_big(word)
    })
}

/// Candidate ordering: norm, then `q`, then `|f|`, then positive `f` first.
fn candidate_key<I: Signed + Ord + Clone>(q: &I, f: &I) -> (I, I, I, bool) {
    let norm = if q.abs() >= f.abs() { q.abs() } else { f.abs() };
    (norm, q.clone(), f.abs(), f.is_negative())
}

fn round_div<I: Integer + Signed + Clone>(num: I, den: I) -> I {
    // den > 0; rounds half up
    let two = I::one() + I::one();
    (two.clone() * num + den.clone()).div_floor(&(two * den))
}

/// Lagrange-reduces the lattice `{(q, f) : f ≡ q s (mod m)}` and returns the
/// best odd-`q` vector of the form `a b1 + b b2` with `|b| <= LATTICE_RADIUS`.
///
/// For each `b` the sup norm of `b b2 + a b1` is convex piecewise linear in
/// `a`, so its minimum over each parity class of `a` sits next to one of the
/// four breakpoints; only those `a` are tried.
fn lattice_search<I>(s: I, modulus: I) -> Option<(I, I)>
where
    I: Integer + Signed + Clone + From<i32>,
{
    let norm2 = |v: &(I, I)| v.0.clone() * v.0.clone() + v.1.clone() * v.1.clone();
    let dot = |a: &(I, I), b: &(I, I)| a.0.clone() * b.0.clone() + a.1.clone() * b.1.clone();
    let mut b1 = (I::one(), s);
    let mut b2 = (I::zero(), modulus);
    if norm2(&b1) > norm2(&b2) {
        std::mem::swap(&mut b1, &mut b2);
    }
    loop {
        let mu = round_div(dot(&b1, &b2), norm2(&b1));
        b2 = (b2.0 - mu.clone() * b1.0.clone(), b2.1 - mu * b1.1.clone());
        if norm2(&b2) >= norm2(&b1) {
            break;
        }
        std::mem::swap(&mut b1, &mut b2);
    }
    let (y0, y1) = b1;
    let mut best: Option<(I, I)> = None;
    let mut consider = |mut q: I, mut f: I| {
        if q.is_even() {
            return;
        }
        if q.is_negative() {
            q = -q;
            f = -f;
        }
        let better = match &best {
            None => true,
            Some((bq, bf)) => candidate_key(&q, &f).cmp(&candidate_key(bq, bf)) == Ordering::Less,
        };
        if better {
            best = Some((q, f));
        }
    };
    for b in -LATTICE_RADIUS..=LATTICE_RADIUS {
        let b = I::from(b);
        let x0 = b.clone() * b2.0.clone();
        let x1 = b * b2.1.clone();
        let breakpoints = [
            (x0.clone(), y0.clone()),
            (x1.clone(), y1.clone()),
            (x0.clone() - x1.clone(), y0.clone() - y1.clone()),
            (x0.clone() + x1.clone(), y0.clone() + y1.clone()),
        ];
        let mut tried = false;
        for (num, den) in breakpoints {
            if den.is_zero() {
                continue;
            }
            // a = floor(-num / den), then the neighbours covering both parities
            let base = (-num).div_floor(&den);
            for offset in -1..=2 {
                let a = base.clone() + I::from(offset);
                consider(x0.clone() + a.clone() * y0.clone(), x1.clone() + a * y1.clone());
            }
            tried = true;
        }
        if !tried {
            consider(x0, x1);
        }
    }
    best
}

/// `Λ(S_N)` via lattice reduction; same contract as [`rational_complexity`].
///
/// The rank-2 lattice spanned by `(1, s)` and `(0, 2^N)` is reduced and
/// searched for its sup-norm-shortest vector with odd first coordinate,
/// which is compared against the trivial witness `q = 1`. The result is
/// checked exhaustively against the oracle for short words.
pub fn rational_complexity_fast(word: &FiniteWord) -> Result<RationalApproximation> {
    require_nonempty(word)?;
    let n = word.len();
    let trivial = {
        let s = word.evaluate2();
        let modulus = BigUint::one() << n;
        if s > (BigUint::one() << (n - 1)) {
            -BigInt::from(modulus - s)
        } else {
            BigInt::from(s)
        }
    };
    let found = if n <= 56 {
        let s = word.to_u64().expect("n <= 56") as i128;
        lattice_search::<i128>(s, 1i128 << n).map(|(q, f)| (BigInt::from(q), BigInt::from(f)))
    } else {
        lattice_search::<BigInt>(BigInt::from(word.evaluate2()), BigInt::one() << n)
    };
    let Some((q, f)) = found else {
        return rational_complexity(word);
    };
    let one = BigInt::one();
    let pick = if candidate_key(&q, &f) <= candidate_key(&one, &trivial) {
        (q, f)
    } else {
        (one, trivial)
    };
    let q = pick.0.to_biguint().expect("q is positive");
    Ok(RationalApproximation::new(q, pick.1))
}

/// Nth 2-adic complexity `log2 Λ(S_N)`.
#[allow(non_snake_case)]
pub fn adic_complexity_N(word: &FiniteWord) -> Result<f64> {
    Ok(rational_complexity(word)?.log2_norm())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetricRational {
    pub forward: RationalApproximation,
    pub reverse: RationalApproximation,
    #[serde(serialize_with = "serde_big::uint")]
    pub min_norm: BigUint,
}

/// `Λ^sym(S_N) = min(Λ(S_N), Λ(S_N^rev))`; defined for `N >= 2`.
pub fn symmetric_rational_complexity(word: &FiniteWord) -> Result<SymmetricRational> {
    if word.len() < 2 {
        return Err(Error::precondition("the symmetric rational complexity needs N >= 2"));
    }
    let forward = rational_complexity(word)?;
    let reverse = rational_complexity(&word.reverse())?;
    let min_norm = forward.norm.clone().min(reverse.norm.clone());
    Ok(SymmetricRational {
        forward,
        reverse,
        min_norm,
    })
}

/// Linear complexity profile `L(S_1), ..., L(S_N)` and a shortest recurrence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityProfile {
    pub entries: Vec<usize>,
    /// `c_0, ..., c_L` with `c_L = 1` and `sum_l c_l s_{n+l} = 0` for `n < N - L`.
    pub recurrence: Vec<u8>,
}

impl ComplexityProfile {
    pub fn final_complexity(&self) -> usize {
        self.entries.last().copied().unwrap_or(0)
    }

    /// Non-decreasing, and each increase at step `k+1` lands on `k+1 - L(S_k)`.
    pub fn obeys_jump_rule(&self) -> bool {
        let mut prev = 0usize;
        for (k, &l) in self.entries.iter().enumerate() {
            if l != prev && l != k + 1 - prev.min(k + 1) {
                return false;
            }
            if l < prev {
                return false;
            }
            prev = l;
        }
        true
    }

    /// Whether the stored recurrence generates `word`.
    pub fn recurrence_generates(&self, word: &FiniteWord) -> bool {
        let l = self.recurrence.len() - 1;
        if self.recurrence[l] != 1 || l > word.len() {
            return false;
        }
        (0..word.len() - l).all(|n| (0..=l).filter(|&j| self.recurrence[j] == 1 && word.bit(n + j)).count() % 2 == 0)
    }
}

impl fmt::Display for ComplexityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Berlekamp–Massey over GF(2), recording `L` after every prefix.
///
/// `conn` is the connection polynomial `1 + C_1 x + ... + C_L x^L` with
/// `s_n = sum_{i=1}^{L} C_i s_{n-i}`; `window` holds `s_n, s_{n-1}, ..., s_0`
/// as coefficients of `x^0, x^1, ...` so the discrepancy is one dot product.
pub fn bm_profile(word: &FiniteWord) -> Result<ComplexityProfile> {
    require_nonempty(word)?;
    let mut conn = Gf2Poly::one();
    let mut prev = Gf2Poly::one();
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut window = Gf2Poly::zero();
    let mut entries = Vec::with_capacity(word.len());
    for (n, bit) in word.iter().enumerate() {
        window.shift_in(bit);
        if conn.dot(&window) {
            if 2 * len <= n {
                let saved = conn.clone();
                conn.add_shifted(&prev, shift);
                len = n + 1 - len;
                prev = saved;
                shift = 1;
            } else {
                conn.add_shifted(&prev, shift);
                shift += 1;
            }
        } else {
            shift += 1;
        }
        entries.push(len);
    }
    let recurrence = (0..=len).map(|l| u8::from(conn.coeff(len - l))).collect();
    Ok(ComplexityProfile { entries, recurrence })
}

/// `L(S_N)` of the `n`-bit word `bits` (bit `i` is `s_i`), `1 <= n <= 63`.
pub fn linear_complexity_u64(bits: u64, n: u32) -> u32 {
    let mut conn = 1u64;
    let mut prev = 1u64;
    let mut len = 0u32;
    let mut shift = 1u32;
    let mut window = 0u64;
    for i in 0..n {
        window = (window << 1) | ((bits >> i) & 1);
        if (conn & window).count_ones() & 1 == 1 {
            let saved = conn;
            conn ^= prev << shift;
            if 2 * len <= i {
                len = i + 1 - len;
                prev = saved;
                shift = 1;
            } else {
                shift += 1;
            }
        } else {
            shift += 1;
        }
    }
    len
}

/// Nth linear complexity `L(S_N)`.
#[allow(non_snake_case)]
pub fn linear_complexity_N(word: &FiniteWord) -> Result<usize> {
    Ok(bm_profile(word)?.final_complexity())
}

/// `L^sym(S_N) = min(L(S_N), L(S_N^rev))`.
#[allow(non_snake_case)]
pub fn symmetric_linear_complexity_N(word: &FiniteWord) -> Result<usize> {
    Ok(linear_complexity_N(word)?.min(linear_complexity_N(&word.reverse())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> FiniteWord {
        s.parse().unwrap()
    }

    fn norm(s: &str) -> u64 {
        rational_complexity(&w(s)).unwrap().norm.to_u64().unwrap()
    }

    /// Independent definition-level search: all odd q up to 2^N, all f in
    /// the residue class with |f| <= 2^N.
    fn brute_lambda(s: u64, n: u32) -> u64 {
        let m = 1i64 << n;
        let mut best = u64::MAX;
        for q in (1..m).step_by(2) {
            let r = (q * s as i64).rem_euclid(m);
            for f in [r - m, r] {
                best = best.min((q as u64).max(f.unsigned_abs()));
            }
        }
        best
    }

    /// Shortest recurrence with c_L = 1, by trying every coefficient vector.
    fn brute_linear_complexity(bits: &[u8]) -> usize {
        let n = bits.len();
        for l in 0..=n {
            for mask in 0u32..1 << l {
                let ok = (0..n - l).all(|i| {
                    let mut acc = bits[i + l];
                    for j in 0..l {
                        acc ^= ((mask >> j) & 1) as u8 & bits[i + j];
                    }
                    acc == 0
                });
                if ok {
                    return l;
                }
            }
        }
        unreachable!("L = N always works")
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(norm("0000000"), 1);
        assert_eq!(norm("0001"), 8);
        assert_eq!(norm("110"), 3);
        assert_eq!(norm("01"), 2);
        assert_eq!(norm("11"), 1);
        let zero = rational_complexity(&w("00000")).unwrap();
        assert_eq!((zero.q.clone(), zero.f.clone()), (BigUint::one(), BigInt::zero()));
        let eleven = rational_complexity(&w("11")).unwrap();
        assert_eq!(eleven.f, BigInt::from(-1));
        assert!(rational_complexity(&FiniteWord::zeros(0)).is_err());
    }

    #[test]
    fn oracle_matches_definition_search() {
        for n in 1..=10u32 {
            for s in 0..1u64 << n {
                assert_eq!(rational_norm_u64(s, n), brute_lambda(s, n), "s = {s}, n = {n}");
            }
        }
    }

    #[test]
    fn witness_tie_break_is_positive() {
        // s = 2^{N-1}: every odd q gives f = ±2^{N-1}
        let a = rational_complexity(&w("0001")).unwrap();
        assert_eq!(a.q, BigUint::one());
        assert_eq!(a.f, BigInt::from(8));
    }

    #[test]
    fn wide_words_use_consistent_paths() {
        // Λ for a word with a tiny witness stays cheap at any length.
        for n in [63usize, 64, 65, 127, 128, 129, 200] {
            let word = FiniteWord::from_fn(n, |i| i < 3 || i % 2 == 1);
            let exact = rational_complexity(&word).unwrap();
            assert!(exact.witnesses(&word), "n = {n}");
            let fast = rational_complexity_fast(&word).unwrap();
            assert!(fast.witnesses(&word));
            assert!(fast.norm >= exact.norm);
        }
        // -1 = 111...1 has Λ = 1 at every length
        for n in [64usize, 100, 128, 300] {
            let ones = FiniteWord::ones(n);
            assert_eq!(rational_complexity(&ones).unwrap().norm, BigUint::one());
            assert_eq!(rational_complexity_fast(&ones).unwrap().norm, BigUint::one());
        }
    }

    #[test]
    fn fast_path_examples() {
        assert_eq!(rational_complexity_fast(&w("01")).unwrap().norm, BigUint::from(2u32));
        assert_eq!(rational_complexity_fast(&w("11")).unwrap().norm, BigUint::one());
    }

    #[test]
    fn fast_path_matches_oracle_exhaustively() {
        for n in 1..=16usize {
            for s in 0..1u64 << n {
                let word = FiniteWord::from_u64(s, n).unwrap();
                let fast = rational_complexity_fast(&word).unwrap();
                assert_eq!(
                    fast.norm.to_u64().unwrap(),
                    rational_norm_u64(s, n as u32),
                    "s = {s}, n = {n}"
                );
                assert!(fast.witnesses(&word));
            }
        }
    }

    #[test]
    fn adic_examples() {
        assert_eq!(adic_complexity_N(&w("0000")).unwrap(), 0.0);
        assert_eq!(adic_complexity_N(&w("0001")).unwrap(), 3.0);
        assert_eq!(adic_complexity_N(&w("01")).unwrap(), 1.0);
    }

    #[test]
    fn symmetric_rational_examples() {
        let r = symmetric_rational_complexity(&w("0001")).unwrap();
        assert_eq!(r.forward.norm, BigUint::from(8u32));
        assert_eq!(r.reverse.norm, BigUint::one());
        assert_eq!(r.min_norm, BigUint::one());
        // (0,1,1) evaluates to 6 ≡ -2 (mod 8), so q = 1 already gives norm 2
        let r = symmetric_rational_complexity(&w("110")).unwrap();
        assert_eq!(
            (r.forward.norm.clone(), r.reverse.norm.clone()),
            (3u32.into(), 2u32.into())
        );
        assert_eq!(r.min_norm, BigUint::from(2u32));
        let r = symmetric_rational_complexity(&w("10101")).unwrap();
        assert_eq!(r.forward.norm, r.reverse.norm);
        assert!(symmetric_rational_complexity(&w("1")).is_err());
    }

    #[test]
    fn profile_examples() {
        assert_eq!(bm_profile(&w("0001")).unwrap().entries, vec![0, 0, 0, 4]);
        assert_eq!(bm_profile(&w("1110")).unwrap().entries, vec![1, 1, 1, 3]);
        assert_eq!(bm_profile(&w("00000")).unwrap().entries, vec![0; 5]);
        assert_eq!(bm_profile(&w("00000")).unwrap().recurrence, vec![1]);
        assert_eq!(bm_profile(&w("0001")).unwrap().to_string(), "0,0,0,4");
        assert!(bm_profile(&FiniteWord::zeros(0)).is_err());
    }

    #[test]
    fn linear_complexity_examples() {
        assert_eq!(linear_complexity_N(&w("01")).unwrap(), 2);
        assert_eq!(linear_complexity_N(&w("10")).unwrap(), 1);
        assert_eq!(linear_complexity_N(&w("11")).unwrap(), 1);
        assert_eq!(bm_profile(&w("10")).unwrap().recurrence, vec![0, 1]);
        assert_eq!(symmetric_linear_complexity_N(&w("01")).unwrap(), 1);
        assert_eq!(symmetric_linear_complexity_N(&w("0001")).unwrap(), 1);
        assert_eq!(brute_linear_complexity(&[1, 0, 0, 0]), 1);
        assert_eq!(
            symmetric_linear_complexity_N(&w("0110")).unwrap(),
            linear_complexity_N(&w("0110")).unwrap()
        );
    }

    #[test]
    fn bm_matches_brute_force_search() {
        for n in 1..=10usize {
            for s in 0..1u64 << n {
                let word = FiniteWord::from_u64(s, n).unwrap();
                let profile = bm_profile(&word).unwrap();
                let bits = word.to_bits();
                assert_eq!(profile.final_complexity(), brute_linear_complexity(&bits), "{word}");
                assert_eq!(linear_complexity_u64(s, n as u32) as usize, profile.final_complexity());
                assert!(profile.obeys_jump_rule(), "{word}: {profile}");
                assert!(profile.recurrence_generates(&word), "{word}");
                for k in 1..=n {
                    assert_eq!(profile.entries[k - 1], brute_linear_complexity(&bits[..k]));
                }
            }
        }
    }

    #[test]
    fn lambda_is_monotone_in_prefix_length() {
        for n in 2..=12u32 {
            for s in 0..1u64 << n {
                let full = rational_norm_u64(s, n);
                for k in 1..n {
                    assert!(full >= rational_norm_u64(s & ((1 << k) - 1), k));
                }
            }
        }
    }

    #[test]
    fn example_families() {
        for n in 2..=14usize {
            // zeros then a one at k >= N/2: Λ = 2^k, L >= k+1, L(rev) <= N-k
            for k in n.div_ceil(2)..n {
                for tail in 0..1u64 << (n - k - 1) {
                    let s = (1u64 << k) | (tail << (k + 1));
                    let word = FiniteWord::from_u64(s, n).unwrap();
                    assert_eq!(rational_norm_u64(s, n as u32), 1 << k);
                    assert!(linear_complexity_N(&word).unwrap() > k);
                    assert!(linear_complexity_N(&word.reverse()).unwrap() <= n - k);
                }
            }
            // ones then a zero at k >= (N+1)/2
            for k in (n + 1).div_ceil(2)..n {
                for tail in 0..1u64 << (n - k - 1) {
                    let s = ((1u64 << k) - 1) | (tail << (k + 1));
                    let word = FiniteWord::from_u64(s, n).unwrap();
                    let fwd = rational_norm_u64(s, n as u32);
                    let rev = rational_complexity(&word.reverse()).unwrap().norm.to_u64().unwrap();
                    assert!(rev <= 1 << (n - k) && (1 << (n - k)) < fwd);
                    assert!(fwd > 1 << (k - 1));
                    assert!(linear_complexity_N(&word).unwrap() >= k);
                    assert!(linear_complexity_N(&word.reverse()).unwrap() <= n - k + 1);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn witnesses_are_valid(bits in proptest::collection::vec(0u8..2, 1..30)) {
            let word = FiniteWord::from_bits(&bits);
            prop_assert!(rational_complexity(&word).unwrap().witnesses(&word));
            prop_assert!(rational_complexity_fast(&word).unwrap().witnesses(&word));
        }

        #[test]
        fn symmetric_measures_ignore_reversal(bits in proptest::collection::vec(0u8..2, 2..24)) {
            let word = FiniteWord::from_bits(&bits);
            let rev = word.reverse();
            prop_assert_eq!(
                symmetric_rational_complexity(&word).unwrap().min_norm,
                symmetric_rational_complexity(&rev).unwrap().min_norm
            );
            prop_assert_eq!(
                symmetric_linear_complexity_N(&word).unwrap(),
                symmetric_linear_complexity_N(&rev).unwrap()
            );
        }

        #[test]
        fn packed_bm_matches_general(s in any::<u64>(), n in 1u32..=63) {
            let s = s & ((1u64 << n) - 1);
            let word = FiniteWord::from_u64(s, n as usize).unwrap();
            prop_assert_eq!(linear_complexity_u64(s, n) as usize, linear_complexity_N(&word).unwrap());
        }
    }
}
