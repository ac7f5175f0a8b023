//! Measures of periodic sequences.
//!
//! For a `T`-periodic sequence with initial vector `S_T`, the connection
//! integer is `(2^T - 1) / gcd(2^T - 1, S_T(2))` and the 2-adic complexity is
//! its base-2 logarithm. All comparisons between complexities are made on the
//! exact connection integers; the float logarithm is only for display.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::aperiodic::log2_big;
use crate::bitseq::{FiniteWord, PeriodicSequence};
use crate::error::{Error, Result};
pub use crate::gf2::Gf2Poly;
use crate::numtheory::{self, gcd_u64};
use crate::serde_big;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicAdicReport {
    #[serde(rename = "T")]
    pub period: usize,
    /// `S_T(2)`
    #[serde(serialize_with = "serde_big::uint")]
    pub value: BigUint,
    /// `2^T - 1`
    #[serde(serialize_with = "serde_big::uint")]
    pub modulus: BigUint,
    #[serde(serialize_with = "serde_big::uint")]
    pub divisor: BigUint,
    #[serde(serialize_with = "serde_big::uint")]
    pub connection: BigUint,
    pub lambda_bits: f64,
}

pub fn adic_periodic(seq: &PeriodicSequence) -> PeriodicAdicReport {
    let period = seq.period();
    let value = seq.initial().evaluate2();
    let modulus = (BigUint::one() << period) - 1u32;
    // value < 2^T, so (modulus, value) is never (0, 0) for T >= 1
    let divisor = modulus.gcd(&value);
    let connection = &modulus / &divisor;
    let lambda_bits = log2_big(&connection);
    PeriodicAdicReport {
        period,
        value,
        modulus,
        divisor,
        connection,
        lambda_bits,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetricAdicReport {
    pub forward: PeriodicAdicReport,
    pub reverse: PeriodicAdicReport,
    pub min_lambda: f64,
    #[serde(serialize_with = "serde_big::uint")]
    pub min_connection: BigUint,
}

pub fn adic_symmetric_periodic(seq: &PeriodicSequence) -> SymmetricAdicReport {
    let forward = adic_periodic(seq);
    let reverse = adic_periodic(&seq.reverse());
    let (min_connection, min_lambda) = if forward.connection <= reverse.connection {
        (forward.connection.clone(), forward.lambda_bits)
    } else {
        (reverse.connection.clone(), reverse.lambda_bits)
    };
    SymmetricAdicReport {
        forward,
        reverse,
        min_lambda,
        min_connection,
    }
}

/// `deg((x^T - 1) / gcd(x^T - 1, S_T(x)))` over GF(2).
pub fn linear_complexity_periodic(seq: &PeriodicSequence) -> usize {
    let t = seq.period();
    let g = Gf2Poly::x_pow_minus_one(t).gcd(&Gf2Poly::from_word(seq.initial()));
    t - g.degree().expect("gcd with a nonzero polynomial is nonzero")
}

/// Linear complexity is invariant under reversal of a periodic sequence;
/// `false` here would mean a defect.
pub fn verify_reverse_linear_equality(seq: &PeriodicSequence) -> bool {
    linear_complexity_periodic(seq) == linear_complexity_periodic(&seq.reverse())
}

fn bit_length(p: u64) -> usize {
    64 - p.leading_zeros() as usize
}

/// Checks that `p` is an odd non-palindromic prime and returns its reverse.
fn non_palindromic_prime(p: u64) -> Result<u64> {
    if p < 3 || !numtheory::is_prime_u64(p) {
        return Err(Error::precondition(format!("{p} is not an odd prime")));
    }
    let q = numtheory::reverse_bits_u64(p)?;
    if q == p {
        return Err(Error::precondition(format!("{p} is palindromic in base 2")));
    }
    Ok(q)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem1Report {
    pub p: u64,
    pub q: u64,
    pub ord_p: u64,
    pub ord_q: u64,
    #[serde(rename = "T")]
    pub period: usize,
    pub lambda: f64,
    pub lambda_rev: f64,
    #[serde(serialize_with = "serde_big::uint")]
    pub connection: BigUint,
    #[serde(serialize_with = "serde_big::uint")]
    pub connection_rev: BigUint,
    pub ok: bool,
}

/// Initial vector `(s_0, ..., s_{t-1}, 0, ..., 0)` of length `T` from the digits of `p`.
pub fn theorem1_sequence(p: u64, period: usize) -> Result<PeriodicSequence> {
    let t = bit_length(p);
    if period < t {
        return Err(Error::precondition(format!(
            "period {period} is shorter than the {t} binary digits of {p}"
        )));
    }
    PeriodicSequence::new(FiniteWord::from_fn(period, |i| i < t && (p >> i) & 1 == 1))
}

/// Builds the sequence from the digits of a non-palindromic prime `p` and
/// checks `connection(S) = 2^T - 1` and `connection(S) = q * connection(S^rev)`.
/// The orders of 2 are recomputed here, never taken from the caller.
pub fn verify_theorem1(p: u64, period: usize) -> Result<Theorem1Report> {
    let q = non_palindromic_prime(p)?;
    let ord_p = numtheory::mult_order_2_u64(p)?;
    let ord_q = numtheory::mult_order_2_u64(q)?;
    if !(period as u64).is_multiple_of(ord_q) {
        return Err(Error::precondition(format!(
            "T = {period} is not a multiple of ord_q(2) = {ord_q} (q = {q})"
        )));
    }
    if (period as u64).is_multiple_of(ord_p) {
        return Err(Error::precondition(format!(
            "T = {period} is a multiple of ord_p(2) = {ord_p} (p = {p})"
        )));
    }
    let sym = adic_symmetric_periodic(&theorem1_sequence(p, period)?);
    let ok = sym.forward.connection == sym.forward.modulus && sym.forward.connection == &sym.reverse.connection * q;
    Ok(Theorem1Report {
        p,
        q,
        ord_p,
        ord_q,
        period,
        lambda: sym.forward.lambda_bits,
        lambda_rev: sym.reverse.lambda_bits,
        connection: sym.forward.connection,
        connection_rev: sym.reverse.connection,
        ok,
    })
}

/// Smallest `T = k * ord_q(2)`, `1 <= k <= k_max`, not divisible by `ord_p(2)`.
#[allow(non_snake_case)]
pub fn find_valid_T(p: u64, k_max: u64) -> Result<usize> {
    let q = non_palindromic_prime(p)?;
    let ord_p = numtheory::mult_order_2_u64(p)?;
    let ord_q = numtheory::mult_order_2_u64(q)?;
    if ord_q % ord_p == 0 {
        return Err(Error::precondition(format!(
            "ord_p(2) = {ord_p} divides ord_q(2) = {ord_q}: no valid period exists for p = {p}"
        )));
    }
    (1..=k_max)
        .map(|k| k * ord_q)
        .find(|t| t % ord_p != 0)
        .map(|t| t as usize)
        .ok_or_else(|| Error::precondition(format!("no valid period for p = {p} with k <= {k_max}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Remark6Variant {
    /// `S_T(2) = 2^k q` with `2^{T-k-1} < q < 2^{T-k}`.
    A,
    /// `S_T(2) = 2^k - 1 + 2^k q` with `q < 2^{T-k-1}`.
    B,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Remark6Report {
    #[serde(serialize_with = "serde_big::uint")]
    pub value: BigUint,
    #[serde(serialize_with = "serde_big::uint")]
    pub reverse_value: BigUint,
    /// The reverse value stated alongside the construction:
    /// `q` for variant A, `q + 2^{T-k}(2^k - 1)` for variant B.
    #[serde(serialize_with = "serde_big::uint")]
    pub stated_reverse_value: BigUint,
    pub reverse_value_matches: bool,
    #[serde(serialize_with = "serde_big::uint")]
    pub connection: BigUint,
    #[serde(serialize_with = "serde_big::uint")]
    pub connection_rev: BigUint,
    pub lambda_equal: bool,
}

/// Initial vector of the palindromic-core families.
pub fn remark6_sequence(q_pal: u64, k: usize, period: usize, variant: Remark6Variant) -> Result<PeriodicSequence> {
    if q_pal.is_multiple_of(2) || numtheory::reverse_bits_u64(q_pal)? != q_pal {
        return Err(Error::precondition(format!("{q_pal} is not an odd base-2 palindrome")));
    }
    if k >= period {
        return Err(Error::precondition(format!("k = {k} must be below T = {period}")));
    }
    let free = period - k;
    let q = BigUint::from(q_pal);
    let value = match variant {
        Remark6Variant::A => {
            if bit_length(q_pal) != free {
                return Err(Error::precondition(format!(
                    "variant A needs 2^(T-k-1) < q < 2^(T-k), i.e. q with exactly {free} digits"
                )));
            }
            q << k
        }
        Remark6Variant::B => {
            if bit_length(q_pal) >= free {
                return Err(Error::precondition(format!(
                    "variant B needs q < 2^(T-k-1), i.e. q with fewer than {free} digits"
                )));
            }
            ((BigUint::one() << k) - 1u32) + (q << k)
        }
    };
    PeriodicSequence::from_natural(&value, period)
}

/// Compares the periodic 2-adic complexity of a palindromic-core sequence
/// and its reversal, and checks the stated closed form of the reverse value.
pub fn verify_remark6(q_pal: u64, k: usize, period: usize, variant: Remark6Variant) -> Result<Remark6Report> {
    let seq = remark6_sequence(q_pal, k, period, variant)?;
    let sym = adic_symmetric_periodic(&seq);
    let q = BigUint::from(q_pal);
    let stated_reverse_value = match variant {
        Remark6Variant::A => q,
        Remark6Variant::B => q + (((BigUint::one() << k) - 1u32) << (period - k)),
    };
    Ok(Remark6Report {
        reverse_value_matches: stated_reverse_value == sym.reverse.value,
        value: sym.forward.value,
        reverse_value: sym.reverse.value,
        stated_reverse_value,
        lambda_equal: sym.forward.connection == sym.reverse.connection,
        connection: sym.forward.connection,
        connection_rev: sym.reverse.connection,
    })
}

/// For a Mersenne prime `2^T - 1` every non-constant `T`-periodic sequence
/// has connection integer `2^T - 1`; checked over all `2^T - 2` vectors.
pub fn verify_mersenne_maximality(period: u32) -> Result<bool> {
    if !(2..=17).contains(&period) {
        return Err(Error::precondition(format!(
            "exhaustive Mersenne check supports 2 <= T <= 17, got {period}"
        )));
    }
    let modulus = (1u64 << period) - 1;
    if !numtheory::is_prime_u64(u64::from(period)) || !numtheory::is_prime_u64(modulus) {
        return Err(Error::precondition(format!("2^{period} - 1 is not a Mersenne prime")));
    }
    Ok((1..modulus)
        .into_par_iter()
        .all(|v| modulus / gcd_u64(modulus, v) == modulus))
}
