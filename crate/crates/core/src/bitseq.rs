//! Finite binary words and periodic sequences.
//!
//! A [`FiniteWord`] stores `s_0, s_1, ..., s_{N-1}` packed into 64-bit limbs,
//! least significant bit of limb 0 first. Its textual form lists the bits in
//! index order, so `"1101"` is the word `(1,1,0,1)` whose radix-2 value is 11.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const LIMB_BITS: usize = 64;

fn limbs_for(len: usize) -> usize {
    len.div_ceil(LIMB_BITS)
}

/// A finite binary word with explicit length.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FiniteWord {
    limbs: Vec<u64>,
    len: usize,
}

impl FiniteWord {
    /// The all-zero word of length `len`.
    pub fn zeros(len: usize) -> Self {
        FiniteWord {
            limbs: vec![0; limbs_for(len)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        Self::from_fn(len, |_| true)
    }

    pub fn from_fn(len: usize, mut bit: impl FnMut(usize) -> bool) -> Self {
        let mut limbs = vec![0u64; limbs_for(len)];
        for i in 0..len {
            if bit(i) {
                limbs[i / LIMB_BITS] |= 1 << (i % LIMB_BITS);
            }
        }
        FiniteWord { limbs, len }
    }

    /// Builds a word from a slice of 0/1 values. Any nonzero entry counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        Self::from_fn(bits.len(), |i| bits[i] != 0)
    }

    /// The word whose radix-2 value is `value`, zero-padded to `len` bits.
    /// Bits of `value` at or above `len` must be clear.
    pub fn from_u64(value: u64, len: usize) -> Result<Self> {
        if len < 64 && value >> len != 0 {
            return Err(Error::precondition(format!("value {value} does not fit in {len} bits")));
        }
        let mut w = Self::zeros(len);
        if len > 0 {
            w.limbs[0] = value;
        }
        Ok(w)
    }

    /// Inverse of [`FiniteWord::evaluate2`]; rejects `value >= 2^len`.
    pub fn from_natural(value: &BigUint, len: usize) -> Result<Self> {
        if value.bits() > len as u64 {
            return Err(Error::precondition(format!("value {value} does not fit in {len} bits")));
        }
        let mut w = Self::zeros(len);
        for (limb, digit) in w.limbs.iter_mut().zip(value.iter_u64_digits()) {
            *limb = digit;
        }
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit `s_i`. Panics if `i >= len`.
    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.limbs[i / LIMB_BITS] >> (i % LIMB_BITS)) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.bit(i))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }

    pub fn count_ones(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    /// `(s_{N-1}, ..., s_1, s_0)`.
    pub fn reverse(&self) -> Self {
        let n = self.len;
        Self::from_fn(n, |i| self.bit(n - 1 - i))
    }

    pub fn is_palindrome(&self) -> bool {
        *self == self.reverse()
    }

    /// The prefix `(s_0, ..., s_{n-1})`.
    pub fn prefix(&self, n: usize) -> Self {
        assert!(n <= self.len);
        Self::from_fn(n, |i| self.bit(i))
    }

    /// Concatenation `self || other`.
    pub fn concat(&self, other: &FiniteWord) -> Self {
        let n = self.len;
        Self::from_fn(n + other.len, |i| if i < n { self.bit(i) } else { other.bit(i - n) })
    }

    /// Radix-2 value `sum s_n 2^n`; the empty word evaluates to 0.
    pub fn evaluate2(&self) -> BigUint {
        let digits: Vec<u32> = self.limbs.iter().flat_map(|&l| [l as u32, (l >> 32) as u32]).collect();
        BigUint::new(digits)
    }

    /// Radix-2 value as a machine word, available when `len <= 64`.
    pub fn to_u64(&self) -> Option<u64> {
        match self.len {
            0 => Some(0),
            1..=64 => Some(self.limbs[0]),
            _ => None,
        }
    }

    /// Radix-2 value as a 128-bit machine word, available when `len <= 128`.
    pub fn to_u128(&self) -> Option<u128> {
        match self.len {
            0 => Some(0),
            1..=64 => Some(self.limbs[0] as u128),
            65..=128 => Some(self.limbs[0] as u128 | (self.limbs[1] as u128) << 64),
            _ => None,
        }
    }

    /// Parses the "bits" form (`0`/`1` characters, `s_0` first) or the
    /// "nat" form `v/N` (optionally prefixed by `nat:`).
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim_end_matches(['\n', '\r']);
        if trimmed.is_empty() {
            return Err(Error::parse(0, "empty sequence"));
        }
        let (offset, body) = match trimmed.strip_prefix("nat:") {
            Some(rest) => (4, rest),
            None => (0, trimmed),
        };
        if offset > 0 || body.contains('/') {
            return parse_nat(body, offset);
        }
        let bits = body.strip_prefix("bits:").unwrap_or(body);
        let shift = body.len() - bits.len();
        let mut out = Vec::with_capacity(bits.len());
        for (i, c) in bits.chars().enumerate() {
            match c {
                '0' => out.push(0),
                '1' => out.push(1),
                other => return Err(Error::parse(shift + i, format!("expected '0' or '1', found {other:?}"))),
            }
        }
        if out.is_empty() {
            return Err(Error::parse(shift, "empty sequence"));
        }
        Ok(Self::from_bits(&out))
    }

    /// The "nat" text form `v/N`.
    pub fn to_nat_string(&self) -> String {
        format!("{}/{}", self.evaluate2(), self.len)
    }
}

fn parse_nat(body: &str, offset: usize) -> Result<FiniteWord> {
    let Some(slash) = body.find('/') else {
        return Err(Error::parse(offset + body.len(), "expected '/N' after the value"));
    };
    let (value, len) = (&body[..slash], &body[slash + 1..]);
    if let Some(bad) = value.chars().position(|c| !c.is_ascii_digit()) {
        return Err(Error::parse(offset + bad, "expected a decimal digit"));
    }
    if value.is_empty() {
        return Err(Error::parse(offset, "missing value before '/'"));
    }
    if let Some(bad) = len.chars().position(|c| !c.is_ascii_digit()) {
        return Err(Error::parse(offset + slash + 1 + bad, "expected a decimal digit"));
    }
    let n: usize = len
        .parse()
        .map_err(|_| Error::parse(offset + slash + 1, "invalid length"))?;
    if n == 0 {
        return Err(Error::parse(offset + slash + 1, "length must be positive"));
    }
    let v: BigUint = value.parse().map_err(|_| Error::parse(offset, "invalid value"))?;
    FiniteWord::from_natural(&v, n).map_err(|_| Error::parse(offset, format!("value {v} does not fit in {n} bits")))
}

impl FromStr for FiniteWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteWord({self})")
    }
}

impl Serialize for FiniteWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FiniteWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        if text.is_empty() {
            return Ok(FiniteWord::default());
        }
        FiniteWord::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// A sequence with `s_{n+T} = s_n`, given by its initial vector of length `T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicSequence {
    initial: FiniteWord,
}

impl PeriodicSequence {
    pub fn new(initial: FiniteWord) -> Result<Self> {
        if initial.is_empty() {
            return Err(Error::precondition("period must be at least 1"));
        }
        Ok(PeriodicSequence { initial })
    }

    /// The `T`-periodic sequence whose initial vector has radix-2 value `value`.
    pub fn from_natural(value: &BigUint, period: usize) -> Result<Self> {
        Self::new(FiniteWord::from_natural(value, period)?)
    }

    pub fn period(&self) -> usize {
        self.initial.len()
    }

    pub fn initial(&self) -> &FiniteWord {
        &self.initial
    }

    /// The sequence with initial vector `(s_{T-1}, ..., s_0)`.
    pub fn reverse(&self) -> Self {
        PeriodicSequence {
            initial: self.initial.reverse(),
        }
    }

    /// `s_0, ..., s_{n-1}` by periodic extension.
    pub fn expand(&self, n: usize) -> FiniteWord {
        let t = self.period();
        FiniteWord::from_fn(n, |i| self.initial.bit(i % t))
    }
}
