//! Explicit sequence families and checks of the (in)equalities claimed for them.
//!
//! A family is selected by name and parameterized by `key=value` pairs:
//!
//! | family      | keys              | object                                   |
//! |-------------|-------------------|------------------------------------------|
//! | `intro21`   | `T`               | `T`-periodic, `S_T = (1,1,0,1,0,...,0)`  |
//! | `theorem1`  | `p`, `T`          | `T`-periodic, digits of the prime `p`    |
//! | `example1`  | `N`, `k`, `tail`  | `(0,...,0,1, tail)`, `k` zeros           |
//! | `example2`  | `N`, `k`, `tail`  | `(1,...,1,0, tail)`, `k` ones            |
//! | `example3`  | as `example1`     | same word, linear complexity claims      |
//! | `example4`  | as `example2`     | same word, linear complexity claims      |
//! | `remark5`   | none              | 18-periodic with `S_T(2) = 10731`        |
//! | `remark6A`  | `q`, `k`, `T`     | `S_T(2) = 2^k q`                         |
//! | `remark6B`  | `q`, `k`, `T`     | `S_T(2) = 2^k - 1 + 2^k q`               |
//!
//! `tail` is a bit string of length `N - k - 1`; it defaults to all zeros.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use serde_json::{json, Value};

use crate::aperiodic::{bm_profile, rational_complexity, rational_complexity_fast, RationalApproximation};
use crate::bitseq::{FiniteWord, PeriodicSequence};
use crate::error::{Error, Result};
use crate::numtheory;
use crate::periodic::{self, adic_symmetric_periodic, Remark6Variant};

/// Above this length `Λ` is computed by the lattice method instead of the
/// exhaustive search, whose cost grows like `Λ`.
const ORACLE_MAX_N: usize = 28;

/// Longest word accepted by the example families.
pub const EXAMPLE_MAX_N: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    #[serde(rename = "intro21")]
    Intro21,
    #[serde(rename = "theorem1")]
    Theorem1,
    #[serde(rename = "example1")]
    Example1,
    #[serde(rename = "example2")]
    Example2,
    #[serde(rename = "example3")]
    Example3,
    #[serde(rename = "example4")]
    Example4,
    #[serde(rename = "remark5")]
    Remark5,
    #[serde(rename = "remark6A")]
    Remark6A,
    #[serde(rename = "remark6B")]
    Remark6B,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Intro21,
        Family::Theorem1,
        Family::Example1,
        Family::Example2,
        Family::Example3,
        Family::Example4,
        Family::Remark5,
        Family::Remark6A,
        Family::Remark6B,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Intro21 => "intro21",
            Family::Theorem1 => "theorem1",
            Family::Example1 => "example1",
            Family::Example2 => "example2",
            Family::Example3 => "example3",
            Family::Example4 => "example4",
            Family::Remark5 => "remark5",
            Family::Remark6A => "remark6A",
            Family::Remark6B => "remark6B",
        }
    }

    /// Whether the family is a finite word with a free tail.
    pub fn has_tail(self) -> bool {
        matches!(
            self,
            Family::Example1 | Family::Example2 | Family::Example3 | Family::Example4
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::parse(0, format!("unknown family {s:?}")))
    }
}

/// A validated family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Intro21 {
        period: usize,
    },
    Theorem1 {
        p: u64,
        period: usize,
    },
    /// Examples 1 and 3 share the word `(0^k, 1, tail)`.
    ZerosThenOne {
        family: Family,
        n: usize,
        k: usize,
        tail: FiniteWord,
    },
    /// Examples 2 and 4 share the word `(1^k, 0, tail)`.
    OnesThenZero {
        family: Family,
        n: usize,
        k: usize,
        tail: FiniteWord,
    },
    Remark5,
    Remark6 {
        variant: Remark6Variant,
        q_pal: u64,
        k: usize,
        period: usize,
    },
}

/// What [`FamilySpec::build`] produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Built {
    Word(FiniteWord),
    Periodic(PeriodicSequence),
}

impl Built {
    pub fn word(&self) -> &FiniteWord {
        match self {
            Built::Word(w) => w,
            Built::Periodic(p) => p.initial(),
        }
    }
}

fn get<'a>(pairs: &'a [(String, String)], key: &str) -> Option<&'a str> {
    pairs.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn require_int<T: FromStr>(pairs: &[(String, String)], key: &str) -> Result<T> {
    let raw = get(pairs, key).ok_or_else(|| Error::precondition(format!("missing parameter {key}")))?;
    raw.trim()
        .parse()
        .map_err(|_| Error::parse(0, format!("parameter {key}={raw:?} is not a non-negative integer")))
}

/// Splits `"k=v"` items, rejecting items without `=`.
pub fn parse_pairs<S: AsRef<str>>(items: &[S]) -> Result<Vec<(String, String)>> {
    items
        .iter()
        .map(|item| {
            let item = item.as_ref();
            item.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::parse(0, format!("expected key=value, got {item:?}")))
        })
        .collect()
}

impl FamilySpec {
    /// Validates parameters for `family`. Unknown keys are rejected.
    pub fn from_pairs(family: Family, pairs: &[(String, String)]) -> Result<Self> {
        let allowed: &[&str] = match family {
            Family::Intro21 => &["T"],
            Family::Theorem1 => &["p", "T"],
            Family::Example1 | Family::Example2 | Family::Example3 | Family::Example4 => &["N", "k", "tail"],
            Family::Remark5 => &[],
            Family::Remark6A | Family::Remark6B => &["q", "k", "T"],
        };
        if let Some((k, _)) = pairs.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            return Err(Error::precondition(format!(
                "{family} does not take parameter {k} (accepted: {})",
                allowed.join(", ")
            )));
        }
        let spec = match family {
            Family::Intro21 => FamilySpec::Intro21 {
                period: require_int(pairs, "T")?,
            },
            Family::Theorem1 => FamilySpec::Theorem1 {
                p: require_int(pairs, "p")?,
                period: require_int(pairs, "T")?,
            },
            Family::Example1 | Family::Example2 | Family::Example3 | Family::Example4 => {
                let n: usize = require_int(pairs, "N")?;
                let k: usize = require_int(pairs, "k")?;
                let tail_len = n
                    .checked_sub(k + 1)
                    .ok_or_else(|| Error::precondition(format!("{family} needs k <= N - 1, got N = {n}, k = {k}")))?;
                let tail = match get(pairs, "tail") {
                    None => FiniteWord::zeros(tail_len),
                    Some(text) => parse_tail(text, tail_len)?,
                };
                FamilySpec::example(family, n, k, tail)?
            }
            Family::Remark5 => FamilySpec::Remark5,
            Family::Remark6A | Family::Remark6B => FamilySpec::Remark6 {
                variant: if family == Family::Remark6A {
                    Remark6Variant::A
                } else {
                    Remark6Variant::B
                },
                q_pal: require_int(pairs, "q")?,
                k: require_int(pairs, "k")?,
                period: require_int(pairs, "T")?,
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    /// An example-family member with an explicit tail of length `N - k - 1`.
    pub fn example(family: Family, n: usize, k: usize, tail: FiniteWord) -> Result<Self> {
        if !family.has_tail() {
            return Err(Error::precondition(format!("{family} is not an example family")));
        }
        let spec = match family {
            Family::Example1 | Family::Example3 => FamilySpec::ZerosThenOne { family, n, k, tail },
            _ => FamilySpec::OnesThenZero { family, n, k, tail },
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn family(&self) -> Family {
        match self {
            FamilySpec::Intro21 { .. } => Family::Intro21,
            FamilySpec::Theorem1 { .. } => Family::Theorem1,
            FamilySpec::ZerosThenOne { family, .. } | FamilySpec::OnesThenZero { family, .. } => *family,
            FamilySpec::Remark5 => Family::Remark5,
            FamilySpec::Remark6 {
                variant: Remark6Variant::A,
                ..
            } => Family::Remark6A,
            FamilySpec::Remark6 {
                variant: Remark6Variant::B,
                ..
            } => Family::Remark6B,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Intro21 { period } if *period < 4 => {
                Err(Error::precondition(format!("intro21 needs T >= 4, got T = {period}")))
            }
            FamilySpec::ZerosThenOne { family, n, k, tail } | FamilySpec::OnesThenZero { family, n, k, tail } => {
                let zeros_first = matches!(self, FamilySpec::ZerosThenOne { .. });
                if *n > EXAMPLE_MAX_N || *n < 2 {
                    return Err(Error::precondition(format!(
                        "{family} supports 2 <= N <= {EXAMPLE_MAX_N}, got N = {n}"
                    )));
                }
                if *k >= *n {
                    return Err(Error::precondition(format!(
                        "{family} needs k <= N - 1, got N = {n}, k = {k}"
                    )));
                }
                if zeros_first && 2 * k < *n {
                    return Err(Error::precondition(format!(
                        "{family} needs k >= N/2, got N = {n}, k = {k}"
                    )));
                }
                if !zeros_first && 2 * k < n + 1 {
                    return Err(Error::precondition(format!(
                        "{family} needs k >= (N+1)/2, got N = {n}, k = {k}"
                    )));
                }
                if tail.len() != n - k - 1 {
                    return Err(Error::precondition(format!(
                        "{family} tail must have N - k - 1 = {} bits, got {}",
                        n - k - 1,
                        tail.len()
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// The word or periodic sequence of the construction.
    pub fn build(&self) -> Result<Built> {
        self.validate()?;
        Ok(match self {
            FamilySpec::Intro21 { period } => {
                Built::Periodic(PeriodicSequence::from_natural(&BigUint::from(11u32), *period)?)
            }
            FamilySpec::Theorem1 { p, period } => Built::Periodic(periodic::theorem1_sequence(*p, *period)?),
            FamilySpec::ZerosThenOne { k, tail, .. } => {
                Built::Word(FiniteWord::from_fn(*k + 1, |i| i == *k).concat(tail))
            }
            FamilySpec::OnesThenZero { k, tail, .. } => {
                Built::Word(FiniteWord::from_fn(*k + 1, |i| i < *k).concat(tail))
            }
            FamilySpec::Remark5 => Built::Periodic(PeriodicSequence::from_natural(&BigUint::from(10731u32), 18)?),
            FamilySpec::Remark6 {
                variant,
                q_pal,
                k,
                period,
            } => Built::Periodic(periodic::remark6_sequence(*q_pal, *k, *period, *variant)?),
        })
    }
}

fn parse_tail(text: &str, len: usize) -> Result<FiniteWord> {
    let tail = if text.is_empty() {
        FiniteWord::zeros(0)
    } else {
        FiniteWord::parse(text)?
    };
    if tail.len() != len {
        return Err(Error::precondition(format!(
            "tail must have N - k - 1 = {len} bits, got {}",
            tail.len()
        )));
    }
    Ok(tail)
}

/// Every tail of length `len`, in order of radix-2 value.
pub fn all_tails(len: usize) -> impl Iterator<Item = FiniteWord> {
    assert!(len < 64, "exhaustive tails need len < 64");
    (0..1u64 << len).map(move |v| FiniteWord::from_u64(v, len).expect("value fits"))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim {
    pub claim: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyReport {
    pub family: Family,
    /// The constructed word, or the initial vector of the periodic sequence.
    pub sequence: String,
    pub values: serde_json::Map<String, Value>,
    pub claims: Vec<Claim>,
    pub all_hold: bool,
}

struct ReportBuilder {
    values: serde_json::Map<String, Value>,
    claims: Vec<Claim>,
}

impl ReportBuilder {
    fn new() -> Self {
        ReportBuilder {
            values: serde_json::Map::new(),
            claims: Vec::new(),
        }
    }

    fn value(&mut self, key: &str, v: impl Into<Value>) {
        self.values.insert(key.to_string(), v.into());
    }

    fn claim(&mut self, claim: impl Into<String>, holds: bool) {
        self.claims.push(Claim {
            claim: claim.into(),
            holds,
        });
    }

    fn finish(self, family: Family, built: &Built) -> FamilyReport {
        let all_hold = self.claims.iter().all(|c| c.holds);
        FamilyReport {
            family,
            sequence: built.word().to_string(),
            values: self.values,
            claims: self.claims,
            all_hold,
        }
    }
}

fn big(v: &BigUint) -> Value {
    match v.to_u64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn lambda(word: &FiniteWord) -> Result<RationalApproximation> {
    if word.len() <= ORACLE_MAX_N {
        rational_complexity(word)
    } else {
        rational_complexity_fast(word)
    }
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

/// Builds the object and checks each claimed (in)equality for it.
pub fn verify_family(spec: &FamilySpec) -> Result<FamilyReport> {
    let built = spec.build()?;
    let mut r = ReportBuilder::new();
    match spec {
        FamilySpec::Intro21 { period } => {
            let t = *period;
            let sym = adic_symmetric_periodic(&PeriodicSequence::new(built.word().clone())?);
            r.value("T", t);
            r.value("value", big(&sym.forward.value));
            r.value("reverse_value", big(&sym.reverse.value));
            r.value("connection", big(&sym.forward.connection));
            r.value("connection_rev", big(&sym.reverse.connection));
            r.claim("S_T(2) = 11", sym.forward.value == BigUint::from(11u32));
            r.claim(
                "S_T^rev(2) = 13 * 2^(T-4)",
                sym.reverse.value == BigUint::from(13u32) << (t - 4),
            );
            if t % 12 == 0 && t % 10 != 0 {
                r.claim(
                    "gcd(2^T-1, S_T^rev(2)) = 13",
                    sym.reverse.divisor == BigUint::from(13u32),
                );
                r.claim("gcd(2^T-1, 11) = 1", sym.forward.divisor.is_one());
                r.claim(
                    "lambda(S) = lambda_sym(S) + log2(13) = log2(2^T-1)",
                    sym.forward.connection == sym.forward.modulus
                        && sym.forward.connection == &sym.reverse.connection * 13u32,
                );
            }
        }
        FamilySpec::Theorem1 { p, period } => {
            let rep = periodic::verify_theorem1(*p, *period)?;
            r.value("p", rep.p);
            r.value("q", rep.q);
            r.value("ord_p", rep.ord_p);
            r.value("ord_q", rep.ord_q);
            r.value("T", rep.period);
            r.value("connection", big(&rep.connection));
            r.value("connection_rev", big(&rep.connection_rev));
            r.value("lambda", rep.lambda);
            r.value("lambda_rev", rep.lambda_rev);
            r.claim("S_T(2) = p", built.word().evaluate2() == BigUint::from(*p));
            r.claim("connection(S) = 2^T - 1", rep.connection == (pow2(rep.period) - 1u32));
            r.claim(
                "connection(S) = q * connection(S^rev)",
                rep.connection == &rep.connection_rev * rep.q,
            );
        }
        FamilySpec::ZerosThenOne { family, n, k, .. } => {
            let (n, k) = (*n, *k);
            let word = built.word();
            let rev = word.reverse();
            r.value("N", n);
            r.value("k", k);
            if *family == Family::Example1 {
                let fwd = lambda(word)?;
                let bwd = lambda(&rev)?;
                let sym = (&fwd.norm).min(&bwd.norm).clone();
                let f = rev.evaluate2();
                let full = pow2(n);
                r.value("Lambda", big(&fwd.norm));
                r.value("Lambda_rev", big(&bwd.norm));
                r.value("Lambda_sym", big(&sym));
                r.value("f", big(&f));
                r.claim("Lambda(S_N) = 2^k", fwd.norm == pow2(k));
                r.claim("Lambda(S_N^rev) <= f", bwd.norm <= f);
                r.claim("f < 2^(N-k) <= 2^(N/2)", f < pow2(n - k) && 2 * (n - k) <= n);
                r.claim(
                    "Lambda_sym(S_N) = Lambda(S_N^rev) < 2^(N/2) <= Lambda(S_N)",
                    sym == bwd.norm && &bwd.norm * &bwd.norm < full && &fwd.norm * &fwd.norm >= full,
                );
            } else {
                let profile = bm_profile(word)?;
                let l = profile.final_complexity();
                let l_rev = bm_profile(&rev)?.final_complexity();
                let l_k = if k == 0 { 0 } else { profile.entries[k - 1] };
                let l_k1 = profile.entries[k];
                r.value("L", l);
                r.value("L_rev", l_rev);
                r.value("L_sym", l.min(l_rev));
                r.claim("L(S_k) = 0", l_k == 0);
                r.claim("L(S_N) >= L(S_{k+1}) = k + 1", l >= l_k1 && l_k1 == k + 1);
                r.claim("L(S_N^rev) <= N - k", l_rev <= n - k);
                r.claim(
                    "2^L(S_N) - 2^L_sym(S_N) >= 2^(k+1) - 2^(N-k)",
                    pow2(l) + pow2(n - k) >= pow2(l.min(l_rev)) + pow2(k + 1),
                );
            }
        }
        FamilySpec::OnesThenZero { family, n, k, .. } => {
            let (n, k) = (*n, *k);
            let word = built.word();
            let rev = word.reverse();
            r.value("N", n);
            r.value("k", k);
            if *family == Family::Example2 {
                let fwd = lambda(word)?;
                let bwd = lambda(&rev)?;
                // The bound is argued modulo 2^{k+1}: the prefix runs through s_k = 0.
                let prefix = lambda(&word.prefix(k + 1))?;
                let sym = (&fwd.norm).min(&bwd.norm).clone();
                r.value("Lambda", big(&fwd.norm));
                r.value("Lambda_prefix", big(&prefix.norm));
                r.value("Lambda_rev", big(&bwd.norm));
                r.value("Lambda_sym", big(&sym));
                r.claim(
                    "Lambda(S_N) >= Lambda(s_0..s_k) >= 2^(k-1) + 1",
                    fwd.norm >= prefix.norm && prefix.norm > pow2(k - 1),
                );
                r.claim(
                    "Lambda(S_N^rev) <= 2^(N-k) < Lambda(S_N)",
                    bwd.norm <= pow2(n - k) && pow2(n - k) < fwd.norm,
                );
                r.claim("Lambda_sym(S_N) <= 2^(N-k)", sym <= pow2(n - k));
            } else {
                let profile = bm_profile(word)?;
                let l = profile.final_complexity();
                let l_rev = bm_profile(&rev)?.final_complexity();
                let l_k = profile.entries[k - 1];
                let l_k1 = profile.entries[k];
                r.value("L", l);
                r.value("L_rev", l_rev);
                r.value("L_sym", l.min(l_rev));
                r.claim("L(S_k) = 1", l_k == 1);
                r.claim("L(S_N) >= L(S_{k+1}) = k", l >= l_k1 && l_k1 == k);
                r.claim("L(S_N^rev) <= N - k + 1", l_rev <= n - k + 1);
                r.claim(
                    "2^L(S_N) - 2^L_sym(S_N) >= 2^k - 2^(N-k+1)",
                    pow2(l) + pow2(n - k + 1) >= pow2(l.min(l_rev)) + pow2(k),
                );
            }
        }
        FamilySpec::Remark5 => {
            let seq = PeriodicSequence::new(built.word().clone())?;
            let sym = adic_symmetric_periodic(&seq);
            let (c, c_rev) = (&sym.forward.connection, &sym.reverse.connection);
            r.value("T", 18);
            r.value("value", big(&sym.forward.value));
            r.value("reverse_value", big(&sym.reverse.value));
            r.value("connection", big(c));
            r.value("connection_rev", big(c_rev));
            r.value("lambda", sym.forward.lambda_bits);
            r.value("lambda_rev", sym.reverse.lambda_bits);
            r.claim("S_18(2) = 10731", sym.forward.value == BigUint::from(10731u32));
            r.claim("S_18^rev(2) = 220752", sym.reverse.value == BigUint::from(220752u32));
            r.claim("lambda(S^rev) = log2(19)", *c_rev == BigUint::from(19u32));
            r.claim("lambda(S) = log2(171)", *c == BigUint::from(171u32));
            r.claim("171 = 9 * 19", *c == c_rev * 9u32);
            r.claim("connection(S) > connection(S^rev)", c > c_rev);
            let ord = numtheory::mult_order_2_u64(19)?;
            r.claim("T = ord_19(2) = 19 - 1", ord == 18);
        }
        FamilySpec::Remark6 {
            variant,
            q_pal,
            k,
            period,
        } => {
            let rep = periodic::verify_remark6(*q_pal, *k, *period, *variant)?;
            let q = BigUint::from(*q_pal);
            let expected = match variant {
                Remark6Variant::A => &q << *k,
                Remark6Variant::B => (pow2(*k) - 1u32) + (&q << *k),
            };
            r.value("q", *q_pal);
            r.value("k", *k);
            r.value("T", *period);
            r.value("value", big(&rep.value));
            r.value("reverse_value", big(&rep.reverse_value));
            r.value("stated_reverse_value", big(&rep.stated_reverse_value));
            r.value("connection", big(&rep.connection));
            r.value("connection_rev", big(&rep.connection_rev));
            match variant {
                Remark6Variant::A => {
                    r.claim("S_T(2) = 2^k q", rep.value == expected);
                    r.claim("S_T^rev(2) = q", rep.reverse_value_matches);
                }
                Remark6Variant::B => {
                    r.claim("S_T(2) = 2^k - 1 + 2^k q", rep.value == expected);
                    r.claim("S_T^rev(2) = q + 2^(T-k)(2^k - 1)", rep.reverse_value_matches);
                }
            }
            r.claim("lambda(S) = lambda(S^rev)", rep.lambda_equal);
        }
    }
    Ok(r.finish(spec.family(), &built))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(family: &str, items: &[&str]) -> Result<FamilySpec> {
        FamilySpec::from_pairs(family.parse()?, &parse_pairs(items)?)
    }

    #[test]
    fn builds() {
        let b = spec("intro21", &["T=12"]).unwrap().build().unwrap();
        assert_eq!(b.word().evaluate2(), BigUint::from(11u32));
        assert_eq!(b.word().len(), 12);
        let b = spec("example1", &["N=4", "k=3"]).unwrap().build().unwrap();
        assert_eq!(b, Built::Word(FiniteWord::parse("0001").unwrap()));
        let b = spec("example2", &["N=6", "k=4", "tail=1"]).unwrap().build().unwrap();
        assert_eq!(b.word().to_string(), "111101");
        let b = spec("remark5", &[]).unwrap().build().unwrap();
        assert_eq!(b.word().reverse().evaluate2(), BigUint::from(220752u32));
        let b = spec("remark6A", &["q=7", "k=2", "T=5"]).unwrap().build().unwrap();
        assert_eq!(b.word().evaluate2(), BigUint::from(28u32));
        let b = spec("theorem1", &["p=11", "T=12"]).unwrap().build().unwrap();
        assert_eq!(b.word().evaluate2(), BigUint::from(11u32));
    }

    #[test]
    fn preconditions_are_named() {
        let msg = |r: Result<FamilySpec>| r.unwrap_err().to_string();
        assert!(msg(spec("example1", &["N=6", "k=2"])).contains("k >= N/2"));
        assert!(msg(spec("example2", &["N=6", "k=3"])).contains("k >= (N+1)/2"));
        assert!(msg(spec("example1", &["N=6", "k=4", "tail=00"])).contains("tail"));
        assert!(msg(spec("intro21", &["T=3"])).contains("T >= 4"));
        assert!(msg(spec("intro21", &[])).contains("missing parameter T"));
        assert!(msg(spec("intro21", &["T=12", "x=1"])).contains("does not take"));
        assert!("example9".parse::<Family>().is_err());
        assert!(parse_pairs(&["N4"]).is_err());
        assert!(spec("theorem1", &["p=11", "T=3"]).unwrap().build().is_err());
    }

    #[test]
    fn intro_example_claims() {
        let rep = verify_family(&spec("intro21", &["T=12"]).unwrap()).unwrap();
        assert!(rep.all_hold, "{rep:?}");
        assert_eq!(rep.claims.len(), 5);
        assert_eq!(rep.values["connection"], json!(4095));
        assert_eq!(rep.values["connection_rev"], json!(315));
        // T = 60 is a multiple of 10, so only the two value identities apply.
        let rep = verify_family(&spec("intro21", &["T=60"]).unwrap()).unwrap();
        assert_eq!(rep.claims.len(), 2);
        assert!(rep.all_hold);
    }

    #[test]
    fn remark5_claims() {
        let rep = verify_family(&FamilySpec::Remark5).unwrap();
        assert!(rep.all_hold, "{rep:?}");
        assert_eq!(rep.values["connection"], json!(171));
        assert_eq!(rep.values["connection_rev"], json!(19));
    }

    #[test]
    fn example_families_all_tails() {
        for n in 2..=12usize {
            for k in 0..n {
                for family in [Family::Example1, Family::Example2, Family::Example3, Family::Example4] {
                    for tail in all_tails(n - k - 1) {
                        let Ok(s) = FamilySpec::example(family, n, k, tail) else {
                            continue;
                        };
                        let rep = verify_family(&s).unwrap();
                        assert!(rep.all_hold, "{rep:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn long_example_words_use_lattice_path() {
        let s = spec("example1", &["N=40", "k=25", "tail=01101001101001"]).unwrap();
        let rep = verify_family(&s).unwrap();
        assert!(rep.all_hold, "{rep:?}");
        assert_eq!(rep.values["Lambda"], json!(1u64 << 25));
    }

    #[test]
    fn theorem1_for_small_primes() {
        for p in [11u64, 19, 23, 37, 41, 47] {
            let Ok(t) = periodic::find_valid_T(p, 64) else { continue };
            let s = FamilySpec::Theorem1 { p, period: t };
            assert!(verify_family(&s).unwrap().all_hold, "p={p}");
        }
    }

    #[test]
    fn remark6_reports() {
        let rep = verify_family(&spec("remark6A", &["q=9", "k=3", "T=7"]).unwrap()).unwrap();
        assert!(rep.all_hold, "{rep:?}");
        // The stated reverse value of variant B does not match the digits.
        let rep = verify_family(&spec("remark6B", &["q=7", "k=2", "T=8"]).unwrap()).unwrap();
        assert_eq!(rep.values["reverse_value"], json!(248));
        assert_eq!(rep.values["stated_reverse_value"], json!(199));
        assert!(!rep.all_hold);
    }

    #[test]
    fn reversed_words_mirror_values() {
        for tail in all_tails(3) {
            let s = FamilySpec::example(Family::Example1, 8, 4, tail).unwrap();
            let w = s.build().unwrap().word().clone();
            let rep = verify_family(&s).unwrap();
            assert_eq!(
                rep.values["Lambda_rev"],
                json!(rational_complexity(&w.reverse()).unwrap().norm.to_u64())
            );
            let back = rational_complexity(&w.reverse().reverse()).unwrap().norm;
            assert_eq!(rep.values["Lambda"], big(&back));
        }
    }
}
