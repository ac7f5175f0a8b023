//! Exact expected values of the ordinary and symmetric measures over all
//! words of length `N`, and the counting identities behind them.
//!
//! A sweep builds a value-indexed table of `Λ` (and/or `L`) for every word
//! once; the reverse of word `v` is looked up at the bit-reversed index, so
//! nothing is recomputed for the symmetric measures.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::aperiodic::{linear_complexity_u64, rational_norm_u64};
use crate::error::{Error, Result};
use crate::reference::{self, PrintedValue};

/// Largest `N` accepted by [`enumerate_expectations`].
pub const MAX_SWEEP_N: usize = 24;

/// Words per task; also fixes the float summation order.
const CHUNK: usize = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    Rat,
    Adic,
    Lin,
    LinExp,
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "rat" => Ok(Measure::Rat),
            "2adic" => Ok(Measure::Adic),
            "lin" => Ok(Measure::Lin),
            "linexp" => Ok(Measure::LinExp),
            other => Err(Error::parse(
                0,
                format!("unknown measure {other:?} (expected rat, 2adic, lin or linexp)"),
            )),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::Rat => "rat",
            Measure::Adic => "2adic",
            Measure::Lin => "lin",
            Measure::LinExp => "linexp",
        })
    }
}

/// A set of measures; the symmetric companion of each is always included.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Measures {
    pub rat: bool,
    pub adic: bool,
    pub lin: bool,
    pub linexp: bool,
}

impl Measures {
    pub fn all() -> Self {
        Measures {
            rat: true,
            adic: true,
            lin: true,
            linexp: true,
        }
    }

    pub fn only(m: Measure) -> Self {
        let mut set = Measures::default();
        set.insert(m);
        set
    }

    pub fn insert(&mut self, m: Measure) {
        match m {
            Measure::Rat => self.rat = true,
            Measure::Adic => self.adic = true,
            Measure::Lin => self.lin = true,
            Measure::LinExp => self.linexp = true,
        }
    }

    pub fn is_empty(&self) -> bool {
        !(self.rat || self.adic || self.lin || self.linexp)
    }

    fn needs_lambda(&self) -> bool {
        self.rat || self.adic
    }

    fn needs_linear(&self) -> bool {
        self.lin || self.linexp
    }
}

impl FromStr for Measures {
    type Err = Error;

    /// Comma-separated list such as `"rat,linexp"`; `"all"` selects everything.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "all" {
            return Ok(Measures::all());
        }
        let mut set = Measures::default();
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            set.insert(part.parse()?);
        }
        if set.is_empty() {
            return Err(Error::parse(0, "empty measure list"));
        }
        Ok(set)
    }
}

/// Expected values over `{0,1}^N`. Fields of measures that were not
/// requested are `None`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpectationRow {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(serialize_with = "crate::serde_big::rational")]
    pub e_rat: Option<BigRational>,
    #[serde(serialize_with = "crate::serde_big::rational")]
    pub e_rat_sym: Option<BigRational>,
    pub e_2adic: Option<f64>,
    pub e_2adic_sym: Option<f64>,
    #[serde(serialize_with = "crate::serde_big::rational")]
    pub e_lin: Option<BigRational>,
    #[serde(serialize_with = "crate::serde_big::rational")]
    pub e_lin_sym: Option<BigRational>,
    #[serde(serialize_with = "crate::serde_big::rational")]
    pub e_linexp: Option<BigRational>,
    #[serde(serialize_with = "crate::serde_big::rational")]
    pub e_linexp_sym: Option<BigRational>,
}

fn diff(a: &Option<BigRational>, b: &Option<BigRational>) -> Option<BigRational> {
    Some(a.as_ref()? - b.as_ref()?)
}

impl ExpectationRow {
    pub fn rat_diff(&self) -> Option<BigRational> {
        diff(&self.e_rat, &self.e_rat_sym)
    }

    pub fn lin_diff(&self) -> Option<BigRational> {
        diff(&self.e_lin, &self.e_lin_sym)
    }

    pub fn linexp_diff(&self) -> Option<BigRational> {
        diff(&self.e_linexp, &self.e_linexp_sym)
    }

    pub fn adic_diff(&self) -> Option<f64> {
        Some(self.e_2adic? - self.e_2adic_sym?)
    }
}

#[derive(Clone, Copy, Default)]
struct Partial {
    rat: u64,
    rat_sym: u64,
    adic: f64,
    adic_sym: f64,
    lin: u64,
    lin_sym: u64,
    linexp: u64,
    linexp_sym: u64,
}

/// Index of the reversed `n`-bit word.
#[inline]
pub fn reverse_index(v: u64, n: u32) -> u64 {
    v.reverse_bits() >> (64 - n)
}

/// `Λ` of every `n`-bit word, indexed by radix-2 value.
pub fn lambda_table(n: usize) -> Result<Vec<u32>> {
    check_sweep_n(n)?;
    let mut table = vec![0u32; 1 << n];
    table.par_chunks_mut(CHUNK).enumerate().for_each(|(c, out)| {
        let base = (c * CHUNK) as u64;
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = rational_norm_u64(base + i as u64, n as u32) as u32;
        }
    });
    Ok(table)
}

/// `L` of every `n`-bit word, indexed by radix-2 value.
pub fn linear_table(n: usize) -> Result<Vec<u8>> {
    check_sweep_n(n)?;
    let mut table = vec![0u8; 1 << n];
    table.par_chunks_mut(CHUNK).enumerate().for_each(|(c, out)| {
        let base = (c * CHUNK) as u64;
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = linear_complexity_u64(base + i as u64, n as u32) as u8;
        }
    });
    Ok(table)
}

fn check_sweep_n(n: usize) -> Result<()> {
    if !(1..=MAX_SWEEP_N).contains(&n) {
        return Err(Error::precondition(format!(
            "exhaustive sweeps need 1 <= N <= {MAX_SWEEP_N}, got N = {n}"
        )));
    }
    Ok(())
}

/// Pairwise sum in index order; the result depends only on `xs`.
fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        len => {
            let (a, b) = xs.split_at(len / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

fn ratio(num: u64, n: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::one() << n)
}

/// Exact sums over all `2^N` words for the requested measures.
pub fn enumerate_expectations(n: usize, measures: Measures) -> Result<ExpectationRow> {
    check_sweep_n(n)?;
    if measures.is_empty() {
        return Err(Error::precondition("no measures requested"));
    }
    let lambda = if measures.needs_lambda() {
        Some(lambda_table(n)?)
    } else {
        None
    };
    let linear = if measures.needs_linear() {
        Some(linear_table(n)?)
    } else {
        None
    };
    let words = 1usize << n;
    let nu = n as u32;
    let partials: Vec<Partial> = (0..words.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut p = Partial::default();
            for v in c * CHUNK..((c + 1) * CHUNK).min(words) {
                let r = reverse_index(v as u64, nu) as usize;
                if let Some(t) = &lambda {
                    let (a, b) = (t[v], t[r]);
                    let m = a.min(b);
                    p.rat += a as u64;
                    p.rat_sym += m as u64;
                    p.adic += (a as f64).log2();
                    p.adic_sym += (m as f64).log2();
                }
                if let Some(t) = &linear {
                    let (a, b) = (t[v], t[r]);
                    let m = a.min(b);
                    p.lin += a as u64;
                    p.lin_sym += m as u64;
                    p.linexp += 1u64 << a;
                    p.linexp_sym += 1u64 << m;
                }
            }
            p
        })
        .collect();

    let total = |f: fn(&Partial) -> u64| partials.iter().map(f).sum::<u64>();
    let float_total = |f: fn(&Partial) -> f64| {
        let xs: Vec<f64> = partials.iter().map(f).collect();
        pairwise_sum(&xs) / words as f64
    };
    let exact = |on: bool, f: fn(&Partial) -> u64| on.then(|| ratio(total(f), n));
    let float = |on: bool, f: fn(&Partial) -> f64| on.then(|| float_total(f));
    Ok(ExpectationRow {
        n,
        e_rat: exact(measures.rat, |p| p.rat),
        e_rat_sym: exact(measures.rat, |p| p.rat_sym),
        e_2adic: float(measures.adic, |p| p.adic),
        e_2adic_sym: float(measures.adic, |p| p.adic_sym),
        e_lin: exact(measures.lin, |p| p.lin),
        e_lin_sym: exact(measures.lin, |p| p.lin_sym),
        e_linexp: exact(measures.linexp, |p| p.linexp),
        e_linexp_sym: exact(measures.linexp, |p| p.linexp_sym),
    })
}

/// One row of a difference table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiffRow {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(serialize_with = "crate::serde_big::rational_value")]
    pub diff: BigRational,
    /// Half-up to three decimals, trailing zeros trimmed.
    pub rounded: String,
}

impl DiffRow {
    fn new(n: usize, diff: BigRational) -> Self {
        let rounded = reference::format_3dp(&diff);
        DiffRow { n, diff, rounded }
    }
}

/// `E_N^rat - E_N^rat-sym` for `N = 2..=n_max`, `n_max <= 21`.
pub fn table3(n_max: usize) -> Result<Vec<DiffRow>> {
    if !(2..=21).contains(&n_max) {
        return Err(Error::precondition(format!(
            "table3 needs 2 <= N_max <= 21, got {n_max}"
        )));
    }
    (2..=n_max)
        .map(|n| {
            let row = enumerate_expectations(n, Measures::only(Measure::Rat))?;
            Ok(DiffRow::new(n, row.rat_diff().expect("requested")))
        })
        .collect()
}

/// `E_N^lin-exp - E_N^lin-exp-sym` for `N = 2..=n_max`, `n_max <= 22`.
pub fn table4(n_max: usize) -> Result<Vec<DiffRow>> {
    if !(2..=22).contains(&n_max) {
        return Err(Error::precondition(format!(
            "table4 needs 2 <= N_max <= 22, got {n_max}"
        )));
    }
    (2..=n_max)
        .map(|n| {
            let row = enumerate_expectations(n, Measures::only(Measure::LinExp))?;
            Ok(DiffRow::new(n, row.linexp_diff().expect("requested")))
        })
        .collect()
}

/// Rows whose value is not within 0.001 of the printed reference, as
/// `(N, computed, printed)`. Rows without a reference entry are ignored.
pub fn mismatches(rows: &[DiffRow], printed: &[PrintedValue]) -> Vec<(usize, String, String)> {
    rows.iter()
        .filter_map(|row| {
            let p = printed.iter().find(|p| p.n == row.n)?;
            (!reference::within_tolerance(&row.diff, &p.value())).then(|| (row.n, row.rounded.clone(), p.text.clone()))
        })
        .collect()
}

/// Number of length-`n` words with each linear complexity `0..=n`, by
/// running Berlekamp-Massey on every word.
pub fn count_by_linear_complexity(n: usize) -> Result<Vec<u64>> {
    if !(1..=20).contains(&n) {
        return Err(Error::precondition(format!("counting needs 1 <= N <= 20, got {n}")));
    }
    let words = 1usize << n;
    let counts = (0..words.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut counts = vec![0u64; n + 1];
            for v in c * CHUNK..((c + 1) * CHUNK).min(words) {
                counts[linear_complexity_u64(v as u64, n as u32) as usize] += 1;
            }
            counts
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(counts)
}

/// `A_N(L)`: 1 for `L = 0`, `2^{min(2L-1, 2N-2L)}` for `1 <= L <= N`.
pub fn a_n(n: usize, l: usize) -> BigUint {
    match l {
        0 => BigUint::one(),
        l if l <= n => BigUint::one() << (2 * l - 1).min(2 * n - 2 * l),
        _ => BigUint::zero(),
    }
}

/// Checks the enumerated counts against [`a_n`] and their total against `2^N`.
pub fn verify_counting(n: usize) -> Result<Vec<u64>> {
    let counts = count_by_linear_complexity(n)?;
    for (l, &c) in counts.iter().enumerate() {
        if BigUint::from(c) != a_n(n, l) {
            return Err(Error::Property(format!(
                "A_{n}({l}): enumerated {c}, formula {}",
                a_n(n, l)
            )));
        }
    }
    if counts.iter().sum::<u64>() != 1u64 << n {
        return Err(Error::Property(format!("A_{n} counts do not sum to 2^{n}")));
    }
    Ok(counts)
}

/// `M(W) = Σ_{L=0}^{W} A_N(L) = (4^{W+1} + 2)/6` for `W <= N/2`; both sides
/// are evaluated and compared.
pub fn m_of_w(w: usize) -> Result<BigUint> {
    let closed = ((BigUint::one() << (2 * w + 2)) + 2u32) / 6u32;
    let n = 2 * w.max(1);
    let partial: BigUint = (0..=w).map(|l| a_n(n, l)).sum();
    if partial != closed {
        return Err(Error::Property(format!(
            "M({w}): partial sum {partial}, closed form {closed}"
        )));
    }
    Ok(closed)
}

fn pow2(e: usize) -> BigRational {
    BigRational::from_integer(BigInt::one() << e)
}

fn inv_pow2(e: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << e)
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Exact `E_N^lin-exp = 2^{-N} (1 + Σ_{L=1}^{⌊N/2⌋} 2^{3L-1} + Σ_{L=⌊N/2⌋+1}^{N} 2^{2N-L})`.
pub fn linexp_closed_form(n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::precondition("linexp closed form needs N >= 1"));
    }
    let half = n / 2;
    let mut total = BigInt::one();
    for l in 1..=half {
        total += BigInt::one() << (3 * l - 1);
    }
    for l in half + 1..=n {
        total += BigInt::one() << (2 * n - l);
    }
    Ok(BigRational::new(total, BigInt::one() << n))
}

/// The closed form next to the asymptotic expression `c 2^{N/2} - 1 - (4/7) 2^{-N}`
/// (with `c = 11/7` for even `N`, `8√2/7` for odd `N`), which leaves out the
/// contribution `2^{-N}` of the zero word.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinexpReport {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(serialize_with = "crate::serde_big::rational_value")]
    pub exact: BigRational,
    #[serde(serialize_with = "crate::serde_big::rational_value")]
    pub proof_expression: BigRational,
    #[serde(serialize_with = "crate::serde_big::rational_value")]
    pub delta: BigRational,
    /// `delta == 2^{-N}`.
    pub delta_is_zero_word: bool,
}

pub fn linexp_report(n: usize) -> Result<LinexpReport> {
    let exact = linexp_closed_form(n)?;
    // c 2^{N/2} is rational in both cases: (11/7) 2^{N/2} or (8/7) 2^{(N+1)/2}.
    let leading = if n.is_multiple_of(2) {
        pow2(n / 2) * BigRational::new(BigInt::from(11), BigInt::from(7))
    } else {
        pow2(n.div_ceil(2)) * BigRational::new(BigInt::from(8), BigInt::from(7))
    };
    let proof_expression = leading - int(1) - BigRational::new(BigInt::from(4), BigInt::from(7)) * inv_pow2(n);
    let delta = &exact - &proof_expression;
    let delta_is_zero_word = delta == inv_pow2(n);
    Ok(LinexpReport {
        n,
        exact,
        proof_expression,
        delta,
        delta_is_zero_word,
    })
}

/// Lower-bound constants for the expected differences of the two example
/// families: `M1 + M2 <= E_rat - E_rat_sym` and `K1 + K2 <= E_linexp - E_linexp_sym`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProofConstants {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(serialize_with = "crate::serde_big::rational_value")]
    pub m1: BigRational,
    #[serde(serialize_with = "crate::serde_big::rational_value")]
    pub m2: BigRational,
    #[serde(serialize_with = "crate::serde_big::rational_value")]
    pub k1: BigRational,
    #[serde(serialize_with = "crate::serde_big::rational_value")]
    pub k2: BigRational,
}

impl ProofConstants {
    pub fn rat_bound(&self) -> BigRational {
        &self.m1 + &self.m2
    }

    pub fn linexp_bound(&self) -> BigRational {
        &self.k1 + &self.k2
    }
}

/// `(N-2)/4 + 2^{-⌈N/2⌉-1}`.
pub fn m1_closed_form(n: usize) -> BigRational {
    BigRational::new(BigInt::from(n as i64 - 2), BigInt::from(4)) + inv_pow2(n.div_ceil(2) + 1)
}

/// Evaluates the defining sums of `M1`, `M2`, `K1`, `K2` exactly.
///
/// * `M1 = 2^{-N} (Σ_{k=⌈N/2⌉}^{N-1} 2^k 2^{N-k-1} - Σ_{f=1}^{2^{⌊N/2⌋}-1} f)`
/// * `M2 = 2^{-N} Σ_{k=⌈(N+1)/2⌉}^{N-1} 2^{N-k-1} (2^{k-1} + 1 - 2^{N-k})`
/// * `K1 = 2^{-N} Σ_{k=⌈N/2⌉}^{N-1} 2^{N-1-k} (2^{k+1} - 2^{N-k})`
/// * `K2 = 2^{-N} Σ_{k=⌈(N+1)/2⌉}^{N-1} 2^{N-k-1} (2^k - 2^{N-k+1})`
///
/// Fails if `M1` differs from [`m1_closed_form`] or `|K1 - N/2| > 2`.
pub fn proof_constants(n: usize) -> Result<ProofConstants> {
    if n < 2 {
        return Err(Error::precondition("proof constants need N >= 2"));
    }
    let p = |e: usize| BigInt::one() << e;
    let lo1 = n.div_ceil(2);
    let lo2 = (n + 1).div_ceil(2);
    let scale = |s: BigInt| BigRational::new(s, p(n));

    let mut m1 = BigInt::zero();
    for k in lo1..n {
        m1 += p(k) * p(n - k - 1);
    }
    let top = p(n / 2) - 1;
    m1 -= &top * (&top + 1) / 2;

    let mut m2 = BigInt::zero();
    let mut k1 = BigInt::zero();
    let mut k2 = BigInt::zero();
    for k in lo2..n {
        m2 += p(n - k - 1) * (p(k - 1) + 1 - p(n - k));
        k2 += p(n - k - 1) * (p(k) - p(n - k + 1));
    }
    for k in lo1..n {
        k1 += p(n - 1 - k) * (p(k + 1) - p(n - k));
    }
    let consts = ProofConstants {
        n,
        m1: scale(m1),
        m2: scale(m2),
        k1: scale(k1),
        k2: scale(k2),
    };
    if consts.m1 != m1_closed_form(n) {
        return Err(Error::Property(format!(
            "M1 at N = {n}: sum {} differs from closed form {}",
            consts.m1,
            m1_closed_form(n)
        )));
    }
    let gap = &consts.k1 - BigRational::new(BigInt::from(n), BigInt::from(2));
    if gap > int(2) || gap < int(-2) {
        return Err(Error::Property(format!(
            "K1 at N = {n} is {}, not within 2 of N/2",
            consts.k1
        )));
    }
    Ok(consts)
}

/// One line of the report comparing finite-`N` values with the asymptotic
/// bound expressions. Logarithms are base 2 by convention.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticsRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub e_rat: f64,
    pub e_rat_sym: f64,
    pub e_lin: f64,
    pub e_lin_sym: f64,
    /// `N/2 - log2(N)`.
    pub lin_sym_bound: f64,
    /// `2^{N/2}`.
    pub two_pow_half_n: f64,
    /// `(E_rat - E_rat_sym) / 2^{N/2}`, reported without any claim.
    pub rat_diff_ratio: f64,
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Report over `n_min..=n_max`. Only `E_rat_sym <= E_rat` and
/// `E_lin_sym <= E_lin` are checked.
pub fn asymptotics_report(n_min: usize, n_max: usize) -> Result<Vec<AsymptoticsRow>> {
    if n_min < 1 || n_min > n_max {
        return Err(Error::precondition(format!("bad range {n_min}..{n_max}")));
    }
    let measures = Measures {
        rat: true,
        lin: true,
        ..Measures::default()
    };
    (n_min..=n_max)
        .map(|n| {
            let row = enumerate_expectations(n, measures)?;
            let (rat, rat_sym) = (row.e_rat.unwrap(), row.e_rat_sym.unwrap());
            let (lin, lin_sym) = (row.e_lin.unwrap(), row.e_lin_sym.unwrap());
            if rat_sym > rat || lin_sym > lin {
                return Err(Error::Property(format!(
                    "symmetric expectation exceeds the ordinary one at N = {n}"
                )));
            }
            let half = (n as f64 / 2.0).exp2();
            Ok(AsymptoticsRow {
                n,
                e_rat: to_f64(&rat),
                e_rat_sym: to_f64(&rat_sym),
                e_lin: to_f64(&lin),
                e_lin_sym: to_f64(&lin_sym),
                lin_sym_bound: n as f64 / 2.0 - (n as f64).log2(),
                two_pow_half_n: half,
                rat_diff_ratio: to_f64(&(rat - rat_sym)) / half,
            })
        })
        .collect()
}
