//! Published reference tables, embedded from `data/*.tsv`.
//!
//! Lines starting with `#` are provenance comments; the first remaining line
//! is the column header.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

const TABLE1: &str = include_str!("../data/table1.tsv");
const TABLE2: &str = include_str!("../data/table2.tsv");
const TABLE3: &str = include_str!("../data/table3.tsv");
const TABLE4: &str = include_str!("../data/table4.tsv");

/// A row `(p, q, ord_p, ord_q)` of a reversible-pair table.
pub type PairRow = (u64, u64, u64, u64);

/// A printed expected-value difference, kept as text to preserve its precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedValue {
    pub n: usize,
    pub text: String,
}

impl PrintedValue {
    pub fn value(&self) -> BigRational {
        parse_decimal(&self.text).expect("embedded tables are well formed")
    }
}

fn data_rows(text: &str) -> impl Iterator<Item = Vec<&str>> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .skip(1)
        .map(|l| l.split('\t').collect())
}

fn pair_rows(text: &str) -> Vec<PairRow> {
    data_rows(text)
        .map(|c| {
            let v: Vec<u64> = c.iter().map(|x| x.parse().expect("integer cell")).collect();
            (v[0], v[1], v[2], v[3])
        })
        .collect()
}

fn printed_rows(text: &str) -> Vec<PrintedValue> {
    data_rows(text)
        .map(|c| PrintedValue {
            n: c[0].parse().expect("integer cell"),
            text: c[1].to_string(),
        })
        .collect()
}

/// Reversible prime pairs with `p < q`.
pub fn table1() -> Vec<PairRow> {
    pair_rows(TABLE1)
}

/// Pairs with prime `p` and composite `q`, as printed.
pub fn table2() -> Vec<PairRow> {
    pair_rows(TABLE2)
}

/// `E_N^rat - E_N^rat-sym` for `N = 2..=21`.
pub fn table3() -> Vec<PrintedValue> {
    printed_rows(TABLE3)
}

/// `E_N^lin-exp - E_N^lin-exp-sym` for `N = 2..=22`.
pub fn table4() -> Vec<PrintedValue> {
    printed_rows(TABLE4)
}

/// Exact value of a non-negative decimal literal such as `"36.5559"`.
pub fn parse_decimal(text: &str) -> Result<BigRational> {
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    let digits = format!("{int}{frac}");
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::parse(0, format!("not a decimal number: {text:?}")));
    }
    let numer: BigInt = digits.parse().expect("digits only");
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    Ok(BigRational::new(numer, denom))
}

/// Half-up rounding to three decimals with trailing zeros trimmed
/// (`23.8` rather than `23.800`).
pub fn format_3dp(value: &BigRational) -> String {
    let scaled = value * BigRational::from_integer(BigInt::from(1000));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let rounded = (scaled + half).floor().to_integer();
    let negative = rounded < BigInt::zero();
    let digits = rounded.magnitude().to_string();
    let padded = format!("{digits:0>4}");
    let (int, frac) = padded.split_at(padded.len() - 3);
    let frac = frac.trim_end_matches('0');
    let sign = if negative { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// `|value - printed| <= 0.001`, compared exactly.
pub fn within_tolerance(value: &BigRational, printed: &BigRational) -> bool {
    let tol = BigRational::new(BigInt::one(), BigInt::from(1000));
    let diff = value - printed;
    let abs = if diff < BigRational::zero() { -diff } else { diff };
    abs <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn tables_load() {
        assert_eq!(table1().len(), 15);
        assert_eq!(table1()[0], (11, 13, 10, 12));
        assert_eq!(table1()[14], (223, 251, 37, 50));
        assert_eq!(table2().len(), 14);
        assert_eq!(table2()[13], (239, 247, 7, 36));
        let t3 = table3();
        assert_eq!((t3[0].n, t3.last().unwrap().n), (2, 21));
        assert_eq!(t3[11].text, "23.8");
        let t4 = table4();
        assert_eq!((t4[0].n, t4.last().unwrap().n), (2, 22));
        assert_eq!(t4[11].value(), r(365559, 10000));
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_decimal("0.25").unwrap(), r(1, 4));
        assert_eq!(parse_decimal("441.608").unwrap(), r(441608, 1000));
        assert_eq!(parse_decimal("7").unwrap(), r(7, 1));
        assert!(parse_decimal("1e3").is_err());
        assert!(parse_decimal("").is_err());
    }

    #[test]
    fn rounding() {
        assert_eq!(format_3dp(&r(13, 16)), "0.813");
        assert_eq!(format_3dp(&r(1, 4)), "0.25");
        assert_eq!(format_3dp(&r(238, 10)), "23.8");
        assert_eq!(format_3dp(&r(1, 2000)), "0.001");
        assert_eq!(format_3dp(&r(3, 1)), "3");
        assert_eq!(format_3dp(&r(-1, 4)), "-0.25");
    }

    #[test]
    fn tolerance_is_inclusive() {
        assert!(within_tolerance(&r(1001, 1000), &r(1, 1)));
        assert!(!within_tolerance(&r(10011, 10000), &r(1, 1)));
    }
}
