//! Ordinary and symmetric pseudorandomness measures of binary sequences.
//!
//! * [`bitseq`]: finite words and periodic sequences.
//! * [`numtheory`]: gcd, orders of 2, primality, reversible pairs.
//! * [`periodic`]: 2-adic and linear complexity of periodic sequences.
//! * [`aperiodic`]: Nth rational, 2-adic and linear complexity of finite words.
//! * [`expectation`]: exact expected values over all words of a given length.
//! * [`constructions`]: explicit sequence families and their claimed bounds.
//! * [`reference`]: the published reference tables used by `--check-paper`.

pub mod aperiodic;
pub mod bitseq;
pub mod constructions;
pub mod error;
pub mod expectation;
mod gf2;
pub mod numtheory;
pub mod periodic;
pub mod reference;
mod serde_big;

pub use bitseq::{FiniteWord, PeriodicSequence};
pub use error::{Error, Result};

/// Arbitrary-precision non-negative integer.
pub type Natural = num_bigint::BigUint;
/// Exact rational used for expected values.
pub type BigRational = num_rational::BigRational;
