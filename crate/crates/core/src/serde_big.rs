//! JSON encoding for big integers: a plain number when it fits in 64 bits,
//! a decimal string otherwise.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::Serializer;

pub fn uint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.collect_str(v),
    }
}

pub fn int<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.collect_str(v),
    }
}

pub fn rational<S: Serializer>(v: &Option<num_rational::BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

pub fn rational_value<S: Serializer>(v: &num_rational::BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
