//! Exact scalar arithmetic shared by the formula evaluators.
//!
//! Every evaluator is generic over [`Exact`], so the same code runs on
//! checked `u128` (fast, overflow reported as an error) and on `BigUint`
//! (never overflows). Nothing in this module touches floating point.

use std::fmt::{Debug, Display};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, FromPrimitive, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A non-negative exact integer type with checked arithmetic.
pub trait Exact:
    Clone
    + Ord
    + Debug
    + Display
    + Zero
    + One
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + CheckedDiv
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> Exact for T where
    T: Clone
        + Ord
        + Debug
        + Display
        + Zero
        + One
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + CheckedDiv
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

pub fn from_u64<T: Exact>(v: u64) -> Result<T> {
    T::from_u64(v).ok_or(Error::Overflow("integer conversion"))
}

pub fn from_u128<T: Exact>(v: u128) -> Result<T> {
    T::from_u128(v).ok_or(Error::Overflow("integer conversion"))
}

pub fn add<T: Exact>(a: &T, b: &T) -> Result<T> {
    a.checked_add(b).ok_or(Error::Overflow("sum"))
}

pub fn mul<T: Exact>(a: &T, b: &T) -> Result<T> {
    a.checked_mul(b).ok_or(Error::Overflow("product"))
}

/// Exact division; fails when `b` does not divide `a`.
pub fn div_exact<T: Exact>(a: &T, b: &T) -> Result<T> {
    if b.is_zero() {
        return Err(Error::Consistency("division by zero".into()));
    }
    let q = a.checked_div(b).ok_or(Error::Overflow("quotient"))?;
    if &mul(&q, b)? != a {
        return Err(Error::Consistency(format!("{a} is not divisible by {b}")));
    }
    Ok(q)
}

/// Falling factorial `(n)_k = n (n-1) ... (n-k+1)`; zero when `k > n`, one when `k = 0`.
pub fn falling<T: Exact>(n: u64, k: u64) -> Result<T> {
    if k > n {
        return Ok(T::zero());
    }
    let mut acc = T::one();
    for i in 0..k {
        acc = mul(&acc, &from_u64(n - i)?)?;
    }
    Ok(acc)
}

/// Binomial coefficient with the combinatorial convention `C(n, k) = 0`
/// whenever `n < 0`, `k < 0` or `k > n`.
pub fn binomial<T: Exact>(n: i64, k: i64) -> Result<T> {
    if n < 0 || k < 0 || k > n {
        return Ok(T::zero());
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = T::one();
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = mul(&acc, &from_u64(n - i)?)?;
        acc = div_exact(&acc, &from_u64(i + 1)?)?;
    }
    Ok(acc)
}

pub fn factorial<T: Exact>(n: u64) -> Result<T> {
    falling(n, n)
}

pub fn to_big<T: Exact>(v: &T) -> BigUint {
    // every Exact value is a non-negative integer; decimal round trip is exact
    v.to_string().parse().expect("non-negative integer")
}

pub fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(num.clone().into(), den.clone().into())
}
