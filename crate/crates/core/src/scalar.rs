//! Exact coefficient fields.
//!
//! Every algorithm in this crate is generic over [`Field`]. The trait is
//! implemented for every `num_rational::Ratio<I>` whose integer type is
//! exact, so both `BigRational` (the default, see [`crate::Rational`]) and
//! `Rational64` work. Floating point types are deliberately not fields here:
//! colengths are computed by exact cancellation.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::{BigInt, ToBigInt};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, Zero};

pub trait Field:
    Clone
    + Debug
    + Display
    + Eq
    + Hash
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + for<'a> std::ops::Add<&'a Self, Output = Self>
    + for<'a> std::ops::Sub<&'a Self, Output = Self>
    + for<'a> std::ops::Mul<&'a Self, Output = Self>
    + for<'a> std::ops::Div<&'a Self, Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Builds `numerator / denominator` from decimal digit strings.
    ///
    /// Returns `None` when either string is not an integer the backing type
    /// can hold, or when the denominator is zero.
    fn from_decimal(numerator: &str, denominator: &str) -> Option<Self>;

    fn from_int(value: i64) -> Self;

    /// The value as an integer, if it is one.
    fn as_integer(&self) -> Option<BigInt>;

    /// Numerator and (positive) denominator in lowest terms.
    fn to_fraction(&self) -> (BigInt, BigInt);

    fn is_negative(&self) -> bool {
        self.to_fraction().0 < BigInt::zero()
    }
}

impl<I> Field for Ratio<I>
where
    I: Integer
        + Clone
        + Signed
        + FromStr
        + FromPrimitive
        + ToBigInt
        + Display
        + Debug
        + Hash
        + Send
        + Sync
        + 'static,
    for<'a> Ratio<I>: std::ops::Add<&'a Ratio<I>, Output = Ratio<I>>
        + std::ops::Sub<&'a Ratio<I>, Output = Ratio<I>>
        + std::ops::Mul<&'a Ratio<I>, Output = Ratio<I>>
        + std::ops::Div<&'a Ratio<I>, Output = Ratio<I>>,
{
    fn from_decimal(numerator: &str, denominator: &str) -> Option<Self> {
        let n = I::from_str(numerator).ok()?;
        let d = I::from_str(denominator).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Ratio::new(n, d))
    }

    fn from_int(value: i64) -> Self {
        Ratio::from_integer(I::from_i64(value).expect("integer type too narrow for i64 value"))
    }

    fn as_integer(&self) -> Option<BigInt> {
        if self.denom().is_one() {
            self.numer().to_bigint()
        } else {
            None
        }
    }

    fn to_fraction(&self) -> (BigInt, BigInt) {
        (
            self.numer().to_bigint().expect("integer conversion"),
            self.denom().to_bigint().expect("integer conversion"),
        )
    }
}
