//! Coefficient domains: exact rationals and error-tracked floats.
//!
//! Everything downstream (polynomial arithmetic, certificates, the
//! verifier) is generic over [`Coeff`]. The two instantiations are
//! [`rug::Rational`] for exact mode and [`Ball`](crate::ball::Ball) for
//! float mode at a configurable working precision.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rug::Rational;

use crate::error::{Error, Result};

/// Sign of a coefficient, decided exactly or against an error bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

/// A coefficient domain for polynomial arithmetic.
///
/// `certified_sign` must never guess: in float mode a sign is returned
/// only when the magnitude clears the accumulated error bound.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Embed a rational value. `prec` is the working precision in bits;
    /// the exact domain ignores it.
    fn from_rational(r: &Rational, prec: u32) -> Self;

    /// Sign decision honoring error bounds.
    fn certified_sign(&self) -> Result<Sign>;

    /// True when the value is indistinguishable from zero
    /// (exactly zero, or within its error bound of zero).
    fn consistent_with_zero(&self) -> bool;

    /// Rough magnitude for witness reporting. Not used in any decision.
    fn magnitude_f64(&self) -> f64;
}

impl Coeff for Rational {
    fn from_rational(r: &Rational, _prec: u32) -> Self {
        r.clone()
    }

    fn certified_sign(&self) -> Result<Sign> {
        Ok(match self.cmp0() {
            std::cmp::Ordering::Less => Sign::Negative,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Positive,
        })
    }

    fn consistent_with_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }

    fn magnitude_f64(&self) -> f64 {
        self.to_f64().abs()
    }
}

/// Parse a rational from `"p/q"` or an integer string, requiring the
/// canonical reduced form on the wire.
pub fn parse_rational(text: &str) -> std::result::Result<Rational, String> {
    let t = text.trim();
    if t.is_empty() {
        return Err("empty rational".to_string());
    }
    if t.contains(['e', 'E', '.']) {
        return Err(format!("not a rational: {t:?} (use p/q or integer form)"));
    }
    let r: Rational = t
        .parse()
        .map_err(|e| format!("malformed rational {t:?}: {e}"))?;
    Ok(r)
}

/// Domain-error helper used by analysis operations that reject zero input.
pub fn nonzero_or_err<T: Coeff>(is_zero: bool) -> Result<()> {
    if is_zero {
        Err(Error::ZeroPolynomial)
    } else {
        Ok(())
    }
}
