//! Error-tracked high-precision floats.
//!
//! A [`Ball`] is an MPFR value together with an upper bound on the
//! absolute error accumulated so far (rounding of every operation plus
//! any inexactness of the inputs). Sign queries compare the magnitude
//! against the bound and fail with `PrecisionInsufficient` instead of
//! guessing. Mixing precisions promotes to the larger one.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rug::float::{Constant, Round};
use rug::ops::AssignRound;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::scalar::{Coeff, Sign};

/// Precision used for the error bounds themselves.
const ERR_PREC: u32 = 32;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;

#[derive(Clone)]
pub struct Ball {
    val: Float,
    /// Upper bound on |true value - val|; always >= 0.
    err: Float,
}

fn fup<T>(src: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(ERR_PREC, src, Round::Up).0
}

fn fdown<T>(src: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(ERR_PREC, src, Round::Down).0
}

/// Bound on the rounding error of a freshly rounded value.
fn round_err(v: &Float, ord: Ordering) -> Float {
    if ord == Ordering::Equal || v.is_zero() {
        Float::new(ERR_PREC)
    } else {
        // half-ulp would do; a full relative 2^(1-p) keeps the bound safe
        let mut e = fup(v.abs_ref());
        e >>= v.prec() - 1;
        e
    }
}

impl Ball {
    pub fn from_rational(r: &Rational, prec: u32) -> Ball {
        let (val, ord) = Float::with_val_round(prec, r, Round::Nearest);
        let err = round_err(&val, ord);
        Ball { val, err }
    }

    pub fn from_u32(k: u32, prec: u32) -> Ball {
        Ball {
            val: Float::with_val(prec, k),
            err: Float::new(ERR_PREC),
        }
    }

    pub fn pi(prec: u32) -> Ball {
        let (val, ord) = Float::with_val_round(prec, Constant::Pi, Round::Nearest);
        let err = round_err(&val, ord);
        Ball { val, err }
    }

    /// The midpoint value. The true value lies within `err_bound` of it.
    pub fn value(&self) -> &Float {
        &self.val
    }

    pub fn err_bound(&self) -> &Float {
        &self.err
    }

    pub fn prec(&self) -> u32 {
        self.val.prec()
    }

    fn join_prec(&self, other: &Ball) -> u32 {
        self.val.prec().max(other.val.prec())
    }

    pub fn add_ball(&self, other: &Ball) -> Ball {
        let p = self.join_prec(other);
        let (val, ord) = Float::with_val_round(p, &self.val + &other.val, Round::Nearest);
        let mut err = fup(&self.err + &other.err);
        err = fup(&err + &round_err(&val, ord));
        Ball { val, err }
    }

    pub fn sub_ball(&self, other: &Ball) -> Ball {
        self.add_ball(&other.clone().neg())
    }

    pub fn mul_ball(&self, other: &Ball) -> Ball {
        let p = self.join_prec(other);
        let (val, ord) = Float::with_val_round(p, &self.val * &other.val, Round::Nearest);
        let aa = fup(self.val.abs_ref());
        let bb = fup(other.val.abs_ref());
        let mut err = fup(&aa * &other.err);
        err = fup(&err + &fup(&bb * &self.err));
        err = fup(&err + &fup(&self.err * &other.err));
        err = fup(&err + &round_err(&val, ord));
        Ball { val, err }
    }

    pub fn div_ball(&self, other: &Ball) -> Result<Ball> {
        let p = self.join_prec(other);
        let babs_lo = fdown(other.val.abs_ref());
        let denom_lo = fdown(&babs_lo - &other.err);
        if denom_lo <= 0 {
            return Err(Error::PrecisionInsufficient(
                "division by a value not certifiably nonzero".into(),
            ));
        }
        let (val, ord) = Float::with_val_round(p, &self.val / &other.val, Round::Nearest);
        let babs_hi = fup(other.val.abs_ref());
        let aabs_hi = fup(self.val.abs_ref());
        let num = fup(&fup(&self.err * &babs_hi) + &fup(&aabs_hi * &other.err));
        let den = fdown(&babs_lo * &denom_lo);
        let mut err = fup(&num / &den);
        err = fup(&err + &round_err(&val, ord));
        Ok(Ball { val, err })
    }

    pub fn sqrt_ball(&self) -> Result<Ball> {
        if self.val.is_zero() && self.err.is_zero() {
            return Ok(Ball {
                val: Float::new(self.prec()),
                err: Float::new(ERR_PREC),
            });
        }
        let lo = fdown(&self.val - &self.err);
        if lo <= 0 {
            return Err(Error::PrecisionInsufficient(
                "square root of a value not certifiably positive".into(),
            ));
        }
        let (val, ord) = Float::with_val_round(self.prec(), self.val.sqrt_ref(), Round::Nearest);
        let slo = fdown(lo.sqrt_ref());
        let two_slo = fdown(&slo + &slo);
        let mut err = fup(&self.err / &two_slo);
        err = fup(&err + &round_err(&val, ord));
        Ok(Ball { val, err })
    }

    /// |sin'| <= 1, so input error passes through unamplified.
    pub fn sin_ball(&self) -> Ball {
        let (val, ord) = Float::with_val_round(self.prec(), self.val.sin_ref(), Round::Nearest);
        let err = fup(&self.err + &round_err(&val, ord));
        Ball { val, err }
    }

    pub fn cos_ball(&self) -> Ball {
        let (val, ord) = Float::with_val_round(self.prec(), self.val.cos_ref(), Round::Nearest);
        let err = fup(&self.err + &round_err(&val, ord));
        Ball { val, err }
    }

    /// |atan'| <= 1.
    pub fn atan_ball(&self) -> Ball {
        let (val, ord) = Float::with_val_round(self.prec(), self.val.atan_ref(), Round::Nearest);
        let err = fup(&self.err + &round_err(&val, ord));
        Ball { val, err }
    }

    pub fn mul_u32(&self, k: u32) -> Ball {
        let (val, ord) = Float::with_val_round(self.prec(), &self.val * k, Round::Nearest);
        let mut err = fup(&self.err * k);
        err = fup(&err + &round_err(&val, ord));
        Ball { val, err }
    }

    pub fn pow_u32(&self, k: u32) -> Ball {
        let mut acc = Ball::from_u32(1, self.prec());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ball(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_ball(&base);
            }
        }
        acc
    }

    /// Widen the error bound; used when a quantity is known only up to an
    /// externally derived bound (e.g. a recurrence's analytic estimate).
    pub fn with_err_bound(val: Float, err: Float) -> Ball {
        debug_assert!(err >= 0);
        Ball {
            val,
            err: fup(&err * &Float::with_val(ERR_PREC, 1)),
        }
    }

    /// Exact zero in the given precision.
    pub fn exact_zero(prec: u32) -> Ball {
        Ball {
            val: Float::new(prec),
            err: Float::new(ERR_PREC),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.val.to_f64()
    }

    /// Decimal rendering for serialization, with the error bound reported
    /// as a binary exponent (`None` when exact).
    pub fn decimal_string(&self) -> String {
        
        self.val.to_string_radix(10, Some(40))
    }

    pub fn err_exponent(&self) -> Option<i32> {
        if self.err.is_zero() {
            None
        } else {
            self.err.get_exp()
        }
    }
}

impl Coeff for Ball {
    fn from_rational(r: &Rational, prec: u32) -> Self {
        Ball::from_rational(r, prec)
    }

    fn certified_sign(&self) -> Result<Sign> {
        if self.val.is_zero() && self.err.is_zero() {
            return Ok(Sign::Zero);
        }
        let abs = self.val.clone().abs();
        if abs > self.err {
            Ok(if self.val.is_sign_positive() {
                Sign::Positive
            } else {
                Sign::Negative
            })
        } else {
            Err(Error::PrecisionInsufficient(format!(
                "sign undecidable: |{:e}| within error bound 2^{}",
                self.val.to_f64(),
                self.err.get_exp().unwrap_or(i32::MIN)
            )))
        }
    }

    fn consistent_with_zero(&self) -> bool {
        let abs = self.val.clone().abs();
        abs <= self.err
    }

    fn magnitude_f64(&self) -> f64 {
        self.val.to_f64().abs()
    }
}

impl PartialEq for Ball {
    fn eq(&self, other: &Self) -> bool {
        self.val == other.val && self.err == other.err
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Ball({:e} ± 2^{})",
            self.val.to_f64(),
            self.err.get_exp().unwrap_or(i32::MIN)
        )
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.val.to_f64())
    }
}

impl Add for Ball {
    type Output = Ball;
    fn add(self, rhs: Ball) -> Ball {
        self.add_ball(&rhs)
    }
}

impl Sub for Ball {
    type Output = Ball;
    fn sub(self, rhs: Ball) -> Ball {
        self.sub_ball(&rhs)
    }
}

impl Mul for Ball {
    type Output = Ball;
    fn mul(self, rhs: Ball) -> Ball {
        self.mul_ball(&rhs)
    }
}

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball {
            val: -self.val,
            err: self.err,
        }
    }
}

impl Zero for Ball {
    fn zero() -> Self {
        Ball::exact_zero(53)
    }
    fn is_zero(&self) -> bool {
        self.val.is_zero() && self.err.is_zero()
    }
}

impl One for Ball {
    fn one() -> Self {
        Ball::from_u32(1, 53)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip_exact_dyadic() {
        let r = Rational::from((5, 16));
        let b = Ball::from_rational(&r, 64);
        assert!(b.err_bound().is_zero());
        assert_eq!(b.certified_sign().unwrap(), Sign::Positive);
    }

    #[test]
    fn inexact_rational_carries_bound() {
        let r = Rational::from((1, 3));
        let b = Ball::from_rational(&r, 64);
        assert!(!b.err_bound().is_zero());
        assert_eq!(b.certified_sign().unwrap(), Sign::Positive);
    }

    #[test]
    fn cancellation_is_consistent_with_zero() {
        let third = Ball::from_rational(&Rational::from((1, 3)), 128);
        let diff = third.sub_ball(&third);
        assert!(diff.consistent_with_zero());
        assert!(diff.certified_sign().is_err());
    }

    #[test]
    fn sqrt_two_squares_back() {
        let two = Ball::from_rational(&Rational::from(2), 256);
        let s = two.sqrt_ball().unwrap();
        let back = s.mul_ball(&s).sub_ball(&two);
        assert!(back.consistent_with_zero());
        assert!(back.err_bound().clone() < Float::with_val(32, 1e-70));
    }

    #[test]
    fn division_by_straddling_value_fails() {
        let third = Ball::from_rational(&Rational::from((1, 3)), 64);
        let z = third.sub_ball(&third);
        let one = Ball::from_u32(1, 64);
        assert!(one.div_ball(&z).is_err());
    }

    #[test]
    fn precision_promotion() {
        let a = Ball::from_rational(&Rational::from((1, 3)), 64);
        let b = Ball::from_rational(&Rational::from((1, 3)), 256);
        assert_eq!(a.mul_ball(&b).prec(), 256);
    }
}
