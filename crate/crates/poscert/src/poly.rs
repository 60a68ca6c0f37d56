//! Dense univariate polynomials, ascending coefficient order.
//!
//! `coeffs[i]` holds the coefficient of `x^i`; the empty vector is the
//! zero polynomial and the last entry of a nonzero polynomial is never
//! (exactly) zero. Multiplication is schoolbook; certificate products
//! stay dense and small, so nothing fancier is warranted.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Rational;

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Coeff, Sign};

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

pub type RatPoly = Polynomial<Rational>;

impl<T: Coeff> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree];
        coeffs.push(c);
        Polynomial::new(coeffs)
    }

    pub fn x() -> Self {
        Polynomial::monomial(T::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn scalar_mul(&self, s: &T) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Polynomial::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiply by `x^m`.
    pub fn shift_up(&self, m: usize) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![T::zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn sign_sequence(&self) -> Result<Vec<Sign>> {
        self.coeffs.iter().map(|c| c.certified_sign()).collect()
    }

    /// The sign-variation count V: sign changes in the coefficient
    /// sequence after deleting zeros. Zero polynomial yields 0.
    pub fn sign_variations(&self) -> Result<usize> {
        let signs = self.sign_sequence()?;
        let mut count = 0;
        let mut last: Option<Sign> = None;
        for s in signs {
            if s == Sign::Zero {
                continue;
            }
            if let Some(prev) = last {
                if prev != s {
                    count += 1;
                }
            }
            last = Some(s);
        }
        Ok(count)
    }

    /// Divide out the largest power of x, returning the quotient and that
    /// power. V is unchanged since stripped entries are all zero.
    pub fn strip_zero_roots(&self) -> Result<(Self, usize)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let m = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero polynomial has a nonzero coefficient");
        Ok((Polynomial::new(self.coeffs[m..].to_vec()), m))
    }

    /// Negate if needed so the leading coefficient is positive. V is
    /// unchanged under global negation.
    pub fn sign_normalize(&self) -> Result<(Self, bool)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let lead = self.leading().expect("nonzero").certified_sign()?;
        match lead {
            Sign::Positive => Ok((self.clone(), false)),
            Sign::Negative => Ok((-self.clone(), true)),
            Sign::Zero => unreachable!("trimmed polynomial has nonzero leading coefficient"),
        }
    }
}

impl RatPoly {
    /// Convert an exact polynomial into another coefficient domain at the
    /// given working precision.
    pub fn to_mode<U: Coeff>(&self, prec: u32) -> Polynomial<U> {
        Polynomial::new(
            self.coeffs
                .iter()
                .map(|c| U::from_rational(c, prec))
                .collect(),
        )
    }

    /// Parse the wire format: ascending comma-separated rationals,
    /// e.g. `"2,-3,1"` for x^2 - 3x + 2.
    pub fn parse(text: &str) -> Result<RatPoly> {
        let mut coeffs = Vec::new();
        let mut offset = 0usize;
        for piece in text.split(',') {
            let r = parse_rational(piece).map_err(|message| Error::Parse {
                offset: offset + piece.len() - piece.trim_start().len(),
                message,
            })?;
            coeffs.push(r);
            offset += piece.len() + 1;
        }
        Ok(Polynomial::new(coeffs))
    }

    /// Canonical wire rendering; `parse(to_wire(p)) == p`.
    pub fn to_wire(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Divide by the leading coefficient. Positive leading coefficients
    /// leave V and positivity on (0, inf) unchanged.
    pub fn make_monic(&self) -> Result<RatPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let lead = self.leading().expect("nonzero").clone();
        Ok(Polynomial::new(
            self.coeffs
                .iter()
                .map(|c| Rational::from(c / &lead))
                .collect(),
        ))
    }
}

impl<T: Coeff> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Polynomial::new(coeffs)
    }
}

impl<T: Coeff> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        Polynomial::new(coeffs)
    }
}

impl<T: Coeff> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(coeffs)
    }
}

impl<T: Coeff> Neg for Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<T: Coeff> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}
