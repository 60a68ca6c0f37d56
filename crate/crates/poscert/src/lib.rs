//! Sign-variation audits and multiplier certificates for univariate
//! real polynomials.
//!
//! The library constructs and independently verifies multiplier
//! polynomials that certify either that a polynomial is positive on
//! (0, inf) or that the sign-variation count of a suitable product
//! equals its number of positive roots exactly. Exact rational
//! arithmetic is used whenever the input permits; otherwise a
//! high-precision float mode with per-value error bounds takes over and
//! every sign decision is certified against its bound.

pub mod aberth;
pub mod ball;
pub mod cert;
pub mod error;
pub mod oracle;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod verify;

pub use ball::{Ball, DEFAULT_PRECISION};
pub use error::{Error, Result};
pub use poly::{Polynomial, RatPoly};
pub use scalar::{Coeff, Sign};

/// Exact rational scalar.
pub type Rat = rug::Rational;

/// Polynomial over error-tracked high-precision floats.
pub type BallPoly = Polynomial<Ball>;
