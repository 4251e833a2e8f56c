//! Exact real arithmetic on `[0, 1]` with lazy streams of interval digits.
//!
//! A real is an infinite stream of digits `L`, `R`, `C`; each digit selects
//! the left, right or centred half of the current interval, starting from
//! `[0, 1]`. Rationals convert to streams directly, and affine combinations
//! `a·x + b·y + c` of two streams are computed digit by digit by the
//! engine in [`engine`]. Every claim can be checked against exact rational
//! arithmetic.
//!
//! ```
//! use lrcreal::{affine, ExactReal, Rational};
//!
//! let third = ExactReal::from_rational(&"1/3".parse().unwrap()).unwrap();
//! let sixth = ExactReal::from_rational(&"1/6".parse().unwrap()).unwrap();
//! let one = Rational::one();
//! let sum = affine(&one, &one, &Rational::zero(), &third, &sixth, false).unwrap();
//! assert!(sum.to_interval(40).contains(&"1/2".parse().unwrap()));
//! ```

pub mod cli;
pub mod digit;
pub mod engine;
pub mod error;
pub mod numeric;
pub mod oracle;
pub mod real;
pub mod stream;

pub use digit::{
    bit_to_digit, bits_to_value, emit_value, prefix_interval, represents_to_depth, Digit,
    DigitStream, Interval,
};
pub use engine::{produce_stream, AffineData, Case, Coeffs, Decision, EngineOptions};
pub use error::{Error, Result};
pub use numeric::{gcd, Rational};
pub use real::{affine, average, compare, from_rational, Comparison, ExactReal};
pub use stream::{bisimilar_to_depth, Bisimilar, LazyList, LazyTree, Stream, TreePrefix};
