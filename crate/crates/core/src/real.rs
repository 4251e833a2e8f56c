//! Exact reals in `[0, 1]` backed by digit streams.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::digit::{digits_to_string, prefix_interval, Digit, DigitStream, Interval};
use crate::engine::{produce_stream, AffineData, Coeffs};
use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::stream::Stream;

/// A real number in `[0, 1]`, given by an infinite stream of interval
/// digits. Any digit stream is a valid value: every digit refines the
/// interval of the previous prefix.
#[derive(Clone)]
pub struct ExactReal {
    digits: DigitStream,
}

/// Result of a bounded comparison. Equality is never reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Greater,
    /// The intervals still overlap after `depth` digits, i.e. the values
    /// differ by less than `2^-depth`.
    IndistinguishableAt { depth: usize },
}

impl Comparison {
    pub fn reverse(self) -> Comparison {
        match self {
            Comparison::Less => Comparison::Greater,
            Comparison::Greater => Comparison::Less,
            other => other,
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison::Less => write!(f, "less"),
            Comparison::Greater => write!(f, "greater"),
            Comparison::IndistinguishableAt { depth } => {
                write!(f, "indistinguishable at 2^-{depth}")
            }
        }
    }
}

/// Binary expansion of `a/b`, one `L` or `R` per step.
fn rational_digits(a: BigInt, b: BigInt) -> DigitStream {
    Stream::unfold(a, move |a| {
        let twice: BigInt = &a << 1;
        if twice <= b {
            (Digit::L, twice)
        } else {
            let next = twice - &b;
            (Digit::R, next)
        }
    })
}

/// Builds the stream of a rational in `[0, 1]`.
pub fn from_rational(r: &Rational) -> Result<ExactReal> {
    if !r.in_unit_interval() {
        return Err(Error::OutOfRange(r.clone()));
    }
    Ok(ExactReal {
        digits: rational_digits(r.numer().clone(), r.denom().clone()),
    })
}

impl ExactReal {
    pub fn from_digits(digits: DigitStream) -> Self {
        ExactReal { digits }
    }

    pub fn from_rational(r: &Rational) -> Result<Self> {
        from_rational(r)
    }

    pub fn digits(&self) -> &DigitStream {
        &self.digits
    }

    pub fn take(&self, n: usize) -> Vec<Digit> {
        self.digits.take(n)
    }

    pub fn digit_string(&self, n: usize) -> String {
        digits_to_string(&self.take(n))
    }

    /// The interval spanned by the first `n` digits; width `2^-n`.
    pub fn to_interval(&self, n: usize) -> Interval {
        prefix_interval(&self.take(n))
    }

    /// An approximation with `k` decimal places, within `10^-k` of the value.
    pub fn to_decimal(&self, k: usize) -> String {
        let scale = BigInt::from(10).pow(k as u32);
        // smallest m with 2^m >= 10^k
        let mut m = 0usize;
        while (BigInt::from(1) << m) < scale {
            m += 1;
        }
        let mid = self.to_interval(m + 2).midpoint();
        let scaled = mid.numer() * &scale;
        let den = mid.denom();
        // round half up: floor((2·scaled + den) / (2·den))
        let rounded = (BigInt::from(2) * scaled + den).div_floor(&(BigInt::from(2) * den));
        let (int_part, frac) = rounded.div_mod_floor(&scale);
        if k == 0 {
            return int_part.to_string();
        }
        format!("{}.{:0>width$}", int_part, frac.to_string(), width = k)
    }

    pub fn average(&self, other: &ExactReal) -> ExactReal {
        let half = Rational::new(1, 2).expect("nonzero");
        affine(&half, &half, &Rational::zero(), self, other, true).expect("coefficients sum to 1")
    }

    pub fn compare(&self, other: &ExactReal, max_depth: usize) -> Comparison {
        compare(self, other, max_depth)
    }
}

impl fmt::Debug for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactReal({:?})", self.digits)
    }
}

/// `ca·x + cb·y + cc`.
///
/// With `checked`, the coefficients must sum to at most 1, which keeps the
/// result in `[0, 1]` for every input. Unchecked callers promise the result
/// is in range themselves; if it is not, the returned digits are
/// meaningless.
pub fn affine(
    ca: &Rational,
    cb: &Rational,
    cc: &Rational,
    x: &ExactReal,
    y: &ExactReal,
    checked: bool,
) -> Result<ExactReal> {
    let coeffs = Coeffs::from_rationals(ca, cb, cc)?;
    if checked {
        let sum = ca + cb + cc.clone();
        if sum > Rational::one() {
            return Err(Error::CoefficientSumTooLarge(sum));
        }
    }
    let state = AffineData::new(coeffs, x.digits.clone(), y.digits.clone());
    Ok(ExactReal {
        digits: produce_stream(state),
    })
}

pub fn average(x: &ExactReal, y: &ExactReal) -> ExactReal {
    x.average(y)
}

/// Refines both values digit by digit up to `max_depth` and stops at the
/// first depth where their intervals are disjoint.
pub fn compare(x: &ExactReal, y: &ExactReal, max_depth: usize) -> Comparison {
    let (mut ix, mut iy) = (Interval::unit(), Interval::unit());
    let mut dx = x.digits.iter();
    let mut dy = y.digits.iter();
    for depth in 0..=max_depth {
        if depth > 0 {
            ix = ix.refine(dx.next().expect("infinite"));
            iy = iy.refine(dy.next().expect("infinite"));
        }
        if ix.hi() < iy.lo() {
            return Comparison::Less;
        }
        if iy.hi() < ix.lo() {
            return Comparison::Greater;
        }
    }
    Comparison::IndistinguishableAt { depth: max_depth }
}

/// Parses a decimal string such as `"0.3333"` into an exact rational.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || Error::MalformedRational(s.to_string());
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    if !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    Rational::new(digits, BigInt::from(10).pow(frac.len() as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Digit::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn real(n: i64, d: i64) -> ExactReal {
        from_rational(&r(n, d)).unwrap()
    }

    #[test]
    fn from_rational_examples() {
        assert_eq!(real(1, 2).take(5), vec![L, R, R, R, R]);
        assert_eq!(real(1, 3).digit_string(8), "LRLRLRLR");
        assert_eq!(real(1, 1).digit_string(6), "RRRRRR");
        assert_eq!(real(0, 1).digit_string(6), "LLLLLL");
        assert_eq!(real(1, 6).digit_string(7), "LLRLRLR");
    }

    #[test]
    fn from_rational_rejects_out_of_range() {
        assert_eq!(
            from_rational(&r(3, 2)).unwrap_err(),
            Error::OutOfRange(r(3, 2))
        );
        assert!(from_rational(&r(-1, 5)).is_err());
    }

    #[test]
    fn to_interval_examples() {
        let t = real(1, 3);
        assert_eq!(t.to_interval(0), Interval::unit());
        assert_eq!(t.to_interval(2).to_string(), "[1/4, 1/2]");
        assert_eq!(t.to_interval(17).width(), Rational::dyadic(17));
    }

    #[test]
    fn to_decimal_examples() {
        assert_eq!(real(1, 2).to_decimal(3), "0.500");
        assert_eq!(real(1, 3).to_decimal(4), "0.3333");
        assert_eq!(real(0, 1).to_decimal(2), "0.00");
        assert_eq!(real(1, 1).to_decimal(3), "1.000");
        assert_eq!(real(2, 3).to_decimal(5), "0.66667");
    }

    #[test]
    fn average_examples() {
        assert!(average(&real(1, 3), &real(1, 6)).to_interval(40).contains(&r(1, 4)));
        let x = real(5, 7);
        assert!(average(&x, &x).to_interval(40).contains(&r(5, 7)));
        assert!(average(&real(0, 1), &real(1, 1)).to_interval(40).contains(&r(1, 2)));
    }

    #[test]
    fn affine_examples() {
        let (x, y) = (real(2, 9), real(4, 5));
        let h = r(1, 2);
        let a = affine(&h, &h, &Rational::zero(), &x, &y, true).unwrap();
        assert_eq!(a.take(200), average(&x, &y).take(200));

        let one = Rational::one();
        let sum = affine(&one, &one, &Rational::zero(), &real(1, 3), &real(1, 6), false).unwrap();
        assert!(sum.to_interval(40).contains(&r(1, 2)));

        assert!(matches!(
            affine(&h, &h, &h, &x, &y, true),
            Err(Error::CoefficientSumTooLarge(_))
        ));
        assert!(matches!(
            affine(&r(-1, 2), &h, &Rational::zero(), &x, &y, false),
            Err(Error::NegativeCoefficient(_))
        ));
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(&real(1, 4), &real(3, 4), 8), Comparison::Less);
        assert_eq!(compare(&real(3, 4), &real(1, 4), 8), Comparison::Greater);
        let x = real(2, 7);
        assert_eq!(compare(&x, &x, 30), Comparison::IndistinguishableAt { depth: 30 });
        let lr = real(1, 2);
        let rl = ExactReal::from_digits(Stream::cons(R, Stream::constant(L)));
        assert_eq!(compare(&lr, &rl, 20), Comparison::IndistinguishableAt { depth: 20 });
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_decimal("0.25").unwrap(), r(1, 4));
        assert_eq!(parse_decimal("1").unwrap(), r(1, 1));
        assert!(parse_decimal("x.1").is_err());
    }
}
