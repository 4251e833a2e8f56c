//! The three interval digits, their interval and value semantics, and the
//! correspondence with binary fractions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::stream::Stream;

/// An interval digit. Each one selects a half-width sub-interval of the
/// current interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Digit {
    /// Left half.
    L,
    /// Right half.
    R,
    /// Centered half.
    C,
}

pub type DigitStream = Stream<Digit>;

impl Digit {
    pub const ALL: [Digit; 3] = [Digit::L, Digit::R, Digit::C];

    pub fn as_char(self) -> char {
        match self {
            Digit::L => 'L',
            Digit::R => 'R',
            Digit::C => 'C',
        }
    }

    pub fn from_char(c: char) -> Option<Digit> {
        match c {
            'L' => Some(Digit::L),
            'R' => Some(Digit::R),
            'C' => Some(Digit::C),
            _ => None,
        }
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Renders digits as a string such as `"LCR"`.
pub fn digits_to_string(ds: &[Digit]) -> String {
    ds.iter().map(|d| d.as_char()).collect()
}

/// Parses a digit string such as `"LCR"`.
pub fn parse_digits(s: &str) -> Result<Vec<Digit>> {
    s.chars()
        .map(|c| Digit::from_char(c).ok_or(Error::Precondition("digit must be one of L, R, C")))
        .collect()
}

/// A closed interval with exact rational bounds.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Precondition("interval lower bound exceeds upper bound"));
        }
        Ok(Interval { lo, hi })
    }

    pub fn unit() -> Self {
        Interval {
            lo: Rational::zero(),
            hi: Rational::one(),
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) * Rational::new(1, 2).expect("nonzero")
    }

    /// Closed-interval membership.
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// The sub-interval selected by `d`; always exactly half as wide.
    pub fn refine(&self, d: Digit) -> Interval {
        let w = self.width();
        let quarter = || &w * &Rational::new(1, 4).expect("nonzero");
        match d {
            Digit::L => Interval {
                lo: self.lo.clone(),
                hi: self.midpoint(),
            },
            Digit::R => Interval {
                lo: self.midpoint(),
                hi: self.hi.clone(),
            },
            Digit::C => Interval {
                lo: &self.lo + &quarter(),
                hi: &self.lo + &(quarter() * Rational::from_integer(3)),
            },
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Interval {
    type Err = Error;

    /// Parses `"[p/q, r/s]"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedRational(s.to_string());
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (lo, hi) = body.split_once(',').ok_or_else(bad)?;
        Interval::new(lo.parse()?, hi.parse()?)
    }
}

/// Left fold of [`Interval::refine`] from `[0, 1]`, leftmost digit first.
pub fn prefix_interval(ds: &[Digit]) -> Interval {
    ds.iter().fold(Interval::unit(), |iv, &d| iv.refine(d))
}

/// The value of `d·s` when `s` represents `r`.
pub fn emit_value(d: Digit, r: &Rational) -> Rational {
    let half = Rational::new(1, 2).expect("nonzero");
    match d {
        Digit::L => r * &half,
        Digit::R => (r + &Rational::one()) * half,
        Digit::C => (r * &Rational::from_integer(2) + Rational::one()) * Rational::new(1, 4).expect("nonzero"),
    }
}

/// The binary fraction `0.b1 b2 ...` (`true` is a one bit).
pub fn bits_to_value(bits: &[bool]) -> Rational {
    let half = Rational::new(1, 2).expect("nonzero");
    bits.iter().rev().fold(Rational::zero(), |x, &b| {
        if b {
            (Rational::one() + x) * &half
        } else {
            x * &half
        }
    })
}

/// One bits select the right half, zero bits the left half.
pub fn bit_to_digit(b: bool) -> Digit {
    if b {
        Digit::R
    } else {
        Digit::L
    }
}

/// Whether `r` lies in the interval spanned by the first `depth` digits.
pub fn represents_to_depth(s: &DigitStream, r: &Rational, depth: usize) -> bool {
    prefix_interval(&s.take(depth)).contains(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Digit::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn iv(a: (i64, i64), b: (i64, i64)) -> Interval {
        Interval::new(r(a.0, a.1), r(b.0, b.1)).unwrap()
    }

    #[test]
    fn refine_examples() {
        assert_eq!(Interval::unit().refine(C), iv((1, 4), (3, 4)));
        assert_eq!(Interval::unit().refine(L), iv((0, 1), (1, 2)));
        assert_eq!(iv((0, 1), (1, 2)).refine(C), iv((1, 8), (3, 8)));
        assert_eq!(Interval::unit().refine(R), iv((1, 2), (1, 1)));
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(prefix_interval(&[]), Interval::unit());
        assert_eq!(prefix_interval(&[L, C, R]), iv((1, 4), (3, 8)));
        assert_eq!(prefix_interval(&[C, L, L]), iv((1, 4), (3, 8)));
        assert_eq!(prefix_interval(&[L, R, L]), iv((1, 4), (3, 8)));
    }

    #[test]
    fn emit_examples() {
        assert_eq!(emit_value(R, &Rational::zero()), r(1, 2));
        assert_eq!(emit_value(L, &r(1, 2)), r(1, 4));
        assert_eq!(emit_value(C, &r(1, 2)), r(1, 2));
    }

    #[test]
    fn bits_examples() {
        assert_eq!(bits_to_value(&[]), Rational::zero());
        assert_eq!(bits_to_value(&[true]), r(1, 2));
        assert_eq!(bits_to_value(&[false, true]), r(1, 4));
        assert_eq!(bit_to_digit(true), R);
        assert_eq!(bit_to_digit(false), L);
        let third: Vec<bool> = (0..8).map(|i| i % 2 == 1).collect();
        let ds: Vec<Digit> = third.iter().map(|&b| bit_to_digit(b)).collect();
        assert_eq!(digits_to_string(&ds), "LRLRLRLR");
    }

    #[test]
    fn represents_examples() {
        let s = Stream::constant(C);
        assert!(represents_to_depth(&s, &r(9, 10), 0));
        assert!(!represents_to_depth(&Stream::constant(L), &Rational::one(), 1));
        assert!(represents_to_depth(&Stream::constant(R), &Rational::one(), 60));
        assert!(represents_to_depth(&Stream::constant(C), &r(1, 2), 60));
    }

    #[test]
    fn text_forms() {
        assert_eq!(iv((1, 4), (3, 8)).to_string(), "[1/4, 3/8]");
        assert_eq!("[1/4, 3/8]".parse::<Interval>().unwrap(), iv((1, 4), (3, 8)));
        assert_eq!(parse_digits("LCR").unwrap(), vec![L, C, R]);
        assert!(parse_digits("LX").is_err());
        assert!(Interval::new(Rational::one(), Rational::zero()).is_err());
    }

    fn arb_digits(max: usize) -> impl Strategy<Value = Vec<Digit>> {
        proptest::collection::vec(prop_oneof![Just(L), Just(R), Just(C)], 0..=max)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn width_law(ds in arb_digits(64)) {
            prop_assert_eq!(prefix_interval(&ds).width(), Rational::dyadic(ds.len() as u32));
        }

        #[test]
        fn nesting(ds in arb_digits(40), d in prop_oneof![Just(L), Just(R), Just(C)]) {
            let outer = prefix_interval(&ds);
            let mut longer = ds.clone();
            longer.push(d);
            let inner = prefix_interval(&longer);
            prop_assert!(outer.contains_interval(&inner));
            prop_assert!(Interval::unit().contains_interval(&inner));
        }

        #[test]
        fn emit_fold_maps_midpoint_to_midpoint(ds in arb_digits(40)) {
            let folded = ds.iter().rev().fold(r(1, 2), |x, &d| emit_value(d, &x));
            prop_assert_eq!(folded, prefix_interval(&ds).midpoint());
        }

        #[test]
        fn bits_land_in_digit_interval(bits in proptest::collection::vec(any::<bool>(), 0..=32)) {
            let ds: Vec<Digit> = bits.iter().map(|&b| bit_to_digit(b)).collect();
            let v = bits_to_value(&bits);
            let i = prefix_interval(&ds);
            prop_assert!(i.contains(&v));
            prop_assert!(&v != i.hi());
            prop_assert_eq!(&v, i.lo());
        }
    }
}
