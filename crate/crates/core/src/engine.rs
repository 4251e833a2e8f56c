//! The affine-combination engine.
//!
//! A state holds six non-negative integer coefficients and two input digit
//! streams and stands for `(a/a')·v1 + (b/b')·v2 + c/c'`. Each step either
//! emits an output digit (when the coefficients alone pin the result to the
//! left, right or centre half) or consumes one digit from each input, which
//! tightens the constant term and halves the variable weights.
//!
//! Consume runs are bounded by [`Coeffs::measure`], which strictly decreases
//! on every consume and is zero only when a production is available. This
//! makes every output digit computable in finite time.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::digit::{emit_value, Digit, DigitStream};
use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::stream::Stream;

/// The six coefficients of an engine state; `a_den`, `b_den` and `c_den`
/// are the primed denominators.
///
/// Construction enforces the sign conditions: numerators `>= 0`,
/// denominators `> 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coeffs {
    a: BigInt,
    a_den: BigInt,
    b: BigInt,
    b_den: BigInt,
    c: BigInt,
    c_den: BigInt,
}

/// Outcome of the production test on bare coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    R,
    L,
    C,
    Consume,
}

impl Case {
    pub fn digit(self) -> Option<Digit> {
        match self {
            Case::R => Some(Digit::R),
            Case::L => Some(Digit::L),
            Case::C => Some(Digit::C),
            Case::Consume => None,
        }
    }
}

/// Rewriting rule for the constant term when consuming a digit pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConsumeTable {
    #[default]
    Correct,
    /// Mutant with the `(R, C)` row replaced by the `(C, R)` numerator.
    /// Exists so the oracle checks can be shown to catch a table typo.
    SwappedRc,
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

impl Coeffs {
    pub fn new(
        a: impl Into<BigInt>,
        a_den: impl Into<BigInt>,
        b: impl Into<BigInt>,
        b_den: impl Into<BigInt>,
        c: impl Into<BigInt>,
        c_den: impl Into<BigInt>,
    ) -> Result<Self> {
        let x = Coeffs {
            a: a.into(),
            a_den: a_den.into(),
            b: b.into(),
            b_den: b_den.into(),
            c: c.into(),
            c_den: c_den.into(),
        };
        if !x.is_positive() {
            return Err(Error::SignViolation(x.to_string()));
        }
        Ok(x)
    }

    /// Packs three non-negative rationals into reduced coefficient pairs.
    pub fn from_rationals(ca: &Rational, cb: &Rational, cc: &Rational) -> Result<Self> {
        for v in [ca, cb, cc] {
            if v.is_negative() {
                return Err(Error::NegativeCoefficient(v.clone()));
            }
        }
        Coeffs::new(
            ca.numer().clone(),
            ca.denom().clone(),
            cb.numer().clone(),
            cb.denom().clone(),
            cc.numer().clone(),
            cc.denom().clone(),
        )
    }

    /// `a >= 0, a' > 0`, and likewise for `b` and `c`.
    pub fn is_positive(&self) -> bool {
        !self.a.is_negative()
            && self.a_den.is_positive()
            && !self.b.is_negative()
            && self.b_den.is_positive()
            && !self.c.is_negative()
            && self.c_den.is_positive()
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn a_den(&self) -> &BigInt {
        &self.a_den
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn b_den(&self) -> &BigInt {
        &self.b_den
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn c_den(&self) -> &BigInt {
        &self.c_den
    }

    pub fn as_tuple(&self) -> [&BigInt; 6] {
        [&self.a, &self.a_den, &self.b, &self.b_den, &self.c, &self.c_den]
    }

    /// Largest bit length among the six coefficients.
    pub fn max_bits(&self) -> u64 {
        self.as_tuple().iter().map(|v| v.bits()).max().unwrap_or(0)
    }

    pub fn weight_a(&self) -> Rational {
        Rational::new(self.a.clone(), self.a_den.clone()).expect("positive denominator")
    }
    pub fn weight_b(&self) -> Rational {
        Rational::new(self.b.clone(), self.b_den.clone()).expect("positive denominator")
    }
    pub fn constant(&self) -> Rational {
        Rational::new(self.c.clone(), self.c_den.clone()).expect("positive denominator")
    }

    /// `(a/a')·p + (b/b')·q + c/c'`.
    pub fn value(&self, p: &Rational, q: &Rational) -> Rational {
        self.weight_a() * p + self.weight_b() * q + self.constant()
    }

    /// `a·b'·c' + b·a'·c' + a'·b'·c`: the numerator of the state's upper
    /// bound over the common denominator `a'·b'·c'`.
    fn upper_numerator(&self) -> BigInt {
        &self.a * &self.b_den * &self.c_den
            + &self.b * &self.a_den * &self.c_den
            + &self.a_den * &self.b_den * &self.c
    }

    /// The production test, tried in the order R, L, C.
    pub fn decide(&self) -> Case {
        if self.c_den <= big(2) * &self.c {
            return Case::R;
        }
        let upper = self.upper_numerator();
        let common = &self.a_den * &self.b_den * &self.c_den;
        if big(2) * &upper <= common {
            return Case::L;
        }
        if big(4) * &upper <= big(3) * &common && self.c_den <= big(4) * &self.c {
            return Case::C;
        }
        debug_assert!(self.a_den < big(8) * &self.a || self.b_den < big(8) * &self.b);
        Case::Consume
    }

    fn doubled_weights(&self, c: BigInt, c_den: BigInt) -> Coeffs {
        Coeffs {
            a: big(2) * &self.a,
            a_den: self.a_den.clone(),
            b: big(2) * &self.b,
            b_den: self.b_den.clone(),
            c,
            c_den,
        }
    }

    /// Emit `R`: value becomes `2V - 1`. Requires `c' <= 2c`.
    pub fn prod_r(&self) -> Result<Coeffs> {
        if self.c_den > big(2) * &self.c {
            return Err(Error::Precondition("R production requires c' <= 2c"));
        }
        Ok(self.doubled_weights(big(2) * &self.c - &self.c_den, self.c_den.clone()))
    }

    /// Emit `L`: value doubles.
    pub fn prod_l(&self) -> Coeffs {
        self.doubled_weights(big(2) * &self.c, self.c_den.clone())
    }

    /// Emit `C`: value becomes `2V - 1/2`. Requires `c' <= 4c`.
    pub fn prod_c(&self) -> Result<Coeffs> {
        if self.c_den > big(4) * &self.c {
            return Err(Error::Precondition("C production requires c' <= 4c"));
        }
        Ok(self.doubled_weights(big(4) * &self.c - &self.c_den, big(2) * &self.c_den))
    }

    pub fn produce(&self, d: Digit) -> Result<Coeffs> {
        match d {
            Digit::R => self.prod_r(),
            Digit::L => Ok(self.prod_l()),
            Digit::C => self.prod_c(),
        }
    }

    /// New coefficients after the inputs' heads `d1`, `d2` are read.
    pub fn consume_digits(&self, d1: Digit, d2: Digit) -> Coeffs {
        self.consume_digits_with(d1, d2, ConsumeTable::Correct)
    }

    pub fn consume_digits_with(&self, d1: Digit, d2: Digit, table: ConsumeTable) -> Coeffs {
        use Digit::*;
        let Coeffs {
            a,
            a_den: ap,
            b,
            b_den: bp,
            c,
            c_den: cp,
        } = self;
        let (c1, c1_den) = match (d1, d2) {
            (L, L) => (c.clone(), cp.clone()),
            (L, R) => (b * cp + big(2) * c * bp, big(2) * bp * cp),
            (R, L) => (a * cp + big(2) * c * ap, big(2) * ap * cp),
            (L, C) => (b * cp + big(4) * c * bp, big(4) * bp * cp),
            (C, L) => (a * cp + big(4) * c * ap, big(4) * ap * cp),
            (R, C) => match table {
                ConsumeTable::Correct => (
                    big(2) * a * bp * cp + b * ap * cp + big(4) * c * ap * bp,
                    big(4) * ap * bp * cp,
                ),
                ConsumeTable::SwappedRc => (
                    big(2) * b * ap * cp + a * bp * cp + big(4) * c * bp * ap,
                    big(4) * ap * bp * cp,
                ),
            },
            (C, R) => (
                big(2) * b * ap * cp + a * bp * cp + big(4) * c * bp * ap,
                big(4) * bp * ap * cp,
            ),
            (R, R) => (
                a * bp * cp + b * ap * cp + big(2) * c * ap * bp,
                big(2) * ap * bp * cp,
            ),
            (C, C) => (
                b * ap * cp + a * bp * cp + big(4) * c * bp * ap,
                big(4) * bp * ap * cp,
            ),
        };
        Coeffs {
            a: a.clone(),
            a_den: big(2) * ap,
            b: b.clone(),
            b_den: big(2) * bp,
            c: c1,
            c_den: c1_den,
        }
    }

    /// Termination measure `f(a, a') + f(b, b')` with
    /// `f(p, q) = min { n >= 0 : 2^n·q >= 8p }`.
    pub fn measure(&self) -> u64 {
        fn halvings(p: &BigInt, q: &BigInt) -> u64 {
            let target = big(8) * p;
            let mut n = target.bits().saturating_sub(q.bits()).saturating_sub(1);
            while (q << n) < target {
                n += 1;
            }
            n
        }
        halvings(&self.a, &self.a_den) + halvings(&self.b, &self.b_den)
    }

    /// Divides each numerator/denominator pair by its gcd.
    pub fn normalize(&self) -> Coeffs {
        fn reduce(p: &BigInt, q: &BigInt) -> (BigInt, BigInt) {
            let g = p.gcd(q).max(BigInt::one());
            (p / &g, q / &g)
        }
        let (a, a_den) = reduce(&self.a, &self.a_den);
        let (b, b_den) = reduce(&self.b, &self.b_den);
        let (c, c_den) = reduce(&self.c, &self.c_den);
        Coeffs {
            a,
            a_den,
            b,
            b_den,
            c,
            c_den,
        }
    }
}

impl fmt::Display for Coeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}/{})·x + ({}/{})·y + {}/{}",
            self.a, self.a_den, self.b, self.b_den, self.c, self.c_den
        )
    }
}

impl fmt::Debug for Coeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Coeffs({}, {}, {}, {}, {}, {})",
            self.a, self.a_den, self.b, self.b_den, self.c, self.c_den
        )
    }
}

/// A full engine state: coefficients plus the two input streams.
#[derive(Clone)]
pub struct AffineData {
    pub coeffs: Coeffs,
    pub v1: DigitStream,
    pub v2: DigitStream,
}

/// Result of the production test on a full state. The production cases
/// carry the state they were validated on.
#[derive(Clone)]
pub enum Decision {
    CaseR(AffineData),
    CaseL(AffineData),
    CaseC(AffineData),
    Consume,
}

impl fmt::Debug for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decision::CaseR(x) => write!(f, "CaseR({:?})", x.coeffs),
            Decision::CaseL(x) => write!(f, "CaseL({:?})", x.coeffs),
            Decision::CaseC(x) => write!(f, "CaseC({:?})", x.coeffs),
            Decision::Consume => write!(f, "Consume"),
        }
    }
}

impl Decision {
    pub fn case(&self) -> Case {
        match self {
            Decision::CaseR(_) => Case::R,
            Decision::CaseL(_) => Case::L,
            Decision::CaseC(_) => Case::C,
            Decision::Consume => Case::Consume,
        }
    }
}

/// Engine knobs. The defaults are what the public API uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    /// Reduce every coefficient pair after each step.
    pub normalize: bool,
    pub table: ConsumeTable,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            normalize: true,
            table: ConsumeTable::Correct,
        }
    }
}

impl AffineData {
    pub fn new(coeffs: Coeffs, v1: DigitStream, v2: DigitStream) -> Self {
        AffineData { coeffs, v1, v2 }
    }

    /// The state's value when `v1` stands for `p` and `v2` for `q`.
    pub fn state_value(&self, p: &Rational, q: &Rational) -> Rational {
        self.coeffs.value(p, q)
    }

    pub fn decide(&self) -> Decision {
        match self.coeffs.decide() {
            Case::R => Decision::CaseR(self.clone()),
            Case::L => Decision::CaseL(self.clone()),
            Case::C => Decision::CaseC(self.clone()),
            Case::Consume => Decision::Consume,
        }
    }

    pub fn measure(&self) -> u64 {
        self.coeffs.measure()
    }

    pub fn normalize(&self) -> AffineData {
        self.with_coeffs(self.coeffs.normalize())
    }

    fn with_coeffs(&self, coeffs: Coeffs) -> AffineData {
        AffineData {
            coeffs,
            v1: self.v1.clone(),
            v2: self.v2.clone(),
        }
    }

    pub fn prod_r(&self) -> Result<AffineData> {
        Ok(self.with_coeffs(self.coeffs.prod_r()?))
    }

    pub fn prod_l(&self) -> AffineData {
        self.with_coeffs(self.coeffs.prod_l())
    }

    pub fn prod_c(&self) -> Result<AffineData> {
        Ok(self.with_coeffs(self.coeffs.prod_c()?))
    }

    /// Reads one digit from each input.
    pub fn consume(&self) -> AffineData {
        self.consume_with(ConsumeTable::Correct)
    }

    fn consume_with(&self, table: ConsumeTable) -> AffineData {
        let (d1, t1) = self.v1.force();
        let (d2, t2) = self.v2.force();
        AffineData {
            coeffs: self.coeffs.consume_digits_with(*d1, *d2, table),
            v1: t1.clone(),
            v2: t2.clone(),
        }
    }

    /// Consumes until a production test succeeds and returns the digit, the
    /// state it was validated on (before production), and the consume count.
    pub fn settle(&self, opts: EngineOptions) -> (Digit, AffineData, u64) {
        let mut state = self.clone();
        let budget = state.measure();
        let mut consumed = 0u64;
        loop {
            if let Some(d) = state.coeffs.decide().digit() {
                debug_assert!(consumed <= budget);
                return (d, state, consumed);
            }
            state = state.consume_with(opts.table);
            if opts.normalize {
                state = state.normalize();
            }
            consumed += 1;
        }
    }

    /// One engine step: settle, then apply the production for the emitted
    /// digit.
    pub fn step(&self, opts: EngineOptions) -> EngineStep {
        let (digit, validated, consumed) = self.settle(opts);
        let coeffs = validated
            .coeffs
            .produce(digit)
            .expect("production test guarantees the precondition");
        let coeffs = if opts.normalize { coeffs.normalize() } else { coeffs };
        EngineStep {
            digit,
            consumed,
            next: validated.with_coeffs(coeffs),
        }
    }

    /// Iterator over engine steps.
    pub fn steps(&self, opts: EngineOptions) -> Steps {
        Steps {
            state: self.clone(),
            opts,
        }
    }
}

/// One emitted digit and the state that follows it.
#[derive(Clone)]
pub struct EngineStep {
    pub digit: Digit,
    /// Consume steps performed before this digit could be emitted.
    pub consumed: u64,
    pub next: AffineData,
}

pub struct Steps {
    state: AffineData,
    opts: EngineOptions,
}

impl Iterator for Steps {
    type Item = EngineStep;

    fn next(&mut self) -> Option<EngineStep> {
        let step = self.state.step(self.opts);
        self.state = step.next.clone();
        Some(step)
    }
}

/// The digit stream of `(a/a')·v1 + (b/b')·v2 + c/c'`.
///
/// Always productive. The digits describe the value only when the inputs
/// lie in `[0, 1]` and the combined value does too; otherwise the stream is
/// well defined but represents nothing.
pub fn produce_stream(x: AffineData) -> DigitStream {
    produce_stream_with(x, EngineOptions::default())
}

pub fn produce_stream_with(x: AffineData, opts: EngineOptions) -> DigitStream {
    let x = if opts.normalize { x.normalize() } else { x };
    Stream::lazy(move || {
        let step = x.step(opts);
        (step.digit, produce_stream_with(step.next, opts))
    })
}

/// `emit_value` composed into a state: the value a consumed state must
/// reproduce.
pub fn consumed_value_oracle(x: &Coeffs, d1: Digit, d2: Digit, p: &Rational, q: &Rational) -> Rational {
    x.value(&emit_value(d1, p), &emit_value(d2, q))
}
