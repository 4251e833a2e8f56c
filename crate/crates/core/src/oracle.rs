//! Exact-rational oracles and random generators used by the self-test
//! command and the test suites.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::digit::{Digit, DigitStream};
use crate::engine::{produce_stream_with, AffineData, Coeffs, EngineOptions};
use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::real::from_rational;
use crate::stream::Stream;

/// A digit stream for `r` that picks pseudo-randomly among every digit
/// admissible at each step, so `C` digits appear alongside `L` and `R`.
pub fn redundant_stream(r: &Rational, seed: u64) -> Result<DigitStream> {
    if !r.in_unit_interval() {
        return Err(Error::OutOfRange(r.clone()));
    }
    let quarter = Rational::new(1, 4).expect("nonzero");
    let half = Rational::new(1, 2).expect("nonzero");
    let three_quarters = Rational::new(3, 4).expect("nonzero");
    let rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(Stream::unfold((r.clone(), rng), move |(r, mut rng)| {
        let mut options = Vec::with_capacity(3);
        if r <= half {
            options.push(Digit::L);
        }
        if r >= half {
            options.push(Digit::R);
        }
        if quarter <= r && r <= three_quarters {
            options.push(Digit::C);
        }
        let d = options[rng.gen_range(0..options.len())];
        let two = Rational::from_integer(2);
        let next = match d {
            Digit::L => &r * &two,
            Digit::R => &r * &two - Rational::one(),
            Digit::C => &r * &two - half.clone(),
        };
        (d, (next, rng))
    }))
}

/// Either the plain binary stream or a redundant one, chosen by `rng`.
pub fn random_stream_for(r: &Rational, rng: &mut impl Rng) -> DigitStream {
    if rng.gen_bool(0.5) {
        from_rational(r).expect("in range").digits().clone()
    } else {
        redundant_stream(r, rng.gen()).expect("in range")
    }
}

/// `a/b` with `1 <= b <= max_den` and `0 <= a <= b`.
pub fn random_unit_rational(rng: &mut impl Rng, max_den: i64) -> Rational {
    let b = rng.gen_range(1..=max_den);
    let a = rng.gen_range(0..=b);
    Rational::new(a, b).expect("positive denominator")
}

/// Three non-negative rationals with sum at most 1.
pub fn random_checked_coeffs(rng: &mut impl Rng) -> [Rational; 3] {
    let den = rng.gen_range(1..=1000i64);
    let n1 = rng.gen_range(0..=den);
    let n2 = rng.gen_range(0..=den - n1);
    let n3 = rng.gen_range(0..=den - n1 - n2);
    let mut parts = [n1, n2, n3];
    // avoid always giving the first slot the largest share
    for i in (1..3).rev() {
        let j = rng.gen_range(0..=i);
        parts.swap(i, j);
    }
    parts.map(|n| Rational::new(n, den).expect("positive denominator"))
}

/// Arbitrary sign-respecting coefficients with small entries.
pub fn random_coeffs(rng: &mut impl Rng, max: i64) -> Coeffs {
    let mut v = || BigInt::from(rng.gen_range(0..=max));
    let (a, b, c) = (v(), v(), v());
    let mut d = || BigInt::from(rng.gen_range(1..=max.max(1)));
    let (ad, bd, cd) = (d(), d(), d());
    Coeffs::new(a, ad, b, bd, c, cd).expect("non-negative")
}

/// One self-test case for the affine engine.
#[derive(Debug, Clone)]
pub struct AffineCase {
    pub coeffs: [Rational; 3],
    pub p: Rational,
    pub q: Rational,
    pub seed: u64,
}

impl AffineCase {
    pub fn random(rng: &mut impl Rng) -> Self {
        AffineCase {
            coeffs: random_checked_coeffs(rng),
            p: random_unit_rational(rng, 1_000_000),
            q: random_unit_rational(rng, 1_000_000),
            seed: rng.gen(),
        }
    }

    pub fn exact_value(&self) -> Rational {
        let [ca, cb, cc] = &self.coeffs;
        ca * &self.p + cb * &self.q + cc.clone()
    }

    /// Expands the combination to `depth` digits using redundant input
    /// streams and returns the digits together with whether their interval
    /// contains the exact value.
    pub fn check(&self, depth: usize, opts: EngineOptions) -> (Vec<Digit>, bool) {
        let [ca, cb, cc] = &self.coeffs;
        let coeffs = Coeffs::from_rationals(ca, cb, cc).expect("non-negative");
        let v1 = redundant_stream(&self.p, self.seed).expect("in range");
        let v2 = redundant_stream(&self.q, self.seed.wrapping_add(1)).expect("in range");
        let out = produce_stream_with(AffineData::new(coeffs, v1, v2), opts).take(depth);
        let ok = crate::digit::prefix_interval(&out).contains(&self.exact_value());
        (out, ok)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digit::represents_to_depth;

    #[test]
    fn redundant_streams_are_sound_and_use_all_digits() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut seen_c = false;
        for _ in 0..200 {
            let r = random_unit_rational(&mut rng, 1000);
            let s = redundant_stream(&r, rng.gen()).unwrap();
            assert!(represents_to_depth(&s, &r, 64));
            seen_c |= s.take(64).contains(&Digit::C);
        }
        assert!(seen_c);
    }

    #[test]
    fn checked_coeffs_sum_at_most_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let [a, b, c] = random_checked_coeffs(&mut rng);
            assert!(a.clone() + b.clone() + c.clone() <= Rational::one());
            assert!(!a.is_negative() && !b.is_negative() && !c.is_negative());
        }
    }
}
