//! Seeded random streams and random rational data.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numeric::Rational;

pub type StreamRng = ChaCha8Rng;

/// Independent stream number `index` under `seed`. Trials use their index so
/// that reports do not depend on scheduling order.
pub fn stream(seed: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Random rational with numerator and denominator drawn from `[-bound, bound]`
/// (denominator nonzero).
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    let num = rng.random_range(-bound..=bound);
    let den = loop {
        let d = rng.random_range(-bound..=bound);
        if d != 0 {
            break d;
        }
    };
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Random rational vector with at least one nonzero entry.
pub fn random_rational_vec<R: Rng + ?Sized>(rng: &mut R, len: usize, bound: i64) -> Vec<Rational> {
    loop {
        let v: Vec<Rational> = (0..len).map(|_| random_rational(rng, bound)).collect();
        if !crate::numeric::is_zero_vec(&v) {
            return v;
        }
    }
}

/// Default bound for random rational inputs.
pub const RATIONAL_BOUND: i64 = 10;
