//! Random members of pattern classes.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Rational, RationalMatrix};
use crate::pattern::PatternMatrix;
use crate::symbol::Symbol;

/// Sampled magnitudes are multiples of `1 / QUANTUM`, so members are exact
/// rationals with small denominators.
pub const QUANTUM: i64 = 256;

/// Controls how [`sample_member`] draws entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueDistribution {
    star_range: (f64, f64),
    quest_zero_probability: f64,
    pub seed: u64,
}

impl Default for ValueDistribution {
    fn default() -> Self {
        ValueDistribution {
            star_range: (0.5, 2.0),
            quest_zero_probability: 0.25,
            seed: 0,
        }
    }
}

impl ValueDistribution {
    pub fn new(star_range: (f64, f64), quest_zero_probability: f64, seed: u64) -> Result<Self> {
        let (lo, hi) = star_range;
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(Error::Input(format!(
                "star magnitude range [{lo}, {hi}] must satisfy 0 < lo <= hi"
            )));
        }
        if !(0.0..=1.0).contains(&quest_zero_probability) {
            return Err(Error::Input(format!(
                "quest zero probability {quest_zero_probability} outside [0, 1]"
            )));
        }
        Ok(ValueDistribution {
            star_range,
            quest_zero_probability,
            seed,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Same distribution with a different `?` zero probability.
    pub fn with_quest_zero_probability(self, p: f64) -> Result<Self> {
        Self::new(self.star_range, p, self.seed)
    }

    pub fn star_range(&self) -> (f64, f64) {
        self.star_range
    }

    pub fn quest_zero_probability(&self) -> f64 {
        self.quest_zero_probability
    }

    /// A nonzero value with random sign and magnitude in the star range,
    /// rounded to the sampling grid (never rounded to zero).
    pub fn draw_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Rational {
        let (lo, hi) = self.star_range;
        let x = if hi > lo { rng.gen_range(lo..=hi) } else { lo };
        let units = ((x * QUANTUM as f64).round() as i64).max(1);
        let units = if rng.gen::<bool>() { units } else { -units };
        Rational::new(BigInt::from(units), BigInt::from(QUANTUM))
    }

    pub fn draw<R: Rng + ?Sized>(&self, sym: Symbol, rng: &mut R) -> Rational {
        match sym {
            Symbol::Zero => Rational::from_integer(BigInt::from(0)),
            Symbol::Star => self.draw_nonzero(rng),
            Symbol::Quest => {
                if rng.gen_bool(self.quest_zero_probability) {
                    Rational::from_integer(BigInt::from(0))
                } else {
                    self.draw_nonzero(rng)
                }
            }
        }
    }
}

/// Deterministic member of the pattern class of `p`, seeded by `dist.seed`.
pub fn sample_member(p: &PatternMatrix, dist: &ValueDistribution) -> RationalMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(dist.seed);
    sample_member_with_rng(p, dist, &mut rng)
}

/// Like [`sample_member`] but draws from a caller-owned generator; the seed
/// in `dist` is ignored.
pub fn sample_member_with_rng<R: Rng + ?Sized>(
    p: &PatternMatrix,
    dist: &ValueDistribution,
    rng: &mut R,
) -> RationalMatrix {
    Matrix::from_fn(p.rows(), p.cols(), |i, j| dist.draw(p.get(i, j), rng))
}

/// Floating-point member, for oracles that work numerically.
pub fn sample_member_f64<R: Rng + ?Sized>(p: &PatternMatrix, dist: &ValueDistribution, rng: &mut R) -> Matrix<f64> {
    sample_member_with_rng(p, dist, rng).to_f64()
}
