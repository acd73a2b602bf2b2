//! Seeded random draws for "generic" choices, with the run-twice agreement rule.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default bound on random integer coefficients.
pub const BASE_RANGE: i64 = 101;

/// Source of generic choices. Every generic computation is evaluated with two
/// independent draws and accepted only when both agree; on disagreement the
/// coefficient range is widened tenfold and the pair is redrawn, up to `retries` times.
#[derive(Debug)]
pub struct Genericity {
    seed: u64,
    retries: u32,
    prescreen: bool,
    streams: AtomicU64,
    redraws: AtomicU64,
}

impl Clone for Genericity {
    fn clone(&self) -> Self {
        Genericity {
            seed: self.seed,
            retries: self.retries,
            prescreen: self.prescreen,
            streams: AtomicU64::new(self.streams.load(Ordering::Relaxed)),
            redraws: AtomicU64::new(self.redraws.load(Ordering::Relaxed)),
        }
    }
}

impl Default for Genericity {
    fn default() -> Self {
        Genericity::new(0x5eed)
    }
}

/// One random stream with a coefficient bound.
pub struct Draw {
    rng: ChaCha8Rng,
    range: i64,
}

impl Draw {
    /// Uniform integer in `[-range, range]`.
    pub fn coeff(&mut self) -> i64 {
        self.rng.gen_range(-self.range..=self.range)
    }

    /// Uniform nonzero integer in `[-range, range]`.
    pub fn nonzero(&mut self) -> i64 {
        loop {
            let c = self.coeff();
            if c != 0 {
                return c;
            }
        }
    }

    pub fn range(&self) -> i64 {
        self.range
    }
}

impl Genericity {
    pub fn new(seed: u64) -> Genericity {
        Genericity {
            seed,
            retries: 3,
            prescreen: false,
            streams: AtomicU64::new(0),
            redraws: AtomicU64::new(0),
        }
    }

    pub fn with_retries(mut self, retries: u32) -> Genericity {
        self.retries = retries;
        self
    }

    pub fn with_prescreen(mut self, prescreen: bool) -> Genericity {
        self.prescreen = prescreen;
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn retries(&self) -> u32 {
        self.retries
    }

    pub fn prescreen(&self) -> bool {
        self.prescreen
    }

    /// Random streams handed out so far.
    pub fn draws_used(&self) -> u64 {
        self.streams.load(Ordering::Relaxed)
    }

    /// Pairs that disagreed and were redrawn.
    pub fn redraws(&self) -> u64 {
        self.redraws.load(Ordering::Relaxed)
    }

    /// A fresh independent stream with coefficient bound `range`.
    pub fn draw(&self, range: i64) -> Draw {
        let id = self.streams.fetch_add(1, Ordering::Relaxed);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(id);
        Draw { rng, range }
    }

    /// Runs `f` on two independent draws and returns the common value.
    pub fn agree<T: PartialEq>(&self, mut f: impl FnMut(&mut Draw) -> Result<T>) -> Result<T> {
        let mut range = BASE_RANGE;
        for _ in 0..=self.retries {
            let a = f(&mut self.draw(range))?;
            let b = f(&mut self.draw(range))?;
            if a == b {
                return Ok(a);
            }
            self.redraws.fetch_add(1, Ordering::Relaxed);
            range = range.saturating_mul(10);
        }
        Err(Error::GenericityFailure { attempts: self.retries + 1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_reproducible_and_bounded() {
        let a = Genericity::new(7);
        let b = Genericity::new(7);
        let xs: Vec<i64> = (0..20).map(|_| a.draw(3).coeff()).collect();
        let ys: Vec<i64> = (0..20).map(|_| b.draw(3).coeff()).collect();
        assert_eq!(xs, ys);
        assert!(xs.iter().all(|x| (-3..=3).contains(x)));
    }

    #[test]
    fn disagreement_exhausts_the_budget() {
        let g = Genericity::new(1).with_retries(2);
        let mut n = 0;
        let r: Result<i64> = g.agree(|_| {
            n += 1;
            Ok(n)
        });
        assert_eq!(r, Err(Error::GenericityFailure { attempts: 3 }));
        assert_eq!(g.redraws(), 3);
        let ok = g.agree(|d| Ok(d.range() > 0));
        assert_eq!(ok, Ok(true));
    }
}
