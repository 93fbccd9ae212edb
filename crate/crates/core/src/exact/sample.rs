use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rat::{rat, Rat};

/// Default numerator bound for random rational points.
pub const DEFAULT_HEIGHT: i64 = 50;
/// Default number of re-draws when a random point turns out non-generic.
pub const DEFAULT_RETRIES: usize = 5;

/// Seeded stream of random rationals of bounded height.
///
/// Every randomized operation in the crate takes one of these explicitly, so
/// a computation is reproducible from its seed alone.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    height: i64,
    retries: usize,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self::with_params(seed, DEFAULT_HEIGHT, DEFAULT_RETRIES)
    }

    pub fn with_params(seed: u64, height: i64, retries: usize) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            height: height.max(1),
            retries: retries.max(1),
        }
    }

    pub fn height(&self) -> i64 {
        self.height
    }

    pub fn retries(&self) -> usize {
        self.retries
    }

    /// Derives an independent stream; used to hand sub-computations their own
    /// randomness without disturbing this one.
    pub fn fork(&mut self) -> Sampler {
        let seed = self.rng.random::<u64>();
        Sampler::with_params(seed, self.height, self.retries)
    }

    /// Integer uniform in `[-height, height]`.
    pub fn int(&mut self) -> i64 {
        self.rng.random_range(-self.height..=self.height)
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn rat(&mut self) -> Rat {
        rat(self.int())
    }

    /// Nonzero integer in `[-height, height]`.
    pub fn nonzero_rat(&mut self) -> Rat {
        loop {
            let v = self.int();
            if v != 0 {
                return rat(v);
            }
        }
    }

    pub fn vec(&mut self, n: usize) -> Vec<Rat> {
        (0..n).map(|_| self.rat()).collect()
    }

    /// Random vector that is not identically zero.
    pub fn nonzero_vec(&mut self, n: usize) -> Vec<Rat> {
        loop {
            let v: Vec<i64> = (0..n).map(|_| self.int()).collect();
            if v.iter().any(|&x| x != 0) {
                return v.into_iter().map(rat).collect();
            }
        }
    }

    pub fn u64(&mut self) -> u64 {
        self.rng.random()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        assert_eq!(a.vec(20), b.vec(20));
        let mut c = Sampler::new(8);
        assert_ne!(a.vec(20), c.vec(20));
    }

    #[test]
    fn respects_height() {
        let mut s = Sampler::with_params(1, 3, 1);
        for _ in 0..200 {
            let v = s.int();
            assert!((-3..=3).contains(&v));
        }
    }
}
