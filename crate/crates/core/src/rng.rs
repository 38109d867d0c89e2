//! The seeded random source every stochastic routine draws from.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng`), seeded through
//! `SeedableRng::seed_from_u64`, which expands the 64-bit seed into the
//! 256-bit key with PCG32 as documented by `rand_core` 0.6. Child sources are
//! keyed by a hash of the parent's *seed* and a label, never by the parent's
//! current state, so drawing from a parent does not perturb its children.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource { seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// A fresh source keyed by `(self.seed(), label)`.
    pub fn derive_child(&self, label: &str) -> RandomSource {
        RandomSource::new(child_seed(self.seed, label))
    }

    /// Uniform index in `0..bound`. `bound` must be positive.
    pub fn below(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    /// Uniform real in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    /// True with probability `p`.
    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        use rand::seq::SliceRandom;
        items.shuffle(&mut self.rng);
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}

// FNV-1a over the seed bytes and the label, then the SplitMix64 finalizer.
fn child_seed(seed: u64, label: &str) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    for b in seed.to_le_bytes().iter().chain(label.as_bytes()) {
        h ^= u64::from(*b);
        h = h.wrapping_mul(PRIME);
    }
    h = (h ^ (h >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h = (h ^ (h >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    h ^ (h >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn first_64(mut s: RandomSource) -> [u64; 64] {
        let mut out = [0; 64];
        for v in out.iter_mut() {
            *v = s.next_u64();
        }
        out
    }

    #[test]
    fn same_seed_same_stream() {
        assert_eq!(first_64(RandomSource::new(42)), first_64(RandomSource::new(42)));
    }

    #[test]
    fn same_label_same_child() {
        let root = RandomSource::new(1);
        assert_eq!(first_64(root.derive_child("ga")), first_64(root.derive_child("ga")));
    }

    #[test]
    fn labels_separate_children() {
        let root = RandomSource::new(1);
        assert_ne!(first_64(root.derive_child("ga")), first_64(root.derive_child("sa")));
    }

    #[test]
    fn seeds_separate_children() {
        let a = RandomSource::new(1).derive_child("x");
        let b = RandomSource::new(2).derive_child("x");
        assert_ne!(first_64(a), first_64(b));
    }

    #[test]
    fn child_ignores_parent_draws() {
        let mut root = RandomSource::new(9);
        let before = first_64(root.derive_child("k"));
        for _ in 0..1000 {
            root.next_u64();
        }
        assert_eq!(before, first_64(root.derive_child("k")));
    }

    #[test]
    fn below_stays_in_range() {
        let mut s = RandomSource::new(3);
        assert!((0..10_000).all(|_| s.below(7) < 7));
    }
}
