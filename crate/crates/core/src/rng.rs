//! Seeded, stream-splittable randomness.
//!
//! Every optimizer owns one [`RngStream`]; one extra master stream drives
//! initialization. Streams are ChaCha8 instances keyed by `(seed, stream_id)`,
//! so the same pair always replays the same sequence and distinct stream ids
//! never interleave — results do not depend on evaluation order or worker
//! count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One independent random sequence, addressed by `(seed, stream_id)`.
///
/// Convention used by the runners: stream id 0 is the master stream
/// (ensemble initialization, initial temperature draws), and optimizer `i`
/// owns stream id `i + 1`.
#[derive(Clone, Debug)]
pub struct RngStream {
    rng: ChaCha8Rng,
    seed: u64,
    stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self {
            rng,
            seed,
            stream_id,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Next uniform deviate in `[0, 1)` (53-bit resolution).
    pub fn uniform01(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    /// Uniform deviate in `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.uniform01() * (hi - lo)
    }

    /// One standard-Cauchy deviate via the inverse CDF.
    ///
    /// `u = 0` maps onto the tangent pole at `-pi/2`; that measure-zero draw
    /// is resampled so the output is always finite.
    pub fn cauchy(&mut self) -> f64 {
        loop {
            let u = self.uniform01();
            if u != 0.0 {
                return cauchy_from_uniform(u);
            }
        }
    }
}

/// Inverse-CDF map from a uniform deviate in `(0, 1)` to a standard-Cauchy
/// deviate: `tan(pi * (u - 1/2))`.
pub fn cauchy_from_uniform(u: f64) -> f64 {
    (std::f64::consts::PI * (u - 0.5)).tan()
}

/// Deterministic sub-seed derivation (SplitMix64 finalizer over the pair).
///
/// Used to key independent runs, sweep members, and rotation matrices off a
/// single campaign seed: adding runs never perturbs earlier runs' seeds.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
