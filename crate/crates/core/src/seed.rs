//! Counter-based seeding.
//!
//! Every draw is a pure function of `(master, stream, index)`: the triple is
//! hashed with the splitmix64 finalizer into the seed of a fresh
//! xoshiro256++ generator. Work can therefore be split into chunks in any
//! way without changing a single sample.

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

/// Generator used for one sample index.
pub type SampleRng = Xoshiro256PlusPlus;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SeedSpec {
    pub master: u64,
    pub stream: u64,
}

impl SeedSpec {
    pub const fn new(master: u64, stream: u64) -> Self {
        Self { master, stream }
    }

    /// Deterministic 64-bit key for sample `index` of this stream.
    pub fn key(&self, index: u64) -> u64 {
        let a = mix64(self.master.wrapping_add(GOLDEN));
        let b = mix64(a ^ self.stream.wrapping_mul(GOLDEN).wrapping_add(0x632B_E59B_D9B4_E019));
        mix64(b ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03))
    }

    pub fn sample_rng(&self, index: u64) -> SampleRng {
        SampleRng::seed_from_u64(self.key(index))
    }

    /// Independent stream labelled by `tag`, e.g. one per experiment row.
    pub fn substream(&self, tag: u64) -> Self {
        Self {
            master: self.master,
            stream: mix64(self.stream ^ mix64(tag.wrapping_add(GOLDEN))),
        }
    }
}
