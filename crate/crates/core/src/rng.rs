//! Seeded random streams. Every consumer derives its own ChaCha stream from
//! the user seed and a structured stream id, so results never depend on
//! evaluation order or thread scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream-id domains, kept in the top bits so ids never collide.
pub(crate) const DOMAIN_CHANNEL: u64 = 0;
pub(crate) const DOMAIN_MEASUREMENT: u64 = 1 << 60;
pub(crate) const DOMAIN_GA: u64 = 2 << 60;
pub(crate) const DOMAIN_SPSA: u64 = 3 << 60;
pub(crate) const DOMAIN_MISC: u64 = 4 << 60;

pub(crate) fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// Mixes two words into a new seed (SplitMix64 finalizer).
pub(crate) fn mix(a: u64, b: u64) -> u64 {
    let mut z = a ^ b.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
