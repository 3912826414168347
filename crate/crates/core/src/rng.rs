//! Deterministic randomness.
//!
//! Every random draw in the lab comes from ChaCha8 seeded with a single
//! 64-bit seed (`rand_core::SeedableRng::seed_from_u64`). Independent
//! consumers (parameter generation, each dealer) get their own ChaCha
//! stream number under the same seed, so adding a party never perturbs the
//! draws of another.

use num_bigint::BigUint;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::Natural;

pub type LabRng = ChaCha8Rng;

/// Stream used for parameter generation. Dealer `i` uses stream `i`.
pub const PARAMS_STREAM: u64 = 0;

pub fn seeded(seed: u64) -> LabRng {
    LabRng::seed_from_u64(seed)
}

pub fn substream(seed: u64, stream: u64) -> LabRng {
    let mut rng = seeded(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform draw from `[0, bound)` by rejection sampling. `bound` must be nonzero.
pub fn random_below<R: RngCore + ?Sized>(rng: &mut R, bound: &Natural) -> Natural {
    assert!(bound.bits() > 0, "random_below: zero bound");
    let bits = bound.bits();
    let nbytes = bits.div_ceil(8) as usize;
    let excess = (nbytes as u64) * 8 - bits;
    let mut buf = vec![0u8; nbytes];
    loop {
        rng.fill_bytes(&mut buf);
        // little endian: the last byte is the most significant
        buf[nbytes - 1] &= 0xffu8 >> excess;
        let candidate = BigUint::from_bytes_le(&buf);
        if &candidate < bound {
            return candidate;
        }
    }
}

/// Uniform draw from `[lo, hi)`.
pub fn random_range<R: RngCore + ?Sized>(rng: &mut R, lo: &Natural, hi: &Natural) -> Natural {
    assert!(lo < hi, "random_range: empty range");
    lo + random_below(rng, &(hi - lo))
}

/// Uniform draw of an integer with exactly `bits` bits (top bit set).
pub fn random_with_bits<R: RngCore + ?Sized>(rng: &mut R, bits: u64) -> Natural {
    assert!(bits >= 1);
    let top = BigUint::from(1u8) << (bits - 1);
    &top + random_below(rng, &top)
}
