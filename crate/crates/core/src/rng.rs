//! Deterministic randomness plumbing.
//!
//! Every stochastic routine in this crate takes an explicit 64-bit seed and
//! derives its stream from [`rng_from_seed`]. Sub-streams are split off with
//! [`subseed`], which mixes a parent seed with string labels through a stable
//! FNV-1a hash. Nothing here depends on process state, thread identity, or
//! iteration order, so equal inputs give bit-equal streams on every platform.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// FNV-1a over a byte stream. Not cryptographic; stable by construction.
pub fn fnv1a(bytes: impl IntoIterator<Item = u8>) -> u64 {
    let mut h = FNV_OFFSET;
    for b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// Counter-based generator for a seed. ChaCha8 is seek-able and keyed only by
/// the seed value, which keeps replays identical across platforms.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives a child seed from `seed` and a sequence of labels.
///
/// Labels are length-prefixed before hashing so `("ab", "c")` and `("a", "bc")`
/// land in different streams.
pub fn subseed(seed: u64, labels: &[&str]) -> u64 {
    let mut bytes = Vec::with_capacity(16 + labels.iter().map(|l| l.len() + 8).sum::<usize>());
    bytes.extend_from_slice(&seed.to_le_bytes());
    for label in labels {
        bytes.extend_from_slice(&(label.len() as u64).to_le_bytes());
        bytes.extend_from_slice(label.as_bytes());
    }
    fnv1a(bytes)
}

/// First `k` entries of a Fisher-Yates shuffle of `pool`, in draw order.
///
/// Touches only the first `k` slots, so the cost is O(k) swaps regardless of
/// pool size. `k` is clamped to the pool length.
pub fn sample_prefix<T: Copy>(rng: &mut impl Rng, pool: &[T], k: usize) -> Vec<T> {
    let mut items = pool.to_vec();
    let k = k.min(items.len());
    for i in 0..k {
        let j = i + rng.random_range(0..(items.len() - i) as u64) as usize;
        items.swap(i, j);
    }
    items.truncate(k);
    items
}

/// Full Fisher-Yates shuffle in place.
pub fn shuffle<T>(rng: &mut impl Rng, items: &mut [T]) {
    for i in 0..items.len().saturating_sub(1) {
        let j = i + rng.random_range(0..(items.len() - i) as u64) as usize;
        items.swap(i, j);
    }
}
