//! Counter-based 64-bit randomness.
//!
//! Every random value is a pure function of `(seed, index)`:
//!
//! ```text
//! mix64(z):   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//!             z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//!             z ^ (z >> 31)                        (wrapping arithmetic)
//! derive(seed, index) = mix64(seed ^ mix64((index + 1) * 0x9e3779b97f4a7c15))
//! below(x, bound)     = (x * bound) >> 64          (128-bit product)
//! ```
//!
//! `mix64` is the SplitMix64 finaliser. `below` maps a uniform 64-bit word to
//! `0..bound` with bias below `bound / 2^64`.

pub const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[inline]
pub fn derive(seed: u64, index: u64) -> u64 {
    mix64(seed ^ mix64(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

#[inline]
pub fn below(x: u64, bound: u64) -> u64 {
    ((x as u128 * bound as u128) >> 64) as u64
}
