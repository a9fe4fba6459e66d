//! The convex set `K` and its extreme points.
//!
//! `K` holds the positive non-increasing sequences with
//! `a_n ≤ 1 − Σ_{k≤n} a_k` for all `n`. Its extreme points are exactly the
//! block sequences built from a radix word `k_1, k_2, …`: block `j` consists
//! of `k_j − 1` copies of `1/(k_1⋯k_j)`.

mod affine;
mod codec;
mod digits;
mod word;

pub use affine::{face_membership, pi_m, pi_m_inverse};
pub use codec::{k_membership, radix_to_sequence, sequence_to_radix, ExtremalityReport};
pub use digits::{bits_to_digits, digits_to_bits, mixed_radix_digits};
pub use word::RadixWord;
