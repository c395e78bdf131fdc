//! Bit-level encodings of symbolic patterns.
//!
//! Two encoders: the distributed one concatenates each slot's phonetic
//! feature vector, and the error-correcting one concatenates per-symbol
//! codewords from a [`Codebook`]. Both decode by nearest Hamming distance
//! with uniform random tie-breaking, so decoding takes an explicit rng.

mod bits;
mod codebook;
mod distributed;

pub use bits::{attributes_to_bits, bits_to_attributes, hamming, BitVector};
pub use codebook::{build_codebook, decode_ecc, encode_ecc, Codebook, SearchBudget};
pub use distributed::{decode_distributed, encode_distributed};
