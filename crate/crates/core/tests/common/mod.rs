//! Shared helpers for integration tests.
#![allow(dead_code)]

pub mod cli;
pub mod toy_oracle;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Compressed encoding of a BLS12-381 G1 point that lies on the curve but
/// outside the prime-order subgroup.
pub fn bls_g1_outside_subgroup(seed: u64) -> Vec<u8> {
    use ark_bls12_381::{Fq, G1Affine};
    use ark_ff::UniformRand;
    use ark_serialize::CanonicalSerialize;

    let mut rng = rng(seed);
    let p = loop {
        if let Some(p) = G1Affine::get_point_from_x_unchecked(Fq::rand(&mut rng), false) {
            if !p.is_in_correct_subgroup_assuming_on_curve() {
                break p;
            }
        }
    };
    let mut bytes = Vec::new();
    p.serialize_compressed(&mut bytes).unwrap();
    bytes
}
