//! BLS12-381 backend (arkworks), ~128-bit security.

use std::ops::{Add, Mul, Neg, Sub};

use ark_bls12_381::{g2, Bls12_381, Fr, G1Affine, G1Projective, G2Affine, G2Projective};
use ark_ec::hashing::curve_maps::wb::WBMap;
use ark_ec::hashing::map_to_curve_hasher::MapToCurveBasedHasher;
use ark_ec::hashing::HashToCurve;
use ark_ec::pairing::{Pairing, PairingOutput};
use ark_ec::{CurveGroup, Group};
use ark_ff::field_hashers::DefaultFieldHasher;
use ark_ff::{BigInteger, Field, One, PrimeField, Zero};
use ark_serialize::{CanonicalDeserialize, CanonicalSerialize};
use rand::RngCore;
use sha2::Sha256;

use super::{GroupPoint, PairingGroup, ScalarField, TargetGroup};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Bls12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlsScalar(pub Fr);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlsG1(pub G1Projective);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlsG2(pub G2Projective);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlsGt(pub PairingOutput<Bls12_381>);

impl Add for BlsScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        BlsScalar(self.0 + rhs.0)
    }
}

impl Sub for BlsScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        BlsScalar(self.0 - rhs.0)
    }
}

impl Mul for BlsScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        BlsScalar(self.0 * rhs.0)
    }
}

impl Neg for BlsScalar {
    type Output = Self;
    fn neg(self) -> Self {
        BlsScalar(-self.0)
    }
}

impl ScalarField for BlsScalar {
    const ENCODED_LEN: usize = 32;

    fn zero() -> Self {
        BlsScalar(Fr::zero())
    }

    fn one() -> Self {
        BlsScalar(Fr::one())
    }

    fn from_u64(v: u64) -> Self {
        BlsScalar(Fr::from(v))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn inverse(&self) -> Option<Self> {
        self.0.inverse().map(BlsScalar)
    }

    fn random<R: RngCore + ?Sized>(rng: &mut R) -> Self {
        let mut wide = [0u8; 64];
        rng.fill_bytes(&mut wide);
        BlsScalar(Fr::from_le_bytes_mod_order(&wide))
    }

    fn from_wide_bytes(bytes: &[u8]) -> Self {
        BlsScalar(Fr::from_le_bytes_mod_order(bytes))
    }

    fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(Self::ENCODED_LEN);
        self.0.serialize_compressed(&mut out).expect("serializing into a Vec cannot fail");
        out
    }

    fn from_bytes(bytes: &[u8]) -> Option<Self> {
        if bytes.len() != Self::ENCODED_LEN {
            return None;
        }
        Fr::deserialize_compressed(bytes).ok().map(BlsScalar)
    }
}

macro_rules! source_group {
    ($wrapper:ident, $proj:ty, $affine:ty, $len:expr) => {
        impl Add for $wrapper {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                $wrapper(self.0 + rhs.0)
            }
        }

        impl Sub for $wrapper {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                $wrapper(self.0 - rhs.0)
            }
        }

        impl Neg for $wrapper {
            type Output = Self;
            fn neg(self) -> Self {
                $wrapper(-self.0)
            }
        }

        impl GroupPoint<BlsScalar> for $wrapper {
            const ENCODED_LEN: usize = $len;

            fn identity() -> Self {
                $wrapper(<$proj>::zero())
            }

            fn generator() -> Self {
                $wrapper(<$proj as Group>::generator())
            }

            fn is_identity(&self) -> bool {
                self.0.is_zero()
            }

            fn mul_scalar(&self, k: &BlsScalar) -> Self {
                $wrapper(self.0 * k.0)
            }

            fn to_bytes(&self) -> Vec<u8> {
                let mut out = Vec::with_capacity($len);
                self.0.into_affine().serialize_compressed(&mut out).expect("serializing into a Vec cannot fail");
                out
            }

            fn from_bytes(bytes: &[u8]) -> Option<Self> {
                if bytes.len() != $len {
                    return None;
                }
                // Validates curve equation and subgroup membership.
                let affine = <$affine>::deserialize_compressed(bytes).ok()?;
                let point = $wrapper(affine.into());
                // Reject alternative encodings of the same point.
                (point.to_bytes() == bytes).then_some(point)
            }
        }
    };
}

source_group!(BlsG1, G1Projective, G1Affine, 48);
source_group!(BlsG2, G2Projective, G2Affine, 96);

impl TargetGroup<BlsScalar> for BlsGt {
    const ENCODED_LEN: usize = 576;

    fn one() -> Self {
        BlsGt(PairingOutput::zero())
    }

    fn is_one(&self) -> bool {
        self.0.is_zero()
    }

    fn mul(&self, other: &Self) -> Self {
        BlsGt(self.0 + other.0)
    }

    fn pow(&self, k: &BlsScalar) -> Self {
        BlsGt(self.0 * k.0)
    }

    fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(Self::ENCODED_LEN);
        self.0.serialize_compressed(&mut out).expect("serializing into a Vec cannot fail");
        out
    }
}

type G2Hasher = MapToCurveBasedHasher<G2Projective, DefaultFieldHasher<Sha256, 128>, WBMap<g2::Config>>;

impl PairingGroup for Bls12 {
    const CURVE_ID: u8 = 0x01;
    const NAME: &'static str = "BLS12-381";

    type Scalar = BlsScalar;
    type G1 = BlsG1;
    type G2 = BlsG2;
    type Gt = BlsGt;
    type G2Prepared = <Bls12_381 as Pairing>::G2Prepared;

    fn pairing(a: &BlsG1, b: &BlsG2) -> BlsGt {
        BlsGt(Bls12_381::pairing(a.0.into_affine(), b.0.into_affine()))
    }

    fn prepare_g2(b: &BlsG2) -> Self::G2Prepared {
        b.0.into_affine().into()
    }

    fn pairing_prepared(a: &BlsG1, b: &Self::G2Prepared) -> BlsGt {
        BlsGt(Bls12_381::multi_pairing([a.0.into_affine()], [b.clone()]))
    }

    fn multi_pairing(a: &[BlsG1], b: &[BlsG2]) -> BlsGt {
        assert_eq!(a.len(), b.len(), "pairing inputs must pair up");
        let a = G1Projective::normalize_batch(&a.iter().map(|p| p.0).collect::<Vec<_>>());
        let b = G2Projective::normalize_batch(&b.iter().map(|p| p.0).collect::<Vec<_>>());
        BlsGt(Bls12_381::multi_pairing(a, b))
    }

    fn hash_to_g2(dst: &[u8], msg: &[u8]) -> BlsG2 {
        let hasher = G2Hasher::new(dst).expect("WB map parameters for BLS12-381 G2 are valid");
        let point = hasher.hash(msg).expect("SSWU map is total on BLS12-381 G2");
        BlsG2(point.into())
    }

    fn order_be_bytes() -> Vec<u8> {
        Fr::MODULUS.to_bytes_be()
    }
}
