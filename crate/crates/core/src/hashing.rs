//! Identities, message blocks, and the four random-oracle hashes.
//!
//! | hash | input                          | output                          | construction                         |
//! |------|--------------------------------|---------------------------------|--------------------------------------|
//! | `h0` | identity                       | slot-two point (`Q`)            | hash-to-curve, vacant -> identity    |
//! | `h1` | target-group element `w`       | mask of `n2 + n1 + n3` bits     | SHAKE256, `w = 1` -> all-zero mask   |
//! | `h2` | `m ‖ ID_A ‖ ID_B`              | nonzero scalar                  | SHA-512, wide reduction, rehash on 0 |
//! | `h3` | `m ‖ X` (‖ block position)     | nonzero scalar                  | SHA-512, wide reduction, rehash on 0 |
//!
//! The domain-separation tags below are part of the wire format; changing any
//! of them requires bumping [`HASH_SUITE_VERSION`].

use sha2::{Digest, Sha512};
use sha3::digest::{ExtendableOutput, Update, XofReader};
use sha3::Shake256;

use crate::algebra::{GroupPoint, PairingGroup, ScalarField, TargetGroup};
use crate::error::{Error, Result};

pub const HASH_SUITE_VERSION: u8 = 1;

pub const DST_H0: &[u8] = b"IDGSC-V01-H0-ID-TO-G2_XMD:SHA-256_SSWU_RO_";
pub const DST_H1: &[u8] = b"IDGSC-V01-H1-MASK-SHAKE256";
pub const DST_H2: &[u8] = b"IDGSC-V01-H2-BIND-SHA512";
pub const DST_H3: &[u8] = b"IDGSC-V01-H3-COMMIT-SHA512";

/// A fixed-width identity string. The all-zero string is the vacant
/// identity: "no party in this role".
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Identity(Vec<u8>);

impl Identity {
    /// Raw identity bytes, used verbatim.
    pub fn from_bytes(bytes: impl Into<Vec<u8>>) -> Self {
        Identity(bytes.into())
    }

    /// Encodes a human-readable label as `len ‖ label ‖ 0...` in `width`
    /// bytes. The length prefix keeps the encoding injective and guarantees a
    /// nonempty label never collides with the vacant identity.
    pub fn from_label(label: impl AsRef<[u8]>, width: usize) -> Result<Self> {
        let label = label.as_ref();
        let max = width.saturating_sub(1).min(u8::MAX as usize);
        if label.is_empty() || label.len() > max {
            return Err(Error::IdentityLabel { max, actual: label.len() });
        }
        let mut bytes = vec![0u8; width];
        bytes[0] = label.len() as u8;
        bytes[1..=label.len()].copy_from_slice(label);
        Ok(Identity(bytes))
    }

    pub fn vacant(width: usize) -> Self {
        Identity(vec![0u8; width])
    }

    pub fn is_vacant(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    /// Inverse of [`Identity::from_label`], if the bytes have that shape.
    pub fn label(&self) -> Option<&[u8]> {
        let (&len, rest) = self.0.split_first()?;
        let len = len as usize;
        if len == 0 || len > rest.len() || rest[len..].iter().any(|&b| b != 0) {
            return None;
        }
        Some(&rest[..len])
    }

    pub(crate) fn expect_width(&self, expected: usize) -> Result<()> {
        if self.0.len() == expected {
            Ok(())
        } else {
            Err(Error::MalformedIdentity { expected, actual: self.0.len() })
        }
    }
}

impl std::fmt::Debug for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_vacant() {
            return write!(f, "Identity(vacant/{})", self.0.len());
        }
        match self.label().and_then(|l| std::str::from_utf8(l).ok()) {
            Some(s) => write!(f, "Identity({s:?})"),
            None => write!(f, "Identity(0x{})", hex::encode(&self.0)),
        }
    }
}

impl std::fmt::Display for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_vacant() {
            return f.write_str("<vacant>");
        }
        match self.label().and_then(|l| std::str::from_utf8(l).ok()) {
            Some(s) => f.write_str(s),
            None => write!(f, "0x{}", hex::encode(&self.0)),
        }
    }
}

/// One fixed-width message block.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Message(Vec<u8>);

impl Message {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Self {
        Message(bytes.into())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }

    pub(crate) fn expect_width(&self, expected: usize) -> Result<()> {
        if self.0.len() == expected {
            Ok(())
        } else {
            Err(Error::MalformedMessage { expected, actual: self.0.len() })
        }
    }
}

impl std::fmt::Debug for Message {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Message(0x{})", hex::encode(&self.0))
    }
}

/// A bitstring as wide as `m ‖ ID ‖ serialize(V)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MaskBlock(Vec<u8>);

impl MaskBlock {
    pub fn zero(len: usize) -> Self {
        MaskBlock(vec![0u8; len])
    }

    pub fn from_bytes(bytes: impl Into<Vec<u8>>) -> Self {
        MaskBlock(bytes.into())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    /// `self ⊕ other`. Panics on width mismatch, which is a programming error.
    pub fn xor(&self, other: &MaskBlock) -> MaskBlock {
        assert_eq!(self.0.len(), other.0.len(), "mask width mismatch");
        MaskBlock(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }

    /// Flips bit `index`, counting from the most significant bit of byte 0.
    pub fn flip_bit(&mut self, index: usize) {
        self.0[index / 8] ^= 0x80 >> (index % 8);
    }
}

impl std::fmt::Debug for MaskBlock {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MaskBlock({} bytes)", self.0.len())
    }
}

/// Position of a block inside a multi-block payload. Bound into `h3` so
/// blocks cannot be reordered, dropped or spliced between payloads of
/// different lengths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockPosition {
    pub index: u64,
    pub count: u64,
}

/// The mode selector: 0 for the vacant identity, 1 otherwise.
pub fn mode_selector<S: ScalarField>(id: &Identity) -> S {
    if id.is_vacant() {
        S::zero()
    } else {
        S::one()
    }
}

/// `H0`: identity to slot-two point. The vacant identity maps to the group
/// identity.
pub fn h0<E: PairingGroup>(id: &Identity) -> E::G2 {
    if id.is_vacant() {
        return E::G2::identity();
    }
    E::hash_to_g2(DST_H0, id.as_bytes())
}

/// `H1`: target-group element to a mask of `len` bytes. The target identity
/// maps to the all-zero mask, which is what makes signature mode publicly
/// verifiable.
pub fn h1<E: PairingGroup>(w: &E::Gt, len: usize) -> MaskBlock {
    if w.is_one() {
        return MaskBlock::zero(len);
    }
    let mut xof = Shake256::default();
    xof.update(&[DST_H1.len() as u8]);
    xof.update(DST_H1);
    xof.update(&(len as u32).to_be_bytes());
    xof.update(&w.to_bytes());
    let mut out = vec![0u8; len];
    xof.finalize_xof().read(&mut out);
    MaskBlock(out)
}

/// SHA-512 over `dst ‖ parts`, reduced into `Z_q^*`. On a zero result the
/// input is rehashed with a 4-byte counter appended.
fn hash_to_nonzero_scalar<S: ScalarField>(dst: &[u8], parts: &[&[u8]]) -> S {
    for counter in 0u32.. {
        let mut hasher = Sha512::new();
        Digest::update(&mut hasher, [dst.len() as u8]);
        Digest::update(&mut hasher, dst);
        for part in parts {
            Digest::update(&mut hasher, part);
        }
        if counter > 0 {
            Digest::update(&mut hasher, counter.to_be_bytes());
        }
        let k = S::from_wide_bytes(&hasher.finalize());
        if !k.is_zero() {
            return k;
        }
    }
    unreachable!("counter space exhausted")
}

/// `H2(m ‖ ID_A ‖ ID_B)`.
pub fn h2<E: PairingGroup>(m: &Message, id_a: &Identity, id_b: &Identity) -> E::Scalar {
    hash_to_nonzero_scalar(DST_H2, &[m.as_bytes(), id_a.as_bytes(), id_b.as_bytes()])
}

/// `H2(m ‖ ID_A ‖ ID_B ‖ index ‖ count)` for blocks of a multi-block
/// payload. Encryption mode has no `H3` term, so the position must enter
/// `H2` as well to stop block reordering there.
pub fn h2_block<E: PairingGroup>(m: &Message, id_a: &Identity, id_b: &Identity, pos: BlockPosition) -> E::Scalar {
    hash_to_nonzero_scalar(
        DST_H2,
        &[m.as_bytes(), id_a.as_bytes(), id_b.as_bytes(), &pos.index.to_be_bytes(), &pos.count.to_be_bytes()],
    )
}

/// `H3(m ‖ X)`.
pub fn h3<E: PairingGroup>(m: &Message, x: &E::G1) -> E::Scalar {
    hash_to_nonzero_scalar(DST_H3, &[m.as_bytes(), &x.to_bytes()])
}

/// `H3(m ‖ X ‖ index ‖ count)` for blocks of a multi-block payload.
pub fn h3_block<E: PairingGroup>(m: &Message, x: &E::G1, pos: BlockPosition) -> E::Scalar {
    hash_to_nonzero_scalar(DST_H3, &[m.as_bytes(), &x.to_bytes(), &pos.index.to_be_bytes(), &pos.count.to_be_bytes()])
}
