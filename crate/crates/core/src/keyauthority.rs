//! The private key generator: system setup and per-identity key extraction.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use rand::{CryptoRng, RngCore};

use crate::algebra::{self, GroupPoint, PairingGroup, ScalarField};
use crate::error::{Error, Result};
use crate::hashing::{h0, Identity, HASH_SUITE_VERSION};

pub const DEFAULT_ID_BITS: u32 = 256;
pub const DEFAULT_MSG_BITS: u32 = 256;
/// Upper bound on cached `e(P_pub, Q_ID)` values per parameter set.
const PAIRING_CACHE_LIMIT: usize = 4096;

/// Curve choice for [`SystemParams`]; the CLI's `--toy-group` switch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SecurityLevel {
    /// BLS12-381.
    Bits128,
    /// The order-31 test group. Offers no security at all.
    Toy,
}

/// Identity and message widths in bits. Both must be whole bytes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Widths {
    pub id_bits: u32,
    pub msg_bits: u32,
}

impl Default for Widths {
    fn default() -> Self {
        Widths { id_bits: DEFAULT_ID_BITS, msg_bits: DEFAULT_MSG_BITS }
    }
}

/// Public system parameters: `P_pub`, the length parameters, and cached
/// pairing values that depend only on public data.
pub struct SystemParams<E: PairingGroup> {
    p_pub: E::G1,
    widths: Widths,
    base_pairing: E::Gt,
    identity_pairings: RwLock<HashMap<Identity, E::Gt>>,
}

impl<E: PairingGroup> SystemParams<E> {
    pub fn new(p_pub: E::G1, widths: Widths) -> Result<Self> {
        if p_pub.is_identity() {
            return Err(Error::InvalidParams("P_pub is the identity"));
        }
        if !widths.id_bits.is_multiple_of(8) || !widths.msg_bits.is_multiple_of(8) {
            return Err(Error::InvalidParams("widths must be multiples of 8 bits"));
        }
        // An identity needs a length byte plus one label byte; messages need
        // room for the padding trailer.
        if widths.id_bits < 16 || widths.id_bits > 8 * 1024 {
            return Err(Error::InvalidParams("identity width out of range"));
        }
        if widths.msg_bits < 64 || widths.msg_bits > 8 * 1024 * 1024 {
            return Err(Error::InvalidParams("message width out of range"));
        }
        let base_pairing = E::pairing(&E::G1::generator(), &E::G2::generator());
        Ok(SystemParams { p_pub, widths, base_pairing, identity_pairings: RwLock::new(HashMap::new()) })
    }

    /// `P` in slot one.
    pub fn generator1(&self) -> E::G1 {
        E::G1::generator()
    }

    /// `P` in slot two.
    pub fn generator2(&self) -> E::G2 {
        E::G2::generator()
    }

    pub fn p_pub(&self) -> &E::G1 {
        &self.p_pub
    }

    pub fn widths(&self) -> Widths {
        self.widths
    }

    /// n1: identity width in bits.
    pub fn id_bits(&self) -> u32 {
        self.widths.id_bits
    }

    /// n2: message block width in bits.
    pub fn msg_bits(&self) -> u32 {
        self.widths.msg_bits
    }

    /// n3: width of a serialized `V` in bits.
    pub fn point_bits(&self) -> u32 {
        8 * E::G2::ENCODED_LEN as u32
    }

    /// n4: width of a serialized target-group element in bits. Only
    /// appears in security bounds.
    pub fn gt_bits(&self) -> u32 {
        8 * <E::Gt as algebra::TargetGroup<E::Scalar>>::ENCODED_LEN as u32
    }

    pub fn id_len(&self) -> usize {
        self.widths.id_bits as usize / 8
    }

    pub fn msg_len(&self) -> usize {
        self.widths.msg_bits as usize / 8
    }

    pub fn mask_len(&self) -> usize {
        self.msg_len() + self.id_len() + E::G2::ENCODED_LEN
    }

    pub fn hash_suite_version(&self) -> u8 {
        HASH_SUITE_VERSION
    }

    pub fn vacant(&self) -> Identity {
        Identity::vacant(self.id_len())
    }

    /// Builds an identity of the right width from a text label.
    pub fn identity(&self, label: &str) -> Result<Identity> {
        Identity::from_label(label, self.id_len())
    }

    /// `e(P, P)`, computed once at construction.
    pub fn base_pairing(&self) -> E::Gt {
        algebra::pair_precomputable(|| self.base_pairing)
    }

    /// `e(P_pub, H0(id))`, cached per identity.
    pub fn identity_pairing(&self, id: &Identity) -> E::Gt {
        algebra::pair_precomputable(|| {
            if let Some(w) = self.identity_pairings.read().expect("cache lock").get(id) {
                return *w;
            }
            let w = E::pairing(&self.p_pub, &h0::<E>(id));
            let mut cache = self.identity_pairings.write().expect("cache lock");
            if cache.len() < PAIRING_CACHE_LIMIT {
                cache.insert(id.clone(), w);
            }
            w
        })
    }
}

impl<E: PairingGroup> Clone for SystemParams<E> {
    fn clone(&self) -> Self {
        SystemParams {
            p_pub: self.p_pub,
            widths: self.widths,
            base_pairing: self.base_pairing,
            identity_pairings: RwLock::new(HashMap::new()),
        }
    }
}

impl<E: PairingGroup> PartialEq for SystemParams<E> {
    fn eq(&self, other: &Self) -> bool {
        self.p_pub == other.p_pub && self.widths == other.widths
    }
}

impl<E: PairingGroup> Eq for SystemParams<E> {}

impl<E: PairingGroup> fmt::Debug for SystemParams<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SystemParams")
            .field("curve", &E::NAME)
            .field("p_pub", &hex::encode(self.p_pub.to_bytes()))
            .field("n1", &self.id_bits())
            .field("n2", &self.msg_bits())
            .field("n3", &self.point_bits())
            .field("n4", &self.gt_bits())
            .finish()
    }
}

/// The PKG secret `s`.
#[derive(Clone, PartialEq, Eq)]
pub struct MasterKey<E: PairingGroup> {
    secret: E::Scalar,
}

impl<E: PairingGroup> MasterKey<E> {
    pub fn from_scalar(secret: E::Scalar) -> Result<Self> {
        if secret.is_zero() {
            return Err(Error::InvalidScalar);
        }
        Ok(MasterKey { secret })
    }

    pub fn scalar(&self) -> &E::Scalar {
        &self.secret
    }

    /// Whether `P_pub = s * P` for these parameters.
    pub fn matches(&self, params: &SystemParams<E>) -> bool {
        params.generator1().mul_scalar(&self.secret) == *params.p_pub()
    }
}

impl<E: PairingGroup> fmt::Debug for MasterKey<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("MasterKey(<redacted>)")
    }
}

/// A user's public identity point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UserPublicKey<E: PairingGroup> {
    pub id: Identity,
    pub q: E::G2,
}

/// A user's key pair `(Q, S = s * Q)`.
#[derive(Clone, PartialEq, Eq)]
pub struct UserKeyPair<E: PairingGroup> {
    pub id: Identity,
    pub q: E::G2,
    pub s: E::G2,
}

impl<E: PairingGroup> UserKeyPair<E> {
    pub fn public(&self) -> UserPublicKey<E> {
        UserPublicKey { id: self.id.clone(), q: self.q }
    }
}

impl<E: PairingGroup> fmt::Debug for UserKeyPair<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UserKeyPair")
            .field("id", &self.id)
            .field("q", &hex::encode(self.q.to_bytes()))
            .field("s", &"<redacted>")
            .finish()
    }
}

/// Generates system parameters and a fresh master key `s` uniform in `Z_q^*`.
pub fn setup<E, R>(widths: Widths, rng: &mut R) -> Result<(SystemParams<E>, MasterKey<E>)>
where
    E: PairingGroup,
    R: RngCore + CryptoRng + ?Sized,
{
    let secret = E::Scalar::random_nonzero(rng);
    let p_pub = E::G1::generator().mul_scalar(&secret);
    Ok((SystemParams::new(p_pub, widths)?, MasterKey { secret }))
}

/// `Q = H0(id)`, `S = s * Q`.
pub fn extract<E: PairingGroup>(
    master: &MasterKey<E>,
    params: &SystemParams<E>,
    id: &Identity,
) -> Result<UserKeyPair<E>> {
    id.expect_width(params.id_len())?;
    if id.is_vacant() {
        return Err(Error::VacantIdentity);
    }
    let q = h0::<E>(id);
    let s = q.mul_scalar(&master.secret);
    Ok(UserKeyPair { id: id.clone(), q, s })
}

/// Checks `Q = H0(id)` and `e(P, S) = e(P_pub, Q)` without the master key.
pub fn verify_keypair<E: PairingGroup>(params: &SystemParams<E>, kp: &UserKeyPair<E>) -> bool {
    if kp.id.width() != params.id_len() || kp.id.is_vacant() || kp.q != h0::<E>(&kp.id) {
        return false;
    }
    E::pairing(&params.generator1(), &kp.s) == E::pairing(params.p_pub(), &kp.q)
}
