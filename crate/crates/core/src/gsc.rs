//! Generalized signcryption and unsigncryption.
//!
//! One algorithm pair covers three modes, selected by which identity is
//! vacant:
//!
//! * both present: signcryption, `(X, y)` is confidential and authenticated;
//! * receiver vacant: signature, the mask is all-zero and anyone can verify;
//! * sender vacant: encryption, `V` carries no sender-key term.
//!
//! Signcryption with `r` uniform in `Z_q^*`:
//!
//! ```text
//! X  = r P
//! h2 = H2(m ‖ ID_A ‖ ID_B)        h3 = H3(m ‖ X)
//! V  = (r^-1 h2) P + f(ID_A) (r^-1 h3) S_A
//! w  = e(P_pub, Q_B)^(r f(ID_B))
//! y  = (m ‖ ID_A ‖ V) ⊕ H1(w)
//! ```
//!
//! Unsigncryption recomputes `w = e(X, S_B)^f(ID_B)`, unmasks, checks the
//! embedded sender against the claimed one, and accepts iff
//! `e(X, V) = e(P, P)^h2 · e(P_pub, Q_A)^(h3 f(ID_A))`.

use std::fmt;

use rand::{CryptoRng, RngCore};

use crate::algebra::{
    self, g1_mul, g1_mul_fixed, gt_pow, gt_pow_fixed, FixedBase, GroupPoint, PairingGroup, ScalarField, TargetGroup,
};
use crate::error::{Error, Result};
use crate::hashing::{h1, h2, h2_block, h3, h3_block, BlockPosition, Identity, MaskBlock, Message};
use crate::keyauthority::{SystemParams, UserKeyPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Signcryption,
    SignatureOnly,
    EncryptionOnly,
}

impl Mode {
    pub fn to_byte(self) -> u8 {
        match self {
            Mode::Signcryption => 1,
            Mode::SignatureOnly => 2,
            Mode::EncryptionOnly => 3,
        }
    }

    pub fn from_byte(b: u8) -> Option<Mode> {
        match b {
            1 => Some(Mode::Signcryption),
            2 => Some(Mode::SignatureOnly),
            3 => Some(Mode::EncryptionOnly),
            _ => None,
        }
    }

    pub(crate) fn sender_rule(self) -> &'static str {
        match self {
            Mode::Signcryption => "a sender key to signcrypt",
            Mode::SignatureOnly => "a sender key to sign, no receiver key",
            Mode::EncryptionOnly => "no sender key",
        }
    }

    pub(crate) fn receiver_rule(self) -> &'static str {
        match self {
            Mode::Signcryption => "a receiver key to unsigncrypt",
            Mode::SignatureOnly => "no receiver key",
            Mode::EncryptionOnly => "a receiver key to decrypt, no sender key",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Signcryption => "signcryption",
            Mode::SignatureOnly => "signature",
            Mode::EncryptionOnly => "encryption",
        })
    }
}

/// The ciphertext `(X, y)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Envelope<E: PairingGroup> {
    pub x: E::G1,
    pub y: MaskBlock,
}

impl<E: PairingGroup> fmt::Debug for Envelope<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Envelope").field("x", &hex::encode(self.x.to_bytes())).field("y", &self.y).finish()
    }
}

/// The plaintext triple `m ‖ ID_A ‖ V` recovered from `y`, before any
/// verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Opened<E: PairingGroup> {
    pub message: Message,
    pub sender: Identity,
    /// `None` when the trailing bytes are not a valid point encoding.
    pub v: Option<E::G2>,
}

/// Maps the vacant/non-vacant pattern of `(sender, receiver)` to a mode.
///
/// A party addressing itself is rejected as well; no mode is defined for it.
pub fn mode_of(sender: &Identity, receiver: &Identity) -> Result<Mode> {
    if sender.width() != receiver.width() {
        return Err(Error::MalformedIdentity { expected: sender.width(), actual: receiver.width() });
    }
    match (sender.is_vacant(), receiver.is_vacant()) {
        (true, true) => Err(Error::InvalidModeCombination("both identities are vacant")),
        (false, true) => Ok(Mode::SignatureOnly),
        (true, false) => Ok(Mode::EncryptionOnly),
        (false, false) if sender == receiver => {
            Err(Error::InvalidModeCombination("sender and receiver are the same identity"))
        }
        (false, false) => Ok(Mode::Signcryption),
    }
}

fn check_identities<E: PairingGroup>(params: &SystemParams<E>, sender: &Identity, receiver: &Identity) -> Result<Mode> {
    sender.expect_width(params.id_len())?;
    receiver.expect_width(params.id_len())?;
    mode_of(sender, receiver)
}

fn matching_key<'k, E: PairingGroup>(
    key: Option<&'k UserKeyPair<E>>,
    id: &Identity,
    mode: Mode,
    rule: &'static str,
) -> Result<&'k UserKeyPair<E>> {
    let key = key.ok_or(Error::MissingKey { mode, rule })?;
    if &key.id != id {
        return Err(Error::KeyMismatch);
    }
    Ok(key)
}

/// `(h2, h3)`; a block position, when present, enters both hashes.
fn challenge_scalars<E: PairingGroup>(
    m: &Message,
    sender: &Identity,
    receiver: &Identity,
    x: &E::G1,
    position: Option<BlockPosition>,
) -> (E::Scalar, E::Scalar) {
    match position {
        Some(pos) => (h2_block::<E>(m, sender, receiver, pos), h3_block::<E>(m, x, pos)),
        None => (h2::<E>(m, sender, receiver), h3::<E>(m, x)),
    }
}

/// Generalized signcryption with a fresh randomizer.
pub fn gsc<E, R>(
    params: &SystemParams<E>,
    sender_key: Option<&UserKeyPair<E>>,
    sender: &Identity,
    receiver: &Identity,
    m: &Message,
    rng: &mut R,
) -> Result<Envelope<E>>
where
    E: PairingGroup,
    R: RngCore + CryptoRng + ?Sized,
{
    let sealer = Sealer::new(params, sender_key, sender, receiver)?;
    seal_fresh(&sealer, m, None, rng)
}

/// Seals with a fresh randomizer, redrawing the rare `r` for which `V` is
/// the identity.
pub(crate) fn seal_fresh<E, R>(
    sealer: &Sealer<'_, E>,
    m: &Message,
    position: Option<BlockPosition>,
    rng: &mut R,
) -> Result<Envelope<E>>
where
    E: PairingGroup,
    R: RngCore + CryptoRng + ?Sized,
{
    loop {
        let r = E::Scalar::random_nonzero(rng);
        match sealer.seal(m, &r, position) {
            Err(Error::InvalidScalar) => continue,
            other => return other,
        }
    }
}

/// Generalized signcryption with a caller-chosen randomizer `r`, optionally
/// bound to a position in a multi-block payload.
///
/// Reusing `r` across messages leaks the sender's private key. This entry
/// point exists for known-answer tests and for [`crate::codec`], which draws
/// `r` itself. Fails with [`Error::InvalidScalar`] when `r` makes `V` the
/// identity.
pub fn gsc_with_randomizer<E: PairingGroup>(
    params: &SystemParams<E>,
    sender_key: Option<&UserKeyPair<E>>,
    sender: &Identity,
    receiver: &Identity,
    m: &Message,
    r: &E::Scalar,
    position: Option<BlockPosition>,
) -> Result<Envelope<E>> {
    Sealer::new(params, sender_key, sender, receiver)?.seal(m, r, position)
}

struct SealTables<E: PairingGroup> {
    p1: FixedBase<E::G1>,
    p2: FixedBase<E::G2>,
    s: Option<FixedBase<E::G2>>,
    w: Option<FixedBase<E::Gt>>,
}

/// Signcryption state for one `(sender, receiver)` pair.
///
/// [`Sealer::with_precomputation`] replaces generic scalar multiplications
/// and the exponentiation of `e(P_pub, Q_B)` with fixed-base tables. Building
/// them costs roughly fifty single-block signcryptions.
pub struct Sealer<'a, E: PairingGroup> {
    params: &'a SystemParams<E>,
    sender_key: Option<&'a UserKeyPair<E>>,
    sender: Identity,
    receiver: Identity,
    mode: Mode,
    tables: Option<SealTables<E>>,
}

impl<'a, E: PairingGroup> Sealer<'a, E> {
    pub fn new(
        params: &'a SystemParams<E>,
        sender_key: Option<&'a UserKeyPair<E>>,
        sender: &Identity,
        receiver: &Identity,
    ) -> Result<Self> {
        let mode = check_identities(params, sender, receiver)?;
        let sender_key =
            if sender.is_vacant() { None } else { Some(matching_key(sender_key, sender, mode, mode.sender_rule())?) };
        Ok(Sealer { params, sender_key, sender: sender.clone(), receiver: receiver.clone(), mode, tables: None })
    }

    pub fn with_precomputation(mut self) -> Self {
        let receiver = &self.receiver;
        self.tables = Some(SealTables {
            p1: FixedBase::point(&self.params.generator1()),
            p2: FixedBase::point(&self.params.generator2()),
            s: self.sender_key.map(|k| FixedBase::point(&k.s)),
            w: (!receiver.is_vacant()).then(|| FixedBase::target(&self.params.identity_pairing(receiver))),
        });
        self
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn seal(&self, m: &Message, r: &E::Scalar, position: Option<BlockPosition>) -> Result<Envelope<E>> {
        let params = self.params;
        m.expect_width(params.msg_len())?;
        let r_inv = algebra::scalar_invert(r)?;
        let t = self.tables.as_ref();

        let x = match t {
            Some(t) => g1_mul_fixed(r, &t.p1),
            None => g1_mul(r, &params.generator1()),
        };
        let (h2, h3) = challenge_scalars::<E>(m, &self.sender, &self.receiver, &x, position);

        let a = r_inv * h2;
        let mut v = match t {
            Some(t) => g1_mul_fixed(&a, &t.p2),
            None => g1_mul(&a, &params.generator2()),
        };
        if let Some(key) = self.sender_key {
            let b = r_inv * h3;
            v = v + match t.and_then(|t| t.s.as_ref()) {
                Some(table) => g1_mul_fixed(&b, table),
                None => g1_mul(&b, &key.s),
            };
        }
        // Such an envelope would never verify; only reachable on tiny groups.
        if v.is_identity() {
            return Err(Error::InvalidScalar);
        }

        let w = if self.receiver.is_vacant() {
            E::Gt::one()
        } else {
            match t.and_then(|t| t.w.as_ref()) {
                Some(table) => gt_pow_fixed(table, r),
                None => gt_pow(&params.identity_pairing(&self.receiver), r),
            }
        };

        let mut payload = Vec::with_capacity(params.mask_len());
        payload.extend_from_slice(m.as_bytes());
        payload.extend_from_slice(self.sender.as_bytes());
        payload.extend_from_slice(&v.to_bytes());
        let y = MaskBlock::from_bytes(payload).xor(&h1::<E>(&w, params.mask_len()));
        Ok(Envelope { x, y })
    }
}

fn unmask_with<E: PairingGroup>(params: &SystemParams<E>, w: &E::Gt, env: &Envelope<E>) -> Opened<E> {
    let plain = env.y.xor(&h1::<E>(w, params.mask_len()));
    let bytes = plain.as_bytes();
    let (m, rest) = bytes.split_at(params.msg_len());
    let (id, v) = rest.split_at(params.id_len());
    Opened { message: Message::new(m), sender: Identity::from_bytes(id), v: E::G2::from_bytes(v) }
}

/// Removes the mask from `y` without verifying anything.
pub fn unmask<E: PairingGroup>(
    params: &SystemParams<E>,
    receiver_key: Option<&UserKeyPair<E>>,
    receiver: &Identity,
    env: &Envelope<E>,
) -> Result<Opened<E>> {
    receiver.expect_width(params.id_len())?;
    if env.y.len() != params.mask_len() {
        return Err(Error::Reject);
    }
    let w = if receiver.is_vacant() {
        E::Gt::one()
    } else {
        let key = matching_key(receiver_key, receiver, Mode::Signcryption, Mode::Signcryption.receiver_rule())?;
        algebra::pair::<E>(&env.x, &key.s)
    };
    Ok(unmask_with(params, &w, env))
}

/// Generalized unsigncryption. Every cryptographic failure is
/// [`Error::Reject`]; other errors are caller mistakes (missing or
/// mismatched keys, wrong identity widths).
pub fn guc<E: PairingGroup>(
    params: &SystemParams<E>,
    sender: &Identity,
    receiver_key: Option<&UserKeyPair<E>>,
    receiver: &Identity,
    env: &Envelope<E>,
) -> Result<Message> {
    guc_at(params, sender, receiver_key, receiver, env, None)
}

pub(crate) fn guc_at<E: PairingGroup>(
    params: &SystemParams<E>,
    sender: &Identity,
    receiver_key: Option<&UserKeyPair<E>>,
    receiver: &Identity,
    env: &Envelope<E>,
    position: Option<BlockPosition>,
) -> Result<Message> {
    Opener::new(params, sender, receiver_key, receiver)?.open(env, position)
}

struct OpenTables<E: PairingGroup> {
    base: FixedBase<E::Gt>,
    sender: Option<FixedBase<E::Gt>>,
}

/// Unsigncryption state for one claimed `(sender, receiver)` pair. The
/// receiver key is held in prepared form; [`Opener::with_precomputation`]
/// adds fixed-base tables for `e(P, P)` and `e(P_pub, Q_A)`.
pub struct Opener<'a, E: PairingGroup> {
    params: &'a SystemParams<E>,
    sender: Identity,
    receiver: Identity,
    receiver_key: Option<E::G2Prepared>,
    tables: Option<OpenTables<E>>,
}

impl<'a, E: PairingGroup> Opener<'a, E> {
    pub fn new(
        params: &'a SystemParams<E>,
        sender: &Identity,
        receiver_key: Option<&UserKeyPair<E>>,
        receiver: &Identity,
    ) -> Result<Self> {
        let mode = check_identities(params, sender, receiver)?;
        let receiver_key = if receiver.is_vacant() {
            None
        } else {
            let key = matching_key(receiver_key, receiver, mode, mode.receiver_rule())?;
            Some(E::prepare_g2(&key.s))
        };
        Ok(Opener { params, sender: sender.clone(), receiver: receiver.clone(), receiver_key, tables: None })
    }

    pub fn with_precomputation(mut self) -> Self {
        let sender = &self.sender;
        self.tables = Some(OpenTables {
            base: FixedBase::target(&self.params.base_pairing()),
            sender: (!sender.is_vacant()).then(|| FixedBase::target(&self.params.identity_pairing(sender))),
        });
        self
    }

    pub fn open(&self, env: &Envelope<E>, position: Option<BlockPosition>) -> Result<Message> {
        let pending = self.unmask_checked(env, position)?;
        let lhs = algebra::pair::<E>(&pending.x, &pending.v);
        if lhs == self.expected(&pending.h2, &pending.h3) {
            Ok(pending.message)
        } else {
            Err(Error::Reject)
        }
    }

    /// Everything in [`Opener::open`] except the final pairing equation.
    pub(crate) fn unmask_checked(&self, env: &Envelope<E>, position: Option<BlockPosition>) -> Result<Pending<E>> {
        let params = self.params;
        if env.x.is_identity() || env.y.len() != params.mask_len() {
            return Err(Error::Reject);
        }
        let w = match &self.receiver_key {
            Some(s) => algebra::pair_prepared::<E>(&env.x, s),
            None => E::Gt::one(),
        };
        let opened = unmask_with(params, &w, env);
        if opened.sender != self.sender {
            return Err(Error::Reject);
        }
        let v = match opened.v {
            Some(v) if !v.is_identity() => v,
            _ => return Err(Error::Reject),
        };
        let (h2, h3) = challenge_scalars::<E>(&opened.message, &self.sender, &self.receiver, &env.x, position);
        Ok(Pending { message: opened.message, x: env.x, v, h2, h3 })
    }

    /// `e(P, P)^h2 * e(P_pub, Q_A)^h3`, the right-hand side of the
    /// verification equation.
    fn expected(&self, h2: &E::Scalar, h3: &E::Scalar) -> E::Gt {
        let params = self.params;
        let t = self.tables.as_ref();
        let mut rhs = match t {
            Some(t) => gt_pow_fixed(&t.base, h2),
            None => gt_pow(&params.base_pairing(), h2),
        };
        if !self.sender.is_vacant() {
            rhs = rhs.mul(&match t.and_then(|t| t.sender.as_ref()) {
                Some(table) => gt_pow_fixed(table, h3),
                None => gt_pow(&params.identity_pairing(&self.sender), h3),
            });
        }
        rhs
    }

    /// Checks the verification equation for all of `pending` at once with
    /// the small-exponent test: with weights `d_i`,
    /// `prod e(d_i X_i, V_i) = e(P, P)^(sum d_i h2_i) * e(P_pub, Q_A)^(sum d_i h3_i)`.
    /// A batch containing an invalid envelope passes with probability at
    /// most `2^-k` for `k`-bit weights that are unpredictable once the
    /// envelopes are fixed.
    pub(crate) fn verify_batch(&self, pending: &[Pending<E>], weights: &[E::Scalar]) -> Result<()> {
        assert_eq!(pending.len(), weights.len(), "one weight per envelope");
        let mut sum_h2 = E::Scalar::zero();
        let mut sum_h3 = E::Scalar::zero();
        let mut xs = Vec::with_capacity(pending.len());
        let mut vs = Vec::with_capacity(pending.len());
        for (p, d) in pending.iter().zip(weights) {
            sum_h2 = sum_h2 + *d * p.h2;
            sum_h3 = sum_h3 + *d * p.h3;
            xs.push(p.x.mul_scalar(d));
            vs.push(p.v);
        }
        if algebra::pair_many::<E>(&xs, &vs) == self.expected(&sum_h2, &sum_h3) {
            Ok(())
        } else {
            Err(Error::Reject)
        }
    }
}

/// An unmasked envelope whose sender and `V` checked out, awaiting the
/// pairing equation.
pub(crate) struct Pending<E: PairingGroup> {
    pub(crate) message: Message,
    x: E::G1,
    v: E::G2,
    h2: E::Scalar,
    h3: E::Scalar,
}

/// Signature mode: [`gsc`] with a vacant receiver.
pub fn sign<E, R>(
    params: &SystemParams<E>,
    sender_key: &UserKeyPair<E>,
    m: &Message,
    rng: &mut R,
) -> Result<Envelope<E>>
where
    E: PairingGroup,
    R: RngCore + CryptoRng + ?Sized,
{
    gsc(params, Some(sender_key), &sender_key.id, &params.vacant(), m, rng)
}

/// Public verification of a signature-mode envelope; returns the signed
/// message. Needs no key material beyond the parameters.
pub fn verify<E: PairingGroup>(params: &SystemParams<E>, sender: &Identity, env: &Envelope<E>) -> Result<Message> {
    guc(params, sender, None, &params.vacant(), env)
}

/// Encryption mode: [`gsc`] with a vacant sender.
pub fn encrypt<E, R>(params: &SystemParams<E>, receiver: &Identity, m: &Message, rng: &mut R) -> Result<Envelope<E>>
where
    E: PairingGroup,
    R: RngCore + CryptoRng + ?Sized,
{
    gsc(params, None, &params.vacant(), receiver, m, rng)
}

pub fn decrypt<E: PairingGroup>(
    params: &SystemParams<E>,
    receiver_key: &UserKeyPair<E>,
    env: &Envelope<E>,
) -> Result<Message> {
    guc(params, &params.vacant(), Some(receiver_key), &receiver_key.id, env)
}
