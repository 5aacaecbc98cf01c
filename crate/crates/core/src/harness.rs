//! Security-oriented test harness.
//!
//! * [`OracleState`] answers the seven query types of the security games
//!   (Extract, Sign, Verify, Encrypt, Decrypt, GSC, GUC) as an honest
//!   challenger holding the real master key, and records a transcript.
//! * [`attack_suite_mode_mixing`] replays envelopes across modes, receivers
//!   and claimed senders; every attempt must be rejected.
//! * [`opcount_signcrypt`] / [`opcount_unsigncrypt`] count dominant
//!   operations for one signcryption-mode call.
//! * [`weak_bcdh_selfcheck`] checks the pairing identity the confidentiality
//!   reduction relies on.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{CryptoRng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::algebra::{GroupPoint, OpCounter, PairingGroup, ScalarField, TargetGroup};
use crate::codec::{decode_envelope, encode_envelope, EnvelopeFrame};
use crate::error::{Error, Result};
use crate::gsc::{self, mode_of, Envelope};
use crate::hashing::{h1, Identity, Message};
use crate::keyauthority::{extract, setup, MasterKey, SystemParams, UserKeyPair, Widths};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QueryKind {
    Extract,
    Sign,
    Verify,
    Encrypt,
    Decrypt,
    Gsc,
    Guc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query<E: PairingGroup> {
    Extract { id: Identity },
    Sign { sender: Identity, message: Message },
    Verify { sender: Identity, envelope: Envelope<E> },
    Encrypt { receiver: Identity, message: Message },
    Decrypt { receiver: Identity, envelope: Envelope<E> },
    Gsc { sender: Identity, receiver: Identity, message: Message },
    Guc { sender: Identity, receiver: Identity, envelope: Envelope<E> },
}

impl<E: PairingGroup> Query<E> {
    pub fn kind(&self) -> QueryKind {
        match self {
            Query::Extract { .. } => QueryKind::Extract,
            Query::Sign { .. } => QueryKind::Sign,
            Query::Verify { .. } => QueryKind::Verify,
            Query::Encrypt { .. } => QueryKind::Encrypt,
            Query::Decrypt { .. } => QueryKind::Decrypt,
            Query::Gsc { .. } => QueryKind::Gsc,
            Query::Guc { .. } => QueryKind::Guc,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Answer<E: PairingGroup> {
    Key(UserKeyPair<E>),
    Envelope(Envelope<E>),
    Message(Message),
    /// ⊥
    Reject,
    /// The query was malformed and not answered.
    Refused,
}

impl<E: PairingGroup> Answer<E> {
    pub fn is_reject(&self) -> bool {
        matches!(self, Answer::Reject)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptEntry<E: PairingGroup> {
    pub query: Query<E>,
    pub answer: Answer<E>,
}

/// Honest challenger: real parameters, real master key, transcript of every
/// query in order.
pub struct OracleState<E: PairingGroup> {
    params: SystemParams<E>,
    master: MasterKey<E>,
    extracted: BTreeSet<Identity>,
    keys: BTreeMap<Identity, UserKeyPair<E>>,
    transcript: Vec<TranscriptEntry<E>>,
    rng: ChaCha20Rng,
}

impl<E: PairingGroup> OracleState<E> {
    /// Runs setup from a seeded generator; the same generator then supplies
    /// every randomizer, so a seed fixes the whole transcript.
    pub fn new(seed: u64) -> Result<Self> {
        Self::with_widths(seed, Widths::default())
    }

    pub fn with_widths(seed: u64, widths: Widths) -> Result<Self> {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let (params, master) = setup::<E, _>(widths, &mut rng)?;
        Ok(OracleState {
            params,
            master,
            extracted: BTreeSet::new(),
            keys: BTreeMap::new(),
            transcript: Vec::new(),
            rng,
        })
    }

    pub fn params(&self) -> &SystemParams<E> {
        &self.params
    }

    pub fn transcript(&self) -> &[TranscriptEntry<E>] {
        &self.transcript
    }

    /// Whether an Extract query was ever answered for `id`.
    pub fn was_extracted(&self, id: &Identity) -> bool {
        self.extracted.contains(id)
    }

    /// Private key used internally to answer queries; not an Extract query.
    fn key(&mut self, id: &Identity) -> Result<UserKeyPair<E>> {
        if let Some(kp) = self.keys.get(id) {
            return Ok(kp.clone());
        }
        let kp = extract(&self.master, &self.params, id)?;
        self.keys.insert(id.clone(), kp.clone());
        Ok(kp)
    }

    fn optional_key(&mut self, id: &Identity) -> Result<Option<UserKeyPair<E>>> {
        if id.is_vacant() {
            Ok(None)
        } else {
            self.key(id).map(Some)
        }
    }

    fn answer(&mut self, query: &Query<E>) -> Result<Answer<E>> {
        let vacant = self.params.vacant();
        match query {
            Query::Extract { id } => {
                let kp = self.key(id)?;
                self.extracted.insert(id.clone());
                Ok(Answer::Key(kp))
            }
            Query::Sign { sender, message } => self.envelope(sender, &vacant, message),
            Query::Encrypt { receiver, message } => self.envelope(&vacant, receiver, message),
            Query::Gsc { sender, receiver, message } => self.envelope(sender, receiver, message),
            Query::Verify { sender, envelope } => self.open(sender, &vacant, envelope),
            Query::Decrypt { receiver, envelope } => self.open(&vacant, receiver, envelope),
            Query::Guc { sender, receiver, envelope } => self.open(sender, receiver, envelope),
        }
    }

    fn envelope(&mut self, sender: &Identity, receiver: &Identity, m: &Message) -> Result<Answer<E>> {
        let key = self.optional_key(sender)?;
        let env = gsc::gsc(&self.params, key.as_ref(), sender, receiver, m, &mut self.rng)?;
        Ok(Answer::Envelope(env))
    }

    fn open(&mut self, sender: &Identity, receiver: &Identity, env: &Envelope<E>) -> Result<Answer<E>> {
        mode_of(sender, receiver)?;
        let key = self.optional_key(receiver)?;
        match gsc::guc(&self.params, sender, key.as_ref(), receiver, env) {
            Ok(m) => Ok(Answer::Message(m)),
            Err(Error::Reject) => Ok(Answer::Reject),
            Err(e) => Err(e),
        }
    }

    /// Answers one query and appends it to the transcript. Malformed queries
    /// are recorded with [`Answer::Refused`] and reported as
    /// [`Error::Query`].
    pub fn oracle(&mut self, query: Query<E>) -> Result<Answer<E>> {
        let result = self.answer(&query);
        let (answer, out) = match result {
            Ok(a) => (a.clone(), Ok(a)),
            Err(e) => (Answer::Refused, Err(Error::Query(query_error_reason(&e)))),
        };
        self.transcript.push(TranscriptEntry { query, answer });
        out
    }

    pub fn extract_query(&mut self, id: &Identity) -> Result<UserKeyPair<E>> {
        match self.oracle(Query::Extract { id: id.clone() })? {
            Answer::Key(kp) => Ok(kp),
            _ => unreachable!("Extract answers with a key"),
        }
    }

    fn envelope_query(&mut self, query: Query<E>) -> Result<Envelope<E>> {
        match self.oracle(query)? {
            Answer::Envelope(env) => Ok(env),
            _ => unreachable!("envelope-producing query"),
        }
    }
}

fn query_error_reason(e: &Error) -> &'static str {
    match e {
        Error::VacantIdentity => "vacant identity has no key",
        Error::InvalidModeCombination(why) => why,
        Error::MalformedIdentity { .. } => "identity has the wrong width",
        Error::MalformedMessage { .. } => "message has the wrong width",
        Error::MissingKey { .. } | Error::KeyMismatch => "query needs a key for a vacant role",
        _ => "query could not be answered",
    }
}

/// One scripted forgery or re-targeting attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttackAttempt {
    pub round: usize,
    pub name: &'static str,
    pub accepted: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AttackReport {
    pub attempts: Vec<AttackAttempt>,
}

impl AttackReport {
    pub fn all_rejected(&self) -> bool {
        self.attempts.iter().all(|a| !a.accepted)
    }

    pub fn accepted(&self) -> impl Iterator<Item = &AttackAttempt> {
        self.attempts.iter().filter(|a| a.accepted)
    }
}

impl fmt::Display for AttackReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.attempts {
            writeln!(f, "round {:>3}  {:<34} {}", a.round, a.name, if a.accepted { "ACCEPTED" } else { "rejected" })?;
        }
        Ok(())
    }
}

/// Attacks per round of [`attack_suite_mode_mixing`].
pub const ATTACKS_PER_ROUND: usize = 12;

/// Re-encodes an envelope under a forged routing header and decodes it again,
/// as a network attacker would.
fn reframe<E: PairingGroup>(
    params: &SystemParams<E>,
    env: &Envelope<E>,
    sender: &Identity,
    receiver: &Identity,
) -> Result<Envelope<E>> {
    let frame = EnvelopeFrame {
        mode: mode_of(sender, receiver)?,
        sender: sender.clone(),
        receiver: receiver.clone(),
        envelope: env.clone(),
    };
    Ok(decode_envelope(params, &encode_envelope(&frame))?.envelope)
}

/// Cross-mode replay and re-targeting attacks. Each round uses fresh
/// identities: sender `A`, receiver `B`, bystanders `B'` and `C`. The
/// attacker may extract `B`'s key (an insider receiver) but never `A`'s.
pub fn attack_suite_mode_mixing<E: PairingGroup>(state: &mut OracleState<E>, rounds: usize) -> Result<AttackReport> {
    let mut report = AttackReport::default();
    let vacant = state.params().vacant();
    for round in 0..rounds {
        let p = state.params().clone();
        let a = p.identity(&format!("atk{round}-alice"))?;
        let b = p.identity(&format!("atk{round}-bob"))?;
        let b2 = p.identity(&format!("atk{round}-bob2"))?;
        let c = p.identity(&format!("atk{round}-carol"))?;
        let mut m = vec![0u8; p.msg_len()];
        state.rng.fill_bytes(&mut m);
        let m = Message::new(m);

        let mut record = |name, answer: Answer<E>| {
            report.attempts.push(AttackAttempt { round, name, accepted: matches!(answer, Answer::Message(_)) });
        };

        let sc = state.envelope_query(Query::Gsc { sender: a.clone(), receiver: b.clone(), message: m.clone() })?;
        let as_sig = reframe(&p, &sc, &a, &vacant)?;
        record("signcryption->signature", state.oracle(Query::Verify { sender: a.clone(), envelope: as_sig })?);
        let as_enc = reframe(&p, &sc, &vacant, &b2)?;
        record(
            "signcryption->encryption(B')",
            state.oracle(Query::Decrypt { receiver: b2.clone(), envelope: as_enc })?,
        );
        record(
            "signcryption->encryption(B)",
            state.oracle(Query::Decrypt { receiver: b.clone(), envelope: sc.clone() })?,
        );
        record(
            "signcryption->receiver B'",
            state.oracle(Query::Guc { sender: a.clone(), receiver: b2.clone(), envelope: sc.clone() })?,
        );
        record(
            "signcryption->claimed sender C",
            state.oracle(Query::Guc { sender: c.clone(), receiver: b.clone(), envelope: sc.clone() })?,
        );

        // Insider receiver strips the mask and publishes the rest as a signature.
        let bob = state.extract_query(&b)?;
        let stripped = Envelope { x: sc.x, y: sc.y.xor(&h1::<E>(&E::pairing(&sc.x, &bob.s), p.mask_len())) };
        record(
            "unmasked signcryption->signature",
            state.oracle(Query::Verify { sender: a.clone(), envelope: stripped })?,
        );

        let sig = state.envelope_query(Query::Sign { sender: a.clone(), message: m.clone() })?;
        record(
            "signature->signcryption",
            state.oracle(Query::Guc { sender: a.clone(), receiver: b.clone(), envelope: sig.clone() })?,
        );
        // Insider receiver masks a public signature to itself.
        let remasked = Envelope { x: sig.x, y: sig.y.xor(&h1::<E>(&E::pairing(&sig.x, &bob.s), p.mask_len())) };
        record(
            "remasked signature->signcryption",
            state.oracle(Query::Guc { sender: a.clone(), receiver: b.clone(), envelope: remasked })?,
        );
        record("signature->encryption", state.oracle(Query::Decrypt { receiver: b.clone(), envelope: sig })?);

        let ct = state.envelope_query(Query::Encrypt { receiver: b.clone(), message: m.clone() })?;
        record(
            "encryption->signcryption",
            state.oracle(Query::Guc { sender: a.clone(), receiver: b.clone(), envelope: ct.clone() })?,
        );
        record("encryption->signature", state.oracle(Query::Verify { sender: a.clone(), envelope: ct.clone() })?);
        record("encryption->receiver B'", state.oracle(Query::Decrypt { receiver: b2.clone(), envelope: ct })?);
    }
    Ok(report)
}

fn opcount_parties<E: PairingGroup>(state: &mut OracleState<E>) -> Result<(UserKeyPair<E>, UserKeyPair<E>, Message)> {
    let a = state.params.identity("opcount-alice")?;
    let b = state.params.identity("opcount-bob")?;
    let alice = state.key(&a)?;
    let bob = state.key(&b)?;
    // Warm the precomputation caches.
    state.params.base_pairing();
    state.params.identity_pairing(&a);
    state.params.identity_pairing(&b);
    Ok((alice, bob, Message::new(vec![0x5a; state.params.msg_len()])))
}

/// Dominant operations of one signcryption-mode [`gsc::gsc`] call.
pub fn opcount_signcrypt<E: PairingGroup>(state: &mut OracleState<E>) -> Result<OpCounter> {
    let (alice, bob, m) = opcount_parties(state)?;
    let (env, counts) =
        OpCounter::measure(|| gsc::gsc(&state.params, Some(&alice), &alice.id, &bob.id, &m, &mut state.rng));
    env?;
    Ok(counts)
}

/// Dominant operations of one signcryption-mode [`gsc::guc`] call.
pub fn opcount_unsigncrypt<E: PairingGroup>(state: &mut OracleState<E>) -> Result<OpCounter> {
    let (alice, bob, m) = opcount_parties(state)?;
    let env = gsc::gsc(&state.params, Some(&alice), &alice.id, &bob.id, &m, &mut state.rng)?;
    let (out, counts) = OpCounter::measure(|| gsc::guc(&state.params, &alice.id, Some(&bob), &bob.id, &env));
    if out? != m {
        return Err(Error::Reject);
    }
    Ok(counts)
}

/// Checks, for given `(a, b, c)` with `c != 0`, that with `X* = aP` and
/// `S_B = c(bP)` one has `e(X*, S_B) = e(P, P)^(abc)`, and that
/// `(1/c)(cP) = P` in both source groups.
pub fn weak_bcdh_identity<E: PairingGroup>(a: &E::Scalar, b: &E::Scalar, c: &E::Scalar) -> bool {
    let Some(c_inv) = c.inverse() else {
        return false;
    };
    let p1 = E::G1::generator();
    let p2 = E::G2::generator();
    let x_star = p1.mul_scalar(a);
    let s_b = p2.mul_scalar(b).mul_scalar(c);
    let w_star = E::pairing(&x_star, &s_b);
    let target = E::pairing(&p1, &p2).pow(&(*a * *b * *c));
    w_star == target && p1.mul_scalar(c).mul_scalar(&c_inv) == p1 && p2.mul_scalar(c).mul_scalar(&c_inv) == p2
}

/// Samples `a, b, c` in `Z_q^*` and checks [`weak_bcdh_identity`].
pub fn weak_bcdh_selfcheck<E, R>(rng: &mut R) -> bool
where
    E: PairingGroup,
    R: RngCore + CryptoRng + ?Sized,
{
    let a = E::Scalar::random_nonzero(rng);
    let b = E::Scalar::random_nonzero(rng);
    let c = E::Scalar::random_nonzero(rng);
    weak_bcdh_identity::<E>(&a, &b, &c)
}
