//! Pairing-group abstraction.
//!
//! The scheme is written against a symmetric pairing `e: G1 x G1 -> Gt`.
//! Production curves are asymmetric, so every backend exposes two source
//! groups: slot one carries `P`, `P_pub` and the ephemeral point `X`, slot two
//! carries `P`, identity points `Q`, private keys `S` and the response `V`.
//! Every pairing in the scheme takes its arguments in that order, so both
//! sides of each verification equation are computed through the same
//! embedding. A symmetric backend simply uses one type for both slots.
//!
//! The counted wrappers at the bottom of this module ([`g1_mul`], [`pair`],
//! [`gt_pow`], [`pair_precomputable`] and their fixed-base and prepared
//! variants) are the only operations the protocol layer uses for
//! dominant-cost arithmetic; they feed the per-thread [`OpCounter`].

use std::cell::Cell;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use rand::RngCore;

use crate::error::Error;

pub mod bls12;
pub mod toy;

pub use bls12::Bls12;
pub use toy::Toy;

/// Residues modulo the prime group order `q`.
pub trait ScalarField:
    Copy
    + Eq
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Width of the canonical encoding in bytes.
    const ENCODED_LEN: usize;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_u64(v: u64) -> Self;
    fn is_zero(&self) -> bool;
    fn inverse(&self) -> Option<Self>;
    /// Uniform element of `Z_q` (zero included).
    fn random<R: RngCore + ?Sized>(rng: &mut R) -> Self;
    /// Reduces a digest (at least 64 bytes for the production curve) modulo `q`.
    fn from_wide_bytes(bytes: &[u8]) -> Self;
    /// Canonical little-endian encoding of `ENCODED_LEN` bytes.
    fn to_bytes(&self) -> Vec<u8>;
    /// Canonical decoding; values `>= q` are rejected.
    fn from_bytes(bytes: &[u8]) -> Option<Self>;

    /// Uniform element of `Z_q^*`.
    fn random_nonzero<R: RngCore + ?Sized>(rng: &mut R) -> Self {
        loop {
            let k = Self::random(rng);
            if !k.is_zero() {
                return k;
            }
        }
    }
}

/// An element of a prime-order source group, written additively.
pub trait GroupPoint<S>:
    Copy + Eq + Debug + Send + Sync + 'static + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self>
{
    /// Width of the compressed encoding in bytes.
    const ENCODED_LEN: usize;

    fn identity() -> Self;
    fn generator() -> Self;
    fn is_identity(&self) -> bool;
    /// Uncounted scalar multiplication. Protocol code goes through [`g1_mul`].
    fn mul_scalar(&self, k: &S) -> Self;
    fn to_bytes(&self) -> Vec<u8>;
    /// Decodes a compressed point, rejecting off-curve, out-of-subgroup and
    /// non-canonical encodings.
    fn from_bytes(bytes: &[u8]) -> Option<Self>;
}

/// The pairing target group, written multiplicatively.
pub trait TargetGroup<S>: Copy + Eq + Debug + Send + Sync + 'static {
    const ENCODED_LEN: usize;

    fn one() -> Self;
    fn is_one(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    /// Uncounted exponentiation. Protocol code goes through [`gt_pow`].
    fn pow(&self, k: &S) -> Self;
    fn to_bytes(&self) -> Vec<u8>;
}

/// A concrete pairing instantiation.
pub trait PairingGroup: Copy + Clone + Debug + Default + PartialEq + Eq + Send + Sync + 'static {
    /// Identifier stored in every file container.
    const CURVE_ID: u8;
    const NAME: &'static str;

    type Scalar: ScalarField;
    type G1: GroupPoint<Self::Scalar>;
    type G2: GroupPoint<Self::Scalar>;
    type Gt: TargetGroup<Self::Scalar>;
    /// A slot-two point with its Miller-loop line data precomputed.
    type G2Prepared: Clone + Debug + Send + Sync + 'static;

    /// Uncounted pairing. Protocol code goes through [`pair`].
    fn pairing(a: &Self::G1, b: &Self::G2) -> Self::Gt;

    fn prepare_g2(b: &Self::G2) -> Self::G2Prepared;

    /// Same value as [`PairingGroup::pairing`] on the unprepared point.
    fn pairing_prepared(a: &Self::G1, b: &Self::G2Prepared) -> Self::Gt;

    /// `prod_i e(a_i, b_i)`. Backends may share the final exponentiation.
    fn multi_pairing(a: &[Self::G1], b: &[Self::G2]) -> Self::Gt {
        assert_eq!(a.len(), b.len(), "pairing inputs must pair up");
        a.iter().zip(b).fold(Self::Gt::one(), |acc, (x, y)| acc.mul(&Self::pairing(x, y)))
    }

    /// Deterministic map onto the prime-order subgroup of slot two.
    /// May return the identity only with negligible probability.
    fn hash_to_g2(dst: &[u8], msg: &[u8]) -> Self::G2;

    /// The group order `q`, big-endian.
    fn order_be_bytes() -> Vec<u8>;
}

/// Tally of dominant operations, in the cost model of the efficiency table:
/// scalar multiplications in the source groups, exponentiations in the target
/// group, online pairings, and pairings whose value depends only on long-lived
/// public data and can be precomputed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct OpCounter {
    pub g1_mul: u64,
    pub gt_pow: u64,
    pub pairings: u64,
    pub precomputable_pairings: u64,
}

impl OpCounter {
    pub const ZERO: OpCounter = OpCounter { g1_mul: 0, gt_pow: 0, pairings: 0, precomputable_pairings: 0 };

    /// Current totals for this thread.
    pub fn snapshot() -> OpCounter {
        COUNTERS.with(|c| c.get())
    }

    /// Resets this thread's totals to zero.
    pub fn reset() {
        COUNTERS.with(|c| c.set(OpCounter::ZERO));
    }

    /// Runs `f` and returns the operations it performed on this thread.
    pub fn measure<R>(f: impl FnOnce() -> R) -> (R, OpCounter) {
        let before = Self::snapshot();
        let out = f();
        let after = Self::snapshot();
        (out, after.since(&before))
    }

    fn since(&self, earlier: &OpCounter) -> OpCounter {
        OpCounter {
            g1_mul: self.g1_mul - earlier.g1_mul,
            gt_pow: self.gt_pow - earlier.gt_pow,
            pairings: self.pairings - earlier.pairings,
            precomputable_pairings: self.precomputable_pairings - earlier.precomputable_pairings,
        }
    }
}

thread_local! {
    static COUNTERS: Cell<OpCounter> = const { Cell::new(OpCounter::ZERO) };
}

fn bump(update: impl FnOnce(&mut OpCounter)) {
    COUNTERS.with(|c| {
        let mut v = c.get();
        update(&mut v);
        c.set(v);
    });
}

/// `k * point`, counted as one multiplication in G1 regardless of slot.
pub fn g1_mul<S, P: GroupPoint<S>>(k: &S, point: &P) -> P {
    bump(|c| c.g1_mul += 1);
    point.mul_scalar(k)
}

/// Online pairing `e(a, b)`.
pub fn pair<E: PairingGroup>(a: &E::G1, b: &E::G2) -> E::Gt {
    bump(|c| c.pairings += 1);
    E::pairing(a, b)
}

/// Records the use of a precomputable pairing value. `value` produces it on
/// a cache miss; that computation is not counted as an online pairing.
pub fn pair_precomputable<T>(value: impl FnOnce() -> T) -> T {
    bump(|c| c.precomputable_pairings += 1);
    value()
}

/// `w^k` in the target group.
pub fn gt_pow<S, T: TargetGroup<S>>(w: &T, k: &S) -> T {
    bump(|c| c.gt_pow += 1);
    w.pow(k)
}

/// Online pairing against a prepared slot-two point.
pub fn pair_prepared<E: PairingGroup>(a: &E::G1, b: &E::G2Prepared) -> E::Gt {
    bump(|c| c.pairings += 1);
    E::pairing_prepared(a, b)
}

/// `prod_i e(a_i, b_i)`, counted as `a.len()` online pairings.
pub fn pair_many<E: PairingGroup>(a: &[E::G1], b: &[E::G2]) -> E::Gt {
    bump(|c| c.pairings += a.len() as u64);
    E::multi_pairing(a, b)
}

/// Multiples of a fixed base for exponentiation in 8-bit windows:
/// `rows[j][d] = (d * 256^j) * base`. One table costs about `255 * rows`
/// group operations to build and makes each use about `rows` operations.
#[derive(Clone, Debug)]
pub struct FixedBase<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Copy> FixedBase<T> {
    fn build(base: T, unit: T, rows: usize, op: impl Fn(&T, &T) -> T) -> Self {
        let mut out = Vec::with_capacity(rows);
        let mut step = base;
        for _ in 0..rows {
            let mut row = Vec::with_capacity(256);
            row.push(unit);
            for d in 1..256 {
                row.push(op(&row[d - 1], &step));
            }
            step = op(&row[255], &step);
            out.push(row);
        }
        FixedBase { rows: out }
    }

    fn eval(&self, le_digits: &[u8], unit: T, op: impl Fn(&T, &T) -> T) -> T {
        debug_assert!(le_digits.len() <= self.rows.len());
        le_digits
            .iter()
            .zip(&self.rows)
            .filter(|(d, _)| **d != 0)
            .fold(unit, |acc, (d, row)| op(&acc, &row[*d as usize]))
    }

    /// Table for a source-group point.
    pub fn point<S: ScalarField>(base: &T) -> Self
    where
        T: GroupPoint<S>,
    {
        Self::build(*base, T::identity(), S::ENCODED_LEN, |a, b| *a + *b)
    }

    /// Table for a target-group element.
    pub fn target<S: ScalarField>(base: &T) -> Self
    where
        T: TargetGroup<S>,
    {
        Self::build(*base, T::one(), S::ENCODED_LEN, |a, b| a.mul(b))
    }
}

/// [`g1_mul`] through a fixed-base table; counted the same way.
pub fn g1_mul_fixed<S: ScalarField, P: GroupPoint<S>>(k: &S, table: &FixedBase<P>) -> P {
    bump(|c| c.g1_mul += 1);
    table.eval(&k.to_bytes(), P::identity(), |a, b| *a + *b)
}

/// [`gt_pow`] through a fixed-base table; counted the same way.
pub fn gt_pow_fixed<S: ScalarField, T: TargetGroup<S>>(table: &FixedBase<T>, k: &S) -> T {
    bump(|c| c.gt_pow += 1);
    table.eval(&k.to_bytes(), T::one(), |a, b| a.mul(b))
}

/// `k^-1 mod q`.
pub fn scalar_invert<S: ScalarField>(k: &S) -> Result<S, Error> {
    k.inverse().ok_or(Error::InvalidScalar)
}
