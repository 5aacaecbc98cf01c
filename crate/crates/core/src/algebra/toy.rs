//! Tiny symmetric pairing group for exhaustive testing.
//!
//! Supersingular curve `y^2 = x^3 + x` over `F_p`, `p = 619 = 3 mod 4`, with
//! `#E(F_p) = p + 1 = 20 * 31`. The order-31 subgroup carries a symmetric
//! pairing `e(P, Q) = t(P, phi(Q))^((p^2 - 1) / q)` where `t` is the reduced
//! Tate pairing and `phi(x, y) = (-x, i*y)` the distortion map into
//! `E(F_p^2)`. Discrete logs are trivial here; never use this group for
//! anything but tests.

use std::ops::{Add, Mul, Neg, Sub};

use rand::RngCore;
use sha2::{Digest, Sha256};

use super::{GroupPoint, PairingGroup, ScalarField, TargetGroup};

/// Base field characteristic.
pub const FIELD_PRIME: u64 = 619;
/// Prime order of the pairing subgroup.
pub const GROUP_ORDER: u64 = 31;
/// `#E(F_p) / q`.
pub const COFACTOR: u64 = 20;
const GENERATOR: (u64, u64) = (557, 49);
const FINAL_EXP: u64 = (FIELD_PRIME * FIELD_PRIME - 1) / GROUP_ORDER;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Toy;

fn fadd(a: u64, b: u64) -> u64 {
    (a + b) % FIELD_PRIME
}

fn fsub(a: u64, b: u64) -> u64 {
    (a + FIELD_PRIME - b) % FIELD_PRIME
}

fn fmul(a: u64, b: u64) -> u64 {
    a * b % FIELD_PRIME
}

fn fpow(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    base %= FIELD_PRIME;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fmul(acc, base);
        }
        base = fmul(base, base);
        exp >>= 1;
    }
    acc
}

fn finv(a: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(FIELD_PRIME));
    fpow(a, FIELD_PRIME - 2)
}

/// `sqrt(a)` for `p = 3 mod 4`, if it exists.
fn fsqrt(a: u64) -> Option<u64> {
    let r = fpow(a, (FIELD_PRIME + 1) / 4);
    (fmul(r, r) == a % FIELD_PRIME).then_some(r)
}

fn curve_rhs(x: u64) -> u64 {
    fadd(fmul(fmul(x, x), x), x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ToyScalar(u64);

impl ToyScalar {
    pub fn value(&self) -> u64 {
        self.0
    }
}

impl Add for ToyScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        ToyScalar((self.0 + rhs.0) % GROUP_ORDER)
    }
}

impl Sub for ToyScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        ToyScalar((self.0 + GROUP_ORDER - rhs.0) % GROUP_ORDER)
    }
}

impl Mul for ToyScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        ToyScalar(self.0 * rhs.0 % GROUP_ORDER)
    }
}

impl Neg for ToyScalar {
    type Output = Self;
    fn neg(self) -> Self {
        ToyScalar((GROUP_ORDER - self.0) % GROUP_ORDER)
    }
}

impl ScalarField for ToyScalar {
    const ENCODED_LEN: usize = 1;

    fn zero() -> Self {
        ToyScalar(0)
    }

    fn one() -> Self {
        ToyScalar(1)
    }

    fn from_u64(v: u64) -> Self {
        ToyScalar(v % GROUP_ORDER)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        let mut acc = 1u64;
        for _ in 0..GROUP_ORDER - 2 {
            acc = acc * self.0 % GROUP_ORDER;
        }
        Some(ToyScalar(acc))
    }

    fn random<R: RngCore + ?Sized>(rng: &mut R) -> Self {
        // Rejection sampling keeps the distribution exactly uniform.
        let bound = u32::MAX - u32::MAX % GROUP_ORDER as u32;
        loop {
            let v = rng.next_u32();
            if v < bound {
                return ToyScalar(v as u64 % GROUP_ORDER);
            }
        }
    }

    fn from_wide_bytes(bytes: &[u8]) -> Self {
        ToyScalar(bytes.iter().fold(0u64, |acc, &b| (acc * 256 + b as u64) % GROUP_ORDER))
    }

    fn to_bytes(&self) -> Vec<u8> {
        vec![self.0 as u8]
    }

    fn from_bytes(bytes: &[u8]) -> Option<Self> {
        match bytes {
            [b] if (*b as u64) < GROUP_ORDER => Some(ToyScalar(*b as u64)),
            _ => None,
        }
    }
}

/// Affine point on the toy curve; `None` is the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ToyPoint(Option<(u64, u64)>);

impl ToyPoint {
    /// Builds a point from raw coordinates, checking only the curve equation.
    pub fn from_coords(x: u64, y: u64) -> Option<Self> {
        (x < FIELD_PRIME && y < FIELD_PRIME && fmul(y, y) == curve_rhs(x)).then_some(ToyPoint(Some((x, y))))
    }

    pub fn coords(&self) -> Option<(u64, u64)> {
        self.0
    }

    fn mul_u64(&self, mut k: u64) -> Self {
        let mut acc = ToyPoint(None);
        let mut base = *self;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc + base;
            }
            base = base + base;
            k >>= 1;
        }
        acc
    }

    pub fn in_subgroup(&self) -> bool {
        self.mul_u64(GROUP_ORDER).0.is_none()
    }
}

impl Add for ToyPoint {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (Some((x1, y1)), Some((x2, y2))) = (self.0, rhs.0) else {
            return if self.0.is_none() { rhs } else { self };
        };
        if x1 == x2 && fadd(y1, y2) == 0 {
            return ToyPoint(None);
        }
        let slope = if x1 == x2 {
            fmul(fadd(fmul(3, fmul(x1, x1)), 1), finv(fmul(2, y1)))
        } else {
            fmul(fsub(y2, y1), finv(fsub(x2, x1)))
        };
        let x3 = fsub(fsub(fmul(slope, slope), x1), x2);
        let y3 = fsub(fmul(slope, fsub(x1, x3)), y1);
        ToyPoint(Some((x3, y3)))
    }
}

impl Neg for ToyPoint {
    type Output = Self;
    fn neg(self) -> Self {
        ToyPoint(self.0.map(|(x, y)| (x, fsub(0, y))))
    }
}

impl Sub for ToyPoint {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

const INFINITY_FLAG: u16 = 0x8000;
const ODD_Y_FLAG: u16 = 0x4000;
const X_MASK: u16 = 0x03ff;

impl GroupPoint<ToyScalar> for ToyPoint {
    const ENCODED_LEN: usize = 2;

    fn identity() -> Self {
        ToyPoint(None)
    }

    fn generator() -> Self {
        ToyPoint(Some(GENERATOR))
    }

    fn is_identity(&self) -> bool {
        self.0.is_none()
    }

    fn mul_scalar(&self, k: &ToyScalar) -> Self {
        self.mul_u64(k.0)
    }

    fn to_bytes(&self) -> Vec<u8> {
        let word = match self.0 {
            None => INFINITY_FLAG,
            Some((x, y)) => x as u16 | if y & 1 == 1 { ODD_Y_FLAG } else { 0 },
        };
        word.to_be_bytes().to_vec()
    }

    fn from_bytes(bytes: &[u8]) -> Option<Self> {
        let word = u16::from_be_bytes(bytes.try_into().ok()?);
        if word == INFINITY_FLAG {
            return Some(ToyPoint(None));
        }
        if word & !(X_MASK | ODD_Y_FLAG) != 0 {
            return None;
        }
        let x = (word & X_MASK) as u64;
        if x >= FIELD_PRIME {
            return None;
        }
        let mut y = fsqrt(curve_rhs(x))?;
        if (y & 1 == 1) != (word & ODD_Y_FLAG != 0) {
            y = fsub(0, y);
        }
        let point = ToyPoint(Some((x, y)));
        // y == 0 would make the parity flag ambiguous; such points have order 2
        // and fail the subgroup check anyway.
        (point.in_subgroup() && point.to_bytes() == bytes).then_some(point)
    }
}

/// Element `a + b*i` of `F_p^2 = F_p[i] / (i^2 + 1)`, restricted in practice
/// to the order-`q` subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ToyGt {
    re: u64,
    im: u64,
}

impl ToyGt {
    pub fn components(&self) -> (u64, u64) {
        (self.re, self.im)
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn pow_u64(&self, mut exp: u64) -> Self {
        let mut acc = ToyGt { re: 1, im: 0 };
        let mut base = *self;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            exp >>= 1;
        }
        acc
    }
}

impl TargetGroup<ToyScalar> for ToyGt {
    const ENCODED_LEN: usize = 4;

    fn one() -> Self {
        ToyGt { re: 1, im: 0 }
    }

    fn is_one(&self) -> bool {
        self.re == 1 && self.im == 0
    }

    fn mul(&self, other: &Self) -> Self {
        ToyGt {
            re: fsub(fmul(self.re, other.re), fmul(self.im, other.im)),
            im: fadd(fmul(self.re, other.im), fmul(self.im, other.re)),
        }
    }

    fn pow(&self, k: &ToyScalar) -> Self {
        self.pow_u64(k.0)
    }

    fn to_bytes(&self) -> Vec<u8> {
        let mut out = (self.re as u16).to_be_bytes().to_vec();
        out.extend_from_slice(&(self.im as u16).to_be_bytes());
        out
    }
}

/// Line through `t` with slope `slope`, evaluated at `phi(q) = (-xq, i*yq)`.
fn line_at_distorted(t: (u64, u64), slope: u64, q: (u64, u64)) -> ToyGt {
    let (xt, yt) = t;
    let (xq, yq) = q;
    ToyGt { re: fsub(fmul(slope, fadd(xq, xt)), yt), im: yq }
}

fn tate(p: &ToyPoint, q: &ToyPoint) -> ToyGt {
    let (Some(pc), Some(qc)) = (p.0, q.0) else {
        return ToyGt::one();
    };
    let mut f = ToyGt::one();
    let mut t = pc;
    let bits = 64 - GROUP_ORDER.leading_zeros();
    // Vertical lines evaluate into F_p and vanish under the final
    // exponentiation, since (p - 1) divides (p^2 - 1) / q.
    for i in (0..bits - 1).rev() {
        let (xt, yt) = t;
        let slope = fmul(fadd(fmul(3, fmul(xt, xt)), 1), finv(fmul(2, yt)));
        f = f.square().mul(&line_at_distorted(t, slope, qc));
        t = (ToyPoint(Some(t)) + ToyPoint(Some(t))).0.expect("odd-order point never doubles to infinity");
        if (GROUP_ORDER >> i) & 1 == 1 {
            let (xt, yt) = t;
            let (xp, yp) = pc;
            match (ToyPoint(Some(t)) + ToyPoint(Some(pc))).0 {
                Some(next) => {
                    let slope = fmul(fsub(yp, yt), finv(fsub(xp, xt)));
                    f = f.mul(&line_at_distorted(t, slope, qc));
                    t = next;
                }
                // t = -p: only on the final bit, vertical line.
                None => break,
            }
        }
    }
    f.pow_u64(FINAL_EXP)
}

impl PairingGroup for Toy {
    const CURVE_ID: u8 = 0xF0;
    const NAME: &'static str = "toy-619-31";

    type Scalar = ToyScalar;
    type G1 = ToyPoint;
    type G2 = ToyPoint;
    type Gt = ToyGt;
    type G2Prepared = ToyPoint;

    fn pairing(a: &ToyPoint, b: &ToyPoint) -> ToyGt {
        tate(a, b)
    }

    fn prepare_g2(b: &ToyPoint) -> ToyPoint {
        *b
    }

    fn pairing_prepared(a: &ToyPoint, b: &ToyPoint) -> ToyGt {
        tate(a, b)
    }

    fn hash_to_g2(dst: &[u8], msg: &[u8]) -> ToyPoint {
        // Try-and-increment, then clear the cofactor.
        for counter in 0u32.. {
            let digest = Sha256::new()
                .chain_update([dst.len() as u8])
                .chain_update(dst)
                .chain_update(msg)
                .chain_update(counter.to_be_bytes())
                .finalize();
            let x = u64::from_be_bytes(digest[..8].try_into().unwrap()) % FIELD_PRIME;
            let Some(mut y) = fsqrt(curve_rhs(x)) else {
                continue;
            };
            if digest[8] & 1 == 1 {
                y = fsub(0, y);
            }
            let point = ToyPoint(Some((x, y))).mul_u64(COFACTOR);
            if !point.is_identity() {
                return point;
            }
        }
        unreachable!("counter space exhausted")
    }

    fn order_be_bytes() -> Vec<u8> {
        vec![GROUP_ORDER as u8]
    }
}
