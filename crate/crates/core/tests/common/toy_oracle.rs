//! Brute-force model of the toy group, written independently of
//! `idgsc::algebra::toy`: affine arithmetic on y^2 = x^3 + x over F_619,
//! multiples by repeated addition, discrete logs by table lookup, and F_619^2
//! arithmetic with i^2 = -1 for the target group.

use idgsc::algebra::toy::{ToyGt, ToyPoint, ToyScalar};
use idgsc::algebra::{GroupPoint, PairingGroup, ScalarField, TargetGroup, Toy};
use idgsc::gsc::{gsc_with_randomizer, guc, Envelope};
use idgsc::hashing::{h1, h2, h3, MaskBlock};
use idgsc::{extract, setup, Error, Identity, Message, SystemParams, UserKeyPair, Widths};
use rand::{Rng, RngCore};

pub const P: u64 = 619;
pub const Q: u64 = 31;
pub const GEN: (u64, u64) = (557, 49);

pub type Affine = Option<(u64, u64)>;

fn inv_p(a: u64) -> u64 {
    // Fermat; P is prime.
    let mut result = 1;
    let mut base = a % P;
    let mut e = P - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % P;
        }
        base = base * base % P;
        e >>= 1;
    }
    result
}

pub fn add(a: Affine, b: Affine) -> Affine {
    let (Some((x1, y1)), Some((x2, y2))) = (a, b) else {
        return a.or(b);
    };
    let lambda = if x1 == x2 {
        if (y1 + y2) % P == 0 {
            return None;
        }
        (3 * x1 * x1 + 1) % P * inv_p(2 * y1) % P
    } else {
        (y2 + P - y1) % P * inv_p((x2 + P - x1) % P) % P
    };
    let x3 = (lambda * lambda % P + 2 * P - x1 - x2) % P;
    let y3 = (lambda * ((x1 + P - x3) % P) % P + P - y1) % P;
    Some((x3, y3))
}

pub fn on_curve(a: Affine) -> bool {
    match a {
        None => true,
        Some((x, y)) => y * y % P == (x * x % P * x + x) % P,
    }
}

/// `k * GEN` by repeated addition.
pub fn multiple(k: u64) -> Affine {
    (0..k % Q).fold(None, |acc, _| add(acc, Some(GEN)))
}

/// Discrete log base `GEN`, by exhaustive search.
pub fn dlog(a: Affine) -> Option<u64> {
    (0..Q).find(|k| multiple(*k) == a)
}

pub type Fp2 = (u64, u64);

pub fn fp2_mul(a: Fp2, b: Fp2) -> Fp2 {
    ((a.0 * b.0 + (P - a.1) * b.1) % P, (a.0 * b.1 + a.1 * b.0) % P)
}

pub fn fp2_pow(a: Fp2, k: u64) -> Fp2 {
    (0..k).fold((1, 0), |acc, _| fp2_mul(acc, a))
}

pub fn scalar(k: u64) -> ToyScalar {
    ToyScalar::from_u64(k % Q)
}

pub fn lib_point(a: Affine) -> ToyPoint {
    match a {
        None => ToyPoint::identity(),
        Some((x, y)) => ToyPoint::from_coords(x, y).expect("oracle point is on the curve"),
    }
}

/// Precomputed correspondence between exponents and library values, each
/// entry cross-checked against the oracle.
pub struct Tables {
    pub points: Vec<Affine>,
    pub base: Fp2,
    pub targets: Vec<ToyGt>,
}

impl Tables {
    pub fn new() -> Self {
        let points: Vec<Affine> = (0..Q).map(multiple).collect();
        assert!(points.iter().all(|p| on_curve(*p)));
        assert_eq!(add(points[30], Some(GEN)), None, "generator has order 31");
        let p = ToyPoint::generator();
        assert_eq!(p.coords(), Some(GEN));
        let g = Toy::pairing(&p, &p);
        let base = g.components();
        assert_ne!(base, (1, 0));
        assert_eq!(fp2_pow(base, Q), (1, 0), "e(P, P) has order 31");
        let targets: Vec<ToyGt> = (0..Q).map(|k| g.pow(&scalar(k))).collect();
        for (k, t) in targets.iter().enumerate() {
            assert_eq!(t.components(), fp2_pow(base, k as u64));
        }
        Tables { points, base, targets }
    }

    pub fn point_dlog(&self, p: &ToyPoint) -> u64 {
        self.points.iter().position(|a| *a == p.coords()).expect("point in subgroup") as u64
    }

    pub fn target_dlog(&self, t: &ToyGt) -> u64 {
        self.targets.iter().position(|x| x == t).expect("target in subgroup") as u64
    }
}

pub fn inv_q(a: u64) -> u64 {
    (1..Q).find(|b| a * b % Q == 1).expect("nonzero residue")
}

pub struct World {
    params: SystemParams<Toy>,
    master: idgsc::MasterKey<Toy>,
    s: u64,
    tables: Tables,
}

impl World {
    pub fn new(seed: u64) -> Self {
        let (params, master) = setup::<Toy, _>(Widths::default(), &mut super::rng(seed)).unwrap();
        let tables = Tables::new();
        let s = tables.point_dlog(params.p_pub());
        assert_ne!(s, 0);
        World { params, master, s, tables }
    }

    pub fn key(&self, id: &Identity) -> Option<UserKeyPair<Toy>> {
        (!id.is_vacant()).then(|| extract(&self.master, &self.params, id).unwrap())
    }

    /// Exponent `q` with `Q_ID = q * P`; zero for the vacant identity.
    pub fn q(&self, id: &Identity) -> u64 {
        if id.is_vacant() {
            0
        } else {
            self.tables.point_dlog(&idgsc::hashing::h0::<Toy>(id))
        }
    }

    pub fn mask(&self, x: u64, receiver: &Identity) -> MaskBlock {
        let w = x * self.s % Q * self.q(receiver) % Q;
        h1::<Toy>(&self.tables.targets[w as usize], self.params.mask_len())
    }

    /// The oracle's own signcryption, or `None` where `V` would vanish.
    pub fn seal(&self, sender: &Identity, receiver: &Identity, m: &Message, r: u64) -> Option<Envelope<Toy>> {
        let x = lib_point(multiple(r));
        let hh2 = h2::<Toy>(m, sender, receiver).value();
        let hh3 = h3::<Toy>(m, &x).value();
        let v = inv_q(r) * ((hh2 + hh3 * self.s % Q * self.q(sender)) % Q) % Q;
        if v == 0 {
            return None;
        }
        let mut plain = m.as_bytes().to_vec();
        plain.extend_from_slice(sender.as_bytes());
        plain.extend_from_slice(&lib_point(multiple(v)).to_bytes());
        Some(Envelope { x, y: MaskBlock::from_bytes(plain).xor(&self.mask(r, receiver)) })
    }

    /// The oracle's acceptance decision for an arbitrary envelope.
    pub fn open(&self, sender: &Identity, receiver: &Identity, env: &Envelope<Toy>) -> Option<Message> {
        let x = self.tables.point_dlog(&env.x);
        if x == 0 {
            return None;
        }
        let plain = env.y.xor(&self.mask(x, receiver));
        let (m, rest) = plain.as_bytes().split_at(self.params.msg_len());
        let (id, v) = rest.split_at(self.params.id_len());
        if id != sender.as_bytes() {
            return None;
        }
        let v = ToyPoint::from_bytes(v)?;
        assert!(on_curve(v.coords()));
        let v = self.tables.point_dlog(&v);
        if v == 0 {
            return None;
        }
        let m = Message::new(m);
        let hh2 = h2::<Toy>(&m, sender, receiver).value();
        let hh3 = h3::<Toy>(&m, &env.x).value();
        (x * v % Q == (hh2 + hh3 * self.s % Q * self.q(sender)) % Q).then_some(m)
    }
}

/// Extract against repeated addition for `n` identities.
pub fn check_extract(seed: u64, n: usize) {
    let world = World::new(seed);
    for i in 0..n {
        let id = world.params.identity(&format!("toy-user-{i}")).unwrap();
        let kp = world.key(&id).unwrap();
        let q = world.tables.point_dlog(&kp.q);
        assert_eq!(kp.s.coords(), multiple(world.s * q), "identity {i}");
    }
}

/// gsc and guc against the oracle on `n` cases, each with a batch of
/// tampered and forged variants. Returns the number of variants compared.
pub fn check_gsc_guc(seed: u64, n: usize) -> usize {
    let world = World::new(seed);
    let params = &world.params;
    let mut rng = super::rng(seed ^ 0x5eed);
    let mut compared = 0;
    let mut vanished = 0;
    for case in 0..n {
        let named = |who: &str| params.identity(&format!("{who}-{case}")).unwrap();
        let (sender, receiver) = match case % 3 {
            0 => (named("alice"), named("bob")),
            1 => (named("alice"), params.vacant()),
            _ => (params.vacant(), named("bob")),
        };
        let (ka, kb) = (world.key(&sender), world.key(&receiver));
        let mut m = vec![0u8; params.msg_len()];
        rng.fill_bytes(&mut m);
        let m = Message::new(m);
        let r = rng.gen_range(1..Q);

        let ours = world.seal(&sender, &receiver, &m, r);
        let theirs = gsc_with_randomizer(params, ka.as_ref(), &sender, &receiver, &m, &scalar(r), None);
        let env = match (ours, theirs) {
            (Some(a), Ok(b)) => {
                assert_eq!(a, b, "case {case}");
                a
            }
            (None, Err(Error::InvalidScalar)) => {
                vanished += 1;
                continue;
            }
            (a, b) => panic!("case {case}: oracle {a:?}, library {b:?}"),
        };
        assert_eq!(world.open(&sender, &receiver, &env), Some(m.clone()));
        assert_eq!(guc(params, &sender, kb.as_ref(), &receiver, &env).unwrap(), m);

        let mut variants = Vec::new();
        for _ in 0..4 {
            let mut e = env.clone();
            e.y.flip_bit(rng.gen_range(0..8 * params.mask_len()));
            variants.push(e);
        }
        for k in 0..Q {
            variants.push(Envelope { x: lib_point(multiple(k)), y: env.y.clone() });
        }
        // A valid envelope on a fresh message, forged with knowledge of `s`.
        let mut other = m.as_bytes().to_vec();
        other[0] ^= 0x5a;
        let other = Message::new(other);
        let forged = (1..Q).find_map(|r| world.seal(&sender, &receiver, &other, r)).unwrap();
        variants.push(forged);

        compared += 1 + variants.len();
        for e in &variants {
            let expected = world.open(&sender, &receiver, e);
            let got = guc(params, &sender, kb.as_ref(), &receiver, e);
            match (expected, got) {
                (Some(a), Ok(b)) => assert_eq!(a, b, "case {case}"),
                (None, Err(Error::Reject)) => {}
                (a, b) => panic!("case {case}: oracle {a:?}, library {b:?}"),
            }
        }
    }
    assert!(vanished < n / 5 + 1, "{vanished} randomizers gave V = O");
    compared
}
