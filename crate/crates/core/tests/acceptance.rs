//! Acceptance run: one PASS/FAIL line per criterion. Built with
//! `harness = false`; exits non-zero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::cli::Workspace;
use idgsc::algebra::{Bls12, GroupPoint, PairingGroup, ScalarField, TargetGroup, Toy};
use idgsc::codec::{decode_envelope, encode_envelope, EnvelopeFrame};
use idgsc::error::DecodeCategory;
use idgsc::gsc::{gsc_with_randomizer, unmask};
use idgsc::harness::{
    attack_suite_mode_mixing, opcount_signcrypt, opcount_unsigncrypt, weak_bcdh_identity, weak_bcdh_selfcheck,
    OracleState,
};
use idgsc::hashing::{h1, h2, h3};
use idgsc::{extract, guc, setup, verify, Error, Message, Mode, SystemParams, Widths};
use rand::RngCore;

type Scalar = <Bls12 as PairingGroup>::Scalar;
type Gt = <Bls12 as PairingGroup>::Gt;

type Outcome = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_label(rng: &mut impl RngCore, prefix: &str) -> String {
    format!("{prefix}-{:016x}", rng.next_u64())
}

fn random_message(p: &SystemParams<Bls12>, rng: &mut impl RngCore) -> Message {
    let mut m = vec![0u8; p.msg_len()];
    rng.fill_bytes(&mut m);
    Message::new(m)
}

/// Criteria 1 to 3 share their trials: every signcryption trial also checks
/// the verification equation and mask-key agreement.
struct Trials {
    round_trips: [usize; 3],
    equation: usize,
    agreement: usize,
    failures: Vec<String>,
    seconds: f64,
}

fn run_trials(n: usize) -> Trials {
    let mut rng = common::rng(0xacc1);
    let (p, master) = setup::<Bls12, _>(Widths::default(), &mut rng).unwrap();
    let started = Instant::now();
    let mut t = Trials { round_trips: [0; 3], equation: 0, agreement: 0, failures: Vec::new(), seconds: 0.0 };
    for mode in 0..3 {
        for i in 0..n {
            let a = p.identity(&random_label(&mut rng, "a")).unwrap();
            let b = p.identity(&random_label(&mut rng, "b")).unwrap();
            let (sender, receiver) = match mode {
                0 => (a, b),
                1 => (a, p.vacant()),
                _ => (p.vacant(), b),
            };
            let ka = (!sender.is_vacant()).then(|| extract(&master, &p, &sender).unwrap());
            let kb = (!receiver.is_vacant()).then(|| extract(&master, &p, &receiver).unwrap());
            let m = random_message(&p, &mut rng);
            let r = Scalar::random_nonzero(&mut rng);
            let env = gsc_with_randomizer(&p, ka.as_ref(), &sender, &receiver, &m, &r, None).unwrap();
            match guc(&p, &sender, kb.as_ref(), &receiver, &env) {
                Ok(got) if got == m => t.round_trips[mode] += 1,
                other => t.failures.push(format!("mode {mode} trial {i}: {other:?}")),
            }
            if mode != 0 {
                continue;
            }
            let (ka, kb) = (ka.unwrap(), kb.unwrap());
            let v = unmask(&p, Some(&kb), &receiver, &env).unwrap().v.unwrap();
            let lhs = Bls12::pairing(&env.x, &v);
            let rhs = Bls12::pairing(&p.generator1(), &p.generator2())
                .pow(&h2::<Bls12>(&m, &sender, &receiver))
                .mul(&Bls12::pairing(p.p_pub(), &ka.q).pow(&h3::<Bls12>(&m, &env.x)));
            if lhs == rhs {
                t.equation += 1;
            } else {
                t.failures.push(format!("verification equation, trial {i}"));
            }
            if Bls12::pairing(p.p_pub(), &kb.q).pow(&r) == Bls12::pairing(&env.x, &kb.s) {
                t.agreement += 1;
            } else {
                t.failures.push(format!("mask-key agreement, trial {i}"));
            }
        }
    }
    t.seconds = started.elapsed().as_secs_f64();
    t
}

fn criterion_1(t: &Trials, n: usize) -> Outcome {
    ensure(t.round_trips == [n; 3], || format!("round trips {:?} of {n}; {:?}", t.round_trips, t.failures.first()))?;
    Ok(format!("{n} trials per mode, all recovered m; criteria 1-3 trials took {:.1}s", t.seconds))
}

fn criterion_2(t: &Trials, n: usize) -> Outcome {
    ensure(t.equation == n, || format!("{} of {n} trials satisfied the equation", t.equation))?;
    Ok(format!("{n} signcryption trials, exact Gt equality"))
}

fn criterion_3(t: &Trials, n: usize) -> Outcome {
    ensure(t.agreement == n, || format!("{} of {n} trials agreed", t.agreement))?;
    Ok(format!("{n} signcryption trials"))
}

fn criterion_4() -> Outcome {
    let mut rng = common::rng(0xacc4);
    let (p, master) = setup::<Bls12, _>(Widths::default(), &mut rng).unwrap();
    // Verification runs against parameters rebuilt from public values only.
    let public = SystemParams::<Bls12>::new(*p.p_pub(), p.widths()).unwrap();
    let mask = h1::<Bls12>(&Gt::one(), p.mask_len());
    ensure(mask.is_zero(), || "H1 of the target identity is not the zero block".into())?;
    for i in 0..100 {
        let a = p.identity(&random_label(&mut rng, "signer")).unwrap();
        let ka = extract(&master, &p, &a).unwrap();
        let m = random_message(&p, &mut rng);
        let r = Scalar::random_nonzero(&mut rng);
        let env = gsc_with_randomizer(&p, Some(&ka), &a, &p.vacant(), &m, &r, None).unwrap();
        let r_inv = r.inverse().unwrap();
        let v = p.generator2().mul_scalar(&(r_inv * h2::<Bls12>(&m, &a, &p.vacant())))
            + ka.s.mul_scalar(&(r_inv * h3::<Bls12>(&m, &env.x)));
        let plain = [m.as_bytes(), a.as_bytes(), &v.to_bytes()].concat();
        ensure(env.y.as_bytes() == plain, || format!("envelope {i}: y differs from m || ID_A || V"))?;
        ensure(verify(&public, &a, &env).ok() == Some(m), || format!("envelope {i} failed public verification"))?;
    }
    Ok("100 envelopes: zero mask, y = m || ID_A || V, publicly verified".into())
}

fn criterion_5() -> Outcome {
    let mut state = OracleState::<Bls12>::new(0xacc5).unwrap();
    let sc = opcount_signcrypt(&mut state).unwrap();
    let uc = opcount_unsigncrypt(&mut state).unwrap();
    let got = |c: &idgsc::algebra::OpCounter| (c.g1_mul, c.gt_pow, c.pairings, c.precomputable_pairings);
    ensure(got(&sc) == (3, 1, 0, 1), || format!("signcrypt counted {:?}", got(&sc)))?;
    ensure(got(&uc) == (0, 2, 2, 2), || format!("unsigncrypt counted {:?}", got(&uc)))?;
    Ok("signcrypt 3, 1, 0(+1); unsigncrypt 0, 2, 2(+2)".into())
}

fn criterion_6() -> Outcome {
    let mut rng = common::rng(0xacc6);
    let (p, master) = setup::<Bls12, _>(Widths::default(), &mut rng).unwrap();
    let ka = extract(&master, &p, &p.identity("alice").unwrap()).unwrap();
    let kb = extract(&master, &p, &p.identity("bob").unwrap()).unwrap();
    let m = random_message(&p, &mut rng);
    let env = idgsc::gsc(&p, Some(&ka), &ka.id, &kb.id, &m, &mut rng).unwrap();
    ensure(guc(&p, &ka.id, Some(&kb), &kb.id, &env).is_ok(), || "untampered envelope rejected".into())?;

    let bits = 8 * p.mask_len();
    for bit in 0..bits {
        let mut bad = env.clone();
        bad.y.flip_bit(bit);
        let res = guc(&p, &ka.id, Some(&kb), &kb.id, &bad);
        ensure(matches!(res, Err(Error::Reject)), || format!("flipping bit {bit} gave {res:?}"))?;
    }
    let mut shifted = env.clone();
    shifted.x = shifted.x + p.generator1();
    let res = guc(&p, &ka.id, Some(&kb), &kb.id, &shifted);
    ensure(matches!(res, Err(Error::Reject)), || format!("X + P gave {res:?}"))?;

    let frame =
        EnvelopeFrame { mode: Mode::Signcryption, sender: ka.id.clone(), receiver: kb.id.clone(), envelope: env };
    let mut bytes = encode_envelope(&frame);
    let at = 7 + 1 + 1 + 2 * p.id_len();
    bytes[at..at + 48].copy_from_slice(&common::bls_g1_outside_subgroup(0xacc6));
    let res = decode_envelope(&p, &bytes);
    ensure(matches!(res, Err(Error::Decode { category: DecodeCategory::Point, .. })), || {
        format!("out-of-subgroup X decoded as {res:?}")
    })?;
    Ok(format!("{bits} single-bit flips, X + P and out-of-subgroup X all rejected"))
}

fn criterion_7() -> Outcome {
    let mut state = OracleState::<Bls12>::new(0xacc7).unwrap();
    let report = attack_suite_mode_mixing(&mut state, 17).unwrap();
    let n = report.attempts.len();
    ensure(n >= 200, || format!("only {n} attempts scripted"))?;
    ensure(report.all_rejected(), || format!("accepted: {report}"))?;
    Ok(format!("{n} scripted attempts, all rejected"))
}

fn criterion_8() -> Outcome {
    common::toy_oracle::check_extract(0xacc8, 50);
    let compared = common::toy_oracle::check_gsc_guc(0xacc8, 50);
    Ok(format!("50 identities for extract; 50 cases, {compared} envelopes for gsc/guc"))
}

fn criterion_9() -> Outcome {
    let mut rng = common::rng(0xacc9);
    let random = (0..100).filter(|_| weak_bcdh_selfcheck::<Bls12, _>(&mut rng)).count();
    ensure(random == 100, || format!("{random} of 100 random trials held"))?;
    let s = <Toy as PairingGroup>::Scalar::from_u64;
    let mut swept = 0;
    for a in 0..31 {
        for b in 0..31 {
            for c in 1..31 {
                ensure(weak_bcdh_identity::<Toy>(&s(a), &s(b), &s(c)), || format!("toy a={a} b={b} c={c}"))?;
                swept += 1;
            }
        }
    }
    Ok(format!("100 random BLS12-381 trials, {swept} toy triples"))
}

fn criterion_10() -> Outcome {
    let ws = Workspace::new();
    ws.provision(false);
    let (p, alice, bob) = (ws.arg("params"), ws.arg("alice.key"), ws.arg("bob.key"));
    let block = 256 / 8;
    let mut sizes = Vec::new();
    for len in [0, 1, block, 1 << 20] {
        let mut data = vec![0u8; len];
        common::rng(len as u64).fill_bytes(&mut data);
        let input = ws.write("in", &data);
        let (ct, out) = (ws.arg("ct"), ws.arg("out"));
        let flows: [(&str, Vec<&str>, Vec<&str>); 3] = [
            (
                "signcrypt",
                vec!["signcrypt", "--params", &p, "--key", &alice, "--from", "alice", "--to", "bob"],
                vec!["unsigncrypt", "--params", &p, "--key", &bob],
            ),
            ("sign", vec!["sign", "--params", &p, "--key", &alice], vec!["verify", "--params", &p]),
            ("encrypt", vec!["encrypt", "--params", &p, "--to", "bob"], vec!["decrypt", "--params", &p, "--key", &bob]),
        ];
        for (name, mut seal, mut open) in flows {
            seal.extend(["-i", &input, "-o", &ct]);
            open.extend(["-i", &ct, "-o", &out]);
            let s = ws.run(&seal);
            ensure(s.status.code() == Some(0), || format!("{name} {len} B: exit {:?}", s.status.code()))?;
            let o = ws.run(&open);
            ensure(o.status.code() == Some(0), || format!("open after {name} {len} B: exit {:?}", o.status.code()))?;
            ensure(ws.read("out") == data, || format!("{name} {len} B: output differs"))?;
            if len <= block {
                let mut bad = ws.read("ct");
                let mid = bad.len() / 2;
                bad[mid] ^= 0x10;
                let bad_path = ws.write("bad", &bad);
                let _ = std::fs::remove_file(ws.path("out"));
                let mut tampered = open.clone();
                let i = tampered.iter().position(|a| *a == ct.as_str()).unwrap();
                tampered[i] = &bad_path;
                let t = ws.run(&tampered);
                ensure(t.status.code() == Some(1), || format!("tampered {name} {len} B: exit {:?}", t.status.code()))?;
                ensure(!ws.path("out").exists(), || format!("tampered {name} {len} B wrote output"))?;
            }
        }
        sizes.push(len);
    }
    let usage = ws.run(&["signcrypt", "--params", &p, "--from", "alice", "--to", "bob"]);
    ensure(usage.status.code() == Some(2), || "missing sender key did not exit 2".into())?;
    Ok(format!("sizes {sizes:?} in three modes; tampered inputs exit 1"))
}

fn main() -> ExitCode {
    let n = 1000;
    let started = Instant::now();
    let trials = panic::catch_unwind(|| run_trials(n)).map_err(|_| "trial loop panicked".to_string());
    let shared = |f: fn(&Trials, usize) -> Outcome| match &trials {
        Ok(t) => f(t, n),
        Err(e) => Err(e.clone()),
    };
    let criteria: Vec<(&str, Check)> = vec![
        ("round-trip correctness, all three modes", Box::new(|| shared(criterion_1))),
        ("verification-equation identity", Box::new(|| shared(criterion_2))),
        ("mask-key agreement", Box::new(|| shared(criterion_3))),
        ("signature-mode degeneration", Box::new(criterion_4)),
        ("exact operation counts", Box::new(criterion_5)),
        ("tamper rejection", Box::new(criterion_6)),
        ("mode-mixing binding suite", Box::new(criterion_7)),
        ("toy-group oracle equivalence", Box::new(criterion_8)),
        ("weak-BCDH identity self-check", Box::new(criterion_9)),
        ("CLI end to end", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({detail}) [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.0}s",
        criteria.len() - failed,
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
