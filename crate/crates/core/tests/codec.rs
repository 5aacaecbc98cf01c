mod common;

use std::sync::OnceLock;

use idgsc::algebra::{Bls12, GroupPoint, PairingGroup, ScalarField};
use idgsc::codec::{
    self, decode_envelope, decode_stream, encode_envelope, encode_stream, open_payload, pad, seal_payload, unpad,
    EnvelopeFrame,
};
use idgsc::error::DecodeCategory;
use idgsc::gsc::Envelope;
use idgsc::hashing::MaskBlock;
use idgsc::{extract, setup, Error, Identity, MasterKey, Mode, SystemParams, Widths};
use proptest::prelude::*;

type G1 = <Bls12 as PairingGroup>::G1;
type Scalar = <Bls12 as PairingGroup>::Scalar;

struct Fixture {
    params: SystemParams<Bls12>,
    master: MasterKey<Bls12>,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let (params, master) = setup::<Bls12, _>(Widths::default(), &mut common::rng(50)).unwrap();
        Fixture { params, master }
    })
}

fn routing(p: &SystemParams<Bls12>, mode: u8) -> (Mode, Identity, Identity) {
    let (a, b) = (p.identity("alice").unwrap(), p.identity("bob").unwrap());
    match mode % 3 {
        0 => (Mode::Signcryption, a, b),
        1 => (Mode::SignatureOnly, a, p.vacant()),
        _ => (Mode::EncryptionOnly, p.vacant(), b),
    }
}

fn frame() -> impl Strategy<Value = EnvelopeFrame<Bls12>> {
    let len = fixture().params.mask_len();
    (any::<u8>(), any::<[u8; 64]>(), prop::collection::vec(any::<u8>(), len)).prop_filter_map(
        "nonzero randomizer",
        |(mode, k, y)| {
            let k = Scalar::from_wide_bytes(&k);
            if k.is_zero() {
                return None;
            }
            let (mode, sender, receiver) = routing(&fixture().params, mode);
            let envelope = Envelope { x: G1::generator().mul_scalar(&k), y: MaskBlock::from_bytes(y) };
            Some(EnvelopeFrame { mode, sender, receiver, envelope })
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn padding_round_trips(data in prop::collection::vec(any::<u8>(), 0..200), block in 5usize..64) {
        let padded = pad(&data, block).unwrap();
        prop_assert!(padded.blocks.iter().all(|b| b.as_bytes().len() == block));
        prop_assert_eq!(unpad(&padded).unwrap(), data);
    }

    #[test]
    fn padding_is_injective(a in prop::collection::vec(any::<u8>(), 0..80), b in prop::collection::vec(any::<u8>(), 0..80)) {
        prop_assume!(a != b);
        prop_assert_ne!(pad(&a, 32).unwrap().blocks, pad(&b, 32).unwrap().blocks);
    }

    #[test]
    fn envelope_encoding_is_canonical(f in frame()) {
        let p = &fixture().params;
        let bytes = encode_envelope(&f);
        let back = decode_envelope(p, &bytes).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(encode_envelope(&back), bytes);
    }
}

#[test]
fn padding_boundaries() {
    let empty = pad(&[], 32).unwrap();
    assert_eq!(empty.blocks.len(), 1);
    assert_eq!(unpad(&empty).unwrap(), Vec::<u8>::new());
    assert_eq!(pad(&[0u8; 32], 32).unwrap().blocks.len(), 2);
}

#[test]
fn damaged_envelopes_fail_to_decode() {
    let p = &fixture().params;
    let (mode, sender, receiver) = routing(p, 0);
    let envelope = Envelope::<Bls12> { x: G1::generator(), y: MaskBlock::zero(p.mask_len()) };
    let bytes = encode_envelope(&EnvelopeFrame { mode, sender, receiver, envelope });
    let header = 7 + 1 + 1 + 2 * p.id_len();
    let category = |b: &[u8]| match decode_envelope(p, b) {
        Err(Error::Decode { category, .. }) => category,
        other => panic!("expected a decode error, got {other:?}"),
    };

    assert_eq!(category(&bytes[..bytes.len() - 1]), DecodeCategory::Length);
    let mut longer = bytes.clone();
    longer.push(0);
    assert_eq!(category(&longer), DecodeCategory::Length);

    let mut garbage = bytes.clone();
    garbage[header..header + 48].fill(0xff);
    assert_eq!(category(&garbage), DecodeCategory::Point);

    let mut outside = bytes.clone();
    outside[header..header + 48].copy_from_slice(&common::bls_g1_outside_subgroup(51));
    assert_eq!(category(&outside), DecodeCategory::Point);

    let mut magic = bytes.clone();
    magic[0] ^= 1;
    assert_eq!(category(&magic), DecodeCategory::Magic);

    let mut mode = bytes.clone();
    mode[8] = Mode::SignatureOnly.to_byte();
    assert_eq!(category(&mode), DecodeCategory::Field);
}

#[test]
fn streams_round_trip_in_every_mode() {
    let f = fixture();
    let p = &f.params;
    let mut rng = common::rng(52);
    let alice = extract(&f.master, p, &p.identity("alice").unwrap()).unwrap();
    let bob = extract(&f.master, p, &p.identity("bob").unwrap()).unwrap();
    let data: Vec<u8> = (0..200u8).collect();
    let cases = [
        (Some(&alice), &alice.id, Some(&bob), &bob.id),
        (Some(&alice), &alice.id, None, &p.vacant()),
        (None, &p.vacant(), Some(&bob), &bob.id),
    ];
    for (ka, a, kb, b) in cases {
        let stream = seal_payload(p, ka, a, b, &data, &mut rng).unwrap();
        assert_eq!(stream.blocks.len(), 7);
        let bytes = encode_stream(&stream);
        let back = decode_stream(p, &bytes).unwrap();
        assert_eq!(encode_stream(&back), bytes);
        assert_eq!(open_payload(p, a, kb, b, &back).unwrap(), data);

        let mut dropped = back.clone();
        dropped.blocks.pop();
        assert!(matches!(open_payload(p, a, kb, b, &dropped), Err(Error::Reject)));
        let mut swapped = back.clone();
        swapped.blocks.swap(1, 2);
        assert!(matches!(open_payload(p, a, kb, b, &swapped), Err(Error::Reject)));
    }
}

#[test]
fn armor_round_trips() {
    let bytes = b"IDGSCE1\x01\xfe\xff".to_vec();
    assert_eq!(codec::dearmor(codec::armor_hex(&bytes).as_bytes()).unwrap(), bytes);
    assert_eq!(codec::dearmor(&bytes).unwrap(), bytes);
    assert!(codec::dearmor(&[0xff, 0x00]).is_err());
}
