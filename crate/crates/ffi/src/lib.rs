//! C ABI over `idgsc` on BLS12-381.
//!
//! Parameters, master keys and key pairs cross the boundary as opaque
//! handles; byte strings as pointer and length pairs. Every function returns
//! an [`IdgscStatus`]. Outputs are written only on success. Buffers returned
//! through [`IdgscBuffer`] belong to the caller and are released with
//! [`idgsc_buffer_free`].
//!
//! An identity argument given as a null pointer is the vacant identity; which
//! of sender and receiver is vacant selects the mode.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use idgsc::algebra::Bls12;
use idgsc::codec::{self, KdfParams, KeyFile, ENVELOPE_MAGIC};
use idgsc::keyauthority::verify_keypair;
use idgsc::{Error, Identity, MasterKey, SystemParams, UserKeyPair, Widths};
use rand::rngs::OsRng;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdgscStatus {
    Ok = 0,
    /// Cryptographic rejection: the ciphertext did not verify.
    Reject = 1,
    NullPointer = 2,
    InvalidArgument = 3,
    /// A key required by the mode is absent, or one is given that must not be.
    MissingKey = 4,
    Decode = 5,
    /// Wrong passphrase or damaged master-key file.
    Unlock = 6,
    /// A bug; the library caught a panic.
    Internal = 7,
}

/// Public system parameters.
pub struct IdgscParams(SystemParams<Bls12>);

/// The master secret.
pub struct IdgscMasterKey(MasterKey<Bls12>);

/// A user's key pair.
pub struct IdgscKeyPair(UserKeyPair<Bls12>);

/// Bytes owned by the library until passed to [`idgsc_buffer_free`].
#[repr(C)]
pub struct IdgscBuffer {
    pub data: *mut u8,
    pub len: usize,
}

impl From<&Error> for IdgscStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Reject => IdgscStatus::Reject,
            Error::MissingKey { .. } | Error::KeyMismatch => IdgscStatus::MissingKey,
            Error::Decode { .. } => IdgscStatus::Decode,
            Error::Unlock => IdgscStatus::Unlock,
            _ => IdgscStatus::InvalidArgument,
        }
    }
}

impl From<Error> for IdgscStatus {
    fn from(e: Error) -> Self {
        IdgscStatus::from(&e)
    }
}

type Outcome = Result<(), IdgscStatus>;

fn guard(body: impl FnOnce() -> Outcome) -> IdgscStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => IdgscStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => IdgscStatus::Internal,
    }
}

unsafe fn bytes<'a>(data: *const u8, len: usize) -> Result<&'a [u8], IdgscStatus> {
    if data.is_null() {
        return if len == 0 { Ok(&[]) } else { Err(IdgscStatus::NullPointer) };
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, IdgscStatus> {
    p.as_ref().ok_or(IdgscStatus::NullPointer)
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, IdgscStatus> {
    p.as_mut().ok_or(IdgscStatus::NullPointer)
}

unsafe fn identity(params: &SystemParams<Bls12>, label: *const u8, len: usize) -> Result<Identity, IdgscStatus> {
    if label.is_null() {
        return Ok(params.vacant());
    }
    Ok(Identity::from_label(bytes(label, len)?, params.id_len())?)
}

fn give(v: Vec<u8>) -> IdgscBuffer {
    let boxed = v.into_boxed_slice();
    let len = boxed.len();
    IdgscBuffer { data: Box::into_raw(boxed) as *mut u8, len }
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Static, NUL-terminated description of `status`.
#[no_mangle]
pub extern "C" fn idgsc_status_message(status: IdgscStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        IdgscStatus::Ok => b"ok\0",
        IdgscStatus::Reject => b"rejected\0",
        IdgscStatus::NullPointer => b"null pointer argument\0",
        IdgscStatus::InvalidArgument => b"invalid argument\0",
        IdgscStatus::MissingKey => b"key missing or not allowed in this mode\0",
        IdgscStatus::Decode => b"malformed container\0",
        IdgscStatus::Unlock => b"master key could not be unlocked\0",
        IdgscStatus::Internal => b"internal error\0",
    };
    s.as_ptr() as *const c_char
}

/// Releases a buffer returned by this library. Null data is a no-op.
///
/// # Safety
/// `buffer` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn idgsc_buffer_free(buffer: IdgscBuffer) {
    if !buffer.data.is_null() {
        drop(Box::from_raw(ptr::slice_from_raw_parts_mut(buffer.data, buffer.len)));
    }
}

/// Generates parameters and a master key. Widths are in bits; zero selects
/// the default of 256.
///
/// # Safety
/// Both output pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn idgsc_setup(
    id_bits: u32,
    msg_bits: u32,
    params_out: *mut *mut IdgscParams,
    master_out: *mut *mut IdgscMasterKey,
) -> IdgscStatus {
    guard(|| {
        let (params_out, master_out) = (out(params_out)?, out(master_out)?);
        let defaults = Widths::default();
        let widths = Widths {
            id_bits: if id_bits == 0 { defaults.id_bits } else { id_bits },
            msg_bits: if msg_bits == 0 { defaults.msg_bits } else { msg_bits },
        };
        let (params, master) = idgsc::setup::<Bls12, _>(widths, &mut OsRng)?;
        *params_out = boxed(IdgscParams(params));
        *master_out = boxed(IdgscMasterKey(master));
        Ok(())
    })
}

/// # Safety
/// `params` must be null or a live handle; `out_buf` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn idgsc_params_encode(params: *const IdgscParams, out_buf: *mut IdgscBuffer) -> IdgscStatus {
    guard(|| {
        let params = handle(params)?;
        *out(out_buf)? = give(codec::encode_params(&params.0));
        Ok(())
    })
}

/// # Safety
/// `data` must point to `len` readable bytes; `params_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn idgsc_params_decode(
    data: *const u8,
    len: usize,
    params_out: *mut *mut IdgscParams,
) -> IdgscStatus {
    guard(|| {
        let params_out = out(params_out)?;
        let params = codec::decode_params::<Bls12>(codec::dearmor(bytes(data, len)?)?.as_slice())?;
        *params_out = boxed(IdgscParams(params));
        Ok(())
    })
}

/// # Safety
/// `params` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn idgsc_params_free(params: *mut IdgscParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Seals the master key under a passphrase with Argon2id; zero costs select
/// the defaults.
///
/// # Safety
/// Pointers must be valid for their lengths; `out_buf` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn idgsc_master_encode(
    master: *const IdgscMasterKey,
    passphrase: *const u8,
    passphrase_len: usize,
    kdf_memory_kib: u32,
    kdf_iterations: u32,
    out_buf: *mut IdgscBuffer,
) -> IdgscStatus {
    guard(|| {
        let master = handle(master)?;
        let passphrase = bytes(passphrase, passphrase_len)?;
        let out_buf = out(out_buf)?;
        let mut kdf = KdfParams::default();
        if kdf_memory_kib != 0 {
            kdf.m_cost_kib = kdf_memory_kib;
        }
        if kdf_iterations != 0 {
            kdf.t_cost = kdf_iterations;
        }
        *out_buf = give(codec::encode_master_key(&master.0, passphrase, kdf, &mut OsRng)?);
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid for their lengths; `master_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn idgsc_master_decode(
    data: *const u8,
    len: usize,
    passphrase: *const u8,
    passphrase_len: usize,
    master_out: *mut *mut IdgscMasterKey,
) -> IdgscStatus {
    guard(|| {
        let master_out = out(master_out)?;
        let data = codec::dearmor(bytes(data, len)?)?;
        let master = codec::decode_master_key::<Bls12>(&data, bytes(passphrase, passphrase_len)?)?;
        *master_out = boxed(IdgscMasterKey(master));
        Ok(())
    })
}

/// # Safety
/// `master` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn idgsc_master_free(master: *mut IdgscMasterKey) {
    if !master.is_null() {
        drop(Box::from_raw(master));
    }
}

/// Derives the key pair for the identity labelled `label`.
///
/// # Safety
/// Handles must be live; `label` must point to `label_len` bytes.
#[no_mangle]
pub unsafe extern "C" fn idgsc_extract(
    params: *const IdgscParams,
    master: *const IdgscMasterKey,
    label: *const u8,
    label_len: usize,
    key_out: *mut *mut IdgscKeyPair,
) -> IdgscStatus {
    guard(|| {
        let (params, master, key_out) = (handle(params)?, handle(master)?, out(key_out)?);
        if label.is_null() {
            return Err(IdgscStatus::NullPointer);
        }
        if !master.0.matches(&params.0) {
            return Err(IdgscStatus::InvalidArgument);
        }
        let id = identity(&params.0, label, label_len)?;
        *key_out = boxed(IdgscKeyPair(idgsc::extract(&master.0, &params.0, &id)?));
        Ok(())
    })
}

/// Encodes the full key pair, private half included.
///
/// # Safety
/// `key` must be a live handle; `out_buf` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn idgsc_key_encode(key: *const IdgscKeyPair, out_buf: *mut IdgscBuffer) -> IdgscStatus {
    guard(|| {
        let key = handle(key)?;
        *out(out_buf)? = give(codec::encode_user_key(&key.0));
        Ok(())
    })
}

/// Decodes a private key file and checks it against `params`. Public-only
/// files are refused with [`IdgscStatus::MissingKey`].
///
/// # Safety
/// `params` must be live; `data` must point to `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn idgsc_key_decode(
    params: *const IdgscParams,
    data: *const u8,
    len: usize,
    key_out: *mut *mut IdgscKeyPair,
) -> IdgscStatus {
    guard(|| {
        let (params, key_out) = (handle(params)?, out(key_out)?);
        let data = codec::dearmor(bytes(data, len)?)?;
        match codec::decode_user_key::<Bls12>(&data)? {
            KeyFile::Private(kp) if verify_keypair(&params.0, &kp) => {
                *key_out = boxed(IdgscKeyPair(kp));
                Ok(())
            }
            KeyFile::Private(_) => Err(IdgscStatus::InvalidArgument),
            KeyFile::Public(_) => Err(IdgscStatus::MissingKey),
        }
    })
}

/// # Safety
/// `key` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn idgsc_key_free(key: *mut IdgscKeyPair) {
    if !key.is_null() {
        drop(Box::from_raw(key));
    }
}

/// Pads and signcrypts `data` of any length into a stream container.
/// `sender_key` is required exactly when `sender` is non-null.
///
/// # Safety
/// Handles must be null or live; byte pointers valid for their lengths.
#[no_mangle]
pub unsafe extern "C" fn idgsc_signcrypt(
    params: *const IdgscParams,
    sender_key: *const IdgscKeyPair,
    sender: *const u8,
    sender_len: usize,
    receiver: *const u8,
    receiver_len: usize,
    data: *const u8,
    data_len: usize,
    out_buf: *mut IdgscBuffer,
) -> IdgscStatus {
    guard(|| {
        let params = &handle(params)?.0;
        let out_buf = out(out_buf)?;
        let sender = identity(params, sender, sender_len)?;
        let receiver = identity(params, receiver, receiver_len)?;
        let key = sender_key.as_ref().map(|k| &k.0);
        if sender.is_vacant() && key.is_some() {
            return Err(IdgscStatus::MissingKey);
        }
        let data = bytes(data, data_len)?;
        let stream = codec::seal_payload(params, key, &sender, &receiver, data, &mut OsRng)?;
        *out_buf = give(codec::encode_stream(&stream));
        Ok(())
    })
}

/// Verifies and opens a stream or single-envelope container for the claimed
/// `(sender, receiver)` pair. Any container that fails to decode is a
/// [`IdgscStatus::Reject`], like a failed verification.
///
/// # Safety
/// Handles must be null or live; byte pointers valid for their lengths.
#[no_mangle]
pub unsafe extern "C" fn idgsc_unsigncrypt(
    params: *const IdgscParams,
    sender: *const u8,
    sender_len: usize,
    receiver_key: *const IdgscKeyPair,
    receiver: *const u8,
    receiver_len: usize,
    ciphertext: *const u8,
    ciphertext_len: usize,
    out_buf: *mut IdgscBuffer,
) -> IdgscStatus {
    guard(|| {
        let params = &handle(params)?.0;
        let out_buf = out(out_buf)?;
        let sender = identity(params, sender, sender_len)?;
        let receiver = identity(params, receiver, receiver_len)?;
        let key = receiver_key.as_ref().map(|k| &k.0);
        if receiver.is_vacant() && key.is_some() {
            return Err(IdgscStatus::MissingKey);
        }
        let raw = codec::dearmor(bytes(ciphertext, ciphertext_len)?).map_err(|_| IdgscStatus::Reject)?;
        let plain = if raw.starts_with(ENVELOPE_MAGIC) {
            let frame = codec::decode_envelope(params, &raw).map_err(|_| IdgscStatus::Reject)?;
            idgsc::guc(params, &sender, key, &receiver, &frame.envelope)?.into_bytes()
        } else {
            let stream = codec::decode_stream(params, &raw).map_err(|_| IdgscStatus::Reject)?;
            codec::open_payload(params, &sender, key, &receiver, &stream)?
        };
        *out_buf = give(plain);
        Ok(())
    })
}
