//! The `idgsc` command-line tool.
//!
//! Exit status: 0 on success, 1 when a ciphertext or signature is rejected,
//! 2 on usage and I/O errors. A rejection prints `rejected` and nothing else.

use std::ffi::OsString;
use std::fs::{self, OpenOptions};
use std::io::{self, BufRead, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::OsRng;
use rand::RngCore;
use zeroize::Zeroizing;

use crate::algebra::{Bls12, GroupPoint, OpCounter, PairingGroup, Toy};
use crate::codec::{
    armor_hex, dearmor, decode_envelope, decode_master_key, decode_params, decode_stream, decode_user_key,
    encode_master_key, encode_params, encode_public_key, encode_stream, encode_user_key, inspect_master_key,
    open_payload, peek_curve, seal_payload, KdfParams, KeyFile, ENVELOPE_MAGIC, KEY_MAGIC, MASTER_MAGIC, PARAMS_MAGIC,
    STREAM_MAGIC,
};
use crate::error::{Error, Result};
use crate::gsc::{self, mode_of, Mode};
use crate::harness::{opcount_signcrypt, opcount_unsigncrypt, OracleState};
use crate::hashing::{Identity, Message};
use crate::keyauthority::{extract, setup, verify_keypair, SystemParams, UserKeyPair, Widths};

/// Environment variable read for the master-key passphrase before falling
/// back to a prompt on stdin.
pub const PASSPHRASE_ENV: &str = "IDGSC_PASSPHRASE";

pub const EXIT_OK: u8 = 0;
pub const EXIT_REJECT: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "idgsc", version, about = "Identity-based generalized signcryption")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate system parameters and an encrypted master key.
    Setup(SetupArgs),
    /// Derive the key pair of an identity.
    Extract(ExtractArgs),
    /// Signcrypt a file; the mode follows from which of --from/--to is given.
    Signcrypt(SealArgs),
    /// Unsigncrypt a file produced by any of signcrypt, sign or encrypt.
    Unsigncrypt(OpenArgs),
    /// Sign a file (signcryption with no receiver).
    Sign(SignArgs),
    /// Verify a signed file using public values only.
    Verify(VerifyArgs),
    /// Encrypt a file (signcryption with no sender).
    Encrypt(EncryptArgs),
    /// Decrypt an encrypted file.
    Decrypt(DecryptArgs),
    /// Describe a container file. Private key material is never printed.
    Inspect(InspectArgs),
    /// Count dominant operations and time one signcryption-mode round trip.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct SetupArgs {
    #[arg(long, env = "IDGSC_PARAMS")]
    params: PathBuf,
    #[arg(long)]
    master: PathBuf,
    /// Use the order-31 test group. Insecure; for testing only.
    #[arg(long)]
    toy_group: bool,
    #[arg(long, default_value_t = crate::keyauthority::DEFAULT_ID_BITS)]
    id_bits: u32,
    #[arg(long, default_value_t = crate::keyauthority::DEFAULT_MSG_BITS)]
    msg_bits: u32,
    /// Argon2id memory cost for the master-key file.
    #[arg(long, default_value_t = KdfParams::default().m_cost_kib)]
    kdf_memory_kib: u32,
    #[arg(long, default_value_t = KdfParams::default().t_cost)]
    kdf_iterations: u32,
    /// Overwrite an existing master-key file.
    #[arg(long)]
    force: bool,
    #[arg(long)]
    hex: bool,
}

#[derive(Args, Debug)]
struct ExtractArgs {
    #[arg(long, env = "IDGSC_PARAMS")]
    params: PathBuf,
    #[arg(long)]
    master: PathBuf,
    #[arg(long)]
    id: String,
    #[arg(long, short)]
    out: PathBuf,
    /// Write only the identity and Q.
    #[arg(long)]
    public_only: bool,
    #[arg(long)]
    hex: bool,
}

#[derive(Args, Debug)]
struct Io {
    /// Input file; stdin when absent.
    #[arg(long = "in", short = 'i')]
    input: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Signcryption,
    Signature,
    Encryption,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Signcryption => Mode::Signcryption,
            ModeArg::Signature => Mode::SignatureOnly,
            ModeArg::Encryption => Mode::EncryptionOnly,
        }
    }
}

#[derive(Args, Debug)]
struct SealArgs {
    #[arg(long, env = "IDGSC_PARAMS")]
    params: PathBuf,
    /// Sender's private key file.
    #[arg(long)]
    key: Option<PathBuf>,
    #[arg(long)]
    from: Option<String>,
    #[arg(long)]
    to: Option<String>,
    /// Must agree with the mode implied by --from/--to.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[command(flatten)]
    io: Io,
    #[arg(long)]
    hex: bool,
}

#[derive(Args, Debug)]
struct OpenArgs {
    #[arg(long, env = "IDGSC_PARAMS")]
    params: PathBuf,
    /// Receiver's private key file.
    #[arg(long)]
    key: Option<PathBuf>,
    /// Claimed sender; defaults to the file header.
    #[arg(long)]
    from: Option<String>,
    /// Receiver; defaults to the file header.
    #[arg(long)]
    to: Option<String>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[command(flatten)]
    io: Io,
}

#[derive(Args, Debug)]
struct SignArgs {
    #[arg(long, env = "IDGSC_PARAMS")]
    params: PathBuf,
    #[arg(long)]
    key: PathBuf,
    #[command(flatten)]
    io: Io,
    #[arg(long)]
    hex: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, env = "IDGSC_PARAMS")]
    params: PathBuf,
    /// Claimed signer; defaults to the file header.
    #[arg(long)]
    from: Option<String>,
    #[command(flatten)]
    io: Io,
}

#[derive(Args, Debug)]
struct EncryptArgs {
    #[arg(long, env = "IDGSC_PARAMS")]
    params: PathBuf,
    #[arg(long)]
    to: String,
    #[command(flatten)]
    io: Io,
    #[arg(long)]
    hex: bool,
}

#[derive(Args, Debug)]
struct DecryptArgs {
    #[arg(long, env = "IDGSC_PARAMS")]
    params: PathBuf,
    #[arg(long)]
    key: PathBuf,
    #[command(flatten)]
    io: Io,
}

#[derive(Args, Debug)]
struct InspectArgs {
    file: PathBuf,
    /// Needed to interpret envelope and stream files.
    #[arg(long, env = "IDGSC_PARAMS")]
    params: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long)]
    toy_group: bool,
    #[arg(long, default_value_t = 20)]
    iterations: u32,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code().clamp(0, 255) as u8;
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        Err(Error::Reject) => {
            eprintln!("idgsc: rejected");
            EXIT_REJECT
        }
        Err(e) => {
            eprintln!("idgsc: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Setup(a) => {
            if a.toy_group {
                cmd_setup::<Toy>(&a)
            } else {
                cmd_setup::<Bls12>(&a)
            }
        }
        Command::Bench(a) => {
            if a.toy_group {
                cmd_bench::<Toy>(&a)
            } else {
                cmd_bench::<Bls12>(&a)
            }
        }
        Command::Inspect(a) => cmd_inspect(&a),
        other => {
            let path = match &other {
                Command::Extract(a) => &a.params,
                Command::Signcrypt(a) => &a.params,
                Command::Unsigncrypt(a) => &a.params,
                Command::Sign(a) => &a.params,
                Command::Verify(a) => &a.params,
                Command::Encrypt(a) => &a.params,
                Command::Decrypt(a) => &a.params,
                _ => unreachable!(),
            };
            let bytes = read_container(path)?;
            match peek_curve(&bytes)? {
                c if c == Bls12::CURVE_ID => with_params::<Bls12>(&bytes, other),
                c if c == Toy::CURVE_ID => with_params::<Toy>(&bytes, other),
                _ => Err(Error::Usage(format!("{}: unknown curve id", path.display()))),
            }
        }
    }
}

fn with_params<E: PairingGroup>(bytes: &[u8], command: Command) -> Result<()> {
    let params = decode_params::<E>(bytes)?;
    match command {
        Command::Extract(a) => cmd_extract(&params, &a),
        Command::Signcrypt(a) => {
            let key = a.key.as_deref().map(load_key::<E>).transpose()?;
            cmd_seal(&params, key, a.from.as_deref(), a.to.as_deref(), a.mode.map(Mode::from), &a.io, a.hex)
        }
        Command::Sign(a) => {
            let key = load_key::<E>(&a.key)?;
            let from = label_of(key.id())?;
            cmd_seal(&params, Some(key), Some(&from), None, None, &a.io, a.hex)
        }
        Command::Encrypt(a) => cmd_seal(&params, None, None, Some(&a.to), None, &a.io, a.hex),
        Command::Unsigncrypt(a) => {
            let key = a.key.as_deref().map(load_key::<E>).transpose()?;
            cmd_open(&params, key, a.from.as_deref(), a.to.as_deref(), a.mode.map(Mode::from), &a.io, None)
        }
        Command::Verify(a) => cmd_open(&params, None, a.from.as_deref(), None, None, &a.io, Some(Mode::SignatureOnly)),
        Command::Decrypt(a) => {
            let key = load_key::<E>(&a.key)?;
            let to = label_of(key.id())?;
            cmd_open(&params, Some(key), None, Some(&to), None, &a.io, Some(Mode::EncryptionOnly))
        }
        _ => unreachable!("handled before parameter dispatch"),
    }
}

fn cmd_setup<E: PairingGroup>(a: &SetupArgs) -> Result<()> {
    if a.master.exists() && !a.force {
        return Err(Error::Usage(format!("{} exists; pass --force to replace a master key", a.master.display())));
    }
    let kdf = KdfParams { m_cost_kib: a.kdf_memory_kib, t_cost: a.kdf_iterations, ..KdfParams::default() };
    let widths = Widths { id_bits: a.id_bits, msg_bits: a.msg_bits };
    let passphrase = passphrase()?;
    let (params, master) = setup::<E, _>(widths, &mut OsRng)?;
    let master_bytes = encode_master_key(&master, passphrase.as_bytes(), kdf, &mut OsRng)?;
    write_output(Some(&a.params), &encode_params(&params), a.hex, false)?;
    write_output(Some(&a.master), &master_bytes, a.hex, true)?;
    eprintln!("setup: {} with {}-bit identities and {}-bit messages", E::NAME, a.id_bits, a.msg_bits);
    Ok(())
}

fn cmd_extract<E: PairingGroup>(params: &SystemParams<E>, a: &ExtractArgs) -> Result<()> {
    let id = params.identity(&a.id)?;
    let bytes = read_container(&a.master)?;
    let passphrase = passphrase()?;
    let master = decode_master_key::<E>(&bytes, passphrase.as_bytes())?;
    if !master.matches(params) {
        return Err(Error::Usage("master key does not belong to these parameters".into()));
    }
    let kp = extract(&master, params, &id)?;
    if a.public_only {
        write_output(Some(&a.out), &encode_public_key(&kp.public()), a.hex, false)?;
    } else {
        write_output(Some(&a.out), &Zeroizing::new(encode_user_key(&kp)), a.hex, true)?;
    }
    Ok(())
}

fn identity_arg<E: PairingGroup>(params: &SystemParams<E>, label: Option<&str>) -> Result<Identity> {
    label.map_or_else(|| Ok(params.vacant()), |l| params.identity(l))
}

fn check_mode(implied: Mode, requested: Option<Mode>) -> Result<()> {
    match requested {
        Some(m) if m != implied => {
            Err(Error::Usage(format!("--mode {m} disagrees with the identities given, which select {implied} mode")))
        }
        _ => Ok(()),
    }
}

/// Resolves the key file for the role whose identity is `id`, enforcing the
/// mode's key rule.
fn role_key<E: PairingGroup>(
    params: &SystemParams<E>,
    key: Option<KeyFile<E>>,
    id: &Identity,
    mode: Mode,
    rule: &'static str,
) -> Result<Option<UserKeyPair<E>>> {
    match (id.is_vacant(), key) {
        (true, None) => Ok(None),
        (true, Some(_)) | (false, None) => Err(Error::MissingKey { mode, rule }),
        (false, Some(KeyFile::Public(_))) => {
            Err(Error::Usage(format!("{mode} mode requires {rule}; the key file given is public-only")))
        }
        (false, Some(KeyFile::Private(kp))) => {
            if &kp.id != id {
                return Err(Error::Usage(format!("key file belongs to {}, not {id}", kp.id)));
            }
            if !verify_keypair(params, &kp) {
                return Err(Error::Usage("key file does not belong to these parameters".into()));
            }
            Ok(Some(kp))
        }
    }
}

fn cmd_seal<E: PairingGroup>(
    params: &SystemParams<E>,
    key: Option<KeyFile<E>>,
    from: Option<&str>,
    to: Option<&str>,
    requested: Option<Mode>,
    io: &Io,
    hex: bool,
) -> Result<()> {
    let sender = identity_arg(params, from)?;
    let receiver = identity_arg(params, to)?;
    let mode = mode_of(&sender, &receiver)?;
    check_mode(mode, requested)?;
    let sender_key = role_key(params, key, &sender, mode, mode.sender_rule())?;
    let data = read_input(io.input.as_deref())?;
    let stream = seal_payload(params, sender_key.as_ref(), &sender, &receiver, &data, &mut OsRng)?;
    write_output(io.out.as_deref(), &encode_stream(&stream), hex, false)
}

fn cmd_open<E: PairingGroup>(
    params: &SystemParams<E>,
    key: Option<KeyFile<E>>,
    from: Option<&str>,
    to: Option<&str>,
    requested: Option<Mode>,
    io: &Io,
    expected: Option<Mode>,
) -> Result<()> {
    // Anything that does not parse as a ciphertext is treated like a
    // ciphertext that fails verification.
    let raw = dearmor(&read_input(io.input.as_deref())?).map_err(|_| Error::Reject)?;
    let single = raw.starts_with(ENVELOPE_MAGIC);
    let (hint_sender, hint_receiver, body) = if single {
        let frame = decode_envelope(params, &raw).map_err(|_| Error::Reject)?;
        (frame.sender, frame.receiver, Body::Single(frame.envelope))
    } else {
        let stream = decode_stream(params, &raw).map_err(|_| Error::Reject)?;
        (stream.sender.clone(), stream.receiver.clone(), Body::Stream(stream))
    };

    let sender = match from {
        Some(l) => params.identity(l)?,
        None if expected == Some(Mode::EncryptionOnly) => params.vacant(),
        None => hint_sender,
    };
    let receiver = match to {
        Some(l) => params.identity(l)?,
        None if expected == Some(Mode::SignatureOnly) => params.vacant(),
        None => hint_receiver,
    };
    let mode = mode_of(&sender, &receiver)?;
    check_mode(mode, requested.or(expected))?;
    let receiver_key = role_key(params, key, &receiver, mode, mode.receiver_rule())?;

    let plain = match body {
        Body::Single(env) => gsc::guc(params, &sender, receiver_key.as_ref(), &receiver, &env)?.into_bytes(),
        Body::Stream(stream) => open_payload(params, &sender, receiver_key.as_ref(), &receiver, &stream)?,
    };
    write_output(io.out.as_deref(), &plain, false, false)?;
    match mode {
        Mode::EncryptionOnly => eprintln!("decrypted (sender anonymous)"),
        _ => eprintln!("authenticated sender: {sender}"),
    }
    Ok(())
}

enum Body<E: PairingGroup> {
    Single(gsc::Envelope<E>),
    Stream(crate::codec::SealedStream<E>),
}

fn cmd_inspect(a: &InspectArgs) -> Result<()> {
    let bytes = read_container(&a.file)?;
    if bytes.starts_with(ENVELOPE_MAGIC) || bytes.starts_with(STREAM_MAGIC) {
        let path = a
            .params
            .as_ref()
            .ok_or_else(|| Error::Usage("--params is required to inspect envelope and stream files".into()))?;
        let pbytes = read_container(path)?;
        return match peek_curve(&pbytes)? {
            c if c == Bls12::CURVE_ID => inspect_ciphertext::<Bls12>(&pbytes, &bytes),
            c if c == Toy::CURVE_ID => inspect_ciphertext::<Toy>(&pbytes, &bytes),
            _ => Err(Error::Usage("unknown curve id".into())),
        };
    }
    if bytes.starts_with(MASTER_MAGIC) {
        let h = inspect_master_key(&bytes)?;
        println!("master key file");
        println!("  curve:  {}", curve_name(h.curve_id));
        println!("  kdf:    argon2id m={} KiB t={} p={}", h.kdf.m_cost_kib, h.kdf.t_cost, h.kdf.p_cost);
        println!("  s:      <encrypted>");
        return Ok(());
    }
    match peek_curve(&bytes)? {
        c if c == Bls12::CURVE_ID => inspect_keyed::<Bls12>(&bytes),
        c if c == Toy::CURVE_ID => inspect_keyed::<Toy>(&bytes),
        _ => Err(Error::Usage("unknown curve id".into())),
    }
}

fn curve_name(id: u8) -> &'static str {
    match id {
        c if c == Bls12::CURVE_ID => Bls12::NAME,
        c if c == Toy::CURVE_ID => Toy::NAME,
        _ => "unknown",
    }
}

fn inspect_keyed<E: PairingGroup>(bytes: &[u8]) -> Result<()> {
    if bytes.starts_with(PARAMS_MAGIC) {
        let p = decode_params::<E>(bytes)?;
        println!("system parameters");
        println!("  curve:  {}", E::NAME);
        println!("  hash:   suite v{}", p.hash_suite_version());
        println!("  n1:     {} bits (identity)", p.id_bits());
        println!("  n2:     {} bits (message block)", p.msg_bits());
        println!("  n3:     {} bits (point)", p.point_bits());
        println!("  n4:     {} bits (target group)", p.gt_bits());
        println!("  P_pub:  {}", hex::encode(p.p_pub().to_bytes()));
    } else if bytes.starts_with(KEY_MAGIC) {
        let key = decode_user_key::<E>(bytes)?;
        let (kind, q, private) = match &key {
            KeyFile::Private(kp) => ("private", kp.q, true),
            KeyFile::Public(pk) => ("public", pk.q, false),
        };
        println!("user key file ({kind})");
        println!("  curve:  {}", E::NAME);
        println!("  id:     {}", key.id());
        println!("  Q:      {}", hex::encode(q.to_bytes()));
        if private {
            println!("  S:      <redacted>");
        }
    } else {
        return Err(Error::Usage("not an idgsc container".into()));
    }
    Ok(())
}

fn inspect_ciphertext<E: PairingGroup>(params: &[u8], bytes: &[u8]) -> Result<()> {
    let params = decode_params::<E>(params)?;
    let (kind, mode, sender, receiver, blocks, x) = if bytes.starts_with(ENVELOPE_MAGIC) {
        let f = decode_envelope(&params, bytes)?;
        ("envelope", f.mode, f.sender, f.receiver, 1, f.envelope.x)
    } else {
        let s = decode_stream(&params, bytes)?;
        let x = s.blocks[0].x;
        ("stream", s.mode, s.sender, s.receiver, s.blocks.len(), x)
    };
    println!("{kind} (header fields are unauthenticated hints)");
    println!("  mode:     {mode}");
    println!("  sender:   {sender}");
    println!("  receiver: {receiver}");
    println!("  blocks:   {blocks}");
    println!("  X[0]:     {}", hex::encode(x.to_bytes()));
    Ok(())
}

/// The fixed-format operation-count table printed by `bench`.
pub fn format_opcount_table(curve: &str, signcrypt: &OpCounter, unsigncrypt: &OpCounter) -> String {
    let row = |name: &str, c: &OpCounter| {
        format!("{name:<12}{:>8}{:>8}{:>10}  (+{})\n", c.g1_mul, c.gt_pow, c.pairings, c.precomputable_pairings)
    };
    let mut out = format!("dominant operations, signcryption mode, {curve}\n");
    out.push_str(&format!("{:<12}{:>8}{:>8}{:>10}  {}\n", "operation", "mul", "exp", "pairing", "(+precomputable)"));
    out.push_str(&row("signcrypt", signcrypt));
    out.push_str(&row("unsigncrypt", unsigncrypt));
    out
}

fn cmd_bench<E: PairingGroup>(a: &BenchArgs) -> Result<()> {
    let mut state = OracleState::<E>::new(OsRng.next_u64())?;
    let sc = opcount_signcrypt(&mut state)?;
    let uc = opcount_unsigncrypt(&mut state)?;
    print!("{}", format_opcount_table(E::NAME, &sc, &uc));

    let iterations = a.iterations.max(1);
    let (params, master) = setup::<E, _>(Widths::default(), &mut OsRng)?;
    let alice = extract(&master, &params, &params.identity("alice")?)?;
    let bob = extract(&master, &params, &params.identity("bob")?)?;
    let m = Message::new(vec![0xa5; params.msg_len()]);
    let start = Instant::now();
    let mut env = None;
    for _ in 0..iterations {
        env = Some(gsc::gsc(&params, Some(&alice), &alice.id, &bob.id, &m, &mut OsRng)?);
    }
    let seal = start.elapsed() / iterations;
    let env = env.expect("at least one iteration");
    let start = Instant::now();
    for _ in 0..iterations {
        gsc::guc(&params, &alice.id, Some(&bob), &bob.id, &env)?;
    }
    let open = start.elapsed() / iterations;
    println!(
        "time per call over {iterations} iterations: signcrypt {:.3} ms, unsigncrypt {:.3} ms",
        seal.as_secs_f64() * 1e3,
        open.as_secs_f64() * 1e3
    );
    Ok(())
}

fn label_of(id: &Identity) -> Result<String> {
    id.label()
        .and_then(|l| std::str::from_utf8(l).ok())
        .map(str::to_owned)
        .ok_or_else(|| Error::Usage("key file identity is not a text label".into()))
}

fn load_key<E: PairingGroup>(path: &Path) -> Result<KeyFile<E>> {
    decode_user_key(&read_container(path)?)
}

fn io_context(path: &Path, e: io::Error) -> Error {
    Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

fn read_container(path: &Path) -> Result<Vec<u8>> {
    dearmor(&fs::read(path).map_err(|e| io_context(path, e))?)
}

fn read_input(path: Option<&Path>) -> Result<Vec<u8>> {
    match path {
        Some(p) => fs::read(p).map_err(|e| io_context(p, e)),
        None => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf)?;
            Ok(buf)
        }
    }
}

fn passphrase() -> Result<Zeroizing<String>> {
    let pass = match std::env::var(PASSPHRASE_ENV) {
        Ok(p) => Zeroizing::new(p),
        Err(_) => {
            eprint!("master key passphrase: ");
            let mut line = Zeroizing::new(String::new());
            io::stdin().lock().read_line(&mut line)?;
            Zeroizing::new(line.trim_end_matches(['\r', '\n']).to_owned())
        }
    };
    if pass.is_empty() {
        return Err(Error::Usage(format!("empty passphrase (set {PASSPHRASE_ENV} or type one)")));
    }
    Ok(pass)
}

/// Writes to `path` through a temporary file and a rename, or to stdout.
/// Private files are created with mode 0600.
fn write_output(path: Option<&Path>, bytes: &[u8], hex: bool, private: bool) -> Result<()> {
    let armored;
    let bytes = if hex {
        armored = Zeroizing::new(armor_hex(bytes).into_bytes());
        &armored[..]
    } else {
        bytes
    };
    let Some(path) = path else {
        let mut out = io::stdout().lock();
        out.write_all(bytes)?;
        return Ok(out.flush()?);
    };
    let name = path.file_name().ok_or_else(|| Error::Usage(format!("{} is not a file path", path.display())))?;
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));

    let mut opts = OpenOptions::new();
    opts.write(true).create_new(true);
    #[cfg(unix)]
    {
        use std::os::unix::fs::OpenOptionsExt;
        opts.mode(if private { 0o600 } else { 0o644 });
    }
    let result = (|| {
        let mut f = opts.open(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(|e| io_context(path, e))
}
