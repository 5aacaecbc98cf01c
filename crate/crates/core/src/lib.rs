//! Identity-based generalized signcryption over bilinear pairings.
//!
//! A single algorithm pair, [`gsc::gsc`] and [`gsc::guc`], provides
//! signcryption when both identities are present, a publicly verifiable
//! signature when the receiver is vacant, and identity-based encryption when
//! the sender is vacant.
//!
//! Two pairing backends implement [`algebra::PairingGroup`]: BLS12-381
//! ([`algebra::Bls12`]) and an order-31 supersingular test group
//! ([`algebra::Toy`]) small enough for exhaustive cross-checks.

pub mod algebra;
pub mod cli;
pub mod codec;
pub mod error;
pub mod gsc;
pub mod harness;
pub mod hashing;
pub mod keyauthority;

pub use error::{Error, Result};
pub use gsc::{decrypt, encrypt, gsc, guc, sign, verify, Envelope, Mode};
pub use hashing::{Identity, Message};
pub use keyauthority::{extract, setup, MasterKey, SystemParams, UserKeyPair, Widths};
