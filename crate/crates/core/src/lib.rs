//! A laboratory for Feldman verifiable secret sharing with commitments in Z_p.
//!
//! Verification checks shares in the exponent of `g`, so it only sees share
//! values modulo `ord(g)`, a divisor of `p - 1`. Reconstruction interpolates
//! in Z_p. A dealer can therefore send `P(k) + m (p - 1)`: it verifies, yet it
//! interpolates as `P(k) - m`, and withholding the true secret then blocks
//! the group key. Hardened mode samples and interpolates in the prime-order
//! subgroup Z_q with `q = ord(g)` and range-checks shares, which closes the gap.
//!
//! Modules, bottom-up: [`numtheory`], [`poly`], [`vss`], [`attack`],
//! [`protocol`], [`transcript`], [`cli`].

pub mod attack;
pub mod cli;
mod error;
pub mod natural;
pub mod numtheory;
pub mod poly;
pub mod protocol;
pub mod registry;
pub mod rng;
pub mod transcript;
pub mod vss;

pub use error::{Error, Result};

/// Arbitrary-precision non-negative integer.
pub type Natural = num_bigint::BigUint;

pub use attack::{forge_share, predict_corruption, ForgeryKind, ForgeryStrategy};
pub use numtheory::{gen_params, GroupParams, Mode};
pub use poly::{lagrange_zero, sample_polynomial, SecretPolynomial};
pub use protocol::{run_scenario, Behavior, PartyId, ScenarioConfig, ScenarioName, ScenarioReport, Verdict};
pub use vss::{commit, verify_share, CommitmentVector, Share};
