//! False-share forgery against exponent-based verification.
//!
//! A share `Q` passes verification iff `Q = P(k) (mod ord(g))`. Interpolation
//! however runs in Z_p, and `p - 1 = -1 (mod p)`, so `Q = P(k) + m (p - 1)`
//! verifies while entering interpolation as `P(k) - m`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::natural;
use crate::numtheory::{GroupParams, Mode};
use crate::poly::{lagrange_weights_at_zero, SecretPolynomial};
use crate::protocol::PartyId;
use crate::vss::{Provenance, Share};
use crate::{Error, Natural, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ForgeryKind {
    /// `Q = P(k) + m (p - 1)`.
    AddPMinusOne,
    /// `Q = P(k) + m ord(g)`; weaker than `AddPMinusOne` whenever `g` is not a primitive root.
    OrderShift,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ForgeryStrategy {
    pub kind: ForgeryKind,
    #[serde(with = "natural::dec")]
    pub multiplier: Natural,
}

impl ForgeryStrategy {
    pub fn new(kind: ForgeryKind, multiplier: u64) -> Self {
        ForgeryStrategy { kind, multiplier: Natural::from(multiplier) }
    }

    /// The minimal forgery: one extra `p - 1`.
    pub fn canonical() -> Self {
        Self::new(ForgeryKind::AddPMinusOne, 1)
    }
}

/// Builds a share for recipient `k` that passes verification against the
/// dealer's honest commitments but differs from the honest share in Z_p.
pub fn forge_share(
    poly: &SecretPolynomial,
    k: PartyId,
    params: &GroupParams,
    strategy: &ForgeryStrategy,
) -> Result<Share> {
    if params.mode() == Mode::Hardened {
        return Err(Error::ForgeryImpossible);
    }
    let p = params.p();
    if poly.field_modulus() != p {
        return Err(Error::ModeMismatch);
    }
    if (&strategy.multiplier % p).is_zero() {
        return Err(Error::UselessMultiplier);
    }
    let shift = match strategy.kind {
        ForgeryKind::AddPMinusOne => p - 1u8,
        ForgeryKind::OrderShift => params.order().clone(),
    };
    let honest = poly.eval_integer(&k.abscissa());
    Ok(Share {
        dealer: poly.dealer(),
        recipient: k,
        value: honest + &strategy.multiplier * shift,
        provenance: Provenance::Forged(strategy.clone()),
    })
}

/// Predicts what interpolation at zero yields from `(k, honest share mod p, forged?)`
/// points when every forged point used `AddPMinusOne` with multiplier `m`:
/// `a_0 - m * sum_{forged} lambda_j (mod p)`.
pub fn predict_corruption(points: &[(Natural, Natural, bool)], m: &Natural, p: &Natural) -> Result<Natural> {
    let xs: Vec<Natural> = points.iter().map(|(k, _, _)| k.clone()).collect();
    let weights = lagrange_weights_at_zero(&xs, p)?;
    let mut secret = Natural::zero();
    let mut error = Natural::zero();
    for ((_, y, forged), w) in points.iter().zip(&weights) {
        secret = (secret + (y % p) * w) % p;
        if *forged {
            error = (error + w) % p;
        }
    }
    let error = m % p * error % p;
    Ok((secret + p - error) % p)
}
