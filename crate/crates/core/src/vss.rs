//! Feldman commitments and share verification.
//!
//! Verification reduces every exponent modulo `d = ord(g)`. All bases are
//! powers of `g`, so this gives exactly the same verdict as the exact
//! integer exponents while keeping the cost independent of how large a
//! forged share value is.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::attack::ForgeryStrategy;
use crate::natural;
use crate::numtheory::{mod_exp, GroupParams, Mode};
use crate::poly::SecretPolynomial;
use crate::protocol::PartyId;
use crate::{Error, Natural, Result};

/// Upper bound on `a * bitlen(g)` for an executed integer commitment `g^a`.
pub const INTEGER_COMMITMENT_GUARD_BITS: u64 = 1 << 20;

/// Exponent size used for the storage projection row.
pub const PROJECTION_EXPONENT_BITS: u32 = 1024;

/// Commitments whose bit length exceeds this cannot be stored anywhere.
pub const STORAGE_LIMIT_BITS: u32 = 64;

/// `c_j = g^{a_j} mod p` for a single dealer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommitmentVector {
    pub dealer: PartyId,
    #[serde(with = "natural::dec_vec")]
    pub c: Vec<Natural>,
}

/// Simulation metadata; verification never looks at it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Honest,
    Forged(ForgeryStrategy),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Share {
    pub dealer: PartyId,
    pub recipient: PartyId,
    #[serde(with = "natural::dec")]
    pub value: Natural,
    pub provenance: Provenance,
}

impl Share {
    pub fn honest(dealer: PartyId, recipient: PartyId, value: Natural) -> Self {
        Share { dealer, recipient, value, provenance: Provenance::Honest }
    }

    pub fn is_forged(&self) -> bool {
        matches!(self.provenance, Provenance::Forged(_))
    }
}

pub fn commit(poly: &SecretPolynomial, params: &GroupParams) -> Result<CommitmentVector> {
    if poly.field_modulus() != params.field_modulus() {
        return Err(Error::ModeMismatch);
    }
    let c = poly
        .coeffs()
        .iter()
        .map(|a| mod_exp(params.g(), a, params.p()))
        .collect::<Result<_>>()?;
    Ok(CommitmentVector { dealer: poly.dealer(), c })
}

/// Checks `g^value == prod_j c_j^{k^j} (mod p)` with every exponent reduced mod `ord(g)`.
pub fn verify_share(share: &Share, commits: &CommitmentVector, params: &GroupParams) -> Result<bool> {
    if share.dealer != commits.dealer {
        return Err(Error::DealerMismatch { share: share.dealer.0, commits: commits.dealer.0 });
    }
    let k = share.recipient.abscissa();
    if k.is_zero() || &k >= params.p() {
        return Err(Error::InvalidRecipient(share.recipient.0));
    }
    let (p, d) = (params.p(), params.order());
    let lhs = mod_exp(params.g(), &(&share.value % d), p)?;
    let mut rhs = BigUint::one();
    let mut k_pow = BigUint::one() % d;
    for c in &commits.c {
        rhs = rhs * mod_exp(c, &k_pow, p)? % p;
        k_pow = k_pow * &k % d;
    }
    Ok(lhs == rhs)
}

/// Hardened-mode guard: the share must already be a reduced element of Z_q.
pub fn range_check(share: &Share, params: &GroupParams) -> Result<bool> {
    match (params.mode(), params.subgroup_order()) {
        (Mode::Hardened, Some(q)) => Ok(&share.value < q),
        _ => Err(Error::WrongMode),
    }
}

/// Every commitment lies in `[1, p)` and in the subgroup generated by `g`.
pub fn commitments_in_group(commits: &CommitmentVector, params: &GroupParams) -> bool {
    commits.c.iter().all(|c| {
        !c.is_zero()
            && c < params.p()
            && mod_exp(c, params.order(), params.p()).map(|v| v.is_one()).unwrap_or(false)
    })
}

/// `prod_i c_{i,0} mod p`, the public value matching the summed dealer secrets.
pub fn aggregate_public_key(all_commits: &[CommitmentVector], params: &GroupParams) -> Result<Natural> {
    if all_commits.is_empty() {
        return Err(Error::EmptyInput);
    }
    all_commits.iter().try_fold(BigUint::one(), |acc, cv| {
        let c0 = cv.c.first().ok_or(Error::EmptyInput)?;
        Ok(acc * c0 % params.p())
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerCommitmentRow {
    #[serde(with = "natural::dec")]
    pub exponent: Natural,
    pub bits: u64,
}

/// Bit length of `g^a` derived without computing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeProjection {
    #[serde(with = "natural::dec")]
    pub base: Natural,
    #[serde(with = "natural::dec")]
    pub exponent: Natural,
    #[serde(with = "natural::dec")]
    pub bits_lower: Natural,
    #[serde(with = "natural::dec")]
    pub bits_upper: Natural,
    /// Bounds coincide; holds when the base is a power of two.
    pub exact: bool,
    pub infeasible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeReport {
    #[serde(with = "natural::dec")]
    pub base: Natural,
    pub rows: Vec<IntegerCommitmentRow>,
    pub projection: SizeProjection,
}

/// `bitlen(g^a)` lies in `[a (b - 1) + 1, a b]` for `b = bitlen(g)`, with the
/// lower bound exact when `g` is a power of two.
pub fn project_commitment_bits(g: &Natural, exponent: &Natural) -> Result<SizeProjection> {
    if g < &BigUint::from(2u8) {
        return Err(Error::InvalidParams(format!("commitment base {g} must be at least 2")));
    }
    let b = g.bits();
    let power_of_two = g.count_ones() == 1;
    let (bits_lower, bits_upper) = if exponent.is_zero() {
        (BigUint::one(), BigUint::one())
    } else {
        let lower = exponent * (b - 1) + 1u8;
        let upper = if power_of_two { lower.clone() } else { exponent * b };
        (lower, upper)
    };
    let infeasible = bits_lower > (BigUint::one() << STORAGE_LIMIT_BITS);
    Ok(SizeProjection {
        base: g.clone(),
        exponent: exponent.clone(),
        exact: bits_lower == bits_upper,
        bits_lower,
        bits_upper,
        infeasible,
    })
}

/// Exact, unreduced `g^{a_j}` for every coefficient, with a size report whose
/// projection row covers the largest 1024-bit exponent.
pub fn commit_integer(poly: &SecretPolynomial, g: &Natural) -> Result<(Vec<Natural>, SizeReport)> {
    let projection_exponent = (BigUint::one() << PROJECTION_EXPONENT_BITS) - 1u8;
    let projection = project_commitment_bits(g, &projection_exponent)?;
    let guard = BigUint::from(INTEGER_COMMITMENT_GUARD_BITS);
    if poly.coeffs().iter().any(|a| a * g.bits() > guard) {
        return Err(Error::TooLarge("integer commitment"));
    }
    let commitments: Vec<Natural> = poly
        .coeffs()
        .iter()
        .map(|a| {
            let e = u32::try_from(a).expect("guarded below 2^20");
            num_traits::pow(g.clone(), e as usize)
        })
        .collect();
    let rows = poly
        .coeffs()
        .iter()
        .zip(&commitments)
        .map(|(a, c)| IntegerCommitmentRow { exponent: a.clone(), bits: c.bits() })
        .collect();
    Ok((commitments, SizeReport { base: g.clone(), rows, projection }))
}
