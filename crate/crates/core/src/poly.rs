//! Dealer polynomials over a prime field and interpolation at zero.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use crate::natural;
use crate::numtheory::mod_inv;
use crate::protocol::PartyId;
use crate::rng::random_below;
use crate::{Error, Natural, Result};

/// `a_0 + a_1 z + ... + a_{t-1} z^{t-1}` with coefficients in `[0, field_modulus)`.
/// `coeffs[0]` is the dealer's secret.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecretPolynomial {
    dealer: PartyId,
    #[serde(with = "natural::dec_vec")]
    coeffs: Vec<Natural>,
    #[serde(with = "natural::dec")]
    field_modulus: Natural,
}

impl SecretPolynomial {
    pub fn new(dealer: PartyId, coeffs: Vec<Natural>, field_modulus: Natural) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyInput);
        }
        if field_modulus < BigUint::from(2u8) {
            return Err(Error::ModulusTooSmall);
        }
        if let Some(c) = coeffs.iter().find(|c| **c >= field_modulus) {
            return Err(Error::InvalidParams(format!("coefficient {c} not below {field_modulus}")));
        }
        Ok(SecretPolynomial { dealer, coeffs, field_modulus })
    }

    pub fn dealer(&self) -> PartyId {
        self.dealer
    }

    pub fn coeffs(&self) -> &[Natural] {
        &self.coeffs
    }

    pub fn field_modulus(&self) -> &Natural {
        &self.field_modulus
    }

    /// Threshold `t`: the number of coefficients.
    pub fn threshold(&self) -> usize {
        self.coeffs.len()
    }

    pub fn secret(&self) -> &Natural {
        &self.coeffs[0]
    }

    /// Exact evaluation over the integers, no reduction (Horner).
    pub fn eval_integer(&self, k: &Natural) -> Natural {
        self.coeffs
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, c| acc * k + c)
    }

    pub fn eval_mod(&self, k: &Natural, m: &Natural) -> Result<Natural> {
        if m < &BigUint::from(2u8) {
            return Err(Error::ModulusTooSmall);
        }
        let k = k % m;
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, c| (acc * &k + c) % m))
    }
}

/// Samples `t` coefficients uniformly from `[0, field_modulus)`.
pub fn sample_polynomial<R: RngCore + ?Sized>(
    t: usize,
    field_modulus: &Natural,
    dealer: PartyId,
    rng: &mut R,
) -> Result<SecretPolynomial> {
    if t == 0 {
        return Err(Error::EmptyInput);
    }
    if field_modulus < &BigUint::from(2u8) {
        return Err(Error::ModulusTooSmall);
    }
    let coeffs = (0..t).map(|_| random_below(rng, field_modulus)).collect();
    SecretPolynomial::new(dealer, coeffs, field_modulus.clone())
}

/// Lagrange basis values at zero: `lambda_j = prod_{l != j} x_l / (x_l - x_j) mod m`.
pub fn lagrange_weights_at_zero(xs: &[Natural], m: &Natural) -> Result<Vec<Natural>> {
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    if m < &BigUint::from(2u8) {
        return Err(Error::ModulusTooSmall);
    }
    let xs: Vec<Natural> = xs.iter().map(|x| x % m).collect();
    for (j, x) in xs.iter().enumerate() {
        if x.is_zero() {
            return Err(Error::ZeroAbscissa);
        }
        if xs[..j].contains(x) {
            return Err(Error::DuplicateAbscissa(x.to_string()));
        }
    }
    xs.iter()
        .enumerate()
        .map(|(j, xj)| {
            let mut num = BigUint::one();
            let mut den = BigUint::one();
            for (l, xl) in xs.iter().enumerate() {
                if l == j {
                    continue;
                }
                num = num * xl % m;
                den = den * ((xl + m - xj) % m) % m;
            }
            Ok(num * mod_inv(&den, m)? % m)
        })
        .collect()
}

/// Value at zero of the unique polynomial of degree `< points.len()` through
/// `points`, computed in Z_m.
pub fn lagrange_zero(points: &[(Natural, Natural)], m: &Natural) -> Result<Natural> {
    let xs: Vec<Natural> = points.iter().map(|(x, _)| x.clone()).collect();
    let weights = lagrange_weights_at_zero(&xs, m)?;
    Ok(points
        .iter()
        .zip(&weights)
        .fold(BigUint::zero(), |acc, ((_, y), w)| (acc + (y % m) * w) % m))
}
