//! Number-theoretic primitives over arbitrary-precision naturals.
//!
//! Everything here is a pure function. Sizes are desk-scale: factorization
//! (and therefore exact order computation) is guarded at 2^96.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::natural;
use crate::rng::{random_range, random_with_bits, LabRng};
use crate::{Error, Natural, Result};

/// Miller-Rabin bases that make the test exact for every n < 3.3 * 10^24,
/// which covers the full 64-bit range.
pub const DETERMINISTIC_WITNESSES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Random Miller-Rabin rounds used at or above 2^64. Each round errs with
/// probability at most 1/4, so a composite survives with probability < 2^-128.
pub const RANDOM_ROUNDS: usize = 64;

/// Seed of the ChaCha8 stream that draws the random witnesses, so that
/// `is_prime` is a deterministic function of its input.
pub const PRIMALITY_SEED: u64 = 0x5653_535f_4c41_4221;

/// Factorization (and exact order computation) refuses inputs at or above 2^96.
pub const FACTOR_GUARD_BITS: u64 = 96;

/// Candidates tried by [`gen_params`] before giving up.
pub const MAX_GENERATION_CANDIDATES: u64 = 1_000_000;

const SMALL_PRIME_LIMIT: u32 = 1000;

pub fn mod_exp(base: &Natural, exp: &Natural, m: &Natural) -> Result<Natural> {
    if m < &BigUint::from(2u8) {
        return Err(Error::ModulusTooSmall);
    }
    let mut result = BigUint::one();
    let mut acc = base % m;
    let bits = exp.bits();
    for i in 0..bits {
        if exp.bit(i) {
            result = result * &acc % m;
        }
        if i + 1 < bits {
            acc = &acc * &acc % m;
        }
    }
    Ok(result)
}

pub fn mod_inv(a: &Natural, m: &Natural) -> Result<Natural> {
    if m < &BigUint::from(2u8) {
        return Err(Error::ModulusTooSmall);
    }
    let a = BigInt::from_biguint(Sign::Plus, a % m);
    let m_int = BigInt::from_biguint(Sign::Plus, m.clone());
    let egcd = a.extended_gcd(&m_int);
    if !egcd.gcd.is_one() {
        return Err(Error::NotInvertible);
    }
    let inv = egcd.x.mod_floor(&m_int);
    Ok(inv.to_biguint().expect("mod_floor of a positive modulus is non-negative"))
}

fn small_primes() -> impl Iterator<Item = u32> {
    let limit = SMALL_PRIME_LIMIT as usize;
    let mut composite = vec![false; limit];
    (2..limit).filter_map(move |i| {
        if composite[i] {
            return None;
        }
        let mut j = i * i;
        while j < limit {
            composite[j] = true;
            j += i;
        }
        Some(i as u32)
    })
}

fn miller_rabin_round(n: &Natural, n_minus_1: &Natural, odd: &Natural, twos: u64, a: &Natural) -> bool {
    let mut x = mod_exp(a, odd, n).expect("n > 2");
    if x.is_one() || &x == n_minus_1 {
        return true;
    }
    for _ in 1..twos {
        x = &x * &x % n;
        if &x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Exact below 2^64 (fixed witness set); above, [`RANDOM_ROUNDS`] rounds with
/// witnesses drawn from a fixed-seed stream.
pub fn is_prime(n: &Natural) -> bool {
    if n < &BigUint::from(2u8) {
        return false;
    }
    for p in small_primes().take(25) {
        let p = BigUint::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u8;
    let twos = n_minus_1.trailing_zeros().expect("n - 1 > 0");
    let odd = &n_minus_1 >> twos;
    if n.bits() <= 64 {
        return DETERMINISTIC_WITNESSES
            .iter()
            .all(|&a| miller_rabin_round(n, &n_minus_1, &odd, twos, &BigUint::from(a)));
    }
    let mut rng = LabRng::seed_from_u64(PRIMALITY_SEED);
    let lo = BigUint::from(2u8);
    (0..RANDOM_ROUNDS).all(|_| {
        let a = random_range(&mut rng, &lo, &n_minus_1);
        miller_rabin_round(n, &n_minus_1, &odd, twos, &a)
    })
}

fn abs_diff(a: &Natural, b: &Natural) -> Natural {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor or `None`
/// when this increment `c` cycles without finding one.
fn pollard_brent(n: &Natural, c: &Natural) -> Option<Natural> {
    const BATCH: u64 = 128;
    let step = |x: &Natural| (x * x + c) % n;
    let mut y = BigUint::from(2u8);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut r: u64 = 1;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = step(&y);
                q = q * abs_diff(&x, &y) % n;
            }
            g = q.gcd(n);
            k += BATCH;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = step(&ys);
            g = abs_diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

fn split_composite(n: &Natural) -> Natural {
    let mut c = BigUint::one();
    loop {
        if let Some(f) = pollard_brent(n, &c) {
            return f;
        }
        c += 1u8;
    }
}

/// Prime factorization as `(prime, exponent)` pairs in ascending prime order.
pub fn factorize(n: &Natural) -> Result<Vec<(Natural, u32)>> {
    if n.is_zero() {
        return Err(Error::NotAUnit);
    }
    if n.bits() > FACTOR_GUARD_BITS {
        return Err(Error::TooLarge("factorization input"));
    }
    let mut primes: Vec<Natural> = Vec::new();
    let mut rest = n.clone();
    for p in small_primes() {
        let p = BigUint::from(p);
        if &p * &p > rest {
            break;
        }
        while (&rest % &p).is_zero() {
            rest /= &p;
            primes.push(p.clone());
        }
    }
    let mut pending = vec![rest];
    while let Some(m) = pending.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            primes.push(m);
            continue;
        }
        let f = split_composite(&m);
        pending.push(&m / &f);
        pending.push(f);
    }
    primes.sort();
    let mut out: Vec<(Natural, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((last, e)) if *last == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// Least `d >= 1` with `g^d = 1 mod p`, for prime `p`.
///
/// Starts from `p - 1` and divides out each prime factor while the
/// reduced exponent still annihilates `g`.
pub fn multiplicative_order(g: &Natural, p: &Natural) -> Result<Natural> {
    if p < &BigUint::from(2u8) {
        return Err(Error::ModulusTooSmall);
    }
    if (g % p).is_zero() {
        return Err(Error::NotAUnit);
    }
    let group_order = p - 1u8;
    order_dividing(g, p, &group_order)
}

/// Exact order of `g` given a known multiple `n` of it.
fn order_dividing(g: &Natural, p: &Natural, n: &Natural) -> Result<Natural> {
    let mut order = n.clone();
    for (r, e) in factorize(n)? {
        for _ in 0..e {
            let candidate = &order / &r;
            if mod_exp(g, &candidate, p)?.is_one() {
                order = candidate;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Coefficients, shares and interpolation live in Z_p; `g` may generate all of Z_p^*.
    Vulnerable,
    /// Coefficients, shares and interpolation live in Z_q, with `q = ord(g)` prime.
    Hardened,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Mode::Vulnerable => "vulnerable",
            Mode::Hardened => "hardened",
        })
    }
}

/// A validated group: prime `p`, element `g` of exact order `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct GroupParams {
    p: Natural,
    g: Natural,
    d: Natural,
    mode: Mode,
    q: Option<Natural>,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    #[serde(with = "natural::dec")]
    p: Natural,
    #[serde(with = "natural::dec")]
    g: Natural,
    #[serde(with = "natural::dec")]
    d: Natural,
    mode: Mode,
    #[serde(with = "natural::dec_opt")]
    q: Option<Natural>,
}

impl TryFrom<RawParams> for GroupParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        GroupParams::from_parts(raw.p, raw.g, raw.d, raw.mode, raw.q)
    }
}

impl From<GroupParams> for RawParams {
    fn from(gp: GroupParams) -> Self {
        RawParams { p: gp.p, g: gp.g, d: gp.d, mode: gp.mode, q: gp.q }
    }
}

impl GroupParams {
    /// Computes the order of `g` and validates every invariant.
    pub fn new(p: Natural, g: Natural, mode: Mode, q: Option<Natural>) -> Result<Self> {
        if !is_prime(&p) {
            return Err(Error::InvalidParams(format!("p = {p} is not prime")));
        }
        if g <= BigUint::one() || g >= p {
            return Err(Error::InvalidParams(format!("g = {g} not in (1, p)")));
        }
        let d = multiplicative_order(&g, &p)?;
        Self::from_parts(p, g, d, mode, q)
    }

    /// Builds from externally supplied values, re-checking all of them.
    pub fn from_parts(p: Natural, g: Natural, d: Natural, mode: Mode, q: Option<Natural>) -> Result<Self> {
        let params = GroupParams { p, g, d, mode, q };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        let (p, g, d) = (&self.p, &self.g, &self.d);
        if !is_prime(p) {
            return bad(format!("p = {p} is not prime"));
        }
        if g <= &BigUint::one() || g >= p {
            return bad(format!("g = {g} not in (1, p)"));
        }
        let p_minus_1 = p - 1u8;
        if d.is_zero() || !(&p_minus_1 % d).is_zero() {
            return bad(format!("d = {d} does not divide p - 1"));
        }
        if !mod_exp(g, d, p)?.is_one() {
            return bad(format!("g^d != 1 for d = {d}"));
        }
        if &order_dividing(g, p, d)? != d {
            return bad(format!("d = {d} is not the exact order of g"));
        }
        match (self.mode, &self.q) {
            (Mode::Vulnerable, None) => Ok(()),
            (Mode::Vulnerable, Some(_)) => bad("vulnerable params carry no subgroup order".into()),
            (Mode::Hardened, None) => bad("hardened params need a subgroup order q".into()),
            (Mode::Hardened, Some(q)) => {
                if !is_prime(q) {
                    bad(format!("q = {q} is not prime"))
                } else if !(&p_minus_1 % q).is_zero() {
                    bad(format!("q = {q} does not divide p - 1"))
                } else if q != d {
                    bad(format!("ord(g) = {d} differs from q = {q}"))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn p(&self) -> &Natural {
        &self.p
    }

    pub fn g(&self) -> &Natural {
        &self.g
    }

    /// Exact multiplicative order of `g`.
    pub fn order(&self) -> &Natural {
        &self.d
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn subgroup_order(&self) -> Option<&Natural> {
        self.q.as_ref()
    }

    /// The field polynomials and interpolation live in: p, or q when hardened.
    pub fn field_modulus(&self) -> &Natural {
        match self.mode {
            Mode::Vulnerable => &self.p,
            Mode::Hardened => self.q.as_ref().expect("validated hardened params carry q"),
        }
    }
}

/// Generates a fresh group.
///
/// Vulnerable: a random prime of `bit_length` bits and a primitive root.
/// Hardened: a safe prime `p = 2q + 1` of `bit_length` bits and `g = h^2 mod p != 1`,
/// which has order `q`.
pub fn gen_params<R: RngCore + ?Sized>(bit_length: u32, mode: Mode, rng: &mut R) -> Result<GroupParams> {
    if !(4..=FACTOR_GUARD_BITS as u32).contains(&bit_length) {
        return Err(Error::InvalidParams(format!("bit length {bit_length} outside 4..=96")));
    }
    let bits = u64::from(bit_length);
    let two = BigUint::from(2u8);
    let mut tried = 0u64;
    while tried < MAX_GENERATION_CANDIDATES {
        tried += 1;
        match mode {
            Mode::Vulnerable => {
                let p = random_with_bits(rng, bits) | BigUint::one();
                if !is_prime(&p) {
                    continue;
                }
                let p_minus_1 = &p - 1u8;
                let factors = factorize(&p_minus_1)?;
                for _ in 0..64 {
                    let g = random_range(rng, &two, &p);
                    let primitive = factors
                        .iter()
                        .all(|(r, _)| !mod_exp(&g, &(&p_minus_1 / r), &p).map(|v| v.is_one()).unwrap_or(true));
                    if primitive {
                        return GroupParams::new(p, g, mode, None);
                    }
                }
            }
            Mode::Hardened => {
                let q = random_with_bits(rng, bits - 1) | BigUint::one();
                let p: Natural = &q * 2u8 + 1u8;
                if !is_prime(&q) || !is_prime(&p) {
                    continue;
                }
                loop {
                    let h = random_range(rng, &two, &(&p - 1u8));
                    let g = &h * &h % &p;
                    if !g.is_one() {
                        return GroupParams::new(p, g, mode, Some(q));
                    }
                }
            }
        }
    }
    Err(Error::GenerationFailed(tried))
}
