//! Deterministic n-party DKG simulation.
//!
//! One run walks the whole storyline: every party deals a secret polynomial,
//! broadcasts commitments and sends shares; every recipient verifies; each
//! dealer's secret is either disclosed or reconstructed from the shares held
//! by cooperating parties; finally the group key is assembled or blocked.
//!
//! Messages travel through an in-process ordered queue (dealer id, then
//! recipient id). Dealer `i` draws its polynomial from ChaCha stream `i`
//! under the run seed.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::attack::{forge_share, ForgeryKind, ForgeryStrategy};
use crate::natural;
use crate::numtheory::{gen_params, mod_exp, GroupParams, Mode};
use crate::poly::{lagrange_zero, sample_polynomial, SecretPolynomial};
use crate::registry;
use crate::rng::{substream, PARAMS_STREAM};
use crate::vss::{
    aggregate_public_key, commit, commit_integer, commitments_in_group, range_check, verify_share,
    CommitmentVector, Share, SizeReport,
};
use crate::{Error, Natural, Result};

/// Transcript schema version.
pub const TRANSCRIPT_VERSION: &str = "1";

/// Reconstruction enumerates t-subsets of a dealer's share pool up to this many.
pub const MAX_RECONSTRUCTION_SUBSETS: usize = 1024;

/// Party identity, `1..=n`. Doubles as the evaluation abscissa.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartyId(pub u32);

impl PartyId {
    pub fn abscissa(self) -> Natural {
        Natural::from(self.0)
    }
}

impl fmt::Display for PartyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Behavior {
    Honest,
    /// Publishes honest commitments, sends forged shares to `targets`, then
    /// refuses to disclose its secret at key assembly.
    FalseShareDealer { strategy: ForgeryStrategy, targets: Vec<PartyId> },
    /// Deals honestly, then refuses to disclose its secret at key assembly.
    WithholdingDealer,
}

impl Behavior {
    pub fn withholds(&self) -> bool {
        !matches!(self, Behavior::Honest)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartyBehavior {
    pub party: PartyId,
    pub behavior: Behavior,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ParamsRef {
    /// Entry of the parameter registry.
    Named { name: String },
    /// Fresh parameters drawn from the run seed's parameter stream.
    Generated { bits: u32, mode: Mode },
}

impl ParamsRef {
    pub fn named(name: &str) -> Self {
        ParamsRef::Named { name: name.to_string() }
    }

    pub fn resolve(&self, seed: u64) -> Result<GroupParams> {
        match self {
            ParamsRef::Named { name } => registry::lookup(name),
            ParamsRef::Generated { bits, mode } => gen_params(*bits, *mode, &mut substream(seed, PARAMS_STREAM)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioName {
    Honest,
    FalseShare,
    OrderShift,
    Withhold,
    HardenedAttack,
}

impl ScenarioName {
    pub const ALL: [ScenarioName; 5] = [
        ScenarioName::Honest,
        ScenarioName::FalseShare,
        ScenarioName::OrderShift,
        ScenarioName::Withhold,
        ScenarioName::HardenedAttack,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioName::Honest => "honest",
            ScenarioName::FalseShare => "false-share",
            ScenarioName::OrderShift => "order-shift",
            ScenarioName::Withhold => "withhold",
            ScenarioName::HardenedAttack => "hardened-attack",
        }
    }

    /// Registry set used when the caller names none.
    pub fn default_params(self) -> &'static str {
        match self {
            ScenarioName::OrderShift => "p23d11",
            ScenarioName::HardenedAttack => "p23q11",
            _ => "small11",
        }
    }

    /// Mode of generated parameters for this scenario.
    pub fn mode(self) -> Mode {
        match self {
            ScenarioName::HardenedAttack => Mode::Hardened,
            _ => Mode::Vulnerable,
        }
    }

    /// Behavior of party `party` among `n` parties. The adversary, if any, is party 1.
    pub fn behavior(self, party: PartyId, n: u32) -> Behavior {
        let others = || (2..=n).map(PartyId).collect();
        match (self, party.0) {
            (ScenarioName::FalseShare | ScenarioName::HardenedAttack, 1) => {
                Behavior::FalseShareDealer { strategy: ForgeryStrategy::canonical(), targets: others() }
            }
            (ScenarioName::OrderShift, 1) => Behavior::FalseShareDealer {
                strategy: ForgeryStrategy::new(ForgeryKind::OrderShift, 1),
                targets: others(),
            },
            (ScenarioName::Withhold, 1) => Behavior::WithholdingDealer,
            _ => Behavior::Honest,
        }
    }
}

impl fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|name| name.as_str() == s)
            .ok_or_else(|| Error::ConfigInvalid(format!("unknown scenario `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub scenario: String,
    pub n: u32,
    pub t: u32,
    pub params: ParamsRef,
    pub behaviors: Vec<PartyBehavior>,
    pub seed: u64,
}

impl ScenarioConfig {
    pub fn preset(name: ScenarioName, n: u32, t: u32, params: ParamsRef, seed: u64) -> Self {
        let behaviors = (1..=n)
            .map(|i| PartyBehavior { party: PartyId(i), behavior: name.behavior(PartyId(i), n) })
            .collect();
        ScenarioConfig { scenario: name.as_str().to_string(), n, t, params, behaviors, seed }
    }

    pub fn behavior(&self, party: PartyId) -> &Behavior {
        &self.behaviors[party.0 as usize - 1].behavior
    }

    pub fn parties(&self) -> impl Iterator<Item = PartyId> {
        (1..=self.n).map(PartyId)
    }

    pub fn validate(&self, params: &GroupParams) -> Result<()> {
        let bad = |msg: String| Err(Error::ConfigInvalid(msg));
        if self.n < 2 {
            return bad(format!("n = {} but at least 2 parties are needed", self.n));
        }
        if self.t < 2 || self.t > self.n {
            return bad(format!("threshold t = {} outside 2..={}", self.t, self.n));
        }
        if &Natural::from(self.n) >= params.field_modulus() {
            return bad(format!("n = {} must stay below the field modulus {}", self.n, params.field_modulus()));
        }
        if self.behaviors.len() != self.n as usize
            || self.behaviors.iter().zip(self.parties()).any(|(pb, id)| pb.party != id)
        {
            return bad("behaviors must list parties 1..=n in order".into());
        }
        for pb in &self.behaviors {
            if let Behavior::FalseShareDealer { targets, .. } = &pb.behavior {
                if targets.iter().any(|t| t.0 == 0 || t.0 > self.n) {
                    return bad(format!("party {} targets a nonexistent party", pb.party));
                }
            }
        }
        // a built-in label pins the behaviors; hand-built configs use any other label
        if let Ok(name) = self.scenario.parse::<ScenarioName>() {
            if self.behaviors.iter().any(|pb| pb.behavior != name.behavior(pb.party, self.n)) {
                return bad(format!("behaviors differ from the `{name}` scenario"));
            }
            if name == ScenarioName::HardenedAttack && params.mode() != Mode::Hardened {
                return bad("hardened-attack needs hardened parameters".into());
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ForgeryOutcome {
    Sent,
    ForgeryImpossible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForgeryAttempt {
    pub dealer: PartyId,
    pub recipient: PartyId,
    pub outcome: ForgeryOutcome,
}

#[derive(Debug, Clone)]
pub struct DealingRound {
    /// Private to each dealer; never serialized.
    pub polynomials: Vec<SecretPolynomial>,
    pub commitments: Vec<CommitmentVector>,
    /// Canonical order: dealer id, then recipient id.
    pub shares: Vec<Share>,
    pub forgery_attempts: Vec<ForgeryAttempt>,
}

impl DealingRound {
    pub fn share(&self, dealer: PartyId, recipient: PartyId) -> Option<&Share> {
        self.shares.iter().find(|s| s.dealer == dealer && s.recipient == recipient)
    }
}

fn honest_share(poly: &SecretPolynomial, k: PartyId, params: &GroupParams) -> Result<Share> {
    let value = match params.mode() {
        // exact integers: reducing mod p would break the exponent identity
        Mode::Vulnerable => poly.eval_integer(&k.abscissa()),
        Mode::Hardened => poly.eval_mod(&k.abscissa(), params.field_modulus())?,
    };
    Ok(Share::honest(poly.dealer(), k, value))
}

pub fn run_dealing_round(config: &ScenarioConfig, params: &GroupParams) -> Result<DealingRound> {
    config.validate(params)?;
    let mut round = DealingRound {
        polynomials: Vec::new(),
        commitments: Vec::new(),
        shares: Vec::new(),
        forgery_attempts: Vec::new(),
    };
    for dealer in config.parties() {
        let mut rng = substream(config.seed, u64::from(dealer.0));
        let poly = sample_polynomial(config.t as usize, params.field_modulus(), dealer, &mut rng)?;
        round.commitments.push(commit(&poly, params)?);
        for k in config.parties() {
            let share = match config.behavior(dealer) {
                Behavior::FalseShareDealer { strategy, targets } if targets.contains(&k) => {
                    match forge_share(&poly, k, params, strategy) {
                        Ok(forged) => {
                            round.forgery_attempts.push(ForgeryAttempt {
                                dealer,
                                recipient: k,
                                outcome: ForgeryOutcome::Sent,
                            });
                            forged
                        }
                        Err(Error::ForgeryImpossible) => {
                            round.forgery_attempts.push(ForgeryAttempt {
                                dealer,
                                recipient: k,
                                outcome: ForgeryOutcome::ForgeryImpossible,
                            });
                            honest_share(&poly, k, params)?
                        }
                        Err(e) => return Err(e),
                    }
                }
                _ => honest_share(&poly, k, params)?,
            };
            round.shares.push(share);
        }
        round.polynomials.push(poly);
    }
    Ok(round)
}

/// `matrix[i-1][k-1]` records whether party `k` accepted dealer `i`'s share.
pub type VerificationMatrix = Vec<Vec<bool>>;

/// Verifies one share the way its recipient does. Hardened mode additionally
/// requires the range check and commitment membership in the subgroup.
pub fn accept_share(share: &Share, commits: &CommitmentVector, params: &GroupParams) -> Result<bool> {
    if params.mode() == Mode::Hardened
        && !(range_check(share, params)? && commitments_in_group(commits, params))
    {
        return Ok(false);
    }
    verify_share(share, commits, params)
}

pub fn run_verification_round(
    shares: &[Share],
    commitments: &[CommitmentVector],
    params: &GroupParams,
) -> Result<VerificationMatrix> {
    let n = commitments.len();
    let mut matrix = vec![vec![false; n]; n];
    for share in shares {
        let (i, k) = (share.dealer.0 as usize, share.recipient.0 as usize);
        if i == 0 || i > n || k == 0 || k > n {
            return Err(Error::InvalidRecipient(share.recipient.0));
        }
        matrix[i - 1][k - 1] = accept_share(share, &commitments[i - 1], params)?;
    }
    Ok(matrix)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reconstruction {
    #[serde(with = "natural::dec")]
    pub value: Natural,
    /// `g^value == c_{dealer,0} (mod p)`.
    pub commitment_check: bool,
}

/// Interpolates the dealer's secret from `shares` in the params' field and
/// checks it against the dealer's constant-term commitment.
pub fn reconstruct_dealer_secret(
    shares: &[Share],
    commits: &CommitmentVector,
    params: &GroupParams,
    t: usize,
) -> Result<Reconstruction> {
    if shares.len() < t || shares.is_empty() {
        return Err(Error::InsufficientShares { have: shares.len(), need: t.max(1) });
    }
    if let Some(s) = shares.iter().find(|s| s.dealer != commits.dealer) {
        return Err(Error::DealerMismatch { share: s.dealer.0, commits: commits.dealer.0 });
    }
    let field = params.field_modulus();
    let points: Vec<(Natural, Natural)> = shares
        .iter()
        .map(|s| (s.recipient.abscissa(), &s.value % field))
        .collect();
    let value = lagrange_zero(&points, field)?;
    let c0 = commits.c.first().ok_or(Error::EmptyInput)?;
    let commitment_check = &mod_exp(params.g(), &value, params.p())? == c0;
    Ok(Reconstruction { value, commitment_check })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructionAttempt {
    pub subset: Vec<PartyId>,
    #[serde(flatten)]
    pub result: Reconstruction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DealerReconstructions {
    pub dealer: PartyId,
    /// Recipients whose accepted share of this dealer is available for pooling.
    pub pool: Vec<PartyId>,
    pub attempts: Vec<ReconstructionAttempt>,
    /// More t-subsets existed than [`MAX_RECONSTRUCTION_SUBSETS`].
    pub truncated: bool,
}

/// Lexicographic k-subsets of `0..n`, at most `limit` of them.
fn index_subsets(n: usize, k: usize, limit: usize) -> (Vec<Vec<usize>>, bool) {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return (out, false);
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if out.len() == limit {
            return (out, true);
        }
        out.push(idx.clone());
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return (out, false);
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Shares of `dealer` that cooperating parties can pool: held by a
/// non-withholding party and accepted at verification. A withholding
/// dealer's self-share never leaves the dealer.
pub fn reconstruction_pool<'a>(
    config: &ScenarioConfig,
    dealer: PartyId,
    shares: &'a [Share],
    matrix: &VerificationMatrix,
) -> Vec<&'a Share> {
    shares
        .iter()
        .filter(|s| s.dealer == dealer)
        .filter(|s| !config.behavior(s.recipient).withholds())
        .filter(|s| matrix[dealer.0 as usize - 1][s.recipient.0 as usize - 1])
        .collect()
}

pub fn run_reconstructions(
    config: &ScenarioConfig,
    shares: &[Share],
    commitments: &[CommitmentVector],
    matrix: &VerificationMatrix,
    params: &GroupParams,
) -> Result<Vec<DealerReconstructions>> {
    config
        .parties()
        .map(|dealer| {
            let pool = reconstruction_pool(config, dealer, shares, matrix);
            let (subsets, truncated) = index_subsets(pool.len(), config.t as usize, MAX_RECONSTRUCTION_SUBSETS);
            let attempts = subsets
                .into_iter()
                .map(|idx| {
                    let chosen: Vec<Share> = idx.iter().map(|&i| pool[i].clone()).collect();
                    let result = reconstruct_dealer_secret(
                        &chosen,
                        &commitments[dealer.0 as usize - 1],
                        params,
                        config.t as usize,
                    )?;
                    Ok(ReconstructionAttempt { subset: chosen.iter().map(|s| s.recipient).collect(), result })
                })
                .collect::<Result<_>>()?;
            Ok(DealerReconstructions {
                dealer,
                pool: pool.iter().map(|s| s.recipient).collect(),
                attempts,
                truncated,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum DealerSecret {
    /// The dealer revealed `a_{i,0}` and it matched `c_{i,0}`.
    Disclosed {
        #[serde(with = "natural::dec")]
        value: Natural,
    },
    /// Recovered from the first pooled subset that passed the commitment check.
    Reconstructed {
        subset: Vec<PartyId>,
        #[serde(with = "natural::dec")]
        value: Natural,
    },
    Unrecoverable,
}

impl DealerSecret {
    pub fn value(&self) -> Option<&Natural> {
        match self {
            DealerSecret::Disclosed { value } | DealerSecret::Reconstructed { value, .. } => Some(value),
            DealerSecret::Unrecoverable => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DealerSecretEntry {
    pub dealer: PartyId,
    #[serde(flatten)]
    pub secret: DealerSecret,
}

/// Decides how each dealer's secret reaches key assembly.
pub fn collect_dealer_secrets(
    config: &ScenarioConfig,
    disclosed: impl Fn(PartyId) -> Option<Natural>,
    commitments: &[CommitmentVector],
    reconstructions: &[DealerReconstructions],
    params: &GroupParams,
) -> Result<Vec<DealerSecretEntry>> {
    config
        .parties()
        .zip(reconstructions)
        .map(|(dealer, recon)| {
            let c0 = &commitments[dealer.0 as usize - 1].c[0];
            let from_dealer = if config.behavior(dealer).withholds() { None } else { disclosed(dealer) };
            let secret = match from_dealer {
                Some(value) if &mod_exp(params.g(), &value, params.p())? == c0 => DealerSecret::Disclosed { value },
                _ => recon
                    .attempts
                    .iter()
                    .find(|a| a.result.commitment_check)
                    .map(|a| DealerSecret::Reconstructed { subset: a.subset.clone(), value: a.result.value.clone() })
                    .unwrap_or(DealerSecret::Unrecoverable),
            };
            Ok(DealerSecretEntry { dealer, secret })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    KeyAssembled,
    KeyBlocked,
    ForgeryDetected,
    /// Every dealer secret was obtained yet `g^x` misses the public key.
    /// Unreachable: each secret is checked against its `c_{i,0}` first.
    ForgeryUndetectedButCorrupting,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assembly {
    pub verdict: Verdict,
    pub group_key: Option<Natural>,
}

/// Sums the dealer secrets into the group key and checks `g^x` against the
/// aggregate public key.
///
/// Vulnerable mode sums over the integers: the secrets are exponents of `g`,
/// so only a reduction mod `ord(g)` would preserve `g^x`. Hardened mode sums
/// in Z_q, which is that reduction.
pub fn assemble_group_key(
    secrets: &[DealerSecretEntry],
    commitments: &[CommitmentVector],
    matrix: &VerificationMatrix,
    params: &GroupParams,
) -> Result<Assembly> {
    let values: Option<Vec<&Natural>> = secrets.iter().map(|e| e.secret.value()).collect();
    let Some(values) = values else {
        let verdict = if matrix.iter().flatten().all(|&ok| ok) { Verdict::KeyBlocked } else { Verdict::ForgeryDetected };
        return Ok(Assembly { verdict, group_key: None });
    };
    let mut x = values.into_iter().fold(Natural::zero(), |acc, v| acc + v);
    if params.mode() == Mode::Hardened {
        x %= params.field_modulus();
    }
    let public = aggregate_public_key(commitments, params)?;
    let verdict = if mod_exp(params.g(), &x, params.p())? == public {
        Verdict::KeyAssembled
    } else {
        Verdict::ForgeryUndetectedButCorrupting
    };
    Ok(Assembly { verdict, group_key: Some(x) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerCommitmentEntry {
    pub dealer: PartyId,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub report: Option<SizeReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

/// Unreduced commitments for each dealer's polynomial: executed when small,
/// otherwise the size guard's refusal.
pub fn integer_commitments(polys: &[SecretPolynomial], params: &GroupParams) -> Vec<IntegerCommitmentEntry> {
    polys
        .iter()
        .map(|poly| match commit_integer(poly, params.g()) {
            Ok((_, report)) => IntegerCommitmentEntry { dealer: poly.dealer(), report: Some(report), error: None },
            Err(e) => IntegerCommitmentEntry { dealer: poly.dealer(), report: None, error: Some(e.to_string()) },
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub version: String,
    pub config: ScenarioConfig,
    pub params: GroupParams,
    pub commitments: Vec<CommitmentVector>,
    pub shares: Vec<Share>,
    pub forgery_attempts: Vec<ForgeryAttempt>,
    pub verification: VerificationMatrix,
    #[serde(with = "natural::dec")]
    pub aggregate_public_key: Natural,
    pub reconstructions: Vec<DealerReconstructions>,
    pub dealer_secrets: Vec<DealerSecretEntry>,
    #[serde(with = "natural::dec_opt")]
    pub group_key: Option<Natural>,
    pub integer_commitments: Vec<IntegerCommitmentEntry>,
    pub verdict: Verdict,
}

pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioReport> {
    let params = config.params.resolve(config.seed)?;
    let round = run_dealing_round(config, &params)?;
    let matrix = run_verification_round(&round.shares, &round.commitments, &params)?;
    let reconstructions = run_reconstructions(config, &round.shares, &round.commitments, &matrix, &params)?;
    let dealer_secrets = collect_dealer_secrets(
        config,
        |d| Some(round.polynomials[d.0 as usize - 1].secret().clone()),
        &round.commitments,
        &reconstructions,
        &params,
    )?;
    let assembly = assemble_group_key(&dealer_secrets, &round.commitments, &matrix, &params)?;
    Ok(ScenarioReport {
        version: TRANSCRIPT_VERSION.to_string(),
        config: config.clone(),
        aggregate_public_key: aggregate_public_key(&round.commitments, &params)?,
        integer_commitments: integer_commitments(&round.polynomials, &params),
        commitments: round.commitments,
        shares: round.shares,
        forgery_attempts: round.forgery_attempts,
        verification: matrix,
        reconstructions,
        dealer_secrets,
        group_key: assembly.group_key,
        verdict: assembly.verdict,
        params,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    fn small11() -> GroupParams {
        registry::lookup("small11").unwrap()
    }

    #[test]
    fn subsets_are_lexicographic_and_complete() {
        let (all, truncated) = index_subsets(4, 2, 100);
        assert!(!truncated);
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let (some, truncated) = index_subsets(10, 5, 7);
        assert!(truncated);
        assert_eq!(some.len(), 7);
        assert_eq!(index_subsets(2, 3, 10).0.len(), 0);
        assert_eq!(index_subsets(7, 3, 1000).0.len(), 35);
    }

    #[test]
    fn scenario_names_round_trip() {
        for name in ScenarioName::ALL {
            assert_eq!(name.as_str().parse::<ScenarioName>().unwrap(), name);
        }
        assert!("nope".parse::<ScenarioName>().is_err());
    }

    #[test]
    fn config_validation() {
        let gp = small11();
        let ok = ScenarioConfig::preset(ScenarioName::Honest, 5, 3, ParamsRef::named("small11"), 1);
        ok.validate(&gp).unwrap();
        for (n_, t) in [(1, 1), (5, 1), (5, 6), (11, 3)] {
            let cfg = ScenarioConfig::preset(ScenarioName::Honest, n_, t, ParamsRef::named("small11"), 1);
            assert!(matches!(cfg.validate(&gp), Err(Error::ConfigInvalid(_))), "n={n_} t={t}");
        }
        let mut shuffled = ok.clone();
        shuffled.behaviors.swap(0, 1);
        assert!(shuffled.validate(&gp).is_err());
        let hardened = ScenarioConfig::preset(ScenarioName::HardenedAttack, 5, 3, ParamsRef::named("small11"), 1);
        assert!(hardened.validate(&gp).is_err());
        let mut relabeled = ok.clone();
        relabeled.behaviors[0].behavior = Behavior::WithholdingDealer;
        assert!(relabeled.validate(&gp).is_err());
        relabeled.scenario = "custom".into();
        relabeled.validate(&gp).unwrap();
    }

    #[test]
    fn dealing_counts_and_provenance() {
        let cfg = ScenarioConfig::preset(ScenarioName::Honest, 2, 2, ParamsRef::named("small11"), 3);
        let round = run_dealing_round(&cfg, &small11()).unwrap();
        assert_eq!(round.commitments.len(), 2);
        assert_eq!(round.shares.len(), 4);
        let order: Vec<(u32, u32)> = round.shares.iter().map(|s| (s.dealer.0, s.recipient.0)).collect();
        assert_eq!(order, vec![(1, 1), (1, 2), (2, 1), (2, 2)]);

        let cfg = ScenarioConfig::preset(ScenarioName::FalseShare, 4, 2, ParamsRef::named("small11"), 3);
        let round = run_dealing_round(&cfg, &small11()).unwrap();
        for s in &round.shares {
            assert_eq!(s.is_forged(), s.dealer.0 == 1 && s.recipient.0 != 1);
        }
    }

    #[test]
    fn reconstruction_examples() {
        let gp = small11();
        let cv = CommitmentVector { dealer: PartyId(1), c: vec![n(8), n(5)] };
        let sh = |k: u32, v: u64| Share::honest(PartyId(1), PartyId(k), n(v));
        let honest = reconstruct_dealer_secret(&[sh(1, 7), sh(2, 0)], &cv, &gp, 2).unwrap();
        assert_eq!(honest, Reconstruction { value: n(3), commitment_check: true });
        let mixed = reconstruct_dealer_secret(&[sh(1, 7), sh(2, 10)], &cv, &gp, 2).unwrap();
        assert_eq!(mixed, Reconstruction { value: n(4), commitment_check: false });
        let forged = reconstruct_dealer_secret(&[sh(1, 17), sh(2, 21)], &cv, &gp, 2).unwrap();
        assert_eq!(forged, Reconstruction { value: n(2), commitment_check: false });
        assert_eq!(
            reconstruct_dealer_secret(&[sh(1, 7)], &cv, &gp, 2),
            Err(Error::InsufficientShares { have: 1, need: 2 })
        );
    }

    #[test]
    fn out_of_range_share_is_rejected_in_hardened_verification() {
        let gp = registry::lookup("p23q11").unwrap();
        let cfg = ScenarioConfig::preset(ScenarioName::Honest, 5, 3, ParamsRef::named("p23q11"), 9);
        let mut round = run_dealing_round(&cfg, &gp).unwrap();
        let before = run_verification_round(&round.shares, &round.commitments, &gp).unwrap();
        assert!(before.iter().flatten().all(|&ok| ok));
        // same residue mod q, so only the range check can object
        round.shares[1].value += 11u8;
        let after = run_verification_round(&round.shares, &round.commitments, &gp).unwrap();
        assert!(!after[0][1]);
        assert_eq!(after.iter().flatten().filter(|&&ok| !ok).count(), 1);
    }

    #[test]
    fn blocked_key_with_rejected_shares_reports_detection() {
        let gp = registry::lookup("p23q11").unwrap();
        let cfg = ScenarioConfig::preset(ScenarioName::Withhold, 3, 3, ParamsRef::named("p23q11"), 4);
        let mut round = run_dealing_round(&cfg, &gp).unwrap();
        // dealer 1 withholds; push one of its shares out of range so the pool drops below t
        round.shares[1].value += 11u8;
        let matrix = run_verification_round(&round.shares, &round.commitments, &gp).unwrap();
        let recon = run_reconstructions(&cfg, &round.shares, &round.commitments, &matrix, &gp).unwrap();
        assert!(recon[0].attempts.is_empty());
        let secrets = collect_dealer_secrets(
            &cfg,
            |d| Some(round.polynomials[d.0 as usize - 1].secret().clone()),
            &round.commitments,
            &recon,
            &gp,
        )
        .unwrap();
        assert_eq!(secrets[0].secret, DealerSecret::Unrecoverable);
        let assembly = assemble_group_key(&secrets, &round.commitments, &matrix, &gp).unwrap();
        assert_eq!(assembly.verdict, Verdict::ForgeryDetected);
    }

    #[test]
    fn scenario_verdicts() {
        let run = |name: ScenarioName| {
            let cfg = ScenarioConfig::preset(name, 5, 3, ParamsRef::named(name.default_params()), 7);
            run_scenario(&cfg).unwrap()
        };
        assert_eq!(run(ScenarioName::Honest).verdict, Verdict::KeyAssembled);
        assert_eq!(run(ScenarioName::Withhold).verdict, Verdict::KeyAssembled);
        let attack = run(ScenarioName::FalseShare);
        assert!(attack.verification.iter().flatten().all(|&ok| ok));
        assert_eq!(attack.verdict, Verdict::KeyBlocked);
        assert!(attack.reconstructions[0].attempts.iter().all(|a| !a.result.commitment_check));
        let hardened = run(ScenarioName::HardenedAttack);
        assert!(hardened
            .forgery_attempts
            .iter()
            .all(|a| a.outcome == ForgeryOutcome::ForgeryImpossible));
        assert_eq!(hardened.forgery_attempts.len(), 4);
        assert_eq!(hardened.verdict, Verdict::KeyAssembled);
    }

    #[test]
    fn withholding_dealer_self_share_is_not_pooled() {
        let cfg = ScenarioConfig::preset(ScenarioName::Withhold, 5, 3, ParamsRef::named("small11"), 7);
        let report = run_scenario(&cfg).unwrap();
        assert_eq!(report.reconstructions[0].pool, vec![PartyId(2), PartyId(3), PartyId(4), PartyId(5)]);
        assert_eq!(report.reconstructions[1].pool, vec![PartyId(2), PartyId(3), PartyId(4), PartyId(5)]);
        assert!(matches!(report.dealer_secrets[0].secret, DealerSecret::Reconstructed { .. }));
        assert!(matches!(report.dealer_secrets[1].secret, DealerSecret::Disclosed { .. }));
    }

    #[test]
    fn generated_params_are_reproducible() {
        let cfg = ScenarioConfig::preset(
            ScenarioName::Honest,
            3,
            2,
            ParamsRef::Generated { bits: 24, mode: Mode::Vulnerable },
            5,
        );
        let a = run_scenario(&cfg).unwrap();
        let b = run_scenario(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.params.p().bits(), 24);
        assert_eq!(a.verdict, Verdict::KeyAssembled);
    }
}
