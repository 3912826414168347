use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2")]
    ModulusTooSmall,
    #[error("value is not invertible modulo the given modulus")]
    NotInvertible,
    #[error("zero is not a unit")]
    NotAUnit,
    #[error("{0} exceeds the desk-scale size guard")]
    TooLarge(&'static str),
    #[error("parameter generation failed after {0} candidates")]
    GenerationFailed(u64),
    #[error("invalid group parameters: {0}")]
    InvalidParams(String),
    #[error("unknown parameter set `{0}`")]
    UnknownParamSet(String),
    #[error("parameter registry: {0}")]
    Registry(String),
    #[error("duplicate abscissa {0}")]
    DuplicateAbscissa(String),
    #[error("abscissa 0 is the secret itself, not a share")]
    ZeroAbscissa,
    #[error("empty input")]
    EmptyInput,
    #[error("polynomial field modulus does not match the parameter mode")]
    ModeMismatch,
    #[error("share dealer {share} does not match commitment dealer {commits}")]
    DealerMismatch { share: u32, commits: u32 },
    #[error("recipient {0} is not a valid evaluation point")]
    InvalidRecipient(u32),
    #[error("operation is only defined in hardened mode")]
    WrongMode,
    #[error("forgery is impossible in hardened mode")]
    ForgeryImpossible,
    #[error("multiplier is congruent to 0 mod p; the forged share would equal the honest one in the field")]
    UselessMultiplier,
    #[error("need {need} shares, have {have}")]
    InsufficientShares { have: usize, need: usize },
    #[error("invalid scenario configuration: {0}")]
    ConfigInvalid(String),
    #[error("transcript: {0}")]
    Transcript(String),
}
