//! Command implementations behind the `vss-lab` binary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_traits::One;

use crate::numtheory::{gen_params, Mode};
use crate::poly::SecretPolynomial;
use crate::protocol::{run_scenario, ParamsRef, PartyId, ScenarioConfig, ScenarioName, ScenarioReport, Verdict};
use crate::registry::registry;
use crate::rng::{substream, PARAMS_STREAM};
use crate::transcript::{to_canonical_json, verify_transcript};
use crate::vss::{commit_integer, project_commitment_bits, SizeProjection, PROJECTION_EXPONENT_BITS};
use crate::{Error, Natural, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_KEY_BLOCKED: i32 = 2;

/// Largest exponent bit length the demo executes.
pub const DEMO_MAX_BITS: u32 = 20;

#[derive(Debug, Clone)]
pub struct RunInvocation {
    pub scenario: ScenarioName,
    pub n: u32,
    pub t: u32,
    /// Registry set; `None` with `bits` unset means the scenario default.
    pub params: Option<String>,
    /// Generate parameters of this size from the seed instead.
    pub bits: Option<u32>,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl RunInvocation {
    pub fn config(&self) -> Result<ScenarioConfig> {
        let params = match (&self.params, self.bits) {
            (Some(_), Some(_)) => return Err(Error::ConfigInvalid("--params and --bits are exclusive".into())),
            (Some(name), None) => ParamsRef::named(name),
            (None, Some(bits)) => ParamsRef::Generated { bits, mode: self.scenario.mode() },
            (None, None) => ParamsRef::named(self.scenario.default_params()),
        };
        Ok(ScenarioConfig::preset(self.scenario, self.n, self.t, params, self.seed))
    }
}

pub fn exit_code(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::KeyAssembled => EXIT_OK,
        Verdict::KeyBlocked | Verdict::ForgeryDetected | Verdict::ForgeryUndetectedButCorrupting => EXIT_KEY_BLOCKED,
    }
}

/// Runs a scenario, writes its transcript (to `out`, or returns it for
/// stdout) and reports the verdict.
pub fn cmd_run(inv: &RunInvocation) -> Result<(ScenarioReport, String)> {
    let report = run_scenario(&inv.config()?)?;
    let text = to_canonical_json(&report)?;
    if let Some(path) = &inv.out {
        std::fs::write(path, &text).map_err(|e| Error::Transcript(format!("{}: {e}", path.display())))?;
    }
    Ok((report, text))
}

pub fn cmd_verify_transcript(path: &Path) -> Result<ScenarioReport> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Transcript(format!("{}: {e}", path.display())))?;
    verify_transcript(&text)
}

fn fmt_bits(n: &Natural) -> String {
    if n.count_ones() == 1 && n.bits() > 64 {
        format!("2^{}", n.bits() - 1)
    } else {
        n.to_string()
    }
}

fn fmt_projection(p: &SizeProjection) -> String {
    if p.exact {
        fmt_bits(&p.bits_lower)
    } else {
        format!("{}..{}", fmt_bits(&p.bits_lower), fmt_bits(&p.bits_upper))
    }
}

/// Table of unreduced commitments `g^a` for exponents of up to `bit_length`
/// bits, followed by the projected row for a 1024-bit exponent.
pub fn cmd_demo_integer_commitments(bit_length: u32, g: &Natural) -> Result<String> {
    if !(1..=DEMO_MAX_BITS).contains(&bit_length) {
        return Err(Error::ConfigInvalid(format!("--bits must lie in 1..={DEMO_MAX_BITS}")));
    }
    let exponents: Vec<Natural> = std::iter::once(Natural::from(0u8))
        .chain((0..bit_length).map(|b| Natural::one() << b))
        .collect();
    let bound = exponents.last().expect("nonempty") + 1u8;
    let poly = SecretPolynomial::new(PartyId(1), exponents, bound)?;
    let mut out = String::new();
    writeln!(out, "integer commitments g^a without modular reduction, g = {g}").unwrap();
    writeln!(out, "{:>12}  {:>8}  {:>16}  status", "exponent a", "bits(a)", "bits(g^a)").unwrap();
    match commit_integer(&poly, g) {
        Ok((_, report)) => {
            for row in &report.rows {
                writeln!(out, "{:>12}  {:>8}  {:>16}  executed", row.exponent, row.exponent.bits(), row.bits).unwrap();
            }
        }
        Err(Error::TooLarge(_)) => {
            for a in poly.coeffs() {
                let proj = project_commitment_bits(g, a)?;
                writeln!(out, "{:>12}  {:>8}  {:>16}  over size guard (projected)", a, a.bits(), fmt_projection(&proj))
                    .unwrap();
            }
        }
        Err(e) => return Err(e),
    }
    let exponent = (Natural::one() << PROJECTION_EXPONENT_BITS) - 1u8;
    let proj = project_commitment_bits(g, &exponent)?;
    let status = if proj.infeasible { "INFEASIBLE (projected, not computed)" } else { "projected" };
    writeln!(
        out,
        "{:>12}  {:>8}  {:>16}  {status}",
        format!("2^{PROJECTION_EXPONENT_BITS}-1"),
        PROJECTION_EXPONENT_BITS,
        fmt_projection(&proj)
    )
    .unwrap();
    Ok(out)
}

/// Lists registry sets, or generates a fresh set from a seed.
pub fn cmd_params(generate: Option<(u32, Mode, u64)>) -> Result<String> {
    let mut out = String::new();
    match generate {
        Some((bits, mode, seed)) => {
            let gp = gen_params(bits, mode, &mut substream(seed, PARAMS_STREAM))?;
            writeln!(out, "mode = \"{mode}\"\nbits = {bits}\nseed = {seed}\np = \"{}\"\ng = \"{}\"", gp.p(), gp.g())
                .unwrap();
            if let Some(q) = gp.subgroup_order() {
                writeln!(out, "q = \"{q}\"").unwrap();
            }
        }
        None => {
            let reg = registry();
            for name in reg.names() {
                let gp = reg.get(name)?;
                writeln!(out, "{name:<8} {:<10} p={} g={} ord(g)={}", gp.mode(), gp.p(), gp.g(), gp.order()).unwrap();
            }
        }
    }
    Ok(out)
}
