//! Canonical JSON transcripts and their audit.
//!
//! A transcript is the [`ScenarioReport`] rendered as pretty-printed JSON with
//! keys sorted at every level, big integers as decimal strings, no
//! timestamps, and a trailing newline. Because a run is a pure function of
//! its config, a transcript is accepted only if it re-checks entry by entry
//! against the library AND equals, byte for byte, the transcript regenerated
//! from its own config.

use num_traits::One;

use crate::numtheory::mod_exp;
use crate::protocol::{
    assemble_group_key, collect_dealer_secrets, run_reconstructions, run_scenario, run_verification_round,
    DealerSecret, PartyId, ScenarioReport, TRANSCRIPT_VERSION,
};
use crate::vss::{aggregate_public_key, project_commitment_bits, PROJECTION_EXPONENT_BITS};
use crate::{Error, Natural, Result};

pub fn to_canonical_json(report: &ScenarioReport) -> Result<String> {
    // serde_json's Value map is ordered by key, which sorts every object
    let value = serde_json::to_value(report).map_err(|e| Error::Transcript(e.to_string()))?;
    let mut text = serde_json::to_string_pretty(&value).map_err(|e| Error::Transcript(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

pub fn parse(text: &str) -> Result<ScenarioReport> {
    serde_json::from_str(text).map_err(|e| Error::Transcript(e.to_string()))
}

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Transcript(msg.into()))
}

/// Re-derives every recorded verification, reconstruction and verdict from
/// the recorded public data.
pub fn audit(report: &ScenarioReport) -> Result<()> {
    if report.version != TRANSCRIPT_VERSION {
        return fail(format!("unsupported version `{}`", report.version));
    }
    let cfg = &report.config;
    let params = &report.params;
    cfg.validate(params)?;
    if &cfg.params.resolve(cfg.seed)? != params {
        return fail("params differ from the ones the config names");
    }
    let n = cfg.n as usize;
    let t = cfg.t as usize;

    for (i, cv) in report.commitments.iter().enumerate() {
        if cv.dealer != PartyId(i as u32 + 1) || cv.c.len() != t {
            return fail(format!("commitment vector {} malformed", i + 1));
        }
    }
    if report.commitments.len() != n {
        return fail("one commitment vector per dealer expected");
    }
    let order_ok = report.shares.len() == n * n
        && report.shares.iter().enumerate().all(|(idx, s)| {
            s.dealer == PartyId((idx / n) as u32 + 1) && s.recipient == PartyId((idx % n) as u32 + 1)
        });
    if !order_ok {
        return fail("share messages are not in canonical (dealer, recipient) order");
    }

    let matrix = run_verification_round(&report.shares, &report.commitments, params)?;
    if matrix != report.verification {
        return fail("verification matrix does not match the shares");
    }
    if aggregate_public_key(&report.commitments, params)? != report.aggregate_public_key {
        return fail("aggregate public key mismatch");
    }
    let recon = run_reconstructions(cfg, &report.shares, &report.commitments, &matrix, params)?;
    if recon != report.reconstructions {
        return fail("reconstruction attempts do not match the shares");
    }

    for (entry, cv) in report.dealer_secrets.iter().zip(&report.commitments) {
        if let DealerSecret::Disclosed { value } = &entry.secret {
            if mod_exp(params.g(), value, params.p())? != cv.c[0] {
                return fail(format!("disclosed secret of dealer {} misses its commitment", entry.dealer));
            }
        }
    }
    let disclosed = |d: PartyId| {
        report
            .dealer_secrets
            .get(d.0 as usize - 1)
            .and_then(|e| match &e.secret {
                DealerSecret::Disclosed { value } => Some(value.clone()),
                _ => None,
            })
    };
    let secrets = collect_dealer_secrets(cfg, disclosed, &report.commitments, &recon, params)?;
    if secrets != report.dealer_secrets {
        return fail("dealer secrets do not follow from disclosures and reconstructions");
    }
    let assembly = assemble_group_key(&secrets, &report.commitments, &matrix, params)?;
    if assembly.group_key != report.group_key {
        return fail("group key mismatch");
    }
    if assembly.verdict != report.verdict {
        return fail(format!("verdict {:?} recorded, {:?} derived", report.verdict, assembly.verdict));
    }

    if report.integer_commitments.len() != n {
        return fail("one integer-commitment entry per dealer expected");
    }
    let projection_exponent = (Natural::one() << PROJECTION_EXPONENT_BITS) - 1u8;
    for (entry, cv) in report.integer_commitments.iter().zip(&report.commitments) {
        let Some(size) = &entry.report else { continue };
        if &size.base != params.g() || size.rows.len() != t {
            return fail(format!("integer commitments of dealer {} malformed", entry.dealer));
        }
        if size.projection != project_commitment_bits(params.g(), &projection_exponent)? {
            return fail("size projection mismatch");
        }
        for (row, c) in size.rows.iter().zip(&cv.c) {
            if &mod_exp(params.g(), &row.exponent, params.p())? != c {
                return fail(format!("integer commitment exponent of dealer {} misses c_j", entry.dealer));
            }
            let exponent = u32::try_from(&row.exponent).map_err(|_| Error::TooLarge("integer commitment"))?;
            if exponent > crate::vss::INTEGER_COMMITMENT_GUARD_BITS as u32
                || num_traits::pow(params.g().clone(), exponent as usize).bits() != row.bits
            {
                return fail(format!("integer commitment size of dealer {} wrong", entry.dealer));
            }
        }
    }
    Ok(())
}

/// Parses, audits and regenerates a transcript; returns the parsed report.
pub fn verify_transcript(text: &str) -> Result<ScenarioReport> {
    let report = parse(text)?;
    audit(&report)?;
    let regenerated = to_canonical_json(&run_scenario(&report.config)?)?;
    if regenerated != text {
        return fail("transcript differs from the one its config regenerates");
    }
    Ok(report)
}
