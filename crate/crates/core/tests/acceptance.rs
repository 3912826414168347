//! Acceptance suite. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion does. Run with `--nocapture` to see the lines.

use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand_core::RngCore;

use vss_lab::attack::{forge_share, ForgeryStrategy};
use vss_lab::numtheory::{mod_exp, GroupParams, Mode};
use vss_lab::poly::{lagrange_zero, sample_polynomial, SecretPolynomial};
use vss_lab::protocol::{reconstruct_dealer_secret, run_scenario, ParamsRef, ScenarioConfig, ScenarioName};
use vss_lab::registry::lookup;
use vss_lab::rng::{random_below, random_range, seeded, substream};
use vss_lab::transcript::{to_canonical_json, verify_transcript};
use vss_lab::vss::{
    commit, commit_integer, range_check, verify_share, CommitmentVector, Share, PROJECTION_EXPONENT_BITS,
};
use vss_lab::{Error, Natural, PartyId, Verdict};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn n(v: u64) -> Natural {
    Natural::from(v)
}

fn subsets(size: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << size)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..size).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

fn within(limit: Duration, start: Instant) -> Outcome {
    let took = start.elapsed();
    ensure!(took < limit, "took {took:?}, limit {limit:?}");
    Ok(())
}

/// AC1: the p = 11 worked example, exact values, under a second.
fn worked_example() -> Outcome {
    let start = Instant::now();
    let params = GroupParams::new(n(11), n(2), Mode::Vulnerable, None).map_err(|e| e.to_string())?;
    let poly = SecretPolynomial::new(PartyId(1), vec![n(3), n(4)], n(11)).unwrap();
    let cv = commit(&poly, &params).unwrap();
    ensure!(cv.c == vec![n(8), n(5)], "commitments {:?}", cv.c);

    let honest = Share::honest(PartyId(1), PartyId(2), poly.eval_integer(&n(2)));
    ensure!(honest.value == n(11), "honest share {}", honest.value);
    ensure!(verify_share(&honest, &cv, &params).unwrap(), "honest share rejected");

    let forged = forge_share(&poly, PartyId(2), &params, &ForgeryStrategy::canonical()).unwrap();
    ensure!(forged.value == n(21), "forged share {}", forged.value);
    ensure!(verify_share(&forged, &cv, &params).unwrap(), "forged share rejected");

    let recovered = lagrange_zero(&[(n(1), n(7)), (n(2), &forged.value % 11u8)], &n(11)).unwrap();
    ensure!(recovered == n(4), "reconstruction {recovered}");
    ensure!(recovered != *poly.secret(), "reconstruction equals the secret");

    let g_rec = mod_exp(&n(2), &recovered, &n(11)).unwrap();
    ensure!(g_rec == n(5) && g_rec != cv.c[0], "commitment check value {g_rec}");
    let shares = [Share::honest(PartyId(1), PartyId(1), n(7)), forged];
    let r = reconstruct_dealer_secret(&shares, &cv, &params, 2).unwrap();
    ensure!(r.value == n(4) && !r.commitment_check, "reconstruct_dealer_secret {r:?}");
    within(Duration::from_secs(1), start)
}

/// AC2: 200 honest runs, n = 5, t = 3, 32-bit vulnerable params.
fn honest_pipeline() -> Outcome {
    let start = Instant::now();
    let params = lookup("gen32").unwrap();
    ensure!(params.mode() == Mode::Vulnerable && params.p().bits() == 32, "gen32 is not a 32-bit vulnerable set");
    for seed in 0..200u64 {
        let cfg = ScenarioConfig::preset(ScenarioName::Honest, 5, 3, ParamsRef::named("gen32"), seed);
        let report = run_scenario(&cfg).map_err(|e| e.to_string())?;
        ensure!(report.verification.iter().flatten().all(|&ok| ok), "seed {seed}: verification failure");
        let mut public = Natural::one();
        for dealer in 1..=5u32 {
            // regenerate the dealer's polynomial independently of the report
            let poly = sample_polynomial(3, params.p(), PartyId(dealer), &mut substream(seed, dealer.into())).unwrap();
            let recon = &report.reconstructions[dealer as usize - 1];
            ensure!(recon.attempts.len() == 10, "seed {seed}: {} subsets", recon.attempts.len());
            for attempt in &recon.attempts {
                ensure!(
                    &attempt.result.value == poly.secret() && attempt.result.commitment_check,
                    "seed {seed} dealer {dealer}: subset {:?} gave {}",
                    attempt.subset,
                    attempt.result.value
                );
            }
            public = public * mod_exp(params.g(), poly.secret(), params.p()).unwrap() % params.p();
        }
        ensure!(report.verdict == Verdict::KeyAssembled, "seed {seed}: {:?}", report.verdict);
        let x = report.group_key.as_ref().ok_or("no group key")?;
        ensure!(mod_exp(params.g(), x, params.p()).unwrap() == public, "seed {seed}: g^x != prod c_i0");
        ensure!(public == report.aggregate_public_key, "seed {seed}: aggregate key mismatch");
    }
    within(Duration::from_secs(10), start)
}

fn congruence_holds(
    poly: &SecretPolynomial,
    cv: &CommitmentVector,
    params: &GroupParams,
    k: u32,
    v: &Natural,
) -> Outcome {
    let d = params.order();
    let share = Share::honest(poly.dealer(), PartyId(k), v.clone());
    let accepted = verify_share(&share, cv, params).unwrap();
    let congruent = v % d == poly.eval_integer(&n(k.into())) % d;
    ensure!(accepted == congruent, "p={} k={k} v={v}: accepted={accepted} congruent={congruent}", params.p());
    Ok(())
}

/// AC3: acceptance iff the candidate is congruent to P(k) mod ord(g).
fn verification_congruence() -> Outcome {
    let small = lookup("small11").unwrap();
    let mut rng = seeded(3);
    let mut polys: Vec<SecretPolynomial> = Vec::new();
    for a0 in 0..11u64 {
        for a1 in 0..11u64 {
            polys.push(SecretPolynomial::new(PartyId(1), vec![n(a0), n(a1)], n(11)).unwrap());
        }
    }
    for t in [1usize, 3, 4] {
        for _ in 0..20 {
            polys.push(sample_polynomial(t, &n(11), PartyId(1), &mut rng).unwrap());
        }
    }
    for poly in &polys {
        let cv = commit(poly, &small).unwrap();
        for k in 1..=10u32 {
            for v in 0..50u64 {
                congruence_holds(poly, &cv, &small, k, &n(v))?;
            }
        }
    }

    // 64-bit: a primitive-root set and a set where ord(g) = q < p - 1
    let gen64h = lookup("gen64h").unwrap();
    let sets = [
        lookup("gen64").unwrap(),
        GroupParams::new(gen64h.p().clone(), gen64h.g().clone(), Mode::Vulnerable, None).unwrap(),
    ];
    let mut rng = seeded(64);
    for case in 0..1000usize {
        let params = &sets[case % 2];
        let t = 1 + (rng.next_u32() % 4) as usize;
        let poly = sample_polynomial(t, params.p(), PartyId(1), &mut rng).unwrap();
        let cv = commit(&poly, params).unwrap();
        let k = 1 + rng.next_u32() % 1000;
        let honest = poly.eval_integer(&n(k.into()));
        let v = match case % 4 {
            // honest, congruent shift, off-by-one shift, arbitrary value
            0 | 1 => honest.clone(),
            2 => &honest + random_below(&mut rng, &n(1 << 20)) * params.order(),
            _ => &honest + random_range(&mut rng, &n(1), params.order()),
        };
        congruence_holds(&poly, &cv, params, k, &v)?;
        let arbitrary = random_below(&mut rng, &(params.p() * params.p()));
        congruence_holds(&poly, &cv, params, k, &arbitrary)?;
    }
    Ok(())
}

/// AC4: fully forged subsets reconstruct a_0 - m (mod p).
fn uniform_forgery() -> Outcome {
    let mut rng = seeded(4);
    for name in ["small11", "gen32", "gen64"] {
        let params = lookup(name).unwrap();
        let p = params.p();
        for parties in 2..=7u32 {
            for t in 1..=parties as usize {
                let poly = sample_polynomial(t, p, PartyId(1), &mut rng).unwrap();
                let m = loop {
                    let m = random_range(&mut rng, &n(1), &n(50));
                    if !(&m % p).is_zero() {
                        break m;
                    }
                };
                let strategy = ForgeryStrategy { kind: vss_lab::ForgeryKind::AddPMinusOne, multiplier: m.clone() };
                let forged: Vec<Share> = (1..=parties)
                    .map(|k| forge_share(&poly, PartyId(k), &params, &strategy).unwrap())
                    .collect();
                let expected = (poly.secret() + p - (&m % p)) % p;
                for subset in subsets(parties as usize, t) {
                    let points: Vec<(Natural, Natural)> = subset
                        .iter()
                        .map(|&i| (forged[i].recipient.abscissa(), &forged[i].value % p))
                        .collect();
                    let got = lagrange_zero(&points, p).unwrap();
                    ensure!(got == expected, "{name} n={parties} t={t} {subset:?}: {got} != {expected}");
                }
            }
        }
    }
    Ok(())
}

/// AC5: no share other than the honest one survives range check and verification.
fn hardened_impossibility() -> Outcome {
    let params = lookup("p23q11").unwrap();
    ensure!(params.p() == &n(23) && params.g() == &n(2), "p23q11 drifted");
    for a0 in 0..11u64 {
        for a1 in 0..11u64 {
            let poly = SecretPolynomial::new(PartyId(1), vec![n(a0), n(a1)], n(11)).unwrap();
            let cv = commit(&poly, &params).unwrap();
            for k in 1..=5u32 {
                let honest = poly.eval_mod(&n(k.into()), &n(11)).unwrap();
                for v in 0..11u64 {
                    let share = Share::honest(PartyId(1), PartyId(k), n(v));
                    let accepted = range_check(&share, &params).unwrap() && verify_share(&share, &cv, &params).unwrap();
                    ensure!(!accepted || n(v) == honest, "accepted forgery v={v} k={k} poly=({a0},{a1})");
                    ensure!(!(n(v) == honest) || accepted, "honest share rejected v={v} k={k}");
                }
                let attempt = forge_share(&poly, PartyId(k), &params, &ForgeryStrategy::canonical());
                ensure!(attempt == Err(Error::ForgeryImpossible), "forge_share returned {attempt:?}");
            }
        }
    }
    Ok(())
}

/// AC6: executed integer commitments have bitlen(2^a) = a + 1 for a <= 2^16;
/// the 1024-bit row is projected only and flagged infeasible.
fn mitigation_demo() -> Outcome {
    let limit = 1u64 << 16;
    let exponents: Vec<u64> = (0..=limit).collect();
    for chunk in exponents.chunks(512) {
        let coeffs: Vec<Natural> = chunk.iter().map(|&a| n(a)).collect();
        let poly = SecretPolynomial::new(PartyId(1), coeffs, n(limit + 1)).unwrap();
        let (commitments, report) = commit_integer(&poly, &n(2)).map_err(|e| e.to_string())?;
        for ((&a, c), row) in chunk.iter().zip(&commitments).zip(&report.rows) {
            ensure!(c.bits() == a + 1 && row.bits == a + 1, "bitlen(2^{a}) = {}", c.bits());
            ensure!(c.count_ones() == 1, "2^{a} is not a power of two");
        }
        let proj = &report.projection;
        ensure!(proj.exact && proj.infeasible, "projection not exact+infeasible");
        ensure!(proj.exponent.bits() == u64::from(PROJECTION_EXPONENT_BITS), "projection exponent size");
        ensure!(proj.bits_lower == Natural::one() << 1024u32, "projected bits {}", proj.bits_lower);
    }
    let too_big = SecretPolynomial::new(PartyId(1), vec![Natural::one() << 20u32], Natural::one() << 21u32).unwrap();
    ensure!(commit_integer(&too_big, &n(2)).is_err(), "guard did not refuse a 2^20 exponent");
    Ok(())
}

/// AC7: identical invocations give identical transcripts; verification
/// accepts them and rejects every single-digit tamper.
fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_vss-lab");
    let mut files = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("run{i}.json"));
        let status = Command::new(bin)
            .args(["run", "--scenario", "false-share", "--params", "small11", "--seed", "7", "--out"])
            .arg(&path)
            .status()
            .map_err(|e| e.to_string())?;
        ensure!(status.code() == Some(2), "run exit {:?}", status.code());
        files.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    ensure!(files[0] == files[1], "transcripts differ");
    let status = Command::new(bin)
        .arg("verify-transcript")
        .arg(dir.path().join("run0.json"))
        .status()
        .map_err(|e| e.to_string())?;
    ensure!(status.success(), "verify-transcript rejected an untampered file");

    for (name, params) in [("false-share", "small11"), ("hardened-attack", "p23q11"), ("honest", "gen32")] {
        let cfg = ScenarioConfig::preset(name.parse().unwrap(), 5, 3, ParamsRef::named(params), 7);
        let text = to_canonical_json(&run_scenario(&cfg).unwrap()).unwrap();
        ensure!(verify_transcript(&text).is_ok(), "{name}: untampered rejected");
        let bytes = text.as_bytes();
        let mut tampered = 0usize;
        for (i, b) in bytes.iter().enumerate() {
            if !b.is_ascii_digit() {
                continue;
            }
            let mut copy = bytes.to_vec();
            copy[i] = b'0' + (b - b'0' + 1) % 10;
            let copy = String::from_utf8(copy).unwrap();
            ensure!(verify_transcript(&copy).is_err(), "{name}: tamper at byte {i} accepted");
            tampered += 1;
        }
        ensure!(tampered > 100, "{name}: only {tampered} digit positions");
        let flipped = text.replacen("\"verdict\": \"Key", "\"verdict\": \"Kez", 1);
        ensure!(verify_transcript(&flipped).is_err(), "{name}: verdict tamper accepted");
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 7] = [
        ("AC1 canonical worked example (p=11)", worked_example),
        ("AC2 honest pipeline, 200 runs, 32-bit", honest_pipeline),
        ("AC3 verification-congruence law", verification_congruence),
        ("AC4 uniform-forgery law", uniform_forgery),
        ("AC5 hardened impossibility (p=23, q=11)", hardened_impossibility),
        ("AC6 integer-commitment size demo", mitigation_demo),
        ("AC7 deterministic, auditable transcripts", determinism),
    ];
    let mut failures = 0;
    for (name, criterion) in criteria {
        let start = Instant::now();
        match criterion() {
            Ok(()) => println!("PASS  {name}  ({:.2?})", start.elapsed()),
            Err(why) => {
                failures += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
