use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use vss_lab::cli::{self, RunInvocation, EXIT_ERROR, EXIT_OK};
use vss_lab::natural::parse_decimal;
use vss_lab::{Mode, ScenarioName};

#[derive(Parser)]
#[command(name = "vss-lab", version, about = "False-share forgery lab for Feldman VSS")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scenario {
    Honest,
    FalseShare,
    OrderShift,
    Withhold,
    HardenedAttack,
}

impl From<Scenario> for ScenarioName {
    fn from(s: Scenario) -> Self {
        match s {
            Scenario::Honest => ScenarioName::Honest,
            Scenario::FalseShare => ScenarioName::FalseShare,
            Scenario::OrderShift => ScenarioName::OrderShift,
            Scenario::Withhold => ScenarioName::Withhold,
            Scenario::HardenedAttack => ScenarioName::HardenedAttack,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Vulnerable,
    Hardened,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write its canonical JSON transcript.
    Run {
        #[arg(long, value_enum)]
        scenario: Scenario,
        #[arg(long, default_value_t = 5)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        t: u32,
        /// Registry parameter set (default depends on the scenario).
        #[arg(long, conflicts_with = "bits")]
        params: Option<String>,
        /// Generate parameters of this many bits from the seed.
        #[arg(long)]
        bits: Option<u32>,
        #[arg(long)]
        seed: u64,
        /// Transcript path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print unreduced integer commitment sizes and the 1024-bit projection.
    DemoIntegerCommitments {
        #[arg(long, default_value_t = 8)]
        bits: u32,
        #[arg(long, default_value = "2")]
        g: String,
    },
    /// Re-check a transcript against the library.
    VerifyTranscript { path: PathBuf },
    /// List registry parameter sets, or generate one.
    Params {
        #[arg(long, requires_all = ["bits", "seed"])]
        generate: bool,
        #[arg(long)]
        bits: Option<u32>,
        #[arg(long, value_enum, default_value = "vulnerable")]
        mode: ModeArg,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn run(command: Command) -> vss_lab::Result<i32> {
    match command {
        Command::Run { scenario, n, t, params, bits, seed, out } => {
            let inv = RunInvocation { scenario: scenario.into(), n, t, params, bits, seed, out };
            let (report, text) = cli::cmd_run(&inv)?;
            if inv.out.is_none() {
                print!("{text}");
            }
            eprintln!("verdict: {:?}", report.verdict);
            Ok(cli::exit_code(report.verdict))
        }
        Command::DemoIntegerCommitments { bits, g } => {
            print!("{}", cli::cmd_demo_integer_commitments(bits, &parse_decimal(&g)?)?);
            Ok(EXIT_OK)
        }
        Command::VerifyTranscript { path } => {
            let report = cli::cmd_verify_transcript(&path)?;
            println!("ok: {} scenario, verdict {:?}", report.config.scenario, report.verdict);
            Ok(EXIT_OK)
        }
        Command::Params { generate, bits, mode, seed } => {
            let mode = match mode {
                ModeArg::Vulnerable => Mode::Vulnerable,
                ModeArg::Hardened => Mode::Hardened,
            };
            let spec = generate.then(|| (bits.unwrap_or_default(), mode, seed.unwrap_or_default()));
            print!("{}", cli::cmd_params(spec)?);
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(parsed.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    };
    ExitCode::from(code as u8)
}
