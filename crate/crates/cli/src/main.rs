use std::process::ExitCode;

use boussinesq_core::verify::{self, DEFAULT_SAMPLES};
use boussinesq_core::{Engine, Error, EtaMultiset, Label, LinComb, Mutation, Rules, UState};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Exact reduction of genus-3 one-point 3-spin intersection numbers to
/// genus-0 correlators.
#[derive(Debug, Parser)]
#[command(name = "boussinesq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduce U(g, n+dn, m, k+dp, l | etas) to canonical genus-0 correlators.
    Reduce {
        #[arg(long)]
        genus: u32,
        #[arg(long, allow_negative_numbers = true)]
        dn: i64,
        #[arg(long, value_parser = parse_label)]
        m: Label,
        #[arg(long, allow_negative_numbers = true)]
        dp: i64,
        /// Comma-separated `m:a` list, e.g. "0:1,0:1". Order is irrelevant.
        #[arg(long, default_value = "", value_parser = parse_etas)]
        etas: EtaMultiset,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Assemble 3!<tau_{n,m} tau_{0,1}^k tau_{0,0}^l>_3 from the three genus-3 U-numbers.
    Theorem1 {
        #[arg(long, value_parser = parse_label)]
        m: Label,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the published constants, the concrete oracle and the structural properties.
    Verify {
        /// Comma-separated concrete values of k for the oracle comparison.
        #[arg(long, value_parser = parse_samples)]
        interp_samples: Option<Samples>,
        /// Run with a deliberately broken rule.
        #[arg(long, value_parser = parse_mutation)]
        mutate: Option<Mutation>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone)]
struct Samples(Vec<u64>);

#[derive(Serialize)]
struct ReduceOutput<'a> {
    state: &'a UState,
    value: &'a LinComb,
}

#[derive(Serialize)]
struct Theorem1Output<'a> {
    m: Label,
    theorem1: &'a LinComb,
    genus3: &'a LinComb,
}

fn to_json(v: &impl Serialize) -> String {
    serde_json::to_string(v).expect("output is plain data")
}

fn parse_label(s: &str) -> Result<Label, String> {
    let v: i64 = s.parse().map_err(|_| format!("`{s}` is not an integer"))?;
    Label::try_from(v).map_err(|e| e.to_string())
}

fn parse_etas(s: &str) -> Result<EtaMultiset, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_samples(s: &str) -> Result<Samples, String> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| format!("`{x}` is not a nonnegative integer"))
        })
        .collect::<Result<_, _>>()
        .map(Samples)
}

fn parse_mutation(s: &str) -> Result<Mutation, String> {
    s.parse().map_err(|_| {
        let names: Vec<_> = Mutation::ALL.iter().map(|m| m.name()).collect();
        format!(
            "unknown mutation `{s}` (expected one of {})",
            names.join(", ")
        )
    })
}

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn fail(err: &Error) -> ExitCode {
    eprintln!("{err}");
    let code = match err {
        Error::InsufficientSamples { .. } | Error::DuplicateSample(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    };
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Reduce {
            genus,
            dn,
            m,
            dp,
            etas,
            format,
        } => {
            let state = UState::new(genus, dn, m, dp, etas);
            let value = match Engine::new().reduce(&state) {
                Ok(v) => v,
                Err(e) => return fail(&e),
            };
            match format {
                Format::Text => println!("{value}"),
                Format::Json => println!(
                    "{}",
                    to_json(&ReduceOutput {
                        state: &state,
                        value: &value
                    })
                ),
            }
            ExitCode::SUCCESS
        }
        Command::Theorem1 { m, format } => {
            let mut engine = Engine::new();
            let (assembled, genus3) = match engine
                .theorem1(m)
                .and_then(|a| Ok((a, engine.genus3_correlator(m)?)))
            {
                Ok(v) => v,
                Err(e) => return fail(&e),
            };
            match format {
                Format::Text => {
                    println!("{assembled}");
                    println!("⟨τ⟩₃ = {genus3}");
                }
                Format::Json => println!(
                    "{}",
                    to_json(&Theorem1Output {
                        m,
                        theorem1: &assembled,
                        genus3: &genus3,
                    })
                ),
            }
            ExitCode::SUCCESS
        }
        Command::Verify {
            interp_samples,
            mutate,
            format,
        } => {
            let samples = interp_samples.map_or_else(|| DEFAULT_SAMPLES.to_vec(), |s| s.0);
            let rules = mutate.map_or_else(Rules::default, Rules::mutated);
            let report = match verify::run(rules, &samples) {
                Ok(r) => r,
                Err(e) => return fail(&e),
            };
            match format {
                Format::Text => println!("{report}"),
                Format::Json => println!("{}", report.to_json()),
            }
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILURE)
            }
        }
    }
}
