//! Command-line front end: curve inspection, code construction and
//! verification, parameter tables, channel simulation.
//!
//! Exit codes: 0 success, 2 invalid usage, 3 resource cap exceeded,
//! 4 verification completed with deviations.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use netrr::channel::{self, ChannelConfig};
use netrr::codefile::{CodeFile, RunManifest, DEFAULT_SEED};
use netrr::curve::{CurveModel, Family};
use netrr::error::Error;
use netrr::netcode::{
    self, Code, CodeSpec, DistanceMode, DlFamily, EnumerationMode, VerdictTable,
};

#[derive(Parser)]
#[command(name = "netrr", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Curve summary with point count and Hasse-Weil validation.
    CurveInfo {
        #[arg(long, value_enum)]
        family: CliFamily,
        #[arg(long)]
        q: u64,
    },
    /// Build, analyze or verify a code.
    Code {
        #[command(subcommand)]
        action: CodeAction,
    },
    /// Run the operator channel with minimum-distance decoding.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliFamily {
    P1,
    Hermitian,
    Suzuki,
    Ree,
}

impl CliFamily {
    fn constructible(self) -> Result<Family, Error> {
        match self {
            CliFamily::P1 => Ok(Family::P1),
            CliFamily::Hermitian => Ok(Family::Hermitian),
            CliFamily::Suzuki | CliFamily::Ree => Err(Error::UnsupportedCurve(
                "suzuki/ree are parameters-only families; use `code params`".into(),
            )),
        }
    }

    fn dl(self) -> DlFamily {
        match self {
            CliFamily::P1 => DlFamily::P1,
            CliFamily::Hermitian => DlFamily::Hermitian,
            CliFamily::Suzuki => DlFamily::Suzuki,
            CliFamily::Ree => DlFamily::Ree,
        }
    }
}

#[derive(Args)]
struct CodeParams {
    #[arg(long, value_enum)]
    family: CliFamily,
    /// Family parameter q (p1/hermitian).
    #[arg(long)]
    q: Option<u64>,
    /// Exponent m of the field size (suzuki: 2^{2m+1}, ree: 3^{2m+1}).
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    s: usize,
}

#[derive(Subcommand)]
enum CodeAction {
    /// Construct the code and write it as JSON.
    Build {
        #[command(flatten)]
        params: CodeParams,
        /// Sample this many subsets instead of exhaustive enumeration.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form parameters only; supports all four families.
    Params {
        #[command(flatten)]
        params: CodeParams,
    },
    /// Measured minimum distance.
    Mindist {
        #[command(flatten)]
        params: CodeParams,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: CliDistanceMode,
        /// Read a previously built code file instead of building in-process.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Compare measurement against the closed forms; exit 4 on deviations.
    Verify {
        #[command(flatten)]
        params: CodeParams,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CliDistanceMode {
    Exhaustive,
    Adjacent,
}

#[derive(Args)]
struct SimulateArgs {
    /// Code file produced by `code build`.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 0)]
    deletions: usize,
    #[arg(long, default_value_t = 0)]
    insertions: usize,
    #[arg(long, default_value_t = 1)]
    mixing: usize,
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: Option<u64>,
    /// Optional per-trial CSV log.
    #[arg(long)]
    log: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::SubsetCapExceeded { .. } | Error::FieldTooLarge { .. } => {
                    ExitCode::from(3)
                }
                _ => ExitCode::from(2),
            }
        }
    }
}

fn manifest(seed: u64, modulus: Vec<u64>) -> RunManifest {
    RunManifest::new(std::env::args().collect(), seed, modulus)
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Error> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn build_code(
    params: &CodeParams,
    sample: Option<usize>,
    seed: u64,
) -> Result<Code, Error> {
    let family = params.family.constructible()?;
    let q = params
        .q
        .ok_or_else(|| Error::InvalidInput("--q is required for this family".into()))?;
    let mode = match sample {
        None => EnumerationMode::Exhaustive,
        Some(count) => EnumerationMode::Sampled { count, seed },
    };
    Code::build(CodeSpec { family, q, k: params.k, s: params.s, mode })
}

fn load_or_build(
    input: &Option<PathBuf>,
    params: &CodeParams,
    sample: Option<usize>,
    seed: u64,
) -> Result<Code, Error> {
    match input {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let file: CodeFile = serde_json::from_str(&text)?;
            file.decode()
        }
        None => build_code(params, sample, seed),
    }
}

fn verdict_csv(table: &VerdictTable) -> String {
    let mut out = String::from("quantity,theory,measured,verdict,note\n");
    for r in &table.rows {
        let verdict = match r.verdict {
            netcode::Verdict::Pass => "pass",
            netcode::Verdict::Fail => "fail",
            netcode::Verdict::Deviation => "deviation",
        };
        out.push_str(&format!(
            "{},{},{},{},\"{}\"\n",
            r.quantity, r.theory, r.measured, verdict, r.note
        ));
    }
    out
}

#[derive(Serialize)]
struct SimulateSummary {
    manifest: RunManifest,
    config: ChannelConfig,
    trials: u64,
    successes: u64,
    failures: u64,
    ambiguous: u64,
    success_rate: f64,
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::CurveInfo { family, q } => {
            let curve = CurveModel::new(family.constructible()?, q)?;
            #[derive(Serialize)]
            struct CurveInfo {
                family: Family,
                q: u64,
                field: netrr::gf::FieldSpec,
                genus: u64,
                n: usize,
                hasse_weil: netrr::curve::HasseWeilReport,
                maximal: bool,
                note: &'static str,
            }
            let hw = curve.hasse_weil_check();
            print_json(&CurveInfo {
                family: curve.family(),
                q: curve.base_q(),
                field: curve.field().spec().clone(),
                genus: curve.genus(),
                n: curve.n_points(),
                maximal: hw.maximal,
                hasse_weil: hw,
                note: "upper bound used: 1 + q + 2g*sqrt(q)",
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Code { action } => run_code(action),
        Command::Simulate(args) => {
            let seed = args.seed.unwrap_or(DEFAULT_SEED);
            let text = std::fs::read_to_string(&args.input)?;
            let file: CodeFile = serde_json::from_str(&text)?;
            let code = file.decode()?;
            let l = code.theory.codeword_dim as usize;
            if args.deletions > l {
                return Err(Error::TooManyDeletions { sigma: args.deletions, dim: l });
            }
            let cfg = ChannelConfig {
                deletions: args.deletions,
                insertions: args.insertions,
                mixing: args.mixing,
                seed,
            };
            let report = channel::run_trials(&code, &cfg, args.trials)?;
            if let Some(log) = &args.log {
                let mut csv = String::from(
                    "trial,seed,transmitted,received_dim,inserted_rank,decoded,distance,tie,success\n",
                );
                for r in &report.records {
                    csv.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{}\n",
                        r.trial,
                        r.seed,
                        join_indices(&r.transmitted),
                        r.received_dim,
                        r.inserted_rank,
                        join_indices(&r.decoded),
                        r.distance,
                        r.tie,
                        r.success
                    ));
                }
                std::fs::write(log, csv)?;
            }
            let modulus = code.ambient.curve().field().spec().modulus.clone();
            print_json(&SimulateSummary {
                manifest: manifest(seed, modulus),
                config: cfg,
                trials: report.trials,
                successes: report.successes,
                failures: report.failures,
                ambiguous: report.ambiguous,
                success_rate: report.success_rate,
            })?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn join_indices(v: &[usize]) -> String {
    v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(";")
}

fn run_code(action: CodeAction) -> Result<ExitCode, Error> {
    match action {
        CodeAction::Build { params, sample, seed, out } => {
            let seed = seed.unwrap_or(DEFAULT_SEED);
            let code = build_code(&params, sample, seed)?;
            let modulus = code.ambient.curve().field().spec().modulus.clone();
            let file = CodeFile::encode(&code, manifest(seed, modulus));
            match out {
                Some(path) => {
                    std::fs::write(&path, serde_json::to_string_pretty(&file)?)?
                }
                None => print_json(&file)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        CodeAction::Params { params } => {
            let param = match params.family {
                CliFamily::Suzuki | CliFamily::Ree => params
                    .m
                    .ok_or_else(|| Error::InvalidInput("--m is required for suzuki/ree".into()))?,
                _ => params
                    .q
                    .ok_or_else(|| Error::InvalidInput("--q is required for this family".into()))?,
            };
            let row =
                netcode::dl_param_table(params.family.dl(), param, params.k, params.s as u64)?;
            print_json(&row)?;
            Ok(ExitCode::SUCCESS)
        }
        CodeAction::Mindist { params, mode, input, sample, seed } => {
            let seed = seed.unwrap_or(DEFAULT_SEED);
            let code = load_or_build(&input, &params, sample, seed)?;
            let mode = match mode {
                CliDistanceMode::Exhaustive => DistanceMode::Exhaustive,
                CliDistanceMode::Adjacent => DistanceMode::Adjacent,
            };
            let md = code.min_distance(mode)?;
            print_json(&md)?;
            Ok(ExitCode::SUCCESS)
        }
        CodeAction::Verify { params, input } => {
            let code = load_or_build(&input, &params, None, DEFAULT_SEED)?;
            let table = netcode::verify(&code)?;
            print!("{}", verdict_csv(&table));
            if table.all_pass {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(4))
            }
        }
    }
}
