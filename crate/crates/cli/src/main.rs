//! `iqs`: check, build, extract and search finite quantum-state structures
//! from the command line.
//!
//! Exit status is 0 on success, 1 when the input was valid but the answer
//! is negative (an axiom fails, no gauge fits, nothing was found), and 2 on
//! malformed input. Every file argument accepts `-` for standard input or
//! output.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use iqs_core::axiom::{parse_list, Axiom, CheckConfig, Family};
use iqs_core::bridge::{
    compare_up_to_gauge, extract_amplitude, extract_phase, reconstruct, snap, BridgeError, ExtractionConfig,
    WaveFunctionGrid,
};
use iqs_core::checker::{all_pass, check_amplitude, check_phase, CheckError};
use iqs_core::rational::{self, Rational};
use iqs_core::represent::{build_amplitude_rep, build_amplitude_rep_with_unit, build_phase_rep, BuildError};
use iqs_core::search::{find_separating_model, generate_clock, generate_integer_amplitude, SearchBudget, SearchOutcome};
use iqs_core::{RegionId, Structure};

#[derive(Parser)]
#[command(name = "iqs", version, about = "Finite relational models of quantum-state amplitude and phase")]
struct Cli {
    /// Worker threads for parallel checks and searches.
    #[arg(long, global = true, env = "IQS_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Amplitude,
    Phase,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Clock,
    Intamp,
}

#[derive(clap::Args)]
struct Lattice {
    /// Amplitude lattice unit, as "p" or "p/q".
    #[arg(long)]
    delta: String,
    /// Phase divisions of a full turn.
    #[arg(long)]
    ticks: u64,
    /// Largest allowed distance from the lattice.
    #[arg(long)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Decide axioms on a structure file.
    Check {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Comma-separated labels or ranges such as "K1..K8"; defaults to the whole family.
        #[arg(long)]
        axioms: Option<String>,
        /// Also demand the midpoint clause of K4.
        #[arg(long)]
        k4_midpoints: bool,
        file: String,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Build a numerical representation.
    Represent {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Phase modulus, as "p" or "p/q".
        #[arg(long)]
        k: Option<String>,
        /// Region whose phase class is the zero.
        #[arg(long)]
        zero: Option<String>,
        /// Region whose amplitude becomes 1 (default: the smallest positive class).
        #[arg(long)]
        unit: Option<String>,
        file: String,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Extract amplitude and phase structures from a wave function.
    Extract {
        #[command(flatten)]
        lattice: Lattice,
        wavefile: String,
        #[arg(long, default_value = "amplitude.json")]
        amplitude_out: String,
        #[arg(long, default_value = "phase.json")]
        phase_out: String,
    },
    /// Reconstruct a wave function and fit it back to the input up to gauge.
    Roundtrip {
        #[command(flatten)]
        lattice: Lattice,
        /// Phase modulus (default: the tick count).
        #[arg(long)]
        k: Option<String>,
        /// Zero-phase region (default: the first nonzero entry).
        #[arg(long)]
        zero: Option<String>,
        wavefile: String,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Emit a canonical model.
    Gen {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        per_tick: usize,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Search for a structure separating one axiom from others.
    Search {
        #[arg(long, default_value = "")]
        satisfy: String,
        #[arg(long)]
        violate: String,
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
}

enum Failure {
    /// Malformed input or flags.
    Input(String),
    /// Valid input, negative answer.
    Negative(String),
}

type Outcome = Result<(), Failure>;

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(|e| input(format!("stdin: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| input(format!("{path}: {e}")))
    }
}

fn write(path: &str, text: &str) -> Result<(), Failure> {
    if path == "-" {
        let mut out = io::stdout().lock();
        writeln!(out, "{text}").and_then(|_| out.flush()).map_err(|e| input(format!("stdout: {e}")))
    } else {
        fs::write(path, format!("{text}\n")).map_err(|e| input(format!("{path}: {e}")))
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("outputs serialize")
}

fn parse_rational(flag: &str, text: &str) -> Result<Rational, Failure> {
    rational::parse(text).map_err(|e| input(format!("--{flag}: {e}")))
}

fn structure(path: &str, kind: Kind) -> Result<Structure, Failure> {
    let s = Structure::from_json(&read(path)?).map_err(|e| input(format!("{path}: {e}")))?;
    let found = match s {
        Structure::Amplitude(_) => Kind::Amplitude,
        Structure::Phase(_) => Kind::Phase,
    };
    if found != kind {
        return Err(input(format!("{path}: expected a {} structure, found {}", kind_name(kind), s.kind())));
    }
    Ok(s)
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Amplitude => "amplitude",
        Kind::Phase => "phase",
    }
}

fn build_failure(e: BuildError) -> Failure {
    match e {
        BuildError::Malformed(_) | BuildError::UnknownRegion(_) | BuildError::NonPositiveModulus(_) => input(e),
        _ => Failure::Negative(e.to_string()),
    }
}

fn bridge_failure(e: BridgeError) -> Failure {
    match e {
        BridgeError::InvalidConfig(_) | BridgeError::UnknownConfig(_) | BridgeError::NonPositiveScale(_) => input(e),
        BridgeError::Build(b) => build_failure(b),
        _ => Failure::Negative(e.to_string()),
    }
}

fn lattice(l: &Lattice) -> Result<ExtractionConfig, Failure> {
    ExtractionConfig::new(parse_rational("delta", &l.delta)?, l.ticks, l.tol).map_err(input)
}

fn wave(path: &str) -> Result<WaveFunctionGrid, Failure> {
    WaveFunctionGrid::from_json(&read(path)?).map_err(|e| input(format!("{path}: {e}")))
}

fn check(kind: Kind, axioms: Option<String>, midpoints: bool, file: &str, output: &str) -> Outcome {
    let family = match kind {
        Kind::Amplitude => Family::Amplitude,
        Kind::Phase => Family::Phase,
    };
    let list = match axioms {
        Some(text) => parse_list(&text).map_err(|e| input(format!("--axioms: {e}")))?,
        None => family.axioms().to_vec(),
    };
    let cfg = CheckConfig::new(list).map_err(input)?.with_parallel(true).with_k4_midpoints(midpoints);
    let reports = match structure(file, kind)? {
        Structure::Amplitude(s) => check_amplitude(&s, &cfg),
        Structure::Phase(s) => check_phase(&s, &cfg),
    }
    .map_err(|e: CheckError| input(format!("{file}: {e}")))?;
    write(output, &json(&reports))?;
    if all_pass(&reports) {
        Ok(())
    } else {
        let failed: Vec<String> = reports.iter().filter(|r| r.failed()).map(|r| r.axiom.to_string()).collect();
        Err(Failure::Negative(format!("axioms fail: {}", failed.join(", "))))
    }
}

fn represent(kind: Kind, k: Option<String>, zero: Option<String>, unit: Option<String>, file: &str, output: &str) -> Outcome {
    let text = match (kind, structure(file, kind)?) {
        (Kind::Amplitude, Structure::Amplitude(s)) => {
            if k.is_some() || zero.is_some() {
                return Err(input("--k and --zero apply to phase structures only"));
            }
            let rep = match unit {
                Some(u) => build_amplitude_rep_with_unit(&s, &RegionId::new(u)),
                None => build_amplitude_rep(&s),
            }
            .map_err(build_failure)?;
            json(&rep)
        }
        (Kind::Phase, Structure::Phase(s)) => {
            if unit.is_some() {
                return Err(input("--unit applies to amplitude structures only"));
            }
            let k = parse_rational("k", &k.ok_or_else(|| input("--k is required for phase structures"))?)?;
            let zero = zero.ok_or_else(|| input("--zero is required for phase structures"))?;
            json(&build_phase_rep(&s, &k, &RegionId::new(zero)).map_err(build_failure)?)
        }
        _ => unreachable!("structure() enforces the kind"),
    };
    write(output, &text)
}

fn extract(l: &Lattice, wavefile: &str, amplitude_out: &str, phase_out: &str) -> Outcome {
    let cfg = lattice(l)?;
    if amplitude_out == "-" && phase_out == "-" {
        return Err(input("at most one of --amplitude-out and --phase-out may be standard output"));
    }
    let g = wave(wavefile)?;
    let amplitude = extract_amplitude(&g, &cfg).map_err(bridge_failure)?;
    let phase = extract_phase(&g, &cfg).map_err(bridge_failure)?;
    write(amplitude_out, &Structure::from(amplitude).to_json())?;
    write(phase_out, &Structure::from(phase).to_json())
}

fn roundtrip(l: &Lattice, k: Option<String>, zero: Option<String>, wavefile: &str, output: &str) -> Outcome {
    let cfg = lattice(l)?;
    let k = match k {
        Some(text) => parse_rational("k", &text)?,
        None => rational::int(cfg.phase_divisions() as i64),
    };
    let g = wave(wavefile)?;
    let zero = match zero {
        Some(z) => RegionId::new(z),
        None => {
            let anchor = snap(&g, &cfg).map_err(bridge_failure)?.anchor;
            WaveFunctionGrid::region(anchor.ok_or_else(|| Failure::Negative("every entry snaps to zero".into()))?)
        }
    };
    let (r, f) = reconstruct(&g, &cfg, &k, &zero).map_err(bridge_failure)?;
    let fit = compare_up_to_gauge(&g, &r, &f, &cfg).map_err(bridge_failure)?;
    write(output, &json(&fit))
}

fn gen(model: Model, n: usize, per_tick: usize, output: &str) -> Outcome {
    if per_tick == 0 {
        return Err(input("--per-tick must be at least 1"));
    }
    let s: Structure = match model {
        Model::Clock if n == 0 => return Err(input("--n must be at least 1 for clocks")),
        Model::Clock => generate_clock(n, per_tick).into(),
        Model::Intamp => generate_integer_amplitude(n, per_tick).into(),
    };
    write(output, &s.to_json())
}

fn search(satisfy: &str, violate: &str, max_size: usize, trials: u64, seed: u64, output: &str) -> Outcome {
    let satisfy: Vec<Axiom> = if satisfy.trim().is_empty() {
        Vec::new()
    } else {
        parse_list(satisfy).map_err(|e| input(format!("--satisfy: {e}")))?
    };
    let violate: Axiom = violate.parse().map_err(|e| input(format!("--violate: {e}")))?;
    let budget = SearchBudget { max_carrier: max_size, max_trials: trials, seed };
    match find_separating_model(&satisfy, violate, &budget).map_err(input)? {
        SearchOutcome::Found { structure, .. } => write(output, &structure.to_json()),
        outcome @ SearchOutcome::NotFound { .. } => {
            write(output, &json(&outcome))?;
            Err(Failure::Negative(format!("no structure found in {trials} trials")))
        }
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(input("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().map_err(input)?;
    }
    match cli.command {
        Command::Check { kind, axioms, k4_midpoints, file, output } => check(kind, axioms, k4_midpoints, &file, &output),
        Command::Represent { kind, k, zero, unit, file, output } => represent(kind, k, zero, unit, &file, &output),
        Command::Extract { lattice, wavefile, amplitude_out, phase_out } => {
            extract(&lattice, &wavefile, &amplitude_out, &phase_out)
        }
        Command::Roundtrip { lattice, k, zero, wavefile, output } => roundtrip(&lattice, k, zero, &wavefile, &output),
        Command::Gen { model, n, per_tick, output } => gen(model, n, per_tick, &output),
        Command::Search { satisfy, violate, max_size, trials, seed, output } => {
            search(&satisfy, &violate, max_size, trials, seed, &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string();
            let line = message.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            eprintln!("iqs: {line}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative(message)) => {
            eprintln!("iqs: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Input(message)) => {
            eprintln!("iqs: {}", message.replace('\n', " "));
            ExitCode::from(2)
        }
    }
}
