//! Thin command-line front end over the `fhverify` library.
//!
//! Exit codes: 0 accept, 1 reject, 2 usage or parse error, 3 reject with a
//! promise-violation diagnostic.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use fhverify::{
    circuit_digest, dense_evolve, exact_amplitude_pathsum, find_witness, parse_circuit, prove,
    verify, BitString, KTransformCircuit, PromiseParams, RunReport, VerdictReport,
};

/// Default master seed used when --seed is not given. All randomness in a
/// run flows from the seed, so runs with equal flags are reproducible.
const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(
    name = "fhverify",
    version,
    about = "Classically verify outcomes of circuits with at most two transform layers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a claimed outcome (supports k <= 2 transform layers)
    Verify(VerifyArgs),
    /// Run the honest prover and print the outcome histogram
    Prove(ProveArgs),
    /// Print an outcome amplitude from the dense or path-sum oracle
    Amplitude(AmplitudeArgs),
    /// Sample a witness with the honest prover, then verify it
    Witness(WitnessArgs),
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Circuit description file
    #[arg(long)]
    circuit: PathBuf,
    /// Claimed outcome bit string
    #[arg(long)]
    outcome: String,
    /// Yes-instance probability threshold
    #[arg(long)]
    delta: f64,
    /// No-instance probability threshold (must be < delta/2)
    #[arg(long)]
    epsilon: f64,
    /// Target success probability of the sampled decision
    #[arg(long, default_value_t = 0.99)]
    confidence: f64,
    /// Explicit sample count, overriding the derived one
    #[arg(long)]
    samples: Option<u64>,
    /// Master seed for the sampling streams
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Override the circuit file's input state
    #[arg(long)]
    input: Option<String>,
    /// Worker threads for sampling; does not change any reported number
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(clap::Args)]
struct ProveArgs {
    /// Circuit description file
    #[arg(long)]
    circuit: PathBuf,
    /// Number of measurement shots
    #[arg(long, default_value_t = 1)]
    shots: u64,
    /// Seed for the measurement draws
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AmplitudeMethod {
    /// Dense state-vector evolution (any k, n <= 20)
    Dense,
    /// Exact path-sum enumeration (k = 2 only)
    Pathsum,
}

#[derive(clap::Args)]
struct AmplitudeArgs {
    /// Circuit description file
    #[arg(long)]
    circuit: PathBuf,
    /// Outcome bit string whose amplitude to compute
    #[arg(long)]
    outcome: String,
    /// Which oracle to use
    #[arg(long, value_enum)]
    method: AmplitudeMethod,
}

#[derive(clap::Args)]
struct WitnessArgs {
    /// Circuit description file
    #[arg(long)]
    circuit: PathBuf,
    /// Prover shots used to pick the modal outcome
    #[arg(long, default_value_t = 100)]
    shots: u64,
    /// Master seed for both the prover and the verifier
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Yes-instance probability threshold
    #[arg(long)]
    delta: f64,
    /// No-instance probability threshold (must be < delta/2)
    #[arg(long)]
    epsilon: f64,
    /// Target success probability of the sampled decision
    #[arg(long, default_value_t = 0.99)]
    confidence: f64,
    /// Explicit sample count, overriding the derived one
    #[arg(long)]
    samples: Option<u64>,
    /// Worker threads for sampling; does not change any reported number
    #[arg(long)]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match dispatch(cli.command) {
        Ok((mut report, code)) => {
            report.push("elapsed-ms", started.elapsed().as_millis());
            print!("{}", report.render());
            ExitCode::from(code)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// Command echo with --threads stripped: the thread count is an execution
/// detail and must not change the report.
fn command_echo() -> String {
    let mut echo = Vec::new();
    let mut args = std::env::args().skip(1).peekable();
    while let Some(arg) = args.next() {
        if arg == "--threads" {
            args.next();
            continue;
        }
        if arg.starts_with("--threads=") {
            continue;
        }
        echo.push(arg);
    }
    echo.join(" ")
}

fn fail(err: impl Display) -> String {
    err.to_string()
}

fn load_circuit(path: &Path, input_override: Option<&str>) -> Result<KTransformCircuit, String> {
    let raw = std::fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let text = String::from_utf8_lossy(&raw);
    let circuit = parse_circuit(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    match input_override {
        Some(text) => {
            let input: BitString = text.parse().map_err(fail)?;
            circuit.with_input(input).map_err(fail)
        }
        None => Ok(circuit),
    }
}

fn parse_outcome(text: &str, n: usize) -> Result<BitString, String> {
    let outcome: BitString = text.parse().map_err(fail)?;
    if outcome.len() != n {
        return Err(format!(
            "outcome has {} bits, circuit has {n} qubits",
            outcome.len()
        ));
    }
    Ok(outcome)
}

fn build_params(
    delta: f64,
    epsilon: f64,
    confidence: f64,
    samples: Option<u64>,
) -> Result<PromiseParams, String> {
    let params = PromiseParams::new(delta, epsilon, confidence).map_err(fail)?;
    match samples {
        Some(n) => params.with_samples(n).map_err(fail),
        None => Ok(params),
    }
}

/// Runs `body` inside a dedicated rayon pool when a thread count is given.
fn with_threads<T: Send>(
    threads: Option<usize>,
    body: impl FnOnce() -> T + Send,
) -> Result<T, String> {
    match threads {
        None => Ok(body()),
        Some(t) => {
            if t == 0 {
                return Err("--threads must be at least 1".into());
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(fail)?;
            Ok(pool.install(body))
        }
    }
}

fn verdict_exit_code(verdict: &VerdictReport) -> u8 {
    if verdict.accepted() {
        0
    } else if verdict.promise_violation {
        3
    } else {
        1
    }
}

fn dispatch(command: Command) -> Result<(RunReport, u8), String> {
    match command {
        Command::Verify(args) => cmd_verify(args),
        Command::Prove(args) => cmd_prove(args),
        Command::Amplitude(args) => cmd_amplitude(args),
        Command::Witness(args) => cmd_witness(args),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<(RunReport, u8), String> {
    let circuit = load_circuit(&args.circuit, args.input.as_deref())?;
    let outcome = parse_outcome(&args.outcome, circuit.n())?;
    let params = build_params(args.delta, args.epsilon, args.confidence, args.samples)?;

    let verdict = with_threads(args.threads, || {
        verify(&circuit, &outcome, &params, args.seed)
    })?
    .map_err(fail)?;

    let mut report = RunReport::new(&command_echo());
    report.push("circuit", circuit_digest(&circuit));
    report.push("qubits", circuit.n());
    report.push("input", circuit.input());
    report.push("outcome", &args.outcome);
    report.push_float("delta", args.delta);
    report.push_float("epsilon", args.epsilon);
    report.push_float("confidence", args.confidence);
    report.push_opt("requested-samples", args.samples);
    report.push_verdict(&verdict);
    let code = verdict_exit_code(&verdict);
    Ok((report, code))
}

fn cmd_prove(args: ProveArgs) -> Result<(RunReport, u8), String> {
    let circuit = load_circuit(&args.circuit, None)?;
    let histogram = prove(&circuit, args.shots, args.seed).map_err(fail)?;

    let mut report = RunReport::new(&command_echo());
    report.push("circuit", circuit_digest(&circuit));
    report.push("qubits", circuit.n());
    report.push("input", circuit.input());
    report.push("shots", args.shots);
    report.push("seed", args.seed);
    for (outcome, count) in histogram.counts() {
        report.push(&format!("count:{outcome}"), count);
    }
    report.push_opt("modal", histogram.modal());
    Ok((report, 0))
}

fn cmd_amplitude(args: AmplitudeArgs) -> Result<(RunReport, u8), String> {
    let circuit = load_circuit(&args.circuit, None)?;
    let outcome = parse_outcome(&args.outcome, circuit.n())?;
    let amplitude = match args.method {
        AmplitudeMethod::Dense => dense_evolve(&circuit)
            .and_then(|state| state.amplitude(&outcome))
            .map_err(fail)?,
        AmplitudeMethod::Pathsum => exact_amplitude_pathsum(&circuit, &outcome).map_err(fail)?,
    };

    let mut report = RunReport::new(&command_echo());
    report.push("circuit", circuit_digest(&circuit));
    report.push("qubits", circuit.n());
    report.push("input", circuit.input());
    report.push("outcome", &args.outcome);
    report.push(
        "method",
        match args.method {
            AmplitudeMethod::Dense => "dense",
            AmplitudeMethod::Pathsum => "pathsum",
        },
    );
    report.push_float("amplitude-re", amplitude.re);
    report.push_float("amplitude-im", amplitude.im);
    report.push_float("probability", amplitude.norm_sqr());
    Ok((report, 0))
}

fn cmd_witness(args: WitnessArgs) -> Result<(RunReport, u8), String> {
    let circuit = load_circuit(&args.circuit, None)?;
    let params = build_params(args.delta, args.epsilon, args.confidence, args.samples)?;

    let witness = find_witness(&circuit, args.shots, args.seed).map_err(fail)?;
    let verdict = with_threads(args.threads, || {
        verify(&circuit, &witness, &params, args.seed)
    })?
    .map_err(fail)?;

    let mut report = RunReport::new(&command_echo());
    report.push("circuit", circuit_digest(&circuit));
    report.push("qubits", circuit.n());
    report.push("input", circuit.input());
    report.push("shots", args.shots);
    report.push("witness", witness);
    report.push_float("delta", args.delta);
    report.push_float("epsilon", args.epsilon);
    report.push_float("confidence", args.confidence);
    report.push_opt("requested-samples", args.samples);
    report.push_verdict(&verdict);
    let code = verdict_exit_code(&verdict);
    Ok((report, code))
}
