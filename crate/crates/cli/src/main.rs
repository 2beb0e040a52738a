use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qfa_core::circuit::{elaborate, metrics, parse_circuit, to_qasm, write_circuit, Circuit};
use qfa_core::lnn::{LnnOptions, TargetFraming};
use qfa_core::matrix::{phase_deviation, UnitaryMatrix};
use qfa_core::pipeline::{qfa_circuit, sweep, sweep_csv, symbol_circuit, Automaton, Basis, Strategy};
use qfa_core::pseudo::{search_xi, PseudoSpec};
use qfa_core::qfa::{block_rotation, error_bound, profile_of_angles, search_k, QfaSpec};
use qfa_core::sim::{simulate, simulate_noisy, NoiseModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const PUBLISHED_K: [u64; 5] = [3, 6, 19, 2, 8];
const SEED_ENV: &str = "QFA_SYNTH_SEED";

#[derive(Parser, Debug)]
#[command(name = "qfa-synth", version, about = "Synthesize, route and simulate MOD_p QFA circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the circuit for `a^j` and print a JSON report.
    Synth(SynthArgs),
    /// Compare a circuit against U_a or another circuit up to global phase.
    Verify(VerifyArgs),
    /// Run a circuit file and print its outcome distribution.
    Simulate(SimulateArgs),
    /// CSV of acceptance probabilities for j = 1..=j-max.
    Sweep(SweepArgs),
    /// Random search for K (or ξ multipliers) meeting an error bound.
    Search(SearchArgs),
    /// Convert a circuit file to OpenQASM 2.0.
    Export(ExportArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Naive,
    Mottonen,
    Hybrid,
    Pseudo,
    Lnn,
    PseudoSwap,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FramingArg {
    Sx,
    S,
}

#[derive(Args, Debug)]
struct SpecArgs {
    #[arg(long, default_value_t = 37)]
    p: u64,
    /// Comma list. For pseudo strategies: ξ multipliers, the unconditional one last.
    #[arg(long, value_delimiter = ',', conflicts_with = "k_seed")]
    k: Option<Vec<u64>>,
    /// Draw K at random (falls back to QFA_SYNTH_SEED).
    #[arg(long)]
    k_seed: Option<u64>,
    /// Number of blocks for a random K.
    #[arg(long, default_value_t = 8)]
    d: usize,
    #[arg(long, value_enum, default_value = "mottonen")]
    strategy: StrategyArg,
    /// Hybrid level.
    #[arg(long)]
    t: Option<usize>,
    /// Qubit count for pseudo strategies.
    #[arg(long)]
    n: Option<usize>,
    /// Physical start of the routed target.
    #[arg(long)]
    initial_target: Option<usize>,
    #[arg(long, value_enum, default_value = "sx")]
    framing: FramingArg,
}

#[derive(Args, Debug)]
struct SynthArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long, default_value_t = 1)]
    input_len: usize,
    #[arg(long, default_value = "ry")]
    basis: Basis,
    /// Emit the bare U_a circuit without the Hadamard framing.
    #[arg(long, conflicts_with = "input_len")]
    bare: bool,
    /// Circuit text output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON report output (stdout otherwise).
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    export_qasm: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    circuit: PathBuf,
    /// `ua` or a circuit file.
    #[arg(long)]
    against: String,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[command(flatten)]
    spec: SpecArgs,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[arg(long)]
    noise_rate: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    shots: u64,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long, default_value_t = 75)]
    j_max: usize,
    #[arg(long)]
    noise_rate: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    shots: u64,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "ry")]
    basis: Basis,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    seed: u64,
    /// Search ξ multipliers for the pseudo construction instead of K.
    #[arg(long)]
    pseudo: bool,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Verify(String),
    Usage(String),
    Exhausted(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Exhausted(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verify(m) | Failure::Usage(m) | Failure::Exhausted(m) => m,
        }
    }
}

impl From<qfa_core::Error> for Failure {
    fn from(e: qfa_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read_circuit(path: &Path) -> Result<Circuit, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(parse_circuit(&text)?)
}

fn write_file(path: &Path, contents: &str) -> CmdResult {
    fs::write(path, contents).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, contents: &str) -> CmdResult {
    match path {
        Some(p) => write_file(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn env_seed() -> Result<Option<u64>, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .parse()
            .map(Some)
            .map_err(|_| usage(format!("{SEED_ENV}={v} is not an integer"))),
        Err(_) => Ok(None),
    }
}

fn random_ks(p: u64, len: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.gen_range(1..p)).collect()
}

impl SpecArgs {
    fn strategy(&self) -> Result<Strategy, Failure> {
        if self.t.is_some() && self.strategy != StrategyArg::Hybrid {
            return Err(usage("--t only applies to --strategy hybrid"));
        }
        let lnn_flags = self.initial_target.is_some() || self.framing != FramingArg::Sx;
        if lnn_flags && self.strategy != StrategyArg::Lnn {
            return Err(usage("--initial-target and --framing only apply to --strategy lnn"));
        }
        Ok(match self.strategy {
            StrategyArg::Naive => Strategy::Naive,
            StrategyArg::Mottonen => Strategy::Mottonen,
            StrategyArg::Hybrid => Strategy::Hybrid {
                t: self.t.ok_or_else(|| usage("--strategy hybrid needs --t"))?,
            },
            StrategyArg::Pseudo => Strategy::Pseudo,
            StrategyArg::PseudoSwap => Strategy::PseudoSwap,
            StrategyArg::Lnn => Strategy::Lnn(LnnOptions {
                initial_target: self.initial_target,
                framing: match self.framing {
                    FramingArg::Sx => TargetFraming::Sx,
                    FramingArg::S => TargetFraming::S,
                },
            }),
        })
    }

    fn automaton(&self, strategy: Strategy) -> Result<Automaton, Failure> {
        let seed = match self.k_seed {
            Some(s) => Some(s),
            None if self.k.is_none() => env_seed()?,
            None => None,
        };
        if strategy.is_pseudo() {
            let ks = match (&self.k, seed) {
                (Some(k), _) => k.clone(),
                (None, Some(s)) => random_ks(self.p, self.n.unwrap_or(PUBLISHED_K.len()), s),
                (None, None) => PUBLISHED_K.to_vec(),
            };
            if let Some(n) = self.n {
                if n != ks.len() {
                    return Err(usage(format!("--n {n} does not match {} multipliers", ks.len())));
                }
            }
            Ok(Automaton::Pseudo(PseudoSpec::from_published_k(self.p, &ks)?))
        } else {
            if self.n.is_some() {
                return Err(usage("--n only applies to pseudo strategies"));
            }
            let spec = match (&self.k, seed) {
                (Some(k), _) => QfaSpec::new(self.p, k.clone())?,
                (None, Some(s)) => QfaSpec::new(self.p, random_ks(self.p, self.d, s))?,
                (None, None) => QfaSpec::padded(self.p, PUBLISHED_K.to_vec())?,
            };
            Ok(Automaton::Blocks(spec))
        }
    }
}

#[derive(Serialize)]
struct SynthReport {
    strategy: String,
    num_qubits: usize,
    input_len: Option<usize>,
    cnot_count: usize,
    depth: usize,
    gate_count: usize,
    histogram: BTreeMap<String, usize>,
    min_abs_angle: Option<f64>,
    predicted_cnots: Option<i64>,
    formula_ok: Option<bool>,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn cmd_synth(args: &SynthArgs) -> CmdResult {
    let strategy = args.spec.strategy()?;
    let automaton = args.spec.automaton(strategy)?;
    let built = if args.bare {
        symbol_circuit(strategy, &automaton)?
    } else {
        qfa_circuit(strategy, &automaton, args.input_len, args.basis)?
    };
    let m = metrics(&built.circuit);
    let report = SynthReport {
        strategy: strategy.to_string(),
        num_qubits: built.circuit.num_qubits(),
        input_len: (!args.bare).then_some(args.input_len),
        cnot_count: m.cnot_count,
        depth: m.depth,
        gate_count: m.gate_count,
        histogram: m.histogram,
        min_abs_angle: m.min_abs_angle,
        predicted_cnots: built.prediction.map(|p| p.cnots),
        formula_ok: built.prediction.map(|p| p.holds(m.cnot_count)),
    };
    if let Some(path) = &args.out {
        write_file(path, &write_circuit(&built.circuit))?;
    }
    if let Some(path) = &args.export_qasm {
        write_file(path, &to_qasm(&built.circuit)?)?;
    }
    emit(args.report.as_deref(), &to_json(&report))
}

fn reference_unitary(automaton: &Automaton) -> Result<UnitaryMatrix, Failure> {
    Ok(match automaton {
        Automaton::Blocks(spec) => spec.ua()?,
        Automaton::Pseudo(spec) => block_rotation(&spec.effective_angles())?,
    })
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let u = elaborate(&read_circuit(&args.circuit)?)?;
    let reference = if args.against == "ua" {
        let strategy = args.spec.strategy()?;
        let automaton = args.spec.automaton(strategy)?;
        let ua = reference_unitary(&automaton)?;
        let width = symbol_circuit(strategy, &automaton)?.circuit.num_qubits();
        if u.num_qubits() == width && width > ua.num_qubits() {
            ua.kron(&UnitaryMatrix::identity(1 << (width - ua.num_qubits()))?)?
        } else {
            ua
        }
    } else {
        elaborate(&read_circuit(Path::new(&args.against))?)?
    };
    let dev = phase_deviation(&u, &reference)?;
    if dev <= args.tol {
        println!("PASS max_deviation={dev:e}");
        Ok(())
    } else {
        Err(Failure::Verify(format!("FAIL max_deviation={dev:e} tol={:e}", args.tol)))
    }
}

#[derive(Serialize)]
struct SimReport {
    accept_prob: f64,
    outcome_probs: BTreeMap<String, f64>,
    noise_rate: Option<f64>,
    shots: Option<u64>,
    seed: Option<u64>,
}

fn cmd_simulate(args: &SimulateArgs) -> CmdResult {
    let c = read_circuit(&args.circuit)?;
    let report = match args.noise_rate {
        None => {
            let r = simulate(&c)?;
            SimReport {
                accept_prob: r.accept_prob,
                outcome_probs: r.outcome_probs,
                noise_rate: None,
                shots: None,
                seed: None,
            }
        }
        Some(rate) => {
            let nm = NoiseModel::new(rate, args.shots, args.seed)?;
            let r = simulate_noisy(&c, &nm)?;
            SimReport {
                accept_prob: r.accept_prob,
                outcome_probs: r.outcome_probs,
                noise_rate: Some(rate),
                shots: Some(args.shots),
                seed: Some(args.seed),
            }
        }
    };
    print!("{}", to_json(&report));
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> CmdResult {
    let strategy = args.spec.strategy()?;
    let automaton = args.spec.automaton(strategy)?;
    let noise = args
        .noise_rate
        .map(|rate| NoiseModel::new(rate, args.shots, args.seed))
        .transpose()?;
    let rows = sweep(strategy, &automaton, 1..=args.j_max, noise.as_ref(), args.basis)?;
    emit(args.out.as_deref(), &sweep_csv(&rows))
}

#[derive(Serialize)]
struct SearchReport {
    p: u64,
    d: usize,
    k: Option<Vec<u64>>,
    xi_multipliers: Option<Vec<u64>>,
    epsilon: f64,
}

fn cmd_search(args: &SearchArgs) -> CmdResult {
    let report = if args.pseudo {
        let Some(spec) = search_xi(args.p, args.d, args.eps, args.budget, args.seed)? else {
            return Err(exhausted(args));
        };
        let epsilon = profile_of_angles(&spec.effective_angles(), args.p)?.epsilon;
        let multipliers: Vec<u64> = spec
            .xis()
            .iter()
            .map(|xi| (xi * args.p as f64 / TAU).round().rem_euclid(args.p as f64) as u64)
            .collect();
        let mut published = multipliers[1..].to_vec();
        published.push(multipliers[0]);
        SearchReport {
            p: args.p,
            d: args.d,
            k: None,
            xi_multipliers: Some(published),
            epsilon,
        }
    } else {
        let Some(spec) = search_k(args.p, args.d, args.eps, args.budget, args.seed)? else {
            return Err(exhausted(args));
        };
        SearchReport {
            p: args.p,
            d: args.d,
            epsilon: error_bound(&spec)?,
            k: Some(spec.ks().to_vec()),
            xi_multipliers: None,
        }
    };
    if report.epsilon > args.eps {
        return Err(Failure::Verify(format!("found ε = {} exceeds {}", report.epsilon, args.eps)));
    }
    print!("{}", to_json(&report));
    Ok(())
}

fn exhausted(args: &SearchArgs) -> Failure {
    Failure::Exhausted(format!(
        "no candidate with ε ≤ {} after {} trials (p = {}, d = {}, seed = {})",
        args.eps, args.budget, args.p, args.d, args.seed
    ))
}

fn cmd_export(args: &ExportArgs) -> CmdResult {
    let c = read_circuit(&args.circuit)?;
    emit(args.out.as_deref(), &to_qasm(&c)?)
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Synth(a) => cmd_synth(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Search(a) => cmd_search(a),
        Command::Export(a) => cmd_export(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.message());
            ExitCode::from(f.code())
        }
    }
}
