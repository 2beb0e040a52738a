//! Full automaton circuits `U_$ · U_a^j · U_¢` for every strategy, and sweeps
//! over input lengths.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::circuit::{metrics, Circuit, Gate};
use crate::error::{Error, Result};
use crate::lnn::{self, LnnOptions};
use crate::pseudo::{synth_pseudo, PseudoSpec};
use crate::qfa::QfaSpec;
use crate::rewrite::{lower_to_basis, rewrite_to_rz_basis};
use crate::sim::{noisy_accept_prob, simulate, NoiseModel};
use crate::synth::{self, decompose};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Naive,
    Mottonen,
    Hybrid { t: usize },
    Pseudo,
    /// Pseudo circuit with target walking on a line, symbols merged.
    Lnn(LnnOptions),
    /// Pseudo circuit placed on a line by a generic SWAP router.
    PseudoSwap,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Naive => "naive",
            Strategy::Mottonen => "mottonen",
            Strategy::Hybrid { .. } => "hybrid",
            Strategy::Pseudo => "pseudo",
            Strategy::Lnn(_) => "lnn",
            Strategy::PseudoSwap => "pseudo-swap",
        }
    }

    /// Whether the strategy consumes a [`PseudoSpec`] rather than a [`QfaSpec`].
    pub fn is_pseudo(&self) -> bool {
        matches!(self, Strategy::Pseudo | Strategy::Lnn(_) | Strategy::PseudoSwap)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Hybrid { t } => write!(f, "hybrid-t{t}"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Basis {
    /// {1-qubit, CNOT} with Ry rotations.
    #[default]
    Ry,
    /// {CNOT, I, Rz, SX, X}.
    Rz,
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ry" => Ok(Basis::Ry),
            "rz" => Ok(Basis::Rz),
            other => Err(Error::InvalidParameter(format!("unknown basis `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Automaton {
    Blocks(QfaSpec),
    Pseudo(PseudoSpec),
}

impl Automaton {
    pub fn p(&self) -> u64 {
        match self {
            Automaton::Blocks(s) => s.p(),
            Automaton::Pseudo(s) => s.p(),
        }
    }

    pub fn num_controls(&self) -> usize {
        match self {
            Automaton::Blocks(s) => s.log_d(),
            Automaton::Pseudo(s) => s.num_controls(),
        }
    }

    fn blocks(&self, strategy: Strategy) -> Result<&QfaSpec> {
        match self {
            Automaton::Blocks(s) => Ok(s),
            Automaton::Pseudo(_) => Err(Error::InvalidParameter(format!(
                "strategy {strategy} needs a K set, not pseudo angles"
            ))),
        }
    }

    fn pseudo(&self, strategy: Strategy) -> Result<&PseudoSpec> {
        match self {
            Automaton::Pseudo(s) => Ok(s),
            Automaton::Blocks(_) => Err(Error::InvalidParameter(format!(
                "strategy {strategy} needs pseudo angles, not a K set"
            ))),
        }
    }
}

/// Closed-form CNOT count attached to a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prediction {
    pub cnots: i64,
    /// Exact count when true, upper bound otherwise.
    pub exact: bool,
}

impl Prediction {
    pub fn holds(&self, measured: usize) -> bool {
        if self.exact {
            measured as i64 == self.cnots
        } else {
            measured as i64 <= self.cnots
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BuiltCircuit {
    pub circuit: Circuit,
    pub prediction: Option<Prediction>,
}

fn prediction(strategy: Strategy, automaton: &Automaton, symbols: usize) -> Option<Prediction> {
    let l = automaton.num_controls();
    let d = 1usize << l;
    let j = symbols as i64;
    match strategy {
        Strategy::Mottonen => Some(Prediction {
            cnots: d as i64 * j,
            exact: true,
        }),
        Strategy::Hybrid { t } if t == l && l > 0 => Some(Prediction {
            cnots: d as i64 * j,
            exact: true,
        }),
        Strategy::Hybrid { t } => synth::in_formula_range(d, t).then(|| Prediction {
            cnots: synth::hybrid_cost_formula(d, t) * j,
            exact: false,
        }),
        Strategy::Naive => (l >= 5).then(|| Prediction {
            cnots: synth::naive_cost_bound(d) * j,
            exact: false,
        }),
        Strategy::Pseudo => Some(Prediction {
            cnots: 2 * l as i64 * j,
            exact: true,
        }),
        Strategy::Lnn(_) => lnn::predicted_cnots(l + 1, symbols).ok().map(|c| Prediction {
            cnots: c as i64,
            exact: true,
        }),
        Strategy::PseudoSwap => None,
    }
}

/// One input symbol, `U_a`, decomposed to {1-qubit, CNOT}. Not available
/// for the line-routed strategies, whose layout spans whole words.
pub fn symbol_circuit(strategy: Strategy, automaton: &Automaton) -> Result<BuiltCircuit> {
    let circuit = match strategy {
        Strategy::Naive => decompose(&synth::synth_naive(automaton.blocks(strategy)?)?)?,
        Strategy::Mottonen => synth::synth_mottonen(automaton.blocks(strategy)?)?,
        Strategy::Hybrid { t } => synth::synth_hybrid(automaton.blocks(strategy)?, t)?.0,
        Strategy::Pseudo => decompose(&synth_pseudo(automaton.pseudo(strategy)?)?)?,
        Strategy::Lnn(_) | Strategy::PseudoSwap => {
            return Err(Error::InvalidParameter(format!(
                "strategy {strategy} only builds whole words; give an input length"
            )))
        }
    };
    Ok(BuiltCircuit {
        prediction: prediction(strategy, automaton, 1),
        circuit,
    })
}

/// Hadamards on the controls, `j` copies of `block`, Hadamards again.
pub fn frame_word(block: &Circuit, num_controls: usize, j: usize) -> Result<Circuit> {
    let mut c = Circuit::new(block.num_qubits())?;
    c.extend((0..num_controls).map(Gate::H))?;
    for _ in 0..j {
        c.append(block)?;
    }
    c.extend((0..num_controls).map(Gate::H))?;
    Ok(c)
}

/// The whole word circuit for `a^j` in the requested basis.
pub fn qfa_circuit(strategy: Strategy, automaton: &Automaton, j: usize, basis: Basis) -> Result<BuiltCircuit> {
    let l = automaton.num_controls();
    let circuit = match strategy {
        Strategy::Lnn(opts) => {
            let spec = automaton.pseudo(strategy)?;
            let routed = lnn::route_pseudo_lnn_merged(spec, j, l + 1, opts)?;
            match basis {
                Basis::Ry => routed.circuit,
                Basis::Rz => lower_to_basis(&routed.circuit)?,
            }
        }
        Strategy::PseudoSwap => {
            let block = decompose(&synth_pseudo(automaton.pseudo(strategy)?)?)?;
            let word = in_basis(&frame_word(&block, l, j)?, basis)?;
            lnn::route_with_swaps(&word)?.0
        }
        _ => {
            let block = symbol_circuit(strategy, automaton)?.circuit;
            in_basis(&frame_word(&block, l, j)?, basis)?
        }
    };
    Ok(BuiltCircuit {
        prediction: prediction(strategy, automaton, j.max(1)),
        circuit,
    })
}

fn in_basis(c: &Circuit, basis: Basis) -> Result<Circuit> {
    match basis {
        Basis::Ry => Ok(c.clone()),
        Basis::Rz => lower_to_basis(&rewrite_to_rz_basis(c)?),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub j: usize,
    pub accept_prob: f64,
    pub cnot_count: usize,
    pub depth: usize,
    pub strategy: String,
    pub rate: f64,
    pub seed: Option<u64>,
}

/// One row per input length in `js`; noisy rows use the trajectory average.
pub fn sweep(
    strategy: Strategy,
    automaton: &Automaton,
    js: impl IntoIterator<Item = usize>,
    noise: Option<&NoiseModel>,
    basis: Basis,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for j in js {
        let built = qfa_circuit(strategy, automaton, j, basis)?;
        let m = metrics(&built.circuit);
        let accept_prob = match noise {
            Some(nm) => noisy_accept_prob(&built.circuit, nm)?,
            None => simulate(&built.circuit)?.accept_prob,
        };
        rows.push(SweepRow {
            j,
            accept_prob,
            cnot_count: m.cnot_count,
            depth: m.depth,
            strategy: strategy.to_string(),
            rate: noise.map_or(0.0, |nm| nm.cnot_depolarizing_rate),
            seed: noise.map(|nm| nm.seed),
        });
    }
    Ok(rows)
}

pub const SWEEP_HEADER: &str = "j,accept_prob,cnot_count,depth,strategy,rate,seed";

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        let seed = r.seed.map(|s| s.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.j, r.accept_prob, r.cnot_count, r.depth, r.strategy, r.rate, seed
        )
        .unwrap();
    }
    out
}
