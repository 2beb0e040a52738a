//! Gate-level circuit IR.
//!
//! Qubit 0 is the top wire and the most significant bit of basis labels.

mod elaborate;
mod gray;
mod metrics;
mod qasm;
mod text;

pub use elaborate::{elaborate, elaborate_by_kron, lift_gate};
pub use gray::{gray_bits, gray_code, gray_transition_bit};
pub use metrics::{metrics, Metrics};
pub use qasm::to_qasm;
pub use text::{parse_circuit, write_circuit};

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Largest qubit count a [`Circuit`] may declare.
pub const MAX_CIRCUIT_QUBITS: usize = 64;

/// A control wire. Open controls fire on |0⟩, filled controls on |1⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Control {
    pub qubit: usize,
    pub open: bool,
}

impl Control {
    pub fn filled(qubit: usize) -> Self {
        Control { qubit, open: false }
    }

    pub fn open(qubit: usize) -> Self {
        Control { qubit, open: true }
    }
}

/// Filled controls on every listed qubit.
pub fn filled(qubits: &[usize]) -> Vec<Control> {
    qubits.iter().map(|&q| Control::filled(q)).collect()
}

/// Rotation axis shared by the generic decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Y,
    Z,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    I(usize),
    H(usize),
    X(usize),
    SX(usize),
    SXdg(usize),
    S(usize),
    Sdg(usize),
    T(usize),
    Tdg(usize),
    /// `diag(1, e^{iλ})`.
    Phase { qubit: usize, lambda: f64 },
    Ry { qubit: usize, theta: f64 },
    Rz { qubit: usize, theta: f64 },
    CNOT { control: usize, target: usize },
    MCX { controls: Vec<Control>, target: usize },
    MCRy { controls: Vec<Control>, target: usize, theta: f64 },
    MCRz { controls: Vec<Control>, target: usize, theta: f64 },
}

impl Gate {
    pub fn rotation(axis: Axis, qubit: usize, theta: f64) -> Gate {
        match axis {
            Axis::Y => Gate::Ry { qubit, theta },
            Axis::Z => Gate::Rz { qubit, theta },
        }
    }

    pub fn mc_rotation(axis: Axis, controls: Vec<Control>, target: usize, theta: f64) -> Gate {
        match axis {
            Axis::Y => Gate::MCRy { controls, target, theta },
            Axis::Z => Gate::MCRz { controls, target, theta },
        }
    }

    /// Upper-case mnemonic used by the text format and histograms.
    pub fn name(&self) -> &'static str {
        match self {
            Gate::I(_) => "I",
            Gate::H(_) => "H",
            Gate::X(_) => "X",
            Gate::SX(_) => "SX",
            Gate::SXdg(_) => "SXDG",
            Gate::S(_) => "S",
            Gate::Sdg(_) => "SDG",
            Gate::T(_) => "T",
            Gate::Tdg(_) => "TDG",
            Gate::Phase { .. } => "P",
            Gate::Ry { .. } => "RY",
            Gate::Rz { .. } => "RZ",
            Gate::CNOT { .. } => "CNOT",
            Gate::MCX { .. } => "MCX",
            Gate::MCRy { .. } => "MCRY",
            Gate::MCRz { .. } => "MCRZ",
        }
    }

    /// The wire the gate's 2×2 action is applied to.
    pub fn target(&self) -> usize {
        match *self {
            Gate::I(q)
            | Gate::H(q)
            | Gate::X(q)
            | Gate::SX(q)
            | Gate::SXdg(q)
            | Gate::S(q)
            | Gate::Sdg(q)
            | Gate::T(q)
            | Gate::Tdg(q) => q,
            Gate::Phase { qubit, .. } | Gate::Ry { qubit, .. } | Gate::Rz { qubit, .. } => qubit,
            Gate::CNOT { target, .. }
            | Gate::MCX { target, .. }
            | Gate::MCRy { target, .. }
            | Gate::MCRz { target, .. } => target,
        }
    }

    pub fn controls(&self) -> Vec<Control> {
        match self {
            Gate::CNOT { control, .. } => vec![Control::filled(*control)],
            Gate::MCX { controls, .. } | Gate::MCRy { controls, .. } | Gate::MCRz { controls, .. } => {
                controls.clone()
            }
            _ => Vec::new(),
        }
    }

    /// Every wire touched, controls first.
    pub fn qubits(&self) -> Vec<usize> {
        let mut qs: Vec<usize> = self.controls().iter().map(|c| c.qubit).collect();
        qs.push(self.target());
        qs
    }

    /// Rotation angle of Ry/Rz/MCRy/MCRz gates.
    pub fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Ry { theta, .. }
            | Gate::Rz { theta, .. }
            | Gate::MCRy { theta, .. }
            | Gate::MCRz { theta, .. } => Some(theta),
            _ => None,
        }
    }

    pub fn is_multi_controlled(&self) -> bool {
        matches!(self, Gate::MCX { .. } | Gate::MCRy { .. } | Gate::MCRz { .. })
    }

    pub fn is_single_qubit(&self) -> bool {
        self.controls().is_empty()
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let mut seen = BTreeSet::new();
        for q in self.qubits() {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, num_qubits });
            }
            if !seen.insert(q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        let phase_ok = match self {
            Gate::Phase { lambda, .. } => lambda.is_finite(),
            _ => true,
        };
        if !phase_ok || self.angle().is_some_and(|t| !t.is_finite()) {
            return Err(Error::NonFiniteAngle);
        }
        Ok(())
    }

    pub fn inverse(&self) -> Gate {
        match self.clone() {
            Gate::SX(q) => Gate::SXdg(q),
            Gate::SXdg(q) => Gate::SX(q),
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            Gate::T(q) => Gate::Tdg(q),
            Gate::Tdg(q) => Gate::T(q),
            Gate::Phase { qubit, lambda } => Gate::Phase { qubit, lambda: -lambda },
            Gate::Ry { qubit, theta } => Gate::Ry { qubit, theta: -theta },
            Gate::Rz { qubit, theta } => Gate::Rz { qubit, theta: -theta },
            Gate::MCRy { controls, target, theta } => Gate::MCRy { controls, target, theta: -theta },
            Gate::MCRz { controls, target, theta } => Gate::MCRz { controls, target, theta: -theta },
            g => g,
        }
    }

    /// Same gate with every wire relabeled through `f`.
    pub fn map_qubits(&self, f: impl Fn(usize) -> usize) -> Gate {
        let mc = |cs: &[Control]| -> Vec<Control> {
            cs.iter()
                .map(|c| Control { qubit: f(c.qubit), open: c.open })
                .collect()
        };
        match self {
            Gate::I(q) => Gate::I(f(*q)),
            Gate::H(q) => Gate::H(f(*q)),
            Gate::X(q) => Gate::X(f(*q)),
            Gate::SX(q) => Gate::SX(f(*q)),
            Gate::SXdg(q) => Gate::SXdg(f(*q)),
            Gate::S(q) => Gate::S(f(*q)),
            Gate::Sdg(q) => Gate::Sdg(f(*q)),
            Gate::T(q) => Gate::T(f(*q)),
            Gate::Tdg(q) => Gate::Tdg(f(*q)),
            Gate::Phase { qubit, lambda } => Gate::Phase { qubit: f(*qubit), lambda: *lambda },
            Gate::Ry { qubit, theta } => Gate::Ry { qubit: f(*qubit), theta: *theta },
            Gate::Rz { qubit, theta } => Gate::Rz { qubit: f(*qubit), theta: *theta },
            Gate::CNOT { control, target } => Gate::CNOT {
                control: f(*control),
                target: f(*target),
            },
            Gate::MCX { controls, target } => Gate::MCX {
                controls: mc(controls),
                target: f(*target),
            },
            Gate::MCRy { controls, target, theta } => Gate::MCRy {
                controls: mc(controls),
                target: f(*target),
                theta: *theta,
            },
            Gate::MCRz { controls, target, theta } => Gate::MCRz {
                controls: mc(controls),
                target: f(*target),
                theta: *theta,
            },
        }
    }
}

/// Ordered gate list over `num_qubits` wires, applied first to last.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_CIRCUIT_QUBITS {
            return Err(Error::TooManyQubits {
                requested: num_qubits,
                max: MAX_CIRCUIT_QUBITS,
            });
        }
        Ok(Circuit {
            num_qubits,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Circuit::new(num_qubits)?;
        c.extend(gates)?;
        Ok(c)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// Appends `other`, which must not use more wires than `self`.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        self.extend(other.gates.iter().cloned())
    }

    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Copy with more wires; existing indices are unchanged.
    pub fn widened(&self, num_qubits: usize) -> Result<Circuit> {
        if num_qubits < self.num_qubits {
            return Err(Error::DimensionMismatch {
                left: self.num_qubits,
                right: num_qubits,
            });
        }
        Circuit::from_gates(num_qubits, self.gates.clone())
    }

    /// Relabels wire `q` as `perm[q]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Circuit> {
        if perm.len() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                left: self.num_qubits,
                right: perm.len(),
            });
        }
        Circuit::from_gates(
            self.num_qubits,
            self.gates.iter().map(|g| g.map_qubits(|q| perm[q])).collect(),
        )
    }

    pub fn count(&self, name: &str) -> usize {
        self.gates.iter().filter(|g| g.name() == name).count()
    }

    pub fn cnot_count(&self) -> usize {
        self.count("CNOT")
    }

    pub fn is_decomposed(&self) -> bool {
        !self.gates.iter().any(Gate::is_multi_controlled)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_gates() {
        let mut c = Circuit::new(2).unwrap();
        assert!(matches!(
            c.push(Gate::CNOT { control: 1, target: 1 }),
            Err(Error::DuplicateQubit(1))
        ));
        assert!(matches!(
            c.push(Gate::X(2)),
            Err(Error::QubitOutOfRange { qubit: 2, num_qubits: 2 })
        ));
        assert!(matches!(
            c.push(Gate::Ry { qubit: 0, theta: f64::NAN }),
            Err(Error::NonFiniteAngle)
        ));
        assert!(c.is_empty());
    }

    #[test]
    fn inverse_reverses_and_negates() {
        let c = Circuit::from_gates(
            2,
            vec![
                Gate::SX(0),
                Gate::Ry { qubit: 1, theta: 0.5 },
                Gate::CNOT { control: 0, target: 1 },
            ],
        )
        .unwrap();
        let inv = c.inverse();
        assert_eq!(
            inv.gates(),
            &[
                Gate::CNOT { control: 0, target: 1 },
                Gate::Ry { qubit: 1, theta: -0.5 },
                Gate::SXdg(0),
            ]
        );
    }

    #[test]
    fn permuted_relabels_every_wire() {
        let c = Circuit::from_gates(
            3,
            vec![Gate::MCX {
                controls: vec![Control::filled(0), Control::open(1)],
                target: 2,
            }],
        )
        .unwrap();
        let p = c.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(
            p.gates()[0],
            Gate::MCX {
                controls: vec![Control::filled(2), Control::open(0)],
                target: 1,
            }
        );
    }
}
