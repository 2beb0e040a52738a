//! In-place application of gates to amplitude vectors and matrix rows.

use crate::circuit::Gate;
use crate::matrix::{self, C64, ZERO};

/// A gate reduced to "apply `m` to one wire when the control bits match".
#[derive(Debug, Clone, Copy)]
pub(crate) struct Op {
    mask: usize,
    value: usize,
    bit: usize,
    action: Action,
}

#[derive(Debug, Clone, Copy)]
enum Action {
    Flip,
    Diagonal(C64, C64),
    General([C64; 4]),
}

fn bit_of(num_qubits: usize, qubit: usize) -> usize {
    1 << (num_qubits - 1 - qubit)
}

pub(crate) fn target_matrix(gate: &Gate) -> [C64; 4] {
    let m = match *gate {
        Gate::I(_) => matrix::identity2(),
        Gate::H(_) => matrix::hadamard(),
        Gate::X(_) | Gate::CNOT { .. } | Gate::MCX { .. } => matrix::pauli_x(),
        Gate::SX(_) => matrix::gate_sx(),
        Gate::SXdg(_) => matrix::gate_sxdg(),
        Gate::S(_) => matrix::gate_s(),
        Gate::Sdg(_) => matrix::gate_sdg(),
        Gate::T(_) => matrix::phase(std::f64::consts::FRAC_PI_4),
        Gate::Tdg(_) => matrix::phase(-std::f64::consts::FRAC_PI_4),
        Gate::Phase { lambda, .. } => matrix::phase(lambda),
        Gate::Ry { theta, .. } | Gate::MCRy { theta, .. } => matrix::rotation_ry(theta),
        Gate::Rz { theta, .. } | Gate::MCRz { theta, .. } => matrix::rotation_rz(theta),
    };
    let e = m.entries();
    [e[0], e[1], e[2], e[3]]
}

impl Op {
    pub(crate) fn new(gate: &Gate, num_qubits: usize) -> Op {
        let mut mask = 0;
        let mut value = 0;
        for c in gate.controls() {
            let b = bit_of(num_qubits, c.qubit);
            mask |= b;
            if !c.open {
                value |= b;
            }
        }
        let m = target_matrix(gate);
        let action = if matches!(gate, Gate::X(_) | Gate::CNOT { .. } | Gate::MCX { .. }) {
            Action::Flip
        } else if m[1] == ZERO && m[2] == ZERO {
            Action::Diagonal(m[0], m[3])
        } else {
            Action::General(m)
        };
        Op {
            mask,
            value,
            bit: bit_of(num_qubits, gate.target()),
            action,
        }
    }

    /// Pairs `(i0, i1)` of indices differing in the target bit whose control
    /// bits match.
    fn pairs(&self, dim: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let bit = self.bit;
        (0..dim)
            .filter(move |i| i & bit == 0 && i & self.mask == self.value)
            .map(move |i| (i, i | bit))
    }

    pub(crate) fn apply(&self, amps: &mut [C64]) {
        let dim = amps.len();
        match self.action {
            Action::Flip => {
                for (i0, i1) in self.pairs(dim) {
                    amps.swap(i0, i1);
                }
            }
            Action::Diagonal(a, d) => {
                for (i0, i1) in self.pairs(dim) {
                    amps[i0] *= a;
                    amps[i1] *= d;
                }
            }
            Action::General([a, b, c, d]) => {
                for (i0, i1) in self.pairs(dim) {
                    let x0 = amps[i0];
                    let x1 = amps[i1];
                    amps[i0] = a * x0 + b * x1;
                    amps[i1] = c * x0 + d * x1;
                }
            }
        }
    }

    /// Left-multiplies a row-major `dim × dim` matrix by the gate.
    pub(crate) fn apply_rows(&self, data: &mut [C64], dim: usize) {
        let pairs: Vec<(usize, usize)> = self.pairs(dim).collect();
        for (i0, i1) in pairs {
            let (head, tail) = data.split_at_mut(i1 * dim);
            let r0 = &mut head[i0 * dim..(i0 + 1) * dim];
            let r1 = &mut tail[..dim];
            match self.action {
                Action::Flip => r0.swap_with_slice(r1),
                Action::Diagonal(a, d) => {
                    r0.iter_mut().for_each(|x| *x *= a);
                    r1.iter_mut().for_each(|x| *x *= d);
                }
                Action::General([a, b, c, d]) => {
                    for (x0, x1) in r0.iter_mut().zip(r1.iter_mut()) {
                        let (v0, v1) = (*x0, *x1);
                        *x0 = a * v0 + b * v1;
                        *x1 = c * v0 + d * v1;
                    }
                }
            }
        }
    }
}
