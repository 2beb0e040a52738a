//! Lowering of multi-controlled gates to {1-qubit, CNOT}.

use crate::circuit::{Axis, Circuit, Control, Gate};
use crate::error::Result;

use super::mcx::{mc_rotation_gates, mcx_gates};

/// Removes pairs of X gates on one wire with nothing else on that wire in
/// between.
pub fn cancel_x_pairs(c: &Circuit) -> Circuit {
    let gates = c.gates();
    let mut alive = vec![true; gates.len()];
    let mut last: Vec<Vec<usize>> = vec![Vec::new(); c.num_qubits()];
    for (i, g) in gates.iter().enumerate() {
        if let Gate::X(q) = *g {
            if let Some(&j) = last[q].last() {
                if matches!(gates[j], Gate::X(_)) {
                    last[q].pop();
                    alive[i] = false;
                    alive[j] = false;
                    continue;
                }
            }
        }
        for q in g.qubits() {
            last[q].push(i);
        }
    }
    let kept = gates
        .iter()
        .zip(&alive)
        .filter(|(_, &a)| a)
        .map(|(g, _)| g.clone())
        .collect();
    Circuit::from_gates(c.num_qubits(), kept).expect("subset of a valid circuit")
}

/// Replaces open controls by X conjugation, then cancels adjacent X pairs.
pub fn materialize_polarity(c: &Circuit) -> Circuit {
    let mut gates = Vec::with_capacity(c.len());
    for g in c.gates() {
        let opens: Vec<usize> = g
            .controls()
            .iter()
            .filter(|ctl| ctl.open)
            .map(|ctl| ctl.qubit)
            .collect();
        if opens.is_empty() {
            gates.push(g.clone());
            continue;
        }
        let close = |cs: &[Control]| -> Vec<Control> {
            cs.iter().map(|ctl| Control::filled(ctl.qubit)).collect()
        };
        let closed = match g {
            Gate::MCX { controls, target } => Gate::MCX {
                controls: close(controls),
                target: *target,
            },
            Gate::MCRy { controls, target, theta } => Gate::MCRy {
                controls: close(controls),
                target: *target,
                theta: *theta,
            },
            Gate::MCRz { controls, target, theta } => Gate::MCRz {
                controls: close(controls),
                target: *target,
                theta: *theta,
            },
            _ => unreachable!("only multi-controlled gates carry open controls"),
        };
        gates.extend(opens.iter().map(|&q| Gate::X(q)));
        gates.push(closed);
        gates.extend(opens.iter().map(|&q| Gate::X(q)));
    }
    let c = Circuit::from_gates(c.num_qubits(), gates).expect("same wires");
    cancel_x_pairs(&c)
}

fn free_wire(num_qubits: usize, used: &[usize]) -> Option<usize> {
    (0..num_qubits).find(|q| !used.contains(q))
}

/// Expands every multi-controlled gate. Gadgets with four or more controls
/// borrow the lowest-index wire the gate does not touch as a dirty ancilla.
pub fn decompose(c: &Circuit) -> Result<Circuit> {
    let c = materialize_polarity(c);
    let mut out = Circuit::new(c.num_qubits())?;
    for g in c.gates() {
        let qubits = g.qubits();
        let ancilla = free_wire(c.num_qubits(), &qubits);
        let controls: Vec<usize> = g.controls().iter().map(|ctl| ctl.qubit).collect();
        match g {
            Gate::MCX { target, .. } => out.extend(mcx_gates(&controls, *target, ancilla)?)?,
            Gate::MCRy { target, theta, .. } => {
                out.extend(mc_rotation_gates(Axis::Y, &controls, *target, *theta, ancilla)?)?
            }
            Gate::MCRz { target, theta, .. } => {
                out.extend(mc_rotation_gates(Axis::Z, &controls, *target, *theta, ancilla)?)?
            }
            _ => out.push(g.clone())?,
        }
    }
    Ok(out)
}
