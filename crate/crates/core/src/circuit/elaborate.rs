use super::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::kernel::{target_matrix, Op};
use crate::matrix::{identity2, UnitaryMatrix, MAX_DIM, ONE, ZERO};

/// Qubit limit for [`elaborate`].
pub const MAX_ELABORATE_QUBITS: usize = 12;

fn check_size(num_qubits: usize) -> Result<usize> {
    if num_qubits > MAX_ELABORATE_QUBITS {
        return Err(Error::TooManyQubits {
            requested: num_qubits,
            max: MAX_ELABORATE_QUBITS,
        });
    }
    Ok(1 << num_qubits)
}

/// Unitary of the whole circuit, `G_last · … · G_first`. Multi-controlled
/// gates act exactly on their control subspace.
pub fn elaborate(c: &Circuit) -> Result<UnitaryMatrix> {
    let dim = check_size(c.num_qubits())?;
    debug_assert!(dim <= MAX_DIM);
    let mut data = UnitaryMatrix::identity(dim)?.entries().to_vec();
    for g in c.gates() {
        Op::new(g, c.num_qubits()).apply_rows(&mut data, dim);
    }
    UnitaryMatrix::from_row_major(dim, data)
}

/// One gate lifted to the full register as
/// `P ⊗ M + (I − P) ⊗ I`, with `P` the projector onto the firing control pattern.
pub fn lift_gate(gate: &Gate, num_qubits: usize) -> Result<UnitaryMatrix> {
    check_size(num_qubits)?;
    gate.validate(num_qubits)?;
    let m = target_matrix(gate);
    let m = UnitaryMatrix::from_row_major(2, m.to_vec())?;
    let proj = |one: bool| {
        let d = if one { vec![ZERO, ZERO, ZERO, ONE] } else { vec![ONE, ZERO, ZERO, ZERO] };
        UnitaryMatrix::from_row_major(2, d).expect("2x2")
    };
    let controls = gate.controls();
    let factor = |q: usize, fire: bool| -> UnitaryMatrix {
        if let Some(c) = controls.iter().find(|c| c.qubit == q) {
            proj(!c.open)
        } else if q == gate.target() && fire {
            m.clone()
        } else {
            identity2()
        }
    };
    let mut fire = factor(0, true);
    let mut idle = factor(0, false);
    for q in 1..num_qubits {
        fire = fire.kron(&factor(q, true))?;
        idle = idle.kron(&factor(q, false))?;
    }
    let dim = 1 << num_qubits;
    let eye = UnitaryMatrix::identity(dim)?;
    let data = (0..dim * dim)
        .map(|i| fire.entries()[i] + eye.entries()[i] - idle.entries()[i])
        .collect();
    UnitaryMatrix::from_row_major(dim, data)
}

/// Reference elaboration by dense products of [`lift_gate`] matrices.
pub fn elaborate_by_kron(c: &Circuit) -> Result<UnitaryMatrix> {
    let dim = check_size(c.num_qubits())?;
    let mut u = UnitaryMatrix::identity(dim)?;
    for g in c.gates() {
        u = lift_gate(g, c.num_qubits())?.matmul(&u)?;
    }
    Ok(u)
}
