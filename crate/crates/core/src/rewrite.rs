//! Rewriting into the basis {CNOT, I, Rz, SX, X}.
//!
//! `Ry(θ) = SX† · Rz(θ) · SX` holds exactly, so each Ry becomes SX, Rz(θ),
//! SX† in circuit order. Back-to-back SX†·SX pairs on a wire then cancel, which
//! across repeated symbols leaves one SX at the start and one SX† at the end.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

/// Gate names accepted by [`basis_check`].
pub const BASIS: [&str; 5] = ["CNOT", "I", "RZ", "SX", "X"];

/// Per-gate conjugation without cancellation.
pub fn conjugate_ry(c: &Circuit) -> Result<Circuit> {
    let mut out = Circuit::new(c.num_qubits())?;
    for g in c.gates() {
        match *g {
            Gate::Ry { qubit, theta } => out.extend([
                Gate::SX(qubit),
                Gate::Rz { qubit, theta },
                Gate::SXdg(qubit),
            ])?,
            Gate::MCX { .. } | Gate::MCRy { .. } | Gate::MCRz { .. } => {
                return Err(Error::UnsupportedGate(format!(
                    "{} must be decomposed before rewriting",
                    g.name()
                )))
            }
            _ => out.push(g.clone())?,
        }
    }
    Ok(out)
}

/// Whether `g` commutes with SX on wire `q`.
fn commutes_with_sx(g: &Gate, q: usize) -> bool {
    if !g.qubits().contains(&q) {
        return true;
    }
    match *g {
        Gate::X(_) | Gate::I(_) | Gate::SX(_) | Gate::SXdg(_) => true,
        Gate::CNOT { target, .. } => target == q,
        _ => false,
    }
}

/// Cancels each SX† against the next SX on its wire when only gates that
/// commute with SX lie between them.
pub fn cancel_sx_pairs(c: &Circuit) -> Circuit {
    let gates = c.gates();
    let mut alive = vec![true; gates.len()];
    for i in 0..gates.len() {
        let Gate::SXdg(q) = gates[i] else { continue };
        if !alive[i] {
            continue;
        }
        for j in i + 1..gates.len() {
            if !alive[j] {
                continue;
            }
            if gates[j] == Gate::SX(q) {
                alive[i] = false;
                alive[j] = false;
                break;
            }
            if !commutes_with_sx(&gates[j], q) || gates[j] == Gate::SXdg(q) {
                break;
            }
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

/// Ry → SX·Rz·SX† followed by SX pair cancellation.
pub fn rewrite_to_rz_basis(c: &Circuit) -> Result<Circuit> {
    Ok(cancel_sx_pairs(&conjugate_ry(c)?))
}

/// Expresses the remaining fixed gates in the basis, up to global phase:
/// `H ≅ Rz(π/4)·SX·Rz(π/4)`, `SX† = X·SX`, `S ≅ Rz(π/4)`, `T ≅ Rz(π/8)`,
/// `P(λ) ≅ Rz(λ/2)`.
pub fn lower_to_basis(c: &Circuit) -> Result<Circuit> {
    let mut out = Circuit::new(c.num_qubits())?;
    let rz = |qubit: usize, theta: f64| Gate::Rz { qubit, theta };
    for g in c.gates() {
        match *g {
            Gate::H(q) => out.extend([rz(q, FRAC_PI_4), Gate::SX(q), rz(q, FRAC_PI_4)])?,
            Gate::SXdg(q) => out.extend([Gate::SX(q), Gate::X(q)])?,
            Gate::S(q) => out.push(rz(q, FRAC_PI_4))?,
            Gate::Sdg(q) => out.push(rz(q, -FRAC_PI_4))?,
            Gate::T(q) => out.push(rz(q, FRAC_PI_8))?,
            Gate::Tdg(q) => out.push(rz(q, -FRAC_PI_8))?,
            Gate::Phase { qubit, lambda } => out.push(rz(qubit, lambda / 2.0))?,
            Gate::Ry { .. } => {
                return Err(Error::UnsupportedGate("RY must be rewritten before lowering".into()))
            }
            Gate::MCX { .. } | Gate::MCRy { .. } | Gate::MCRz { .. } => {
                return Err(Error::UnsupportedGate(format!(
                    "{} must be decomposed before lowering",
                    g.name()
                )))
            }
            _ => out.push(g.clone())?,
        }
    }
    Ok(out)
}

/// Every gate is one of [`BASIS`].
pub fn basis_check(c: &Circuit) -> bool {
    c.gates().iter().all(|g| BASIS.contains(&g.name()))
}
