//! Multi-controlled X and multi-controlled rotation gadgets over
//! {1-qubit, CNOT}.

use std::f64::consts::PI;

use crate::circuit::{Axis, Circuit, Gate};
use crate::error::{Error, Result};

fn cx(control: usize, target: usize) -> Gate {
    Gate::CNOT { control, target }
}

fn p8(qubit: usize, sign: f64) -> Gate {
    Gate::Phase {
        qubit,
        lambda: sign * PI / 8.0,
    }
}

/// Exact Toffoli with 6 CNOTs.
pub fn toffoli_gates(a: usize, b: usize, t: usize) -> Vec<Gate> {
    vec![
        Gate::H(t),
        cx(b, t),
        Gate::Tdg(t),
        cx(a, t),
        Gate::T(t),
        cx(b, t),
        Gate::Tdg(t),
        cx(a, t),
        Gate::T(b),
        Gate::T(t),
        Gate::H(t),
        cx(a, b),
        Gate::T(a),
        Gate::Tdg(b),
        cx(a, b),
    ]
}

/// Exact triple-controlled X with 14 CNOTs.
pub fn c3x_gates(q0: usize, q1: usize, q2: usize, t: usize) -> Vec<Gate> {
    vec![
        Gate::H(t),
        p8(q0, 1.0),
        p8(q1, 1.0),
        p8(q2, 1.0),
        p8(t, 1.0),
        cx(q0, q1),
        p8(q1, -1.0),
        cx(q0, q1),
        cx(q1, q2),
        p8(q2, -1.0),
        cx(q0, q2),
        p8(q2, 1.0),
        cx(q1, q2),
        p8(q2, -1.0),
        cx(q0, q2),
        cx(q2, t),
        p8(t, -1.0),
        cx(q1, t),
        p8(t, 1.0),
        cx(q2, t),
        p8(t, -1.0),
        cx(q0, t),
        p8(t, 1.0),
        cx(q2, t),
        p8(t, -1.0),
        cx(q1, t),
        p8(t, 1.0),
        cx(q2, t),
        p8(t, -1.0),
        cx(q0, t),
        Gate::H(t),
    ]
}

/// Toffoli up to a diagonal phase on its own wires, 3 CNOTs.
pub fn rccx_gates(a: usize, b: usize, t: usize) -> Vec<Gate> {
    vec![
        Gate::H(t),
        Gate::T(t),
        cx(b, t),
        Gate::Tdg(t),
        cx(a, t),
        Gate::T(t),
        cx(b, t),
        Gate::Tdg(t),
        Gate::H(t),
    ]
}

/// Triple-controlled X up to a diagonal phase on its own wires, 6 CNOTs.
pub fn rc3x_gates(q0: usize, q1: usize, q2: usize, t: usize) -> Vec<Gate> {
    vec![
        Gate::H(t),
        Gate::T(t),
        cx(q2, t),
        Gate::Tdg(t),
        Gate::H(t),
        cx(q0, t),
        Gate::T(t),
        cx(q1, t),
        Gate::Tdg(t),
        cx(q0, t),
        Gate::T(t),
        cx(q1, t),
        Gate::Tdg(t),
        Gate::H(t),
        Gate::T(t),
        cx(q2, t),
        Gate::Tdg(t),
        Gate::H(t),
    ]
}

/// Exact X on `target` controlled by all of `controls` (filled).
///
/// From four controls on, `ancilla` must name a further wire. Its state is
/// arbitrary and restored: the first three controls toggle it through a
/// relative-phase gadget, and the remaining controls plus the ancilla fire
/// the target twice around the uncompute.
pub fn mcx_gates(controls: &[usize], target: usize, ancilla: Option<usize>) -> Result<Vec<Gate>> {
    match *controls {
        [] => Ok(vec![Gate::X(target)]),
        [c] => Ok(vec![cx(c, target)]),
        [a, b] => Ok(toffoli_gates(a, b, target)),
        [a, b, c] => Ok(c3x_gates(a, b, c, target)),
        _ => {
            let a = ancilla.ok_or(Error::MissingAncilla {
                controls: controls.len(),
            })?;
            if a == target || controls.contains(&a) {
                return Err(Error::DuplicateQubit(a));
            }
            let (c1, c2) = controls.split_at(3);
            let toggle = rc3x_gates(c1[0], c1[1], c1[2], a);
            let mut inner: Vec<usize> = c2.to_vec();
            inner.push(a);
            let fire = mcx_gates(&inner, target, Some(c1[0]))?;
            let mut out = toggle.clone();
            out.extend(fire.iter().cloned());
            out.extend(toggle.iter().rev().map(Gate::inverse));
            out.extend(fire);
            Ok(out)
        }
    }
}

/// Rotation on `target` controlled by all of `controls` (filled), as
/// `R(θ/2)`, MCX, `R(−θ/2)`, MCX. Relies only on `X·R(a)·X = R(−a)`.
pub fn mc_rotation_gates(
    axis: Axis,
    controls: &[usize],
    target: usize,
    theta: f64,
    ancilla: Option<usize>,
) -> Result<Vec<Gate>> {
    if controls.is_empty() {
        return Ok(vec![Gate::rotation(axis, target, theta)]);
    }
    let flip = mcx_gates(controls, target, ancilla)?;
    let mut out = vec![Gate::rotation(axis, target, theta / 2.0)];
    out.extend(flip.iter().cloned());
    out.push(Gate::rotation(axis, target, -theta / 2.0));
    out.extend(flip);
    Ok(out)
}

fn canonical_ancilla(g: usize, ancilla_available: bool) -> (usize, Option<usize>) {
    if ancilla_available {
        (g + 2, Some(g + 1))
    } else {
        (g + 1, None)
    }
}

/// `g`-controlled X with controls `0..g`, target `g`, and the ancilla (when
/// available) on wire `g + 1`.
pub fn decompose_mcx(g: usize, ancilla_available: bool) -> Result<Circuit> {
    if g == 0 {
        return Err(Error::InvalidParameter("MCX needs at least one control".into()));
    }
    let (n, ancilla) = canonical_ancilla(g, ancilla_available);
    let controls: Vec<usize> = (0..g).collect();
    Circuit::from_gates(n, mcx_gates(&controls, g, ancilla)?)
}

/// `g`-controlled Ry(θ) in the layout of [`decompose_mcx`].
pub fn decompose_mcry(g: usize, theta: f64, ancilla_available: bool) -> Result<Circuit> {
    if g == 0 {
        return Err(Error::InvalidParameter("MCRy needs at least one control".into()));
    }
    if !theta.is_finite() {
        return Err(Error::NonFiniteAngle);
    }
    let (n, ancilla) = canonical_ancilla(g, ancilla_available);
    let controls: Vec<usize> = (0..g).collect();
    Circuit::from_gates(n, mc_rotation_gates(Axis::Y, &controls, g, theta, ancilla)?)
}
