use std::fmt::Write as _;

use super::{Circuit, Gate};
use crate::error::{Error, Result};

/// OpenQASM 2.0 text for a decomposed circuit.
///
/// Both rotation families use the full-angle convention internally, so `ry`
/// and `rz` are emitted with doubled angles to match the standard half-angle
/// definitions (they agree up to global phase). Multi-controlled gates must be
/// decomposed first.
pub fn to_qasm(c: &Circuit) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "OPENQASM 2.0;").unwrap();
    writeln!(out, "include \"qelib1.inc\";").unwrap();
    writeln!(out, "qreg q[{}];", c.num_qubits()).unwrap();
    writeln!(out, "creg c[{}];", c.num_qubits()).unwrap();
    for g in c.gates() {
        let line = match *g {
            Gate::I(q) => format!("id q[{q}];"),
            Gate::H(q) => format!("h q[{q}];"),
            Gate::X(q) => format!("x q[{q}];"),
            Gate::SX(q) => format!("sx q[{q}];"),
            Gate::SXdg(q) => format!("sxdg q[{q}];"),
            Gate::S(q) => format!("s q[{q}];"),
            Gate::Sdg(q) => format!("sdg q[{q}];"),
            Gate::T(q) => format!("t q[{q}];"),
            Gate::Tdg(q) => format!("tdg q[{q}];"),
            Gate::Phase { qubit, lambda } => format!("u1({lambda:?}) q[{qubit}];"),
            Gate::Ry { qubit, theta } => format!("ry({:?}) q[{qubit}];", 2.0 * theta),
            Gate::Rz { qubit, theta } => format!("rz({:?}) q[{qubit}];", 2.0 * theta),
            Gate::CNOT { control, target } => format!("cx q[{control}],q[{target}];"),
            _ => return Err(Error::UnsupportedGate(format!("{} in OpenQASM export", g.name()))),
        };
        writeln!(out, "{line}").unwrap();
    }
    writeln!(out, "measure q -> c;").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Control;

    #[test]
    fn emits_header_and_doubled_angles() {
        let c = Circuit::from_gates(
            2,
            vec![
                Gate::H(0),
                Gate::Ry { qubit: 1, theta: 0.25 },
                Gate::Rz { qubit: 1, theta: -0.5 },
                Gate::CNOT { control: 0, target: 1 },
            ],
        )
        .unwrap();
        let q = to_qasm(&c).unwrap();
        assert!(q.starts_with("OPENQASM 2.0;"));
        assert!(q.contains("ry(0.5) q[1];"));
        assert!(q.contains("rz(-1.0) q[1];"));
        assert!(q.contains("cx q[0],q[1];"));
    }

    #[test]
    fn rejects_multi_controlled_gates() {
        let c = Circuit::from_gates(
            3,
            vec![Gate::MCX {
                controls: vec![Control::filled(0), Control::filled(1)],
                target: 2,
            }],
        )
        .unwrap();
        assert!(matches!(to_qasm(&c), Err(Error::UnsupportedGate(_))));
    }
}
