//! Line-based circuit format.
//!
//! ```text
//! qubits 3
//! H 0
//! CNOT 0 1
//! RY 2 0.7853981633974483
//! MCRY !0 1 2 0.5
//! ```
//!
//! Multi-controlled gates list their controls, then the target; `!` marks an
//! open control. Angles are printed with `{:?}` so they round-trip exactly.
//! `#` starts a comment.

use std::fmt::Write as _;

use super::{Circuit, Control, Gate};
use crate::error::{Error, Result};

pub fn write_circuit(c: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "qubits {}", c.num_qubits()).unwrap();
    for g in c.gates() {
        out.push_str(g.name());
        match g {
            Gate::Phase { qubit, lambda } => write!(out, " {qubit} {lambda:?}").unwrap(),
            Gate::Ry { qubit, theta } | Gate::Rz { qubit, theta } => {
                write!(out, " {qubit} {theta:?}").unwrap()
            }
            Gate::CNOT { control, target } => write!(out, " {control} {target}").unwrap(),
            Gate::MCX { controls, target } => {
                write_controls(&mut out, controls);
                write!(out, " {target}").unwrap();
            }
            Gate::MCRy { controls, target, theta } | Gate::MCRz { controls, target, theta } => {
                write_controls(&mut out, controls);
                write!(out, " {target} {theta:?}").unwrap();
            }
            _ => write!(out, " {}", g.target()).unwrap(),
        }
        out.push('\n');
    }
    out
}

fn write_controls(out: &mut String, controls: &[Control]) {
    for c in controls {
        let mark = if c.open { "!" } else { "" };
        write!(out, " {mark}{}", c.qubit).unwrap();
    }
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let Some(c) = circuit.as_mut() else {
            if tokens.len() != 2 || tokens[0] != "qubits" {
                return Err(err("expected `qubits N` header".into()));
            }
            let n = parse_index(tokens[1]).map_err(err)?;
            circuit = Some(Circuit::new(n)?);
            continue;
        };
        let gate = parse_gate(&tokens).map_err(err)?;
        c.push(gate).map_err(|e| Error::Parse {
            line: line_no,
            msg: e.to_string(),
        })?;
    }
    circuit.ok_or(Error::Parse {
        line: 0,
        msg: "missing `qubits N` header".into(),
    })
}

fn parse_index(tok: &str) -> std::result::Result<usize, String> {
    tok.parse::<usize>()
        .map_err(|_| format!("invalid qubit index `{tok}`"))
}

fn parse_angle(tok: &str) -> std::result::Result<f64, String> {
    let v: f64 = tok.parse().map_err(|_| format!("invalid angle `{tok}`"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("non-finite angle `{tok}`"))
    }
}

fn parse_control(tok: &str) -> std::result::Result<Control, String> {
    match tok.strip_prefix('!') {
        Some(rest) => Ok(Control::open(parse_index(rest)?)),
        None => Ok(Control::filled(parse_index(tok)?)),
    }
}

fn parse_gate(tokens: &[&str]) -> std::result::Result<Gate, String> {
    let kind = tokens[0];
    let args = &tokens[1..];
    let arity = |n: usize| -> std::result::Result<(), String> {
        if args.len() == n {
            Ok(())
        } else {
            Err(format!("{kind} takes {n} arguments, got {}", args.len()))
        }
    };
    let single = |f: fn(usize) -> Gate| -> std::result::Result<Gate, String> {
        arity(1)?;
        Ok(f(parse_index(args[0])?))
    };
    match kind {
        "I" => single(Gate::I),
        "H" => single(Gate::H),
        "X" => single(Gate::X),
        "SX" => single(Gate::SX),
        "SXDG" => single(Gate::SXdg),
        "S" => single(Gate::S),
        "SDG" => single(Gate::Sdg),
        "T" => single(Gate::T),
        "TDG" => single(Gate::Tdg),
        "P" => {
            arity(2)?;
            Ok(Gate::Phase {
                qubit: parse_index(args[0])?,
                lambda: parse_angle(args[1])?,
            })
        }
        "RY" | "RZ" => {
            arity(2)?;
            let qubit = parse_index(args[0])?;
            let theta = parse_angle(args[1])?;
            Ok(if kind == "RY" { Gate::Ry { qubit, theta } } else { Gate::Rz { qubit, theta } })
        }
        "CNOT" => {
            arity(2)?;
            Ok(Gate::CNOT {
                control: parse_index(args[0])?,
                target: parse_index(args[1])?,
            })
        }
        "MCX" => {
            if args.is_empty() {
                return Err("MCX needs a target".into());
            }
            let (target, controls) = args.split_last().unwrap();
            Ok(Gate::MCX {
                controls: controls.iter().map(|t| parse_control(t)).collect::<std::result::Result<_, _>>()?,
                target: parse_index(target)?,
            })
        }
        "MCRY" | "MCRZ" => {
            if args.len() < 2 {
                return Err(format!("{kind} needs a target and an angle"));
            }
            let theta = parse_angle(args[args.len() - 1])?;
            let target = parse_index(args[args.len() - 2])?;
            let controls = args[..args.len() - 2]
                .iter()
                .map(|t| parse_control(t))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            Ok(if kind == "MCRY" {
                Gate::MCRy { controls, target, theta }
            } else {
                Gate::MCRz { controls, target, theta }
            })
        }
        other => Err(format!("unknown gate `{other}`")),
    }
}
