//! Pseudo circuits laid out on a line of qubits.
//!
//! The target walks along the line. Each symbol starts with a rotation
//! controlled by the end-of-line neighbour behind the walk (2 CNOTs), moves
//! the target past `n − 3` controls with SWAP-fused rotations (3 CNOTs each),
//! and ends with the control at the far end (2 CNOTs). The next symbol walks
//! back. All rotations are `Rz` between `SX`/`SX†` framing of the target.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pseudo::PseudoSpec;

/// Line of `n` qubits with edges `(i, i + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LnnTopology {
    pub n: usize,
}

impl LnnTopology {
    pub fn new(n: usize) -> Self {
        LnnTopology { n }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a.abs_diff(b) == 1 && a.max(b) < self.n
    }

    /// Every two-qubit gate acts on neighbouring wires.
    pub fn respects(&self, c: &Circuit) -> bool {
        c.num_qubits() <= self.n
            && c.gates().iter().all(|g| {
                let qs = g.qubits();
                match qs.len() {
                    1 => true,
                    2 => self.adjacent(qs[0], qs[1]),
                    _ => false,
                }
            })
    }
}

/// Gates that open and close the target wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TargetFraming {
    /// `SX` … `SX†`: the Rz rotations act as the Ry rotations of the pseudo
    /// construction.
    #[default]
    Sx,
    /// `S` … `S†`. The diagonal framing commutes with Rz, so the target only
    /// picks up phases and acceptance follows `|avg_x e^{−i m ξ(x)}|²`
    /// rather than the rotation model.
    S,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum RoutedOp {
    /// Controlled `Rz(theta)` with an extra `Rz(free)` on the target.
    Plain {
        control: usize,
        target: usize,
        theta: f64,
        free: f64,
    },
    /// [`RoutedOp::Plain`] followed by a SWAP of control and target.
    Fused {
        control: usize,
        target: usize,
        theta: f64,
        free: f64,
    },
}

impl RoutedOp {
    fn gates(&self) -> Vec<Gate> {
        match *self {
            RoutedOp::Plain {
                control,
                target,
                theta,
                free,
            } => vec![
                Gate::Rz {
                    qubit: target,
                    theta: theta / 2.0 + free,
                },
                Gate::CNOT { control, target },
                Gate::Rz {
                    qubit: target,
                    theta: -theta / 2.0,
                },
                Gate::CNOT { control, target },
            ],
            RoutedOp::Fused {
                control,
                target,
                theta,
                free,
            } => vec![
                Gate::Rz {
                    qubit: target,
                    theta: theta / 2.0 + free,
                },
                Gate::CNOT { control, target },
                Gate::Rz {
                    qubit: target,
                    theta: -theta / 2.0,
                },
                Gate::CNOT {
                    control: target,
                    target: control,
                },
                Gate::CNOT { control, target },
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoutedCircuit {
    pub circuit: Circuit,
    /// Physical position of the target, initially and after every rotation.
    pub target_trace: Vec<usize>,
    pub cnot_count: usize,
    /// `initial_layout[logical] = physical`; logical wire `n − 1` is the target.
    pub initial_layout: Vec<usize>,
    pub final_layout: Vec<usize>,
    pub symbols: usize,
    pub merged: bool,
    framing: TargetFraming,
    ops: Vec<RoutedOp>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LnnOptions {
    /// Physical start of the target: 1 or `n − 2` (default `n − 2`).
    pub initial_target: Option<usize>,
    pub framing: TargetFraming,
}

/// `(2 + 3(n − 3))·j + 2`.
pub fn predicted_cnots(n: usize, j: usize) -> Result<usize> {
    if n < 3 || j < 1 {
        return Err(Error::InvalidParameter(format!(
            "the count needs n ≥ 3 and j ≥ 1 (got n = {n}, j = {j})"
        )));
    }
    Ok((2 + 3 * (n - 3)) * j + 2)
}

/// Start positions with the fewest target moves.
pub fn optimal_start_positions(n: usize) -> Vec<usize> {
    let mut v = vec![1, n.saturating_sub(2)];
    v.dedup();
    v
}

/// Routes `j` symbols of `spec` onto a line of `n = log d + 1` qubits.
/// Symbols are kept separate; see [`merge_across_symbols`].
pub fn route_pseudo_lnn(spec: &PseudoSpec, j: usize, n: usize, opts: LnnOptions) -> Result<RoutedCircuit> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("LNN routing needs n ≥ 3, got {n}")));
    }
    if spec.xis().len() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: spec.xis().len(),
        });
    }
    let start = opts.initial_target.unwrap_or(n - 2);
    if !optimal_start_positions(n).contains(&start) {
        return Err(Error::InvalidParameter(format!(
            "initial target {start} must be 1 or {} on a {n}-qubit line",
            n - 2
        )));
    }
    let target_logical = n - 1;
    let mut initial_layout = vec![0; n];
    let mut free = (0..n).filter(|&p| p != start);
    for slot in initial_layout.iter_mut().take(n - 1) {
        *slot = free.next().expect("n − 1 free positions");
    }
    initial_layout[target_logical] = start;
    let mut phys_to_logical = vec![0; n];
    for (l, &p) in initial_layout.iter().enumerate() {
        phys_to_logical[p] = l;
    }
    let xi = |logical_control: usize| spec.xis()[logical_control + 1];

    let mut ops = Vec::new();
    let mut trace = vec![start];
    let mut pos = start;
    let mut dir: isize = if start == n - 2 { -1 } else { 1 };
    let step = |p: usize, d: isize| (p as isize + d) as usize;
    for _ in 0..j {
        let first = step(pos, -dir);
        ops.push(RoutedOp::Plain {
            control: first,
            target: pos,
            theta: xi(phys_to_logical[first]),
            free: spec.xis()[0],
        });
        trace.push(pos);
        for _ in 0..n - 3 {
            let next = step(pos, dir);
            ops.push(RoutedOp::Fused {
                control: next,
                target: pos,
                theta: xi(phys_to_logical[next]),
                free: 0.0,
            });
            phys_to_logical.swap(pos, next);
            pos = next;
            trace.push(pos);
        }
        let last = step(pos, dir);
        ops.push(RoutedOp::Plain {
            control: last,
            target: pos,
            theta: xi(phys_to_logical[last]),
            free: 0.0,
        });
        trace.push(pos);
        dir = -dir;
    }
    let mut final_layout = vec![0; n];
    for (p, &l) in phys_to_logical.iter().enumerate() {
        final_layout[l] = p;
    }
    build(n, ops, trace, initial_layout, final_layout, j, false, opts.framing)
}

#[allow(clippy::too_many_arguments)]
fn build(
    n: usize,
    ops: Vec<RoutedOp>,
    target_trace: Vec<usize>,
    initial_layout: Vec<usize>,
    final_layout: Vec<usize>,
    symbols: usize,
    merged: bool,
    framing: TargetFraming,
) -> Result<RoutedCircuit> {
    let target_logical = n - 1;
    let mut c = Circuit::new(n)?;
    for (l, &p) in initial_layout.iter().enumerate() {
        if l == target_logical {
            c.push(match framing {
                TargetFraming::Sx => Gate::SX(p),
                TargetFraming::S => Gate::S(p),
            })?;
        } else {
            c.push(Gate::H(p))?;
        }
    }
    for op in &ops {
        c.extend(op.gates())?;
    }
    for (l, &p) in final_layout.iter().enumerate() {
        if l == target_logical {
            c.push(match framing {
                TargetFraming::Sx => Gate::SXdg(p),
                TargetFraming::S => Gate::Sdg(p),
            })?;
        } else {
            c.push(Gate::H(p))?;
        }
    }
    let cnot_count = c.cnot_count();
    Ok(RoutedCircuit {
        circuit: c,
        target_trace,
        cnot_count,
        initial_layout,
        final_layout,
        symbols,
        merged,
        framing,
        ops,
    })
}

/// Joins the last rotation of each symbol with the first rotation of the
/// next. Both are plain rotations on the same control and target with
/// nothing in between, so they combine into one rotation by the summed
/// angle, which saves two CNOTs per boundary.
pub fn merge_across_symbols(rc: &RoutedCircuit) -> Result<RoutedCircuit> {
    let mut ops: Vec<RoutedOp> = Vec::with_capacity(rc.ops.len());
    let mut trace = vec![rc.target_trace[0]];
    for (op, &pos) in rc.ops.iter().zip(&rc.target_trace[1..]) {
        if let (
            Some(RoutedOp::Plain {
                control: c0,
                target: t0,
                theta: a0,
                free: f0,
            }),
            RoutedOp::Plain {
                control,
                target,
                theta,
                free,
            },
        ) = (ops.last().copied(), *op)
        {
            if c0 == control && t0 == target {
                *ops.last_mut().unwrap() = RoutedOp::Plain {
                    control,
                    target,
                    theta: a0 + theta,
                    free: f0 + free,
                };
                continue;
            }
        }
        ops.push(*op);
        trace.push(pos);
    }
    build(
        rc.initial_layout.len(),
        ops,
        trace,
        rc.initial_layout.clone(),
        rc.final_layout.clone(),
        rc.symbols,
        true,
        rc.framing,
    )
}

/// Route-and-merge in one step.
pub fn route_pseudo_lnn_merged(spec: &PseudoSpec, j: usize, n: usize, opts: LnnOptions) -> Result<RoutedCircuit> {
    merge_across_symbols(&route_pseudo_lnn(spec, j, n, opts)?)
}

/// Generic line routing of a decomposed circuit: before each CNOT whose wires
/// are not neighbours, the control is moved toward the target by standalone
/// 3-CNOT SWAPs. Returns the routed circuit and `final_layout[logical] = physical`.
pub fn route_with_swaps(c: &Circuit) -> Result<(Circuit, Vec<usize>)> {
    let n = c.num_qubits();
    let mut layout: Vec<usize> = (0..n).collect();
    let mut at: Vec<usize> = (0..n).collect();
    let mut out = Circuit::new(n)?;
    for g in c.gates() {
        match *g {
            Gate::CNOT { control, target } => {
                let pt = layout[target];
                loop {
                    let pc = layout[control];
                    if pc.abs_diff(pt) <= 1 {
                        break;
                    }
                    let next = if pc < pt { pc + 1 } else { pc - 1 };
                    out.extend([
                        Gate::CNOT { control: pc, target: next },
                        Gate::CNOT { control: next, target: pc },
                        Gate::CNOT { control: pc, target: next },
                    ])?;
                    let other = at[next];
                    at.swap(pc, next);
                    layout[control] = next;
                    layout[other] = pc;
                }
                out.push(Gate::CNOT {
                    control: layout[control],
                    target: pt,
                })?;
            }
            _ if g.is_single_qubit() => out.push(g.map_qubits(|q| layout[q]))?,
            _ => {
                return Err(Error::UnsupportedGate(format!(
                    "{} must be decomposed before routing",
                    g.name()
                )))
            }
        }
    }
    Ok((out, layout))
}
