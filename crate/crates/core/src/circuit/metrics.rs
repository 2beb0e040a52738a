use std::collections::BTreeMap;

use serde::Serialize;

use super::Circuit;

/// Rotations with `|θ|` at or below this are treated as absent.
pub const ANGLE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metrics {
    pub cnot_count: usize,
    pub depth: usize,
    pub gate_count: usize,
    pub histogram: BTreeMap<String, usize>,
    /// Smallest `|θ|` over Ry/Rz/MCRy/MCRz gates; fixed-phase gates are excluded.
    pub min_abs_angle: Option<f64>,
    /// False while multi-controlled gates remain, in which case `cnot_count`
    /// is a pre-decomposition figure.
    pub decomposed: bool,
}

pub fn metrics(c: &Circuit) -> Metrics {
    let mut levels = vec![0usize; c.num_qubits()];
    let mut depth = 0;
    let mut histogram = BTreeMap::new();
    let mut min_abs_angle: Option<f64> = None;
    for g in c.gates() {
        let qs = g.qubits();
        let level = 1 + qs.iter().map(|&q| levels[q]).max().unwrap_or(0);
        for &q in &qs {
            levels[q] = level;
        }
        depth = depth.max(level);
        *histogram.entry(g.name().to_string()).or_insert(0) += 1;
        if let Some(theta) = g.angle() {
            let a = theta.abs();
            if a > ANGLE_FLOOR {
                min_abs_angle = Some(min_abs_angle.map_or(a, |m| m.min(a)));
            }
        }
    }
    Metrics {
        cnot_count: c.cnot_count(),
        depth,
        gate_count: c.len(),
        histogram,
        min_abs_angle,
        decomposed: c.is_decomposed(),
    }
}
