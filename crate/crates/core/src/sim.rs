//! Statevector simulation with optional per-CNOT Pauli noise.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::kernel::Op;
use crate::matrix::{C64, I, ONE, ZERO};

/// Qubit limit for simulation.
pub const MAX_SIM_QUBITS: usize = 12;

/// Amplitudes below this probability are left out of `outcome_probs`.
const OUTCOME_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        if num_qubits > MAX_SIM_QUBITS {
            return Err(Error::TooManyQubits {
                requested: num_qubits,
                max: MAX_SIM_QUBITS,
            });
        }
        let mut amps = vec![ZERO; 1 << num_qubits];
        amps[0] = ONE;
        Ok(StateVector { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        Op::new(gate, self.num_qubits).apply(&mut self.amps);
        Ok(())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }
}

fn bitstring(index: usize, width: usize) -> String {
    (0..width)
        .rev()
        .map(|b| if (index >> b) & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn outcome_map(probs: &[f64], width: usize) -> BTreeMap<String, f64> {
    probs
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > OUTCOME_FLOOR)
        .map(|(i, &p)| (bitstring(i, width), p))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    /// Final amplitudes; absent for noisy runs, which mix many trajectories.
    pub amplitudes: Option<Vec<C64>>,
    /// Basis label (wire 0 first) to probability.
    pub outcome_probs: BTreeMap<String, f64>,
    /// Probability of observing all zeros.
    pub accept_prob: f64,
}

pub fn simulate(c: &Circuit) -> Result<SimResult> {
    let mut sv = StateVector::zero(c.num_qubits())?;
    for g in c.gates() {
        sv.apply(g)?;
    }
    let probs = sv.probabilities();
    Ok(SimResult {
        accept_prob: probs[0],
        outcome_probs: outcome_map(&probs, c.num_qubits()),
        amplitudes: Some(sv.amps),
    })
}

/// After every CNOT, with probability `cnot_depolarizing_rate`, one of the
/// 16 two-qubit Paulis (identity included) is applied uniformly at random to
/// its wires.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub cnot_depolarizing_rate: f64,
    pub shots: u64,
    pub seed: u64,
}

impl NoiseModel {
    pub fn new(cnot_depolarizing_rate: f64, shots: u64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&cnot_depolarizing_rate) {
            return Err(Error::InvalidParameter(format!(
                "noise rate {cnot_depolarizing_rate} outside [0, 1]"
            )));
        }
        if shots == 0 {
            return Err(Error::InvalidParameter("shots must be positive".into()));
        }
        Ok(NoiseModel {
            cnot_depolarizing_rate,
            shots,
            seed,
        })
    }

    /// Generator for trajectory `index`: the model seed on stream `index`.
    fn trajectory_rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

fn apply_pauli(amps: &mut [C64], num_qubits: usize, qubit: usize, pauli: usize) {
    let bit = 1 << (num_qubits - 1 - qubit);
    for i0 in (0..amps.len()).filter(|i| i & bit == 0) {
        let i1 = i0 | bit;
        match pauli {
            1 => amps.swap(i0, i1),
            2 => {
                let (x0, x1) = (amps[i0], amps[i1]);
                amps[i0] = -I * x1;
                amps[i1] = I * x0;
            }
            3 => amps[i1] = -amps[i1],
            _ => {}
        }
    }
}

/// Draws this trajectory's errors as `(gate index, control, target, pauli)`.
fn draw_errors(gates: &[Gate], rate: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize, usize, usize)> {
    let mut errors = Vec::new();
    for (k, g) in gates.iter().enumerate() {
        if let Gate::CNOT { control, target } = *g {
            let u: f64 = rng.gen();
            if u < rate {
                errors.push((k, control, target, rng.gen_range(0..16)));
            }
        }
    }
    errors
}

fn apply_error(amps: &mut [C64], n: usize, control: usize, target: usize, pauli: usize) {
    apply_pauli(amps, n, control, pauli / 4);
    apply_pauli(amps, n, target, pauli % 4);
}

/// Trajectory average of the full outcome distribution.
pub fn simulate_noisy(c: &Circuit, nm: &NoiseModel) -> Result<SimResult> {
    let n = c.num_qubits();
    let base = StateVector::zero(n)?;
    let ops: Vec<Op> = c.gates().iter().map(|g| Op::new(g, n)).collect();
    let mut total = vec![0.0; base.amps.len()];
    for traj in 0..nm.shots {
        let mut rng = nm.trajectory_rng(traj);
        let errors = draw_errors(c.gates(), nm.cnot_depolarizing_rate, &mut rng);
        let mut next = errors.iter().peekable();
        let mut amps = base.amps.clone();
        for (k, op) in ops.iter().enumerate() {
            op.apply(&mut amps);
            while let Some(&&(ek, ctl, tgt, pauli)) = next.peek() {
                if ek != k {
                    break;
                }
                apply_error(&mut amps, n, ctl, tgt, pauli);
                next.next();
            }
        }
        for (t, a) in total.iter_mut().zip(&amps) {
            *t += a.norm_sqr();
        }
    }
    let probs: Vec<f64> = total.iter().map(|t| t / nm.shots as f64).collect();
    Ok(SimResult {
        amplitudes: None,
        accept_prob: probs[0],
        outcome_probs: outcome_map(&probs, n),
    })
}

/// Largest cached state table (amplitudes) used by [`noisy_accept_prob`].
const CACHE_LIMIT: usize = 1 << 24;

/// Trajectory-averaged acceptance probability. Uses the same random draws as
/// [`simulate_noisy`], but only re-simulates the span between the first and
/// last error of each trajectory: noiseless prefix states and the noiseless
/// suffix projected back onto `|0…0⟩` are cached.
pub fn noisy_accept_prob(c: &Circuit, nm: &NoiseModel) -> Result<f64> {
    let n = c.num_qubits();
    let base = StateVector::zero(n)?;
    let dim = base.amps.len();
    let gates = c.gates();
    if (gates.len() + 1) * dim > CACHE_LIMIT {
        return Ok(simulate_noisy(c, nm)?.accept_prob);
    }
    let ops: Vec<Op> = gates.iter().map(|g| Op::new(g, n)).collect();
    let inverse_ops: Vec<Op> = gates.iter().map(|g| Op::new(&g.inverse(), n)).collect();

    let mut forward = Vec::with_capacity(gates.len() + 1);
    let mut amps = base.amps.clone();
    forward.push(amps.clone());
    for op in &ops {
        op.apply(&mut amps);
        forward.push(amps.clone());
    }
    // backward[k] = (G_last … G_{k+1})† |0…0⟩, so <0|G_last … G_{k+1}|ψ> = <backward[k]|ψ>.
    let mut backward = vec![Vec::new(); gates.len()];
    let mut amps = base.amps.clone();
    for k in (0..gates.len()).rev() {
        backward[k] = amps.clone();
        inverse_ops[k].apply(&mut amps);
    }
    let overlap = |b: &[C64], v: &[C64]| -> f64 {
        b.iter()
            .zip(v)
            .map(|(x, y)| x.conj() * y)
            .sum::<C64>()
            .norm_sqr()
    };
    let clean = forward[gates.len()][0].norm_sqr();

    let mut total = 0.0;
    for traj in 0..nm.shots {
        let mut rng = nm.trajectory_rng(traj);
        let errors = draw_errors(gates, nm.cnot_depolarizing_rate, &mut rng);
        let Some(&(first, ..)) = errors.first() else {
            total += clean;
            continue;
        };
        let mut amps = forward[first + 1].clone();
        let mut k = first + 1;
        for &(ek, ctl, tgt, pauli) in &errors {
            while k <= ek {
                ops[k].apply(&mut amps);
                k += 1;
            }
            apply_error(&mut amps, n, ctl, tgt, pauli);
        }
        total += overlap(&backward[k - 1], &amps);
    }
    Ok(total / nm.shots as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell_chain(n: usize, rounds: usize) -> Circuit {
        let mut c = Circuit::new(n).unwrap();
        for q in 0..n {
            c.push(Gate::H(q)).unwrap();
        }
        for r in 0..rounds {
            for q in 0..n - 1 {
                c.push(Gate::CNOT { control: q, target: q + 1 }).unwrap();
                c.push(Gate::Ry { qubit: q, theta: 0.1 * (r + q) as f64 }).unwrap();
            }
        }
        c
    }

    #[test]
    fn empty_circuit_accepts() {
        let r = simulate(&Circuit::new(3).unwrap()).unwrap();
        assert_eq!(r.accept_prob, 1.0);
        assert_eq!(r.outcome_probs.len(), 1);
        assert_eq!(r.outcome_probs["000"], 1.0);
    }

    #[test]
    fn labels_put_wire_zero_first() {
        let c = Circuit::from_gates(3, vec![Gate::X(0)]).unwrap();
        let r = simulate(&c).unwrap();
        assert_eq!(r.outcome_probs["100"], 1.0);
    }

    #[test]
    fn zero_rate_matches_noiseless() {
        let c = bell_chain(4, 3);
        let exact = simulate(&c).unwrap();
        let nm = NoiseModel::new(0.0, 5, 1).unwrap();
        let noisy = simulate_noisy(&c, &nm).unwrap();
        assert!((noisy.accept_prob - exact.accept_prob).abs() < 1e-15);
        assert!((noisy_accept_prob(&c, &nm).unwrap() - exact.accept_prob).abs() < 1e-15);
    }

    #[test]
    fn fast_path_agrees_with_full_trajectories() {
        let c = bell_chain(4, 5);
        let nm = NoiseModel::new(0.2, 300, 9).unwrap();
        let a = simulate_noisy(&c, &nm).unwrap().accept_prob;
        let b = noisy_accept_prob(&c, &nm).unwrap();
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }

    #[test]
    fn full_rate_approaches_the_mixed_state() {
        let c = bell_chain(3, 30);
        let nm = NoiseModel::new(1.0, 4000, 3).unwrap();
        let p = noisy_accept_prob(&c, &nm).unwrap();
        assert!((p - 1.0 / 8.0).abs() < 0.02, "{p}");
    }

    #[test]
    fn reproducible_under_a_seed() {
        let c = bell_chain(3, 4);
        let nm = NoiseModel::new(0.1, 200, 42).unwrap();
        assert_eq!(
            simulate_noisy(&c, &nm).unwrap(),
            simulate_noisy(&c, &nm).unwrap()
        );
        assert_eq!(noisy_accept_prob(&c, &nm).unwrap(), noisy_accept_prob(&c, &nm).unwrap());
    }

    #[test]
    fn rejects_bad_models() {
        assert!(NoiseModel::new(1.5, 1, 0).is_err());
        assert!(NoiseModel::new(0.1, 0, 0).is_err());
        assert!(StateVector::zero(13).is_err());
    }
}
