use std::f64::consts::PI;

use proptest::prelude::*;
use qfa_core::circuit::{elaborate, Circuit, Gate};
use qfa_core::lnn::LnnOptions;
use qfa_core::pipeline::{qfa_circuit, Automaton, Basis, Strategy as Build};
use qfa_core::pseudo::PseudoSpec;
use qfa_core::qfa::{accept_prob_parallel, QfaSpec};
use qfa_core::sim::*;
use qfa_core::synth::decompose;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mottonen_word(spec: &QfaSpec, j: usize) -> Circuit {
    qfa_circuit(Build::Mottonen, &Automaton::Blocks(spec.clone()), j, Basis::Ry)
        .unwrap()
        .circuit
}

fn random_circuit(seed: u64, n: usize, len: usize) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gates = (0..len)
        .map(|_| {
            let q = rng.gen_range(0..n);
            let c = (q + rng.gen_range(1..n)) % n;
            let theta = rng.gen_range(-PI..PI);
            match rng.gen_range(0..7) {
                0 => Gate::H(q),
                1 => Gate::SX(q),
                2 => Gate::Sdg(q),
                3 => Gate::Ry { qubit: q, theta },
                4 => Gate::Rz { qubit: q, theta },
                5 => Gate::Phase { qubit: q, lambda: theta },
                _ => Gate::CNOT { control: c, target: q },
            }
        })
        .collect();
    Circuit::from_gates(n, gates).unwrap()
}

#[test]
fn empty_circuit_accepts() {
    let r = simulate(&Circuit::new(3).unwrap()).unwrap();
    assert_eq!(r.accept_prob, 1.0);
    assert_eq!(r.outcome_probs.len(), 1);
    assert_eq!(r.outcome_probs["000"], 1.0);
}

#[test]
fn p5_members_and_non_members() {
    let spec = QfaSpec::new(5, vec![1, 2, 3, 4]).unwrap();
    let member = simulate(&mottonen_word(&spec, 5)).unwrap().accept_prob;
    assert!((member - 1.0).abs() < 1e-9);
    for m in 1..5 {
        let sim = simulate(&mottonen_word(&spec, m)).unwrap().accept_prob;
        let model = accept_prob_parallel(&spec, m as u64).unwrap();
        assert!((sim - model).abs() < 1e-10, "m={m}");
    }
}

#[test]
fn outcome_labels_put_wire_zero_first() {
    let c = Circuit::from_gates(3, vec![Gate::X(0)]).unwrap();
    let r = simulate(&c).unwrap();
    assert_eq!(r.outcome_probs.keys().collect::<Vec<_>>(), ["100"]);
    assert_eq!(r.accept_prob, 0.0);
}

#[test]
fn qubit_limit() {
    assert!(simulate(&Circuit::new(MAX_SIM_QUBITS + 1).unwrap()).is_err());
    assert!(StateVector::zero(MAX_SIM_QUBITS).is_ok());
}

#[test]
fn distributions_sum_to_one() {
    for seed in 0..10 {
        let r = simulate(&random_circuit(seed, 5, 60)).unwrap();
        let total: f64 = r.outcome_probs.values().sum();
        assert!((total - 1.0).abs() < 1e-10);
        let norm: f64 = r.amplitudes.unwrap().iter().map(|a| a.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-10);
    }
}

#[test]
fn simulation_matches_the_elaborated_unitary() {
    for seed in 0..10 {
        let c = random_circuit(seed, 4, 40);
        let amps = simulate(&c).unwrap().amplitudes.unwrap();
        let u = elaborate(&c).unwrap();
        for (i, a) in amps.iter().enumerate() {
            assert!((a - u.get(i, 0)).norm() < 1e-10);
        }
    }
}

#[test]
fn equivalent_circuits_give_equal_distributions() {
    let spec = QfaSpec::new(7, vec![1, 3, 2, 6]).unwrap();
    let a = Automaton::Blocks(spec);
    for j in [1, 3, 7] {
        let base = simulate(&qfa_circuit(Build::Mottonen, &a, j, Basis::Ry).unwrap().circuit).unwrap();
        for s in [Build::Naive, Build::Hybrid { t: 1 }] {
            let other = qfa_circuit(s, &a, j, Basis::Rz).unwrap().circuit;
            let r = simulate(&other).unwrap();
            assert_eq!(other.num_qubits(), 3);
            for k in r.outcome_probs.keys().chain(base.outcome_probs.keys()) {
                let p = r.outcome_probs.get(k).copied().unwrap_or(0.0);
                let q = base.outcome_probs.get(k).copied().unwrap_or(0.0);
                assert!((p - q).abs() < 1e-9, "{s} {k}");
            }
            assert!((r.accept_prob - base.accept_prob).abs() < 1e-9);
        }
    }
}

#[test]
fn zero_rate_matches_noiseless() {
    let c = random_circuit(3, 4, 50);
    let exact = simulate(&c).unwrap();
    let nm = NoiseModel::new(0.0, 5, 9).unwrap();
    let noisy = simulate_noisy(&c, &nm).unwrap();
    assert!(noisy.amplitudes.is_none());
    assert!((noisy.accept_prob - exact.accept_prob).abs() < 1e-12);
    for (k, p) in &exact.outcome_probs {
        assert!((noisy.outcome_probs[k] - p).abs() < 1e-12);
    }
    assert!((noisy_accept_prob(&c, &nm).unwrap() - exact.accept_prob).abs() < 1e-12);
}

#[test]
fn full_rate_mixes_completely() {
    let mut gates = Vec::new();
    for _ in 0..10 {
        gates.extend([
            Gate::H(0),
            Gate::CNOT { control: 0, target: 1 },
            Gate::CNOT { control: 1, target: 2 },
        ]);
    }
    let c = Circuit::from_gates(3, gates).unwrap();
    let nm = NoiseModel::new(1.0, 20_000, 4).unwrap();
    let p = simulate_noisy(&c, &nm).unwrap().accept_prob;
    assert!((p - 0.125).abs() < 0.01, "{p}");
}

#[test]
fn fast_acceptance_path_matches_full_trajectories() {
    for seed in 0..5 {
        let c = random_circuit(seed, 5, 80);
        let nm = NoiseModel::new(0.05, 300, seed).unwrap();
        let full = simulate_noisy(&c, &nm).unwrap().accept_prob;
        let fast = noisy_accept_prob(&c, &nm).unwrap();
        assert!((full - fast).abs() < 1e-12, "seed {seed}: {full} vs {fast}");
    }
}

#[test]
fn noisy_runs_are_reproducible() {
    let c = random_circuit(11, 4, 60);
    let nm = NoiseModel::new(0.1, 500, 21).unwrap();
    let a = simulate_noisy(&c, &nm).unwrap();
    let b = simulate_noisy(&c, &nm).unwrap();
    assert_eq!(a, b);
    assert_eq!(
        noisy_accept_prob(&c, &nm).unwrap().to_bits(),
        noisy_accept_prob(&c, &nm).unwrap().to_bits()
    );
    let other = NoiseModel::new(0.1, 500, 22).unwrap();
    assert_ne!(a.accept_prob, simulate_noisy(&c, &other).unwrap().accept_prob);
}

#[test]
fn noise_model_validation() {
    assert!(NoiseModel::new(-0.1, 10, 0).is_err());
    assert!(NoiseModel::new(1.5, 10, 0).is_err());
    assert!(NoiseModel::new(0.5, 0, 0).is_err());
}

#[test]
fn fewer_cnots_keep_the_member_peak_higher() {
    let pseudo = Automaton::Pseudo(PseudoSpec::from_published_k(37, &[3, 6, 19, 2, 8]).unwrap());
    let blocks = Automaton::Blocks(QfaSpec::padded(37, vec![3, 6, 19, 2, 8]).unwrap());
    let nm = NoiseModel::new(0.002, 2000, 17).unwrap();
    let routed = qfa_circuit(Build::Lnn(LnnOptions::default()), &pseudo, 37, Basis::Ry).unwrap().circuit;
    let naive = qfa_circuit(Build::Naive, &blocks, 37, Basis::Ry).unwrap().circuit;
    assert!(routed.cnot_count() < naive.cnot_count());
    let r = noisy_accept_prob(&routed, &nm).unwrap();
    let n = noisy_accept_prob(&naive, &nm).unwrap();
    assert!(r > n, "{r} vs {n}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn every_gate_preserves_the_norm(seed in any::<u64>()) {
        let c = decompose(&random_circuit(seed, 5, 40)).unwrap();
        let mut sv = StateVector::zero(5).unwrap();
        for g in c.gates() {
            sv.apply(g).unwrap();
            prop_assert!((sv.norm_sqr() - 1.0).abs() <= 1e-10);
        }
        prop_assert_eq!(sv.amplitudes().len(), 32);
    }
}
