use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use qfa_core::circuit::{elaborate, filled, metrics, Circuit, Gate};
use qfa_core::lnn::{predicted_cnots, route_pseudo_lnn_merged, LnnOptions};
use qfa_core::matrix::{gate_sx, gate_sxdg, phase_deviation, rotation_ry, rotation_rz, UnitaryMatrix};
use qfa_core::pipeline::{frame_word, qfa_circuit, sweep, symbol_circuit, Automaton, Basis, Strategy};
use qfa_core::pseudo::{realizable_k, simulated_profile, synth_pseudo, PseudoSpec};
use qfa_core::qfa::{block_rotation, error_bound, QfaSpec};
use qfa_core::rewrite::{basis_check, conjugate_ry, lower_to_basis, rewrite_to_rz_basis};
use qfa_core::sim::{noisy_accept_prob, simulate, NoiseModel};
use qfa_core::synth::{
    decompose, hybrid_cost_formula, in_formula_range, materialize_polarity, naive_cost_bound,
    naive_residual_cost_formula, synth_hybrid, synth_mottonen, synth_naive, synth_pair,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EQUIV_TOL: f64 = 1e-9;
const PUBLISHED_K: [u64; 5] = [3, 6, 19, 2, 8];

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn deviation(a: &Circuit, b: &UnitaryMatrix) -> f64 {
    phase_deviation(&elaborate(a).unwrap(), b).unwrap()
}

fn padded_ua(spec: &QfaSpec, width: usize) -> UnitaryMatrix {
    let ua = spec.ua().unwrap();
    let extra = width - (spec.log_d() + 1);
    ua.kron(&UnitaryMatrix::identity(1 << extra).unwrap()).unwrap()
}

fn random_spec(rng: &mut ChaCha8Rng, p: u64, d: usize) -> QfaSpec {
    QfaSpec::new(p, (0..d).map(|_| rng.gen_range(1..p)).collect()).unwrap()
}

fn published() -> PseudoSpec {
    PseudoSpec::from_published_k(37, &PUBLISHED_K).unwrap()
}

fn to_rz(c: &Circuit) -> Circuit {
    lower_to_basis(&rewrite_to_rz_basis(c).unwrap()).unwrap()
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let theta = rng.gen_range(-4.0 * PI..4.0 * PI);
        let lhs = gate_sxdg().matmul(&rotation_rz(theta)).unwrap().matmul(&gate_sx()).unwrap();
        worst = worst.max(lhs.max_abs_diff(&rotation_ry(theta)).unwrap());
    }
    ensure(worst <= 1e-12, || format!("SX·Rz·SX† identity deviation {worst:e}"))?;
    let mut worst_pow: f64 = 0.0;
    for _ in 0..20 {
        let theta = rng.gen_range(-PI..PI);
        let conj = gate_sxdg().matmul(&rotation_rz(theta)).unwrap().matmul(&gate_sx()).unwrap();
        for j in 0..=100u32 {
            let d = conj.pow(j).max_abs_diff(&rotation_ry(j as f64 * theta)).unwrap();
            worst_pow = worst_pow.max(d);
        }
    }
    ensure(worst_pow <= 1e-10, || format!("power deviation {worst_pow:e}"))?;
    Ok(format!("SX·Rz·SX† identity max {worst:.1e}, power identity max {worst_pow:.1e}"))
}

fn pair_reference(theta1: f64, theta2: f64, n: usize) -> UnitaryMatrix {
    let controls = filled(&(0..n).collect::<Vec<_>>());
    let c = Circuit::from_gates(
        n + 1,
        vec![
            Gate::MCRy { controls: controls.clone(), target: n, theta: theta1 },
            Gate::X(n - 1),
            Gate::MCRy { controls, target: n, theta: theta2 },
        ],
    )
    .unwrap();
    elaborate(&c).unwrap()
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    let mut checks = 0;
    let mut record = |label: String, dev: f64| -> Result<(), String> {
        checks += 1;
        worst = worst.max(dev);
        ensure(dev <= EQUIV_TOL, || format!("{label}: {dev:e}"))
    };
    for p in [5u64, 7, 11, 13] {
        for l in 1..=3usize {
            let d = 1 << l;
            let spec = random_spec(&mut rng, p, d);
            let a = Automaton::Blocks(spec.clone());
            let mut strategies = vec![Strategy::Naive, Strategy::Mottonen];
            strategies.extend((0..=l).map(|t| Strategy::Hybrid { t }));
            for s in strategies {
                let c = symbol_circuit(s, &a).unwrap().circuit;
                let ua = padded_ua(&spec, c.num_qubits());
                record(format!("{s} p={p} d={d}"), deviation(&c, &ua))?;
                record(format!("{s}-rz p={p} d={d}"), deviation(&to_rz(&c), &ua))?;
            }
            let alphas = spec.alphas();
            let pair = synth_pair(alphas[0], alphas[1], l).unwrap();
            let reference = pair_reference(alphas[0], alphas[1], l);
            record(format!("pair p={p} n={l}"), deviation(&pair, &reference))?;
            record(format!("pair-rz p={p} n={l}"), deviation(&to_rz(&decompose(&pair).unwrap()), &reference))?;
            let ks: Vec<u64> = (0..=l).map(|_| rng.gen_range(1..p)).collect();
            let pseudo = PseudoSpec::from_multipliers(p, &ks).unwrap();
            let blocks = block_rotation(&pseudo.effective_angles()).unwrap();
            let c = decompose(&synth_pseudo(&pseudo).unwrap()).unwrap();
            record(format!("pseudo p={p} d={d}"), deviation(&c, &blocks))?;
            record(format!("pseudo-rz p={p} d={d}"), deviation(&to_rz(&c), &blocks))?;
        }
    }
    Ok(format!("{checks} circuits, max deviation {worst:.1e}"))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for l in 1..=6 {
        let d = 1usize << l;
        let c = synth_mottonen(&random_spec(&mut rng, 37, d)).unwrap();
        ensure(c.cnot_count() == d && c.count("RY") == d, || {
            format!("mottonen d={d}: {} CNOT, {} RY", c.cnot_count(), c.count("RY"))
        })?;
    }
    for n in 4..=7 {
        let ks: Vec<u64> = (0..n).map(|_| rng.gen_range(1..37)).collect();
        let spec = PseudoSpec::from_multipliers(37, &ks).unwrap();
        for j in 1..=10 {
            let rc = route_pseudo_lnn_merged(&spec, j, n, LnnOptions::default()).unwrap();
            let expect = (2 + 3 * (n - 3)) * j + 2;
            ensure(rc.circuit.cnot_count() == expect, || {
                format!("lnn n={n} j={j}: {} != {expect}", rc.circuit.cnot_count())
            })?;
        }
    }
    let count = |j| {
        route_pseudo_lnn_merged(&published(), j, 5, LnnOptions::default())
            .unwrap()
            .circuit
            .cnot_count()
    };
    let (c1, c57) = (count(1), count(57));
    ensure(c1 == 10 && c57 == 458, || format!("n=5: j=1 → {c1}, j=57 → {c57}"))?;
    ensure(predicted_cnots(5, 57).unwrap() == 458, || "formula".into())?;
    Ok(format!("mottonen d=2..64 exact; lnn n=4..7 j=1..10 exact; (5,1)→{c1}, (5,57)→{c57}"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut notes = Vec::new();
    for d in [32usize, 64] {
        let c = decompose(&synth_naive(&random_spec(&mut rng, 37, d)).unwrap()).unwrap();
        let bound = naive_cost_bound(d);
        ensure(c.cnot_count() as i64 <= bound, || format!("naive d={d}: {} > {bound}", c.cnot_count()))?;
        notes.push(format!("naive d={d} {}≤{bound}", c.cnot_count()));
    }
    let spec = random_spec(&mut rng, 37, 64);
    for t in (0..=6).filter(|&t| in_formula_range(64, t)) {
        let (c, _) = synth_hybrid(&spec, t).unwrap();
        let formula = (1i64 << t) + 32 * (192 * (6 - t as i64) - 768);
        ensure(hybrid_cost_formula(64, t) == formula, || format!("formula t={t}"))?;
        ensure(c.cnot_count() as i64 <= formula, || format!("hybrid t={t}: {} > {formula}", c.cnot_count()))?;
        notes.push(format!("hybrid t={t} {}≤{formula}", c.cnot_count()));
    }
    for l in 5..=10 {
        let d = 1usize << l;
        for t in 0..=l {
            let second = 2 * (1i64 << t) + (d as i64 / 2) * (192 * (l as i64 - t as i64) - 768);
            ensure(naive_residual_cost_formula(d, t) == second, || format!("naive-residual d={d} t={t}"))?;
            ensure(second - hybrid_cost_formula(d, t) == 1 << t, || format!("2^t gap d={d} t={t}"))?;
        }
    }
    Ok(notes.join(", "))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let min_angle = |spec: &QfaSpec, t| metrics(&synth_hybrid(spec, t).unwrap().0).min_abs_angle.unwrap();
    let mut outside = 0;
    for trial in 0..10 {
        let spec = random_spec(&mut rng, 37, 64);
        let mins: Vec<f64> = (0..=6).map(|t| min_angle(&spec, t)).collect();
        for t in (0..6).filter(|&t| in_formula_range(64, t)) {
            ensure(mins[t] >= mins[t + 1] - 1e-12, || {
                format!("trial {trial} t={t}: {} < {}", mins[t], mins[t + 1])
            })?;
        }
        if (2..6).any(|t| mins[t] < mins[t + 1]) {
            outside += 1;
        }
        let (_, plan) = synth_hybrid(&spec, 0).unwrap();
        ensure(plan.residual_angles[0] == spec.alphas(), || format!("trial {trial}: t=0 changed angles"))?;
    }
    Ok(format!(
        "monotone for t in the formula range; t=0 angles unchanged; {outside}/10 specs non-monotone for t ≥ 2"
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    for p in [5u64, 7, 11, 13, 37] {
        for l in 1..=3usize {
            let spec = random_spec(&mut rng, p, 1 << l);
            let a = Automaton::Blocks(spec.clone());
            let eps = error_bound(&spec).unwrap();
            let mut worst: f64 = 0.0;
            for m in 1..=2 * p as usize {
                let prob = simulate(&qfa_circuit(Strategy::Mottonen, &a, m, Basis::Ry).unwrap().circuit)
                    .unwrap()
                    .accept_prob;
                if m % p as usize == 0 {
                    ensure((prob - 1.0).abs() <= 1e-9, || format!("p={p} member a^{m}: {prob}"))?;
                } else {
                    worst = worst.max(prob);
                }
            }
            ensure((worst - eps).abs() <= 1e-10, || format!("p={p} d={}: {worst} vs {eps}", 1 << l))?;
            checked += 1;
        }
    }
    let spec = published();
    let ks = realizable_k(&spec, 37).ks_mod_p.ok_or("published ξ not integral")?;
    let eps = error_bound(&QfaSpec::new(37, ks).unwrap()).unwrap();
    let simulated = simulated_profile(&spec).unwrap().epsilon;
    ensure(eps <= 1.0 / 3.0, || format!("published ε = {eps}"))?;
    ensure((simulated - eps).abs() <= 1e-10, || format!("simulated {simulated} vs {eps}"))?;
    Ok(format!("{checked} specs exact; p=37 published ξ ε = {eps:.4}"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for l in 1..=6 {
        let d = 1usize << l;
        let c = materialize_polarity(&synth_naive(&random_spec(&mut rng, 37, d)).unwrap());
        let rot: Vec<usize> = c
            .gates()
            .iter()
            .enumerate()
            .filter(|(_, g)| matches!(g, Gate::MCRy { .. } | Gate::Ry { .. }))
            .map(|(i, _)| i)
            .collect();
        ensure(rot.len() == d, || format!("d={d}: {} rotations", rot.len()))?;
        let mut xs = 0;
        for w in rot.windows(2) {
            let between = &c.gates()[w[0] + 1..w[1]];
            ensure(between.len() == 1 && matches!(between[0], Gate::X(_)), || {
                format!("d={d}: gates between rotations {between:?}")
            })?;
            xs += 1;
        }
        ensure(xs == d - 1, || format!("d={d}: {xs} X gates"))?;
    }
    Ok("d=2..64: one X between consecutive rotations, d−1 in total".into())
}

fn criterion_8() -> Outcome {
    let mut words = Vec::new();
    let pseudo = Automaton::Pseudo(published());
    let blocks = Automaton::Blocks(QfaSpec::new(13, vec![1, 5, 3, 8, 2, 9, 4, 12]).unwrap());
    for j in 1..=10 {
        let word = qfa_circuit(Strategy::Pseudo, &pseudo, j, Basis::Ry).unwrap().circuit;
        words.push(("pseudo".to_string(), j, word));
    }
    for s in [Strategy::Naive, Strategy::Mottonen, Strategy::Hybrid { t: 1 }] {
        let block = symbol_circuit(s, &blocks).unwrap().circuit;
        for j in [1, 2, 5] {
            words.push((s.to_string(), j, frame_word(&block, 3, j).unwrap()));
        }
    }
    let single = |c: &Circuit| c.gates().iter().filter(|g| g.is_single_qubit()).count();
    let mut notes = Vec::new();
    for (label, j, word) in &words {
        let rewritten = to_rz(word);
        let conjugated = lower_to_basis(&conjugate_ry(word).unwrap()).unwrap();
        ensure(basis_check(&rewritten), || format!("{label} j={j}: basis check"))?;
        ensure(rewritten.cnot_count() == word.cnot_count(), || format!("{label} j={j}: CNOT count changed"))?;
        let (a, b) = (single(&rewritten), single(&conjugated));
        ensure(a <= b, || format!("{label} j={j}: {a} > {b} single-qubit gates"))?;
        if *j >= 2 && label == "pseudo" {
            ensure(a < b, || format!("{label} j={j}: {a} ≥ {b} single-qubit gates"))?;
        }
        if *j == 5 {
            notes.push(format!("{label} {a}/{b}"));
        }
    }
    Ok(format!("{} words; single-qubit gates rewritten/conjugated at j=5: {}", words.len(), notes.join(", ")))
}

fn criterion_9() -> Outcome {
    const RATE: f64 = 0.005;
    const SHOTS: u64 = 10_000;
    const SEED: u64 = 37;
    let nm = NoiseModel::new(RATE, SHOTS, SEED).unwrap();
    let a = Automaton::Pseudo(published());
    let rows = sweep(Strategy::Lnn(LnnOptions::default()), &a, 1..=75, Some(&nm), Basis::Ry).unwrap();
    let member = rows[36].accept_prob;
    let mut others: Vec<f64> = rows.iter().filter(|r| r.j % 37 != 0).map(|r| r.accept_prob).collect();
    others.sort_by(f64::total_cmp);
    let median = others[others.len() / 2];
    let swap_word = qfa_circuit(Strategy::PseudoSwap, &a, 37, Basis::Ry).unwrap().circuit;
    let baseline = noisy_accept_prob(&swap_word, &nm).unwrap();
    let plain_word = qfa_circuit(Strategy::Pseudo, &a, 37, Basis::Ry).unwrap().circuit;
    let plain = noisy_accept_prob(&plain_word, &nm).unwrap();
    let summary = format!(
        "rate {RATE}, {SHOTS} shots, seed {SEED}: routed a^37 {member:.4} ({} CX), swap-routed baseline {baseline:.4} ({} CX), \
         routed non-member median {median:.4}; unconstrained pseudo {plain:.4} ({} CX)",
        rows[36].cnot_count,
        swap_word.cnot_count(),
        plain_word.cnot_count()
    );
    ensure(member > baseline, || format!("routed ≤ baseline: {summary}"))?;
    ensure(member > median + 0.1, || format!("margin below 0.1: {summary}"))?;
    Ok(summary)
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_qfa-synth"))
        .args(args)
        .env_remove("QFA_SYNTH_SEED")
        .output()
        .unwrap();
    assert!(out.status.success(), "{args:?}");
    out.stdout
}

fn criterion_10() -> Outcome {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let file = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let mut artifacts = Vec::new();
    for round in 0..2 {
        let (c, r, q) = (file(&format!("c{round}.txt")), file(&format!("r{round}.json")), file(&format!("q{round}.qasm")));
        run_cli(&["synth", "--strategy", "lnn", "--input-len", "5", "--basis", "rz", "--out", &c, "--report", &r, "--export-qasm", &q]);
        let hybrid = run_cli(&["synth", "--strategy", "hybrid", "--t", "1", "--k-seed", "9", "--d", "16"]);
        let csv = run_cli(&["sweep", "--strategy", "lnn", "--j-max", "10", "--noise-rate", "0.01", "--shots", "200", "--seed", "5"]);
        let search = run_cli(&["search", "--p", "37", "--d", "8", "--eps", "0.3334", "--seed", "3"]);
        let read = |p: &str| std::fs::read(p).unwrap();
        artifacts.push(vec![read(&c), read(&r), read(&q), hybrid, csv, search]);
    }
    let labels = ["circuit", "report", "qasm", "hybrid report", "noisy csv", "search"];
    for (i, label) in labels.iter().enumerate() {
        ensure(artifacts[0][i] == artifacts[1][i], || format!("{label} differs between runs"))?;
    }
    Ok(format!("{} artifacts byte-identical across two runs", labels.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "rotation identities", Duration::from_secs(1), criterion_1),
        (2, "decomposition equivalence", Duration::from_secs(120), criterion_2),
        (3, "exact counts", Duration::from_secs(30), criterion_3),
        (4, "count bounds", Duration::from_secs(60), criterion_4),
        (5, "angle precision", Duration::from_secs(30), criterion_5),
        (6, "automaton semantics", Duration::from_secs(60), criterion_6),
        (7, "gray-code structure", Duration::from_secs(1), criterion_7),
        (8, "basis rewriting", Duration::from_secs(30), criterion_8),
        (9, "noisy member peak", Duration::from_secs(300), criterion_9),
        (10, "determinism", Duration::from_secs(60), criterion_10),
    ];
    let mut failed = 0;
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= budget {
                Ok(detail)
            } else {
                Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}"))
            }
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {id} ({name}) [{elapsed:.2?}]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {id} ({name}) [{elapsed:.2?}]: {detail}");
            }
        }
    }
    println!("{} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
