//! Decompositions of the uniformly controlled rotation `U_a`.
//!
//! Wires: controls `0..log d` (wire 0 is the most significant bit of the
//! block index) and the target `log d`.

use crate::circuit::{gray_code, gray_transition_bit, Axis, Circuit, Control, Gate};
use crate::error::{Error, Result};
use crate::qfa::QfaSpec;

use super::lower::cancel_x_pairs;
use super::mcx::{mc_rotation_gates, mcx_gates};

fn log2(d: usize) -> Result<usize> {
    if d == 0 || !d.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(d));
    }
    Ok(d.trailing_zeros() as usize)
}

fn parity(x: u64) -> f64 {
    if x.count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Original angles `α` and, once transformed, the ladder angles `θ = B·α`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleVector {
    pub alphas: Vec<f64>,
    pub thetas: Option<Vec<f64>>,
}

impl AngleVector {
    pub fn new(alphas: Vec<f64>) -> Result<Self> {
        log2(alphas.len())?;
        Ok(AngleVector { alphas, thetas: None })
    }
}

/// `θ_i = (1/d) Σ_j (−1)^{popcount(j & g_i)} α_j` with `g_i` the Gray code.
pub fn gray_walsh(alphas: &[f64]) -> Result<Vec<f64>> {
    let d = alphas.len();
    log2(d)?;
    Ok((0..d as u64)
        .map(|i| {
            let g = gray_code(i);
            let s: f64 = alphas
                .iter()
                .enumerate()
                .map(|(j, a)| parity(j as u64 & g) * a)
                .sum();
            s / d as f64
        })
        .collect())
}

/// Inverse of [`gray_walsh`]: `α_j = Σ_i (−1)^{popcount(j & g_i)} θ_i`.
pub fn inverse_gray_walsh(thetas: &[f64]) -> Result<Vec<f64>> {
    let d = thetas.len();
    log2(d)?;
    Ok((0..d as u64)
        .map(|j| {
            thetas
                .iter()
                .enumerate()
                .map(|(i, t)| parity(j & gray_code(i as u64)) * t)
                .sum()
        })
        .collect())
}

pub fn mottonen_angles(v: &AngleVector) -> Result<AngleVector> {
    Ok(AngleVector {
        alphas: v.alphas.clone(),
        thetas: Some(gray_walsh(&v.alphas)?),
    })
}

/// Gray-code ladder over `top` (most significant first): block `i`, then a
/// CNOT from the top wire whose Gray bit changes next onto `target`. The last
/// CNOT is controlled by `top[0]`.
fn ladder(top: &[usize], target: usize, mut block: impl FnMut(usize) -> Result<Vec<Gate>>) -> Result<Vec<Gate>> {
    let t = top.len();
    let mut out = Vec::new();
    let blocks = 1usize << t;
    for i in 0..blocks {
        out.extend(block(i)?);
        if t == 0 {
            continue;
        }
        let bit = if i + 1 == blocks {
            t - 1
        } else {
            gray_transition_bit(i as u64) as usize
        };
        out.push(Gate::CNOT {
            control: top[t - 1 - bit],
            target,
        });
    }
    Ok(out)
}

/// One multi-controlled rotation per control pattern, over all `log d`
/// controls with open controls where the pattern has a zero. Patterns are
/// visited as complements of the Gray sequence, so lowering leaves exactly one
/// X between consecutive rotations and a single trailing X. One extra
/// ancilla wire is added when `log d > 3`.
pub fn synth_naive(spec: &QfaSpec) -> Result<Circuit> {
    let alphas = spec.alphas();
    let d = alphas.len();
    let l = log2(d)?;
    let width = l + 1 + usize::from(l > 3);
    let mut c = Circuit::new(width)?;
    if l == 0 {
        c.push(Gate::Ry { qubit: 0, theta: alphas[0] })?;
        return Ok(c);
    }
    let mask = (d - 1) as u64;
    for i in 0..d as u64 {
        let x = !gray_code(i) & mask;
        let controls = (0..l)
            .map(|q| Control {
                qubit: q,
                open: (x >> (l - 1 - q)) & 1 == 0,
            })
            .collect();
        c.push(Gate::MCRy {
            controls,
            target: l,
            theta: alphas[x as usize],
        })?;
    }
    Ok(c)
}

/// `d` rotations and `d` CNOTs.
pub fn synth_mottonen(spec: &QfaSpec) -> Result<Circuit> {
    synth_mottonen_axis(Axis::Y, &spec.alphas())
}

pub fn synth_mottonen_axis(axis: Axis, alphas: &[f64]) -> Result<Circuit> {
    let d = alphas.len();
    let l = log2(d)?;
    if l == 0 {
        return Err(Error::InvalidParameter("the ladder needs d ≥ 2".into()));
    }
    let thetas = gray_walsh(alphas)?;
    let top: Vec<usize> = (0..l).collect();
    let gates = ladder(&top, l, |i| Ok(vec![Gate::rotation(axis, l, thetas[i])]))?;
    Circuit::from_gates(l + 1, gates)
}

/// Both rotations of a pair over `bundle` (filled) and the toggled wire `c`:
/// with the bundle firing, `θ1` applies when `c = 1` and `θ2` when `c = 0`;
/// `c` ends flipped.
///
/// From three bundle wires on this is the half-angle construction whose
/// controlled NOTs borrow the target and `c` as ancillas. Smaller pairs use
/// two independent controlled rotations.
pub fn pair_gates(axis: Axis, bundle: &[usize], c: usize, t: usize, theta1: f64, theta2: f64) -> Result<Vec<Gate>> {
    let cr = |theta: f64| mc_rotation_gates(axis, &[c], t, theta, None);
    let mut out = Vec::new();
    if bundle.len() >= 3 {
        let flip_c = mcx_gates(bundle, c, Some(t))?;
        out.extend(cr(theta1 / 2.0)?);
        out.push(Gate::X(c));
        out.extend(cr(theta2 / 2.0)?);
        out.extend(flip_c.iter().cloned());
        out.extend(cr(-theta2 / 2.0)?);
        out.push(Gate::X(c));
        out.extend(cr(-theta1 / 2.0)?);
        out.extend(flip_c);
        out.extend(mc_rotation_gates(axis, bundle, t, (theta1 + theta2) / 2.0, Some(c))?);
        out.push(Gate::X(c));
    } else {
        let mut all = bundle.to_vec();
        all.push(c);
        out.extend(mc_rotation_gates(axis, &all, t, theta1, None)?);
        out.push(Gate::X(c));
        out.extend(mc_rotation_gates(axis, &all, t, theta2, None)?);
    }
    Ok(out)
}

/// Pair of rotations over `n` controls: bundle `0..n−1`, toggled wire `n−1`,
/// target `n`.
pub fn synth_pair(theta1: f64, theta2: f64, n: usize) -> Result<Circuit> {
    if n == 0 {
        return Err(Error::InvalidParameter("a pair needs at least one control".into()));
    }
    if !(theta1.is_finite() && theta2.is_finite()) {
        return Err(Error::NonFiniteAngle);
    }
    let bundle: Vec<usize> = (0..n - 1).collect();
    Circuit::from_gates(n + 1, pair_gates(Axis::Y, &bundle, n - 1, n, theta1, theta2)?)
}

/// Uniformly controlled rotation over `low` (most significant first) built
/// from consecutive pairs. `angles[x]` is the angle for low pattern `x`.
fn residual_gates(axis: Axis, low: &[usize], target: usize, angles: &[f64]) -> Result<Vec<Gate>> {
    let k = low.len();
    if k == 0 {
        return Ok(vec![Gate::rotation(axis, target, angles[0])]);
    }
    let c = low[k - 1];
    let bundle = &low[..k - 1];
    let pairs = 1u64 << (k - 1);
    let mask = pairs - 1;
    let mut out = Vec::new();
    for j in 0..pairs {
        let xb = !gray_code(j) & mask;
        let opens: Vec<usize> = (0..k - 1)
            .filter(|&b| (xb >> (k - 2 - b)) & 1 == 0)
            .map(|b| bundle[b])
            .collect();
        let flipped = (j % 2) as usize;
        let theta1 = angles[((xb as usize) << 1) | (1 ^ flipped)];
        let theta2 = angles[((xb as usize) << 1) | flipped];
        out.extend(opens.iter().map(|&q| Gate::X(q)));
        out.extend(pair_gates(axis, bundle, c, target, theta1, theta2)?);
        out.extend(opens.iter().map(|&q| Gate::X(q)));
    }
    if k == 1 {
        out.push(Gate::X(c));
    }
    Ok(out)
}

/// Closed-form CNOT cost after `t` levels: `2^t + (d/2)(192(log d − t) − 768)`.
pub fn hybrid_cost_formula(d: usize, t: usize) -> i64 {
    let l = d.trailing_zeros() as i64;
    (1i64 << t) + (d as i64 / 2) * (192 * (l - t as i64) - 768)
}

/// Cost of the variant whose residual blocks are expanded without pairing:
/// `2^{t+1} + (d/2)(192(log d − t − 1) − 576)`.
pub fn naive_residual_cost_formula(d: usize, t: usize) -> i64 {
    let l = d.trailing_zeros() as i64;
    (1i64 << (t + 1)) + (d as i64 / 2) * (192 * (l - t as i64 - 1) - 576)
}

/// Upper bound on the naive construction: `48·d·(log d − 3)`.
pub fn naive_cost_bound(d: usize) -> i64 {
    let l = d.trailing_zeros() as i64;
    48 * d as i64 * (l - 3)
}

/// Whether the closed-form cost applies, i.e. `t < log d − 4`.
pub fn in_formula_range(d: usize, t: usize) -> bool {
    (t + 4) < d.trailing_zeros() as usize
}

#[derive(Debug, Clone, PartialEq)]
pub struct HybridPlan {
    pub t: usize,
    pub d: usize,
    /// Closed-form cost, present only inside the formula's range.
    pub predicted_cnots: Option<i64>,
    pub naive_residual_cnots: Option<i64>,
    /// `2^{t+1}`.
    pub predicted_angle_scale: f64,
    /// `residual_angles[i][x_lo]`: angle of residual block `i` for low pattern `x_lo`.
    pub residual_angles: Vec<Vec<f64>>,
}

impl HybridPlan {
    pub fn new(alphas: &[f64], t: usize) -> Result<Self> {
        let d = alphas.len();
        let l = log2(d)?;
        if t > l {
            return Err(Error::InvalidParameter(format!("t = {t} exceeds log2 d = {l}")));
        }
        let k = l - t;
        let blocks = 1usize << t;
        let lows = 1usize << k;
        let residual_angles = (0..blocks)
            .map(|i| {
                let g = gray_code(i as u64);
                (0..lows)
                    .map(|x_lo| {
                        let s: f64 = (0..blocks)
                            .map(|x_hi| parity(x_hi as u64 & g) * alphas[(x_hi << k) | x_lo])
                            .sum();
                        if blocks == 1 {
                            s
                        } else {
                            s / blocks as f64
                        }
                    })
                    .collect()
            })
            .collect();
        let in_range = in_formula_range(d, t);
        Ok(HybridPlan {
            t,
            d,
            predicted_cnots: in_range.then(|| hybrid_cost_formula(d, t)),
            naive_residual_cnots: in_range.then(|| naive_residual_cost_formula(d, t)),
            predicted_angle_scale: (1u64 << (t + 1)) as f64,
            residual_angles,
        })
    }
}

/// `t` levels of the Gray-code ladder over the top controls, residual blocks
/// over the remaining `log d − t` controls expanded pairwise.
pub fn synth_hybrid(spec: &QfaSpec, t: usize) -> Result<(Circuit, HybridPlan)> {
    synth_hybrid_axis(Axis::Y, &spec.alphas(), t)
}

pub fn synth_hybrid_axis(axis: Axis, alphas: &[f64], t: usize) -> Result<(Circuit, HybridPlan)> {
    let plan = HybridPlan::new(alphas, t)?;
    let l = log2(alphas.len())?;
    if t == l && l > 0 {
        return Ok((synth_mottonen_axis(axis, alphas)?, plan));
    }
    let top: Vec<usize> = (0..t).collect();
    let low: Vec<usize> = (t..l).collect();
    let gates = ladder(&top, l, |i| residual_gates(axis, &low, l, &plan.residual_angles[i]))?;
    let c = Circuit::from_gates(l + 1, gates)?;
    Ok((cancel_x_pairs(&c), plan))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_transform() {
        let th = gray_walsh(&[0.3, 0.1]).unwrap();
        assert!((th[0] - 0.2).abs() < 1e-15);
        assert!((th[1] - 0.1).abs() < 1e-15);
    }

    #[test]
    fn constant_vector_maps_to_first_entry() {
        let th = gray_walsh(&[0.7; 8]).unwrap();
        assert!((th[0] - 0.7).abs() < 1e-15);
        assert!(th[1..].iter().all(|t| t.abs() < 1e-15));
    }

    #[test]
    fn transform_round_trips() {
        let a: Vec<f64> = (0..16).map(|i| (i as f64 * 0.37).sin()).collect();
        let back = inverse_gray_walsh(&gray_walsh(&a).unwrap()).unwrap();
        for (x, y) in a.iter().zip(&back) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn formula_values() {
        assert_eq!(hybrid_cost_formula(64, 0), 1 + 32 * (192 * 6 - 768));
        assert_eq!(hybrid_cost_formula(64, 1), 6146);
        assert_eq!(naive_cost_bound(32), 3072);
        assert!(in_formula_range(64, 1));
        assert!(!in_formula_range(64, 2));
    }

    #[test]
    fn hybrid_rejects_large_t() {
        let spec = QfaSpec::new(5, vec![1, 2, 3, 4]).unwrap();
        assert!(synth_hybrid(&spec, 3).is_err());
    }
}
