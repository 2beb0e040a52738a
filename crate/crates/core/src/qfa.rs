//! Circuit-free semantics of the MOD_p automata.
//!
//! `M_k` rotates the real plane by `2πk/p` per symbol. `M_K` runs
//! `M_{k_1} … M_{k_d}` in parallel: `U_¢ = U_$ = H^{⊗log d} ⊗ I` frame the
//! block-diagonal `U_a = diag(R_{k_1}, …, R_{k_d})`, and acceptance is the
//! probability of observing all zeros.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{self, UnitaryMatrix, C64, ONE, ZERO};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

pub fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `2πk/p`.
pub fn angle_of(k: u64, p: u64) -> f64 {
    2.0 * PI * k as f64 / p as f64
}

/// An automaton `M_K` for MOD_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QfaSpec {
    p: u64,
    ks: Vec<u64>,
}

impl QfaSpec {
    pub fn new(p: u64, ks: Vec<u64>) -> Result<Self> {
        check_prime(p)?;
        if ks.is_empty() || !ks.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(ks.len()));
        }
        for &k in &ks {
            if k == 0 || k >= p {
                return Err(Error::KOutOfRange { k, p });
            }
        }
        Ok(QfaSpec { p, ks })
    }

    /// Pads `ks` to the next power of two by repeating its last entry.
    pub fn padded(p: u64, mut ks: Vec<u64>) -> Result<Self> {
        if let Some(&last) = ks.last() {
            ks.resize(ks.len().next_power_of_two(), last);
        }
        QfaSpec::new(p, ks)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ks(&self) -> &[u64] {
        &self.ks
    }

    pub fn d(&self) -> usize {
        self.ks.len()
    }

    pub fn log_d(&self) -> usize {
        self.ks.len().trailing_zeros() as usize
    }

    /// `α_j = 2πk_j/p`.
    pub fn alphas(&self) -> Vec<f64> {
        self.ks.iter().map(|&k| angle_of(k, self.p)).collect()
    }

    /// `U_a`, with block `x` acting when the control register holds `x`.
    pub fn ua(&self) -> Result<UnitaryMatrix> {
        block_rotation(&self.alphas())
    }
}

/// `diag(Ry(θ_0), …, Ry(θ_{d-1}))`.
pub fn block_rotation(angles: &[f64]) -> Result<UnitaryMatrix> {
    let blocks: Vec<UnitaryMatrix> = angles.iter().map(|&a| matrix::rotation_ry(a)).collect();
    UnitaryMatrix::block_diagonal(&blocks)
}

/// `H^{⊗log d} ⊗ I₂`.
pub fn end_marker(d: usize) -> Result<UnitaryMatrix> {
    if !d.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(d));
    }
    let mut u = matrix::identity2();
    for _ in 0..d.trailing_zeros() {
        u = matrix::hadamard().kron(&u)?;
    }
    Ok(u)
}

/// Acceptance probability of `M_k` on `a^m`, by repeated application of `R_k`.
pub fn accept_prob_single(p: u64, k: u64, m: u64) -> Result<f64> {
    check_prime(p)?;
    if k == 0 || k >= p {
        return Err(Error::KOutOfRange { k, p });
    }
    let r = matrix::rotation_ry(angle_of(k, p));
    let mut v = vec![ONE, ZERO];
    for _ in 0..m {
        v = r.apply(&v)?;
    }
    Ok(v[0].norm_sqr())
}

/// Acceptance probability of the block model with arbitrary per-block angles
/// on `a^m`, evaluated as `U_$ · U_a^m · U_¢ |0…0⟩`.
pub fn accept_prob_blocks(angles: &[f64], m: u64) -> Result<f64> {
    let d = angles.len();
    let frame = end_marker(d)?;
    let ua = block_rotation(angles)?;
    let mut v = vec![ZERO; 2 * d];
    v[0] = ONE;
    v = frame.apply(&v)?;
    for _ in 0..m {
        v = ua.apply(&v)?;
    }
    v = frame.apply(&v)?;
    Ok(v[0].norm_sqr())
}

pub fn accept_prob_parallel(spec: &QfaSpec, m: u64) -> Result<f64> {
    accept_prob_blocks(&spec.alphas(), m)
}

/// Acceptance probabilities over one period of input lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct AcceptanceProfile {
    pub p: u64,
    /// `probs[m]` is the acceptance probability of `a^m`.
    pub probs: Vec<f64>,
    /// Largest non-member acceptance probability.
    pub epsilon: f64,
}

/// Profile of the block model with `angles`, for `m = 0..p`.
pub fn profile_of_angles(angles: &[f64], p: u64) -> Result<AcceptanceProfile> {
    let d = angles.len();
    let frame = end_marker(d)?;
    let ua = block_rotation(angles)?;
    let mut v = vec![ZERO; 2 * d];
    v[0] = ONE;
    v = frame.apply(&v)?;
    let mut probs = Vec::with_capacity(p as usize);
    for m in 0..p {
        if m > 0 {
            v = ua.apply(&v)?;
        }
        let out: C64 = frame.row(0).iter().zip(&v).map(|(a, b)| a * b).sum();
        probs.push(out.norm_sqr());
    }
    let epsilon = probs.iter().skip(1).copied().fold(0.0, f64::max);
    Ok(AcceptanceProfile { p, probs, epsilon })
}

pub fn profile(spec: &QfaSpec) -> Result<AcceptanceProfile> {
    profile_of_angles(&spec.alphas(), spec.p)
}

/// Largest acceptance probability over the non-member residues `m ∈ [1, p−1]`.
pub fn error_bound(spec: &QfaSpec) -> Result<f64> {
    Ok(profile(spec)?.epsilon)
}

pub(crate) fn check_search_params(p: u64, d: usize, target_eps: f64) -> Result<()> {
    check_prime(p)?;
    if d < 2 || !d.is_power_of_two() {
        return Err(Error::InvalidParameter(format!("d = {d} must be a power of two ≥ 2")));
    }
    if !(target_eps > 0.0 && target_eps < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "target epsilon {target_eps} must lie in (0, 1/2)"
        )));
    }
    Ok(())
}

/// Samples `K` uniformly from `[1, p−1]^d` and returns the first spec whose
/// error bound is at most `target_eps`, or `None` after `budget` trials.
pub fn search_k(p: u64, d: usize, target_eps: f64, budget: u64, seed: u64) -> Result<Option<QfaSpec>> {
    check_search_params(p, d, target_eps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let ks: Vec<u64> = (0..d).map(|_| rng.gen_range(1..p)).collect();
        let spec = QfaSpec::new(p, ks)?;
        if error_bound(&spec)? <= target_eps {
            return Ok(Some(spec));
        }
    }
    Ok(None)
}
