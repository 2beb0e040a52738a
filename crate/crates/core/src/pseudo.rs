//! Pseudo rotations: `log d + 1` rotations whose block angle is the affine
//! combination `ξ(c) = ξ_0 + Σ_i c_i ξ_i` of the control bits.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{elaborate, Circuit, Control, Gate};
use crate::error::{Error, Result};
use crate::matrix::{UnitaryMatrix, C64, ONE, ZERO};
use crate::qfa::{angle_of, check_prime, check_search_params, end_marker, AcceptanceProfile};

#[derive(Debug, Clone, PartialEq)]
pub struct PseudoSpec {
    p: u64,
    /// `xis[0]` is unconditional; `xis[i]` is controlled by wire `i − 1`.
    xis: Vec<f64>,
}

impl PseudoSpec {
    pub fn new(p: u64, xis: Vec<f64>) -> Result<Self> {
        check_prime(p)?;
        if xis.is_empty() {
            return Err(Error::InvalidParameter("at least one angle is required".into()));
        }
        if xis.len() > 12 {
            return Err(Error::TooManyQubits {
                requested: xis.len(),
                max: 12,
            });
        }
        if xis.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteAngle);
        }
        Ok(PseudoSpec { p, xis })
    }

    /// `ξ_i = 2π·ks[i]/p`, `ks[0]` unconditional.
    pub fn from_multipliers(p: u64, ks: &[u64]) -> Result<Self> {
        check_prime(p)?;
        PseudoSpec::new(p, ks.iter().map(|&k| angle_of(k, p)).collect())
    }

    /// Reads a published K list with the controlled multipliers first and the
    /// unconditional multiplier last, e.g. `[3, 6, 19, 2, 8]` gives `ξ_0 = 8`.
    pub fn from_published_k(p: u64, ks: &[u64]) -> Result<Self> {
        let Some((&free, controlled)) = ks.split_last() else {
            return Err(Error::InvalidParameter("empty K".into()));
        };
        let mut order = vec![free];
        order.extend_from_slice(controlled);
        PseudoSpec::from_multipliers(p, &order)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn xis(&self) -> &[f64] {
        &self.xis
    }

    pub fn num_controls(&self) -> usize {
        self.xis.len() - 1
    }

    pub fn d(&self) -> usize {
        1 << self.num_controls()
    }

    /// `ξ(x)` for every control register value `x` (wire 0 most significant).
    pub fn effective_angles(&self) -> Vec<f64> {
        let l = self.num_controls();
        (0..self.d())
            .map(|x| {
                self.xis[0]
                    + (1..=l)
                        .filter(|&i| (x >> (l - i)) & 1 == 1)
                        .map(|i| self.xis[i])
                        .sum::<f64>()
            })
            .collect()
    }
}

/// One symbol: `Ry(ξ_0)` on the target, then `ξ_i` controlled by wire `i − 1`.
pub fn synth_pseudo(spec: &PseudoSpec) -> Result<Circuit> {
    let l = spec.num_controls();
    let mut c = Circuit::new(l + 1)?;
    c.push(Gate::Ry {
        qubit: l,
        theta: spec.xis[0],
    })?;
    for i in 1..=l {
        c.push(Gate::MCRy {
            controls: vec![Control::filled(i - 1)],
            target: l,
            theta: spec.xis[i],
        })?;
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealizableK {
    /// `ξ(x)·p/(2π)` per block.
    pub multiples: Vec<f64>,
    /// Every multiple is an integer to within `1e-9`.
    pub integral: bool,
    /// The multiples reduced mod `p`, when integral.
    pub ks_mod_p: Option<Vec<u64>>,
}

pub fn realizable_k(spec: &PseudoSpec, p: u64) -> RealizableK {
    let multiples: Vec<f64> = spec
        .effective_angles()
        .iter()
        .map(|a| a * p as f64 / (2.0 * PI))
        .collect();
    let integral = multiples.iter().all(|m| (m - m.round()).abs() < 1e-9);
    let ks_mod_p = integral.then(|| {
        multiples
            .iter()
            .map(|m| (m.round() as i64).rem_euclid(p as i64) as u64)
            .collect()
    });
    RealizableK {
        multiples,
        integral,
        ks_mod_p,
    }
}

/// Acceptance profile obtained by simulating the pseudo circuit for
/// `m = 0..p` symbols between Hadamard end-markers.
pub fn simulated_profile(spec: &PseudoSpec) -> Result<AcceptanceProfile> {
    let u = elaborate(&synth_pseudo(spec)?)?;
    profile_from_symbol_unitary(&u, spec.d(), spec.p)
}

pub(crate) fn profile_from_symbol_unitary(u: &UnitaryMatrix, d: usize, p: u64) -> Result<AcceptanceProfile> {
    let frame = end_marker(d)?;
    let mut v = vec![ZERO; 2 * d];
    v[0] = ONE;
    v = frame.apply(&v)?;
    let mut probs = Vec::with_capacity(p as usize);
    for m in 0..p {
        if m > 0 {
            v = u.apply(&v)?;
        }
        let out: C64 = frame.row(0).iter().zip(&v).map(|(a, b)| a * b).sum();
        probs.push(out.norm_sqr());
    }
    let epsilon = probs.iter().skip(1).copied().fold(0.0, f64::max);
    Ok(AcceptanceProfile { p, probs, epsilon })
}

/// Samples integral `ξ` vectors (each `ξ_i = 2πk/p`, `k ∈ [1, p−1]`) and
/// returns the first whose simulated error bound is at most `target_eps`.
pub fn search_xi(p: u64, d: usize, target_eps: f64, budget: u64, seed: u64) -> Result<Option<PseudoSpec>> {
    check_search_params(p, d, target_eps)?;
    let len = d.trailing_zeros() as usize + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let ks: Vec<u64> = (0..len).map(|_| rng.gen_range(1..p)).collect();
        let spec = PseudoSpec::from_multipliers(p, &ks)?;
        if simulated_profile(&spec)?.epsilon <= target_eps {
            return Ok(Some(spec));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_block_angles() {
        let s = PseudoSpec::new(5, vec![0.5, 0.25]).unwrap();
        assert_eq!(s.effective_angles(), vec![0.5, 0.75]);
        let s = PseudoSpec::new(5, vec![1.0, 2.0, 4.0]).unwrap();
        assert_eq!(s.effective_angles(), vec![1.0, 5.0, 3.0, 7.0]);
    }

    #[test]
    fn additive_multiples() {
        let s = PseudoSpec::from_multipliers(11, &[3, 4]).unwrap();
        let r = realizable_k(&s, 11);
        assert!(r.integral);
        assert!((r.multiples[0] - 3.0).abs() < 1e-9);
        assert!((r.multiples[1] - 7.0).abs() < 1e-9);
        assert_eq!(r.ks_mod_p, Some(vec![3, 7]));
        let r = realizable_k(&PseudoSpec::new(11, vec![0.1, 0.2]).unwrap(), 11);
        assert!(!r.integral);
        assert_eq!(r.ks_mod_p, None);
    }

    #[test]
    fn published_order_puts_free_term_last() {
        let s = PseudoSpec::from_published_k(37, &[3, 6, 19, 2, 8]).unwrap();
        assert!((s.xis()[0] - angle_of(8, 37)).abs() < 1e-15);
        assert!((s.xis()[1] - angle_of(3, 37)).abs() < 1e-15);
        assert_eq!(s.d(), 16);
    }

    #[test]
    fn circuit_shape() {
        let s = PseudoSpec::from_multipliers(7, &[1, 2, 3, 4]).unwrap();
        let c = synth_pseudo(&s).unwrap();
        assert_eq!(c.num_qubits(), 4);
        assert_eq!(c.count("RY"), 1);
        assert_eq!(c.count("MCRY"), 3);
    }
}
