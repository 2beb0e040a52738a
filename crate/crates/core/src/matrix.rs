//! Dense complex matrices for gate algebra.
//!
//! Rotation conventions: `rotation_ry(θ)` is the real plane rotation
//! `[[cos θ, -sin θ], [sin θ, cos θ]]` and `rotation_rz(θ)` is
//! `diag(e^{-iθ}, e^{iθ})`. Both rotate by the full angle, which is what makes
//! `SX† · Rz(θ) · SX = Ry(θ)` hold exactly for every θ.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Tolerance for freshly constructed gate matrices.
pub const GATE_TOL: f64 = 1e-12;
/// Tolerance for products of many gates.
pub const CIRCUIT_TOL: f64 = 1e-10;

/// Largest supported matrix dimension (12 qubits).
pub const MAX_DIM: usize = 1 << 12;

/// Square complex matrix with power-of-two dimension, stored row-major.
#[derive(Clone, PartialEq)]
pub struct UnitaryMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl UnitaryMatrix {
    pub fn identity(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        Ok(UnitaryMatrix { dim, data })
    }

    /// Builds a matrix from row-major entries. Unitarity is not enforced here;
    /// call [`UnitaryMatrix::is_unitary`] when it matters.
    pub fn from_row_major(dim: usize, data: Vec<C64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: dim * dim,
                right: data.len(),
            });
        }
        Ok(UnitaryMatrix { dim, data })
    }

    fn two_by_two(a: C64, b: C64, c: C64, d: C64) -> Self {
        UnitaryMatrix {
            dim: 2,
            data: vec![a, b, c, d],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, row: usize) -> &[C64] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    /// Matrix product `self · rhs`.
    pub fn matmul(&self, rhs: &UnitaryMatrix) -> Result<UnitaryMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                let out_row = &mut out[i * n..(i + 1) * n];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(UnitaryMatrix { dim: n, data: out })
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                out[j * n + i] = self.data[i * n + j].conj();
            }
        }
        UnitaryMatrix { dim: n, data: out }
    }

    pub fn scale(&self, factor: C64) -> UnitaryMatrix {
        UnitaryMatrix {
            dim: self.dim,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> UnitaryMatrix {
        let mut result = UnitaryMatrix::identity(self.dim).expect("dimension already checked");
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.matmul(&base).expect("same dimension");
            }
            base = base.matmul(&base).expect("same dimension");
            e >>= 1;
        }
        result
    }

    pub fn kron(&self, rhs: &UnitaryMatrix) -> Result<UnitaryMatrix> {
        let dim = self.dim * rhs.dim;
        check_dim(dim)?;
        let mut data = vec![ZERO; dim * dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self.data[i * self.dim + j];
                if a == ZERO {
                    continue;
                }
                for k in 0..rhs.dim {
                    for l in 0..rhs.dim {
                        let row = i * rhs.dim + k;
                        let col = j * rhs.dim + l;
                        data[row * dim + col] = a * rhs.data[k * rhs.dim + l];
                    }
                }
            }
        }
        Ok(UnitaryMatrix { dim, data })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            });
        }
        Ok((0..self.dim)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Block-diagonal matrix `diag(b_0, b_1, ...)`; all blocks share a size.
    pub fn block_diagonal(blocks: &[UnitaryMatrix]) -> Result<UnitaryMatrix> {
        let Some(first) = blocks.first() else {
            return Err(Error::InvalidParameter("no blocks".into()));
        };
        let b = first.dim;
        let dim = b * blocks.len();
        check_dim(dim)?;
        let mut data = vec![ZERO; dim * dim];
        for (idx, block) in blocks.iter().enumerate() {
            if block.dim != b {
                return Err(Error::DimensionMismatch {
                    left: b,
                    right: block.dim,
                });
            }
            let off = idx * b;
            for r in 0..b {
                for c in 0..b {
                    data[(off + r) * dim + off + c] = block.data[r * b + c];
                }
            }
        }
        Ok(UnitaryMatrix { dim, data })
    }

    /// `max |(U U†) - I|` over all entries.
    pub fn unitarity_error(&self) -> f64 {
        let prod = self.matmul(&self.adjoint()).expect("same dimension");
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let expected = if i == j { ONE } else { ZERO };
                worst = worst.max((prod.get(i, j) - expected).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }

    pub fn max_abs_diff(&self, other: &UnitaryMatrix) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

impl fmt::Debug for UnitaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "UnitaryMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = self
                .row(r)
                .iter()
                .map(|v| format!("{:+.4}{:+.4}i", v.re, v.im))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    if dim > MAX_DIM {
        return Err(Error::TooManyQubits {
            requested: dim.trailing_zeros() as usize,
            max: MAX_DIM.trailing_zeros() as usize,
        });
    }
    Ok(())
}

/// Real plane rotation by `theta`.
pub fn rotation_ry(theta: f64) -> UnitaryMatrix {
    let (s, c) = theta.sin_cos();
    UnitaryMatrix::two_by_two(C64::from(c), C64::from(-s), C64::from(s), C64::from(c))
}

/// `diag(e^{-iθ}, e^{iθ})`.
pub fn rotation_rz(theta: f64) -> UnitaryMatrix {
    UnitaryMatrix::two_by_two(C64::from_polar(1.0, -theta), ZERO, ZERO, C64::from_polar(1.0, theta))
}

/// `diag(1, e^{iλ})`.
pub fn phase(lambda: f64) -> UnitaryMatrix {
    UnitaryMatrix::two_by_two(ONE, ZERO, ZERO, C64::from_polar(1.0, lambda))
}

pub fn gate_sx() -> UnitaryMatrix {
    let a = C64::new(0.5, 0.5);
    let b = C64::new(0.5, -0.5);
    UnitaryMatrix::two_by_two(a, b, b, a)
}

pub fn gate_sxdg() -> UnitaryMatrix {
    gate_sx().adjoint()
}

pub fn hadamard() -> UnitaryMatrix {
    let h = C64::from(FRAC_1_SQRT_2);
    UnitaryMatrix::two_by_two(h, h, h, -h)
}

pub fn pauli_x() -> UnitaryMatrix {
    UnitaryMatrix::two_by_two(ZERO, ONE, ONE, ZERO)
}

pub fn pauli_y() -> UnitaryMatrix {
    UnitaryMatrix::two_by_two(ZERO, -I, I, ZERO)
}

pub fn pauli_z() -> UnitaryMatrix {
    UnitaryMatrix::two_by_two(ONE, ZERO, ZERO, -ONE)
}

pub fn gate_s() -> UnitaryMatrix {
    phase(std::f64::consts::FRAC_PI_2)
}

pub fn gate_sdg() -> UnitaryMatrix {
    phase(-std::f64::consts::FRAC_PI_2)
}

pub fn identity2() -> UnitaryMatrix {
    UnitaryMatrix::two_by_two(ONE, ZERO, ZERO, ONE)
}

pub fn kron(a: &UnitaryMatrix, b: &UnitaryMatrix) -> Result<UnitaryMatrix> {
    a.kron(b)
}

/// Phase that best aligns `b` with `a`, read off the largest-magnitude entry
/// of `b` (ties go to the lowest row-major index).
pub fn aligning_phase(a: &UnitaryMatrix, b: &UnitaryMatrix) -> Result<C64> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    let mut best = 0;
    let mut best_mag = -1.0;
    for (i, v) in b.data.iter().enumerate() {
        let mag = v.norm();
        if mag > best_mag {
            best = i;
            best_mag = mag;
        }
    }
    if best_mag <= 0.0 {
        return Ok(ONE);
    }
    let ratio = a.data[best] / b.data[best];
    let norm = ratio.norm();
    Ok(if norm > 0.0 { ratio / norm } else { ONE })
}

/// `max |a - e^{iφ} b|` with φ from [`aligning_phase`].
pub fn phase_deviation(a: &UnitaryMatrix, b: &UnitaryMatrix) -> Result<f64> {
    let ph = aligning_phase(a, b)?;
    Ok(a
        .data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - ph * y).norm())
        .fold(0.0, f64::max))
}

pub fn equal_up_to_global_phase(a: &UnitaryMatrix, b: &UnitaryMatrix, tol: f64) -> Result<bool> {
    Ok(phase_deviation(a, b)? <= tol)
}

/// Permutation matrix sending logical basis states to physical ones:
/// logical qubit `q` is stored on physical wire `layout[q]` (qubit 0 is the
/// most significant bit on both sides).
pub fn layout_permutation(layout: &[usize]) -> Result<UnitaryMatrix> {
    let n = layout.len();
    let dim = 1usize << n;
    check_dim(dim)?;
    let mut seen = vec![false; n];
    for &p in layout {
        if p >= n || seen[p] {
            return Err(Error::InvalidParameter(format!("{layout:?} is not a permutation")));
        }
        seen[p] = true;
    }
    let mut data = vec![ZERO; dim * dim];
    for x in 0..dim {
        let mut y = 0usize;
        for (q, &p) in layout.iter().enumerate() {
            if (x >> (n - 1 - q)) & 1 == 1 {
                y |= 1 << (n - 1 - p);
            }
        }
        data[y * dim + x] = ONE;
    }
    Ok(UnitaryMatrix { dim, data })
}
