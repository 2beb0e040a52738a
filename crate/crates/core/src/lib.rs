//! Synthesis, basis rewriting, line routing and simulation of quantum finite
//! automata for the unary languages MOD_p.
//!
//! Conventions shared by every module:
//! - wire 0 is the most significant bit of basis labels;
//! - `Ry(θ)` and `Rz(θ) = diag(e^{−iθ}, e^{iθ})` both rotate by the full angle;
//! - a word is accepted when all wires read zero.

pub mod circuit;
pub mod error;
mod kernel;
pub mod lnn;
pub mod matrix;
pub mod pipeline;
pub mod pseudo;
pub mod qfa;
pub mod rewrite;
pub mod sim;
pub mod synth;

pub use error::{Error, Result};
