//! Synthesis of uniformly controlled rotations and their building blocks.

mod lower;
mod mcx;
mod uniform;

pub use lower::{cancel_x_pairs, decompose, materialize_polarity};
pub use mcx::{
    c3x_gates, decompose_mcry, decompose_mcx, mc_rotation_gates, mcx_gates, rc3x_gates, rccx_gates,
    toffoli_gates,
};
pub use uniform::{
    gray_walsh, hybrid_cost_formula, in_formula_range, inverse_gray_walsh, mottonen_angles,
    naive_cost_bound, naive_residual_cost_formula, pair_gates, synth_hybrid, synth_hybrid_axis,
    synth_mottonen, synth_mottonen_axis, synth_naive, synth_pair, AngleVector, HybridPlan,
};
