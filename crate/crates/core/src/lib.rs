//! Two-qubit entanglement near a Schwarzschild horizon.
//!
//! Two observers, Alice and Bob, share an isotropic two-qubit state while
//! hovering outside a black hole. Hawking radiation splits each observer's
//! field mode into a part outside the horizon (mode I) and a part inside
//! (mode II); the strength of the split is an acceleration parameter
//! `r ∈ [0, π/4]` fixed by the mode frequency and the Hawking temperature.
//! On top of that, Bob's mode may decohere through a phase-damping,
//! phase-flip or bit-flip channel.
//!
//! The crate computes the concurrence of every two-mode marginal of the
//! resulting four-mode state along two independent routes:
//!
//! - **numeric** ([`pipeline`]): build the matrices, dilate, trace, apply
//!   Kraus operators, then run the spin-flip eigenvalue construction;
//! - **closed form** ([`analytic`]): evaluate the known expressions for the
//!   same quantities in O(1), including the piecewise bit-flip structure
//!   with its entanglement death and revival thresholds, and the trade-off
//!   sums that stay constant across the four marginals.
//!
//! The two routes are paired against each other throughout the test suite.

pub mod analytic;
pub mod channels;
pub mod concurrence;
pub mod density;
pub mod eig;
pub mod error;
pub mod hawking;
pub mod matrix;
pub mod pipeline;

pub use analytic::{
    bf_coefficients, bf_thresholds, concurrence_bf, concurrence_closed_form, concurrence_pd,
    concurrence_pf, concurrence_vacuum, tradeoff_sum, BranchKind, CoefficientTable,
    PiecewiseBranch, TradeoffMode,
};
pub use channels::{
    apply_both_sided, apply_one_sided, make_channel, noisy_reduced_state, ChannelKind,
    KrausChannel,
};
pub use concurrence::{concurrence_wootters, concurrence_xstate, xstate_spectrum, ConcurrenceResult};
pub use density::{
    bloch_to_density, density_to_bloch, partial_trace, validate_density, BlochXParams,
    DensityDiagnostics, DensityMatrix, QubitLabel,
};
pub use error::{Error, Result};
pub use hawking::{
    acceleration_parameter, dilate_two_qubit, hawking_temperature, isotropic_state, reduced_state,
    reduced_state_numeric, HawkingFrame, Sector, ThermalSpec,
};
pub use matrix::{C64, CMat};
pub use pipeline::{noisy_marginal_numeric, numeric_concurrence, numeric_concurrence_result};
