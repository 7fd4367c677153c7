//! Coined discrete-time quantum walks and walk-based spatial search on
//! low-dimensional graph structures.
//!
//! A walk lives on a [`graphs::PortedGraph`]: every vertex owns one port per
//! incident edge and the shift operator is a fixed permutation of the
//! (vertex, port) basis labels. Each time step applies a per-vertex coin
//! unitary ([`coins`]) and then the shift ([`walk`]). Spatial search marks
//! one vertex with a different coin and tracks its occupation probability
//! over time ([`search`]); scaling fits, the kink comparison, and the
//! classical baseline live in [`analysis`].

pub mod analysis;
pub mod coins;
pub mod graphs;
pub mod search;
pub mod walk;

pub use analysis::{
    classical_line_distribution, distribution_std, dominant_period, fit_inverse_log,
    fit_peak_time_power, fit_piecewise_sqrt, fit_sqrt, kink_edge_report, AnalysisError, FitModel,
    KinkReport, KinkRow, ScalingFit, ScalingPoint,
};
pub use coins::{check_unitary, realize_coin, CoinError, CoinFamily, CoinMatrix, CoinSpec};
pub use graphs::{
    build_bethe, build_hex_torus, build_line, build_line_styled, build_torus, validate_graph,
    BetheSpec, Boundary, GraphError, GraphKind, GraphSpec, GraphViolation, PortedGraph, ShiftStyle,
};
pub use search::{
    amplification_estimate, default_step_budget, delta_sweep_line, detect_peaks,
    first_significant_peak, initial_state, run_search, run_search_on, InitialState, PeakRecord,
    SearchConfig, SearchError, SearchRun,
};
pub use walk::{
    apply_coin, apply_shift, evolve, evolve_adjoint, step, CoinAssignment, StepOperator, WalkError,
    WalkState,
};
