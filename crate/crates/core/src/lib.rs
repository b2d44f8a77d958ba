//! Bound states of the one-dimensional Klein-Gordon equation through its
//! effective Schrödinger form.
//!
//! A repulsive vector barrier higher than `2 mc^2` becomes an effective well
//! and binds particles, while scalar barriers stay barriers. The crate
//! provides the effective-potential transformation, closed-form square
//! profile solutions, a Numerov shooting solver for arbitrary shapes,
//! independent brute-force oracles, and sweeps that tie them together.
//!
//! Runnable walkthroughs live in `examples/`; the `kleinwell` binary exposes
//! the same functionality on the command line.

pub mod analytic_square;
pub mod cli;
pub mod error;
pub mod numerics;
pub mod oracle;
pub mod params;
pub mod potentials;
pub mod spectra;

pub use analytic_square::{
    bound_energy_window, square_barrier_transmission, square_bound_energies, square_transmission,
    BoundState, InteriorCharacter, Parity, ScatteringPoint, WaveNumbers,
};
pub use error::{Error, Result};
pub use numerics::{
    count_nodes, default_grid, find_bound_states, normalize, numerov_integrate, shoot_mismatch,
    Direction, Grid, ShotResult, SolverOptions,
};
pub use oracle::{dense_scan_spectrum, transfer_matrix_transmission, TransferSlices};
pub use params::{rest_energy, ModelParams};
pub use potentials::{
    classify_regime, effective_energy, effective_form, effective_potential, CouplingKind,
    EffectiveForm, PotentialProfile, Regime, Shape, Table,
};
pub use spectra::{
    classify_count_jump, compare_couplings, conjugation_report, continuity_violations,
    positive_energy_onset, solve_spectrum, sweep_extent, sweep_strength, CountJump, ShapeFamily,
    SolverChoice, SweepAxis, SweepRecord,
};
