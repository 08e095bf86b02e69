//! Hyperbolic structures on W and its Dehn fillings.

pub mod dilog;
pub mod gluing;
pub mod nz;
pub mod potential;
pub mod solver;

pub use dilog::{bloch_wigner, lobachevsky, tet_volume, tet_volume_from_angles};
pub use gluing::{horror_polynomial, Holonomy, Target, TetShapes, C64};
pub use nz::{n_phi, nz_order2, nz_order4, q_forms, volume_estimates, VolumeEstimates, V8};
pub use potential::{fit_potential_coeffs, PotentialCoeffs};
pub use solver::{
    complete_structure, solve4, solve_complete, solve_filled, solve_filled_raw, solve_for_u, SolveOptions, Solution,
};
