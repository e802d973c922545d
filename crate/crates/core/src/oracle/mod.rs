//! Independent checks: word rewriting, a momentum-grid matrix model, an
//! Ermakov integrator and symbolic invariance tests.

pub mod ermakov;
pub mod grid;
pub mod invariant_check;
pub mod suites;
pub mod words;

pub use ermakov::{convergence_ratio, ermakov_solve, ErmakovSolution, ErmakovSpec, Profile};
pub use grid::{build_grid_rep, grid_check, grid_commutator_check, grid_residual, GridRep, GridReport};
pub use invariant_check::{invariant_check, potential_condition_check, standard_hamiltonian, InvariantReport};
pub use words::{nc_commutator_oracle, nc_word_reorder, Letter, NcWord};
