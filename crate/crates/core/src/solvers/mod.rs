//! Solvers for operators conjugate to a given Hamiltonian.

use std::collections::BTreeMap;

use crate::scalar::ScalarExpr;

mod generating;
mod invariant;
mod linear;
mod minimal;
mod powerlaw;
mod quadratic;
mod quartic;
mod table;

pub use generating::{generating_taylor, quartic_generating_value, quartic_generating_value_complex};
pub use invariant::{build_invariant, InvariantKind, InvariantSpec};
pub use linear::{linear_h0, linear_recursion_residual, solve_linear_td, LinearSolution};
pub use minimal::{solve_minimal, MinimalSolution};
pub use powerlaw::{
    alpha_to_op, powerlaw_hamiltonian, powerlaw_m_min, solve_powerlaw_classical, solve_powerlaw_quantum,
};
pub use quadratic::{solve_quadratic_td, QuadraticSolution};
pub use quartic::{
    quartic_a_table, quartic_b_table, quartic_c_table, quartic_h0, quartic_theta, solve_quartic, QuarticSolution,
};
pub use table::{Comparison, IndexedCoeff, Mismatch, RecurrenceTable, ResidualReport, Scheme, Truncation};

/// Forced table entries, keyed by the table's own index tuple.
pub type Seeds = BTreeMap<Vec<i64>, ScalarExpr>;
