//! Exact operator algebra in the Weyl-ordered basis `T[m,n]`, with linear
//! canonical transformations, solvers for operators conjugate to a
//! Hamiltonian, and numerical oracles to check them.

pub mod error;
pub mod liouville;
pub mod oracle;
pub mod scalar;
pub mod solvers;
pub mod transform;
pub mod weyl;

pub use error::{Error, Result};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scalars.md")]
    mod scalars {}
    #[doc = include_str!("../../../book/src/weyl-basis.md")]
    mod weyl_basis {}
    #[doc = include_str!("../../../book/src/commutators.md")]
    mod commutators {}
    #[doc = include_str!("../../../book/src/transforms.md")]
    mod transforms {}
    #[doc = include_str!("../../../book/src/conjugate-operators.md")]
    mod conjugate_operators {}
    #[doc = include_str!("../../../book/src/liouville.md")]
    mod liouville {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
