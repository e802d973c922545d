//! Linear canonical transformations `Q = A q + D p`, `P = B p + C q` and the
//! expansion of the transformed basis in the original one.

mod closed;
mod delta;
mod expand;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{ScalarExpr, Symbol};
use crate::weyl::WeylOp;

pub use closed::{resummation_check, transform_t_diag_classical, transform_t_momentum_shifted, ResummationReport};
pub use delta::{derive_delta_coeffs, DeltaCoeffs};
pub use expand::{expand_p_inverse, expand_q_power, transform_t, transform_t_bands, Band};

/// Coefficients of `Q = A q + D p`, `P = B p + C q`, with `AB - CD = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub struct LinearCanonicalTransform {
    pub a: ScalarExpr,
    pub b: ScalarExpr,
    pub c: ScalarExpr,
    pub d: ScalarExpr,
}

impl LinearCanonicalTransform {
    pub fn new(a: ScalarExpr, b: ScalarExpr, c: ScalarExpr, d: ScalarExpr) -> Result<Self> {
        let t = Self { a, b, c, d };
        t.check()?;
        Ok(t)
    }

    /// Re-check `AB - CD = 1`, e.g. after deserializing.
    pub fn check(&self) -> Result<()> {
        let det = &(&self.a * &self.b) - &(&self.c * &self.d);
        if det != ScalarExpr::one() {
            return Err(Error::NotCanonical(det.to_string()));
        }
        Ok(())
    }

    pub fn identity() -> Self {
        Self { a: ScalarExpr::one(), b: ScalarExpr::one(), c: ScalarExpr::zero(), d: ScalarExpr::zero() }
    }

    /// `Q = q / b`, `P = b p`.
    pub fn scaling(b: ScalarExpr) -> Result<Self> {
        Self::new(b.inverse()?, b, ScalarExpr::zero(), ScalarExpr::zero())
    }

    /// `Q = q / rho`, `P = rho p - mu rhodot q`.
    pub fn ermakov() -> Self {
        let c = -(&ScalarExpr::sym(Symbol::Mu) * &ScalarExpr::sym(Symbol::Rhodot));
        Self { a: ScalarExpr::pow_sym(Symbol::Rho, -1), b: ScalarExpr::sym(Symbol::Rho), c, d: ScalarExpr::zero() }
    }

    /// [`ermakov`](Self::ermakov) with mass `1/z`: `P = rho p - (rhodot/z) q`.
    pub fn ermakov_z() -> Self {
        let c = -(&ScalarExpr::pow_sym(Symbol::Z, -1) * &ScalarExpr::sym(Symbol::Rhodot));
        Self { a: ScalarExpr::pow_sym(Symbol::Rho, -1), b: ScalarExpr::sym(Symbol::Rho), c, d: ScalarExpr::zero() }
    }

    /// `self` after `other`: the coefficient matrix `[[A, D], [C, B]]`
    /// multiplies as `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        let (a1, d1, c1, b1) = (&self.a, &self.d, &self.c, &self.b);
        let (a2, d2, c2, b2) = (&other.a, &other.d, &other.c, &other.b);
        Self {
            a: &(a1 * a2) + &(d1 * c2),
            d: &(a1 * d2) + &(d1 * b2),
            c: &(c1 * a2) + &(b1 * c2),
            b: &(c1 * d2) + &(b1 * b2),
        }
    }

    /// `Q` in the original basis.
    pub fn q_image(&self) -> WeylOp {
        let mut out = WeylOp::single(crate::weyl::WeylIndex::new(0, 1), self.a.clone());
        out.add_term(crate::weyl::WeylIndex::new(1, 0), &self.d);
        out
    }

    /// `P` in the original basis.
    pub fn p_image(&self) -> WeylOp {
        let mut out = WeylOp::single(crate::weyl::WeylIndex::new(1, 0), self.b.clone());
        out.add_term(crate::weyl::WeylIndex::new(0, 1), &self.c);
        out
    }
}

/// Truncation of a transformed expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformConfig {
    /// Highest band kept; band `r` collects the `T[-r, .]` terms of a `D = 0`
    /// expansion, i.e. the leading power plus the order in `C`.
    pub r_max: usize,
    /// Highest power of `hbar` kept, `None` for all.
    pub hbar_order: Option<u32>,
}

impl TransformConfig {
    pub fn new(r_max: usize) -> Self {
        Self { r_max, hbar_order: None }
    }

    pub fn classical(r_max: usize) -> Self {
        Self { r_max, hbar_order: Some(0) }
    }

    pub(crate) fn filter_hbar(&self, op: &WeylOp) -> WeylOp {
        match self.hbar_order {
            None => op.clone(),
            Some(k) => op.map_coeffs(|c| c.truncate_exp(Symbol::Hbar, k as i32)),
        }
    }
}
