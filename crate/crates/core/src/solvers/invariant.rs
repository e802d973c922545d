use serde::{Deserialize, Serialize};

use crate::scalar::{ScalarExpr, Symbol};
use crate::weyl::{WeylIndex, WeylOp};

/// Family of a dynamical invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InvariantKind {
    Quadratic,
    Linear,
    Quartic,
    Powerlaw(i64),
}

/// `I = eta p^2 + beta q^2 - gamma (pq + qp) + delta q^deg`, where `deg` is
/// 1 (linear), 4 (quartic), `L` (power law) and absent for the quadratic kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantSpec {
    pub kind: InvariantKind,
    pub eta: ScalarExpr,
    pub beta: ScalarExpr,
    pub gamma: ScalarExpr,
    pub delta: ScalarExpr,
}

fn s(sym: Symbol) -> ScalarExpr {
    ScalarExpr::sym(sym)
}

fn p(sym: Symbol, e: i32) -> ScalarExpr {
    ScalarExpr::pow_sym(sym, e)
}

impl InvariantSpec {
    /// `rho^2 p^2 - mu rho rhodot (pq+qp) + (mu^2 rhodot^2 + rho^-2) q^2`.
    pub fn quadratic() -> Self {
        let mr = &s(Symbol::Mu) * &s(Symbol::Rhodot);
        Self {
            kind: InvariantKind::Quadratic,
            eta: p(Symbol::Rho, 2),
            beta: &(&mr * &mr) + &p(Symbol::Rho, -2),
            gamma: &mr * &s(Symbol::Rho),
            delta: ScalarExpr::zero(),
        }
    }

    fn z_family(kind: InvariantKind, delta: ScalarExpr) -> Self {
        let rz = &s(Symbol::Rhodot) * &p(Symbol::Z, -1);
        Self {
            kind,
            eta: p(Symbol::Rho, 2),
            beta: &p(Symbol::Rho, -2) + &(&rz * &rz),
            gamma: &rz * &s(Symbol::Rho),
            delta,
        }
    }

    /// `rho^2 p^2 + beta q^2 - gamma (pq+qp) + q/rho`, `beta = rho^-2 + rhodot^2/z^2`, `gamma = rho rhodot/z`.
    pub fn linear() -> Self {
        Self::z_family(InvariantKind::Linear, p(Symbol::Rho, -1))
    }

    /// Same `eta, beta, gamma` as [`linear`](Self::linear), plus `q^4/rho^4`.
    pub fn quartic() -> Self {
        Self::z_family(InvariantKind::Quartic, p(Symbol::Rho, -4))
    }

    /// Image of `(P^2 + Q^2)/2 + Q^L/L` under `Q = q/rho`, `P = rho p - mu rhodot q`.
    pub fn powerlaw(l: i64) -> Self {
        let mr = &s(Symbol::Mu) * &s(Symbol::Rhodot);
        let half = ScalarExpr::ratio(1, 2);
        Self {
            kind: InvariantKind::Powerlaw(l),
            eta: &p(Symbol::Rho, 2) * &half,
            beta: &(&(&mr * &mr) + &p(Symbol::Rho, -2)) * &half,
            gamma: &(&mr * &s(Symbol::Rho)) * &half,
            delta: &p(Symbol::Rho, -(l as i32)) * &ScalarExpr::ratio(1, l),
        }
    }

    fn degree(&self) -> Option<i64> {
        match self.kind {
            InvariantKind::Quadratic => None,
            InvariantKind::Linear => Some(1),
            InvariantKind::Quartic => Some(4),
            InvariantKind::Powerlaw(l) => Some(l),
        }
    }
}

/// The invariant as an operator, with `pq + qp = 2 T[1,1]`.
pub fn build_invariant(spec: &InvariantSpec) -> WeylOp {
    let mut op = WeylOp::zero();
    op.add_term(WeylIndex::new(2, 0), &spec.eta);
    op.add_term(WeylIndex::new(0, 2), &spec.beta);
    op.add_term(WeylIndex::new(1, 1), &spec.gamma.scale_rat(&crate::scalar::rat(-2, 1)));
    if let Some(d) = spec.degree() {
        op.add_term(WeylIndex::new(0, d), &spec.delta);
    }
    op
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn static_quadratic() {
        let i = build_invariant(&InvariantSpec::quadratic());
        let mut stat = WeylOp::zero();
        for (k, c) in i.iter() {
            let v = c.set_one(Symbol::Rho).set_one(Symbol::Mu).set_zero(Symbol::Rhodot).unwrap();
            stat.add_term(*k, &v);
        }
        assert_eq!(stat, &WeylOp::t(2, 0) + &WeylOp::t(0, 2));
    }

    #[test]
    fn linear_and_quartic_terms() {
        let l = build_invariant(&InvariantSpec::linear());
        assert_eq!(l.coeff(&WeylIndex::new(0, 1)), ScalarExpr::pow_sym(Symbol::Rho, -1));
        let q = build_invariant(&InvariantSpec::quartic());
        assert_eq!(q.coeff(&WeylIndex::new(0, 4)), ScalarExpr::pow_sym(Symbol::Rho, -4));
        assert_eq!(q.coeff(&WeylIndex::new(1, 1)).as_constant(), None);
    }
}
