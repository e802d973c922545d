use serde::Serialize;

use crate::error::Result;
use crate::scalar::{Closure, ScalarExpr, Symbol};
use crate::solvers::{build_invariant, InvariantKind, InvariantSpec};
use crate::weyl::{commutator, WeylIndex, WeylOp};

/// Outcome of [`invariant_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub kind: InvariantKind,
    pub passed: bool,
    /// Nonzero coefficients of `dI/dt`, one per basis element.
    pub remainders: Vec<(WeylIndex, ScalarExpr)>,
}

fn s(sym: Symbol) -> ScalarExpr {
    ScalarExpr::sym(sym)
}

fn p(sym: Symbol, e: i32) -> ScalarExpr {
    ScalarExpr::pow_sym(sym, e)
}

/// The Hamiltonian each invariant family belongs to, and the closure eliminating `rhoddot`.
///
/// * quadratic: `p^2/(2 mu) + mu omega^2 q^2 / 2`, with `omega`
/// * linear: `z/2 (p^2 + q/(2 rho^3))`, mass `1/z`
/// * quartic: `z/2 (p^2 + q^4/(2 rho^6))`, mass `1/z`
/// * power law: `p^2/(2 mu) + q^L/(L mu rho^(L+2))`
pub fn standard_hamiltonian(kind: InvariantKind) -> (WeylOp, Closure) {
    let half = ScalarExpr::ratio(1, 2);
    let mut h = WeylOp::zero();
    match kind {
        InvariantKind::Quadratic => {
            h.add_term(WeylIndex::new(2, 0), &(&half * &p(Symbol::Mu, -1)));
            h.add_term(WeylIndex::new(0, 2), &(&(&half * &s(Symbol::Mu)) * &p(Symbol::Omega, 2)));
            (h, Closure::WithOmega)
        }
        InvariantKind::Linear | InvariantKind::Quartic => {
            let zh = &half * &s(Symbol::Z);
            h.add_term(WeylIndex::new(2, 0), &zh);
            let (deg, rho) = if kind == InvariantKind::Linear { (1, -3) } else { (4, -6) };
            h.add_term(WeylIndex::new(0, deg), &(&(&zh * &half) * &p(Symbol::Rho, rho)));
            (h, Closure::FreeZ)
        }
        InvariantKind::Powerlaw(l) => {
            h.add_term(WeylIndex::new(2, 0), &(&half * &p(Symbol::Mu, -1)));
            let c = &(&p(Symbol::Mu, -1) * &p(Symbol::Rho, -(l as i32) - 2)) * &ScalarExpr::ratio(1, l);
            h.add_term(WeylIndex::new(0, l), &c);
            (h, Closure::Free)
        }
    }
}

/// `dI/dt = dI/dt|explicit + [I, H]/(i hbar)`, with `rhoddot` eliminated by `closure`.
pub fn invariant_check(spec: &InvariantSpec, h: &WeylOp, closure: Closure) -> Result<InvariantReport> {
    let i_op = build_invariant(spec);
    let mut total = i_op.try_map_coeffs(|c| c.time_derive(closure))?;
    let inv = ScalarExpr::i_hbar().inverse()?;
    total.add_scaled(&commutator(&i_op, h)?, &inv);
    let remainders: Vec<_> = total.iter().map(|(k, c)| (*k, c.clone())).collect();
    Ok(InvariantReport { kind: spec.kind, passed: remainders.is_empty(), remainders })
}

/// True iff `mass rho^2 V(rho q, t)` is free of time-dependent symbols, for
/// `V = coeff q^L`.
pub fn potential_condition_check(coeff: &ScalarExpr, l: i64, mass: &ScalarExpr) -> bool {
    let scaled = &(mass * coeff) * &p(Symbol::Rho, l as i32 + 2);
    let ok = scaled.terms().all(|(m, _)| m.factors().all(|(sym, _)| sym == Symbol::Hbar));
    ok
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(spec: InvariantSpec) -> InvariantReport {
        let (h, closure) = standard_hamiltonian(spec.kind);
        invariant_check(&spec, &h, closure).unwrap()
    }

    #[test]
    fn quadratic_and_powerlaw_are_invariant() {
        assert!(check(InvariantSpec::quadratic()).passed);
        for l in [1, 3, 4] {
            let r = check(InvariantSpec::powerlaw(l));
            assert!(r.passed, "L={l} {:?}", r.remainders);
        }
    }

    #[test]
    fn linear_and_quartic_report_remainders() {
        let lin = check(InvariantSpec::linear());
        assert!(!lin.passed);
        assert!(lin.remainders.iter().all(|(k, _)| k.m + k.n == 1), "{:?}", lin.remainders);
        let quart = check(InvariantSpec::quartic());
        assert!(!quart.passed);
        assert!(quart.remainders.iter().all(|(k, _)| k.m + k.n == 4), "{:?}", quart.remainders);
        // halving the q-power coefficient restores invariance
        for mut spec in [InvariantSpec::linear(), InvariantSpec::quartic()] {
            spec.delta = spec.delta.scale_rat(&crate::scalar::rat(1, 2));
            assert!(check(spec).passed);
        }
    }

    #[test]
    fn potential_condition() {
        let mu = s(Symbol::Mu);
        let quartic = &p(Symbol::Mu, -1) * &p(Symbol::Rho, -6).scale_rat(&crate::scalar::rat(1, 4));
        assert!(potential_condition_check(&quartic, 4, &mu));
        assert!(!potential_condition_check(&ScalarExpr::one(), 2, &mu));
        let linear = &s(Symbol::Z) * &p(Symbol::Rho, -3).scale_rat(&crate::scalar::rat(1, 4));
        assert!(potential_condition_check(&linear, 1, &p(Symbol::Z, -1)));
    }
}
