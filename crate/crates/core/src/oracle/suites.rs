use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{
    build_grid_rep, convergence_ratio, ermakov_solve, grid_check, grid_commutator_check, grid_residual,
    invariant_check, nc_commutator_oracle, potential_condition_check, standard_hamiltonian, ErmakovSpec, GridRep,
    Profile,
};
use crate::error::Result;
use crate::scalar::{Assignment, ScalarExpr, Symbol};
use crate::solvers::{InvariantKind, InvariantSpec};
use crate::transform::{
    resummation_check, transform_t, transform_t_diag_classical, LinearCanonicalTransform, TransformConfig,
};
use crate::weyl::{commutator, weyl_to_normal, WeylIndex, WeylOp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not an identity; the nonzero remainder is reported in the metadata.
    Remainder,
}

/// One entry of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub metadata: Value,
}

impl CheckReport {
    fn exact(check: &str, ok: bool, metadata: Value) -> Self {
        Self { check: check.into(), status: if ok { Status::Pass } else { Status::Fail }, residual: None, metadata }
    }

    fn numeric(check: &str, residual: f64, tol: f64, metadata: Value) -> Self {
        let ok = residual <= tol;
        let mut metadata = metadata;
        metadata["tolerance"] = json!(tol);
        Self {
            check: check.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: Some(residual),
            metadata,
        }
    }
}

/// Options shared by the suites.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub dim: usize,
    /// Largest nonnegative index in the algebra sweeps.
    pub cap: i64,
    pub assignment: Assignment,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        let mut assignment = Assignment::new();
        assignment.insert(Symbol::Rho, Complex64::new(1.3, 0.0));
        assignment.insert(Symbol::Rhodot, Complex64::new(0.2, 0.0));
        assignment.insert(Symbol::Mu, Complex64::new(1.0, 0.0));
        Self { dim: 256, cap: 3, assignment }
    }
}

const GRID_HALF_WIDTH: f64 = 4.0;

fn grid(opts: &SuiteOptions) -> Result<GridRep> {
    let hbar = opts.assignment.get(&Symbol::Hbar).map_or(1.0, |h| h.re);
    build_grid_rep(opts.dim, GRID_HALF_WIDTH, hbar)
}

/// Exact bracket against the word oracle on `[0, cap]^4`.
pub fn algebra_exact_sweep(cap: i64) -> Result<CheckReport> {
    let cases: Vec<(i64, i64, i64, i64)> = (0..=cap)
        .flat_map(|m| (0..=cap).flat_map(move |n| (0..=cap).flat_map(move |r| (0..=cap).map(move |s| (m, n, r, s)))))
        .collect();
    let failures: Vec<Value> = cases
        .par_iter()
        .map(|&(m, n, r, s)| -> Result<Option<Value>> {
            let fast = commutator(&WeylOp::t(m, n), &WeylOp::t(r, s))?;
            let slow = nc_commutator_oracle(m, n, r, s)?;
            Ok((fast != slow).then(|| json!([m, n, r, s])))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(CheckReport::exact(
        "bracket vs word oracle",
        failures.is_empty(),
        json!({"cases": cases.len(), "cap": cap, "failures": failures}),
    ))
}

/// Bracket with one negative index (`m` in {-1,-2}) against grid products.
pub fn algebra_grid_sweep(opts: &SuiteOptions, tol: f64) -> Result<CheckReport> {
    let rep = grid(opts)?;
    let cap = opts.cap;
    let cases: Vec<(i64, i64, i64, i64)> = [-1i64, -2]
        .into_iter()
        .flat_map(|m| (0..=cap).flat_map(move |n| (0..=cap).flat_map(move |r| (0..=cap).map(move |s| (m, n, r, s)))))
        .collect();
    let results: Vec<(f64, (i64, i64, i64, i64))> = cases
        .par_iter()
        .map(|&c| -> Result<(f64, (i64, i64, i64, i64))> {
            let (m, n, r, s) = c;
            let x = WeylOp::t(m, n);
            let y = WeylOp::t(r, s);
            let b = commutator(&x, &y)?;
            Ok((grid_commutator_check(&x, &y, &b, &rep, &opts.assignment)?.residual, c))
        })
        .collect::<Result<Vec<_>>>()?;
    let worst = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let failures: Vec<Value> =
        results.iter().filter(|r| r.0 > tol).map(|r| json!([r.1 .0, r.1 .1, r.1 .2, r.1 .3])).collect();
    Ok(CheckReport::numeric(
        "one-negative bracket vs grid",
        worst,
        tol,
        json!({"cases": cases.len(), "dim": opts.dim, "failures": failures}),
    ))
}

pub fn algebra_suite(opts: &SuiteOptions) -> Result<Vec<CheckReport>> {
    let rep = grid(opts)?;
    let ih = Complex64::new(0.0, rep.hbar);
    let canon = grid_residual(
        &rep,
        |v| Ok(rep.apply_q(&rep.apply_p(v, 1), 1) - rep.apply_p(&rep.apply_q(v, 1), 1)),
        |v| Ok(v * ih),
    )?;
    let exact_canon =
        commutator(&WeylOp::t(0, 1), &WeylOp::t(1, 0))? == WeylOp::single(WeylIndex::new(0, 0), ScalarExpr::i_hbar());
    let n = weyl_to_normal(WeylIndex::new(-1, 1))?;
    let sym = grid_residual(&rep, |v| rep.apply_t(-1, 1, v), |v| rep.apply_normal(&n, v, &opts.assignment))?;
    Ok(vec![
        CheckReport::exact("[q,p] = i hbar", exact_canon, json!({})),
        CheckReport::numeric("[q,p] on the grid", canon.residual, 1e-8, json!({"dim": opts.dim})),
        CheckReport::numeric(
            "T[-1,1] symmetrized vs normal form on the grid",
            sym.residual,
            1e-6,
            json!({"dim": opts.dim}),
        ),
        algebra_exact_sweep(opts.cap)?,
        algebra_grid_sweep(opts, 1e-6)?,
    ])
}

pub fn transform_suite(opts: &SuiteOptions) -> Result<Vec<CheckReport>> {
    let t = LinearCanonicalTransform::ermakov();
    let mut out = Vec::new();
    let mut closed_ok = true;
    let mut resum_ok = true;
    for n in 1..=3u32 {
        let closed = transform_t_diag_classical(n, &t, 6)?;
        let full = transform_t(-(n as i64), n as i64, &t, &TransformConfig::classical(6))?;
        closed_ok &= closed == full;
        resum_ok &= resummation_check(n, &t, 6)?.matches;
    }
    out.push(CheckReport::exact(
        "diagonal closed form vs general transform",
        closed_ok,
        json!({"n_max": 3, "r_max": 6}),
    ));
    out.push(CheckReport::exact("resummed form", resum_ok, json!({"n_max": 3, "r_max": 6})));
    let rep = grid(opts)?;
    let closed = transform_t_diag_classical(1, &t, 8)?;
    let full = transform_t(-1, 1, &t, &TransformConfig::new(8))?;
    let g = grid_check(&closed, &full, &rep, &opts.assignment)?;
    out.push(CheckReport::numeric(
        "closed form vs general transform on the grid",
        g.residual,
        1e-4,
        json!({"n": 1, "r_max": 8, "dim": opts.dim}),
    ));
    let canon = t.check().is_ok();
    out.push(CheckReport::exact("AB - CD = 1", canon, json!({})));
    Ok(out)
}

pub fn invariant_suite() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let mut specs = vec![InvariantSpec::quadratic()];
    specs.extend((1..=4).map(InvariantSpec::powerlaw));
    specs.push(InvariantSpec::linear());
    specs.push(InvariantSpec::quartic());
    for spec in specs {
        let (h, closure) = standard_hamiltonian(spec.kind);
        let r = invariant_check(&spec, &h, closure)?;
        let kind = match spec.kind {
            InvariantKind::Quadratic => "quadratic".to_string(),
            InvariantKind::Linear => "linear".to_string(),
            InvariantKind::Quartic => "quartic".to_string(),
            InvariantKind::Powerlaw(l) => format!("power law L={l}"),
        };
        let name = format!("dI/dt = 0 for {kind}");
        let remainders: Vec<Value> =
            r.remainders.iter().map(|(k, c)| json!({"m": k.m, "n": k.n, "coeff": c})).collect();
        let status = match (r.passed, spec.kind) {
            (true, _) => Status::Pass,
            (false, InvariantKind::Linear | InvariantKind::Quartic) => Status::Remainder,
            _ => Status::Fail,
        };
        out.push(CheckReport { check: name, status, residual: None, metadata: json!({"remainders": remainders}) });
    }
    let mu = ScalarExpr::sym(Symbol::Mu);
    let zinv = ScalarExpr::pow_sym(Symbol::Z, -1);
    let quartic = &ScalarExpr::pow_sym(Symbol::Mu, -1)
        * &ScalarExpr::pow_sym(Symbol::Rho, -6).scale_rat(&crate::scalar::rat(1, 4));
    let linear =
        &ScalarExpr::sym(Symbol::Z) * &ScalarExpr::pow_sym(Symbol::Rho, -3).scale_rat(&crate::scalar::rat(1, 4));
    let cases = [
        ("q^4/(4 mu rho^6)", potential_condition_check(&quartic, 4, &mu), true),
        ("q^2 with constant coefficient", potential_condition_check(&ScalarExpr::one(), 2, &mu), false),
        ("z q/(4 rho^3), mass 1/z", potential_condition_check(&linear, 1, &zinv), true),
    ];
    for (name, got, want) in cases {
        out.push(CheckReport::exact(&format!("potential condition: {name}"), got == want, json!({"holds": got})));
    }
    Ok(out)
}

pub fn ode_suite() -> Result<Vec<CheckReport>> {
    let free = ErmakovSpec {
        mu: Profile::constant(1.0),
        omega: None,
        t0: 0.0,
        t1: 2.0,
        steps: 10_000,
        rho0: 1.0,
        rhodot0: 0.0,
    };
    let s = ermakov_solve(&free)?;
    let rho_err = s.t_grid.iter().zip(&s.rho).map(|(t, r)| (r - (1.0 + t * t).sqrt()).abs()).fold(0.0, f64::max);
    let tau_err = s.t_grid.iter().zip(&s.tau).map(|(t, x)| (x - 0.5 * t.atan()).abs()).fold(0.0, f64::max);
    let ratio = convergence_ratio(&ErmakovSpec { steps: 100, ..free })?;
    let fixed = ermakov_solve(&ErmakovSpec { omega: Some(Profile::constant(1.0)), steps: 1000, ..free })?;
    let fixed_err = fixed.rho.iter().map(|r| (r - 1.0).abs()).fold(0.0, f64::max);
    Ok(vec![
        CheckReport::numeric("free flow rho = sqrt(1+t^2)", rho_err, 1e-8, json!({"steps": 10_000, "t1": 2.0})),
        CheckReport::numeric("tau = arctan(t)/2", tau_err, 1e-8, json!({"steps": 10_000})),
        CheckReport::numeric("ODE residual", s.ode_residual(&free), 1e-6, json!({})),
        CheckReport::exact("tau increasing", s.tau_increasing(), json!({})),
        CheckReport {
            check: "fourth-order convergence".into(),
            status: if (12.0..=20.0).contains(&ratio) { Status::Pass } else { Status::Fail },
            residual: Some(ratio),
            metadata: json!({"steps": [100, 200], "window": [12.0, 20.0]}),
        },
        CheckReport::numeric("static solution with omega = 1", fixed_err, 1e-12, json!({})),
    ])
}
