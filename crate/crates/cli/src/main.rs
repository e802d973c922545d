mod literal;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use weylop::liouville::{liouville_expand, liouville_m_min, liouville_vs_minimal};
use weylop::oracle::suites::{self, CheckReport, Status, SuiteOptions};
use weylop::oracle::{ermakov_solve, nc_word_reorder, ErmakovSpec, NcWord, Profile};
use weylop::scalar::{ScalarExpr, Symbol};
use weylop::solvers::{
    solve_linear_td, solve_powerlaw_quantum, solve_quadratic_td, solve_quartic, RecurrenceTable, Seeds,
};
use weylop::transform::{transform_t_bands, LinearCanonicalTransform, TransformConfig};
use weylop::weyl::{commutator, normal_to_weyl, reorder_word, weyl_to_normal, NormalPoly, WeylOp};
use weylop::{Error, Result};

use output::Outcome;

const LITERALS: &str = "\
Operator literals are sums of terms `[coeff*]T:m,n`, for example `T:-1,1` or
`1/2*T:2,0 + 1/2*T:0,2`. A coefficient is a scalar in
hbar, rho, rhodot, rhoddot, mu, mudot, z, zdot, omega and i, written like
`3/4*hbar^2*rho^-1`; wrap sums in parentheses: `(1 - hbar)*T:0,1`.
Negative numbers may be given as positionals, e.g. `to-weyl -1 2`.";

#[derive(Debug, Parser, Serialize)]
#[command(name = "weylop", version, about = "Exact Weyl-ordered operator algebra", after_help = LITERALS)]
struct Cli {
    /// Write the JSON (or CSV) result to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
enum Command {
    /// Commutator [left, right] of two operator literals.
    Commute(CommuteArgs),
    /// Normal-ordered expansion of q^k p^l, or of an arbitrary word with --word.
    Reorder(ReorderArgs),
    /// Weyl expansion of the normal-ordered word p^a q^b.
    ToWeyl(ToWeylArgs),
    /// Normal-ordered expansion of an operator literal.
    ToNormal(ToNormalArgs),
    /// Image of an operator literal under a linear canonical transformation.
    Transform(TransformArgs),
    /// Coefficient tables of the conjugate operator for a Hamiltonian family.
    Solve(SolveArgs),
    /// Inverse Liouville expansion for p^2 + q^2 + q^4.
    Liouville(LiouvilleArgs),
    /// Run an oracle verification suite.
    Verify(VerifyArgs),
    /// Integrate the Ermakov equation.
    Ermakov(ErmakovArgs),
}

#[derive(Debug, Args, Serialize)]
struct CommuteArgs {
    /// Left and right operands, unless given with --left/--right.
    #[arg(allow_hyphen_values = true, num_args = 0..=2)]
    operands: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    left: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    right: Option<String>,
}

#[derive(Debug, Args, Serialize)]
struct ReorderArgs {
    #[arg(allow_hyphen_values = true, required_unless_present = "word")]
    k: Option<i64>,
    #[arg(allow_hyphen_values = true, required_unless_present = "word")]
    l: Option<i64>,
    /// Word over q and p, e.g. `qpqp`.
    #[arg(long, conflicts_with_all = ["k", "l"])]
    word: Option<String>,
}

#[derive(Debug, Args, Serialize)]
struct ToWeylArgs {
    #[arg(allow_hyphen_values = true)]
    a: i64,
    #[arg(allow_hyphen_values = true)]
    b: i64,
}

#[derive(Debug, Args, Serialize)]
struct ToNormalArgs {
    #[arg(allow_hyphen_values = true)]
    op: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum TransformKind {
    Identity,
    Ermakov,
    ErmakovZ,
    Custom,
}

#[derive(Debug, Args, Serialize)]
struct TransformArgs {
    #[arg(allow_hyphen_values = true)]
    op: String,
    #[arg(long, value_enum, default_value_t = TransformKind::Ermakov)]
    transform: TransformKind,
    /// Coefficients of Q = A q + D p, P = B p + C q for --transform custom.
    #[arg(short = 'A', long = "a", allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(short = 'B', long = "b", allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(short = 'C', long = "c", allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(short = 'D', long = "d", allow_hyphen_values = true)]
    d: Option<String>,
    #[arg(long, default_value_t = 4)]
    r_max: usize,
    /// Keep powers of hbar up to this order.
    #[arg(long)]
    hbar_order: Option<u32>,
    /// `sym=value`, used to estimate the size of the last band.
    #[arg(long = "assign", allow_hyphen_values = true)]
    assign: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Family {
    Quadratic,
    Linear,
    Quartic,
    Powerlaw,
}

#[derive(Debug, Args, Serialize)]
struct SolveArgs {
    #[arg(value_enum)]
    family: Family,
    /// Exponent of the power-law potential q^L/L.
    #[arg(short = 'L', long = "L", default_value_t = 2)]
    l: i64,
    #[arg(long, default_value_t = 6)]
    order: usize,
    /// Substitute hbar by this scalar, e.g. `1`, `1/2` or `0`.
    #[arg(long, allow_hyphen_values = true)]
    hbar: Option<String>,
    /// Replace a seed coefficient: `k=v` with a comma-separated index tuple.
    #[arg(long = "seed-override", allow_hyphen_values = true)]
    seed_override: Vec<String>,
    /// Band cutoff for the transformed linear solution.
    #[arg(long, default_value_t = 3)]
    r_max: usize,
}

#[derive(Debug, Args, Serialize)]
struct LiouvilleArgs {
    #[arg(long, default_value_t = 3)]
    kmax: usize,
    /// Compare with the minimal solution for the same Hamiltonian.
    #[arg(long)]
    compare_minimal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Suite {
    Algebra,
    Transform,
    Invariant,
    Ode,
}

#[derive(Debug, Args, Serialize)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Grid dimension of the numerical representation.
    #[arg(long, default_value_t = 256)]
    dim: usize,
    /// Largest nonnegative index in the algebra sweeps.
    #[arg(long, default_value_t = 4)]
    cap: i64,
    /// `sym=value` overrides of the numeric assignment.
    #[arg(long = "assign", allow_hyphen_values = true)]
    assign: Vec<String>,
}

#[derive(Debug, Args, Serialize)]
struct ErmakovArgs {
    /// Mass profile: `const:v`, `linear:c0,c1`, `exp:a,rate` or `sin:c0,amp,freq`.
    #[arg(long, default_value = "const:1", allow_hyphen_values = true)]
    mu: String,
    /// Frequency profile, same grammar as --mu; absent for the free equation.
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<String>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    t0: f64,
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    t1: f64,
    #[arg(long, default_value_t = 10_000)]
    steps: usize,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    rho0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    rhodot0: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => match output::emit(&cli, &outcome) {
            Ok(()) if outcome.passed => ExitCode::SUCCESS,
            Ok(()) => {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Commute(a) => commute(a),
        Command::Reorder(a) => reorder(a),
        Command::ToWeyl(a) => Ok(Outcome::weyl(&normal_to_weyl(a.a, a.b)?)),
        Command::ToNormal(a) => to_normal(a),
        Command::Transform(a) => transform(a),
        Command::Solve(a) => solve(a),
        Command::Liouville(a) => liouville(a),
        Command::Verify(a) => verify(a),
        Command::Ermakov(a) => ermakov(a),
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn commute(a: &CommuteArgs) -> Result<Outcome> {
    let (left, right) = match (&a.left, &a.right, a.operands.as_slice()) {
        (Some(l), Some(r), []) => (l.as_str(), r.as_str()),
        (None, None, [l, r]) => (l.as_str(), r.as_str()),
        (Some(l), None, [r]) => (l.as_str(), r.as_str()),
        (None, Some(r), [l]) => (l.as_str(), r.as_str()),
        _ => return Err(usage("commute takes exactly two operands (positional or --left/--right)")),
    };
    let x = literal::parse_op(left)?;
    let y = literal::parse_op(right)?;
    Ok(Outcome::weyl(&commutator(&x, &y)?))
}

fn reorder(a: &ReorderArgs) -> Result<Outcome> {
    let poly = match (&a.word, a.k, a.l) {
        (Some(w), _, _) => nc_word_reorder(&NcWord::parse(w)?),
        (None, Some(k), Some(l)) => reorder_word(k, l)?,
        _ => return Err(usage("reorder takes <k> <l> or --word")),
    };
    Ok(Outcome::normal(&poly))
}

fn to_normal(a: &ToNormalArgs) -> Result<Outcome> {
    let op = literal::parse_op(&a.op)?;
    let mut out = NormalPoly::zero();
    for (idx, c) in op.iter() {
        out.add_scaled(&weyl_to_normal(*idx)?, c);
    }
    Ok(Outcome::normal(&out))
}

fn scalar_arg(name: &str, v: &Option<String>) -> Result<ScalarExpr> {
    v.as_deref().ok_or_else(|| usage(format!("--transform custom requires --{name}")))?.parse()
}

fn transform(a: &TransformArgs) -> Result<Outcome> {
    let t = match a.transform {
        TransformKind::Identity => LinearCanonicalTransform::identity(),
        TransformKind::Ermakov => LinearCanonicalTransform::ermakov(),
        TransformKind::ErmakovZ => LinearCanonicalTransform::ermakov_z(),
        TransformKind::Custom => LinearCanonicalTransform::new(
            scalar_arg("a", &a.a)?,
            scalar_arg("b", &a.b)?,
            scalar_arg("c", &a.c)?,
            scalar_arg("d", &a.d)?,
        )?,
    };
    let cfg = TransformConfig { r_max: a.r_max, hbar_order: a.hbar_order };
    let op = literal::parse_op(&a.op)?;
    let assignment = literal::parse_assignment(&a.assign)?;
    let mut total = WeylOp::zero();
    let mut last_band = WeylOp::zero();
    for (idx, c) in op.iter() {
        for band in transform_t_bands(idx.m, idx.n, &t, &cfg)? {
            if band.r == a.r_max {
                last_band.add_scaled(&band.op, c);
            }
            total.add_scaled(&band.op, c);
        }
    }
    let estimate = if a.assign.is_empty() {
        None
    } else {
        let mut s = 0.0;
        for (_, c) in last_band.iter() {
            s += c.evaluate(&assignment)?.norm();
        }
        Some(s)
    };
    let mut outcome = Outcome::weyl(&total);
    outcome.result["truncation"] = json!({
        "r_max": a.r_max,
        "hbar_order": a.hbar_order,
        "dropped_band_estimate": estimate,
    });
    outcome.result["transform"] = serde_json::to_value(&t).map_err(|e| usage(e.to_string()))?;
    Ok(outcome)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn substitute_hbar(table: RecurrenceTable, hbar: &Option<ScalarExpr>) -> Result<RecurrenceTable> {
    match hbar {
        Some(h) => table.substitute(Symbol::Hbar, h),
        None => Ok(table),
    }
}

fn solve(a: &SolveArgs) -> Result<Outcome> {
    let mut seeds = Seeds::new();
    for s in &a.seed_override {
        let (k, v) = literal::parse_seed(s)?;
        seeds.insert(k, v);
    }
    let hbar = a.hbar.as_deref().map(str::parse::<ScalarExpr>).transpose()?;
    let (table, extra, passed) = match a.family {
        Family::Quadratic => {
            let s = solve_quadratic_td(a.order, &seeds)?;
            let extra = json!({ "checks": [to_value(&s.closed_form), to_value(&s.transformed)] });
            let ok = s.table.residual_report.as_ref().is_none_or(|r| r.passed);
            (s.table, extra, ok)
        }
        Family::Linear => {
            let s = solve_linear_td(a.order, a.r_max, &seeds)?;
            let extra = json!({
                "recursion_residual": to_value(&s.recursion_residual),
                "checks": [to_value(&s.minimal)],
                "transformed_residual": to_value(&s.transformed_residual),
            });
            let ok = s.recursion_residual.is_empty() && s.transformed_residual.passed;
            (s.table, extra, ok)
        }
        Family::Quartic => {
            let s = solve_quartic(a.order, &seeds)?;
            let extra = json!({
                "tables": { "B": to_value(&substitute_hbar(s.b, &hbar)?), "A": to_value(&substitute_hbar(s.a, &hbar)?) },
                "checks": to_value(&s.checks),
            });
            (s.c, extra, true)
        }
        Family::Powerlaw => {
            let t = solve_powerlaw_quantum(a.l, a.order, &seeds)?;
            let ok = t.residual_report.as_ref().is_none_or(|r| r.passed);
            (t, json!({}), ok)
        }
    };
    let table = substitute_hbar(table, &hbar)?;
    let mut result = to_value(&table);
    if let (Value::Object(r), Value::Object(e)) = (&mut result, extra) {
        r.extend(e);
    }
    let rows = output::table_rows(&table);
    Ok(Outcome { result, rows: Some(rows), passed: passed || !seeds.is_empty() })
}

fn liouville(a: &LiouvilleArgs) -> Result<Outcome> {
    if a.compare_minimal {
        let (state, cmp) = liouville_vs_minimal(a.kmax)?;
        let mut outcome = Outcome::weyl(&state.current);
        outcome.result["k_max"] = json!(a.kmax);
        outcome.result["window_m_min"] = json!(liouville_m_min(a.kmax));
        outcome.result["comparison"] = to_value(&cmp);
        outcome.passed = cmp.passed;
        return Ok(outcome);
    }
    let state = liouville_expand(a.kmax)?;
    let mut outcome = Outcome::weyl(&state.current);
    outcome.result["k_max"] = json!(a.kmax);
    outcome.result["window_m_min"] = json!(liouville_m_min(a.kmax));
    Ok(outcome)
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let mut opts = SuiteOptions { dim: a.dim, cap: a.cap, ..SuiteOptions::default() };
    for (k, v) in literal::parse_assignment(&a.assign)? {
        opts.assignment.insert(k, v);
    }
    let checks: Vec<CheckReport> = match a.suite {
        Suite::Algebra => suites::algebra_suite(&opts)?,
        Suite::Transform => suites::transform_suite(&opts)?,
        Suite::Invariant => suites::invariant_suite()?,
        Suite::Ode => suites::ode_suite()?,
    };
    let passed = checks.iter().all(|c| c.status != Status::Fail);
    let rows = output::check_rows(&checks);
    Ok(Outcome { result: json!({ "passed": passed, "checks": checks }), rows: Some(rows), passed })
}

fn parse_profile(s: &str) -> Result<Profile> {
    let (family, args) = s.split_once(':').ok_or_else(|| usage(format!("bad profile `{s}`")))?;
    let v = args.split(',').map(literal::parse_number).collect::<Result<Vec<_>>>()?;
    let p = match (family.trim(), v.as_slice()) {
        ("const", [value]) => Profile::Constant { value: *value },
        ("linear", [c0, c1]) => Profile::Linear { c0: *c0, c1: *c1 },
        ("exp", [a, rate]) => Profile::Exponential { a: *a, rate: *rate },
        ("sin", [c0, amp, freq]) => Profile::Sinusoidal { c0: *c0, amp: *amp, freq: *freq },
        _ => return Err(usage(format!("bad profile `{s}`"))),
    };
    Ok(p)
}

fn ermakov(a: &ErmakovArgs) -> Result<Outcome> {
    let spec = ErmakovSpec {
        mu: parse_profile(&a.mu)?,
        omega: a.omega.as_deref().map(parse_profile).transpose()?,
        t0: a.t0,
        t1: a.t1,
        steps: a.steps,
        rho0: a.rho0,
        rhodot0: a.rhodot0,
    };
    let sol = ermakov_solve(&spec)?;
    let rows = output::ermakov_rows(&sol);
    let result = json!({
        "spec": spec,
        "ode_residual": sol.ode_residual(&spec),
        "tau_increasing": sol.tau_increasing(),
        "solution": sol,
    });
    Ok(Outcome { result, rows: Some(rows), passed: true })
}
