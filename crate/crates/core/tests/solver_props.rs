use std::collections::BTreeMap;

use proptest::prelude::*;
use weylop::scalar::{ScalarExpr, Symbol};
use weylop::solvers::*;
use weylop::weyl::{WeylIndex, WeylOp};

fn small_rat() -> impl Strategy<Value = ScalarExpr> {
    (-4i64..=4, 1i64..=3).prop_map(|(a, b)| ScalarExpr::ratio(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn column_solver_residual_is_outside_window(h20 in (1i64..=3), c11 in small_rat(), c02 in small_rat(), c01 in small_rat(), c03 in small_rat()) {
        let mut h = WeylOp::zero();
        h.add_term(WeylIndex::new(2, 0), &ScalarExpr::int(h20));
        h.add_term(WeylIndex::new(1, 1), &c11);
        h.add_term(WeylIndex::new(0, 2), &c02);
        h.add_term(WeylIndex::new(0, 1), &c01);
        h.add_term(WeylIndex::new(0, 3), &c03);
        let a_min = -5;
        let sol = solve_minimal(&h, a_min, &BTreeMap::new()).unwrap();
        let rep = ResidualReport::conjugacy(&sol.theta, &h, a_min + 1, "H").unwrap();
        prop_assert!(sol.unmet.is_empty() || sol.unmet.iter().all(|(k, _)| k.n < 0) );
        if sol.unmet.is_empty() {
            prop_assert!(rep.passed, "{:?}", rep.in_window);
        }
        prop_assert!(sol.theta.keys().all(|k| k.m < 0));
    }

    #[test]
    fn powerlaw_classical_limit(l in 1i64..=4, order in 0usize..=6) {
        let q = solve_powerlaw_quantum(l, order, &Seeds::new()).unwrap();
        let c = solve_powerlaw_classical(l, order, &Seeds::new()).unwrap();
        prop_assert_eq!(q.classical_limit().unwrap().entries, c.entries);
        prop_assert!(c.residual_report.unwrap().passed);
    }
}

#[test]
fn harmonic_table() {
    let t = solve_powerlaw_quantum(2, 10, &Seeds::new()).unwrap();
    assert_eq!(t.entries.len(), 11);
    for k in 0..=10i64 {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        assert_eq!(t.get(&[-2 * k - 1, 2 * k + 1]), ScalarExpr::ratio(sign, 2 * k + 1));
    }
}

#[test]
fn quartic_residual_and_seed_override() {
    let sol = solve_quartic(3, &Seeds::new()).unwrap();
    assert!(sol.c.residual_report.as_ref().unwrap().passed);
    let mut seeds = Seeds::new();
    seeds.insert(vec![0, 0], ScalarExpr::int(2));
    let c = quartic_c_table(3, &seeds);
    assert_eq!(c.get(&[0, 1]), ScalarExpr::ratio(-2, 5));
}

#[test]
fn hbar_substitution() {
    let b = quartic_b_table(2).substitute(Symbol::Hbar, &ScalarExpr::int(2)).unwrap();
    assert_eq!(b.get(&[1, 1, 0]), ScalarExpr::ratio(4, 3));
}

#[test]
fn table_json_shape() {
    let t = solve_quadratic_td(1, &Seeds::new()).unwrap().table;
    let v = serde_json::to_value(&t).unwrap();
    assert_eq!(v["scheme"], "Ak");
    assert_eq!(v["entries"][0]["idx"], serde_json::json!([0]));
    assert!(v["residual_report"]["passed"].as_bool().unwrap());
}
