use proptest::prelude::*;
use weylop::oracle::nc_commutator_oracle;
use weylop::scalar::{rat, GaussianRational, Monomial, ScalarExpr, Symbol};
use weylop::weyl::{commutator, normal_to_weyl, weyl_to_normal, WeylIndex, WeylOp, Word};
use weylop::Error;

fn coeff() -> impl Strategy<Value = ScalarExpr> {
    (-3i64..=3, 1i64..=2, -2i32..=2)
        .prop_map(|(n, d, e)| ScalarExpr::term(Monomial::var(Symbol::Rho, e), GaussianRational::real(rat(n, d))))
}

fn op(lo: i64, hi: i64) -> impl Strategy<Value = WeylOp> {
    prop::collection::vec(((lo..=hi), (lo..=hi), coeff()), 1..4).prop_map(|ts| {
        ts.into_iter().filter(|(m, n, _)| !(*m < 0 && *n < 0)).map(|(m, n, c)| (WeylIndex::new(m, n), c)).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn antisymmetry(x in op(-4, 4), y in op(-4, 4)) {
        match (commutator(&x, &y), commutator(&y, &x)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, -b),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "one order failed: {:?} / {:?}", a, b),
        }
    }

    #[test]
    fn jacobi(x in op(0, 3), y in op(0, 3), z in op(0, 3)) {
        let c = |a: &WeylOp, b: &WeylOp| commutator(a, b).unwrap();
        let sum = &(&c(&x, &c(&y, &z)) + &c(&y, &c(&z, &x))) + &c(&z, &c(&x, &y));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn classical_limit(m in -4i64..=4, n in 0i64..=4, r in 0i64..=4, s in -4i64..=4, c1 in coeff(), c2 in coeff()) {
        let x = WeylOp::single(WeylIndex::new(m, n), c1.clone());
        let y = WeylOp::single(WeylIndex::new(r, s), c2.clone());
        let Ok(br) = commutator(&x, &y) else { return Ok(()) };
        let lead = br.coeff(&WeylIndex::new(m + r - 1, n + s - 1)).part_with_exp(Symbol::Hbar, 1);
        let over_ih = &lead * &ScalarExpr::i_hbar().inverse().unwrap();
        let want = (&c1 * &c2).scale_rat(&rat(n * r - m * s, 1));
        prop_assert_eq!(over_ih, want);
    }
}

#[test]
fn oracle_equivalence() {
    for m in 0..=4 {
        for n in 0..=4 {
            for r in 0..=4 {
                for s in 0..=4 {
                    let fast = commutator(&WeylOp::t(m, n), &WeylOp::t(r, s)).unwrap();
                    let slow = nc_commutator_oracle(m, n, r, s).unwrap();
                    assert_eq!(fast, slow, "[T[{m},{n}], T[{r},{s}]]");
                }
            }
        }
    }
}

#[test]
fn round_trip() {
    for m in -6i64..=6 {
        for n in -6i64..=6 {
            let idx = WeylIndex::new(m, n);
            if idx.both_negative() {
                assert!(matches!(weyl_to_normal(idx), Err(Error::BothNegative { .. })));
                continue;
            }
            assert_eq!(weyl_to_normal(idx).unwrap().to_weyl().unwrap(), WeylOp::t(m, n), "{idx}");
            let word = normal_to_weyl(m, n).unwrap().to_normal().unwrap();
            assert_eq!(word, weylop::weyl::NormalPoly::basis(Word::new(m, n)), "p^{m} q^{n}");
        }
    }
}

#[test]
fn mixed_sign_bracket_matches_normal_products() {
    // brackets with one negative index against the normal-ordered product
    for (m, n, r, s) in [(-1, 1, 2, 0), (-2, 3, 0, 2), (-1, 2, 1, 1), (3, -1, 0, 2), (-3, 2, -1, 1), (2, 1, -2, 2)] {
        let x = WeylOp::t(m, n);
        let y = WeylOp::t(r, s);
        let fast = commutator(&x, &y).unwrap();
        let slow = x.to_normal().unwrap().commutator(&y.to_normal().unwrap()).unwrap().to_weyl().unwrap();
        assert_eq!(fast, slow, "[T[{m},{n}], T[{r},{s}]]");
    }
}
