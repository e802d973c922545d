use weylop::scalar::{binomial, rat, ScalarExpr, Symbol};
use weylop::transform::{
    derive_delta_coeffs, expand_p_inverse, transform_t, transform_t_diag_classical, transform_t_momentum_shifted,
    LinearCanonicalTransform, TransformConfig,
};
use weylop::weyl::{commutator, WeylIndex, WeylOp};

fn numeric(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> LinearCanonicalTransform {
    let r = |(n, m): (i64, i64)| ScalarExpr::ratio(n, m);
    LinearCanonicalTransform::new(r(a), r(b), r(c), r(d)).unwrap()
}

/// Image of `T[-m,n]` from the phase-space symbol `(B p + C q)^-m (A q + D p)^n`.
fn symbol_image(m: i64, n: i64, t: &LinearCanonicalTransform, r_max: usize) -> WeylOp {
    let b_inv = t.b.inverse().unwrap();
    let ratio = &t.c * &b_inv;
    let mut out = WeylOp::zero();
    for c in 0..=(r_max as i64 - m) {
        let pc = &(&ratio.pow(c as i32).unwrap() * &b_inv.pow(m as i32).unwrap()).scale_rat(&binomial(-m, c as usize));
        for k in 0..=n {
            let w = &(&(pc * &t.a.pow(k as i32).unwrap()) * &t.d.pow((n - k) as i32).unwrap())
                .scale_rat(&binomial(n, k as usize));
            out.add_term(WeylIndex::new(-m - c + n - k, c + k), w);
        }
    }
    out
}

#[test]
fn identity_fixes_basis() {
    let id = LinearCanonicalTransform::identity();
    for m in -4..=4 {
        for n in 0..=4 {
            assert_eq!(transform_t(m, n, &id, &TransformConfig::new(5)).unwrap(), WeylOp::t(m, n));
        }
    }
}

#[test]
fn scaling_law() {
    let rho = ScalarExpr::sym(Symbol::Rho);
    let s = LinearCanonicalTransform::scaling(rho.clone()).unwrap();
    for m in 1..=4 {
        for n in 0..=4 {
            let want = WeylOp::single(WeylIndex::new(-m, n), rho.pow(-(m + n) as i32).unwrap());
            assert_eq!(transform_t(-m, n, &s, &TransformConfig::new(6)).unwrap(), want);
        }
    }
}

#[test]
fn matches_phase_space_symbol_and_is_hbar_free() {
    let ts = [
        LinearCanonicalTransform::ermakov(),
        numeric((2, 1), (1, 1), (1, 1), (1, 1)),
        numeric((1, 2), (3, 1), (1, 1), (1, 2)),
    ];
    for t in &ts {
        for (m, n) in [(1, 0), (1, 1), (2, 1), (2, 2), (3, 1)] {
            let r_max = m as usize + 3;
            let got = transform_t(-m, n, t, &TransformConfig::new(r_max)).unwrap();
            assert_eq!(got, symbol_image(m, n, t, r_max), "T[-{m},{n}]");
            assert!(got.iter().all(|(_, c)| c.degree_range(Symbol::Hbar).is_none_or(|(lo, hi)| lo == 0 && hi == 0)));
        }
    }
}

#[test]
fn diagonal_closed_form_agrees() {
    let t = LinearCanonicalTransform::ermakov();
    for n in 1..=3u32 {
        let closed = transform_t_diag_classical(n, &t, 6).unwrap();
        let full = transform_t(-(n as i64), n as i64, &t, &TransformConfig::classical(6)).unwrap();
        assert_eq!(closed, full, "n = {n}");
    }
}

#[test]
fn printed_prefactor_form_agrees() {
    // rho^-2n T[-n,n] + (mu rho rhodot)^-n sum_{r>n} (-1)^r C(r-1,n-1) (-mu rhodot/rho)^r T[-r,r]
    let t = LinearCanonicalTransform::ermakov();
    let (rho, rhod, mu) = (ScalarExpr::sym(Symbol::Rho), ScalarExpr::sym(Symbol::Rhodot), ScalarExpr::sym(Symbol::Mu));
    let neg_kappa = -(&(&mu * &rhod) * &rho.inverse().unwrap());
    let pref = &(&mu * &rho) * &rhod;
    for n in 1..=3i32 {
        let mut want = WeylOp::single(WeylIndex::new(-n as i64, n as i64), rho.pow(-2 * n).unwrap());
        for r in n + 1..=6 {
            let sign = if r % 2 == 0 { 1 } else { -1 };
            let c = (&pref.pow(-n).unwrap() * &neg_kappa.pow(r).unwrap())
                .scale_rat(&(binomial(r as i64 - 1, n as usize - 1) * rat(sign, 1)));
            want.add_term(WeylIndex::new(-r as i64, r as i64), &c);
        }
        assert_eq!(transform_t_diag_classical(n as u32, &t, 6).unwrap(), want);
    }
}

#[test]
fn composition() {
    let t1 = numeric((1, 2), (2, 1), (1, 1), (0, 1));
    let t2 = numeric((3, 1), (1, 3), (-2, 1), (0, 1));
    let r_max = 5;
    let cfg = TransformConfig::classical(r_max);
    for (m, n) in [(1, 1), (2, 1), (1, 2)] {
        let first = transform_t(-m, n, &t1, &cfg).unwrap();
        let mut nested = WeylOp::zero();
        for (idx, c) in first.iter() {
            nested.add_scaled(&transform_t(idx.m, idx.n, &t2, &cfg).unwrap(), c);
        }
        let direct = transform_t(-m, n, &t1.compose(&t2), &cfg).unwrap();
        assert_eq!(nested.filter(|i| i.m >= -(r_max as i64)), direct);
    }
}

#[test]
fn canonicality() {
    for t in [
        LinearCanonicalTransform::ermakov(),
        LinearCanonicalTransform::ermakov_z(),
        numeric((2, 1), (1, 1), (1, 1), (1, 1)),
    ] {
        let cfg = TransformConfig::new(2);
        let q = transform_t(0, 1, &t, &cfg).unwrap();
        let p = transform_t(1, 0, &t, &cfg).unwrap();
        assert_eq!(q, t.q_image());
        assert_eq!(commutator(&q, &p).unwrap(), WeylOp::single(WeylIndex::new(0, 0), ScalarExpr::i_hbar()));
    }
    assert!(LinearCanonicalTransform::new(
        ScalarExpr::int(2),
        ScalarExpr::int(1),
        ScalarExpr::zero(),
        ScalarExpr::zero()
    )
    .is_err());
}

#[test]
fn momentum_shift_cross_check() {
    let t = LinearCanonicalTransform::ermakov();
    let cfg = TransformConfig::classical(6);
    for j in 0..=3u32 {
        let shifted = transform_t_momentum_shifted(1, j, &t, &cfg).unwrap();
        let direct = transform_t(-3, 3 - j as i64, &t, &cfg).unwrap();
        assert_eq!(shifted, direct, "j = {j}");
    }
}

#[test]
fn delta_series_matches_graded_inverse() {
    let t = LinearCanonicalTransform::ermakov();
    let order = 4;
    let graded = expand_p_inverse(&t, order).unwrap();
    let dc = derive_delta_coeffs(1, &t).unwrap();
    let series = dc.inverse_power(&t, order).unwrap();
    let mut sum = weylop::weyl::NormalPoly::zero();
    for g in &graded {
        sum += g;
    }
    assert_eq!(series.map_coeffs(|c| c.truncate_exp(Symbol::Rhodot, order as i32)), sum);
}
