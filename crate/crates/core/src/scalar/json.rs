//! Wire format: `{"terms":[{"exp":{"hbar":1,"rho":-2},"re":"p/q","im":"p/q"}]}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{GaussianRational, Monomial, ScalarExpr, Symbol};

/// Render as `p/q` with no decimal point; integers keep a `/1`.
pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `p/q` or a bare integer `p`.
pub fn rational_from_str(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    exp: BTreeMap<Symbol, i32>,
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct WireExpr {
    terms: Vec<WireTerm>,
}

impl Serialize for ScalarExpr {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .map(|(m, c)| WireTerm {
                exp: m.factors().collect(),
                re: rational_to_string(&c.re),
                im: rational_to_string(&c.im),
            })
            .collect();
        WireExpr { terms }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ScalarExpr {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let wire = WireExpr::deserialize(de)?;
        let mut out = ScalarExpr::zero();
        for t in wire.terms {
            let mono = t.exp.iter().fold(Monomial::one(), |m, (&s, &e)| m.with(s, e));
            let re = rational_from_str(&t.re).ok_or_else(|| D::Error::custom(format!("bad rational {:?}", t.re)))?;
            let im = rational_from_str(&t.im).ok_or_else(|| D::Error::custom(format!("bad rational {:?}", t.im)))?;
            out.add_term(mono, &GaussianRational::new(re, im));
        }
        Ok(out)
    }
}
