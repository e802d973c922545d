use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::index::{WeylIndex, Word};
use super::lincomb::lin_comb;
use crate::scalar::ScalarExpr;

lin_comb!(
    /// Sparse combination `sum c[m,n] T[m,n]` of Weyl-ordered basis elements.
    WeylOp,
    WeylIndex
);

lin_comb!(
    /// Sparse combination `sum c[a,b] p^a q^b` of normal-ordered words, every
    /// `p` standing left of every `q`.
    NormalPoly,
    Word
);

impl WeylOp {
    /// The single basis element `T[m,n]`.
    pub fn t(m: i64, n: i64) -> Self {
        Self::basis(WeylIndex::new(m, n))
    }

    /// Largest and smallest momentum index present.
    pub fn m_range(&self) -> Option<(i64, i64)> {
        let lo = self.keys().map(|k| k.m).min()?;
        let hi = self.keys().map(|k| k.m).max()?;
        Some((lo, hi))
    }
}

impl NormalPoly {
    /// The single word `p^a q^b`.
    pub fn word(a: i64, b: i64) -> Self {
        Self::basis(Word::new(a, b))
    }
}

#[derive(Serialize, Deserialize)]
struct WeylTerm {
    m: i64,
    n: i64,
    coeff: ScalarExpr,
}

#[derive(Serialize, Deserialize)]
struct NormalTerm {
    a: i64,
    b: i64,
    coeff: ScalarExpr,
}

#[derive(Serialize, Deserialize)]
struct Wire<T> {
    terms: Vec<T>,
}

impl Serialize for WeylOp {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let terms = self.iter().map(|(k, c)| WeylTerm { m: k.m, n: k.n, coeff: c.clone() }).collect();
        Wire { terms }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for WeylOp {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let wire = Wire::<WeylTerm>::deserialize(de)?;
        Ok(wire.terms.into_iter().map(|t| (WeylIndex::new(t.m, t.n), t.coeff)).collect())
    }
}

impl Serialize for NormalPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let terms = self.iter().map(|(k, c)| NormalTerm { a: k.a, b: k.b, coeff: c.clone() }).collect();
        Wire { terms }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for NormalPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let wire = Wire::<NormalTerm>::deserialize(de)?;
        Ok(wire.terms.into_iter().map(|t| (Word::new(t.a, t.b), t.coeff)).collect())
    }
}
