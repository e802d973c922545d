use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::scalar::{ScalarExpr, Symbol};
use crate::weyl::{commutator, WeylIndex, WeylOp};

/// Index layout of a [`RecurrenceTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Scheme {
    /// `alpha[m,n]`, the coefficient of `T[m,n]`.
    #[serde(rename = "alpha_mn")]
    AlphaMn,
    /// `A[k]`, the coefficient of `T[-k-1,k+1]`.
    #[serde(rename = "Ak")]
    Ak,
    /// `A[k,j]`, the coefficient of `T[-2k-1, 2k+1-j]`.
    #[serde(rename = "Akj")]
    Akj,
    #[serde(rename = "C_NMKA")]
    CNmka,
    /// `A[M,N,K]`, indexed `[M,N,K]`.
    #[serde(rename = "A_MNK")]
    AMnk,
    /// `B[M,N,K]`, indexed `[M,N,K]`.
    #[serde(rename = "B_NMK")]
    BNmk,
    /// `C[M,N]`, indexed `[M,N]`.
    #[serde(rename = "C_MN")]
    CMn,
}

/// One nonzero coefficient of a residual or comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexedCoeff {
    pub idx: Vec<i64>,
    pub coeff: ScalarExpr,
}

/// Outcome of checking a conjugacy relation on a truncated solution.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ResidualReport {
    /// The relation checked, e.g. `[Theta, H] = i hbar`.
    pub relation: String,
    /// The operator the solution is conjugate to.
    pub hamiltonian: String,
    /// Indices `T[m,n]` with `m >= window_m_min` must carry no residual.
    pub window_m_min: i64,
    pub passed: bool,
    /// Residual terms inside the window (empty when `passed`).
    pub in_window: Vec<IndexedCoeff>,
    /// Number of residual terms beyond the window.
    pub tail_terms: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ResidualReport {
    /// `[theta, h] - i hbar T[0,0]`, split by the window `m >= m_min`.
    pub fn conjugacy(theta: &WeylOp, h: &WeylOp, m_min: i64, hamiltonian: &str) -> Result<Self> {
        let mut r = commutator(theta, h)?;
        r.add_term(WeylIndex::new(0, 0), &-ScalarExpr::i_hbar());
        Ok(Self::from_residual(&r, m_min, "[Theta, H] = i hbar", hamiltonian))
    }

    pub fn from_residual(r: &WeylOp, m_min: i64, relation: &str, hamiltonian: &str) -> Self {
        let in_window: Vec<_> = r
            .iter()
            .filter(|(k, _)| k.m >= m_min)
            .map(|(k, c)| IndexedCoeff { idx: vec![k.m, k.n], coeff: c.clone() })
            .collect();
        let tail_terms = r.len() - in_window.len();
        Self {
            relation: relation.into(),
            hamiltonian: hamiltonian.into(),
            window_m_min: m_min,
            passed: in_window.is_empty(),
            in_window,
            tail_terms,
            notes: Vec::new(),
        }
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

/// Declared index bounds of a table.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Truncation {
    pub order: usize,
    /// Inclusive `[lo, hi]` per named index.
    pub bounds: BTreeMap<String, [i64; 2]>,
}

/// Indexed coefficient family produced by a solver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceTable {
    pub scheme: Scheme,
    #[serde(with = "entries_serde")]
    pub entries: BTreeMap<Vec<i64>, ScalarExpr>,
    pub truncation: Truncation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_report: Option<ResidualReport>,
}

impl RecurrenceTable {
    pub fn new(scheme: Scheme, order: usize) -> Self {
        Self {
            scheme,
            entries: BTreeMap::new(),
            truncation: Truncation { order, bounds: BTreeMap::new() },
            residual_report: None,
        }
    }

    pub fn bound(mut self, name: &str, lo: i64, hi: i64) -> Self {
        self.truncation.bounds.insert(name.into(), [lo, hi]);
        self
    }

    /// Insert a coefficient; zeros are not stored.
    pub fn set(&mut self, idx: &[i64], c: ScalarExpr) {
        if c.is_zero() {
            self.entries.remove(idx);
        } else {
            self.entries.insert(idx.to_vec(), c);
        }
    }

    /// Coefficient at `idx`, zero when absent.
    pub fn get(&self, idx: &[i64]) -> ScalarExpr {
        self.entries.get(idx).cloned().unwrap_or_default()
    }

    /// Apply `f` to every entry.
    pub fn map(&self, mut f: impl FnMut(&ScalarExpr) -> ScalarExpr) -> Self {
        let mut out = Self { entries: BTreeMap::new(), ..self.clone() };
        for (k, v) in &self.entries {
            out.set(k, f(v));
        }
        out
    }

    /// Replace `sym` by `value` in every entry.
    pub fn substitute(&self, sym: Symbol, value: &ScalarExpr) -> Result<Self> {
        let mut out = Self { entries: BTreeMap::new(), ..self.clone() };
        for (k, v) in &self.entries {
            out.set(k, v.substitute(sym, value)?);
        }
        Ok(out)
    }

    /// Specialize `hbar` to 0 (terms with negative powers of `hbar` are an error).
    pub fn classical_limit(&self) -> Result<Self> {
        let mut out = Self { entries: BTreeMap::new(), residual_report: None, ..self.clone() };
        for (k, v) in &self.entries {
            out.set(k, v.set_zero(Symbol::Hbar)?);
        }
        Ok(out)
    }
}

mod entries_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        m: &BTreeMap<Vec<i64>, ScalarExpr>,
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<IndexedCoeff> = m.iter().map(|(k, c)| IndexedCoeff { idx: k.clone(), coeff: c.clone() }).collect();
        v.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<BTreeMap<Vec<i64>, ScalarExpr>, D::Error> {
        let v = Vec::<IndexedCoeff>::deserialize(de)?;
        Ok(v.into_iter().filter(|e| !e.coeff.is_zero()).map(|e| (e.idx, e.coeff)).collect())
    }
}

/// One disagreeing coefficient in a [`Comparison`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub idx: Vec<i64>,
    pub expected: ScalarExpr,
    pub found: ScalarExpr,
}

/// Coefficient-wise comparison of a computed family against a reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub name: String,
    pub matches: bool,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Comparison {
    /// Compare `found` against `expected` on every key of either map.
    pub fn of(name: &str, expected: &BTreeMap<Vec<i64>, ScalarExpr>, found: &BTreeMap<Vec<i64>, ScalarExpr>) -> Self {
        let keys: std::collections::BTreeSet<&Vec<i64>> = expected.keys().chain(found.keys()).collect();
        let mut mismatches = Vec::new();
        for k in &keys {
            let e = expected.get(*k).cloned().unwrap_or_default();
            let f = found.get(*k).cloned().unwrap_or_default();
            if e != f {
                mismatches.push(Mismatch { idx: (*k).clone(), expected: e, found: f });
            }
        }
        Self { name: name.into(), matches: mismatches.is_empty(), checked: keys.len(), mismatches, notes: Vec::new() }
    }

    /// Compare two operators on the indices with `m >= m_min`.
    pub fn of_ops(name: &str, expected: &WeylOp, found: &WeylOp, m_min: i64) -> Self {
        let pick = |op: &WeylOp| -> BTreeMap<Vec<i64>, ScalarExpr> {
            op.iter().filter(|(k, _)| k.m >= m_min).map(|(k, c)| (vec![k.m, k.n], c.clone())).collect()
        };
        Self::of(name, &pick(expected), &pick(found))
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}
