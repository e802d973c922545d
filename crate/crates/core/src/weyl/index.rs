use std::fmt;

use serde::{Deserialize, Serialize};

/// Index `(m, n)` of the basis element `T[m,n]`, the Weyl-ordered form of
/// `p^m q^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeylIndex {
    pub m: i64,
    pub n: i64,
}

impl WeylIndex {
    pub const fn new(m: i64, n: i64) -> Self {
        Self { m, n }
    }

    pub fn both_negative(&self) -> bool {
        self.m < 0 && self.n < 0
    }
}

impl fmt::Display for WeylIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T[{},{}]", self.m, self.n)
    }
}

/// Exponents of the normal-ordered word `p^a q^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word {
    pub a: i64,
    pub b: i64,
}

impl Word {
    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (0, 0) => f.write_str("1"),
            (a, 0) => write!(f, "p^{a}"),
            (0, b) => write!(f, "q^{b}"),
            (a, b) => write!(f, "p^{a} q^{b}"),
        }
    }
}
