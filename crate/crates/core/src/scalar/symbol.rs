use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The closed symbol set of the coefficient ring.
///
/// Declaration order fixes the canonical term order and the slot of each
/// symbol inside a [`Monomial`](super::Monomial).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symbol {
    /// Reduced Planck constant.
    Hbar,
    /// Scaling function of the canonical transformation.
    Rho,
    Rhodot,
    Rhoddot,
    /// Mass-type function `m(t)`.
    Mu,
    Mudot,
    /// Coefficient function of the linear and quartic Hamiltonians.
    Z,
    Zdot,
    /// Frequency-type function. Only ever enters algebraically.
    Omega,
}

impl Symbol {
    pub const COUNT: usize = 9;

    pub const ALL: [Symbol; Symbol::COUNT] = [
        Symbol::Hbar,
        Symbol::Rho,
        Symbol::Rhodot,
        Symbol::Rhoddot,
        Symbol::Mu,
        Symbol::Mudot,
        Symbol::Z,
        Symbol::Zdot,
        Symbol::Omega,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::Hbar => "hbar",
            Symbol::Rho => "rho",
            Symbol::Rhodot => "rhodot",
            Symbol::Rhoddot => "rhoddot",
            Symbol::Mu => "mu",
            Symbol::Mudot => "mudot",
            Symbol::Z => "z",
            Symbol::Zdot => "zdot",
            Symbol::Omega => "omega",
        }
    }

    /// The symbol's formal time derivative, if it belongs to the symbol set.
    /// `None` means the derivative vanishes (constants).
    pub(crate) fn derivative(self) -> Result<Option<Symbol>, Error> {
        match self {
            Symbol::Hbar => Ok(None),
            Symbol::Rho => Ok(Some(Symbol::Rhodot)),
            Symbol::Rhodot => Ok(Some(Symbol::Rhoddot)),
            Symbol::Mu => Ok(Some(Symbol::Mudot)),
            Symbol::Z => Ok(Some(Symbol::Zdot)),
            other => Err(Error::UnsupportedDerivative(other)),
        }
    }

    /// True for the symbols that carry time dependence.
    pub fn is_time_dependent(self) -> bool {
        self != Symbol::Hbar
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Symbol::ALL.iter().copied().find(|sym| sym.name() == s).ok_or_else(|| Error::UnknownSymbol(s.to_string()))
    }
}
