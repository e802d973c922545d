use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;

use super::gauss::GaussianRational;
use super::symbol::Symbol;
use crate::error::{Error, Result};

/// Exponent vector, one slot per [`Symbol`]. Exponents may be negative.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub [i32; Symbol::COUNT]);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(sym: Symbol, exp: i32) -> Self {
        let mut m = Self::one();
        m.0[sym.index()] = exp;
        m
    }

    pub fn exp(&self, sym: Symbol) -> i32 {
        self.0[sym.index()]
    }

    pub fn with(mut self, sym: Symbol, exp: i32) -> Self {
        self.0[sym.index()] = exp;
        self
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(o.0.iter()) {
            *a += b;
        }
        out
    }

    pub fn inv(&self) -> Monomial {
        let mut out = *self;
        out.0.iter_mut().for_each(|e| *e = -*e);
        out
    }

    pub fn pow(&self, k: i32) -> Monomial {
        let mut out = *self;
        out.0.iter_mut().for_each(|e| *e *= k);
        out
    }

    /// Nonzero `(symbol, exponent)` pairs in canonical order.
    pub fn factors(&self) -> impl Iterator<Item = (Symbol, i32)> + '_ {
        Symbol::ALL.iter().copied().map(|s| (s, self.exp(s))).filter(|&(_, e)| e != 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, e) in self.factors() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which form of the auxiliary (Ermakov) equation eliminates `rhoddot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Closure {
    /// Leave `rhoddot` in place.
    #[default]
    None,
    /// `mu rhoddot + mudot rhodot = 1/(mu rho^3)`.
    Free,
    /// `mu rhoddot + mudot rhodot + mu omega^2 rho = 1/(mu rho^3)`.
    WithOmega,
    /// The free form with mass `1/z`: `rhoddot = z^2/rho^3 + (zdot/z) rhodot`.
    FreeZ,
}

impl Closure {
    /// Replacement for `rhoddot`, or `None` when no closure is active.
    pub fn rhoddot(self) -> Option<ScalarExpr> {
        use Symbol::*;
        let m = |pairs: &[(Symbol, i32)]| pairs.iter().fold(Monomial::one(), |acc, &(s, e)| acc.with(s, e));
        let terms: Vec<(Monomial, GaussianRational)> = match self {
            Closure::None => return None,
            Closure::Free => vec![
                (m(&[(Mu, -2), (Rho, -3)]), GaussianRational::one()),
                (m(&[(Mudot, 1), (Mu, -1), (Rhodot, 1)]), GaussianRational::from_int(-1)),
            ],
            Closure::WithOmega => vec![
                (m(&[(Mu, -2), (Rho, -3)]), GaussianRational::one()),
                (m(&[(Mudot, 1), (Mu, -1), (Rhodot, 1)]), GaussianRational::from_int(-1)),
                (m(&[(Omega, 2), (Rho, 1)]), GaussianRational::from_int(-1)),
            ],
            Closure::FreeZ => vec![
                (m(&[(Z, 2), (Rho, -3)]), GaussianRational::one()),
                (m(&[(Zdot, 1), (Z, -1), (Rhodot, 1)]), GaussianRational::one()),
            ],
        };
        Some(terms.into_iter().fold(ScalarExpr::zero(), |acc, (mono, c)| acc + ScalarExpr::term(mono, c)))
    }
}

/// Numeric values for symbols.
pub type Assignment = BTreeMap<Symbol, Complex64>;

/// Exact Gaussian-rational Laurent polynomial in the fixed symbol set.
///
/// Stored terms never carry a zero coefficient, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ScalarExpr {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl ScalarExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::constant(GaussianRational::ratio(num, den))
    }

    pub fn rational(r: BigRational) -> Self {
        Self::constant(GaussianRational::real(r))
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    pub fn term(mono: Monomial, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Self { terms }
    }

    pub fn sym(s: Symbol) -> Self {
        Self::pow_sym(s, 1)
    }

    pub fn pow_sym(s: Symbol, e: i32) -> Self {
        Self::term(Monomial::var(s, e), GaussianRational::one())
    }

    /// `i * hbar`, the value of the canonical commutator `[q, p]`.
    pub fn i_hbar() -> Self {
        Self::term(Monomial::var(Symbol::Hbar, 1), GaussianRational::i())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> GaussianRational {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// The value if the expression carries no symbols.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn add_term(&mut self, mono: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn scale_rat(&self, r: &BigRational) -> Self {
        self.scale(&GaussianRational::real(r.clone()))
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        Self { terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v.clone())).collect() }
    }

    /// Inverse in the Laurent ring; only single-term expressions qualify.
    pub fn inverse(&self) -> Result<Self> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 => {
                let ci = c.inv().ok_or_else(|| Error::NotInvertible(self.to_string()))?;
                Ok(Self::term(m.inv(), ci))
            }
            _ => Err(Error::NotInvertible(self.to_string())),
        }
    }

    /// Integer power; negative powers need an invertible base.
    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Minimum and maximum exponent of `sym` over all terms.
    pub fn degree_range(&self, sym: Symbol) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m.exp(sym));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Keep only the terms in which `sym` appears with exponent `k`.
    pub fn part_with_exp(&self, sym: Symbol, k: i32) -> Self {
        Self { terms: self.terms.iter().filter(|(m, _)| m.exp(sym) == k).map(|(m, c)| (*m, c.clone())).collect() }
    }

    /// Keep only terms whose exponent of `sym` is at most `k`.
    pub fn truncate_exp(&self, sym: Symbol, k: i32) -> Self {
        Self { terms: self.terms.iter().filter(|(m, _)| m.exp(sym) <= k).map(|(m, c)| (*m, c.clone())).collect() }
    }

    /// Specialize `sym = 0`. Fails if `sym` occurs with a negative exponent.
    pub fn set_zero(&self, sym: Symbol) -> Result<Self> {
        if self.terms.keys().any(|m| m.exp(sym) < 0) {
            return Err(Error::DivisionByZero(sym));
        }
        Ok(self.part_with_exp(sym, 0))
    }

    /// Specialize `sym = 1`.
    pub fn set_one(&self, sym: Symbol) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.with(sym, 0), c);
        }
        out
    }

    /// Substitute `sym -> value` everywhere (value must be invertible when
    /// negative exponents occur).
    pub fn substitute(&self, sym: Symbol, value: &ScalarExpr) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(sym);
            let rest = Self::term(m.with(sym, 0), c.clone());
            out += &(&rest * &value.pow(e)?);
        }
        Ok(out)
    }

    /// True when some term carries a negative power of `rhodot`; such terms
    /// are legal but must be reported when they survive to final output.
    pub fn has_negative_rhodot(&self) -> bool {
        self.terms.keys().any(|m| m.exp(Symbol::Rhodot) < 0)
    }

    /// Formal total time derivative.
    ///
    /// Uses `rho -> rhodot -> rhoddot`, `mu -> mudot`, `z -> zdot`, `hbar -> 0`.
    /// With an active closure every produced `rhoddot` is eliminated; the input
    /// itself must then be free of `rhoddot`.
    pub fn time_derive(&self, closure: Closure) -> Result<Self> {
        let replacement = closure.rhoddot();
        if replacement.is_some() && self.terms.keys().any(|m| m.exp(Symbol::Rhoddot) != 0) {
            return Err(Error::ClosurePrecondition);
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (s, e) in m.factors() {
                let Some(ds) = s.derivative()? else { continue };
                let mono = m.with(s, e - 1).mul(&Monomial::var(ds, 1));
                out.add_term(mono, &c.scale(&super::rat(e as i64, 1)));
            }
        }
        match replacement {
            Some(r) => out.substitute(Symbol::Rhoddot, &r),
            None => Ok(out),
        }
    }

    /// Numerical value under `assignment`.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = c.to_complex();
            for (s, e) in m.factors() {
                let x = *assignment.get(&s).ok_or(Error::MissingAssignment(s))?;
                if e < 0 && x == Complex64::new(0.0, 0.0) {
                    return Err(Error::DivisionByZero(s));
                }
                v *= x.powi(e);
            }
            total += v;
        }
        Ok(total)
    }
}

impl From<GaussianRational> for ScalarExpr {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a ScalarExpr> for &'a ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, o: &ScalarExpr) -> ScalarExpr {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl Add for ScalarExpr {
    type Output = ScalarExpr;
    fn add(mut self, o: ScalarExpr) -> ScalarExpr {
        self += &o;
        self
    }
}

impl AddAssign<&ScalarExpr> for ScalarExpr {
    fn add_assign(&mut self, o: &ScalarExpr) {
        for (m, c) in &o.terms {
            self.add_term(*m, c);
        }
    }
}

impl<'a> Sub<&'a ScalarExpr> for &'a ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, o: &ScalarExpr) -> ScalarExpr {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Sub for ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, o: ScalarExpr) -> ScalarExpr {
        &self - &o
    }
}

impl<'a> Mul<&'a ScalarExpr> for &'a ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, o: &ScalarExpr) -> ScalarExpr {
        let mut out = ScalarExpr::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Mul for ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, o: ScalarExpr) -> ScalarExpr {
        &self * &o
    }
}

impl Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        Self { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        -self.clone()
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            match (m.is_one(), c.is_one()) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{c}*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use Symbol::*;

    fn s(sym: Symbol) -> ScalarExpr {
        ScalarExpr::sym(sym)
    }

    #[test]
    fn additive_inverse_cancels() {
        let rho2 = ScalarExpr::pow_sym(Rho, 2);
        assert!((&rho2 + &(-&rho2)).is_zero());
    }

    #[test]
    fn like_terms_merge() {
        let hr = &s(Hbar) * &s(Rho);
        assert_eq!(&hr + &hr, hr.scale_rat(&rat(2, 1)));
    }

    #[test]
    fn rational_sum_of_laurent_terms() {
        let a = ScalarExpr::pow_sym(Rho, -2).scale_rat(&rat(1, 2));
        let b = ScalarExpr::pow_sym(Rho, -2).scale_rat(&rat(1, 3));
        assert_eq!(&a + &b, ScalarExpr::pow_sym(Rho, -2).scale_rat(&rat(5, 6)));
    }

    #[test]
    fn products() {
        assert_eq!(&s(Rho) * &ScalarExpr::pow_sym(Rho, -1), ScalarExpr::one());
        assert_eq!(&ScalarExpr::i() * &ScalarExpr::i(), ScalarExpr::int(-1));
        let lhs = &(&(&s(Mu) * &s(Rhodot)) * &ScalarExpr::pow_sym(Rho, -1)) * &ScalarExpr::pow_sym(Rho, 2);
        assert_eq!(lhs, &(&s(Mu) * &s(Rhodot)) * &s(Rho));
    }

    #[test]
    fn derivatives() {
        let d = ScalarExpr::pow_sym(Rho, 2).time_derive(Closure::None).unwrap();
        assert_eq!(d, (&s(Rho) * &s(Rhodot)).scale_rat(&rat(2, 1)));
        assert!(s(Hbar).time_derive(Closure::Free).unwrap().is_zero());
        // d/dt (mu rhodot) under the free closure collapses to 1/(mu rho^3)
        let d = (&s(Mu) * &s(Rhodot)).time_derive(Closure::Free).unwrap();
        assert_eq!(d, &ScalarExpr::pow_sym(Mu, -1) * &ScalarExpr::pow_sym(Rho, -3));
        assert!(matches!(s(Omega).time_derive(Closure::None), Err(Error::UnsupportedDerivative(Omega))));
        assert!(matches!(s(Rhoddot).time_derive(Closure::Free), Err(Error::ClosurePrecondition)));
    }

    #[test]
    fn evaluation() {
        let mut a = Assignment::new();
        a.insert(Rho, Complex64::new(2.0, 0.0));
        assert_eq!(ScalarExpr::pow_sym(Rho, -2).evaluate(&a).unwrap(), Complex64::new(0.25, 0.0));
        a.insert(Hbar, Complex64::new(1.0, 0.0));
        assert_eq!(ScalarExpr::i_hbar().evaluate(&a).unwrap(), Complex64::new(0.0, 1.0));
        let e = &ScalarExpr::one() + &(&(&s(Mu) * &s(Rho)) * &s(Rhodot));
        a.insert(Rho, Complex64::new(1.0, 0.0));
        a.insert(Mu, Complex64::new(1.0, 0.0));
        a.insert(Rhodot, Complex64::new(3.0, 0.0));
        assert_eq!(e.evaluate(&a).unwrap(), Complex64::new(4.0, 0.0));
        assert!(matches!(s(Z).evaluate(&a), Err(Error::MissingAssignment(Z))));
        a.insert(Z, Complex64::new(0.0, 0.0));
        assert!(matches!(ScalarExpr::pow_sym(Z, -1).evaluate(&a), Err(Error::DivisionByZero(Z))));
    }
}
