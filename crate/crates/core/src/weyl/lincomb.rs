//! Sparse linear combinations with [`ScalarExpr`] coefficients.

macro_rules! lin_comb {
    ($(#[$meta:meta])* $name:ident, $key:ty) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, Default)]
        pub struct $name {
            terms: std::collections::BTreeMap<$key, $crate::scalar::ScalarExpr>,
        }

        impl $name {
            pub fn zero() -> Self {
                Self::default()
            }

            pub fn single(key: $key, coeff: $crate::scalar::ScalarExpr) -> Self {
                let mut out = Self::zero();
                out.add_term(key, &coeff);
                out
            }

            pub fn basis(key: $key) -> Self {
                Self::single(key, $crate::scalar::ScalarExpr::one())
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

            pub fn iter(&self) -> impl Iterator<Item = (&$key, &$crate::scalar::ScalarExpr)> {
                self.terms.iter()
            }

            pub fn keys(&self) -> impl Iterator<Item = &$key> {
                self.terms.keys()
            }

            /// Coefficient of `key` (zero when absent).
            pub fn coeff(&self, key: &$key) -> $crate::scalar::ScalarExpr {
                self.terms.get(key).cloned().unwrap_or_default()
            }

            pub fn add_term(&mut self, key: $key, coeff: &$crate::scalar::ScalarExpr) {
                if coeff.is_zero() {
                    return;
                }
                let entry = self.terms.entry(key).or_default();
                *entry += coeff;
                if entry.is_zero() {
                    self.terms.remove(&key);
                }
            }

            pub fn add_scaled(&mut self, other: &Self, by: &$crate::scalar::ScalarExpr) {
                for (k, c) in &other.terms {
                    self.add_term(*k, &(c * by));
                }
            }

            pub fn scale(&self, by: &$crate::scalar::ScalarExpr) -> Self {
                let mut out = Self::zero();
                out.add_scaled(self, by);
                out
            }

            /// Apply `f` to every coefficient, dropping those that become zero.
            pub fn map_coeffs(
                &self,
                mut f: impl FnMut(&$crate::scalar::ScalarExpr) -> $crate::scalar::ScalarExpr,
            ) -> Self {
                let mut out = Self::zero();
                for (k, c) in &self.terms {
                    out.add_term(*k, &f(c));
                }
                out
            }

            pub fn try_map_coeffs(
                &self,
                mut f: impl FnMut(&$crate::scalar::ScalarExpr) -> $crate::Result<$crate::scalar::ScalarExpr>,
            ) -> $crate::Result<Self> {
                let mut out = Self::zero();
                for (k, c) in &self.terms {
                    out.add_term(*k, &f(c)?);
                }
                Ok(out)
            }

            /// Keep the terms whose key satisfies `pred`.
            pub fn filter(&self, mut pred: impl FnMut(&$key) -> bool) -> Self {
                Self { terms: self.terms.iter().filter(|(k, _)| pred(k)).map(|(k, c)| (*k, c.clone())).collect() }
            }
        }

        impl FromIterator<($key, $crate::scalar::ScalarExpr)> for $name {
            fn from_iter<I: IntoIterator<Item = ($key, $crate::scalar::ScalarExpr)>>(iter: I) -> Self {
                let mut out = Self::zero();
                for (k, c) in iter {
                    out.add_term(k, &c);
                }
                out
            }
        }

        impl std::ops::AddAssign<&$name> for $name {
            fn add_assign(&mut self, o: &$name) {
                for (k, c) in &o.terms {
                    self.add_term(*k, c);
                }
            }
        }

        impl std::ops::SubAssign<&$name> for $name {
            fn sub_assign(&mut self, o: &$name) {
                for (k, c) in &o.terms {
                    self.add_term(*k, &-c);
                }
            }
        }

        impl<'a> std::ops::Add<&'a $name> for &'a $name {
            type Output = $name;
            fn add(self, o: &$name) -> $name {
                let mut out = self.clone();
                out += o;
                out
            }
        }

        impl<'a> std::ops::Sub<&'a $name> for &'a $name {
            type Output = $name;
            fn sub(self, o: &$name) -> $name {
                let mut out = self.clone();
                out -= o;
                out
            }
        }

        impl std::ops::Add for $name {
            type Output = $name;
            fn add(mut self, o: $name) -> $name {
                self += &o;
                self
            }
        }

        impl std::ops::Sub for $name {
            type Output = $name;
            fn sub(mut self, o: $name) -> $name {
                self -= &o;
                self
            }
        }

        impl std::ops::Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
            }
        }

        impl std::ops::Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                -&self
            }
        }

        impl std::fmt::Display for $name {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                if self.terms.is_empty() {
                    return f.write_str("0");
                }
                for (i, (k, c)) in self.terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    if c.len() > 1 {
                        write!(f, "({c}) {k}")?;
                    } else {
                        write!(f, "{c} {k}")?;
                    }
                }
                Ok(())
            }
        }

        impl std::fmt::Debug for $name {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                std::fmt::Display::fmt(self, f)
            }
        }
    };
}

pub(crate) use lin_comb;
