use std::collections::BTreeMap;

use num_traits::Zero;

use super::{Rational, Var};

/// Finite bivariate sum `Σ c_{a,b} X^a Y^{b/2}` with rational coefficients.
///
/// The `Y` exponent is stored doubled, so half-integer powers (as in a
/// fractional genus expansion in `1/N`) are exact integer keys. Only nonzero
/// coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiSeries {
    x: Var,
    y: Var,
    terms: BTreeMap<(i64, i64), Rational>,
}

impl BiSeries {
    pub fn new(x: Var, y: Var) -> Self {
        Self { x, y, terms: BTreeMap::new() }
    }

    pub fn vars(&self) -> (Var, Var) {
        (self.x, self.y)
    }

    /// Adds `c X^a Y^{b2/2}`.
    pub fn add_term(&mut self, a: i64, b2: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b2)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(a, b2));
        }
    }

    /// Coefficient of `X^a Y^{b2/2}`.
    pub fn coeff(&self, a: i64, b2: i64) -> Rational {
        self.terms.get(&(a, b2)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms as `((a, b2), c)`, ordered by `a` then `b2`.
    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Rational)> {
        self.terms.iter()
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

    pub fn add(&self, rhs: &BiSeries) -> BiSeries {
        let mut out = self.clone();
        for (&(a, b2), c) in &rhs.terms {
            out.add_term(a, b2, c);
        }
        out
    }

    pub fn sub(&self, rhs: &BiSeries) -> BiSeries {
        self.add(&rhs.scale(&-Rational::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Rational) -> BiSeries {
        let mut out = BiSeries::new(self.x, self.y);
        for (&(a, b2), v) in &self.terms {
            out.add_term(a, b2, &(v * c));
        }
        out
    }

    /// Multiplies by `c X^a Y^{b2/2}`.
    pub fn mul_monomial(&self, a: i64, b2: i64, c: &Rational) -> BiSeries {
        let mut out = BiSeries::new(self.x, self.y);
        for (&(p, q), v) in &self.terms {
            out.add_term(p + a, q + b2, &(v * c));
        }
        out
    }

    /// `∂/∂X`
    pub fn derivative_x(&self) -> BiSeries {
        let mut out = BiSeries::new(self.x, self.y);
        for (&(a, b2), v) in &self.terms {
            out.add_term(a - 1, b2, &(v * Rational::from_integer(a.into())));
        }
        out
    }

    /// `k`-th derivative in `X`.
    pub fn nth_derivative_x(&self, k: usize) -> BiSeries {
        (0..k).fold(self.clone(), |s, _| s.derivative_x())
    }

    /// Restricts to the terms accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(i64, i64) -> bool) -> BiSeries {
        let terms = self.terms.iter().filter(|((a, b2), _)| keep(*a, *b2)).map(|(k, v)| (*k, v.clone())).collect();
        BiSeries { x: self.x, y: self.y, terms }
    }
}
