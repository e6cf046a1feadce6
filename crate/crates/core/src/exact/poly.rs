use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Rational, Var};
use crate::Error;

/// Dense univariate polynomial with rational coefficients, lowest degree
/// first. The coefficient vector never ends in a zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly {
    var: Var,
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(var: Var, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    pub fn zero(var: Var) -> Self {
        UniPoly { var, coeffs: Vec::new() }
    }

    pub fn constant(var: Var, c: Rational) -> Self {
        UniPoly::new(var, vec![c])
    }

    pub fn one(var: Var) -> Self {
        UniPoly::constant(var, Rational::one())
    }

    /// The variable itself.
    pub fn x(var: Var) -> Self {
        UniPoly::new(var, vec![Rational::zero(), Rational::one()])
    }

    pub fn monomial(var: Var, c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        UniPoly::new(var, coeffs)
    }

    /// Builds from small integer coefficients, lowest degree first.
    pub fn from_ints(var: Var, coeffs: &[i64]) -> Self {
        UniPoly::new(var, coeffs.iter().map(|&c| super::int(c)).collect())
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    fn join_var(&self, other: &UniPoly) -> Var {
        if self.is_constant() {
            other.var
        } else {
            debug_assert!(
                other.is_constant() || other.var == self.var,
                "mixing polynomials in {} and {}",
                self.var,
                other.var
            );
            self.var
        }
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero(self.var);
        }
        UniPoly { var: self.var, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(l) if !l.is_one() => self.scale(&l.recip()),
            _ => self.clone(),
        }
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect();
        UniPoly::new(self.var, coeffs)
    }

    /// Substitutes `var -> var + c`.
    pub fn shift(&self, c: &Rational) -> UniPoly {
        // Horner with the linear polynomial (var + c).
        let lin = UniPoly::new(self.var, vec![c.clone(), Rational::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(self.var), |acc, a| &(&acc * &lin) + &UniPoly::constant(self.var, a.clone()))
    }

    /// Coefficients reversed with respect to degree `n >= deg`, i.e.
    /// `var^n * p(1/var)`.
    pub fn reversed(&self, n: usize) -> UniPoly {
        debug_assert!(self.degree().is_none_or(|d| d <= n));
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        UniPoly::new(self.var, coeffs)
    }

    /// `p^e`
    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one(self.var);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), Error> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let var = self.join_var(divisor);
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree().filter(|&sd| sd >= dd) else {
            return Ok((UniPoly::zero(var), self.clone().with_var(var)));
        };
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((UniPoly::new(var, quot), UniPoly::new(var, rem)))
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &UniPoly) -> Result<UniPoly, Error> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Inexact(format!("({self}) is not divisible by ({divisor})")))
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.monic();
        let mut b = other.monic();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("divisor is nonzero");
            a = b;
            b = r.monic();
        }
        a
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "{}", self.var)?;
                    } else {
                        write!(f, "{}^{i}", self.var)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let var = self.join_var(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPoly::new(var, coeffs)
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let var = self.join_var(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UniPoly::new(var, coeffs)
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let var = self.join_var(rhs);
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(var);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(var, coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { var: self.var, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(Var::U, c)
    }

    #[test]
    fn display_is_descending() {
        assert_eq!(p(&[1, -2, 1]).to_string(), "u^2 - 2*u + 1");
        assert_eq!(p(&[0, -1]).to_string(), "-u");
        assert_eq!(UniPoly::new(Var::Z, vec![rat(1, 2), int(0), int(3)]).to_string(), "3*z^2 + 1/2");
        assert_eq!(UniPoly::zero(Var::U).to_string(), "0");
    }

    #[test]
    fn division_and_gcd() {
        // (u^2 - 1) / (u - 1) = u + 1
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        let g = p(&[-1, 0, 1]).gcd(&p(&[2, -2]));
        assert_eq!(g, p(&[-1, 1]));
        assert!(p(&[1]).div_rem(&UniPoly::zero(Var::U)).is_err());
    }

    #[test]
    fn shift_of_square() {
        // z^2 with z -> z + c
        let c = rat(3, 2);
        let z2 = UniPoly::from_ints(Var::Z, &[0, 0, 1]);
        let expect = UniPoly::new(Var::Z, vec![&c * &c, int(2) * &c, int(1)]);
        assert_eq!(z2.shift(&c), expect);
    }

    #[test]
    fn derivative_and_eval() {
        let q = p(&[1, 2, 3]);
        assert_eq!(q.derivative(), p(&[2, 6]));
        assert_eq!(q.eval(&int(2)), int(17));
        assert_eq!(q.reversed(3), p(&[0, 3, 2, 1]));
    }
}
