use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Rational, UniPoly, Var};
use crate::Error;

/// Reduced quotient of two polynomials in one variable.
///
/// Canonical form: the denominator is monic and coprime to the numerator, and
/// zero is `0/1`. Equality is therefore structural, and "identically zero"
/// is just an empty numerator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: UniPoly, den: UniPoly) -> Self {
        let var = if num.is_constant() { den.var() } else { num.var() };
        if num.is_zero() {
            return Self { num: UniPoly::zero(var), den: UniPoly::one(var) };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        Self::normalize(num, den)
    }

    // Scales so the denominator is monic; assumes coprime inputs.
    fn normalize(num: UniPoly, den: UniPoly) -> Self {
        let var = if num.is_constant() { den.var() } else { num.var() };
        let lead = den.leading().expect("nonzero denominator").clone();
        if lead.is_one() {
            Self { num: num.with_var(var), den: den.with_var(var) }
        } else {
            let inv = lead.recip();
            Self { num: num.scale(&inv).with_var(var), den: den.scale(&inv).with_var(var) }
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        let var = p.var();
        Self { num: p, den: UniPoly::one(var) }
    }

    pub fn constant(var: Var, c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(var, c))
    }

    /// The variable itself.
    pub fn x(var: Var) -> Self {
        Self::from_poly(UniPoly::x(var))
    }

    pub fn numer(&self) -> &UniPoly {
        &self.num
    }

    pub fn denom(&self) -> &UniPoly {
        &self.den
    }

    pub fn var(&self) -> Var {
        self.num.var()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::constant(self.var(), Rational::zero());
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        let inv = rhs.inverse().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::normalize(self.den.clone(), self.num.clone()))
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        Self { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Quotient-rule derivative.
    pub fn derivative(&self) -> Self {
        if self.den.is_constant() {
            return Self::from_poly(self.num.derivative());
        }
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduce(top, &self.den * &self.den)
    }

    /// The `k`-th derivative.
    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |f, _| f.derivative())
    }

    /// Value at a point, `None` at a pole.
    pub fn eval(&self, at: &Rational) -> Option<Rational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(at) / d)
        }
    }

    /// `f(1/var)` as a rational function in the same variable.
    pub fn compose_reciprocal(&self) -> Self {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let mut num = self.num.reversed(dn);
        let mut den = self.den.reversed(dd);
        // p(1/u)/q(1/u) = rev(p) u^dd / (rev(q) u^dn)
        if dd > dn {
            num = &num * &UniPoly::monomial(num.var(), Rational::one(), dd - dn);
        } else if dn > dd {
            den = &den * &UniPoly::monomial(den.var(), Rational::one(), dn - dd);
        }
        Self::reduce(num, den)
    }

    /// Order of the pole at zero (0 if regular there).
    pub fn pole_order_at_zero(&self) -> usize {
        self.den.valuation().unwrap_or(0)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrap(p: &UniPoly) -> String {
            let nonzero = p.coeffs().iter().filter(|c| !c.is_zero()).count();
            let single = nonzero <= 1 && !p.coeffs().iter().any(|c| c.denom() != &One::one());
            if single {
                p.to_string()
            } else {
                format!("({p})")
            }
        }
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_constant() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            // a/b + c/d with gcd(b, d) = 1 is already reduced.
            return RationalFunction::normalize(num, &self.den * &rhs.den);
        }
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RationalFunction::reduce(num, &(&a * &b) * &g)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::constant(self.var(), Rational::zero());
        }
        // Cross-cancel so the product is already reduced.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cancel =
            |p: &UniPoly, g: &UniPoly| if g.is_constant() { p.clone() } else { p.div_exact(g).expect("gcd divides") };
        let num = &cancel(&self.num, &g1) * &cancel(&rhs.num, &g2);
        let den = &cancel(&self.den, &g2) * &cancel(&rhs.den, &g1);
        RationalFunction::normalize(num, den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
        impl $tr<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl super::Field for RationalFunction {
    fn zero() -> Self {
        RationalFunction::constant(Var::U, <Rational as Zero>::zero())
    }
    fn one() -> Self {
        RationalFunction::constant(Var::U, <Rational as One>::one())
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
    fn from_rational(r: &Rational) -> Self {
        RationalFunction::constant(Var::U, r.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(UniPoly::from_ints(Var::U, num), UniPoly::from_ints(Var::U, den)).unwrap()
    }

    #[test]
    fn canonical_reduction() {
        // (u^2 - 1)/(u - 1) -> u + 1
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), rf(&[1, 1], &[1]));
        // u/(1 - u) has a monic denominator -u/(u - 1)
        let f = rf(&[0, 1], &[1, -1]);
        assert_eq!(f.denom(), &UniPoly::from_ints(Var::U, &[-1, 1]));
        assert_eq!(f.to_string(), "-u/(u - 1)");
        assert!(RationalFunction::new(UniPoly::one(Var::U), UniPoly::zero(Var::U)).is_err());
    }

    #[test]
    fn quotient_rule() {
        // d/du [u^2/(1-u)] = (2u - u^2)/(1-u)^2
        let f = rf(&[0, 0, 1], &[1, -1]);
        assert_eq!(f.derivative(), rf(&[0, 2, -1], &[1, -2, 1]));
    }

    #[test]
    fn arithmetic_closes() {
        let a = rf(&[1], &[-1, 1]);
        let b = rf(&[1], &[1, 1]);
        // 1/(u-1) - 1/(u+1) = 2/(u^2-1)
        assert_eq!(&a - &b, rf(&[2], &[-1, 0, 1]));
        assert!((&(&a * &b).checked_div(&b).unwrap() - &a).is_zero());
        assert_eq!(a.eval(&int(3)), Some(rat(1, 2)));
        assert_eq!(a.eval(&int(1)), None);
    }

    #[test]
    fn reciprocal_argument() {
        // f(u) = u/(1-u): f(1/u) = 1/(u-1)
        let f = rf(&[0, 1], &[1, -1]);
        assert_eq!(f.compose_reciprocal(), rf(&[1], &[-1, 1]));
        // (u^2 + 1)/u -> (1 + u^2)/u
        let g = rf(&[1, 0, 1], &[0, 1]);
        assert_eq!(g.compose_reciprocal(), g);
    }
}
