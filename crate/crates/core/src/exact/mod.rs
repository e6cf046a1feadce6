//! Exact arithmetic substrate: rationals, univariate polynomials, rational
//! functions and truncated (Laurent) series.
//!
//! Nothing in this crate touches floating point. Half-integer exponents are
//! carried as doubled integer indices by the callers that need them.

mod biseries;
mod poly;
mod ratfunc;
mod series;

pub use biseries::BiSeries;
pub use poly::UniPoly;
pub use ratfunc::RationalFunction;
pub use series::{binom_series, series_of_rational, ExpansionPoint, TruncSeries};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator. `Display` gives the canonical `p/q` form (`p` when `q = 1`).
pub type Rational = num_rational::BigRational;

/// `n/d` as a [`Rational`]. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses the canonical `p/q` or `p` form, with an optional leading minus sign.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// True when `r` has denominator one.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// `Σ c_i v_i / d`. Integer inputs stay on `BigInt` with one exact division,
/// skipping the gcd a rational product would pay at every step.
pub fn scaled_sum(terms: &[(i64, &Rational)], d: i64) -> Rational {
    if terms.iter().all(|(_, v)| is_integer(v)) {
        let num: BigInt = terms.iter().map(|(c, v)| v.numer() * *c).sum();
        if (&num % d).is_zero() {
            return Rational::from_integer(num / d);
        }
        return Rational::new(num, d.into());
    }
    terms.iter().map(|(c, v)| int(*c) * *v).sum::<Rational>() / int(d)
}

/// Binomial coefficient `C(n, k)` for nonnegative integers, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `n!`
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `(2n - 1)!!`, with the empty product for `n = 0`.
pub fn odd_double_factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * (2 * i - 1))
}

/// `(-1)^e`
pub(crate) fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Converts an integral rational to `i64` when it fits.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if is_integer(r) {
        r.numer().to_i64()
    } else {
        None
    }
}

/// Symbolic name carried by polynomials and series. Constants are
/// compatible with every tag.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Var(pub &'static str);

impl Var {
    pub const U: Var = Var("u");
    pub const Z: Var = Var("z");
    pub const X: Var = Var("x");
    pub const N: Var = Var("N");
    pub const T: Var = Var("t");
    pub const INV_X: Var = Var("1/x");
    pub const INV_U: Var = Var("1/u");
    pub const INV_N: Var = Var("1/N");
    pub const U1: Var = Var("u1");
    pub const U2: Var = Var("u2");

    /// Tag of the reciprocal variable, used for expansions at infinity.
    pub fn reciprocal(self) -> Var {
        match self.0 {
            "u" => Var::INV_U,
            "x" => Var::INV_X,
            "N" => Var::INV_N,
            "1/u" => Var::U,
            "1/x" => Var::X,
            "1/N" => Var::N,
            _ => Var("1/t"),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// Coefficient field for [`TruncSeries`]. Implemented by [`Rational`] and
/// [`RationalFunction`].
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

impl Field for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
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
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        assert_eq!(rat(10, 1).to_string(), "10");
        assert_eq!(rat(-6, 4).to_string(), "-3/2");
        assert_eq!(rat(3, -9).to_string(), "-1/3");
        assert_eq!(rat(0, 5).to_string(), "0");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "7", "-7", "1/256", "-105/65536"] {
            assert_eq!(parse_rational(s).unwrap().to_string(), s);
        }
        assert_eq!(parse_rational("4/8").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(odd_double_factorial(4), BigInt::from(105));
        assert_eq!(odd_double_factorial(0), BigInt::one());
    }
}
