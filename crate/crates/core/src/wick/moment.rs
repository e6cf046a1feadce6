use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::{binomial, Rational};
use crate::Error;

/// Laurent polynomial in the dimension symbol `N` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MomentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl MomentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    /// Coefficient of `N^e`.
    pub fn coeff(&self, e: i64) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero `(exponent, coefficient)` pairs, highest exponent first.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().rev().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value at an integer `N != 0`.
    pub fn eval(&self, n: i64) -> Rational {
        let n = Rational::from_integer(n.into());
        self.coeffs.iter().map(|(e, c)| c * n.pow(*e as i32)).sum()
    }
}

impl fmt::Display for MomentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (i == 0, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        f.write_str("N")?;
                    } else {
                        write!(f, "N^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A matrix dimension: `N + offset`, or a fixed integer.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dim {
    Symbolic { offset: i64 },
    Fixed(i64),
}

impl Dim {
    pub const N: Dim = Dim::Symbolic { offset: 0 };
}

impl FromStr for Dim {
    type Err = Error;

    /// Accepts `N`, `N+k`, `N-k` or a positive integer.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("dimension must be N, N+k, N-k or an integer, got {s:?}"));
        if let Some(rest) = t.strip_prefix('N') {
            let offset = match rest {
                "" => 0,
                r if r.starts_with('+') => r[1..].parse::<i64>().map_err(|_| bad())?,
                r if r.starts_with('-') => -r[1..].parse::<i64>().map_err(|_| bad())?,
                _ => return Err(bad()),
            };
            Ok(Dim::Symbolic { offset })
        } else {
            let v = t.parse::<i64>().map_err(|_| bad())?;
            if v <= 0 {
                return Err(bad());
            }
            Ok(Dim::Fixed(v))
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Dim::Symbolic { offset: 0 } => f.write_str("N"),
            Dim::Symbolic { offset } if offset > 0 => write!(f, "N+{offset}"),
            Dim::Symbolic { offset } => write!(f, "N{offset}"),
            Dim::Fixed(v) => write!(f, "{v}"),
        }
    }
}

/// `N^{-m} Σ c_{a,b} R^a C^b` with `R`, `C` the row and column dimensions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RectMoment {
    pub degree: usize,
    counts: BTreeMap<(u32, u32), BigInt>,
}

impl RectMoment {
    pub(crate) fn new(degree: usize, counts: BTreeMap<(u32, u32), BigInt>) -> Self {
        let counts = counts.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self { degree, counts }
    }

    pub fn one() -> Self {
        Self::new(0, BTreeMap::from([((0, 0), BigInt::one())]))
    }

    /// Coefficient of `R^a C^b` (before the `N^{-m}` factor).
    pub fn count(&self, a: u32, b: u32) -> BigInt {
        self.counts.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn counts(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.counts.iter()
    }

    pub fn mul(&self, rhs: &RectMoment) -> RectMoment {
        let mut out: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for ((a1, b1), x) in &self.counts {
            for ((a2, b2), y) in &rhs.counts {
                *out.entry((a1 + a2, b1 + b2)).or_default() += x * y;
            }
        }
        RectMoment::new(self.degree + rhs.degree, out)
    }

    pub(crate) fn add_scaled(&mut self, rhs: &RectMoment, k: &BigInt) {
        debug_assert_eq!(self.degree, rhs.degree);
        for (key, y) in &rhs.counts {
            *self.counts.entry(*key).or_default() += y * k;
        }
        self.counts.retain(|_, c| !c.is_zero());
    }

    /// Substitutes the row and column dimensions.
    pub fn specialize(&self, rows: Dim, cols: Dim) -> MomentPoly {
        let m = self.degree as i64;
        let mut out = MomentPoly::zero();
        for ((a, b), c) in &self.counts {
            let pa = dim_power(rows, *a);
            let pb = dim_power(cols, *b);
            for (ea, ca) in &pa {
                for (eb, cb) in &pb {
                    out.add_term(ea + eb - m, &(Rational::from_integer(c * ca * cb)));
                }
            }
        }
        out
    }

    /// Square matrices, `R = C = N`.
    pub fn square(&self) -> MomentPoly {
        self.specialize(Dim::N, Dim::N)
    }
}

// (N + k)^p or v^p as (exponent, coefficient) pairs.
fn dim_power(d: Dim, p: u32) -> Vec<(i64, BigInt)> {
    match d {
        Dim::Fixed(v) => vec![(0, BigInt::from(v).pow(p))],
        Dim::Symbolic { offset } => (0..=p)
            .map(|i| (i as i64, binomial(p as u64, i as u64) * BigInt::from(offset).pow(p - i)))
            .filter(|(_, c)| !c.is_zero())
            .collect(),
    }
}

/// `g -> coefficient of N^{2-2g-s}`, rejecting any exponent off that grading.
pub fn genus_extract(p: &MomentPoly, s: u32) -> Result<BTreeMap<u32, Rational>, Error> {
    let top = 2 - s as i64;
    let mut out = BTreeMap::new();
    for (e, c) in p.terms() {
        if e > top || (top - e) % 2 != 0 {
            return Err(Error::OffGrading { exponent: e });
        }
        out.insert(((top - e) / 2) as u32, c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn display_forms() {
        let p = MomentPoly::from_terms([(1, int(14)), (-1, int(10))]);
        assert_eq!(p.to_string(), "14*N + 10*N^-1");
        assert_eq!(MomentPoly::from_terms([(1, int(1))]).to_string(), "N");
        assert_eq!(MomentPoly::from_terms([(-1, int(2))]).to_string(), "2*N^-1");
        assert_eq!(MomentPoly::from_terms([(0, int(3)), (-2, int(-1))]).to_string(), "3 - N^-2");
        assert_eq!(MomentPoly::zero().to_string(), "0");
    }

    #[test]
    fn dims_parse() {
        assert_eq!("N".parse::<Dim>().unwrap(), Dim::N);
        assert_eq!("N+1".parse::<Dim>().unwrap(), Dim::Symbolic { offset: 1 });
        assert_eq!("N - 2".parse::<Dim>().unwrap(), Dim::Symbolic { offset: -2 });
        assert_eq!("3".parse::<Dim>().unwrap(), Dim::Fixed(3));
        assert!("M".parse::<Dim>().is_err());
        assert!("0".parse::<Dim>().is_err());
        assert_eq!(Dim::Symbolic { offset: 1 }.to_string(), "N+1");
    }

    #[test]
    fn genus_grading() {
        let p = MomentPoly::from_terms([(1, int(14)), (-1, int(10))]);
        let g = genus_extract(&p, 1).unwrap();
        assert_eq!(g, BTreeMap::from([(0, int(14)), (1, int(10))]));
        let q = MomentPoly::from_terms([(-1, int(2))]);
        assert_eq!(genus_extract(&q, 3).unwrap(), BTreeMap::from([(0, int(2))]));
        let bad = MomentPoly::from_terms([(0, int(1))]);
        assert_eq!(genus_extract(&bad, 1), Err(Error::OffGrading { exponent: 0 }));
    }
}
