use std::fmt;

use num_traits::Signed;

use super::{Field, Rational, RationalFunction, UniPoly, Var};
use crate::Error;

/// Truncated Laurent series `Σ c_e t^e` for `start <= e <= prec`, with
/// coefficients in a field `C`. Terms beyond `prec` are unknown.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<C: Field = Rational> {
    var: Var,
    start: i64,
    coeffs: Vec<C>,
    prec: i64,
}

/// Where [`series_of_rational`] expands.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExpansionPoint {
    Zero,
    Infinity,
}

impl<C: Field> TruncSeries<C> {
    /// Series with `coeffs[i]` at exponent `start + i`, known through the
    /// last supplied coefficient.
    pub fn new(var: Var, start: i64, coeffs: Vec<C>) -> Self {
        let prec = start + coeffs.len() as i64 - 1;
        Self { var, start, coeffs, prec }
    }

    /// Like [`TruncSeries::new`] but with an explicit precision; missing
    /// coefficients up to `prec` are zero and extra ones are dropped.
    pub fn with_prec(var: Var, start: i64, mut coeffs: Vec<C>, prec: i64) -> Self {
        let len = (prec - start + 1).max(0) as usize;
        coeffs.resize(len, C::zero());
        Self { var, start, coeffs, prec }
    }

    /// `c t^e + O(t^{prec+1})`
    pub fn monomial(var: Var, c: C, e: i64, prec: i64) -> Self {
        Self::with_prec(var, e, vec![c], prec)
    }

    pub fn one(var: Var, prec: i64) -> Self {
        Self::monomial(var, C::one(), 0, prec)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Highest exponent whose coefficient is known.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Exponent of the first stored coefficient (which may be zero).
    pub fn start(&self) -> i64 {
        self.start
    }

    /// Coefficient of `t^e`; zero below the stored range.
    ///
    /// Panics if `e` is beyond the precision, since that value is unknown.
    pub fn coeff(&self, e: i64) -> C {
        assert!(e <= self.prec, "coefficient t^{e} lies beyond the precision {}", self.prec);
        if e < self.start {
            C::zero()
        } else {
            self.coeffs[(e - self.start) as usize].clone()
        }
    }

    /// `(exponent, coefficient)` pairs, lowest exponent first, zeros included.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.start + i as i64, c))
    }

    /// Exponent of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| self.start + i as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_zero)
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    /// Drops leading zero coefficients.
    fn normalized(&self) -> Self {
        match self.valuation() {
            Some(v) if v > self.start => {
                let skip = (v - self.start) as usize;
                Self { var: self.var, start: v, coeffs: self.coeffs[skip..].to_vec(), prec: self.prec }
            }
            _ => self.clone(),
        }
    }

    /// Forgets every term above `prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        let prec = prec.min(self.prec);
        Self::with_prec(self.var, self.start, self.coeffs.clone(), prec)
    }

    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        TruncSeries { var: self.var, start: self.start, coeffs: self.coeffs.iter().map(f).collect(), prec: self.prec }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|a| a.mul(c))
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { var: self.var, start: self.start + k, coeffs: self.coeffs.clone(), prec: self.prec + k }
    }

    /// `f(c t)`
    pub fn scale_argument(&self, c: &C) -> Self {
        let mut out = self.clone();
        // c^start may be a negative power
        let mut p = power(c, self.start).expect("scale_argument by zero with a Laurent tail");
        for a in out.coeffs.iter_mut() {
            *a = a.mul(&p);
            p = p.mul(c);
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let start = self.start.min(rhs.start);
        let prec = self.prec.min(rhs.prec);
        let coeffs = (start..=prec).map(|e| self.coeff(e).add(&rhs.coeff(e))).collect();
        Self::with_prec(self.var, start, coeffs, prec)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(Field::neg)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let start = self.start + rhs.start;
        let prec = (self.prec + rhs.start).min(rhs.prec + self.start);
        let len = (prec - start + 1).max(0) as usize;
        let mut coeffs = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self { var: self.var, start, coeffs, prec }
    }

    /// Multiplicative inverse; `None` when no nonzero coefficient is known.
    pub fn inverse(&self) -> Option<Self> {
        let f = self.normalized();
        let a0_inv = f.coeffs.first().filter(|c| !c.is_zero())?.inv()?;
        let rel = f.prec - f.start;
        let mut b: Vec<C> = Vec::with_capacity(rel as usize + 1);
        b.push(a0_inv.clone());
        for n in 1..=rel as usize {
            let mut acc = C::zero();
            for k in 1..=n {
                acc = acc.add(&f.coeffs[k].mul(&b[n - k]));
            }
            b.push(acc.mul(&a0_inv).neg());
        }
        Some(Self { var: self.var, start: -f.start, coeffs: b, prec: -f.start + rel })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        Ok(self.mul(&rhs.inverse().ok_or(Error::DivisionByZero)?))
    }

    /// Integer power.
    pub fn pow_int(&self, e: i64) -> Option<Self> {
        self.pow_rational(&Rational::from_integer(e.into()))
    }

    /// `f^alpha` via the power recurrence
    /// `h_n = 1/(n g_0) Σ_{k=1}^n ((alpha+1)k − n) g_k h_{n−k}`.
    ///
    /// For non-integral `alpha` the leading coefficient must be one and the
    /// valuation times `alpha` an integer. Returns `None` otherwise, or when
    /// the series is zero.
    pub fn pow_rational(&self, alpha: &Rational) -> Option<Self> {
        let f = self.normalized();
        let g0 = f.coeffs.first().filter(|c| !c.is_zero())?.clone();
        let start = Rational::from_integer(f.start.into()) * alpha;
        if !start.is_integer() {
            return None;
        }
        let start = super::to_i64(&start)?;
        let h0 = if alpha.is_integer() {
            power(&g0, super::to_i64(alpha)?)?
        } else if g0 == C::one() {
            C::one()
        } else {
            return None;
        };
        let g0_inv = g0.inv()?;
        let rel = (f.prec - f.start) as usize;
        let mut h: Vec<C> = Vec::with_capacity(rel + 1);
        h.push(h0);
        let ap1 = alpha + Rational::one();
        for n in 1..=rel {
            let mut acc = C::zero();
            for k in 1..=n {
                if f.coeffs[k].is_zero() {
                    continue;
                }
                let w = &ap1 * Rational::from_integer((k as i64).into()) - Rational::from_integer((n as i64).into());
                if w.is_zero() {
                    continue;
                }
                acc = acc.add(&C::from_rational(&w).mul(&f.coeffs[k]).mul(&h[n - k]));
            }
            let scale = C::from_rational(&Rational::new(1.into(), (n as i64).into())).mul(&g0_inv);
            h.push(acc.mul(&scale));
        }
        Some(Self { var: self.var, start, coeffs: h, prec: start + rel as i64 })
    }

    /// Term-wise derivative in the series variable.
    pub fn derivative(&self) -> Self {
        let coeffs = self.terms().map(|(e, c)| c.mul(&C::from_rational(&Rational::from_integer(e.into())))).collect();
        Self { var: self.var, start: self.start - 1, coeffs, prec: self.prec - 1 }
    }
}

impl TruncSeries<Rational> {
    /// Polynomial in `t` with the same coefficients, for the known range.
    /// Panics on a negative start.
    pub fn to_poly(&self) -> UniPoly {
        assert!(self.start >= 0, "Laurent tail has no polynomial form");
        let mut coeffs = vec![<Rational as Field>::zero(); self.start as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly::new(self.var, coeffs)
    }

    pub fn from_poly(p: &UniPoly, prec: i64) -> Self {
        Self::with_prec(p.var(), 0, p.coeffs().to_vec(), prec)
    }
}

fn power<C: Field>(c: &C, e: i64) -> Option<C> {
    let base = if e < 0 { c.inv()? } else { c.clone() };
    let mut acc = C::one();
    for _ in 0..e.unsigned_abs() {
        acc = acc.mul(&base);
    }
    Some(acc)
}

impl fmt::Display for TruncSeries<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !num_traits::One::is_one(&mag) {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        write!(f, "{}", self.var)?;
                    } else {
                        write!(f, "{}^{e}", self.var)?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{})", self.var, self.prec + 1)
    }
}

/// Coefficients of `(1 + t)^alpha` through `t^order`.
pub fn binom_series(alpha: &Rational, order: usize) -> TruncSeries<Rational> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = Rational::one();
    for m in 0..=order {
        coeffs.push(c.clone());
        let m = Rational::from_integer((m as i64).into());
        c = c * (alpha - &m) / (m + Rational::one());
    }
    TruncSeries::new(Var::T, 0, coeffs)
}

/// Expansion of `f` at zero (in its own variable) or at infinity (in the
/// reciprocal variable) through exponent `order`.
pub fn series_of_rational(
    f: &RationalFunction,
    at: ExpansionPoint,
    order: i64,
) -> Result<TruncSeries<Rational>, Error> {
    let (num, den, start, var) = match at {
        ExpansionPoint::Zero => {
            let pole = f.pole_order_at_zero();
            if pole > 0 {
                return Err(Error::PoleAtExpansionPoint { order: pole });
            }
            (f.numer().clone(), f.denom().clone(), 0, f.var())
        }
        ExpansionPoint::Infinity => {
            let dn = f.numer().degree().unwrap_or(0);
            let dd = f.denom().degree().unwrap_or(0);
            (f.numer().reversed(dn), f.denom().reversed(dd), dd as i64 - dn as i64, f.var().reciprocal())
        }
    };
    if num.is_zero() {
        return Ok(TruncSeries::with_prec(var, 0, Vec::new(), order));
    }
    let rel = order - start;
    if rel < 0 {
        return Ok(TruncSeries::with_prec(var, start, Vec::new(), order));
    }
    let n = TruncSeries::from_poly(&num, rel);
    let d = TruncSeries::from_poly(&den, rel);
    let q = n.checked_div(&d)?;
    Ok(q.shift(start).with_var(var))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn rats(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binom_series(&int(1), 3).coeffs, rats(&[(1, 1), (1, 1), (0, 1), (0, 1)]));
        assert_eq!(binom_series(&rat(1, 2), 3).coeffs, rats(&[(1, 1), (1, 2), (-1, 8), (1, 16)]));
        let s = binom_series(&rat(-5, 2), 2).scale_argument(&int(-4));
        assert_eq!(s.coeffs, rats(&[(1, 1), (10, 1), (70, 1)]));
    }

    #[test]
    fn rational_expansions() {
        let rf = |n: &[i64], d: &[i64]| {
            RationalFunction::new(UniPoly::from_ints(Var::U, n), UniPoly::from_ints(Var::U, d)).unwrap()
        };
        let s = series_of_rational(&rf(&[0, 1], &[1, -1]), ExpansionPoint::Zero, 3).unwrap();
        assert_eq!(s.to_string(), "u + u^2 + u^3 + O(u^4)");
        let s = series_of_rational(&rf(&[1], &[1, -1]), ExpansionPoint::Zero, 2).unwrap();
        assert_eq!(s.to_string(), "1 + u + u^2 + O(u^3)");
        let s = series_of_rational(&rf(&[-1, 1], &[0, 1]), ExpansionPoint::Infinity, 2).unwrap();
        assert_eq!(s.to_string(), "1 - 1/u + O(1/u^3)");
        assert_eq!(
            series_of_rational(&rf(&[1], &[0, 0, 1]), ExpansionPoint::Zero, 2),
            Err(Error::PoleAtExpansionPoint { order: 2 })
        );
        // Laurent tail at infinity: u^2/(u - 1) = u + 1 + 1/u + ...
        let s = series_of_rational(&rf(&[0, 0, 1], &[-1, 1]), ExpansionPoint::Infinity, 1).unwrap();
        assert_eq!(s.start(), -1);
        assert_eq!((s.coeff(-1), s.coeff(0), s.coeff(1)), (int(1), int(1), int(1)));
    }

    #[test]
    fn laurent_inverse_and_powers() {
        // (t + t^2)^-1 = t^-1 - 1 + t - ...
        let f = TruncSeries::new(Var::T, 1, vec![int(1), int(1), int(0), int(0)]);
        let g = f.inverse().unwrap();
        assert_eq!(g.start(), -1);
        assert_eq!(g.coeffs, vec![int(1), int(-1), int(1), int(-1)]);
        assert_eq!(f.mul(&g).terms().map(|(_, c)| c.clone()).collect::<Vec<_>>(), vec![int(1), int(0), int(0), int(0)]);
        // (2 + t)^3 via the power recurrence
        let h = TruncSeries::new(Var::T, 0, vec![int(2), int(1), int(0), int(0), int(0)]).pow_int(3).unwrap();
        assert_eq!(h.coeffs, vec![int(8), int(12), int(6), int(1), int(0)]);
        // sqrt(1 - 4t) agrees with the binomial recurrence
        let r = TruncSeries::new(Var::T, 0, vec![int(1), int(-4), int(0), int(0), int(0), int(0)])
            .pow_rational(&rat(1, 2))
            .unwrap();
        assert_eq!(r.coeffs, binom_series(&rat(1, 2), 5).scale_argument(&int(-4)).coeffs);
        assert!(TruncSeries::new(Var::T, 0, vec![int(2), int(1)]).pow_rational(&rat(1, 2)).is_none());
    }

    #[test]
    fn derivative_keeps_laurent_shape() {
        let f = TruncSeries::new(Var::T, -1, vec![int(1), int(3), int(2)]);
        let d = f.derivative();
        assert_eq!((d.coeff(-2), d.coeff(-1), d.coeff(0)), (int(-1), int(0), int(2)));
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn binomial_inverse_pair(n in -12i64..=12, d in 1i64..=6, order in 0usize..12) {
            let a = rat(n, d);
            let p = binom_series(&a, order).mul(&binom_series(&-a, order));
            prop_assert_eq!(p, TruncSeries::one(Var::T, order as i64));
        }

        #[test]
        fn integer_binomial_truncates(p in 0i64..8, order in 0usize..14) {
            let s = binom_series(&int(p), order);
            for (e, c) in s.terms() {
                prop_assert_eq!(c.is_zero(), e > p);
            }
        }

        #[test]
        fn series_round_trip(num in proptest::collection::vec(small_rat(), 0..5),
                             den in proptest::collection::vec(small_rat(), 1..5),
                             c0 in small_rat(), order in 0i64..10) {
            let mut den = den;
            den[0] = if c0.is_zero() { int(1) } else { c0 };
            let n = UniPoly::new(Var::U, num);
            let d = UniPoly::new(Var::U, den);
            let f = RationalFunction::new(n.clone(), d.clone()).unwrap();
            let s = series_of_rational(&f, ExpansionPoint::Zero, order).unwrap();
            let back = s.mul(&TruncSeries::from_poly(&d, order));
            prop_assert_eq!(back, TruncSeries::from_poly(&n, order));
        }

        #[test]
        fn product_quotient_round_trip(a in proptest::collection::vec(small_rat(), 1..6),
                                       b in proptest::collection::vec(small_rat(), 1..6),
                                       b0 in small_rat()) {
            prop_assume!(!b0.is_zero());
            let mut b = b;
            b[0] = b0;
            let len = a.len().min(b.len());
            let sa = TruncSeries::new(Var::T, 0, a[..len].to_vec());
            let sb = TruncSeries::new(Var::T, 0, b[..len].to_vec());
            prop_assert_eq!(sa.mul(&sb).checked_div(&sb).unwrap(), sa);
        }

        #[test]
        fn rational_function_round_trip(a in proptest::collection::vec(small_rat(), 0..4),
                                        b in proptest::collection::vec(small_rat(), 1..4),
                                        c in proptest::collection::vec(small_rat(), 1..4)) {
            let poly = |v: Vec<Rational>| UniPoly::new(Var::U, v);
            let (pb, pc) = (poly(b), poly(c));
            prop_assume!(!pb.is_zero() && !pc.is_zero());
            let x = RationalFunction::new(poly(a), pb.clone()).unwrap();
            let y = RationalFunction::new(pc, pb).unwrap();
            prop_assert_eq!((&x * &y).checked_div(&y).unwrap(), x.clone());
            let r = rat(-7, 3);
            prop_assert_eq!(x.scale(&r).scale(&r.recip()), x);
        }
    }
}
