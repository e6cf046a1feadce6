use std::collections::HashMap;
use std::sync::Mutex;

use crate::exact::{
    binomial, factorial, series_of_rational, ExpansionPoint, Rational, RationalFunction, TruncSeries, UniPoly, Var,
};
use crate::Error;
use num_bigint::BigInt;

/// `f_{A,B}(u)`, the residue at `z = 0` of `(1 + 1/(u+z-1))^A (1 - 1/z)^B`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FabValue {
    pub a: u32,
    pub b: u32,
    pub value: RationalFunction,
}

pub(crate) fn rf_int(n: i64) -> RationalFunction {
    RationalFunction::constant(Var::U, Rational::from_integer(n.into()))
}

pub(crate) fn rf_big(n: BigInt) -> RationalFunction {
    RationalFunction::constant(Var::U, Rational::from_integer(n))
}

/// Polynomial in `u` from integer coefficients, lowest degree first.
pub(crate) fn upoly(coeffs: &[i64]) -> RationalFunction {
    RationalFunction::from_poly(UniPoly::from_ints(Var::U, coeffs))
}

#[cfg(test)]
/// `num/den` with integer polynomial coefficients in `u`.
pub(crate) fn ufrac(num: &[i64], den: &[i64]) -> RationalFunction {
    RationalFunction::new(UniPoly::from_ints(Var::U, num), UniPoly::from_ints(Var::U, den))
        .expect("nonzero denominator")
}

/// `(1 + 1/(w + z))^a` in powers of `z` through `z^prec`, where
/// `w = shift` is a rational function of `u`.
fn g_power(a: u32, w: &RationalFunction, prec: i64) -> TruncSeries<RationalFunction> {
    if prec < 0 {
        return TruncSeries::with_prec(Var::Z, 0, Vec::new(), prec);
    }
    if a == 0 {
        return TruncSeries::one(Var::Z, prec);
    }
    // 1/(w + z) = Σ (-1)^m z^m / w^{m+1}
    let winv = w.inverse().expect("shift is nonzero");
    let mut coeffs = Vec::with_capacity(prec as usize + 1);
    let mut p = winv.clone();
    for m in 0..=prec {
        let term = if m % 2 == 0 { p.clone() } else { -&p };
        coeffs.push(if m == 0 { rf_int(1) + term } else { term });
        p = &p * &winv;
    }
    TruncSeries::new(Var::Z, 0, coeffs).pow_int(a as i64).expect("leading coefficient u/(u-1) is nonzero")
}

/// Coefficient of `z^n` (any integer `n`) in the Laurent expansion at zero of
/// `(1 + 1/(u+z-1))^a (1 - 1/z)^b`.
pub fn laurent_coefficient(a: u32, b: u32, n: i64) -> RationalFunction {
    let top = n + b as i64;
    if top < 0 {
        return rf_int(0);
    }
    let g = g_power(a, &upoly(&[-1, 1]), top);
    // (1 - 1/z)^b = Σ_j C(b, j) (-1)^j z^{-j}
    let mut acc = rf_int(0);
    for j in 0..=b as i64 {
        if n + j < 0 {
            continue;
        }
        let c = binomial(b as u64, j as u64) * if j % 2 == 0 { 1 } else { -1 };
        acc = acc + rf_big(c) * g.coeff(n + j);
    }
    acc
}

/// `f_{A,B}(u)`
pub fn fab(a: u32, b: u32) -> FabValue {
    FabValue { a, b, value: laurent_coefficient(a, b, -1) }
}

/// Memo table for [`fab`] shared by the identity sweeps.
#[derive(Default, Debug)]
pub struct FabCache {
    map: Mutex<HashMap<(u32, u32), RationalFunction>>,
}

impl FabCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, a: u32, b: u32) -> RationalFunction {
        if let Some(v) = self.map.lock().expect("cache lock").get(&(a, b)) {
            return v.clone();
        }
        let v = fab(a, b).value;
        self.map.lock().expect("cache lock").insert((a, b), v.clone());
        v
    }
}

/// Residue at `z = 0` of `(1/u) (1-z)^{N+k} (z+u)^N / ((1-z-u)^{N+k} z^N)`,
/// the exponential mean `<tr e^{uH}>` for `H = BB†` with `B` of shape
/// `N × (N+k)`.
pub fn fab_generalized(n: u32, k: u32) -> RationalFunction {
    generalized_residue(n, k, &upoly(&[1, -1]), -1)
}

/// The same integrand written with `(z+u-1)^{N+k}` in the denominator. It
/// differs from [`fab_generalized`] by the sign `(-1)^{N+k}`.
pub fn mp_literal(n: u32, k: u32) -> RationalFunction {
    generalized_residue(n, k, &upoly(&[-1, 1]), 1)
}

// Residue of (1/u)(1-z)^{N+k}(z+u)^N / ((c + s z)^{N+k} z^N) with s = ±1.
fn generalized_residue(n: u32, k: u32, c: &RationalFunction, s: i64) -> RationalFunction {
    let p = (n + k) as i64;
    let prec = n as i64 - 1;
    let lin = |c0: RationalFunction, c1: i64| TruncSeries::with_prec(Var::Z, 0, vec![c0, rf_int(c1)], prec);
    // (c + s z)^{-p} = c^{-p} (1 + (s/c) z)^{-p}
    let cinv = c.inverse().expect("nonzero constant term");
    let mut coeffs = Vec::with_capacity(n as usize);
    let ratio = &cinv * &rf_int(s);
    let mut rp = cinv.pow(p as u32);
    for m in 0..n as i64 {
        // C(-p, m) = (-1)^m C(p+m-1, m)
        let bc = binomial((p + m - 1) as u64, m as u64) * if m % 2 == 0 { 1 } else { -1 };
        coeffs.push(&rf_big(bc) * &rp);
        rp = &rp * &ratio;
    }
    let denom = TruncSeries::with_prec(Var::Z, 0, coeffs, prec);
    let one_minus_z = lin(rf_int(1), -1).pow_int(p).expect("nonzero");
    let z_plus_u = lin(upoly(&[0, 1]), 1).pow_int(n as i64).expect("u is nonzero");
    let prod = one_minus_z.mul(&z_plus_u).mul(&denom);
    let res = prod.coeff(prec);
    res * upoly(&[0, 1]).inverse().expect("u is nonzero")
}

/// `<tr H^m>` for `m = 0..=mmax` in the ensemble with weight `e^{-N tr H}`.
///
/// The residue `f_{N,N}(u)/u` is the exponential mean for weight `e^{-tr H}`;
/// rescaling `H -> H/N` divides the `m`-th moment by `N^m`.
pub fn exp_mean_moments(n: u32, mmax: usize) -> Result<Vec<Rational>, Error> {
    let mean = fab(n, n).value.checked_div(&upoly(&[0, 1]))?;
    moments_of(&mean, n, mmax)
}

/// `<tr H^m>` for `H = BB†`, `B` of shape `N × (N+k)`, weight `e^{-N tr H}`.
pub fn generalized_moments(n: u32, k: u32, mmax: usize) -> Result<Vec<Rational>, Error> {
    moments_of(&fab_generalized(n, k), n, mmax)
}

/// `m! N^{-m}` times the Taylor coefficients at `u = 0` of an exponential
/// mean computed for weight `e^{-tr H}`.
pub fn moments_of(mean: &RationalFunction, n: u32, mmax: usize) -> Result<Vec<Rational>, Error> {
    let s = series_of_rational(mean, ExpansionPoint::Zero, mmax as i64)?;
    let n = Rational::from_integer(n.into());
    let mut scale = Rational::from_integer(1.into());
    let mut out = Vec::with_capacity(mmax + 1);
    for m in 0..=mmax {
        out.push(s.coeff(m as i64) * Rational::from_integer(factorial(m as u64)) / &scale);
        scale *= &n;
    }
    Ok(out)
}

/// Closed triple-binomial sum for `f_{A,B}`, used only as a test oracle.
#[cfg(test)]
pub(crate) fn fab_closed_form(a: u32, b: u32) -> RationalFunction {
    let w = upoly(&[-1, 1]);
    let winv = w.inverse().unwrap();
    let mut acc = rf_int(-(b as i64));
    for j in 1..=b as u64 {
        for i in 1..=a as u64 {
            let c = binomial(b as u64, j) * binomial(a as u64, i) * binomial(i + j - 2, j - 1);
            // (-1)^j (-1)^{j-1} = -1
            let term = rf_big(-c) * winv.pow((i + j - 1) as u32);
            acc = acc + term;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn small_values() {
        assert_eq!(fab(1, 1).value, ufrac(&[0, 1], &[1, -1]));
        assert_eq!(fab(1, 1).value.to_string(), "-u/(u - 1)");
        assert_eq!(fab(2, 1).value, ufrac(&[0, 0, -1], &[1, -2, 1]));
        assert_eq!(fab(1, 2).value, ufrac(&[-1, 2, -2], &[1, -2, 1]));
        assert_eq!(fab(2, 2).value, ufrac(&[0, -2, 2, -2], &[-1, 3, -3, 1]));
        for a in 0..5 {
            assert!(fab(a, 0).value.is_zero());
            assert_eq!(fab(0, a).value, rf_int(-(a as i64)));
        }
    }

    #[test]
    fn series_route_matches_closed_sum() {
        for a in 0..7 {
            for b in 0..7 {
                assert_eq!(fab(a, b).value, fab_closed_form(a, b), "f_{{{a},{b}}}");
            }
        }
    }

    #[test]
    fn poles_only_at_one() {
        // the pole order reaches A + B - 1, e.g. f_{2,1} = -u^2/(u-1)^2
        for a in 1..6u32 {
            for b in 1..6u32 {
                let f = fab(a, b).value;
                let d = f.denom();
                let expect = UniPoly::from_ints(Var::U, &[-1, 1]).pow(d.degree().unwrap() as u32);
                assert_eq!(d, &expect);
                assert!(d.degree().unwrap() <= (a + b - 1) as usize);
                assert!(d.degree().unwrap() >= 1);
            }
        }
    }

    #[test]
    fn generalized_mean() {
        for n in 1..5 {
            assert_eq!(fab_generalized(n, 0), fab(n, n).value.checked_div(&upoly(&[0, 1])).unwrap());
        }
        // 1 x 2 matrix: tr H is Gamma(2, 1), moments (m+1)!
        let g = fab_generalized(1, 1);
        assert_eq!(g, ufrac(&[1], &[1, -2, 1]));
        assert_eq!(generalized_moments(1, 1, 3).unwrap(), vec![int(1), int(2), int(6), int(24)]);
        for n in 1..4 {
            for k in 0..3 {
                let sign = if (n + k) % 2 == 0 { 1 } else { -1 };
                assert_eq!(mp_literal(n, k), fab_generalized(n, k) * rf_int(sign));
            }
        }
    }

    #[test]
    fn exponential_moments() {
        assert_eq!(exp_mean_moments(1, 4).unwrap(), vec![int(1), int(1), int(2), int(6), int(24)]);
        let m2 = exp_mean_moments(2, 2).unwrap();
        assert_eq!(m2, vec![int(2), int(2), int(4)]);
        for n in 1..6 {
            assert_eq!(exp_mean_moments(n, 0).unwrap()[0], int(n as i64));
        }
    }

    #[test]
    fn cache_agrees() {
        let c = FabCache::new();
        assert_eq!(c.get(3, 2), fab(3, 2).value);
        assert_eq!(c.get(3, 2), fab(3, 2).value);
    }
}
