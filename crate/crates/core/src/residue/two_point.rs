use std::collections::BTreeMap;

use num_traits::Zero;

use super::fab::{fab, laurent_coefficient};
use crate::exact::{binomial, factorial, int, series_of_rational, sign, ExpansionPoint, Rational};
use crate::Error;

/// Connected two-trace exponential mean `<tr e^{u1 H} tr e^{u2 H}>_conn` for
/// weight `e^{-N tr H}`, as a bivariate Taylor series through total degree
/// `order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoPointValue {
    pub n: u32,
    pub order: usize,
    coeffs: BTreeMap<(usize, usize), Rational>,
}

impl TwoPointValue {
    /// Coefficient of `u1^m1 u2^m2`. Panics beyond the computed order.
    pub fn coeff(&self, m1: usize, m2: usize) -> Rational {
        assert!(m1 + m2 <= self.order, "u1^{m1} u2^{m2} lies beyond order {}", self.order);
        self.coeffs.get(&(m1, m2)).cloned().unwrap_or_else(Rational::zero)
    }

    /// `<tr H^m1 tr H^m2>_conn = m1! m2!` times the series coefficient.
    pub fn moment(&self, m1: usize, m2: usize) -> Rational {
        self.coeff(m1, m2) * Rational::from_integer(factorial(m1 as u64) * factorial(m2 as u64))
    }
}

type Laurent2 = BTreeMap<(i64, i64), Rational>;

fn add_to(map: &mut Laurent2, key: (i64, i64), c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(key).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        map.remove(&key);
    }
}

/// Evaluates the double contour integral by iterated residues at `z2 = 0`
/// and `z1 = 0`, treating `u1, u2` as formal parameters large compared to
/// `z1, z2`, and adds `f_{N,N}(u1+u2)/(u1+u2)`.
///
/// With `d = z1 - z2` the kernel expands as
/// `1/((d+u1)(d-u2)) = -1/(u1+u2) Σ_n d^n (u2^{-n-1} + (-1)^n u1^{-n-1})`,
/// which reduces both residues to the Laurent coefficients
/// `R_a(u) = [z^{-1-a}] (1 + 1/(u+z-1))^N (1 - 1/z)^N`, `0 <= a < N`.
/// The integral itself is normalized for weight `e^{-tr H}`; the stored
/// coefficient of `u1^a u2^b` is divided by `N^{a+b}`.
pub fn two_point_series(n: u32, order: usize) -> Result<TwoPointValue, Error> {
    if n == 0 || order == 0 {
        return Err(Error::InvalidArgument("two_point_series needs N >= 1 and order >= 1".into()));
    }
    let big_n = n as i64;
    // Highest single-variable exponent needed before the u^{-a-b-1} shift.
    let prec = order as i64 + 2 * big_n + 1;
    let top = order as i64 + 1;

    let r: Vec<Vec<Rational>> = (0..big_n)
        .map(|a| {
            let ra = laurent_coefficient(n, n, -1 - a);
            let s = series_of_rational(&ra, ExpansionPoint::Zero, prec)?;
            Ok((0..=prec).map(|e| s.coeff(e)).collect())
        })
        .collect::<Result<_, Error>>()?;

    // Numerator B(u1, u2) = f(u1+u2) - Σ C(a+b,a)(-1)^b R_a(u1) R_b(u2)(u2^{-a-b-1} + (-1)^{a+b} u1^{-a-b-1})
    let mut num: Laurent2 = BTreeMap::new();
    let f = series_of_rational(&fab(n, n).value, ExpansionPoint::Zero, top)?;
    for d in 0..=top {
        let c = f.coeff(d);
        if c.is_zero() {
            continue;
        }
        for e1 in 0..=d {
            add_to(&mut num, (e1, d - e1), &c * Rational::from_integer(binomial(d as u64, e1 as u64)));
        }
    }
    for a in 0..big_n {
        for b in 0..big_n {
            let k = a + b + 1;
            let w = Rational::from_integer(binomial((a + b) as u64, a as u64)) * int(sign(b));
            let w1 = &w * int(sign(a + b));
            for (e1, x) in r[a as usize].iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (e2, y) in r[b as usize].iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    let (e1, e2) = (e1 as i64, e2 as i64);
                    let xy = x * y;
                    if e1 + e2 - k <= top {
                        add_to(&mut num, (e1, e2 - k), -(&w * &xy));
                        add_to(&mut num, (e1 - k, e2), -(&w1 * &xy));
                    }
                }
            }
        }
    }

    if let Some(((e1, e2), c)) = num.iter().find(|((e1, e2), _)| (*e1 < 0 || *e2 < 0) && e1 + e2 <= top) {
        return Err(Error::Inexact(format!("negative-power term {c} * u1^{e1} u2^{e2} survives")));
    }

    // Divide each homogeneous component by (u1 + u2).
    let mut coeffs = BTreeMap::new();
    for d in 0..=top {
        let c: Vec<Rational> =
            (0..=d).map(|e1| num.get(&(e1, d - e1)).cloned().unwrap_or_else(Rational::zero)).collect();
        if d == 0 {
            if !c[0].is_zero() {
                return Err(Error::Inexact(format!("constant term {} survives", c[0])));
            }
            continue;
        }
        let mut q = vec![Rational::zero(); d as usize];
        for i in 0..d as usize {
            q[i] = if i == 0 { c[0].clone() } else { &c[i] - &q[i - 1] };
        }
        let rem = &c[d as usize] - &q[d as usize - 1];
        if !rem.is_zero() {
            return Err(Error::Inexact(format!("degree-{d} part is not divisible by u1 + u2")));
        }
        let scale = Rational::from_integer(big_n.into()).pow(d as i32 - 1);
        for (e1, v) in q.into_iter().enumerate() {
            if !v.is_zero() {
                coeffs.insert((e1, d as usize - 1 - e1), v / &scale);
            }
        }
    }
    Ok(TwoPointValue { n, order, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn single_eigenvalue() {
        // N = 1: 1/(1-u1-u2) - 1/((1-u1)(1-u2)), so [u1^a u2^b] = C(a+b, a) - 1
        let t = two_point_series(1, 6).unwrap();
        for a in 0..=6usize {
            for b in 0..=6 - a {
                let expect = Rational::from_integer(binomial((a + b) as u64, a as u64)) - int(1);
                assert_eq!(t.coeff(a, b), expect, "u1^{a} u2^{b}");
            }
        }
    }

    #[test]
    fn symmetric_with_vanishing_edges() {
        for n in 1..=3 {
            let t = two_point_series(n, 5).unwrap();
            for a in 0..=5usize {
                assert!(t.coeff(a, 0).is_zero());
                for b in 0..=5 - a {
                    assert_eq!(t.coeff(a, b), t.coeff(b, a));
                }
            }
            assert_eq!(t.coeff(1, 1), int(1));
        }
    }
}
