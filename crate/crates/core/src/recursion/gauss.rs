use num_traits::{Signed, Zero};

use crate::exact::{binom_series, int, is_integer, scaled_sum, Rational, TruncSeries, Var};
use crate::Error;

/// Coefficients `b_k^(g)`, `g >= 1`, `0 <= k < g`, of the Gaussian genus-`g`
/// resolvent `W^(g)(x) = Σ_k b_k^(g) (x^2 - 4)^{-(4g+2k+1)/2}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussBTable {
    rows: Vec<Vec<Rational>>,
}

impl GaussBTable {
    pub fn gmax(&self) -> usize {
        self.rows.len()
    }

    /// Row `g` (`1 <= g <= gmax`), indexed by `k`.
    pub fn row(&self, g: usize) -> &[Rational] {
        &self.rows[g - 1]
    }

    pub fn get(&self, g: usize, k: i64) -> Rational {
        if g == 0 || k < 0 {
            return Rational::zero();
        }
        self.rows.get(g - 1).and_then(|r| r.get(k as usize)).cloned().unwrap_or_else(Rational::zero)
    }

    /// `(g, k, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().map(move |(k, v)| (i + 1, k, v)))
    }

    /// `W^(g)` in powers of `1/x` through `x^{-order}`; the coefficient of
    /// `x^{-m-1}` is the genus-`g` part of `<tr H^m>`.
    pub fn resolvent_series(&self, g: usize, order: i64) -> TruncSeries {
        let mut acc = TruncSeries::with_prec(Var::INV_X, 0, Vec::new(), order);
        for (k, b) in self.row(g).iter().enumerate() {
            // (x^2 - 4)^{-p/2} = x^{-p} (1 - 4/x^2)^{-p/2}
            let p = (4 * g + 2 * k + 1) as i64;
            if p > order {
                continue;
            }
            let terms = ((order - p) / 2) as usize;
            let bs = binom_series(&Rational::new((-p).into(), 2.into()), terms);
            let mut coeffs = vec![Rational::zero(); (order - p) as usize + 1];
            let mut four = Rational::from_integer(1.into());
            for j in 0..=terms {
                coeffs[2 * j] = bs.coeff(j as i64) * &four * b;
                four *= int(-4);
            }
            acc = acc.add(&TruncSeries::with_prec(Var::INV_X, p, coeffs, order));
        }
        acc
    }
}

/// Seeds `b^(1) = (1)` and applies
/// `(4g+2k+6) b_k^(g+1) = (4g+2k+1)(4g+2k+3)[(4g+2k+2) b_k^(g) + 4(4g+2k-1) b_{k-1}^(g)]`.
/// Every entry must come out a positive integer.
pub fn gauss_hz_table(gmax: usize) -> Result<GaussBTable, Error> {
    if gmax == 0 {
        return Err(Error::InvalidArgument("gauss table needs gmax >= 1".into()));
    }
    let mut rows = vec![vec![int(1)]];
    for g in 1..gmax {
        let prev = &rows[g - 1];
        let mut row = Vec::with_capacity(g + 1);
        for k in 0..=g {
            let s = (4 * g + 2 * k) as i64;
            let bk = prev.get(k).cloned().unwrap_or_else(Rational::zero);
            let bk1 = if k > 0 { prev[k - 1].clone() } else { Rational::zero() };
            let f = (s + 1) * (s + 3);
            let v = scaled_sum(&[(f * (s + 2), &bk), (f * 4 * (s - 1), &bk1)], s + 6);
            if !is_integer(&v) || !v.is_positive() {
                return Err(Error::NonInteger { row: (g + 1) as i64, col: k as i64, value: v.to_string() });
            }
            row.push(v);
        }
        rows.push(row);
    }
    Ok(GaussBTable { rows })
}
