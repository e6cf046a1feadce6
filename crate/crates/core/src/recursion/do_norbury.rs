use num_traits::{One, Signed, Zero};

use crate::exact::{binomial, factorial, int, is_integer, odd_double_factorial, scaled_sum, BiSeries, Rational, Var};
use crate::report::{CheckRecord, Report};
use crate::Error;

/// Genus-graded one-point Laguerre coefficients `C_n^(g)`, the coefficient
/// of `N^{1-2g} x^{-1-2g-n}` in `<tr 1/(x-H)>`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LagCTable {
    rows: Vec<Vec<Rational>>,
}

impl LagCTable {
    pub fn gmax(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn nmax(&self) -> usize {
        self.rows[0].len() - 1
    }

    /// `C_n^(g)`, zero outside the table or for negative indices.
    pub fn get(&self, g: i64, n: i64) -> Rational {
        if g < 0 || n < 0 {
            return Rational::zero();
        }
        self.rows.get(g as usize).and_then(|r| r.get(n as usize)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn row(&self, g: usize) -> &[Rational] {
        &self.rows[g]
    }

    /// Overwrites one entry, for mutation tests and externally loaded tables.
    pub fn set(&mut self, g: usize, n: usize, v: Rational) {
        self.rows[g][n] = v;
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        if rows.is_empty() || rows[0].is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(Error::InvalidArgument("table rows must be nonempty and of equal length".into()));
        }
        Ok(Self { rows })
    }

    /// `(g, n, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.rows.iter().enumerate().flat_map(|(g, r)| r.iter().enumerate().map(move |(n, v)| (g, n, v)))
    }

    /// `C_0^(0) = 1`, `C_0^(g) = 0` for `g >= 1`, and every other entry a
    /// positive integer.
    pub fn check_integrality(&self) -> Result<(), Error> {
        for (g, n, v) in self.entries() {
            let ok = match (g, n) {
                (0, 0) => v.is_one(),
                (_, 0) => v.is_zero(),
                _ => is_integer(v) && v.is_positive(),
            };
            if !ok {
                return Err(Error::NonInteger { row: g as i64, col: n as i64, value: v.to_string() });
            }
        }
        Ok(())
    }
}

/// Fills `C_n^(g)` for `g <= gmax`, `n <= nmax`: Catalan numbers at `g = 0`,
/// then `(n+2g+1) C_n^(g) = (n+2g-2)(n+2g-1)^2 C_n^(g-1) + 2(2n+4g-1) C_{n-1}^(g)`
/// in increasing `n` within increasing `g`.
pub fn do_norbury_table(gmax: usize, nmax: usize) -> LagCTable {
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(gmax + 1);
    rows.push((0..=nmax as u64).map(|n| Rational::new(binomial(2 * n, n), (n + 1).into())).collect());
    for g in 1..=gmax {
        let prev = &rows[g - 1];
        let mut row: Vec<Rational> = Vec::with_capacity(nmax + 1);
        for n in 0..=nmax {
            let s = (n + 2 * g) as i64;
            let a = (s - 2) * (s - 1) * (s - 1);
            let v = match n {
                0 => scaled_sum(&[(a, &prev[n])], s + 1),
                _ => scaled_sum(&[(a, &prev[n]), (2 * (2 * s - 1), &row[n - 1])], s + 1),
            };
            row.push(v);
        }
        rows.push(row);
    }
    LagCTable { rows }
}

/// `2^g g! (2g-1)!! / (g+1)`, the value of `C_1^(g)`.
pub fn c1_closed_form(g: usize) -> Rational {
    let g = g as u64;
    let num = num_bigint::BigInt::from(2).pow(g as u32) * factorial(g) * odd_double_factorial(g);
    Rational::new(num, (g + 1).into())
}

/// `d^k/dx^k x^{-p}` coefficient: `(-p)(-p-1)...(-p-k+1)`.
pub(crate) fn falling(p: i64, k: usize) -> Rational {
    (0..k as i64).fold(Rational::one(), |acc, i| acc * int(-p - i))
}

/// Applies `Σ c x^a d^k` to `s`; `ops` lists `(a, k, c)`, and `shift2`
/// multiplies by `N^{shift2/2}`.
pub(crate) fn apply(s: &BiSeries, ops: &[(i64, usize, i64)], shift2: i64) -> BiSeries {
    let mut out = BiSeries::new(Var::X, Var::N);
    for ((e, b2), v) in s.terms() {
        for &(a, k, c) in ops {
            // x^a d^k x^e = falling(-e, k) x^{e-k+a}
            let coeff = v * falling(-e, k) * int(c);
            out.add_term(e - k as i64 + a, b2 + shift2, &coeff);
        }
    }
    out
}

/// Checks that `W_1'` built from `table` is annihilated by
/// `-(1/N)[x^2 d^3 + 6x d^2 + 6d] + N[x^2 d + 2x - 4x d - 6]`.
///
/// The coefficient of `N^{1-2g} x^{-n-2g-1}` depends on the table only
/// through `(g', n') <= (g, n)`; it is reported for every `g <= gmax`,
/// `n <= nmax` that the table covers completely. The `g = n = 0` slot
/// carries no information: its coefficient vanishes for any `C_0^(0)`.
pub fn laguerre_ode_check(table: &LagCTable, gmax: usize, nmax: usize) -> Report {
    let gmax = gmax.min(table.gmax());
    let nmax = nmax.min(table.nmax());
    // W_1' = -Σ N^{-2g} C_n^(g) (n+2g+1) x^{-2-2g-n}
    let mut w = BiSeries::new(Var::X, Var::N);
    for g in 0..=gmax {
        for n in 0..=nmax {
            let s = (n + 2 * g) as i64;
            w.add_term(-2 - s, -4 * g as i64, &(-table.get(g as i64, n as i64) * int(s + 1)));
        }
    }
    let a = apply(&w, &[(2, 3, 1), (1, 2, 6), (0, 1, 6)], -2);
    let b = apply(&w, &[(2, 1, 1), (1, 0, 2), (1, 1, -4), (0, 0, -6)], 2);
    let res = b.sub(&a);
    let mut report = Report::new();
    for g in 0..=gmax {
        for n in 0..=nmax {
            let x = -((n + 2 * g) as i64) - 1;
            let r = res.coeff(x, 2 - 4 * g as i64);
            let id = format!("ode/laguerre-resolvent/g={g:02},n={n:02}");
            report.push(CheckRecord::new(id, "resolvent-ode", r.is_zero(), r.to_string()));
        }
    }
    report
}
