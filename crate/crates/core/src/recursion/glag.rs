use num_traits::Zero;

use super::do_norbury::apply;
use crate::exact::{int, BiSeries, Rational, Var};
use crate::report::{CheckRecord, Report};
use crate::wick::MomentPoly;

/// Fractional-genus coefficients of the one-point resolvent for `B` of shape
/// `N × (N+1)`: entry `(r2, n)` is `C_n^(r2/2)`, the coefficient of
/// `N^{-r2} x^{-1-n-r2}` in `<tr 1/(x-H)>/N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HalfGenusTable {
    rows: Vec<Vec<Rational>>,
}

impl HalfGenusTable {
    pub fn r2max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn nmax(&self) -> usize {
        self.rows[0].len() - 1
    }

    /// Zero for negative indices or outside the table.
    pub fn get(&self, r2: i64, n: i64) -> Rational {
        if r2 < 0 || n < 0 {
            return Rational::zero();
        }
        self.rows.get(r2 as usize).and_then(|r| r.get(n as usize)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, r2: usize, n: usize, v: Rational) {
        self.rows[r2][n] = v;
    }

    /// All-zero table of the given shape.
    pub fn zeros(r2max: usize, nmax: usize) -> Self {
        Self { rows: vec![vec![Rational::zero(); nmax + 1]; r2max + 1] }
    }

    /// `(r2, n, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.rows.iter().enumerate().flat_map(|(j, r)| r.iter().enumerate().map(move |(n, v)| (j, n, v)))
    }

    /// `<tr H^m> = N Σ_j N^{-j} C_{m-j}^(j/2)`, the reconstructed moment.
    /// `None` when the table does not reach degree `m`.
    pub fn moment(&self, m: usize) -> Option<MomentPoly> {
        if m > self.nmax() || m > self.r2max() {
            return None;
        }
        Some(MomentPoly::from_terms((0..=m).map(|j| (1 - j as i64, self.get(j as i64, (m - j) as i64)))))
    }

    /// Coefficient of `x^{-1-d}` in `W_1/N` as a polynomial in `1/N`
    /// (entry `j` is the `N^{-j}` coefficient).
    pub fn x_coefficient(&self, d: usize) -> Vec<Rational> {
        (0..=d).map(|j| self.get(j as i64, (d - j) as i64)).collect()
    }
}

/// Inhomogeneity of the relation at `(j, n)`, `n = m + j`.
fn delta(j: i64, n: i64) -> i64 {
    match (j, n) {
        (0, 0) => 2,
        (1, 0) => 1,
        (1, 1) => 2,
        (2, 1) => 2,
        _ => 0,
    }
}

/// Left side of the eight-term relation at `(j, n)` minus its inhomogeneity;
/// `c(j, m)` reads the table with `m = n - j`.
fn relation(c: &impl Fn(i64, i64) -> Rational, j: i64, n: i64) -> Rational {
    let m = n - j;
    let (a, b, d) = (n + 1, n - 1, (n - 1) * (n - 2) * (n - 3));
    int(a) * (int(2) * c(j, m) + c(j - 1, m + 1))
        - int(4 * (2 * n - 1)) * (c(j, m - 1) + c(j - 1, m))
        - int(d) * (int(2) * c(j - 2, m) + c(j - 3, m + 1))
        - int(a * b) * c(j - 2, m + 1)
        + int(d * (n - 3)) * c(j - 4, m + 1)
        - int(delta(j, n))
}

/// Solves the eight-term relation for `C_m^(j/2)` in increasing `j = 2r`,
/// then increasing `m`; the unknown enters with coefficient `2(m+j+1)`.
///
/// Row `j` reads the rows below it one column further out, so the work
/// table is `r2max` columns wider than the result.
pub fn glag_k1_table(r2max: usize, nmax: usize) -> HalfGenusTable {
    let width = nmax + r2max;
    let mut t = HalfGenusTable::zeros(r2max, width);
    for j in 0..=r2max as i64 {
        for m in 0..=(width - j as usize) as i64 {
            let n = m + j;
            let r = relation(&|a, b| t.get(a, b), j, n);
            t.rows[j as usize][m as usize] = -r / int(2 * (n + 1));
        }
    }
    for row in &mut t.rows {
        row.truncate(nmax + 1);
    }
    t
}

/// Residuals of the eight-term relation at `n < j`, where the unknown slot
/// has negative index and the relation must hold on its own.
pub fn glag_boundary_residuals(t: &HalfGenusTable) -> Vec<((i64, i64), Rational)> {
    let mut out = Vec::new();
    for j in 0..=t.r2max() as i64 {
        for n in 0..j {
            let r = relation(&|a, b| t.get(a, b), j, n);
            if !r.is_zero() {
                out.push(((j, n), r));
            }
        }
    }
    out
}

/// `(x power, derivative order, coefficient)`
type Term = (i64, usize, i64);

// Operator blocks acting on W_1/N, by power of N.
const BLOCKS: [(i64, &[Term]); 5] = [
    (2, &[(2, 1, -2), (1, 1, 8), (0, 0, 4)]),
    (1, &[(2, 1, -1), (1, 1, 8), (0, 0, 4)]),
    (0, &[(2, 3, 2), (2, 2, -1), (1, 2, 12), (1, 1, -1), (0, 1, 12), (0, 0, 1)]),
    (-1, &[(2, 3, 1), (1, 2, 6), (0, 1, 6)]),
    (-2, &[(2, 4, 1), (1, 3, 7), (0, 2, 9)]),
];

// 2N^2 + N + (2N + 2)/x as (N power, x power, coefficient).
const RHS: [(i64, i64, i64); 4] = [(2, 0, 2), (1, 0, 1), (1, -1, 2), (0, -1, 2)];

/// `(j, highest m)` for every row `j` that feeds the slot `N^e x^{-q}`.
fn slot_reach(e: i64, q: i64) -> Vec<(i64, i64)> {
    BLOCKS
        .iter()
        .filter_map(|(b, ops)| {
            let j = b - e;
            (j >= 0).then(|| {
                let lift = ops.iter().map(|(a, k, _)| a - *k as i64).max().unwrap_or(0);
                (j, q - 1 - j + lift)
            })
        })
        .collect()
}

/// Applies the five `N`-graded operator blocks to `W_1/N` built from `table`
/// and compares with `2N^2 + N + (2N+2)/x` slot by slot. Only slots whose
/// every contributing entry lies inside the table are reported.
pub fn glag_w1_ode_check(table: &HalfGenusTable) -> Report {
    let mut w = BiSeries::new(Var::X, Var::N);
    for (j, n, v) in table.entries() {
        w.add_term(-1 - (n + j) as i64, -2 * j as i64, v);
    }
    let mut res = BiSeries::new(Var::X, Var::N);
    for (b, ops) in BLOCKS {
        res = res.add(&apply(&w, ops, 2 * b));
    }
    for (b, e, c) in RHS {
        res.add_term(e, 2 * b, &int(-c));
    }
    let (r2max, nmax) = (table.r2max() as i64, table.nmax() as i64);
    let mut report = Report::new();
    for e in (-r2max - 2..=2).rev() {
        for q in 0.. {
            let reach = slot_reach(e, q);
            if reach.iter().any(|&(j, _)| j > r2max) || reach.is_empty() {
                break;
            }
            if reach.iter().any(|&(_, m)| m > nmax) {
                break;
            }
            let r = res.coeff(-q, 2 * e);
            let id = format!("ode/glag-resolvent/N^{e},x^-{q}");
            report.push(CheckRecord::new(id, "glag-ode", r.is_zero(), r.to_string()));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::wick::{wishart_counts, Dim, TracePattern, WISHART_LIMIT};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn table_rows() {
        let t = glag_k1_table(3, 6);
        let row = |j: i64| (0..=6).map(|m| t.get(j, m)).collect::<Vec<_>>();
        assert_eq!(row(0), ints(&[1, 1, 2, 5, 14, 42, 132]));
        assert_eq!(row(1), ints(&[1, 3, 10, 35, 126, 462, 1716]));
        assert_eq!(row(2), ints(&[1, 7, 40, 210, 1050, 5082, 24024]));
        assert_eq!(row(3), ints(&[2, 25, 210, 1470, 9240, 54054, 300300]));
        assert!(glag_boundary_residuals(&t).is_empty());
        assert_eq!(glag_k1_table(3, 2).get(3, 2), int(210));
    }

    #[test]
    fn expansion_through_x_minus_five() {
        let t = glag_k1_table(4, 4);
        assert_eq!(t.x_coefficient(0), ints(&[1]));
        assert_eq!(t.x_coefficient(1), ints(&[1, 1]));
        assert_eq!(t.x_coefficient(2), ints(&[2, 3, 1]));
        assert_eq!(t.x_coefficient(3), ints(&[5, 10, 7, 2]));
        assert_eq!(t.x_coefficient(4), ints(&[14, 35, 40, 25, 6]));
    }

    #[test]
    fn rectangular_moments() {
        let t = glag_k1_table(5, 5);
        for m in 1..=5usize {
            let w = wishart_counts(&TracePattern::new(vec![m]).unwrap(), WISHART_LIMIT).unwrap();
            assert_eq!(t.moment(m).unwrap(), w.specialize(Dim::N, Dim::Symbolic { offset: 1 }), "m = {m}");
        }
    }

    #[test]
    fn operator_equation() {
        let t = glag_k1_table(4, 8);
        let r = glag_w1_ode_check(&t);
        assert!(r.passed(), "{:?}", r.failures().next());
        assert!(r.records.len() > 20);
    }

    #[test]
    fn zero_table_fails_at_leading_slot() {
        let r = glag_w1_ode_check(&HalfGenusTable::zeros(4, 4));
        let failed: Vec<_> = r.failures().map(|c| c.id.as_str()).collect();
        assert!(failed.contains(&"ode/glag-resolvent/N^2,x^-0"), "{failed:?}");
        let mut t = glag_k1_table(4, 4);
        t.set(2, 1, rat(8, 1));
        assert!(!glag_w1_ode_check(&t).passed());
    }
}
