//! Series in `1/x` for the half-integer-power building blocks of the
//! Laguerre resolvent, and the checks that tie them to the recursion tables.
//!
//! Under `x = e^λ + e^{-λ} + 2` one has `((e^λ-1)/(e^λ+1))^2 = (x-4)/x`,
//! `e^λ + e^{-λ} = x - 2` and `(e^λ - e^{-λ})^2 = x^2 - 4x`, so every object
//! here is `x^{-a}(1 - 4/x)^{b}` with `a` an integer: an honest Laurent
//! series in `1/x` with rational coefficients.

use num_traits::Zero;

use crate::exact::{binom_series, int, rat, Rational, TruncSeries, Var};
use crate::recursion::{consistency_form, VTable};
use crate::report::{CheckRecord, Report};
use crate::wick::{connected_moments, Dim, TracePattern, WISHART_LIMIT};
use crate::Error;

/// `v_k = ((x-4)/x)^{k+1/2}` in powers of `1/x`.
#[derive(Clone, PartialEq, Debug)]
pub struct VBasisElement {
    pub k: i64,
    pub series: TruncSeries,
}

/// `s_{k,β} = (e^λ+e^{-λ})^β / (e^λ-e^{-λ})^{2k+3}` in powers of `1/x`.
#[derive(Clone, PartialEq, Debug)]
pub struct SBasisElement {
    pub k: usize,
    pub beta: u8,
    pub series: TruncSeries,
}

/// `(1 + t)^alpha` at `t = c/x`, through `x^{-order}`.
fn binom_in_inverse_x(alpha: &Rational, c: i64, order: usize) -> TruncSeries {
    binom_series(alpha, order).with_var(Var::INV_X).scale_argument(&int(c))
}

/// `x^{-shift} (1 - 4/x)^alpha` through `x^{-order}`.
fn shifted_power(shift: i64, alpha: &Rational, order: i64) -> TruncSeries {
    let terms = (order - shift).max(0) as usize;
    let s = binom_in_inverse_x(alpha, -4, terms).shift(shift);
    if order < shift {
        TruncSeries::with_prec(Var::INV_X, shift, Vec::new(), order)
    } else {
        s
    }
}

pub fn vk_series(k: i64, order: usize) -> VBasisElement {
    let alpha = Rational::new((2 * k + 1).into(), 2.into());
    VBasisElement { k, series: binom_in_inverse_x(&alpha, -4, order) }
}

/// Built from `w = x (1 - 4/x)^{1/2}` by a series square root and integer
/// powers, independently of the binomial series used elsewhere.
pub fn s_basis(k: usize, beta: u8, order: i64) -> SBasisElement {
    let p = 2 * k as i64 + 3;
    let lead = p - beta as i64;
    let rel = (order - lead).max(0);
    let one_minus = TruncSeries::with_prec(Var::INV_X, 0, vec![int(1), int(-4)], rel);
    let root = one_minus.pow_rational(&rat(1, 2)).expect("leading coefficient one");
    let mut series = root.pow_int(-p).expect("nonzero series").shift(p);
    if beta == 1 {
        // x - 2 = x (1 - 2/x)
        let xm2 = TruncSeries::with_prec(Var::INV_X, -1, vec![int(1), int(-2)], rel + lead - 1);
        series = series.mul(&xm2);
    }
    SBasisElement { k, beta, series: series.truncate(order) }
}

/// `x (x^2 - 4x)^{-(2k+3)/2} = x^{-2k-2} (1 - 4/x)^{-(2k+3)/2}`
pub fn s_bridge_closed(k: usize, order: i64) -> TruncSeries {
    let p = 2 * k as i64 + 3;
    shifted_power(p - 1, &Rational::new((-p).into(), 2.into()), order)
}

/// `s_{k,1} + 2 s_{k,0}` against its closed form for `k <= kmax`.
pub fn s_bridge_check(kmax: usize, order: i64) -> Report {
    let mut report = Report::new();
    for k in 0..=kmax {
        let lhs = s_basis(k, 1, order).series.add(&s_basis(k, 0, order).series.scale(&int(2)));
        let rhs = s_bridge_closed(k, order);
        report.push(series_record(format!("series/s-bridge/k={k}"), "s-basis", &lhs, &rhs, order));
    }
    report
}

fn series_record(id: String, anchor: &str, a: &TruncSeries, b: &TruncSeries, order: i64) -> CheckRecord {
    let lo = a.start().min(b.start());
    let bad = (lo..=order).find(|&e| a.coeff(e) != b.coeff(e));
    let detail = match bad {
        None => "0".to_string(),
        Some(e) => format!("x^-{e}: {} vs {}", a.coeff(e), b.coeff(e)),
    };
    CheckRecord::new(id, anchor, bad.is_none(), detail)
}

/// `Σ_k a_k^(g) v_k` through `x^{-order}`, plus `1/2` at `g = 0`.
pub fn resolvent_from_row(table: &VTable, g: usize, order: usize) -> TruncSeries {
    let mut acc = TruncSeries::with_prec(Var::INV_X, 0, Vec::new(), order as i64);
    for (k, a) in table.row(g) {
        if !a.is_zero() {
            acc = acc.add(&vk_series(k, order).series.scale(&a));
        }
    }
    if g == 0 {
        acc = acc.add(&TruncSeries::monomial(Var::INV_X, rat(1, 2), 0, order as i64));
    }
    acc
}

/// `C_n^(g)` for `n <= nmax` from row `g` of `table`, the coefficient of
/// `x^{-1-2g-n}` in [`resolvent_from_row`]. Powers `x^0 .. x^{-2g}` must
/// cancel.
pub fn a_to_c(table: &VTable, g: usize, nmax: usize) -> Result<Vec<Rational>, Error> {
    let top = 1 + 2 * g + nmax;
    let s = resolvent_from_row(table, g, top);
    for e in 0..=2 * g as i64 {
        let c = s.coeff(e);
        if !c.is_zero() {
            return Err(Error::NonCancellingPower { exponent: -e, value: c.to_string() });
        }
    }
    Ok((0..=nmax).map(|n| s.coeff((1 + 2 * g + n) as i64)).collect())
}

/// The genus-one resolvent three ways through `x^{-order}`: from the s-basis,
/// as `x^{-3/2}(x-4)^{-5/2}`, and from the `a^(1)` row.
pub fn w11_check(table: &VTable, order: i64) -> Report {
    let s = s_basis(1, 1, order).series.add(&s_basis(1, 0, order).series.scale(&int(2)));
    let closed = shifted_power(4, &rat(-5, 2), order);
    let from_row = resolvent_from_row(table, 1, order.max(0) as usize);
    let mut report = Report::new();
    report.push(series_record("series/w11/s-basis".into(), "genus-one", &s, &closed, order));
    report.push(series_record("series/w11/v-basis".into(), "genus-one", &from_row, &closed, order));
    report
}

/// Coefficient of `Π x_i^{-m_i-1}` in `Π (s_{0,1} + 2 s_{0,0})(x_i)`, the
/// planar three-point form, and the ratio of the connected Wick coefficient
/// of `N^{-1}` in `<Π tr H^{m_i}>` to it.
pub fn w30_planar_check(m: [usize; 3]) -> Result<(Rational, Rational), Error> {
    let top = *m.iter().max().unwrap() as i64 + 1;
    let s = s_basis(0, 1, top).series.add(&s_basis(0, 0, top).series.scale(&int(2)));
    let product: Rational = m.iter().map(|&mi| s.coeff(mi as i64 + 1)).product();
    if product.is_zero() {
        return Err(Error::ZeroProductCoefficient);
    }
    let pattern = TracePattern::new(m.to_vec())?;
    let oracle = connected_moments(&pattern, Dim::N, Dim::N, WISHART_LIMIT)?.coeff(-1);
    Ok((product.clone(), oracle / product))
}

/// The consistency form on every row `g <= gmax`. Rewritten through the
/// `v_k` expansion it is the coefficient form of a contour identity on the
/// one-point resolvent, order by order in `1/N^2`.
pub fn consistency_identity_check(table: &VTable, gmax: usize) -> Report {
    let mut report = Report::new();
    for g in 0..=gmax.min(table.gmax()) {
        let c = consistency_form(table, g);
        report.push(CheckRecord::new(
            format!("series/consistency/g={g:02}"),
            "consistency",
            c.is_zero(),
            c.to_string(),
        ));
    }
    report
}
