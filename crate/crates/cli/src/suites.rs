use rayon::prelude::*;

use hzlag_core::exact::factorial;
use hzlag_core::recursion::{
    c1_closed_form, constraint_report, do_norbury_table, gauss_hz_table, glag_boundary_residuals, glag_k1_table,
    glag_w1_ode_check, laguerre_ode_check, LagCTable, VTable,
};
use hzlag_core::residue::{
    exp_mean_moments, generalized_moments, two_point_series, verify_identity, verify_ode, verify_t1, FabCache,
    Identity, Ode,
};
use hzlag_core::spectral::{
    a_to_c, consistency_identity_check, s_bridge_check, vk_series, w11_check, w30_planar_check,
};
use hzlag_core::wick::{
    connected_moments, genus_extract, gue_moment, wishart_counts, Dim, TracePattern, GUE_LIMIT, WISHART_LIMIT,
};
use hzlag_core::{CheckRecord, Rational, Report, TruncSeries};

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Suite {
    Identities,
    Odes,
    Crosscheck,
    Constraints,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Odes => "odes",
            Suite::Crosscheck => "crosscheck",
            Suite::Constraints => "constraints",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SuiteBounds {
    /// Largest `A`, `B` for two-index identities.
    pub max_ab: u32,
    /// Largest `N` for one-index identities and the `f_{N,N}` equation.
    pub max_n: u32,
    /// Largest total moment degree in the oracle comparisons.
    pub mmax: usize,
    /// Largest genus for the constraint families.
    pub gmax: usize,
}

impl Default for SuiteBounds {
    fn default() -> Self {
        Self { max_ab: 10, max_n: 10, mmax: 6, gmax: 6 }
    }
}

fn merge(reports: Vec<Report>) -> Report {
    let mut out = Report::new();
    for r in reports {
        out.extend(r);
    }
    out
}

fn eq_record(id: String, anchor: &str, got: &Rational, want: &Rational) -> CheckRecord {
    let detail = if got == want { "0".to_string() } else { format!("{got} vs {want}") };
    CheckRecord::new(id, anchor, got == want, detail)
}

pub fn identities(b: SuiteBounds) -> Report {
    let cache = FabCache::new();
    merge(Identity::ALL.par_iter().map(|&w| verify_identity(w, b.max_ab, b.max_n, &cache)).collect())
}

/// `f_{N,N}` up to `max_n`, `f_{N+1,N}` up to `max_n - 2`, `f_{N+2,N}` and
/// the rectangular mean up to `max_n - 4`, plus the two resolvent equations.
pub fn odes(b: SuiteBounds) -> Report {
    let cache = FabCache::new();
    let n = b.max_n;
    let mut jobs: Vec<(Ode, u32)> = (1..=n).map(|i| (Ode::Dn, i)).collect();
    jobs.extend((1..=n.saturating_sub(2)).map(|i| (Ode::K1, i)));
    jobs.extend((1..=n.saturating_sub(4)).map(|i| (Ode::K2, i)));
    let mut records: Vec<CheckRecord> = jobs.par_iter().map(|&(w, i)| verify_ode(w, i, &cache)).collect();
    let t1: Vec<(u32, u32)> = (1..=n.saturating_sub(4)).flat_map(|i| (0..=2).map(move |k| (i, k))).collect();
    records.extend(t1.par_iter().map(|&(i, k)| verify_t1(i, k, &cache)).collect::<Vec<_>>());
    let mut report = Report { records };
    report.extend(laguerre_ode_check(&do_norbury_table(3, 10), 3, 10));
    report.extend(glag_w1_ode_check(&glag_k1_table(4, 8)));
    report
}

fn square_moment(m: usize) -> hzlag_core::wick::MomentPoly {
    wishart_counts(&TracePattern::new(vec![m]).expect("m >= 1"), WISHART_LIMIT)
        .expect("degree within the enumeration limit")
        .square()
}

/// Residue moments, recursion tables and series against the Wick oracles.
pub fn crosscheck(b: SuiteBounds) -> Report {
    let mmax = b.mmax.min(WISHART_LIMIT);
    let parts: Vec<Box<dyn Fn() -> Report + Sync>> = vec![
        Box::new(move || one_point(mmax)),
        Box::new(move || two_point(mmax.min(5))),
        Box::new(move || rectangular(mmax)),
        Box::new(gaussian),
        Box::new(spectral),
    ];
    merge(parts.par_iter().map(|f| f()).collect())
}

/// Exponential-mean moments and the genus split of square Wick moments.
pub fn one_point(mmax: usize) -> Report {
    let mut report = Report::new();
    let dn = do_norbury_table(mmax / 2, mmax);
    for m in 1..=mmax {
        let w = square_moment(m);
        for n in 1..=5u32 {
            let res = &exp_mean_moments(n, m).expect("no pole at u = 0")[m];
            report.push(eq_record(format!("crosscheck/one-point/N={n},m={m}"), "exp-mean", res, &w.eval(n as i64)));
        }
        let id = format!("crosscheck/genus/m={m}");
        match genus_extract(&w, 1) {
            Ok(by_g) => {
                let bad = (0..=m / 2).find(|&g| {
                    by_g.get(&(g as u32)).cloned().unwrap_or_default() != dn.get(g as i64, (m - 2 * g) as i64)
                });
                let detail = bad.map_or("0".to_string(), |g| format!("genus {g} differs"));
                report.push(CheckRecord::new(id, "genus-expansion", bad.is_none(), detail));
            }
            Err(e) => report.push(CheckRecord::new(id, "genus-expansion", false, e.to_string())),
        }
        let sum: Rational = (0..=m / 2).map(|g| dn.get(g as i64, (m - 2 * g) as i64)).sum();
        let want = Rational::from_integer(factorial(m as u64));
        report.push(eq_record(format!("crosscheck/single-eigenvalue/m={m}"), "genus-expansion", &sum, &want));
    }
    report
}

/// Two-point residue series against connected Wick moments for `N <= 3`.
pub fn two_point(total: usize) -> Report {
    let mut report = Report::new();
    for n in 1..=3u32 {
        let tp = match two_point_series(n, total) {
            Ok(tp) => tp,
            Err(e) => {
                report.push(CheckRecord::new(format!("crosscheck/two-point/N={n}"), "two-point", false, e.to_string()));
                continue;
            }
        };
        for m1 in 1..total {
            for m2 in 1..=total - m1 {
                let pattern = TracePattern::new(vec![m1, m2]).expect("positive");
                let w = connected_moments(&pattern, Dim::N, Dim::N, WISHART_LIMIT).expect("within limit");
                let id = format!("crosscheck/two-point/N={n},m1={m1},m2={m2}");
                report.push(eq_record(id, "two-point", &tp.moment(m1, m2), &w.eval(n as i64)));
            }
        }
        let zero = Rational::from_integer(0.into());
        for m1 in 0..=total {
            let id = format!("crosscheck/two-point-edge/N={n},m1={m1}");
            report.push(eq_record(id, "two-point", &tp.coeff(m1, 0), &zero));
        }
        let one = Rational::from_integer(1.into());
        report.push(eq_record(format!("crosscheck/two-point-unit/N={n}"), "two-point", &tp.coeff(1, 1), &one));
    }
    report
}

pub fn rectangular(mmax: usize) -> Report {
    let mut report = Report::new();
    let glag = glag_k1_table(mmax, mmax);
    let plus_one = Dim::Symbolic { offset: 1 };
    for m in 1..=mmax {
        let w = wishart_counts(&TracePattern::new(vec![m]).expect("positive"), WISHART_LIMIT).expect("within limit");
        let rect = w.specialize(Dim::N, plus_one);
        let rebuilt = glag.moment(m).expect("table covers m");
        let detail = if rebuilt == rect { "0".to_string() } else { format!("{rebuilt} vs {rect}") };
        report.push(CheckRecord::new(format!("crosscheck/rectangular/m={m}"), "glag-k1", rebuilt == rect, detail));
        for n in 1..=3u32 {
            let res = &generalized_moments(n, 1, m).expect("no pole at u = 0")[m];
            let id = format!("crosscheck/rectangular-residue/N={n},m={m}");
            report.push(eq_record(id, "generalized-mean", res, &rect.eval(n as i64)));
        }
    }
    report
}

pub fn gaussian() -> Report {
    let mut report = Report::new();
    let t = gauss_hz_table(3).expect("integral rows");
    for m in (2..=12).step_by(2) {
        let eps = genus_extract(&gue_moment(m, GUE_LIMIT).expect("within limit"), 1);
        for g in 1..=3usize {
            let id = format!("crosscheck/gaussian/g={g},m={m:02}");
            let got = t.resolvent_series(g, 13).coeff(m as i64 + 1);
            match &eps {
                Ok(e) => report.push(eq_record(id, "gaussian", &got, &e.get(&(g as u32)).cloned().unwrap_or_default())),
                Err(e) => report.push(CheckRecord::new(id, "gaussian", false, e.to_string())),
            }
        }
    }
    report
}

pub fn spectral() -> Report {
    let mut report = Report::new();
    let vk = hzlag_core::recursion::vk_table(5).expect("constraints hold");
    let dn = do_norbury_table(5, 20);
    for g in 0..=5 {
        let id = format!("crosscheck/a-to-c/g={g}");
        match a_to_c(&vk, g, 20) {
            Ok(row) => {
                let ok = row == dn.row(g);
                report.push(CheckRecord::new(id, "v-basis", ok, if ok { "0" } else { "row differs" }));
            }
            Err(e) => report.push(CheckRecord::new(id, "v-basis", false, e.to_string())),
        }
    }
    report.extend(w11_check(&vk, 7));
    report.extend(s_bridge_check(3, 16));
    for k in -5..=5i64 {
        let p = vk_series(k, 12).series.mul(&vk_series(-k - 1, 12).series);
        let one = TruncSeries::one(hzlag_core::exact::Var::INV_X, 12);
        let ok = (0..=12).all(|e| p.coeff(e) == one.coeff(e));
        report.push(CheckRecord::new(
            format!("crosscheck/v-product/k={k:+}"),
            "v-basis",
            ok,
            if ok { "0" } else { "not 1" },
        ));
    }
    let triples = [[1, 1, 1], [2, 1, 1], [2, 2, 1]];
    let ratios: Vec<_> = triples.iter().map(|&t| w30_planar_check(t)).collect();
    let first = ratios[0].as_ref().ok().map(|(_, r)| r.clone());
    for (t, r) in triples.iter().zip(&ratios) {
        let id = format!("crosscheck/planar-three-point/m={},{},{}", t[0], t[1], t[2]);
        match r {
            Ok((_, ratio)) => {
                let ok = Some(ratio) == first.as_ref();
                report.push(CheckRecord::new(id, "planar-three-point", ok, format!("ratio {ratio}")));
            }
            Err(e) => report.push(CheckRecord::new(id, "planar-three-point", false, e.to_string())),
        }
    }
    report
}

/// Constraint families on a `v_k` table and integrality on a Laguerre table,
/// both possibly loaded from the cache.
pub fn constraints(vk: &VTable, lag: &LagCTable, b: SuiteBounds) -> Report {
    let mut report = constraint_report(vk, b.gmax);
    report.extend(consistency_identity_check(vk, b.gmax));
    let integral = lag.check_integrality();
    report.push(CheckRecord::new(
        "constraint/integrality/laguerre",
        "integrality",
        integral.is_ok(),
        integral.err().map_or("0".to_string(), |e| e.to_string()),
    ));
    for g in 0..=lag.gmax().min(12) {
        if lag.nmax() >= 1 {
            let id = format!("constraint/c1-closed-form/g={g:02}");
            report.push(eq_record(id, "c1-closed-form", &lag.get(g as i64, 1), &c1_closed_form(g)));
        }
    }
    let gauss = gauss_hz_table(b.gmax.max(1));
    report.push(CheckRecord::new(
        "constraint/integrality/gauss",
        "integrality",
        gauss.is_ok(),
        gauss.err().map_or("0".to_string(), |e| e.to_string()),
    ));
    let boundary = glag_boundary_residuals(&glag_k1_table(6, 8));
    report.push(CheckRecord::new(
        "constraint/glag-k1/negative-index",
        "glag-k1",
        boundary.is_empty(),
        boundary.first().map_or("0".to_string(), |((j, n), r)| format!("(r2={j}, n={n}): {r}")),
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use hzlag_core::recursion::vk_table;

    #[test]
    fn small_suites_pass() {
        let b = SuiteBounds { max_ab: 3, max_n: 5, mmax: 4, gmax: 3 };
        assert!(identities(b).passed());
        assert!(odes(b).passed());
        let r = constraints(&vk_table(3).unwrap(), &do_norbury_table(8, 30), b);
        assert!(r.passed(), "{:?}", r.failures().next());
    }
}
