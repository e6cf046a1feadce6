use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exact::{int, rat, Rational};
use crate::report::{CheckRecord, Report};
use crate::Error;

/// Coefficients `a_k^(g)`, `-3g <= k <= g`, of the genus-`g` Laguerre
/// resolvent in the basis `v_k = ((x-4)/x)^{k+1/2}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VTable {
    rows: Vec<BTreeMap<i64, Rational>>,
}

impl VTable {
    pub fn gmax(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, g: usize, k: i64) -> Rational {
        self.rows.get(g).and_then(|r| r.get(&k)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Row `g` as `(k, a_k)` for `k = -3g..=g`, zeros included.
    pub fn row(&self, g: usize) -> Vec<(i64, Rational)> {
        let g = g as i64;
        (-3 * g..=g).map(|k| (k, self.get(g as usize, k))).collect()
    }

    pub fn set(&mut self, g: usize, k: i64, v: Rational) {
        self.rows[g].insert(k, v);
    }

    /// `(g, k, value)` for every stored slot, `k` ascending within a row.
    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, Rational)> + '_ {
        (0..self.rows.len()).flat_map(move |g| self.row(g).into_iter().map(move |(k, v)| (g, k, v)))
    }

    pub fn from_entries(gmax: usize, entries: impl IntoIterator<Item = (usize, i64, Rational)>) -> Result<Self, Error> {
        let mut rows = vec![BTreeMap::new(); gmax + 1];
        for (g, k, v) in entries {
            if g > gmax || k < -3 * g as i64 || k > g as i64 {
                return Err(Error::InvalidArgument(format!("slot (g={g}, k={k}) lies outside -3g..=g")));
            }
            rows[g].insert(k, v);
        }
        Ok(Self { rows })
    }
}

fn next_row(prev: &VTable, g: usize) -> BTreeMap<i64, Rational> {
    let a = |k: i64| prev.get(g - 1, k);
    let gi = g as i64;
    let mut row = BTreeMap::new();
    for k in -3 * gi..=gi {
        if k == 0 {
            continue;
        }
        let rhs = rat((2 * k + 7) * (2 * k + 5) * (2 * k + 3), 32) * a(k + 3)
            - rat((2 * k + 5) * (2 * k + 3) * (k + 1), 4) * a(k + 2)
            + rat(3 * (2 * k + 3) * (2 * k + 1) * (2 * k + 1), 16) * a(k + 1)
            - rat((2 * k + 1) * k * (2 * k - 1), 4) * a(k)
            + rat((2 * k - 1) * (2 * k - 1) * (2 * k - 3), 32) * a(k - 1);
        row.insert(k, rhs / int(4 * k));
    }
    let sum: Rational = row.values().sum();
    row.insert(0, -sum);
    row
}

/// `a^(0) = -δ_{k,0}/2`; for `g >= 1` every `a_k^(g)`, `k != 0`, follows from
/// row `g-1`, and `a_0^(g)` is fixed by `Σ_k a_k^(g) = 0`. The remaining
/// constraints are checked and the first violation aborts.
pub fn vk_table(gmax: usize) -> Result<VTable, Error> {
    let mut t = VTable { rows: vec![BTreeMap::from([(0, rat(-1, 2))])] };
    for g in 1..=gmax {
        let row = next_row(&t, g);
        t.rows.push(row);
        if let Some(e) = violations(&t, g).into_iter().next() {
            return Err(e);
        }
    }
    Ok(t)
}

/// `(105/32) a_3 - (15/4) a_2 + (9/16) a_1 - (3/32) a_{-1}`
pub fn consistency_form(t: &VTable, g: usize) -> Rational {
    rat(105, 32) * t.get(g, 3) - rat(15, 4) * t.get(g, 2) + rat(9, 16) * t.get(g, 1) - rat(3, 32) * t.get(g, -1)
}

/// `Σ_k k^r a_k^(g)`
pub fn moment(t: &VTable, g: usize, r: u32) -> Rational {
    t.row(g).iter().map(|(k, v)| v * Rational::from_integer((*k).into()).pow(r as i32)).sum()
}

fn violations(t: &VTable, g: usize) -> Vec<Error> {
    let mut out = Vec::new();
    let c = consistency_form(t, g);
    if !c.is_zero() {
        out.push(Error::ConstraintViolation { genus: g, constraint: "consistency".into(), detail: c.to_string() });
    }
    if g >= 1 {
        for r in 0..=2 * g as u32 + 1 {
            let m = moment(t, g, r);
            if !m.is_zero() {
                let constraint = if r == 0 { "asymptotic".to_string() } else { format!("moment r={r}") };
                out.push(Error::ConstraintViolation { genus: g, constraint, detail: m.to_string() });
            }
        }
    }
    out
}

/// One record per genus and constraint: the consistency form for every
/// `g <= gmax`, and `Σ_k k^r a_k^(g) = 0` for `r <= 2g+1`, `g >= 1`.
pub fn constraint_report(t: &VTable, gmax: usize) -> Report {
    let mut report = Report::new();
    for g in 0..=gmax.min(t.gmax()) {
        let c = consistency_form(t, g);
        report.push(CheckRecord::new(
            format!("constraint/consistency/g={g:02}"),
            "consistency",
            c.is_zero(),
            c.to_string(),
        ));
        if g == 0 {
            continue;
        }
        for r in 0..=2 * g as u32 + 1 {
            let m = moment(t, g, r);
            let anchor = if r == 0 { "asymptotic" } else { "moment" };
            report.push(CheckRecord::new(
                format!("constraint/{anchor}/g={g:02},r={r:02}"),
                anchor,
                m.is_zero(),
                m.to_string(),
            ));
        }
    }
    report
}

/// `a^(g)` rescaled by `2^{8g}`, which makes low-genus rows integral.
pub fn scaled_row(t: &VTable, g: usize) -> Vec<Rational> {
    let s = Rational::from_integer(num_bigint::BigInt::one() << (8 * g));
    t.row(g).into_iter().map(|(_, v)| v * &s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn genus_one_and_two_rows() {
        let t = vk_table(3).unwrap();
        assert_eq!(scaled_row(&t, 1), ints(&[1, -4, 6, -4, 1]));
        assert_eq!(scaled_row(&t, 2), ints(&[105, -616, 1500, -1944, 1430, -600, 156, -40, 9]));
        assert_eq!(
            scaled_row(&t, 3),
            ints(&[
                50050, -408408, 1467972, -3046008, 4013982, -3477168, 1977528, -714672, 155358, -23032, 6468, -2520,
                450
            ])
        );
        assert_eq!(t.get(1, 1), rat(1, 256));
    }

    #[test]
    fn constraints_hold() {
        let t = vk_table(6).unwrap();
        assert!(constraint_report(&t, 6).passed());
        // the first moment not forced to vanish
        assert!(!moment(&t, 2, 6).is_zero());
        assert!(consistency_form(&t, 0).is_zero());
    }

    #[test]
    fn corrupted_row_is_reported() {
        let mut t = vk_table(2).unwrap();
        t.set(2, -1, int(0));
        let r = constraint_report(&t, 2);
        let failed: Vec<_> = r.failures().map(|c| c.id.clone()).collect();
        assert!(failed.contains(&"constraint/consistency/g=02".to_string()));
        assert!(failed.contains(&"constraint/asymptotic/g=02,r=00".to_string()));
    }
}
