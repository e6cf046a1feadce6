use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;

use super::moment::{Dim, MomentPoly, RectMoment};
use crate::exact::{factorial, Rational};
use crate::Error;

/// Default cap on the total degree for the rectangular enumeration (`m!`
/// bijections).
pub const WISHART_LIMIT: usize = 7;

/// Default cap on the degree for the Gaussian enumeration (`(m-1)!!`
/// pairings).
pub const GUE_LIMIT: usize = 16;

/// Exponents `(m_1, ..., m_s)` of a product of traces `Π tr H^{m_i}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TracePattern(Vec<usize>);

impl TracePattern {
    pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidArgument("trace pattern needs positive exponents".into()));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for TracePattern {
    type Err = Error;

    /// Comma-separated exponents, e.g. `2,1,1`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad trace pattern {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        TracePattern::new(parts)
    }
}

impl fmt::Display for TracePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(","))
    }
}

struct Dsu {
    parent: Vec<usize>,
    sets: usize,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), sets: n }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.sets -= 1;
        }
    }
}

/// Position of the next factor on the same trace, for each of the `m` slots.
fn successor(pattern: &TracePattern) -> Vec<usize> {
    let mut next = Vec::with_capacity(pattern.degree());
    let mut base = 0;
    for &mi in pattern.parts() {
        next.extend((0..mi).map(|t| base + (t + 1) % mi));
        base += mi;
    }
    next
}

/// `E Π tr (BB†)^{m_i}` for complex `B` of shape `R × C` with
/// `E[B_ab conj(B_cd)] = δ_ac δ_bd / N`, summed over all `m!` Wick
/// bijections between the `B` and `B†` factors.
///
/// Slot `t` carries `B_{i_t j_t}` and `conj(B_{i_{t'} j_t})` with `t'` the
/// successor of `t` on its trace. Pairing `B` at `t` with `B†` at `σ(t)`
/// glues `i_t = i_{σ(t)'}` and `j_t = j_{σ(t)}`; each pairing contributes
/// `R^{#row classes} C^{#column classes} N^{-m}`.
pub fn wishart_counts(pattern: &TracePattern, limit: usize) -> Result<RectMoment, Error> {
    let m = pattern.degree();
    if m > limit {
        return Err(Error::DegreeOverLimit { degree: m, limit });
    }
    let next = successor(pattern);
    let mut counts: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
    for sigma in (0..m).permutations(m) {
        let mut rows = Dsu::new(m);
        let mut cols = Dsu::new(m);
        for (t, &s) in sigma.iter().enumerate() {
            rows.union(t, next[s]);
            cols.union(t, s);
        }
        *counts.entry((rows.sets as u32, cols.sets as u32)).or_default() += 1;
    }
    Ok(RectMoment::new(m, counts))
}

/// All set partitions of `0..n` as block lists.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(i: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        let n = labels.len();
        if i == n {
            let blocks = (0..max).map(|b| (0..n).filter(|&j| labels[j] == b).collect()).collect();
            out.push(blocks);
            return;
        }
        for b in 0..=max {
            labels[i] = b;
            rec(i + 1, max.max(b + 1), labels, out);
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    rec(0, 0, &mut labels, &mut out);
    out
}

/// [`wishart_counts`] with the dimensions substituted.
pub fn complex_wishart_moment(pattern: &TracePattern, rows: Dim, cols: Dim, limit: usize) -> Result<MomentPoly, Error> {
    Ok(wishart_counts(pattern, limit)?.specialize(rows, cols))
}

/// Connected part of `E Π tr (BB†)^{m_i}` by Möbius inversion over set
/// partitions of the trace factors, `μ = (-1)^{k-1} (k-1)!` for `k` blocks.
pub fn connected_counts(pattern: &TracePattern, limit: usize) -> Result<RectMoment, Error> {
    let m = pattern.degree();
    if m > limit {
        return Err(Error::DegreeOverLimit { degree: m, limit });
    }
    let mut memo: BTreeMap<Vec<usize>, RectMoment> = BTreeMap::new();
    let mut out = RectMoment::new(m, BTreeMap::new());
    for blocks in set_partitions(pattern.len()) {
        let k = blocks.len();
        let mu = factorial(k as u64 - 1) * if k % 2 == 1 { 1 } else { -1 };
        let mut prod = RectMoment::one();
        for block in &blocks {
            let mut parts: Vec<usize> = block.iter().map(|&i| pattern.parts()[i]).collect();
            parts.sort_unstable();
            let e = match memo.get(&parts) {
                Some(e) => e.clone(),
                None => {
                    let e = wishart_counts(&TracePattern(parts.clone()), limit)?;
                    memo.insert(parts, e.clone());
                    e
                }
            };
            prod = prod.mul(&e);
        }
        out.add_scaled(&prod, &mu);
    }
    Ok(out)
}

pub fn connected_moments(pattern: &TracePattern, rows: Dim, cols: Dim, limit: usize) -> Result<MomentPoly, Error> {
    Ok(connected_counts(pattern, limit)?.specialize(rows, cols))
}

/// `E tr H^m` for the Gaussian ensemble with `E[H_ab H_cd] = δ_ad δ_bc / N`,
/// summed over all `(m-1)!!` pairings. The result is `Σ_g ε_g(m) N^{1-2g}`;
/// odd `m` gives zero.
pub fn gue_moment(m: usize, limit: usize) -> Result<MomentPoly, Error> {
    if m > limit {
        return Err(Error::DegreeOverLimit { degree: m, limit });
    }
    if m % 2 == 1 {
        return Ok(MomentPoly::zero());
    }
    let mut by_loops = vec![0u64; m + 1];
    let mut partner = vec![usize::MAX; m];
    gue_pairings(&mut partner, m, &mut by_loops);
    let half = (m / 2) as i64;
    Ok(MomentPoly::from_terms(
        by_loops
            .iter()
            .enumerate()
            .filter(|(_, c)| **c > 0)
            .map(|(loops, c)| (loops as i64 - half, Rational::from_integer(BigInt::from(*c)))),
    ))
}

fn gue_pairings(partner: &mut Vec<usize>, m: usize, by_loops: &mut [u64]) {
    let Some(first) = partner.iter().position(|&p| p == usize::MAX) else {
        // H_{i_t i_{t+1}} paired with H_{i_s i_{s+1}}: i_t = i_{s+1}, i_{t+1} = i_s
        let mut dsu = Dsu::new(m);
        for (t, &s) in partner.iter().enumerate() {
            if t < s {
                dsu.union(t, (s + 1) % m);
                dsu.union((t + 1) % m, s);
            }
        }
        by_loops[dsu.sets] += 1;
        return;
    };
    for s in first + 1..m {
        if partner[s] == usize::MAX {
            partner[first] = s;
            partner[s] = first;
            gue_pairings(partner, m, by_loops);
            partner[first] = usize::MAX;
            partner[s] = usize::MAX;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::wick::genus_extract;

    fn pat(s: &str) -> TracePattern {
        s.parse().unwrap()
    }

    fn square(s: &str) -> MomentPoly {
        complex_wishart_moment(&pat(s), Dim::N, Dim::N, WISHART_LIMIT).unwrap()
    }

    fn conn(s: &str) -> MomentPoly {
        connected_moments(&pat(s), Dim::N, Dim::N, WISHART_LIMIT).unwrap()
    }

    #[test]
    fn square_single_trace() {
        assert_eq!(square("1").to_string(), "N");
        assert_eq!(square("2").to_string(), "2*N");
        assert_eq!(square("4").to_string(), "14*N + 10*N^-1");
        // N = 1 collapses to the exponential distribution: E λ^m = m!
        for m in 1..=6usize {
            assert_eq!(square(&m.to_string()).eval(1), Rational::from_integer(factorial(m as u64)));
        }
    }

    #[test]
    fn cumulants_of_the_trace() {
        assert_eq!(conn("1").to_string(), "N");
        assert_eq!(conn("1,1").to_string(), "1");
        assert_eq!(conn("1,1,1").to_string(), "2*N^-1");
        assert_eq!(conn("2,1,1").to_string(), "12*N^-1");
        assert_eq!(conn("2,2,1").to_string(), "72*N^-1 + 8*N^-3");
        assert_eq!(conn("3,1").to_string(), "15 + 3*N^-2");
    }

    #[test]
    fn pattern_order_is_irrelevant() {
        let a = wishart_counts(&pat("3,1,2"), WISHART_LIMIT).unwrap();
        let b = wishart_counts(&pat("1,2,3"), WISHART_LIMIT).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parity_grading_for_square_matrices() {
        for s in ["1", "2", "3", "4", "5", "6", "1,1", "2,1", "3,2", "2,2,2", "1,1,1", "3,1,1,1"] {
            let p = pat(s);
            genus_extract(&conn(s), p.len() as u32).unwrap_or_else(|e| panic!("{s}: {e}"));
        }
    }

    #[test]
    fn rectangular_one_extra_column() {
        let p = complex_wishart_moment(&pat("2"), Dim::N, Dim::Symbolic { offset: 1 }, WISHART_LIMIT).unwrap();
        assert_eq!(p.to_string(), "2*N + 3 + N^-1");
        assert_eq!(p.eval(1), int(6));
    }

    #[test]
    fn gaussian_moments() {
        assert_eq!(gue_moment(2, GUE_LIMIT).unwrap().to_string(), "N");
        assert_eq!(gue_moment(4, GUE_LIMIT).unwrap().to_string(), "2*N + N^-1");
        assert!(gue_moment(5, GUE_LIMIT).unwrap().is_zero());
        assert_eq!(gue_moment(8, GUE_LIMIT).unwrap().coeff(-3), int(21));
        let catalan = [1, 1, 2, 5, 14, 42, 132];
        for (k, &c) in catalan.iter().enumerate().skip(1) {
            assert_eq!(gue_moment(2 * k, GUE_LIMIT).unwrap().coeff(1), int(c));
        }
        assert!(gue_moment(18, GUE_LIMIT).is_err());
    }

    #[test]
    fn over_limit() {
        assert_eq!(wishart_counts(&pat("8"), WISHART_LIMIT), Err(Error::DegreeOverLimit { degree: 8, limit: 7 }));
    }

    #[test]
    fn partitions_count() {
        let bell = [1, 1, 2, 5, 15, 52];
        for (n, b) in bell.iter().enumerate() {
            assert_eq!(set_partitions(n).len(), *b);
        }
    }
}
