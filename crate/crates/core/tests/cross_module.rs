use proptest::prelude::*;

use hzlag_core::exact::{int, UniPoly, Var};
use hzlag_core::recursion::{do_norbury_table, glag_k1_table};
use hzlag_core::residue::{fab, fab_generalized, generalized_moments};
use hzlag_core::wick::{complex_wishart_moment, genus_extract, wishart_counts, Dim, TracePattern, WISHART_LIMIT};
use hzlag_core::RationalFunction;

fn single(m: usize) -> TracePattern {
    TracePattern::new(vec![m]).unwrap()
}

#[test]
fn square_case_of_the_generalized_mean() {
    let u = RationalFunction::from_poly(UniPoly::from_ints(Var::U, &[0, 1]));
    for n in 1..=6 {
        assert_eq!(fab_generalized(n, 0), fab(n, n).value.checked_div(&u).unwrap(), "N = {n}");
    }
}

#[test]
fn laguerre_table_is_the_genus_split_of_wick_moments() {
    let t = do_norbury_table(3, WISHART_LIMIT);
    for m in 1..=WISHART_LIMIT {
        let w = wishart_counts(&single(m), WISHART_LIMIT).unwrap().square();
        let by_g = genus_extract(&w, 1).unwrap();
        for g in 0..=m / 2 {
            assert_eq!(by_g.get(&(g as u32)).cloned().unwrap_or_else(|| int(0)), t.get(g as i64, (m - 2 * g) as i64));
        }
    }
}

#[test]
fn rectangular_residue_against_wick() {
    for k in 0..=2u32 {
        let cols = Dim::Symbolic { offset: k as i64 };
        for m in 1..=5 {
            let w = complex_wishart_moment(&single(m), Dim::N, cols, WISHART_LIMIT).unwrap();
            for n in 1..=3u32 {
                let res = &generalized_moments(n, k, m).unwrap()[m];
                assert_eq!(res, &w.eval(n as i64), "N = {n}, k = {k}, m = {m}");
            }
        }
    }
}

#[test]
fn half_genus_table_at_n_equal_one() {
    // One row, two columns: B†B has the single eigenvalue |b1|^2 + |b2|^2.
    let t = glag_k1_table(6, 6);
    for m in 1..=6 {
        let moment = t.moment(m).unwrap().eval(1);
        assert_eq!(moment, int((1..=m as i64 + 1).product()), "m = {m}");
    }
}

fn pattern() -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(1usize..=3, 1..=3).prop_filter("degree", |v| v.iter().sum::<usize>() <= 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transposition_symmetry(parts in pattern()) {
        let c = wishart_counts(&TracePattern::new(parts).unwrap(), WISHART_LIMIT).unwrap();
        for (&(a, b), v) in c.counts() {
            prop_assert_eq!(&c.count(b, a), v);
        }
    }

    #[test]
    fn trace_order_is_irrelevant(mut parts in pattern()) {
        let a = complex_wishart_moment(&TracePattern::new(parts.clone()).unwrap(), Dim::N, Dim::N, WISHART_LIMIT).unwrap();
        parts.reverse();
        let b = complex_wishart_moment(&TracePattern::new(parts).unwrap(), Dim::N, Dim::N, WISHART_LIMIT).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn laguerre_tables_nest(g in 0usize..6, n in 0usize..12) {
        let big = do_norbury_table(6, 12);
        let small = do_norbury_table(g, n);
        for (i, j, v) in small.entries() {
            prop_assert_eq!(v, &big.get(i as i64, j as i64));
        }
    }
}
