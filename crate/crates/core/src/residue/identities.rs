use std::fmt;

use super::fab::{laurent_coefficient, mp_literal, rf_int, upoly, FabCache};
use crate::exact::RationalFunction;
use crate::report::{CheckRecord, Report};

/// Relations among the `f_{A,B}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Identity {
    /// `f_{A,B} - f_{B,A} = A - B`
    Feat1,
    /// Both first-derivative forms, shifting `A` and shifting `B`.
    FabDer,
    /// Nine-term second derivative.
    FabDerDer,
    /// Five-term second derivative after eliminating diagonal neighbours.
    FabDerDer1,
    /// `f_{A,B} + (u+1)/(u-1) f_{A-1,B-1} - u/(u-1)(f_{A-1,B} + f_{A,B-1}) = 0`
    FabQuad,
    /// Three-term second derivative of `f_{N,N}`.
    Der3,
    /// Weighted residue with `2z + u - 1` equals `-uN`.
    Id,
    /// Integration-by-parts relation between `f_{N,N}` and `f_{N,N-1}`.
    Feat2,
    T2,
    T3,
    T4,
    T5a,
    T5b,
    /// Second derivative of `f_{N+2,N}` in terms of `f_{N+2,N+1}`, `f_{N+1,N}`.
    K2SecondDerivative,
    K2ThirdDerivative,
    K2FourthDerivative,
}

impl Identity {
    pub const ALL: [Identity; 16] = [
        Identity::Feat1,
        Identity::FabDer,
        Identity::FabDerDer,
        Identity::FabDerDer1,
        Identity::FabQuad,
        Identity::Der3,
        Identity::Id,
        Identity::Feat2,
        Identity::T2,
        Identity::T3,
        Identity::T4,
        Identity::T5a,
        Identity::T5b,
        Identity::K2SecondDerivative,
        Identity::K2ThirdDerivative,
        Identity::K2FourthDerivative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Feat1 => "feat-1",
            Identity::FabDer => "fAB-der",
            Identity::FabDerDer => "fAB-der-der",
            Identity::FabDerDer1 => "fAB-der-der-1",
            Identity::FabQuad => "fAB-quad",
            Identity::Der3 => "der-3",
            Identity::Id => "id",
            Identity::Feat2 => "feat-2",
            Identity::T2 => "T-2",
            Identity::T3 => "T-3",
            Identity::T4 => "T-4",
            Identity::T5a => "T-5a",
            Identity::T5b => "T-5b",
            Identity::K2SecondDerivative => "k2-second-derivative",
            Identity::K2ThirdDerivative => "k2-third-derivative",
            Identity::K2FourthDerivative => "k2-fourth-derivative",
        }
    }

    /// Indexed by a pair `(A, B)` rather than a single `N`.
    pub fn is_two_index(self) -> bool {
        matches!(
            self,
            Identity::Feat1 | Identity::FabDer | Identity::FabDerDer | Identity::FabDerDer1 | Identity::FabQuad
        )
    }

    pub fn parse(s: &str) -> Option<Identity> {
        Identity::ALL.into_iter().find(|i| i.name() == s)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Differential equations satisfied by `f_{N,N}`, `f_{N+1,N}`, `f_{N+2,N}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Ode {
    /// Second order, homogeneous, for `f_{N,N}`.
    Dn,
    /// Second order, inhomogeneous, for `f_{N+1,N}`.
    K1,
    /// Fourth order, inhomogeneous, for `f_{N+2,N}`.
    K2,
}

impl Ode {
    pub fn name(self) -> &'static str {
        match self {
            Ode::Dn => "DN",
            Ode::K1 => "K1",
            Ode::K2 => "K2",
        }
    }

    pub fn parse(s: &str) -> Option<Ode> {
        [Ode::Dn, Ode::K1, Ode::K2].into_iter().find(|o| o.name().eq_ignore_ascii_case(s))
    }
}

fn u() -> RationalFunction {
    upoly(&[0, 1])
}

fn c(n: i64) -> RationalFunction {
    rf_int(n)
}

fn inv(f: RationalFunction) -> RationalFunction {
    f.inverse().expect("nonzero coefficient")
}

/// `u^2 - 1`
fn usq1() -> RationalFunction {
    upoly(&[-1, 0, 1])
}

fn record(id: String, anchor: &str, residual: RationalFunction) -> CheckRecord {
    let pass = residual.is_zero();
    CheckRecord::new(id, anchor, pass, residual.to_string())
}

/// Exact residual of a two-index identity at `(A, B)`. Identities that need
/// `A, B >= 1` return `None` outside that range.
pub fn identity_residual_ab(which: Identity, a: u32, b: u32, f: &FabCache) -> Option<Vec<RationalFunction>> {
    let fv = |x: u32, y: u32| f.get(x, y);
    let (ai, bi) = (a as i64, b as i64);
    let needs_positive = which != Identity::Feat1;
    if needs_positive && (a == 0 || b == 0) {
        return None;
    }
    let res = match which {
        Identity::Feat1 => vec![fv(a, b) - fv(b, a) - c(ai - bi)],
        Identity::FabDer => {
            let d = fv(a, b).derivative();
            vec![
                &d + c(ai) * (fv(a - 1, b) - c(2) * fv(a, b) + fv(a + 1, b)),
                &d + c(bi) * (fv(a, b - 1) - c(2) * fv(a, b) + fv(a, b + 1)),
            ]
        }
        Identity::FabDerDer => {
            let d2 = fv(a, b).nth_derivative(2);
            let bracket = fv(a - 1, b - 1) + fv(a - 1, b + 1) + fv(a + 1, b - 1) + fv(a + 1, b + 1)
                - c(2) * (fv(a - 1, b) + fv(a, b - 1) + fv(a + 1, b) + fv(a, b + 1))
                + c(4) * fv(a, b);
            vec![d2 - c(ai * bi) * bracket]
        }
        Identity::FabDerDer1 => {
            let d2 = fv(a, b).nth_derivative(2);
            let bracket = (fv(a - 1, b) + fv(a, b - 1)) * inv(upoly(&[0, 1, 1]))
                + (fv(a + 1, b) + fv(a, b + 1)) * inv(upoly(&[0, -1, 1]))
                - c(4) * fv(a, b) * inv(usq1());
            vec![d2 - c(ai * bi) * bracket]
        }
        Identity::FabQuad => {
            let um1 = inv(upoly(&[-1, 1]));
            vec![fv(a, b) + upoly(&[1, 1]) * &um1 * fv(a - 1, b - 1) - u() * &um1 * (fv(a - 1, b) + fv(a, b - 1))]
        }
        _ => return None,
    };
    Some(res)
}

/// Exact residual of a one-index identity at `N >= 1`.
pub fn identity_residual_n(which: Identity, n: u32, f: &FabCache) -> Option<Vec<RationalFunction>> {
    if n == 0 {
        return None;
    }
    let fv = |x: u32, y: u32| f.get(x, y);
    let ni = n as i64;
    let m = ni + 1;
    let fnn = fv(n, n);
    let uu = u();
    let k = c(ni * m * (ni + 2)); // N(N+1)(N+2)
    let uq = &uu * usq1(); // u(u^2 - 1)
    let mu1 = upoly(&[-1, m]); // (N+1)u - 1
    let res = match which {
        Identity::Der3 => {
            let rhs = (c(2) * fv(n, n - 1) - c(1)) * inv(upoly(&[0, 1, 1]))
                + (c(2) * fv(n, n + 1) + c(1)) * inv(upoly(&[0, -1, 1]))
                - c(4) * &fnn * inv(usq1());
            vec![fnn.nth_derivative(2) - c(ni * ni) * rhs]
        }
        Identity::Id => {
            // residue of g^N h^N (2z + u - 1) = 2 [z^-2] + (u - 1)[z^-1]
            let r = c(2) * laurent_coefficient(n, n, -2) + upoly(&[-1, 1]) * &fnn;
            vec![r + &uu * c(ni)]
        }
        Identity::Feat2 => {
            let lhs = c(ni) * (&fnn - fv(n, n - 1));
            let half = crate::exact::rat(1, 2);
            let rhs = (upoly(&[1, -1]) * fnn.derivative() + &fnn - c(ni)).scale(&half);
            vec![lhs - rhs]
        }
        Identity::T2 => {
            let inner = c(-1) * fv(n + 1, n).derivative() + c(2 * ni) * fv(n + 1, n) - c(ni) * fv(n + 1, n + 1);
            vec![upoly(&[1, -ni]) * &fnn - upoly(&[0, ni]) + &uu * inner]
        }
        Identity::T3 => {
            vec![upoly(&[1, 1]) * &fnn - upoly(&[0, 2]) * fv(n + 1, n) + upoly(&[-1, 1]) * fv(n + 1, n + 1) + &uu]
        }
        Identity::T4 => {
            let q = upoly(&[0, ni]) * inv(upoly(&[-1, 1])); // uN/(u-1)
            let half = crate::exact::rat(1, 2);
            let lhs = (&q + c(1).scale(&half)) * &fnn;
            let rhs = (&uu * fv(n + 1, n).derivative()).scale(&half) + &q * fv(n + 1, n) - q.scale(&half);
            vec![lhs - rhs]
        }
        Identity::T5a => vec![
            &mu1 * (upoly(&[1, 1]) * &fnn - upoly(&[0, 2]) * fv(n + 1, n))
                + c(m) * &uu * upoly(&[-1, 1]) * fv(n + 2, n)
                + upoly(&[0, ni]),
        ],
        Identity::T5b => vec![
            &mu1 * (upoly(&[-1, 1]) * fv(n + 2, n + 2) - upoly(&[0, 2]) * fv(n + 2, n + 1))
                + c(m) * &uu * upoly(&[1, 1]) * fv(n + 2, n)
                - upoly(&[0, ni + 2]),
        ],
        Identity::K2SecondDerivative => {
            let f = fv(n + 2, n);
            let rhs = c(2 * ni * (ni + 2)) * inv(uq.clone()) * (fv(n + 2, n + 1) - fv(n + 1, n))
                - upoly(&[-2, 2 * m]) * inv(uq.clone()) * f.derivative();
            vec![f.nth_derivative(2) - rhs]
        }
        Identity::K2ThirdDerivative => {
            let f = fv(n + 2, n);
            let d: Vec<_> = (0..4).map(|i| f.nth_derivative(i)).collect();
            let s2 = usq1();
            let bracket = c(2) * inv(upoly(&[-1, 1])) * fv(n + 2, n + 1) + c(2) * inv(upoly(&[1, 1])) * fv(n + 1, n)
                - upoly(&[0, 0, 4 * m]) * inv(&s2 * &mu1) * &f
                + upoly(&[0, 2, 2 * m]) * inv(&s2 * &mu1);
            let rhs = c(-2) * &k * inv(uq.clone()) * bracket
                - upoly(&[-3, 2 * m, 3]) * inv(uq.clone()) * &d[2]
                - c(2 * m) * inv(uq.clone()) * &d[1];
            vec![&d[3] - rhs]
        }
        Identity::K2FourthDerivative => {
            let f = fv(n + 2, n);
            let d: Vec<_> = (0..5).map(|i| f.nth_derivative(i)).collect();
            let s2 = usq1();
            let u2 = upoly(&[0, 0, 1]);
            let t1 = upoly(&[-4 * m, 8 * ni + 6, 4 * ni + 10]) * inv(&u2 * &s2 * upoly(&[-1, 1])) * fv(n + 2, n + 1);
            let t2 = upoly(&[-4 * m, -(8 * ni + 10), 4 * ni - 2]) * inv(&u2 * &s2 * upoly(&[1, 1])) * fv(n + 1, n);
            let t3 = upoly(&[-4 * m, 8 * m * m - 2, 12 * m, 8 * m * m + 2]) * inv(&uu * &s2 * &s2 * &mu1) * &f;
            let q = 4 * ni * ni + 8 * ni + 6;
            let t4 = upoly(&[q, 12 * m, q]) * inv(&s2 * &s2 * &mu1);
            let rhs = c(2) * &k * inv(uq.clone()) * (t1 + t2 - t3 + t4)
                - upoly(&[-4, 2 * m, 6]) * inv(uq.clone()) * &d[3]
                - upoly(&[4 * m, 6]) * inv(uq.clone()) * &d[2];
            vec![&d[4] - rhs]
        }
        _ => return None,
    };
    Some(res)
}

/// Checks `which` over `0 <= A, B <= max_ab` (two-index identities) or
/// `1 <= N <= max_n` (one-index identities).
pub fn verify_identity(which: Identity, max_ab: u32, max_n: u32, cache: &FabCache) -> Report {
    let mut report = Report::new();
    let anchor = which.name();
    if which.is_two_index() {
        for a in 0..=max_ab {
            for b in 0..=max_ab {
                if let Some(rs) = identity_residual_ab(which, a, b, cache) {
                    for (i, r) in rs.into_iter().enumerate() {
                        let suffix = if i == 0 { String::new() } else { format!("/form{}", i + 1) };
                        report.push(record(format!("identity/{anchor}/A={a:02},B={b:02}{suffix}"), anchor, r));
                    }
                }
            }
        }
    } else {
        for n in 1..=max_n {
            if let Some(rs) = identity_residual_n(which, n, cache) {
                for r in rs {
                    report.push(record(format!("identity/{anchor}/N={n:02}"), anchor, r));
                }
            }
        }
    }
    report
}

/// Residual of the K2 equation. `f1_constant` selects the constant
/// inside the `f'` coefficient, `-2(N+1)(4(N+1)u^2 + 8N(N+2)u + c(N+1))`;
/// the equation closes for `c = -10` only.
pub fn k2_residual(n: u32, f1_constant: i64, cache: &FabCache) -> RationalFunction {
    let ni = n as i64;
    let m = ni + 1;
    let f = cache.get(n + 2, n);
    let d: Vec<_> = (0..5).map(|i| f.nth_derivative(i)).collect();
    let s2 = usq1();
    let c3 = c(2) * upoly(&[m, -1, 2 * m, 3]) * inv(upoly(&[0, 0, 1]) * &s2);
    let c2 =
        c(2) * upoly(&[-3 * m, 6 * m * m - 3, 3 * m, -2 * m * m, 2 * m, 3]) * inv(upoly(&[0, 0, 0, 1]) * &s2 * &s2);
    let c1 = c(-2 * m) * upoly(&[f1_constant * m, 8 * ni * (ni + 2), 4 * m]) * inv(upoly(&[0, 0, 0, 1]) * &s2 * &s2);
    let c0 = c(4 * ni * m * (ni + 2)) * upoly(&[2 * m, 1]) * inv(upoly(&[0, 0, 1]) * &s2 * &s2 * upoly(&[-1, m]));
    &d[4] + c3 * &d[3] + c2 * &d[2] + c1 * &d[1] + c0 * (f - c(1))
}

/// Exact residual of an ODE at `N`.
pub fn ode_residual(which: Ode, n: u32, cache: &FabCache) -> RationalFunction {
    let ni = n as i64;
    match which {
        Ode::Dn => {
            let f = cache.get(n, n);
            f.nth_derivative(2) + c(4 * ni) * inv(usq1()) * f.derivative() - c(2 * ni) * inv(u() * usq1()) * &f
        }
        Ode::K1 => {
            let f = cache.get(n + 1, n);
            let half = crate::exact::rat(1, 2);
            let lhs = (upoly(&[0, ni]) * inv(upoly(&[-1, 1])) + c(1).scale(&half)) * f.nth_derivative(2);
            // -8u^2N^2 + (-8u^2 + 4u)N - (u-1)^2
            let top = upoly(&[-1, 4 * ni + 2, -8 * ni * ni - 8 * ni - 1]);
            let den = upoly(&[0, 2]) * usq1() * upoly(&[-1, 1]);
            let rhs = top * inv(den) * f.derivative() + c(2 * ni * (ni + 1)) * inv(usq1() * upoly(&[-1, 1])) * &f
                - c(ni * (ni + 1)) * inv(usq1() * upoly(&[-1, 1]));
            lhs - rhs
        }
        Ode::K2 => k2_residual(n, -10, cache),
    }
}

pub fn verify_ode(which: Ode, n: u32, cache: &FabCache) -> CheckRecord {
    record(format!("ode/{}/N={n:02}", which.name()), which.name(), ode_residual(which, n, cache))
}

/// `(1/u)`-integrand with `(z+u-1)^{N+k}` equals `(-1)^{N+k-1} f_{N+k,N}(1/u)`.
pub fn verify_t1(n: u32, k: u32, cache: &FabCache) -> CheckRecord {
    let lhs = mp_literal(n, k);
    let sign = if (n + k) % 2 == 1 { 1 } else { -1 };
    let rhs = cache.get(n + k, n).compose_reciprocal() * c(sign);
    record(format!("ode/T-1/N={n:02},k={k}"), "T-1", lhs - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_identity_closes_on_small_indices() {
        let cache = FabCache::new();
        for which in Identity::ALL {
            let r = verify_identity(which, 4, 4, &cache);
            assert!(!r.records.is_empty(), "{which}");
            assert!(r.passed(), "{:?}", r.failures().next());
        }
    }

    #[test]
    fn odes_close() {
        let cache = FabCache::new();
        for n in 1..=3 {
            for o in [Ode::Dn, Ode::K1, Ode::K2] {
                assert!(ode_residual(o, n, &cache).is_zero(), "{} N={n}", o.name());
            }
            for k in 0..=2 {
                assert!(verify_t1(n, k, &cache).passed());
            }
        }
    }

    #[test]
    fn k2_with_plus_ten_leaves_an_f1_term() {
        // With +10(N+1) the residual is -40(N+1)^2 / (u^3 (u^2-1)^2) f'.
        let cache = FabCache::new();
        for n in 1..=3u32 {
            let m = n as i64 + 1;
            let f1 = cache.get(n + 2, n).derivative();
            let expect = c(-40 * m * m) * inv(upoly(&[0, 0, 0, 1]) * usq1() * usq1()) * f1;
            assert_eq!(k2_residual(n, 10, &cache), expect);
        }
    }

    #[test]
    fn id_at_one() {
        let cache = FabCache::new();
        assert_eq!(identity_residual_n(Identity::Id, 1, &cache).unwrap()[0], c(0));
        assert_eq!(c(2) * laurent_coefficient(1, 1, -2) + upoly(&[-1, 1]) * cache.get(1, 1), upoly(&[0, -1]));
    }

    #[test]
    fn feat1_example() {
        let cache = FabCache::new();
        assert_eq!(cache.get(3, 5) - cache.get(5, 3), c(-2));
    }
}
