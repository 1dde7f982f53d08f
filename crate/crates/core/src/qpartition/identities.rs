//! Littlewood and Mehler identity checks.

use crate::report::VerificationReport;
use crate::series::{RingBuilder, Series, TruncationPolicy};

use super::partition::partitions_up_to;
use super::qseries::{pochhammer_inf, QBase};
use super::skew::{skew_multi, Family};
use crate::qpartition::Partition;

/// `Σ_ν h_ν(a,b;q) P_ν(y;0,q)` against
/// `∏_i (1+a y_i)(1+b y_i)/(1-y_i²) ∏_{i<j} (1-q y_i y_j)/(1-y_i y_j)`.
///
/// The Hall–Littlewood parameter is `q`; with `general = false` the check runs
/// at `a = b = 0`, where only even `ν` survive.
pub fn littlewood_check(n_vars: usize, general: bool, qt_cap: u32, x_cap: u32, param_cap: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("littlewood").param("n_vars", n_vars).param("general_ab", general);
    let ring = RingBuilder::new()
        .qt(&["q"])
        .params(&["a", "b"])
        .alphabet("y", n_vars)
        .build(TruncationPolicy::new(qt_cap, x_cap, if general { param_cap } else { 0 }, 0));
    rep.set_policy(&ring.policy);
    let qb = QBase::new(&ring, "q").expect("q registered");
    let ys: Vec<Series> = (1..=n_vars).map(|i| Series::var(&ring, &format!("y{i}")).expect("registered")).collect();
    let (a, b) = if general {
        (Series::var(&ring, "a").expect("a"), Series::var(&ring, "b").expect("b"))
    } else {
        (Series::zero(&ring), Series::zero(&ring))
    };
    let mut lhs = Series::zero(&ring);
    for nu in partitions_up_to(x_cap, x_cap, n_vars) {
        let h = qb.h_lambda(&nu, &a, &b);
        if h.is_zero() {
            continue;
        }
        lhs = lhs + h * skew_multi(&nu, &Partition::empty(), &ys, Family::HallLittlewoodP, &qb);
    }
    let one = Series::one(&ring);
    let q = qb.base().clone();
    let mut rhs = one.clone();
    for (i, yi) in ys.iter().enumerate() {
        let num = (&one + &(&a * yi)) * (&one + &(&b * yi));
        let den = Series::reciprocal(&(&one - &(yi * yi))).expect("1-y² expands in y");
        rhs = rhs * num * den;
        for yj in &ys[i + 1..] {
            let p = yi * yj;
            rhs = rhs * (&one - &(&q * &p)) * Series::reciprocal(&(&one - &p)).expect("1-yy expands");
        }
    }
    rep.check_series("lhs-rhs", &(lhs - rhs));
    rep.finish()
}

/// Mehler's formula for Rogers–Szegő polynomials, with `u` tracked in the z
/// group up to `u_degree`:
/// `Σ_m h_m(α)h_m(β) u^m/(q;q)_m = (αβu²;q)_∞ / ((u;q)_∞(αu;q)_∞(βu;q)_∞(αβu;q)_∞)`.
pub fn mehler_check(u_degree: u32, qt_cap: u32) -> VerificationReport {
    let param_cap = 2 * u_degree;
    let ring = RingBuilder::new()
        .qt(&["q"])
        .params(&["alpha", "beta"])
        .var("u", crate::series::DegreeGroup::Z)
        .build(TruncationPolicy::new(qt_cap, 0, param_cap, u_degree));
    let mut rep = VerificationReport::new("mehler").param("u_degree", u_degree).with_policy(&ring.policy);
    let qb = QBase::new(&ring, "q").expect("q registered");
    let al = Series::var(&ring, "alpha").expect("alpha");
    let be = Series::var(&ring, "beta").expect("beta");
    let u = Series::var(&ring, "u").expect("u");
    let mut lhs = Series::zero(&ring);
    for m in 0..=u_degree {
        lhs = lhs + qb.rogers_szego(m as i64, &al) * qb.rogers_szego(m as i64, &be) * u.pow(m) * qb.poch_inv(m);
    }
    let q = qb.base().clone();
    let ab = &al * &be;
    let num = pochhammer_inf(&(&ab * &u.pow(2)), &[&q]).expect("no constant term");
    let mut den = Series::one(&ring);
    for z in [u.clone(), &al * &u, &be * &u, &ab * &u] {
        den = den * pochhammer_inf(&z, &[&q]).expect("no constant term");
    }
    let rhs = num * den.invert().expect("unit constant term");
    for m in 0..=u_degree {
        let ui = ring.var("u").expect("u");
        rep.check_series(format!("u^{m}"), &(lhs.coefficient_of(ui, m as i16) - rhs.coefficient_of(ui, m as i16)));
    }
    rep.finish()
}

/// `h_{λ'}(a,b;q) = Σ_{μ ⊆ λ, μ' even} P_{λ/μ}(a,b;q,0)` for every `|λ| ≤ max_size`.
pub fn cd_equiv_check(max_size: u32) -> VerificationReport {
    let ring = RingBuilder::new().qt(&["q"]).params(&["a", "b"]).build(TruncationPolicy::new(4 * max_size, 0, max_size, 0));
    let mut rep = VerificationReport::new("cd-equiv").param("max_size", max_size).with_policy(&ring.policy);
    let qb = QBase::new(&ring, "q").expect("q registered");
    let a = Series::var(&ring, "a").expect("a");
    let b = Series::var(&ring, "b").expect("b");
    let all = partitions_up_to(max_size, max_size, max_size as usize);
    for lam in &all {
        let mut rhs = Series::zero(&ring);
        for mu in &all {
            if mu.size() <= lam.size() && lam.contains(mu) && mu.conjugate_is_even() {
                rhs = rhs + skew_multi(lam, mu, &[a.clone(), b.clone()], Family::QWhittakerP, &qb);
            }
        }
        rep.check_series(format!("{lam}"), &(qb.h_lambda_conj(lam, &a, &b) - rhs));
    }
    rep.finish()
}
