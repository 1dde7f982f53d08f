use serde::{Deserialize, Serialize};
use serde_json::json;

use super::zn::inversion_residual;
use super::Caps;
use crate::qpartition::{grow, Family, Partition, QBase};
use crate::report::VerificationReport;
use crate::series::{RingBuilder, Series, TruncationPolicy};

/// Checks both equalities of the `(a,b)`-absorption lemma for fixed `μ`, `n`:
/// `Σ_{λ_1≤n, λ' even} Q_{λ/μ}(a,b)/(q;q)_{n-λ_1}`,
/// `Σ_{λ_1≤n} h_{λ'}(a,0) Q_{λ/μ}(b)/(q;q)_{n-λ_1}` and
/// `h_{n-μ_1}(ab) h_{μ'}(a,b)/(q;q)_{n-μ_1}` (or 0 when `μ_1 > n`).
pub fn ab_equiv_check(mu: &Partition, n: u32, caps: Caps) -> VerificationReport {
    let ring = RingBuilder::new().qt(&["q"]).params(&["a", "b"]).build(TruncationPolicy::new(2 * caps.qt, 0, caps.params, 0));
    let mut rep = VerificationReport::new("ab-equiv").param("mu", mu).param("n", n).with_policy(&ring.policy);
    let qb = QBase::new(&ring, "q").expect("q registered");
    let a = Series::var(&ring, "a").expect("a");
    let b = Series::var(&ring, "b").expect("b");
    let zero = Series::zero(&ring);

    let mut first = Series::zero(&ring);
    for (lambda, qs) in grow(mu, &[a.clone(), b.clone()], Family::QWhittakerQ, &qb, n, caps.params) {
        if lambda.conjugate_is_even() {
            first = first + qs * qb.poch_inv(n - lambda.largest());
        }
    }
    let mut second = Series::zero(&ring);
    for (lambda, qs) in grow(mu, &[b.clone()], Family::QWhittakerQ, &qb, n, caps.params) {
        second = second + qb.h_lambda_conj(&lambda, &a, &zero) * qs * qb.poch_inv(n - lambda.largest());
    }
    let closed = if mu.largest() <= n {
        let k = n - mu.largest();
        qb.rogers_szego(k as i64, &(&a * &b)) * qb.h_lambda_conj(mu, &a, &b) * qb.poch_inv(k)
    } else {
        Series::zero(&ring)
    };
    rep.check_series("first-closed", &(&first - &closed));
    rep.check_series("second-closed", &(&second - &closed));
    rep.check("mu1>n-vanishes", mu.largest() <= n || first.is_zero(), json!(first.dump_json()));
    rep.finish()
}

/// Which parity condition restricts `λ` in the inversion lemma.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvReading {
    /// `λ'` even (all columns even), the condition the absorption lemma produces.
    ConjugateEven,
    /// `λ` even (all parts even), as the statement is printed.
    PartsEven,
}

/// `(xy)^n Σ Q_{λ/μ}(x^{-1},y^{-1})/(q;q)_{n-λ_1} = Σ Q_{λ/μ}(x,y)/(q;q)_{n-λ_1}`
/// over `λ_1 ≤ n` with the chosen parity condition. Both sides are
/// polynomials in `x, y`; comparison is over monomials whose preimage and
/// image both fit the x cap.
pub fn inv_sym_identity_check(mu: &Partition, n: u32, caps: Caps, reading: InvReading) -> VerificationReport {
    let ring = RingBuilder::new().qt(&["q"]).alphabet("x", 2).build(TruncationPolicy::new(2 * caps.qt, caps.x, 0, 0));
    let mut rep = VerificationReport::new("inv-sym-identity")
        .param("mu", mu)
        .param("n", n)
        .param("reading", format!("{reading:?}"))
        .with_policy(&ring.policy);
    let qb = QBase::new(&ring, "q").expect("q registered");
    let x = Series::var(&ring, "x1").expect("x1");
    let y = Series::var(&ring, "x2").expect("x2");
    let mut s = Series::zero(&ring);
    for (lambda, qs) in grow(mu, &[x, y], Family::QWhittakerQ, &qb, n, caps.x) {
        let keep = match reading {
            InvReading::ConjugateEven => lambda.conjugate_is_even(),
            InvReading::PartsEven => lambda.is_even(),
        };
        if keep {
            s = s + qs * qb.poch_inv(n - lambda.largest());
        }
    }
    let vars = [ring.var("x1").expect("x1"), ring.var("x2").expect("x2")];
    match inversion_residual(&s, &vars, n as i16) {
        Ok(r) => {
            rep.check_series("inverted-minus-original", &r);
        }
        Err(e) => {
            rep.check("substitution", false, json!(e.to_string()));
        }
    }
    rep.finish()
}
