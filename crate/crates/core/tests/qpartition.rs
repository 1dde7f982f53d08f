use std::collections::BTreeMap;
use std::sync::Arc;

use freeboundary::qpartition::*;
use freeboundary::series::{frac, int, ExactScalar, Ring, RingBuilder, Series, TruncationPolicy};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn ring_q(qt: u32) -> Arc<Ring> {
    RingBuilder::new()
        .qt(&["q", "t"])
        .params(&["a", "b"])
        .alphabet("x", 3)
        .build(TruncationPolicy::new(qt, 8, 8, 0))
}

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn poly(r: &Arc<Ring>, var: &str, coeffs: &[i64]) -> Series {
    let mut s = Series::zero(r);
    for (k, &c) in coeffs.iter().enumerate() {
        s = s + Series::term(r, &[(var, k as i16)], int(c)).unwrap();
    }
    s
}

#[test]
fn partition_basics() {
    let l = p("3,1,1");
    assert_eq!(l.size(), 5);
    assert_eq!(l.conjugate(), p("3,1,1"));
    assert_eq!(p("4,2").conjugate(), p("2,2,1,1"));
    assert_eq!(l.multiplicities(), vec![2, 0, 1]);
    assert_eq!(l.to_string(), "3,1,1");
    assert!(p("3,1").is_horizontal_strip_over(&p("1")));
    assert!(!p("2,2").is_horizontal_strip_over(&p("1")));
    assert!(p("1,1").conjugate_is_even());
    assert_eq!(p("2").odd_columns(), 2);
    assert_eq!(p("2,1").odd_columns(), 1);
    assert!("2,3".parse::<Partition>().is_err());
    assert_eq!(partitions_of(5, 5, 5).len(), 7);
}

proptest! {
    #[test]
    fn conjugation_is_involution(parts in prop::collection::vec(1u32..6, 0..6)) {
        let l = Partition::from_unsorted(parts);
        prop_assert_eq!(l.conjugate().conjugate(), l.clone());
        prop_assert_eq!(l.conjugate().size(), l.size());
        let m = l.multiplicities();
        prop_assert_eq!(Partition::from_multiplicities(&m), l);
    }

    #[test]
    fn gaussian_binomial_symmetric_nonnegative(m in 0i64..8, k in 0i64..8) {
        let r = ring_q(40);
        let qb = QBase::new(&r, "q").unwrap();
        let a = qb.binom(m, k);
        prop_assert_eq!(a.clone(), qb.binom(m, m - k));
        for (_, c) in a.terms() {
            prop_assert!(c.is_integer() && *c > ExactScalar::zero());
        }
        if k >= 0 && k <= m {
            let deg = a.terms().map(|(e, _)| e[0]).max().unwrap();
            prop_assert_eq!(deg as i64, k * (m - k));
        }
    }
}

#[test]
fn gaussian_binomial_examples() {
    let r = ring_q(40);
    let qb = QBase::new(&r, "q").unwrap();
    assert_eq!(qb.binom(2, 1), poly(&r, "q", &[1, 1]));
    assert_eq!(qb.binom(4, 2), poly(&r, "q", &[1, 1, 2, 1, 1]));
    // oracle: (q;q)_4 / ((q;q)_2)^2 by series division
    let div = qb.poch(4) * (qb.poch(2) * qb.poch(2)).invert().unwrap();
    assert_eq!(qb.binom(4, 2), div);
    assert_eq!(qb.binom(5, 0), Series::one(&r));
    assert!(qb.binom(2, 3).is_zero());
}

#[test]
fn pochhammer_examples() {
    let r = ring_q(8);
    let q = Series::var(&r, "q").unwrap();
    let one = Series::one(&r);
    assert_eq!(pochhammer(&q, &q, 2), (&one - &q) * (&one - &q.pow(2)));
    // Euler function: pentagonal-number oracle, truncated at q^4
    assert_eq!(pochhammer_inf(&q, &[&q]).unwrap(), poly(&r, "q", &[1, -1, -1]));
    let r2 = ring_q(4);
    let ab = Series::var(&r2, "a").unwrap() * Series::var(&r2, "b").unwrap();
    let (q2, t2) = (Series::var(&r2, "q").unwrap(), Series::var(&r2, "t").unwrap());
    let dp = pochhammer_inf(&ab, &[&q2, &t2]).unwrap();
    // 1 - ab Σ_{i+j ≤ 2} q^i t^j + (ab)^2 (...) truncated; compare the ab-linear part
    let lin = dp.coefficient_of(r2.var("a").unwrap(), 1).coefficient_of(r2.var("b").unwrap(), 1);
    let expect = -(&one_of(&r2) + &q2 + &t2 + &q2.pow(2) + &(&q2 * &t2) + &t2.pow(2));
    assert_eq!(lin, expect);
    assert!(pochhammer_inf(&one, &[&q]).is_err());
}

fn one_of(r: &Arc<Ring>) -> Series {
    Series::one(r)
}

#[test]
fn rogers_szego_examples() {
    let r = ring_q(20);
    let qb = QBase::new(&r, "q").unwrap();
    let z = Series::var(&r, "x1").unwrap();
    assert_eq!(qb.rogers_szego(0, &z), Series::one(&r));
    let expect = Series::one(&r) + poly(&r, "q", &[1, 1]) * &z + z.pow(2);
    assert_eq!(qb.rogers_szego(2, &z), expect);
    let ab = Series::var(&r, "a").unwrap() * Series::var(&r, "b").unwrap();
    assert_eq!(qb.rogers_szego(1, &ab), Series::one(&r) + ab);
    assert!(qb.rogers_szego(-1, &z).is_zero());
}

#[test]
fn h_lambda_examples() {
    let r = ring_q(20);
    let qb = QBase::new(&r, "q").unwrap();
    let a = Series::var(&r, "a").unwrap();
    let b = Series::var(&r, "b").unwrap();
    assert_eq!(qb.h_lambda(&Partition::empty(), &a, &b), Series::one(&r));
    assert_eq!(qb.h_lambda(&p("1"), &a, &b), &a + &b);
    assert_eq!(qb.h_lambda(&p("2"), &a, &b), Series::one(&r) + &a * &b);
    // conjugate form agrees with the multiplicity form on λ'
    for l in partitions_up_to(6, 6, 6) {
        assert_eq!(qb.h_lambda_conj(&l, &a, &b), qb.h_lambda(&l.conjugate(), &a, &b));
        let zero = Series::zero(&r);
        let expect = if l.conjugate_is_even() { Series::one(&r) } else { Series::zero(&r) };
        assert_eq!(qb.h_lambda_conj(&l, &zero, &zero), expect);
        // h_{λ'}(a,0) = a^{odd(λ')}
        assert_eq!(qb.h_lambda_conj(&l, &a, &zero), a.pow(l.odd_columns()));
    }
}

#[test]
fn skew_one_var_examples() {
    let r = ring_q(20);
    let qb = QBase::new(&r, "q").unwrap();
    let tb = QBase::new(&r, "t").unwrap();
    let x = Series::var(&r, "x1").unwrap();
    assert_eq!(skew_one_var(&p("1"), &Partition::empty(), &x, Family::QWhittakerP, &qb), x);
    assert_eq!(skew_one_var(&p("2"), &p("1"), &x, Family::QWhittakerP, &qb), poly(&r, "q", &[1, 1]) * &x);
    assert_eq!(skew_one_var(&p("2,1"), &p("2,1"), &x, Family::HallLittlewoodP, &tb), Series::one(&r));
    let one_minus_t = Series::one(&r) - Series::var(&r, "t").unwrap();
    assert_eq!(skew_one_var(&p("1"), &Partition::empty(), &x, Family::HallLittlewoodQ, &tb), one_minus_t * &x);
    assert!(skew_one_var(&p("2,2"), &p("1"), &x, Family::QWhittakerP, &qb).is_zero());
}

/// Independent oracle: Gram–Schmidt on monomial symmetric functions with
/// `<p_λ, p_μ> = δ z_λ ∏ (1-q^{λ_i})/(1-t^{λ_i})` at numeric `q, t`.
mod gram_schmidt {
    use super::*;

    fn monomial_sym_eval(mu: &[u32], xs: &[ExactScalar]) -> ExactScalar {
        // sum over distinct permutations of mu padded to len(xs)
        let n = xs.len();
        if mu.len() > n {
            return ExactScalar::zero();
        }
        let mut exps: Vec<u32> = mu.to_vec();
        exps.resize(n, 0);
        exps.sort();
        let mut total = ExactScalar::zero();
        loop {
            let mut term = ExactScalar::one();
            for (x, &e) in xs.iter().zip(&exps) {
                term *= x.pow(e as i32);
            }
            total += term;
            if !next_permutation(&mut exps) {
                break;
            }
        }
        total
    }

    fn next_permutation(a: &mut [u32]) -> bool {
        let n = a.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && a[i - 1] >= a[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while a[j] <= a[i - 1] {
            j -= 1;
        }
        a.swap(i - 1, j);
        a[i..].reverse();
        true
    }

    /// Coefficient of m_μ in p_ρ: number of ways to distribute parts of ρ into
    /// the parts of μ (as ordered blocks summing exactly).
    fn p_to_m(rho: &[u32], mu: &[u32]) -> ExactScalar {
        // count functions f: parts(rho) -> positions(mu) with block sums = mu, then
        // divide by the symmetry of equal parts of mu (we count distinct monomials)
        fn rec(rho: &[u32], rem: &mut Vec<u32>) -> u64 {
            match rho.split_first() {
                None => rem.iter().all(|&r| r == 0) as u64,
                Some((&r, rest)) => {
                    let mut c = 0;
                    for i in 0..rem.len() {
                        if rem[i] >= r {
                            rem[i] -= r;
                            c += rec(rest, rem);
                            rem[i] += r;
                        }
                    }
                    c
                }
            }
        }
        let mut rem = mu.to_vec();
        ExactScalar::from_integer(rec(rho, &mut rem).into())
    }

    fn z(rho: &[u32]) -> ExactScalar {
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for &r in rho {
            *counts.entry(r).or_default() += 1;
        }
        let mut acc = ExactScalar::one();
        for (i, m) in counts {
            for k in 1..=m {
                acc *= int(k as i64) * int(i as i64);
            }
        }
        acc
    }

    fn solve(mut a: Vec<Vec<ExactScalar>>, mut b: Vec<Vec<ExactScalar>>) -> Vec<Vec<ExactScalar>> {
        // returns a^{-1} b by Gauss–Jordan
        let n = a.len();
        for c in 0..n {
            let piv = (c..n).find(|&r| !a[r][c].is_zero()).unwrap();
            a.swap(c, piv);
            b.swap(c, piv);
            let inv = a[c][c].recip();
            for k in 0..n {
                a[c][k] = &a[c][k] * &inv;
            }
            for k in 0..b[c].len() {
                b[c][k] = &b[c][k] * &inv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for k in 0..n {
                        let v = &a[c][k] * &f;
                        a[r][k] -= v;
                    }
                    for k in 0..b[r].len() {
                        let v = &b[c][k] * &f;
                        b[r][k] -= v;
                    }
                }
            }
        }
        b
    }

    /// Coefficients of P_λ in the monomial basis (keyed by partition).
    pub fn macdonald_p(n: u32, q: &ExactScalar, t: &ExactScalar) -> BTreeMap<Partition, Vec<ExactScalar>> {
        // partitions of n in reverse lexicographic order (a linear extension of dominance)
        let parts = partitions_of(n, n, n as usize);
        let k = parts.len();
        // L[ρ][μ]: p_ρ = Σ L m_μ ; M = L^{-1} gives m_μ = Σ M[μ][ρ] p_ρ
        let l: Vec<Vec<ExactScalar>> =
            parts.iter().map(|rho| parts.iter().map(|mu| p_to_m(rho.parts(), mu.parts())).collect()).collect();
        // M = L^{-1}: solve L^T? m = L^{-T}... p = L m (as row vectors) => m = L^{-1} p
        let id: Vec<Vec<ExactScalar>> =
            (0..k).map(|i| (0..k).map(|j| if i == j { ExactScalar::one() } else { ExactScalar::zero() }).collect()).collect();
        let m = solve(l, id);
        let norm: Vec<ExactScalar> = parts
            .iter()
            .map(|rho| {
                let mut v = z(rho.parts());
                for &r in rho.parts() {
                    v *= (ExactScalar::one() - q.pow(r as i32)) / (ExactScalar::one() - t.pow(r as i32));
                }
                v
            })
            .collect();
        let inner = |u: &[ExactScalar], v: &[ExactScalar]| -> ExactScalar {
            // u, v in m-basis; convert to p-basis via M
            let mut acc = ExactScalar::zero();
            for r in 0..k {
                let mut ur = ExactScalar::zero();
                let mut vr = ExactScalar::zero();
                for i in 0..k {
                    ur += &u[i] * &m[i][r];
                    vr += &v[i] * &m[i][r];
                }
                acc += ur * vr * &norm[r];
            }
            acc
        };
        // Gram–Schmidt from the bottom of dominance (last in reverse-lex list) upward
        let mut out: BTreeMap<Partition, Vec<ExactScalar>> = BTreeMap::new();
        let mut done: Vec<Vec<ExactScalar>> = Vec::new();
        for idx in (0..k).rev() {
            let mut v: Vec<ExactScalar> = (0..k).map(|j| if j == idx { ExactScalar::one() } else { ExactScalar::zero() }).collect();
            for w in &done {
                let c = inner(&v, w) / inner(w, w);
                for j in 0..k {
                    let d = &c * &w[j];
                    v[j] -= d;
                }
            }
            done.push(v.clone());
            out.insert(parts[idx].clone(), v);
        }
        out
    }

    pub fn eval(coeffs: &[ExactScalar], n: u32, xs: &[ExactScalar]) -> ExactScalar {
        let parts = partitions_of(n, n, n as usize);
        parts.iter().zip(coeffs).map(|(mu, c)| c * monomial_sym_eval(mu.parts(), xs)).sum()
    }
}

fn numeric_skew(lambda: &Partition, family: Family, qv: &ExactScalar, tv: &ExactScalar, xs: &[ExactScalar]) -> ExactScalar {
    let r = RingBuilder::new().qt(&["q", "t"]).alphabet("x", xs.len()).build(TruncationPolicy::new(60, 12, 0, 0));
    let base = match family {
        Family::QWhittakerP | Family::QWhittakerQ => "q",
        _ => "t",
    };
    let qb = QBase::new(&r, base).unwrap();
    let alphabet: Vec<Series> = (1..=xs.len()).map(|i| Series::var(&r, &format!("x{i}")).unwrap()).collect();
    let s = skew_multi(lambda, &Partition::empty(), &alphabet, family, &qb);
    let mut vals = vec![ExactScalar::zero(); r.table.len()];
    vals[r.var("q").unwrap()] = qv.clone();
    vals[r.var("t").unwrap()] = tv.clone();
    for (i, x) in xs.iter().enumerate() {
        vals[r.var(&format!("x{}", i + 1)).unwrap()] = x.clone();
    }
    s.evaluate(&vals)
}

#[test]
fn skew_multi_matches_gram_schmidt_oracle() {
    let xs = [frac(1, 2), frac(-2, 3), frac(3, 5)];
    let qv = frac(1, 3);
    let zero = ExactScalar::zero();
    for n in 1..=4u32 {
        let qw = gram_schmidt::macdonald_p(n, &qv, &zero);
        let hl = gram_schmidt::macdonald_p(n, &zero, &qv);
        for lam in partitions_of(n, n, 3) {
            let want_qw = gram_schmidt::eval(&qw[&lam], n, &xs);
            assert_eq!(numeric_skew(&lam, Family::QWhittakerP, &qv, &zero, &xs), want_qw, "qW P_{lam}");
            let want_hl = gram_schmidt::eval(&hl[&lam], n, &xs);
            assert_eq!(numeric_skew(&lam, Family::HallLittlewoodP, &zero, &qv, &xs), want_hl, "HL P_{lam}");
        }
    }
}

#[test]
fn skew_multi_examples() {
    let r = ring_q(20);
    let qb = QBase::new(&r, "q").unwrap();
    let tb = QBase::new(&r, "t").unwrap();
    let x1 = Series::var(&r, "x1").unwrap();
    let x2 = Series::var(&r, "x2").unwrap();
    let xs = [x1.clone(), x2.clone()];
    let e = Partition::empty();
    let expect = x1.pow(2) + poly(&r, "q", &[1, 1]) * &x1 * &x2 + x2.pow(2);
    assert_eq!(skew_multi(&p("2"), &e, &xs, Family::QWhittakerP, &qb), expect);
    assert_eq!(skew_multi(&p("1,1"), &e, &xs, Family::HallLittlewoodP, &tb), &x1 * &x2);
    assert!(skew_multi(&p("1,1,1"), &e, &xs, Family::HallLittlewoodP, &tb).is_zero());
}

#[test]
fn branching_and_normalization_relations() {
    let r = RingBuilder::new().qt(&["q", "t"]).alphabet("x", 3).build(TruncationPolicy::new(12, 8, 0, 0));
    let qb = QBase::new(&r, "q").unwrap();
    let tb = QBase::new(&r, "t").unwrap();
    let xs: Vec<Series> = (1..=3).map(|i| Series::var(&r, &format!("x{i}")).unwrap()).collect();
    let fams = [
        (Family::QWhittakerP, &qb),
        (Family::QWhittakerQ, &qb),
        (Family::HallLittlewoodP, &tb),
        (Family::HallLittlewoodQ, &tb),
    ];
    for lam in partitions_up_to(6, 6, 3) {
        for mu in partitions_up_to(lam.size(), 6, 3).into_iter().filter(|m| lam.contains(m)) {
            for (fam, b) in fams {
                let whole = skew_multi(&lam, &mu, &xs, fam, b);
                let mut split = Series::zero(&r);
                for nu in partitions_up_to(lam.size(), 6, 3).into_iter().filter(|n| lam.contains(n) && n.contains(&mu)) {
                    split = split + skew_multi(&lam, &nu, &xs[..1], fam, b) * skew_multi(&nu, &mu, &xs[1..], fam, b);
                }
                assert_eq!(whole, split, "branching {fam:?} {lam}/{mu}");
            }
            if lam.size() - mu.size() <= 3 {
                let x = &xs[0];
                let pq = skew_one_var(&lam, &mu, x, Family::QWhittakerP, &qb);
                let qq = skew_one_var(&lam, &mu, x, Family::QWhittakerQ, &qb);
                let ratio = b_qwhittaker(&lam, &qb) * b_qwhittaker(&mu, &qb).invert().unwrap();
                assert_eq!(qq, pq * ratio, "qW Q/P {lam}/{mu}");
                let ph = skew_one_var(&lam, &mu, x, Family::HallLittlewoodP, &tb);
                let qh = skew_one_var(&lam, &mu, x, Family::HallLittlewoodQ, &tb);
                let ratio = b_hall_littlewood(&lam, &tb) * b_hall_littlewood(&mu, &tb).invert().unwrap();
                assert_eq!(qh, ph * ratio, "HL Q/P {lam}/{mu}");
            }
        }
    }
}

#[test]
fn cd_equivalence_lemma() {
    // h_{λ'}(a,b;q) = Σ_{μ: μ' even} P_{λ/μ}(a,b;q,0)
    let r = ring_q(24);
    let qb = QBase::new(&r, "q").unwrap();
    let a = Series::var(&r, "a").unwrap();
    let b = Series::var(&r, "b").unwrap();
    for lam in partitions_up_to(6, 6, 6) {
        let mut rhs = Series::zero(&r);
        for mu in partitions_up_to(lam.size(), 6, 6) {
            if lam.contains(&mu) && mu.conjugate_is_even() {
                rhs = rhs + skew_multi(&lam, &mu, &[a.clone(), b.clone()], Family::QWhittakerP, &qb);
            }
        }
        assert_eq!(qb.h_lambda_conj(&lam, &a, &b), rhs, "cd-equiv {lam}");
    }
}

#[test]
fn littlewood_and_mehler_identities() {
    let rep = littlewood_check(1, false, 8, 6, 0);
    assert!(rep.passed(), "{}", rep.to_json());
    let rep = littlewood_check(2, false, 8, 4, 0);
    assert!(rep.passed(), "{}", rep.to_json());
    let rep = littlewood_check(2, true, 6, 3, 3);
    assert!(rep.passed(), "{}", rep.to_json());
    let rep = mehler_check(4, 8);
    assert!(rep.passed(), "{}", rep.to_json());
}
