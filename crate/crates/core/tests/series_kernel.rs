use std::sync::Arc;

use freeboundary::qpartition::{partitions_up_to, QBase};
use freeboundary::series::{frac, int, ExactScalar, Image, Ring, RingBuilder, Series, SeriesError, TruncationPolicy};
use proptest::prelude::*;

fn qtx_ring(qt: u32, x: u32, params: u32) -> Arc<Ring> {
    RingBuilder::new()
        .qt(&["q", "t"])
        .params(&["a", "b", "c", "d"])
        .alphabet("x", 2)
        .build(TruncationPolicy::new(qt, x, params, 0))
}

fn v(r: &Arc<Ring>, n: &str) -> Series {
    Series::var(r, n).unwrap()
}

#[test]
fn difference_of_squares() {
    let r = qtx_ring(4, 2, 0);
    let one = Series::one(&r);
    let qx = v(&r, "q") * v(&r, "x1");
    let prod = (&one + &qx) * (&one - &qx);
    let expect = &one - &Series::term(&r, &[("q", 2), ("x1", 2)], int(1)).unwrap();
    assert_eq!(prod, expect);
}

#[test]
fn root_symbol_squares_to_base() {
    let r = qtx_ring(4, 0, 0);
    let st = v(&r, "s_t");
    assert_eq!(&st * &st, v(&r, "t"));
    assert_eq!(st.pow(2) * Series::one(&r), v(&r, "t"));
}

#[test]
fn four_factor_expansion_matches_subset_enumeration() {
    let r = qtx_ring(0, 0, 4);
    let one = Series::one(&r);
    let names = ["a", "b", "c", "d"];
    let mut prod = one.clone();
    for n in names {
        prod = prod * (&one + &v(&r, n));
    }
    assert_eq!(prod.len(), 16);
    for mask in 0u32..16 {
        let powers: Vec<(&str, i16)> =
            names.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, n)| (*n, 1)).collect();
        let mono = Series::term(&r, &powers, int(1)).unwrap();
        let (e, _) = mono.terms().next().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        assert_eq!(prod.coeff(&e), int(1));
    }
}

#[test]
fn geometric_expansions() {
    let r = qtx_ring(6, 0, 0);
    let one = Series::one(&r);
    let q = v(&r, "q");
    let g = Series::reciprocal(&(&one - &q)).unwrap();
    let expect = Series::sum(&r, [&one, &q, &q.pow(2), &q.pow(3)]).unwrap();
    assert_eq!(g, expect);

    let ry = RingBuilder::new().qt(&["t"]).laurent("y", 1).build(TruncationPolicy::new(4, 0, 0, 0));
    let ry = ry.with_depths(&[(ry.var("y1").unwrap(), 6)]).unwrap();
    let one = Series::one(&ry);
    let y = v(&ry, "y1");
    let f = &y.pow(2) - &one;
    let dom: Vec<i16> = vec![0, 0, 2];
    let g = Series::expand_reciprocal(&dom, 1, &one).unwrap();
    let yi = |k: i16| Series::term(&ry, &[("y1", k)], int(1)).unwrap();
    assert_eq!(g, Series::sum(&ry, [&yi(-2), &yi(-4), &yi(-6)]).unwrap());
    assert_eq!(Series::reciprocal(&f).unwrap(), g);

    let t = v(&ry, "t");
    let h = Series::reciprocal(&(&one - &(&t * &y.pow(2)))).unwrap();
    let expect = Series::sum(&ry, [&one, &(&t * &y.pow(2)), &(t.pow(2) * y.pow(4))]).unwrap();
    assert_eq!(h, expect);
}

#[test]
fn non_expandable_factor_is_named() {
    let ry = RingBuilder::new().qt(&["t"]).laurent("y", 1).build(TruncationPolicy::new(4, 0, 0, 0));
    let one = Series::one(&ry);
    // 1 - y has no budgeted orientation: y has no depth budget and no weight.
    let err = Series::reciprocal(&(&one - &v(&ry, "y1"))).unwrap_err();
    assert!(matches!(err, SeriesError::NonExpandable(_)));
}

#[test]
fn invert_series_examples() {
    let r = qtx_ring(6, 0, 0);
    let one = Series::one(&r);
    let q = v(&r, "q");
    let t = v(&r, "t");
    assert_eq!(one.invert().unwrap(), one);
    assert_eq!((&one - &q).invert().unwrap(), Series::reciprocal(&(&one - &q)).unwrap());
    let f = (&one - &q) * (&one - &t);
    assert_eq!(&f * &f.invert().unwrap(), one);
    assert!(matches!(q.invert(), Err(SeriesError::ZeroConstantTerm(_))));
}

#[test]
fn constant_term_examples() {
    let ry = RingBuilder::new().alphabet("x", 1).laurent("y", 1).build(TruncationPolicy::new(0, 4, 0, 0));
    let y = v(&ry, "y1");
    let yinv = Series::term(&ry, &[("y1", -1)], int(1)).unwrap();
    let one = Series::one(&ry);
    let s = (&y + &one + &yinv).pow(2);
    let yv = ry.var("y1").unwrap();
    assert_eq!(s.constant_term(&[yv]), Series::from_int(&ry, 3));
    let x = v(&ry, "x1");
    let f = &(&x * &yinv) + &x.pow(2);
    assert_eq!(f.constant_term(&[yv]), x.pow(2));
}

#[test]
fn substitution_examples() {
    let r = qtx_ring(4, 4, 0);
    let one = Series::one(&r);
    let f = &one + &(v(&r, "x1") * v(&r, "x2"));
    assert_eq!(f.swap("x1", "x2").unwrap(), f);
    let g = &v(&r, "q") + &v(&r, "t");
    assert_eq!(g.swap("q", "t").unwrap().swap("s_q", "s_t").unwrap(), g);
    let x1 = r.var("x1").unwrap();
    assert!(v(&r, "x1").substitute(&[(x1, Image::Zero)], None).unwrap().is_zero());
    // inversion needs compensation on a non-laurent variable
    let inv = Series::image(&r, &[("x1", -1)], int(1)).unwrap();
    assert!(v(&r, "x1").substitute(&[(x1, inv.clone())], None).is_err());
    let mut comp = vec![0i16; r.table.len()];
    comp[x1] = 1;
    assert_eq!(v(&r, "x1").substitute(&[(x1, inv)], Some(&comp)).unwrap(), one);
}

#[test]
fn even_power_assertions() {
    let r = qtx_ring(6, 2, 0);
    let st = v(&r, "s_t");
    let x = v(&r, "x1");
    assert_eq!((&st * &st * &x).assert_even_powers("s_t").unwrap(), &v(&r, "t") * &x);
    assert!(matches!(st.pow(3).assert_even_powers("s_t"), Err(SeriesError::OddPower { .. })));
}

#[test]
fn half_power_sums_pass_even_power_check() {
    // t^{|μ|/2} h_{μ'}(c/√t, d/√t; q) over all |μ| ≤ 4
    let r = RingBuilder::new().qt(&["q", "t"]).params(&["c", "d"]).build(TruncationPolicy::new(12, 0, 8, 0));
    let qb = QBase::new(&r, "q").unwrap();
    let st = r.var("s_t").unwrap();
    let mut c = vec![0i16; r.table.len()];
    c[r.var("c").unwrap()] = 1;
    let mut d = vec![0i16; r.table.len()];
    d[r.var("d").unwrap()] = 1;
    let mut total = Series::zero(&r);
    for mu in partitions_up_to(4, 4, 4) {
        let term = qb.h_poly_conj(&mu).eval_scaled(&c, &d, st, mu.size() as i32).unwrap();
        term.assert_even_powers("s_t").unwrap();
        total = total + term;
    }
    total.assert_even_powers("s_t").unwrap();
}

#[test]
fn policy_mismatch_rejected() {
    let r1 = qtx_ring(4, 2, 0);
    let r2 = qtx_ring(6, 2, 0);
    let err = Series::one(&r1).try_add(&Series::one(&r2)).unwrap_err();
    assert!(matches!(err, SeriesError::PolicyMismatch(_, _)));
}

#[test]
fn dump_is_graded_lex_and_deterministic() {
    let r = qtx_ring(4, 2, 0);
    let s = Series::from_int(&r, 2) + v(&r, "x1") + v(&r, "q") * v(&r, "x2");
    let d1 = s.dump_json().to_string();
    let d2 = s.clone().dump_json().to_string();
    assert_eq!(d1, d2);
    let terms = s.dump_json()["terms"].as_array().unwrap().clone();
    assert_eq!(terms[0][1], "2");
    assert_eq!(terms.len(), 3);
}

fn arb_series(r: Arc<Ring>) -> impl Strategy<Value = Series> {
    let n = r.table.len();
    prop::collection::vec((prop::collection::vec(0i16..3, n), -5i64..6, 1i64..4), 0..6).prop_map(move |ts| {
        let mut s = Series::zero(&r);
        for (e, num, den) in ts {
            let e: freeboundary::series::Mono = e.into_iter().collect();
            s = s + Series::monomial(&r, e, frac(num, den));
        }
        s
    })
}

fn small_ring() -> Arc<Ring> {
    RingBuilder::new().qt(&["q"]).params(&["a"]).alphabet("x", 1).build(TruncationPolicy::new(4, 3, 2, 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(f in arb_series(small_ring()), g in arb_series(small_ring()), h in arb_series(small_ring())) {
        let r = f.ring().clone();
        let one = Series::one(&r);
        let zero = Series::zero(&r);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &one, f.clone());
        prop_assert_eq!(&f + &zero, f.clone());
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn reciprocal_multiplies_back(k in 1i16..4, num in -3i64..4) {
        let r = small_ring();
        let one = Series::one(&r);
        let sub = Series::term(&r, &[("q", k)], int(num)).unwrap() + Series::term(&r, &[("x1", 1)], frac(1, 2)).unwrap();
        let g = Series::expand_reciprocal(&vec![0i16; r.table.len()], 1, &sub).unwrap();
        prop_assert_eq!(&g * &(&one - &sub), one);
    }

    #[test]
    fn constant_term_linear_idempotent(f in arb_series(small_ring()), g in arb_series(small_ring()), c in -4i64..5) {
        let vars = [f.ring().var("x1").unwrap()];
        let lhs = (&f.scale(&int(c)) + &g).constant_term(&vars);
        let rhs = &f.constant_term(&vars).scale(&int(c)) + &g.constant_term(&vars);
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs.constant_term(&vars), lhs);
    }

    #[test]
    fn substitution_round_trip(f in arb_series(small_ring())) {
        let r = f.ring().clone();
        let (a, x) = (r.var("a").unwrap(), r.var("x1").unwrap());
        // keep terms that stay within both caps after exchanging a and x1
        let g = f.filter(|e| e[a] <= 2 && e[x] <= 2);
        let s = g.swap("a", "x1").unwrap().swap("a", "x1").unwrap();
        prop_assert_eq!(s, g);
    }

    #[test]
    fn laurent_inversion_round_trip(ks in prop::collection::vec((-3i16..4, -3i64..4), 0..5)) {
        let r = RingBuilder::new().laurent("y", 1).build(TruncationPolicy::new(0, 0, 0, 0));
        let mut f = Series::zero(&r);
        for (k, c) in ks {
            f = f + Series::term(&r, &[("y1", k)], int(c)).unwrap();
        }
        let img = Series::image(&r, &[("y1", -1)], int(1)).unwrap();
        let back = f.substitute(&[(0, img.clone())], None).unwrap().substitute(&[(0, img)], None).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn scalar_parse() {
    assert_eq!(freeboundary::series::parse_scalar("-3/4"), Some(frac(-3, 4)));
    assert_eq!(freeboundary::series::parse_scalar("7"), Some(ExactScalar::from_integer(7.into())));
    assert_eq!(freeboundary::series::parse_scalar("1/0"), None);
}
