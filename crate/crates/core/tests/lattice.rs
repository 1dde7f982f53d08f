use freeboundary::fbprocess::Caps;
use freeboundary::lattice::*;
use freeboundary::series::{frac, int, ExactScalar, RingBuilder, Series, TruncationPolicy};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_ring() -> std::sync::Arc<freeboundary::series::Ring> {
    RingBuilder::new().qt(&["q", "t"]).params(&["a", "b", "c", "d"]).alphabet("x", 2).build(TruncationPolicy::new(8, 6, 4, 0))
}

#[test]
fn r_table_entries() {
    let (r, t) = (frac(1, 3), frac(1, 7));
    assert_eq!(r_weight(0, 0, 0, 0, &r, &t).unwrap(), int(1));
    assert_eq!(r_weight(1, 1, 1, 1, &r, &t).unwrap(), int(1));
    let den = int(1) - &t * &r;
    assert_eq!(r_weight(1, 0, 0, 1, &r, &t).unwrap(), (int(1) - &t) / &den);
    assert_eq!(r_weight(1, 0, 1, 0, &r, &t).unwrap(), &t * (int(1) - &r) / &den);
    assert_eq!(r_weight(0, 1, 1, 0, &r, &t).unwrap(), (int(1) - &t) * &r / &den);
    assert!(Zero::is_zero(&r_weight(1, 0, 1, 1, &r, &t).unwrap()));
    assert!(Zero::is_zero(&r_weight(0, 0, 0, 1, &r, &t).unwrap()));
}

#[test]
fn stochastic_rows_as_series() {
    let ring = small_ring();
    let v = |s: &str| Series::var(&ring, s).unwrap();
    let ratio = &v("x1") * &v("x2");
    let h = boundary_h(&v("x1"), &v("a"), &v("b")).unwrap();
    let ab = &v("a") * &v("b");
    let rep = stochasticity_verify(&ratio, &v("t"), &h, &ab).unwrap();
    assert!(rep.passed(), "{}", rep.to_json());
    assert_eq!(rep.cases(), 8);
}

#[test]
fn k_table_examples() {
    let x = frac(1, 3);
    let h = boundary_h(&x, &int(0), &int(0)).unwrap();
    assert_eq!(h, int(1) - &x * &x);
    let ab = int(0);
    assert_eq!(k_weight(0, 0, &h, &ab), int(1));
    assert!(Zero::is_zero(&k_weight(0, 1, &h, &ab)));
    assert_eq!(k_weight(1, 0, &h, &ab), int(1) - &x * &x);
    assert_eq!(k_weight(1, 1, &h, &ab), &x * &x);
    let (a, b) = (frac(1, 2), frac(-1, 4));
    let h = boundary_h(&x, &a, &b).unwrap();
    let ab = &a * &b;
    for i in 0..2 {
        let mut row = int(0);
        for j in 0..2 {
            let w = k_weight(i, j, &h, &ab);
            assert!(w >= int(0) && w <= int(1), "K({i};{j}) = {w}");
            row += w;
        }
        assert_eq!(row, int(1));
    }
}

#[test]
fn yang_baxter_all_components() {
    let rep = yang_baxter_verify(5, 2024);
    assert!(rep.passed(), "{}", rep.to_json());
    assert_eq!(rep.cases(), 64);
    let z = int(0);
    for comp in [[0u8; 3], [1u8; 3]] {
        let r = yang_baxter_residual(comp, comp, &frac(1, 2), &frac(1, 3), &frac(1, 5), &frac(1, 7)).unwrap();
        assert_eq!(r, z);
    }
}

#[test]
fn boson_row_examples() {
    let ring = small_ring();
    let x = Series::var(&ring, "x1").unwrap();
    let t = Series::var(&ring, "t").unwrap();
    let one = Series::one(&ring);
    assert_eq!(boson_row(BosonKind::Black, &x, &t, &[], &[], 0, 0), one);
    assert_eq!(boson_row(BosonKind::Black, &x, &t, &[1], &[], 0, 1), x);
    assert_eq!(boson_row(BosonKind::Red, &x, &t, &[], &[1], 1, 0), (&one - &t) * &x);
    // a red row must be fed an arrow from the far left
    assert!(boson_row(BosonKind::Red, &x, &t, &[], &[1], 0, 0).is_zero());
    // flux violation
    assert!(boson_row(BosonKind::Black, &x, &t, &[2], &[], 0, 0).is_zero());
}

#[test]
fn boson_rows_are_skew_hall_littlewood() {
    let rep = boson_equals_skew_hl(6);
    assert!(rep.passed(), "{}", rep.to_json());
}

#[test]
fn boson_exchange() {
    for (w, c) in [(2, 2), (3, 2)] {
        let rep = yb_boson_verify(w, c, Crossing::ADOPTED).unwrap();
        assert!(rep.passed(), "W={w} C={c}: {}", rep.to_json());
    }
}

#[test]
fn boson_exchange_rejects_other_crossings() {
    let (x, y, t) = (frac(1, 3), frac(2, 7), frac(1, 5));
    let profiles: Vec<Vec<u32>> = (0..3).flat_map(|a| (0..3).map(move |b| vec![a, b])).collect();
    for below in [true, false] {
        for ratio in [(1, 1), (1, -1), (-1, 1), (0, 0)] {
            let c = Crossing { black_from_below: below, ratio };
            let mut bad = 0;
            for m in &profiles {
                for n in &profiles {
                    for (j1, j2) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                        let r: ExactScalar = yb_boson_residual(m, n, j1, j2, c, &x, &y, &t).unwrap();
                        bad += usize::from(!Zero::is_zero(&r));
                    }
                }
            }
            assert_eq!(bad == 0, c == Crossing::ADOPTED, "{c:?}: {bad}");
        }
    }
}

#[test]
fn power_shift() {
    let rep = u_power_shift_verify(2, 2);
    assert!(rep.passed(), "{}", rep.to_json());
    let rep = u_power_shift_verify(3, 1);
    assert!(rep.passed(), "{}", rep.to_json());
}

#[test]
fn two_column_boundary_moves() {
    let policy = TruncationPolicy::new(12, 8, 6, 0);
    let rep = boundary_pair_verify(3, policy.clone(), DualCoefficient::SameAsLeft).unwrap();
    assert!(rep.passed(), "{}", rep.to_json());
    let printed = boundary_pair_verify(3, policy, DualCoefficient::Printed).unwrap();
    assert!(!printed.passed());
}

#[test]
fn full_row_boundary_moves() {
    let rep = boundary_row_verify(3, 1, TruncationPolicy::new(8, 6, 6, 0)).unwrap();
    assert!(rep.passed(), "{}", rep.to_json());
    let rep = boundary_row_verify(2, 2, TruncationPolicy::new(8, 6, 6, 0)).unwrap();
    assert!(rep.passed(), "{}", rep.to_json());
}

/// One red triangle then one black, enumerated by hand with a = b = c = d = 0.
#[test]
fn single_row_strip_by_enumeration() {
    let caps = Caps::new(3, 4, 2);
    let dist = formal_at(1, 1, caps, [false; 4], 2).unwrap();
    let ring = dist.entries.values().next().unwrap().ring().clone();
    let v = |s: &str| Series::var(&ring, s).unwrap();
    let one = Series::one(&ring);
    let (q, x) = (v("q"), v("x1"));
    let xx = &x * &x;
    let stay = &one - &(&q * &xx);
    let expect = [
        (("1", 0), &stay * &xx),
        (("0", 0), &stay * &(&one - &xx)),
        (("0", 1), &q * &xx),
    ];
    assert_eq!(dist.entries.len(), 3);
    for ((s, d), w) in expect {
        assert_eq!(dist.get(s, d).unwrap(), &w, "S={s} D={d}");
    }
}

#[test]
fn strip_mass_is_one() {
    let caps = Caps::new(2, 3, 3);
    for (n, l) in [(1, 1), (1, 3), (2, 1), (2, 2)] {
        let d = formal_at(n, l, caps, [true; 4], 2).unwrap();
        let total = d.total().unwrap();
        assert_eq!(total, Series::one(total.ring()), "N={n} L={l}");
    }
    let p = NumericParams::reference().with_rows(2);
    let spec = StripSpec { n: 2, l: 3, mode: StripMode::NumericExact(p) };
    let Distribution::Exact(d) = quasi_open_distribution(&spec, 3).unwrap() else { panic!("numeric mode") };
    let total = d.total().unwrap();
    assert!(Zero::is_zero(total.root_part()) && total.rational_part().is_one(), "{total}");
}

#[test]
fn deep_triangles_vanish_at_q_zero() {
    let caps = Caps::new(3, 3, 3);
    let d = stabilized_formal(2, caps, [true; 4], 1, 2).unwrap();
    let ring = d.entries.values().next().unwrap().ring().clone();
    let (q, sq) = (ring.var("q").unwrap(), ring.var("s_q").unwrap());
    for ((_, dv), w) in &d.entries {
        let q0 = w.filter(|e| e[q] == 0 && e[sq] == 0);
        assert!(*dv == 0 || q0.is_zero(), "D={dv} survives q = 0");
    }
}

#[test]
fn formal_length_stabilizes() {
    let caps = Caps::new(2, 2, 2);
    let d = stabilized_formal(2, caps, [true; 4], 1, 2).unwrap();
    assert!(d.l <= caps.qt as usize + 1);
    let longer = formal_at(2, d.l + 2, caps, [true; 4], 2).unwrap();
    for (k, w) in &d.entries {
        assert_eq!(longer.entries.get(k).unwrap(), w);
    }
    assert_eq!(parity_violations(&d), 0);
}

#[test]
fn matching_one_row() {
    let rep = theorem_matching_verify(1, Caps::new(2, 2, 2), 2).unwrap();
    assert!(rep.passed(), "{}", rep.to_json());
}

#[test]
fn matching_two_rows() {
    let rep = theorem_matching_verify(2, Caps::new(2, 2, 2), 2).unwrap();
    assert!(rep.passed(), "{}", rep.to_json());
}

#[test]
fn matching_with_zero_parameters() {
    let caps = Caps::new(2, 2, 0);
    let lattice = stabilized_formal(1, caps, [true; 4], 1, 1).unwrap();
    let res = matching_residuals(1, caps, 1, freeboundary::fbprocess::SupportConvention::Forward, ChiForm::PartitionSum, &lattice)
        .unwrap();
    assert!(res.values().all(|r| r.is_zero()));
    let res = matching_residuals(1, caps, 1, freeboundary::fbprocess::SupportConvention::Forward, ChiForm::Displayed, &lattice)
        .unwrap();
    assert!(res.values().any(|r| !r.is_zero()));
}

#[test]
fn dump_keys() {
    let d = formal_at(1, 1, Caps::new(1, 2, 0), [false; 4], 1).unwrap();
    let j = d.to_json();
    let keys: Vec<&String> = j.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["0/0", "0/1", "1/0"]);
    let p = NumericParams::reference().with_rows(1);
    let lp = LocalParams::<Quad>::from_numeric(&p).unwrap();
    let d = strip_dp(&lp, 1, 1).unwrap();
    let j = d.to_json();
    assert!(j.as_object().unwrap().values().all(|v| v.is_string()));
}

#[test]
fn sampler_is_reproducible() {
    let p = NumericParams::reference();
    let cfg = SamplerConfig::default();
    let a = mc_sample(&p, 99, 10, &cfg).unwrap();
    let b = mc_sample(&p, 99, 10, &cfg).unwrap();
    assert_eq!(a.outcomes, b.outcomes);
    assert_eq!(a.outcomes.len(), 10);
    let c = mc_sample(&p, 100, 10, &cfg).unwrap();
    assert_ne!(a.outcomes, c.outcomes);
    let empty = mc_sample(&p, 99, 0, &cfg).unwrap();
    assert!(empty.outcomes.is_empty() && empty.empirical(3).is_empty());
}

#[test]
fn sampler_rejects_non_stochastic() {
    let mut p = NumericParams::reference();
    p.b = frac(1, 4);
    let err = mc_sample(&p, 1, 10, &SamplerConfig::default()).unwrap_err();
    assert!(err.to_string().contains("ab"), "{err}");
    let mut p = NumericParams::reference();
    p.q = int(1);
    assert!(mc_sample(&p, 1, 10, &SamplerConfig::default()).is_err());
}

#[test]
fn sampler_matches_exact_distribution() {
    let p = NumericParams::reference().with_rows(2);
    let rep = sampler_tv_verify(&p, 5, 40_000, 3, 0.02, &SamplerConfig::default()).unwrap();
    assert!(rep.passed(), "{}", rep.to_json());
}

#[test]
fn open_chain_needs_iterations() {
    let p = NumericParams::reference().with_rows(2);
    assert!(open_chain_frequencies(&p, 0, 0, 1).is_err());
    let a = open_chain_frequencies(&p, 0, 50_000, 1).unwrap();
    let b = open_chain_frequencies(&p, 3, 50_000, 2).unwrap();
    assert!(total_variation(&a, &b) < 0.03);
}

fn rational() -> impl Strategy<Value = ExactScalar> {
    (1i64..30, 1i64..30).prop_map(|(n, d)| frac(n, d + n))
}

proptest! {
    #[test]
    fn r_rows_sum_to_one(r in rational(), t in rational()) {
        prop_assume!(!(&r * &t).is_one());
        for (i, j) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
            let mut s = int(0);
            for k in 0..2u8 {
                for l in 0..2u8 {
                    let w = r_weight(i, j, k, l, &r, &t).unwrap();
                    if i + j != k + l {
                        prop_assert!(Zero::is_zero(&w));
                    }
                    s += w;
                }
            }
            prop_assert_eq!(s, int(1));
        }
    }

    #[test]
    fn quad_field_inverse(a in -20i64..20, b in 1i64..20, d in 2i64..12) {
        let x = Quad::new(int(a), frac(1, b), int(d));
        prop_assume!(!Quad::is_zero(&x));
        let y = Weight::recip(&x).unwrap();
        let one = x.one_like();
        prop_assert_eq!(x.mul(&y), one);
    }

    #[test]
    fn dual_rows_sum_to_one(x in rational(), c in rational(), d in rational()) {
        let d = -d;
        let h = boundary_h(&x, &c, &d).unwrap();
        let cd = &c * &d;
        for i in 0..2 {
            prop_assert_eq!(k_dual_weight(i, 0, &h, &cd) + k_dual_weight(i, 1, &h, &cd), int(1));
        }
    }
}
