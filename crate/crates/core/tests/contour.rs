use freeboundary::contour::*;
use freeboundary::fbprocess::{Caps, ProcessSpec};
use freeboundary::series::{int, Series};

fn spec(n_vars: usize, qt: u32, x: u32) -> ProcessSpec {
    ProcessSpec::new(n_vars, Caps::new(qt, x, 0)).zero_params()
}

fn z1_closed(like: &Series) -> Series {
    let r = like.ring().clone();
    let q = Series::var(&r, "q").unwrap();
    let t = Series::var(&r, "t").unwrap();
    let one = Series::one(&r);
    ((&one - &q) * (&one - &t)).invert().unwrap()
}

#[test]
fn simpler_formula_small_cases() {
    let s = spec(1, 3, 2);
    let z1 = eval_simpler(1, &s).unwrap();
    assert_eq!(z1, z1_closed(&z1));
    let s0 = spec(0, 3, 0);
    let z1 = eval_simpler(1, &s0).unwrap();
    assert_eq!(z1, z1_closed(&z1));
    let z0 = eval_simpler(0, &s0).unwrap();
    assert_eq!(z0, Series::one(z0.ring()));
}

#[test]
fn delta_factors() {
    let s = spec(0, 2, 0);
    let parts = build_nice_integrands(2, &s, NiceReading::DISPLAYED).unwrap();
    let ring = parts[0].ring.clone();
    assert!(build_delta(&ring, &[], true).unwrap().is_empty());
    let y = ring.var("y1").unwrap();
    let d = build_delta(&ring, &[y], true).unwrap();
    assert_eq!(d.len(), 6);
    assert_eq!(build_delta(&ring, &[y], false).unwrap().len(), 4);
    assert!(d.iter().all(|f| matches!(f.role, Role::Denominator(_))));
}

#[test]
fn orientation_follows_contour() {
    let s = spec(0, 2, 0);
    let ring = build_simpler_integrand(2, &s).unwrap().ring;
    let y1 = Series::var(&ring, "y1").unwrap();
    let y2 = Series::var(&ring, "y2").unwrap();
    let q = Series::var(&ring, "q").unwrap();
    let one = Series::one(&ring);
    // |y| > 1: y^2 dominates 1 - y^2
    let o = orient(&(&one - &(&y1 * &y1))).unwrap();
    assert!(!o.graded);
    assert_eq!(o.sign, -1);
    let o = orient(&(&y1 - &(&q * &y2))).unwrap();
    assert!(o.graded);
    assert!(orient(&(&y1 - &y2)).is_err());
    assert!(orient(&(&one - &q).scale(&int(2))).is_err());
}

#[test]
fn nice_formula_measure_and_odd_normalization() {
    let s = spec(1, 3, 2);
    let derived = eval_nice_formula(1, &s, NiceReading::RESIDUE_DERIVED).unwrap();
    assert_eq!(derived, z1_closed(&derived));
    // n = 1 has no integral: only the 1/2 distinguishes the readings.
    let displayed = eval_nice_formula(1, &s, NiceReading::DISPLAYED).unwrap();
    assert_eq!(displayed, z1_closed(&displayed).scale(&int(2)));
    let z0 = eval_nice_formula(0, &s, NiceReading::DISPLAYED).unwrap();
    assert_eq!(z0, Series::one(z0.ring()));
}

#[test]
fn three_way_small() {
    for (n, n_vars) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
        let rep = cross_check(n, &spec(n_vars, 2, 2)).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
    }
}

#[test]
fn residue_at_q_y1_integrates_to_zero() {
    let rep = residue_spot_check(&spec(1, 2, 2)).unwrap();
    assert!(rep.passed(), "{}", rep.to_json());
}

#[test]
fn structural_symmetries() {
    for n in 1..=4 {
        let rep = nice_structure_check(n, &spec(1, 2, 1)).unwrap();
        assert!(rep.passed(), "n={n} {}", rep.to_json());
    }
    for n in 2..=3 {
        let rep = permutation_check(n, &spec(1, 2, 1)).unwrap();
        assert!(rep.passed(), "n={n} {}", rep.to_json());
    }
}

#[test]
fn each_reading_correction_is_needed() {
    let s = spec(1, 2, 2);
    let a2: Vec<_> = reading_ablation(2, &s).unwrap();
    let a3: Vec<_> = reading_ablation(3, &s).unwrap();
    let needed = |label: &str| {
        !a2.iter().find(|(l, _)| *l == label).unwrap().1 || !a3.iter().find(|(l, _)| *l == label).unwrap().1
    };
    for (label, _) in &a2 {
        assert!(needed(label), "{label}: {a2:?} {a3:?}");
    }
}
