//! Seeded randomized checks of the kernel's ring structure.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{frac, Mono, Ring, RingBuilder, Series, TruncationPolicy};
use crate::report::VerificationReport;

fn random_series(ring: &Arc<Ring>, rng: &mut ChaCha8Rng) -> Series {
    let n = ring.table.len();
    let mut s = Series::zero(ring);
    for _ in 0..rng.gen_range(0..6) {
        let e: Mono = (0..n).map(|_| rng.gen_range(0i16..3)).collect();
        s = s + Series::monomial(ring, e, frac(rng.gen_range(-5..6), rng.gen_range(1..4)));
    }
    s
}

/// Ring axioms on `cases` random triples, and `expand_reciprocal`
/// multiplied back against its source, in a ring with a square-root symbol.
pub fn kernel_property_suite(cases: usize, seed: u64) -> VerificationReport {
    let ring = RingBuilder::new()
        .qt(&["q"])
        .params(&["a"])
        .alphabet("x", 1)
        .build(TruncationPolicy::new(4, 3, 2, 0));
    let mut rep = VerificationReport::new("kernel-properties").param("seed", seed).with_policy(&ring.policy);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = Series::one(&ring);
    let zero = Series::zero(&ring);
    let mut bad = Vec::new();
    for i in 0..cases {
        let (f, g, h) = (random_series(&ring, &mut rng), random_series(&ring, &mut rng), random_series(&ring, &mut rng));
        let ok = (&(&f + &g) + &h) == (&f + &(&g + &h))
            && (&(&f * &g) * &h) == (&f * &(&g * &h))
            && (&f + &g) == (&g + &f)
            && (&f * &g) == (&g * &f)
            && (&f * &(&g + &h)) == (&(&f * &g) + &(&f * &h))
            && (&f * &one) == f
            && (&f + &zero) == f
            && (&f + &(&zero - &f)).is_zero();
        if !ok {
            bad.push(i);
        }
    }
    rep.check("ring-axioms", bad.is_empty(), json!(bad));
    let dominant: Mono = (0..ring.table.len()).map(|_| 0).collect();
    let mut bad = Vec::new();
    for i in 0..cases {
        let k = rng.gen_range(1i16..4);
        let num = rng.gen_range(-3i64..4);
        let sub = Series::term(&ring, &[("q", k), ("a", 1)], frac(num, 1)).expect("q, a registered")
            + Series::term(&ring, &[("x1", 1)], frac(1, rng.gen_range(1..5))).expect("x1 registered");
        let ok = match Series::expand_reciprocal(&dominant, 1, &sub) {
            Ok(g) => &g * &(&one - &sub) == one,
            Err(_) => false,
        };
        if !ok {
            bad.push(i);
        }
    }
    rep.check("expand-reciprocal", bad.is_empty(), json!(bad));
    rep.set_param("cases", cases);
    rep.finish()
}
