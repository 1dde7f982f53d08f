//! Seeded Monte Carlo sampling of the quasi-open model in the stochastic
//! regime, its comparison with the exact distribution, and the `q → 1`
//! comparison with the open chain.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::quad::Quad;
use super::strip::{bits_to_string, strip_dp, LocalParams, NumericParams, Op, Triangle};
use super::LatticeError;
use crate::report::VerificationReport;
use crate::series::ExactScalar;

/// Stopping rule and parallelism of the sampler.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SamplerConfig {
    /// The strip is cut at the smallest `L` whose all-horizontal continuation
    /// below has probability `> 1 - epsilon`.
    pub epsilon: f64,
    /// Independent streams; replica `i` draws from stream `i` of the seed.
    pub replicas: usize,
    /// Hard bound on `L`.
    pub max_l: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { epsilon: 2f64.powi(-32), replicas: 4, max_l: 1 << 16 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Outcome {
    /// Bit `i` is the exit of line `i + 1`.
    pub s: u32,
    pub h: u32,
    pub v: u32,
}

impl Outcome {
    /// `S H V` on one line.
    pub fn line(&self, n: usize) -> String {
        format!("{} {} {}", bits_to_string(self.s, n), self.h, self.v)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleRun {
    pub n: usize,
    pub l: usize,
    pub epsilon: f64,
    pub seed: u64,
    /// Samples whose deepest triangle pair left the ground state.
    pub deep_deviations: usize,
    pub outcomes: Vec<Outcome>,
}

impl SampleRun {
    /// Frequencies of `(S, min(H + V, n_max + 1))`.
    pub fn empirical(&self, n_max: u32) -> BTreeMap<(String, u32), f64> {
        let mut out = BTreeMap::new();
        if self.outcomes.is_empty() {
            return out;
        }
        let w = 1.0 / self.outcomes.len() as f64;
        for o in &self.outcomes {
            let d = (o.h + o.v).min(n_max + 1);
            *out.entry((bits_to_string(o.s, self.n), d)).or_insert(0.0) += w;
        }
        out
    }

    pub fn s_frequencies(&self) -> BTreeMap<String, f64> {
        let mut out = BTreeMap::new();
        let w = 1.0 / self.outcomes.len().max(1) as f64;
        for o in &self.outcomes {
            *out.entry(bits_to_string(o.s, self.n)).or_insert(0.0) += w;
        }
        out
    }
}

/// Probability that triangle `k` maps its ground-state input to the ground
/// state: all boundary vertices pass the arrow and every crossing keeps it
/// horizontal.
fn ground_stay(tri: &Triangle<f64>) -> f64 {
    let n = tri.k.len();
    let mut p = 1.0;
    for i in 0..n {
        p *= if tri.red { tri.k[i][0][1] } else { tri.k[i][1][0] };
        for j in 0..n {
            let crosses = if tri.red { i < j } else { j < i };
            if crosses {
                p *= tri.r[i][j][2];
            }
        }
    }
    p
}

fn check_unit(tri: &Triangle<f64>, k: usize) -> Result<(), LatticeError> {
    let ok = |w: f64| (-1e-12..=1.0 + 1e-12).contains(&w);
    for (i, tab) in tri.k.iter().enumerate() {
        for (a, row) in tab.iter().enumerate() {
            for (b, &w) in row.iter().enumerate() {
                if !ok(w) {
                    return Err(LatticeError::NonStochastic(format!("boundary weight K({a};{b}) = {w} of line {} in triangle {k}", i + 1)));
                }
            }
        }
    }
    for (i, row) in tri.r.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if let Some(w) = e.iter().find(|w| !ok(**w)) {
                return Err(LatticeError::NonStochastic(format!("crossing weight {w} of lines {}, {} in triangle {k}", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// Smallest `L` whose continuation below stays in the ground state with
/// probability `> 1 - epsilon`, i.e. `∏_{k ≥ 2L} p_k > 1 - epsilon`.
pub fn adaptive_l(p: &LocalParams<f64>, cfg: &SamplerConfig) -> Result<usize, LatticeError> {
    // log of the tail product, accumulated from far away inwards
    let mut logs = Vec::new();
    let mut k = 0usize;
    loop {
        let lp = ground_stay(&Triangle::new(p, k)?).ln();
        logs.push(lp);
        if k > 8 && lp.abs() < 1e-20 {
            break;
        }
        k += 1;
        if k > 4 * cfg.max_l {
            return Err(LatticeError::Invalid(format!("ground state does not settle within L = {}", cfg.max_l)));
        }
    }
    let target = (1.0 - cfg.epsilon).ln();
    let mut tail = 0.0;
    let mut l = logs.len().div_ceil(2);
    while l > 0 {
        let t = tail + logs.get(2 * l - 1).copied().unwrap_or(0.0) + logs.get(2 * l - 2).copied().unwrap_or(0.0);
        if t <= target {
            break;
        }
        tail = t;
        l -= 1;
    }
    let l = l.max(1);
    if l > cfg.max_l {
        return Err(LatticeError::Invalid(format!("adaptive L = {l} exceeds the bound {}", cfg.max_l)));
    }
    Ok(l)
}

/// Triangles `0..2L` with their sweep orders, checked to be stochastic.
fn build(p: &LocalParams<f64>, l: usize) -> Result<Vec<(Triangle<f64>, Vec<Op>)>, LatticeError> {
    let mut out = Vec::with_capacity(2 * l);
    for k in 0..2 * l {
        let tri = Triangle::new(p, k)?;
        check_unit(&tri, k)?;
        let ops = tri.ops();
        out.push((tri, ops));
    }
    Ok(out)
}

/// One draw of the vertex `op`.
fn step(tri: &Triangle<f64>, op: Op, bits: u32, rng: &mut ChaCha8Rng) -> u32 {
    let u: f64 = rng.gen();
    match op {
        Op::K(i) => {
            let inb = ((bits >> i) & 1) as usize;
            let out = if u < tri.k[i][inb][0] { 0 } else { 1 };
            (bits & !(1 << i)) | (out << i)
        }
        Op::R { vertical, horizontal } => {
            let b = (bits >> vertical) & 1;
            let l = (bits >> horizontal) & 1;
            if b == l {
                return bits;
            }
            let e = &tri.r[horizontal][vertical];
            let clear = bits & !(1 << vertical) & !(1 << horizontal);
            let up = clear | (1 << vertical);
            let right = clear | (1 << horizontal);
            if b == 1 {
                if u < e[0] {
                    up
                } else {
                    right
                }
            } else if u < e[2] {
                right
            } else {
                up
            }
        }
    }
}

/// Runs the triangles from the empty bottom; returns the outcome and whether
/// the deepest pair left the ground state.
fn draw(tris: &[(Triangle<f64>, Vec<Op>)], n: usize, rng: &mut ChaCha8Rng) -> (Outcome, bool) {
    let full = (1u32 << n) - 1;
    let (mut bits, mut h, mut v) = (0u32, 0u32, 0u32);
    let mut deep = false;
    for k in (0..tris.len()).rev() {
        let (tri, ops) = &tris[k];
        if k + 1 < tris.len() {
            if tri.red {
                v += bits.count_ones();
            } else {
                h += n as u32 - bits.count_ones();
            }
        }
        for &op in ops {
            bits = step(tri, op, bits, rng);
        }
        if k + 2 >= tris.len() {
            let ground = if tri.red { full } else { 0 };
            deep |= bits != ground;
        }
    }
    (Outcome { s: bits, h, v }, deep)
}

fn run_with(p: &LocalParams<f64>, n: usize, l: usize, seed: u64, count: usize, cfg: &SamplerConfig) -> Result<SampleRun, LatticeError> {
    let tris = build(p, l)?;
    let replicas = cfg.replicas.max(1);
    let shares: Vec<usize> = (0..replicas).map(|i| count / replicas + usize::from(i < count % replicas)).collect();
    let parts: Vec<(Vec<Outcome>, usize)> = std::thread::scope(|scope| {
        let handles: Vec<_> = shares
            .iter()
            .enumerate()
            .map(|(i, &share)| {
                let tris = &tris;
                scope.spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(i as u64);
                    let mut out = Vec::with_capacity(share);
                    let mut deep = 0;
                    for _ in 0..share {
                        let (o, d) = draw(tris, n, &mut rng);
                        out.push(o);
                        deep += usize::from(d);
                    }
                    (out, deep)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sampler replica")).collect()
    });
    let mut outcomes = Vec::with_capacity(count);
    let mut deep_deviations = 0;
    for (o, d) in parts {
        outcomes.extend(o);
        deep_deviations += d;
    }
    Ok(SampleRun { n, l, epsilon: cfg.epsilon, seed, deep_deviations, outcomes })
}

/// `count` seeded samples of `(S, H, V)` with adaptive `L`.
pub fn mc_sample(params: &NumericParams, seed: u64, count: usize, cfg: &SamplerConfig) -> Result<SampleRun, LatticeError> {
    params.validate_ranges().map_err(LatticeError::NonStochastic)?;
    let p = LocalParams::<f64>::from_numeric(params);
    let l = adaptive_l(&p, cfg)?;
    run_with(&p, params.rows(), l, seed, count, cfg)
}

/// Exact distribution of `(S, min(H + V, n_max + 1))` in `Q(√q)` at length `l`,
/// as floats.
pub fn exact_numeric(params: &NumericParams, l: usize, n_max: u32) -> Result<BTreeMap<(String, u32), f64>, LatticeError> {
    let lp = LocalParams::<Quad>::from_numeric(params)?;
    let dist = strip_dp(&lp, l, n_max)?;
    Ok(dist.entries.iter().map(|(k, w)| (k.clone(), w.to_f64())).collect())
}

pub fn total_variation<K: Ord + Clone>(a: &BTreeMap<K, f64>, b: &BTreeMap<K, f64>) -> f64 {
    let mut keys: Vec<&K> = a.keys().chain(b.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.iter().map(|k| (a.get(k).copied().unwrap_or(0.0) - b.get(k).copied().unwrap_or(0.0)).abs()).sum::<f64>() / 2.0
}

/// Sampler against the exact DP at the sampler's `L`, plus a rerun for
/// bit-identity.
pub fn sampler_tv_verify(params: &NumericParams, seed: u64, count: usize, n_max: u32, tol: f64, cfg: &SamplerConfig) -> Result<VerificationReport, LatticeError> {
    let mut rep = VerificationReport::new("sampler-tv")
        .param("N", params.rows())
        .param("seed", seed)
        .param("count", count)
        .param("n_max", n_max)
        .param("epsilon", cfg.epsilon)
        .param("replicas", cfg.replicas)
        .param("tolerance", tol);
    let run = mc_sample(params, seed, count, cfg)?;
    rep.set_param("L", run.l);
    rep.set_param("deep_deviations", run.deep_deviations);
    let exact = exact_numeric(params, run.l, n_max)?;
    let mass: f64 = exact.values().sum();
    rep.check_numeric("exact-mass", mass - 1.0, 1e-9);
    let tv = total_variation(&run.empirical(n_max), &exact);
    rep.set_param("tv", tv);
    rep.check("tv", tv < tol, json!(tv));
    let again = mc_sample(params, seed, count, cfg)?;
    rep.check("bit-identical-rerun", again.outcomes == run.outcomes, json!(null));
    Ok(rep.finish())
}

/// The open chain: one step is a red then a black triangle at `q = 1`.
pub fn open_chain_frequencies(params: &NumericParams, start: u32, iterations: usize, seed: u64) -> Result<BTreeMap<String, f64>, LatticeError> {
    if iterations == 0 {
        return Err(LatticeError::Invalid("the open chain needs at least one iteration".into()));
    }
    let mut unit = params.clone();
    unit.q = ExactScalar::from_integer(1.into());
    let p = LocalParams::<f64>::from_numeric(&unit);
    let n = params.rows();
    let red = Triangle::new(&p, 1)?;
    let black = Triangle::new(&p, 0)?;
    check_unit(&red, 1)?;
    check_unit(&black, 0)?;
    for (i, x) in params.x.iter().enumerate() {
        let xf = x.to_f64().unwrap_or(f64::NAN);
        let h = |u: f64, v: f64| (1.0 - xf * xf) / ((1.0 + u * xf) * (1.0 + v * xf));
        let f = |s: &ExactScalar| s.to_f64().unwrap_or(f64::NAN);
        for hv in [h(f(&params.a), f(&params.b)), h(f(&params.c), f(&params.d))] {
            if !(hv > 0.0 && hv < 1.0) {
                return Err(LatticeError::NonStochastic(format!("degenerate boundary: h(x{}) = {hv}", i + 1)));
            }
        }
    }
    let (rops, bops) = (red.ops(), black.ops());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let burn = iterations / 10;
    let mut bits = start;
    let mut counts: BTreeMap<String, f64> = BTreeMap::new();
    for it in 0..burn + iterations {
        for &op in &rops {
            bits = step(&red, op, bits, &mut rng);
        }
        for &op in &bops {
            bits = step(&black, op, bits, &mut rng);
        }
        if it >= burn {
            *counts.entry(bits_to_string(bits, n)).or_insert(0.0) += 1.0 / iterations as f64;
        }
    }
    Ok(counts)
}

/// Exit pattern of the quasi-open sampler at each `q` against the long-run
/// frequencies of the open chain. Distances are reported, not asserted; the
/// report fails only on the two-start uniqueness sanity check.
pub fn stationary_cross_check(
    params: &NumericParams,
    q_values: &[ExactScalar],
    count: usize,
    iterations: usize,
    seed: u64,
    cfg: &SamplerConfig,
) -> Result<VerificationReport, LatticeError> {
    let n = params.rows();
    let mut rep = VerificationReport::new("stationary-cross-check")
        .param("N", n)
        .param("count", count)
        .param("iterations", iterations)
        .param("seed", seed)
        .param("epsilon", cfg.epsilon);
    let from_empty = open_chain_frequencies(params, 0, iterations, seed)?;
    let from_full = open_chain_frequencies(params, (1 << n) - 1, iterations, seed.wrapping_add(1))?;
    let spread = total_variation(&from_empty, &from_full);
    rep.set_param("two_start_tv", spread);
    rep.check("two-start-agreement", spread < 0.05, json!(spread));
    let mut tvs = Vec::new();
    for q in q_values {
        let run = mc_sample(&params.clone().with_q(q.clone()), seed, count, cfg)?;
        let tv = total_variation(&run.s_frequencies(), &from_empty);
        rep.set_param(&format!("tv_q={q}"), tv);
        rep.set_param(&format!("L_q={q}"), run.l);
        tvs.push(tv);
    }
    let decreasing = tvs.windows(2).all(|w| w[1] <= w[0]);
    rep.note(format!("TV to the open-chain frequencies {tvs:?}; decreasing in q: {decreasing}"));
    Ok(rep.finish())
}
