//! The quasi-open six-vertex model on a strip of `2L` triangles and its exact
//! signed distribution of the exit pattern `S` and the deviation `H + V`.
//!
//! Triangle `k` (`k = 0` is the exit triangle) carries modulation `q^{k/2}`.
//! Even `k` are upper-left triangles with the `(a, b)` boundary, odd `k`
//! lower-right triangles with the `(c, d)` boundary. A line of triangle `k`
//! carries `q^{k/2} x_i` vertically and its reciprocal horizontally, so a
//! crossing of lines `i, j` has ratio `q^k x_i x_j` and the boundary vertex
//! of line `i` sees `h(q^{k/2} x_i)`. The red boundary uses `c̃ = c/√q`,
//! `d̃ = d/√q`, so triangle `2j + 1` sees `(1 + c q^j x)(1 + d q^j x)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::quad::Quad;
use super::LatticeError;
use super::weights::{boundary_h, k_dual_weight, k_weight, r_weight, Weight};
use crate::fbprocess::Caps;
use crate::series::{ExactScalar, Ring, RingBuilder, Series, SeriesError};

/// Exact numeric parameters in the variables of the process: the red
/// boundary is fed `c/√q`, `d/√q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericParams {
    pub q: ExactScalar,
    pub t: ExactScalar,
    pub a: ExactScalar,
    pub b: ExactScalar,
    pub c: ExactScalar,
    pub d: ExactScalar,
    pub x: Vec<ExactScalar>,
}

impl NumericParams {
    /// The parameter set used by the sampler checks.
    pub fn reference() -> Self {
        let f = crate::series::frac;
        NumericParams {
            q: f(1, 2),
            t: f(1, 3),
            a: f(1, 2),
            b: f(-1, 4),
            c: f(1, 3),
            d: f(-1, 5),
            x: vec![f(1, 2), f(1, 3), f(1, 4)],
        }
    }

    pub fn with_q(mut self, q: ExactScalar) -> Self {
        self.q = q;
        self
    }

    pub fn with_rows(mut self, n: usize) -> Self {
        self.x.truncate(n);
        self
    }

    pub fn rows(&self) -> usize {
        self.x.len()
    }

    /// Ranges for sampling: `0 < q, t < 1`, `x_i ∈ (0, 1)`, `ab ≤ 0`, `cd ≤ 0`.
    /// Local weights are checked separately when the strip is built.
    pub fn validate_ranges(&self) -> Result<(), String> {
        let unit = |v: &ExactScalar| v.is_positive() && *v < ExactScalar::one();
        if !unit(&self.q) {
            return Err(format!("q = {} must lie in (0, 1)", self.q));
        }
        if !(unit(&self.t) || Zero::is_zero(&self.t)) {
            return Err(format!("t = {} must lie in [0, 1)", self.t));
        }
        for (i, x) in self.x.iter().enumerate() {
            if !unit(x) {
                return Err(format!("x{} = {} must lie in (0, 1)", i + 1, x));
            }
        }
        if (&self.a * &self.b).is_positive() {
            return Err(format!("ab = {} must be ≤ 0", &self.a * &self.b));
        }
        if (&self.c * &self.d).is_positive() {
            return Err(format!("cd = {} must be ≤ 0", &self.c * &self.d));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StripMode {
    /// Every parameter is a ring variable; `c`, `d` stand for `c̃`, `d̃`.
    /// `symbolic` selects which of `a, b, c, d` are variables (the rest are 0).
    FormalSeries { caps: Caps, symbolic: [bool; 4] },
    /// Exact values in `Q(√q)`.
    NumericExact(NumericParams),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripSpec {
    /// Number of rows `N`.
    pub n: usize,
    /// Number of triangle pairs; the strip has `2L` triangles.
    pub l: usize,
    pub mode: StripMode,
}

/// Values of every local parameter in one arithmetic.
#[derive(Clone, Debug)]
pub struct LocalParams<W> {
    /// `√q`.
    pub sq: W,
    pub t: W,
    pub a: W,
    pub b: W,
    /// Already `c̃`, `d̃`.
    pub c: W,
    pub d: W,
    pub x: Vec<W>,
}

impl LocalParams<f64> {
    pub fn from_numeric(p: &NumericParams) -> Self {
        use num_traits::ToPrimitive;
        let f = |v: &ExactScalar| v.to_f64().unwrap_or(f64::NAN);
        let sq = f(&p.q).sqrt();
        LocalParams {
            sq,
            t: f(&p.t),
            a: f(&p.a),
            b: f(&p.b),
            c: f(&p.c) / sq,
            d: f(&p.d) / sq,
            x: p.x.iter().map(f).collect(),
        }
    }
}

impl LocalParams<Quad> {
    pub fn from_numeric(p: &NumericParams) -> Result<Self, SeriesError> {
        let r = |v: &ExactScalar| Quad::rational(v.clone(), p.q.clone());
        let sq = Quad::sqrt_of(p.q.clone());
        let inv = Weight::recip(&sq)?;
        Ok(LocalParams {
            t: r(&p.t),
            a: r(&p.a),
            b: r(&p.b),
            c: r(&p.c).mul(&inv),
            d: r(&p.d).mul(&inv),
            x: p.x.iter().map(r).collect(),
            sq,
        })
    }
}

/// Ring `q, s_q, t, s_t, a, b, c, d, x1..xN, z`, the same layout the process
/// uses, so lattice and process series compare directly.
pub fn strip_ring(n: usize, caps: Caps) -> Arc<Ring> {
    RingBuilder::new()
        .qt(&["q", "t"])
        .params(&["a", "b", "c", "d"])
        .alphabet("x", n)
        .var("z", crate::series::DegreeGroup::Z)
        .build(caps.policy())
}

impl LocalParams<Series> {
    pub fn formal(ring: &Arc<Ring>, n: usize, symbolic: [bool; 4]) -> Self {
        let v = |s: &str| Series::var(ring, s).expect("registered");
        let p = |i: usize, s: &str| if symbolic[i] { v(s) } else { Series::zero(ring) };
        LocalParams {
            sq: v("s_q"),
            t: v("t"),
            a: p(0, "a"),
            b: p(1, "b"),
            c: p(2, "c"),
            d: p(3, "d"),
            x: (1..=n).map(|i| v(&format!("x{i}"))).collect(),
        }
    }
}

/// Local tables of one triangle.
pub struct Triangle<W> {
    pub red: bool,
    /// `r[i][j]` for `i > j` (black) or `i < j` (red): the four flux-moving
    /// entries `(1,0,1,0), (1,0,0,1), (0,1,0,1), (0,1,1,0)`; the rest are 1.
    pub(crate) r: Vec<Vec<[W; 4]>>,
    /// `k[i][in][out]`.
    pub(crate) k: Vec<[[W; 2]; 2]>,
}

impl<W: Weight> Triangle<W> {
    pub fn new(p: &LocalParams<W>, k: usize) -> Result<Self, SeriesError> {
        let n = p.x.len();
        let z = p.sq.pow(k as u32);
        let red = k % 2 == 1;
        let mut r = vec![vec![]; n];
        for i in 0..n {
            for j in 0..n {
                let ratio = z.mul(&z).mul(&p.x[i]).mul(&p.x[j]);
                let entry = [
                    r_weight(1, 0, 1, 0, &ratio, &p.t)?,
                    r_weight(1, 0, 0, 1, &ratio, &p.t)?,
                    r_weight(0, 1, 0, 1, &ratio, &p.t)?,
                    r_weight(0, 1, 1, 0, &ratio, &p.t)?,
                ];
                r[i].push(entry);
            }
        }
        let mut kt = Vec::with_capacity(n);
        for i in 0..n {
            let zx = z.mul(&p.x[i]);
            let tab = if red {
                let h = boundary_h(&zx, &p.c, &p.d)?;
                let cd = p.c.mul(&p.d);
                [
                    [k_dual_weight(0, 0, &h, &cd), k_dual_weight(0, 1, &h, &cd)],
                    [k_dual_weight(1, 0, &h, &cd), k_dual_weight(1, 1, &h, &cd)],
                ]
            } else {
                let h = boundary_h(&zx, &p.a, &p.b)?;
                let ab = p.a.mul(&p.b);
                [[k_weight(0, 0, &h, &ab), k_weight(0, 1, &h, &ab)], [k_weight(1, 0, &h, &ab), k_weight(1, 1, &h, &ab)]]
            };
            kt.push(tab);
        }
        Ok(Triangle { red, r, k: kt })
    }

    /// Vertex operations in sweep order.
    pub fn ops(&self) -> Vec<Op> {
        let n = self.k.len();
        let mut out = Vec::new();
        for row in 0..n {
            if self.red {
                out.push(Op::K(row));
                for col in row + 1..n {
                    out.push(Op::R { vertical: col, horizontal: row });
                }
            } else {
                for col in 0..row {
                    out.push(Op::R { vertical: col, horizontal: row });
                }
                out.push(Op::K(row));
            }
        }
        out
    }

    /// Outcomes of one vertex: `(new frontier, weight)` pairs.
    pub fn apply(&self, op: Op, bits: u32) -> Vec<(u32, W)> {
        match op {
            Op::K(i) => {
                let inb = ((bits >> i) & 1) as usize;
                (0..2u32).map(|o| ((bits & !(1 << i)) | (o << i), self.k[i][inb][o as usize].clone())).collect()
            }
            Op::R { vertical, horizontal } => {
                let b = (bits >> vertical) & 1;
                let l = (bits >> horizontal) & 1;
                let clear = bits & !(1 << vertical) & !(1 << horizontal);
                let set = |top: u32, right: u32| clear | (top << vertical) | (right << horizontal);
                let e = &self.r[horizontal][vertical];
                match (b, l) {
                    (0, 0) | (1, 1) => vec![(bits, e[0].one_like())],
                    (1, 0) => vec![(set(1, 0), e[0].clone()), (set(0, 1), e[1].clone())],
                    _ => vec![(set(0, 1), e[2].clone()), (set(1, 0), e[3].clone())],
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    K(usize),
    R { vertical: usize, horizontal: usize },
}

/// Signed distribution over `(S, D)` with `D = min(H + V, n_max + 1)`.
#[derive(Clone, Debug)]
pub struct SignedDistribution<W> {
    pub n: usize,
    pub n_max: u32,
    pub l: usize,
    /// Keyed by `S` as a `0/1` string (row 1 first) and `D`.
    pub entries: BTreeMap<(String, u32), W>,
}

impl<W: Weight> SignedDistribution<W> {
    pub fn get(&self, s: &str, d: u32) -> Option<&W> {
        self.entries.get(&(s.to_string(), d))
    }

    pub fn total(&self) -> Option<W> {
        let mut it = self.entries.values();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, w| acc.add(w)))
    }

    /// `P(S = s, H + V ≤ n_max)` summed over `D ≤ n_max`, as a map keyed by `S`.
    pub fn s_marginal(&self) -> BTreeMap<String, W> {
        let mut out: BTreeMap<String, W> = BTreeMap::new();
        for ((s, _), w) in &self.entries {
            let e = out.entry(s.clone()).or_insert_with(|| w.zero_like());
            *e = e.add(w);
        }
        out
    }
}

/// A value that can be written into a distribution dump.
pub trait DumpValue {
    fn dump(&self) -> Value;
}

impl DumpValue for Series {
    fn dump(&self) -> Value {
        self.dump_json()
    }
}

impl DumpValue for ExactScalar {
    fn dump(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl DumpValue for Quad {
    fn dump(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl DumpValue for f64 {
    fn dump(&self) -> Value {
        json!(self)
    }
}

impl<W: DumpValue> SignedDistribution<W> {
    /// `{"S/D": value}` with the overflow cell written as `D = n_max + 1`.
    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        for ((s, d), w) in &self.entries {
            map.insert(format!("{s}/{d}"), w.dump());
        }
        Value::Object(map)
    }
}

pub fn bits_to_string(bits: u32, n: usize) -> String {
    (0..n).map(|i| if (bits >> i) & 1 == 1 { '1' } else { '0' }).collect()
}

/// Exact transfer over `2L` triangles from the empty bottom boundary.
pub fn strip_dp<W: Weight>(p: &LocalParams<W>, l: usize, n_max: u32) -> Result<SignedDistribution<W>, SeriesError> {
    let n = p.x.len();
    let cells = n_max as usize + 2;
    let width = 1usize << n;
    let mut state: Vec<Option<W>> = vec![None; width * cells];
    state[0] = Some(p.t.one_like());
    for k in (0..2 * l).rev() {
        let tri = Triangle::new(p, k)?;
        // junction into this triangle from the one below it
        if k + 1 < 2 * l {
            let mut next: Vec<Option<W>> = vec![None; width * cells];
            for bits in 0..width {
                let add = if tri.red { (bits as u32).count_ones() } else { n as u32 - (bits as u32).count_ones() };
                for dv in 0..cells {
                    if let Some(w) = state[bits * cells + dv].take() {
                        let nd = (dv as u32 + add).min(n_max + 1) as usize;
                        let cell = &mut next[bits * cells + nd];
                        *cell = Some(match cell.take() {
                            Some(c) => c.add(&w),
                            None => w,
                        });
                    }
                }
            }
            state = next;
        }
        for op in tri.ops() {
            let mut next: Vec<Option<W>> = vec![None; width * cells];
            for bits in 0..width {
                for dv in 0..cells {
                    let Some(w) = &state[bits * cells + dv] else { continue };
                    for (nb, vw) in tri.apply(op, bits as u32) {
                        if vw.is_zero() {
                            continue;
                        }
                        let cell = &mut next[nb as usize * cells + dv];
                        let add = w.mul(&vw);
                        *cell = Some(match cell.take() {
                            Some(c) => c.add(&add),
                            None => add,
                        });
                    }
                }
            }
            state = next;
        }
    }
    let mut entries = BTreeMap::new();
    for bits in 0..width {
        for dv in 0..cells {
            if let Some(w) = &state[bits * cells + dv] {
                if !w.is_zero() {
                    entries.insert((bits_to_string(bits as u32, n), dv as u32), w.clone());
                }
            }
        }
    }
    Ok(SignedDistribution { n, n_max, l, entries })
}

/// Either arithmetic's distribution, as produced for a [`StripSpec`].
#[derive(Clone, Debug)]
pub enum Distribution {
    Formal(SignedDistribution<Series>),
    Exact(SignedDistribution<Quad>),
}

impl Distribution {
    pub fn to_json(&self) -> Value {
        match self {
            Distribution::Formal(d) => d.to_json(),
            Distribution::Exact(d) => d.to_json(),
        }
    }

    pub fn l(&self) -> usize {
        match self {
            Distribution::Formal(d) => d.l,
            Distribution::Exact(d) => d.l,
        }
    }
}

fn same_entries(a: &SignedDistribution<Series>, b: &SignedDistribution<Series>) -> bool {
    a.entries.len() == b.entries.len()
        && a.entries.iter().all(|(k, v)| b.entries.get(k).is_some_and(|w| (v - w).is_zero()))
}

/// Formal distribution with `L` increased from `spec.l` until two consecutive
/// lengths agree within caps. Returns the stabilized distribution.
pub fn stabilized_formal(n: usize, caps: Caps, symbolic: [bool; 4], start_l: usize, n_max: u32) -> Result<SignedDistribution<Series>, LatticeError> {
    let ring = strip_ring(n, caps);
    let p = LocalParams::formal(&ring, n, symbolic);
    let limit = start_l.max(1) + 2 * caps.qt as usize + 4;
    let mut prev = strip_dp(&p, start_l.max(1), n_max)?;
    for l in start_l.max(1) + 1..=limit {
        let cur = strip_dp(&p, l, n_max)?;
        if same_entries(&prev, &cur) {
            return Ok(prev);
        }
        prev = cur;
    }
    Err(LatticeError::NotStabilized(limit))
}

/// The distribution for a spec. Formal mode stabilizes in `L` starting at
/// `spec.l`; numeric mode uses `spec.l` as given.
pub fn quasi_open_distribution(spec: &StripSpec, n_max: u32) -> Result<Distribution, LatticeError> {
    match &spec.mode {
        StripMode::FormalSeries { caps, symbolic } => {
            Ok(Distribution::Formal(stabilized_formal(spec.n, *caps, *symbolic, spec.l, n_max)?))
        }
        StripMode::NumericExact(p) => {
            let lp = LocalParams::<Quad>::from_numeric(&p.clone().with_rows(spec.n))?;
            Ok(Distribution::Exact(strip_dp(&lp, spec.l, n_max)?))
        }
    }
}

/// Formal distribution at a fixed `L` without stabilization.
pub fn formal_at(n: usize, l: usize, caps: Caps, symbolic: [bool; 4], n_max: u32) -> Result<SignedDistribution<Series>, SeriesError> {
    let ring = strip_ring(n, caps);
    strip_dp(&LocalParams::formal(&ring, n, symbolic), l, n_max)
}
