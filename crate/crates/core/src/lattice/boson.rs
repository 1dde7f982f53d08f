//! Deformed boson rows: vertical edges carry any number of arrows, horizontal
//! edges at most one. Columns are indexed `1, 2, ...` from right to left.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::weights::{k_dual_weight, k_weight, r_weight, Weight};
use crate::qpartition::{partitions_up_to, skew_one_var, Family, Partition, QBase};
use crate::report::VerificationReport;
use crate::series::{Ring, RingBuilder, Series, SeriesError, TruncationPolicy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BosonKind {
    /// Weights `1, x, 1 - t^{m+1}, x`.
    Black,
    /// Weights `y, 1, y(1 - t^{m+1}), 1`.
    Red,
}

/// Weight of one vertex with `m` arrows below and horizontal input `h`, given
/// the number of arrows above; the horizontal output follows from flux.
fn vertex<W: Weight>(kind: BosonKind, x: &W, t: &W, m: u32, h: u8, above: u32) -> Option<(W, u8)> {
    let out = h as i64 + m as i64 - above as i64;
    if !(0..=1).contains(&out) {
        return None;
    }
    let one = x.one_like();
    let absorb = one.sub(&t.pow(m + 1));
    let w = match (kind, h, out) {
        (BosonKind::Black, 0, 0) => one,
        (BosonKind::Black, 0, 1) | (BosonKind::Black, 1, 1) => x.clone(),
        (BosonKind::Black, 1, 0) => absorb,
        (BosonKind::Red, 0, 0) => x.clone(),
        (BosonKind::Red, 0, 1) | (BosonKind::Red, 1, 1) => one,
        (BosonKind::Red, 1, 0) => x.mul(&absorb),
        _ => unreachable!("h and out are bits"),
    };
    Some((w, out as u8))
}

/// A row of exactly `max(bottom.len(), top.len())` columns with arbitrary
/// left input. Internal edges are forced by flux, so the sum has at most one
/// term; inconsistent flux gives 0.
pub fn boson_row_finite<W: Weight>(
    kind: BosonKind,
    x: &W,
    t: &W,
    bottom: &[u32],
    top: &[u32],
    left: u8,
    right: u8,
) -> W {
    let width = bottom.len().max(top.len());
    let get = |v: &[u32], i: usize| v.get(i).copied().unwrap_or(0);
    let mut h = left;
    let mut w = x.one_like();
    for col in (0..width).rev() {
        match vertex(kind, x, t, get(bottom, col), h, get(top, col)) {
            Some((vw, out)) => {
                w = w.mul(&vw);
                h = out;
            }
            None => return x.zero_like(),
        }
    }
    if h != right {
        return x.zero_like();
    }
    w
}

/// The stabilized infinite row. Black rows need `left = 0` and red rows
/// `left = 1`; otherwise every far column contributes the rapidity and the
/// limit is 0.
pub fn boson_row<W: Weight>(kind: BosonKind, x: &W, t: &W, bottom: &[u32], top: &[u32], left: u8, right: u8) -> W {
    let needed = match kind {
        BosonKind::Black => 0,
        BosonKind::Red => 1,
    };
    if left != needed {
        return x.zero_like();
    }
    boson_row_finite(kind, x, t, bottom, top, left, right)
}

/// Ring `q, s_q, t, s_t, a, b, c, d, x1..x_k` with the given policy.
pub(crate) fn boson_ring(k: usize, policy: TruncationPolicy) -> Arc<Ring> {
    RingBuilder::new().qt(&["q", "t"]).params(&["a", "b", "c", "d"]).alphabet("x", k).build(policy)
}

fn var(ring: &Arc<Ring>, name: &str) -> Series {
    Series::var(ring, name).expect("registered")
}

/// The four one-row identities against skew Hall–Littlewood functions in one
/// variable, for every pair `(λ, μ)` with `|μ| ≤ |λ| ≤ max_size`.
pub fn boson_equals_skew_hl(max_size: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("boson-hl").param("max_size", max_size);
    let ring = boson_ring(1, TruncationPolicy::new(4 * max_size + 4, max_size + 1, 0, 0));
    let tb = QBase::new(&ring, "t").expect("t registered");
    let (x, t) = (var(&ring, "x1"), var(&ring, "t"));
    let zero = Series::zero(&ring);
    let parts = partitions_up_to(max_size, max_size, max_size as usize);
    for lambda in &parts {
        for mu in parts.iter().filter(|m| m.size() <= lambda.size()) {
            let (ml, mm) = (lambda.multiplicities(), mu.multiplicities());
            let p = skew_one_var(lambda, mu, &x, Family::HallLittlewoodP, &tb);
            let q = skew_one_var(lambda, mu, &x, Family::HallLittlewoodQ, &tb);
            let same = lambda.len() == mu.len();
            let plus = lambda.len() == mu.len() + 1;
            let pick = |cond: bool, s: &Series| if cond { s.clone() } else { zero.clone() };
            let cases = [
                ("black-00", boson_row(BosonKind::Black, &x, &t, &ml, &mm, 0, 0), pick(same, &p)),
                ("black-01", boson_row(BosonKind::Black, &x, &t, &ml, &mm, 0, 1), pick(plus, &p)),
                ("red-10", boson_row(BosonKind::Red, &x, &t, &mm, &ml, 1, 0), pick(plus, &q)),
                ("red-11", boson_row(BosonKind::Red, &x, &t, &mm, &ml, 1, 1), pick(same, &q)),
            ];
            for (label, lhs, rhs) in cases {
                rep.check_series(format!("{label} {lambda}/{mu}"), &(&lhs - &rhs));
            }
        }
    }
    rep.finish()
}

/// All count profiles of the given width with entries `≤ cap`.
pub(crate) fn profiles(width: usize, cap: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..width {
        let mut next = Vec::new();
        for p in &out {
            for c in 0..=cap {
                let mut v = p.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Profiles `p` with `|p_i - m_i| ≤ 1` for every column of `m`.
fn neighbours(m: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &c in m {
        let mut next = Vec::new();
        for p in &out {
            for v in c.saturating_sub(1)..=c + 1 {
                let mut w: Vec<u32> = p.clone();
                w.push(v);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// How the exchanged rows meet the crossing vertex on the right of the
/// Yang–Baxter side of the boson exchange.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    /// `true`: the line leaving the lower (black) row enters from below.
    pub black_from_below: bool,
    /// Exponents `(e_x, e_y)` of the spectral ratio `x^{e_x} y^{e_y}`.
    pub ratio: (i8, i8),
}

impl Crossing {
    /// The reading under which the exchange identity holds: the black row's
    /// line is the vertical one and the ratio is `xy`.
    pub const ADOPTED: Crossing = Crossing { black_from_below: true, ratio: (1, 1) };
}

fn crossing_weight<W: Weight>(c: Crossing, k1: u8, k2: u8, j1: u8, j2: u8, x: &W, y: &W, t: &W) -> Result<W, SeriesError> {
    let pw = |s: &W, e: i8| -> Result<W, SeriesError> {
        if e >= 0 {
            Ok(s.pow(e as u32))
        } else {
            s.pow((-e) as u32).recip()
        }
    };
    let ratio = pw(x, c.ratio.0)?.mul(&pw(y, c.ratio.1)?);
    if c.black_from_below {
        r_weight(k2, k1, j2, j1, &ratio, t)
    } else {
        r_weight(k1, k2, j1, j2, &ratio, t)
    }
}

/// Two stacked infinite rows summed over the middle profile, column by column
/// from the left. `start[h_low][h_up]` is the horizontal state entering the
/// leftmost supported column; the result is indexed by the right outputs.
fn two_rows<W: Weight>(
    low: (BosonKind, &W),
    up: (BosonKind, &W),
    t: &W,
    m: &[u32],
    n: &[u32],
    start: [[W; 2]; 2],
) -> [[W; 2]; 2] {
    let width = m.len().max(n.len());
    let get = |v: &[u32], i: usize| v.get(i).copied().unwrap_or(0);
    let zero = t.zero_like();
    let mut state = start;
    for col in (0..width).rev() {
        let (mc, nc) = (get(m, col), get(n, col));
        let mut next = [[zero.clone(), zero.clone()], [zero.clone(), zero.clone()]];
        for hl in 0..2u8 {
            for hu in 0..2u8 {
                let w0 = &state[hl as usize][hu as usize];
                if w0.is_zero() {
                    continue;
                }
                for p in mc.saturating_sub(1)..=mc + 1 {
                    let Some((wl, ol)) = vertex(low.0, low.1, t, mc, hl, p) else { continue };
                    let Some((wu, ou)) = vertex(up.0, up.1, t, p, hu, nc) else { continue };
                    let cell = &mut next[ol as usize][ou as usize];
                    *cell = cell.add(&w0.mul(&wl).mul(&wu));
                }
            }
        }
        state = next;
    }
    state
}

/// Residual of the boson exchange for fixed bottom `m`, top `n`, right bits.
///
/// With the red row below, its arrow may turn up arbitrarily far left and be
/// carried back by the black row; those columns sum to `xy(1-t)/(1-xy)`.
pub fn yb_boson_residual<W: Weight>(
    m: &[u32],
    n: &[u32],
    j1: u8,
    j2: u8,
    crossing: Crossing,
    x: &W,
    y: &W,
    t: &W,
) -> Result<W, SeriesError> {
    let one = x.one_like();
    let zero = x.zero_like();
    let xy = x.mul(y);
    let pref = one.sub(&xy).div(&one.sub(&t.mul(&xy)))?;
    let tail = xy.mul(&one.sub(t)).div(&one.sub(&xy))?;
    let left = two_rows(
        (BosonKind::Red, y),
        (BosonKind::Black, x),
        t,
        m,
        n,
        [[zero.clone(), tail], [one.clone(), zero.clone()]],
    );
    let lhs = left[j1 as usize][j2 as usize].clone();
    let right = two_rows(
        (BosonKind::Black, x),
        (BosonKind::Red, y),
        t,
        m,
        n,
        [[zero.clone(), one.clone()], [zero.clone(), zero.clone()]],
    );
    let mut rhs = zero;
    for k2 in 0..2u8 {
        for k1 in 0..2u8 {
            let w = &right[k2 as usize][k1 as usize];
            if !w.is_zero() {
                rhs = rhs.add(&w.mul(&crossing_weight(crossing, k1, k2, j1, j2, x, y, t)?));
            }
        }
    }
    Ok(pref.mul(&lhs).sub(&rhs))
}

/// The boson exchange for every pair of profiles of width `≤ width` with
/// counts `≤ cap`, and every pair of right boundary bits.
pub fn yb_boson_verify(width: usize, cap: u32, crossing: Crossing) -> Result<VerificationReport, SeriesError> {
    let mut rep = VerificationReport::new("yb-boson").param("width", width).param("cap", cap);
    let policy = TruncationPolicy::new(12, 2 * (width as u32 * (cap + 2) + 4), 0, 0);
    rep.set_policy(&policy);
    let ring = boson_ring(2, policy);
    let (x, y, t) = (var(&ring, "x1"), var(&ring, "x2"), var(&ring, "t"));
    for m in profiles(width, cap) {
        for n in profiles(width, cap) {
            for (j1, j2) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let r = yb_boson_residual(&m, &n, j1, j2, crossing, &x, &y, &t)?;
                rep.check_series(format!("m={m:?} n={n:?} j=({j1},{j2})"), &r);
            }
        }
    }
    rep.set_param("crossing", format!("{crossing:?}"));
    Ok(rep.finish())
}

/// The two power-shift identities for every pair of profiles of width
/// `≤ width` with counts `≤ cap`.
pub fn u_power_shift_verify(width: usize, cap: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("u-power-shift").param("width", width).param("cap", cap);
    let deg = 2 * width as u32 * (cap + 1) + 4;
    let ring = boson_ring(1, TruncationPolicy::new(4 * deg, deg, 0, 0));
    let (x, t, q) = (var(&ring, "x1"), var(&ring, "t"), var(&ring, "q"));
    let qx = &q * &x;
    let s = |v: &[u32]| v.iter().enumerate().map(|(i, &c)| (i as u32 + 1) * c).sum::<u32>();
    for m in profiles(width, cap) {
        for n in profiles(width, cap) {
            for j in 0..2u8 {
                let lhs = q.pow(s(&n)) * boson_row(BosonKind::Black, &qx, &t, &m, &n, 0, j);
                let rhs = q.pow(s(&m)) * boson_row(BosonKind::Black, &x, &t, &m, &n, 0, j);
                rep.check_series(format!("black m={m:?} n={n:?} j={j}"), &(&lhs - &rhs));
                let lhs = q.pow(s(&n)) * boson_row(BosonKind::Red, &x, &t, &m, &n, 1, j);
                let rhs = q.pow(s(&m)) * boson_row(BosonKind::Red, &qx, &t, &m, &n, 1, j);
                rep.check_series(format!("red m={m:?} n={n:?} j={j}"), &(&lhs - &rhs));
            }
        }
    }
    rep.finish()
}

/// Which printed coefficient the right side of the second two-column identity
/// carries: `c^{n_1}` (as on the left) or `c^{m_1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualCoefficient {
    SameAsLeft,
    Printed,
}

struct Compat {
    x: Series,
    t: Series,
    tb: QBase,
    h1: Series,
    h2: Series,
    ab: Series,
    cd: Series,
    a: Series,
    b: Series,
    c: Series,
    d: Series,
}

impl Compat {
    fn new(ring: &Arc<Ring>) -> Result<Self, SeriesError> {
        let (a, b, c, d) = (var(ring, "a"), var(ring, "b"), var(ring, "c"), var(ring, "d"));
        let x = var(ring, "x1");
        Ok(Compat {
            h1: super::weights::boundary_h(&x, &a, &b)?,
            h2: super::weights::boundary_h(&x, &c, &d)?,
            ab: &a * &b,
            cd: &c * &d,
            t: var(ring, "t"),
            tb: QBase::new(ring, "t")?,
            x,
            a,
            b,
            c,
            d,
        })
    }

    /// Row of two columns preceded by a black dot, minus the red row followed by one.
    fn black_pair(&self, i: u8, j: u8, m: &[u32], n: &[u32]) -> Series {
        let mut lhs = self.x.zero_like();
        let mut rhs = self.x.zero_like();
        for k in 0..2u8 {
            let row = boson_row_finite(BosonKind::Black, &self.x, &self.t, m, n, k, j);
            lhs = lhs + k_weight(i, k, &self.h1, &self.ab) * row;
            let row = boson_row_finite(BosonKind::Red, &self.x, &self.t, m, n, i, k);
            rhs = rhs + row * k_weight(k, j, &self.h1, &self.ab);
        }
        lhs - rhs
    }

    fn red_pair_split(&self, i: u8, j: u8, m: &[u32], n: &[u32]) -> (Series, Series) {
        let mut lhs = self.x.zero_like();
        let mut rhs = self.x.zero_like();
        for k in 0..2u8 {
            let row = boson_row_finite(BosonKind::Red, &self.x, &self.t, m, n, k, j);
            lhs = lhs + k_dual_weight(i, k, &self.h2, &self.cd) * row;
            let row = boson_row_finite(BosonKind::Black, &self.x, &self.t, m, n, i, k);
            rhs = rhs + row * k_dual_weight(k, j, &self.h2, &self.cd);
        }
        (lhs, rhs)
    }
}

/// The two-column identities for all boundary bits and fixed column counts
/// `≤ cap`. Under [`DualCoefficient::Printed`] both sides of the second
/// identity are multiplied by `c` so that `c^{m_1 - n_1}` stays polynomial.
pub fn boundary_pair_verify(cap: u32, policy: TruncationPolicy, coefficient: DualCoefficient) -> Result<VerificationReport, SeriesError> {
    let mut rep = VerificationReport::new("boundary-compat-pair").param("cap", cap);
    rep.set_policy(&policy);
    rep.set_param("dual_coefficient", format!("{coefficient:?}"));
    let ring = boson_ring(1, policy);
    let k = Compat::new(&ring)?;
    let rs = |m: u32, u: &Series, v: &Series| k.tb.rogers_szego_homogeneous(m as i64, u, v);
    for fixed in profiles(2, cap) {
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            // black dot: fixed top, summed bottom
            let mut acc = Series::zero(&ring);
            for m in neighbours(&fixed) {
                let w = k.tb.rogers_szego(m[1] as i64, &k.ab) * rs(m[0], &k.a, &k.b);
                acc = acc + w * k.black_pair(i, j, &m, &fixed);
            }
            rep.check_series(format!("pair-ab i={i} j={j} n={fixed:?}"), &acc);
            // red dot: fixed bottom, summed top
            let mut acc = Series::zero(&ring);
            for n in neighbours(&fixed) {
                let base = k.tb.rogers_szego(n[1] as i64, &k.cd) * k.tb.poch_inv(n[0]) * k.tb.poch_inv(n[1]);
                let (l, r) = k.red_pair_split(i, j, &fixed, &n);
                let body = rs(n[0], &k.c, &k.d);
                acc = match coefficient {
                    DualCoefficient::SameAsLeft => acc + &base * &body * (l - r),
                    DualCoefficient::Printed => {
                        let shift = fixed[0] + 1 - n[0];
                        acc + &base * &body * (&k.c * &l - k.c.pow(shift) * r)
                    }
                };
            }
            rep.check_series(format!("pair-cd i={i} j={j} m={fixed:?}"), &acc);
        }
    }
    Ok(rep.finish())
}

/// Full-row boundary moves for every profile of width `≤ width` with counts
/// `≤ cap` and both right bits. A far part of size `k` costs `x^{k - width}`,
/// so parts beyond `width + x cap` are truncated away exactly.
pub fn boundary_row_verify(width: usize, cap: u32, policy: TruncationPolicy) -> Result<VerificationReport, SeriesError> {
    let longest = width as u32 + policy.x + 1;
    let mut rep = VerificationReport::new("boundary-compat-row").param("width", width).param("cap", cap).param("longest", longest);
    rep.set_policy(&policy);
    let ring = boson_ring(1, policy);
    for n in profiles(width, cap) {
        for j in 0..2u8 {
            let (first, second) = boundary_row_check(&n, j, longest, &ring)?;
            rep.check_series(format!("row-ab n={n:?} j={j}"), &first);
            rep.check_series(format!("row-cd n={n:?} j={j}"), &second);
        }
    }
    Ok(rep.finish())
}

/// Partitions whose multiplicities stay within one of `n` on its support and
/// have at most one part beyond it, of size `≤ longest`.
fn near_partitions(n: &[u32], longest: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    for core in neighbours(n) {
        out.push(Partition::from_multiplicities(&core));
        for extra in n.len() as u32 + 1..=longest {
            let mut m = core.clone();
            m.resize(extra as usize, 0);
            m[extra as usize - 1] = 1;
            out.push(Partition::from_multiplicities(&m));
        }
    }
    out
}

/// The full-row boundary moves for one profile: the `(a, b)` dot passed from
/// the left of a black row to the right of a red row (profile on top), and
/// the `(c, d)` dot from a red row to a black row (profile at the bottom).
pub fn boundary_row_check(n: &[u32], j: u8, longest: u32, ring: &Arc<Ring>) -> Result<(Series, Series), SeriesError> {
    let k = Compat::new(ring)?;
    let mut first = Series::zero(ring);
    for lambda in near_partitions(n, longest) {
        let ml = lambda.multiplicities();
        let w = k.tb.h_lambda(&lambda, &k.a, &k.b);
        if w.is_zero() {
            continue;
        }
        let lhs = k_weight(1, 0, &k.h1, &k.ab) * boson_row(BosonKind::Black, &k.x, &k.t, &ml, n, 0, j);
        let mut rhs = Series::zero(ring);
        for e in 0..2u8 {
            rhs = rhs + boson_row(BosonKind::Red, &k.x, &k.t, &ml, n, 1, e) * k_weight(e, j, &k.h1, &k.ab);
        }
        first = first + w * (lhs - rhs);
    }
    let mut second = Series::zero(ring);
    for mu in near_partitions(n, longest) {
        let mm = mu.multiplicities();
        let mut w = k.tb.h_lambda(&mu, &k.c, &k.d);
        if w.is_zero() {
            continue;
        }
        for m in &mm {
            w = w * k.tb.poch_inv(*m);
        }
        let lhs = k_dual_weight(0, 1, &k.h2, &k.cd) * boson_row(BosonKind::Red, &k.x, &k.t, n, &mm, 1, j);
        let mut rhs = Series::zero(ring);
        for e in 0..2u8 {
            rhs = rhs + boson_row(BosonKind::Black, &k.x, &k.t, n, &mm, 0, e) * k_dual_weight(e, j, &k.h2, &k.cd);
        }
        second = second + w * (lhs - rhs);
    }
    Ok((first, second))
}
