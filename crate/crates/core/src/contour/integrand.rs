use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::fbprocess::ProcessSpec;
use crate::series::{factorial, int, ExactScalar, Image, Mono, Ring, Series, SeriesError};

/// Which monomial of a binomial denominator dominates on the contour.
///
/// `1/(s D + other)` is expanded as `s D^{-1} Σ_k (-s other/D)^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub dominant: Mono,
    pub sign: i32,
    /// The ratio carries positive `q, t` weight; otherwise it lowers the `y` degree.
    pub graded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Role {
    Numerator,
    Denominator(Orientation),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoleKind {
    Numerator,
    Denominator,
}

impl Role {
    pub fn kind(&self) -> RoleKind {
        match self {
            Role::Numerator => RoleKind::Numerator,
            Role::Denominator(_) => RoleKind::Denominator,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    pub label: String,
    pub poly: Series,
    pub role: Role,
}

/// `|m| < 1` on `|y| = r` for every admissible `r` and all small `q, t`.
///
/// With `w` the `q, t` weight in half-units and `d` the total `y` degree,
/// `|m| = q^{w/2} r^d`, and `r` ranges over `(1, q^{-1/2})`.
fn small_on_contour(ring: &Ring, r: &[i16]) -> bool {
    let deg = ring.degrees(r);
    if deg[1..].iter().any(|&d| d != 0) || deg[0] < 0 {
        return false;
    }
    let d: i32 = ring.table.laurent_vars().iter().map(|&v| r[v] as i32).sum();
    let w = deg[0];
    if w == 0 {
        d < 0
    } else {
        d <= w
    }
}

/// Expansion direction of `1/poly` on the contour. Only binomials with a
/// `±1` coefficient on a pure-`y` dominant term are admissible.
pub fn orient(poly: &Series) -> Result<Orientation, SeriesError> {
    let ring = poly.ring().clone();
    let terms = poly.sorted_terms();
    let laurent = ring.table.laurent_vars();
    // The subdominant term may have been truncated away.
    if terms.len() == 1 {
        let (d, c) = terms[0];
        let pure = d.iter().enumerate().all(|(i, &x)| x == 0 || laurent.contains(&i));
        if pure && (c.is_one() || *c == -ExactScalar::one()) {
            return Ok(Orientation { dominant: d.clone(), sign: if c.is_one() { 1 } else { -1 }, graded: false });
        }
    }
    if terms.len() != 2 {
        return Err(SeriesError::NonExpandable(format!("{poly}: not a binomial")));
    }
    for k in 0..2 {
        let (d, c) = terms[k];
        let (o, _) = terms[1 - k];
        let sign = if c.is_one() {
            1
        } else if *c == -ExactScalar::one() {
            -1
        } else {
            continue;
        };
        if d.iter().enumerate().any(|(i, &x)| x != 0 && !laurent.contains(&i)) {
            continue;
        }
        let r: Mono = o.iter().zip(d.iter()).map(|(a, b)| a - b).collect();
        if small_on_contour(&ring, &r) {
            let graded = ring.degrees(&r)[0] > 0;
            return Ok(Orientation { dominant: d.clone(), sign, graded });
        }
    }
    Err(SeriesError::NonExpandable(format!("{poly}: no dominant term on the contour")))
}

impl Factor {
    pub fn new(label: &str, poly: Series, kind: RoleKind) -> Result<Factor, SeriesError> {
        let role = match kind {
            RoleKind::Numerator => Role::Numerator,
            RoleKind::Denominator => Role::Denominator(orient(&poly)?),
        };
        Ok(Factor { label: label.to_string(), poly, role })
    }

    fn num(label: &str, poly: Series) -> Factor {
        Factor { label: label.to_string(), poly, role: Role::Numerator }
    }

    fn den(label: &str, poly: Series) -> Result<Factor, SeriesError> {
        Factor::new(label, poly, RoleKind::Denominator)
    }

    /// The factor itself, or the oriented expansion of its reciprocal.
    pub fn expand(&self) -> Result<Series, SeriesError> {
        match &self.role {
            Role::Numerator => Ok(self.poly.clone()),
            Role::Denominator(o) => {
                let ring = self.poly.ring();
                let lead = Series::monomial(ring, o.dominant.clone(), int(o.sign as i64));
                Series::expand_reciprocal(&o.dominant, o.sign, &(&lead - &self.poly))
            }
        }
    }

    fn map(&self, f: impl Fn(&Series) -> Result<Series, SeriesError>) -> Result<Factor, SeriesError> {
        Factor::new(&self.label, f(&self.poly)?, self.role.kind())
    }

    fn rehome(&self, ring: &Arc<Ring>) -> Result<Factor, SeriesError> {
        let mut g = self.clone();
        g.poly = self.poly.rehome(ring)?;
        if let Role::Denominator(_) = &g.role {
            g.role = Role::Denominator(orient(&g.poly)?);
        }
        Ok(g)
    }
}

/// A product of factors over the `y` variables in `ys`, times a `y`-free
/// prefactor. Its integral is the constant term in `ys` after multiplying by
/// `∏ y_i^{measure_shift}`: shift 0 is `dy/(2πi y)`, 1 is `dy/(2πi)`, 2 is `y dy/(2πi)`.
#[derive(Clone, Debug)]
pub struct Integrand {
    pub ring: Arc<Ring>,
    pub ys: Vec<usize>,
    pub prefactor: Series,
    pub factors: Vec<Factor>,
    pub measure_shift: i16,
}

fn mono(ring: &Ring, powers: &[(usize, i16)]) -> Mono {
    let mut e: Mono = smallvec::SmallVec::from_elem(0, ring.table.len());
    for &(v, p) in powers {
        e[v] += p;
    }
    e
}

/// `Σ c_k m_k` from `(coefficient, exponents)` pairs.
fn poly(ring: &Arc<Ring>, terms: &[(i64, &[(usize, i16)])]) -> Series {
    Series::from_terms(ring, terms.iter().map(|(c, p)| (mono(ring, p), int(*c))))
}

impl Integrand {
    /// Product of all factors, the prefactor and the measure monomial, with
    /// no constant term taken.
    pub fn expand_all(&self) -> Result<Series, SeriesError> {
        let mut acc = self.prefactor.clone() * self.measure_monomial();
        for f in &self.factors {
            acc = acc * f.expand()?;
        }
        Ok(acc)
    }

    fn measure_monomial(&self) -> Series {
        let powers: Vec<(usize, i16)> = self.ys.iter().map(|&v| (v, self.measure_shift)).collect();
        Series::monomial(&self.ring, mono(&self.ring, &powers), ExactScalar::one())
    }

    /// Constant term in `ys`, eliminating `y_k, y_{k-1}, ...` in turn: only the
    /// factors involving the current variable are multiplied before its
    /// constant term is taken.
    pub fn evaluate(&self) -> Result<Series, SeriesError> {
        let mut pool = vec![self.prefactor.clone(), self.measure_monomial()];
        for f in &self.factors {
            pool.push(f.expand()?);
        }
        for &v in self.ys.iter().rev() {
            let (mut with, without): (Vec<Series>, Vec<Series>) =
                pool.into_iter().partition(|s| s.terms().any(|(e, _)| e[v] != 0));
            with.sort_by_key(|s| s.len());
            let mut h = Series::one(&self.ring);
            for s in with {
                h = h * s;
            }
            pool = without;
            pool.push(h.constant_term(&[v]));
        }
        pool.sort_by_key(|s| s.len());
        let mut acc = Series::one(&self.ring);
        for s in pool {
            acc = acc * s;
        }
        Ok(acc)
    }

    /// Sets every `y` depth budget to the largest positive `y` exponent the
    /// factors can jointly produce, so that no dropped monomial can return to
    /// exponent 0.
    pub fn fit_depth(mut self) -> Result<Integrand, SeriesError> {
        let qt = self.ring.policy.qt as i64;
        let mut depth = 0i64;
        for &v in &self.ys {
            let mut bound = self.measure_shift.max(0) as i64;
            bound += self.prefactor.max_exponent(v).unwrap_or(0).max(0) as i64;
            let mut graded = 0i64;
            for f in &self.factors {
                match &f.role {
                    Role::Numerator => bound += f.poly.max_exponent(v).unwrap_or(0).max(0) as i64,
                    Role::Denominator(o) => {
                        for (e, _) in f.poly.terms() {
                            let r: Vec<i16> = e.iter().zip(o.dominant.iter()).map(|(a, b)| a - b).collect();
                            let w = self.ring.degrees(&r)[0] as i64;
                            if o.graded && w > 0 && r[v] > 0 {
                                graded = graded.max((r[v] as i64 * qt + w - 1) / w);
                            }
                        }
                    }
                }
            }
            depth = depth.max(bound + graded + 1);
        }
        let depths: Vec<(usize, u32)> = self.ys.iter().map(|&v| (v, depth as u32)).collect();
        let ring = self.ring.with_depths(&depths)?;
        self.prefactor = self.prefactor.rehome(&ring)?;
        self.factors = self.factors.iter().map(|f| f.rehome(&ring)).collect::<Result<_, _>>()?;
        self.ring = ring;
        Ok(self)
    }

    /// `y_a - q y_b`.
    pub fn y_minus_qy(&self, a: usize, b: usize) -> Series {
        let q = self.ring.var("q").expect("q registered");
        poly(&self.ring, &[(1, &[(a, 1)]), (-1, &[(q, 1), (b, 1)])])
    }

    /// Renames `ys[i]` to `ys[perm[i]]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Integrand, SeriesError> {
        let mut p: Vec<usize> = (0..self.ring.table.len()).collect();
        for (i, &j) in perm.iter().enumerate() {
            p[self.ys[i]] = self.ys[j];
        }
        self.map_factors(|s| s.permute(&p))
    }

    /// `ys[i] ↦ ys[i]^{-1}`.
    pub fn invert_y(&self, i: usize) -> Result<Integrand, SeriesError> {
        let v = self.ys[i];
        let img = Image::Monomial(mono(&self.ring, &[(v, -1)]), ExactScalar::one());
        self.map_factors(|s| s.substitute(&[(v, img.clone())], None))
    }

    /// `q ↔ t` together with their square roots.
    pub fn swap_qt(&self) -> Result<Integrand, SeriesError> {
        let mut p: Vec<usize> = (0..self.ring.table.len()).collect();
        for (a, b) in [("q", "t"), ("s_q", "s_t")] {
            let (i, j) = (self.ring.var(a)?, self.ring.var(b)?);
            p.swap(i, j);
        }
        self.map_factors(|s| s.permute(&p))
    }

    fn map_factors(&self, f: impl Fn(&Series) -> Result<Series, SeriesError>) -> Result<Integrand, SeriesError> {
        let mut g = self.clone();
        g.prefactor = f(&self.prefactor)?;
        g.factors = self.factors.iter().map(|x| x.map(&f)).collect::<Result<_, _>>()?;
        Ok(g)
    }

    /// Sorted `(is numerator, polynomial)` records; labels are ignored.
    pub fn factor_multiset(&self) -> Vec<(bool, String)> {
        let mut v: Vec<(bool, String)> = self
            .factors
            .iter()
            .map(|f| (f.role == Role::Numerator, f.poly.dump_json()["terms"].to_string()))
            .collect();
        v.sort();
        v
    }
}

/// How the symmetric formula is read.
///
/// The displayed statement integrates against `dy/(2πi)`, includes
/// `1/(1-y_i^{±2})` in `Δ`, carries `(1-qt)^m` on the second even term and no
/// `1/2` in the odd case. Evaluating the residues of the simpler formula
/// instead gives `dy/(2πi y)`, no `1/(1-y_i^{±2})`, `(1-qt)^{m-1}` and `1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceReading {
    pub measure_shift: i16,
    pub delta_unit_poles: bool,
    pub second_term_qt_power_m: bool,
    pub odd_half: bool,
}

impl NiceReading {
    pub const DISPLAYED: NiceReading =
        NiceReading { measure_shift: 1, delta_unit_poles: true, second_term_qt_power_m: true, odd_half: false };
    pub const RESIDUE_DERIVED: NiceReading =
        NiceReading { measure_shift: 0, delta_unit_poles: false, second_term_qt_power_m: false, odd_half: true };

    pub fn describe(&self) -> String {
        format!(
            "measure {}, Δ {} 1/(1-y^±2), second even term (1-qt)^{}, odd case {}",
            match self.measure_shift {
                0 => "dy/(2πi y)",
                1 => "dy/(2πi)",
                _ => "y^k dy/(2πi)",
            },
            if self.delta_unit_poles { "with" } else { "without" },
            if self.second_term_qt_power_m { "m" } else { "(m-1)" },
            if self.odd_half { "with 1/2" } else { "without 1/2" },
        )
    }
}

const PROVISIONAL_DEPTH: u32 = 64;

struct Handles {
    ring: Arc<Ring>,
    q: usize,
    t: usize,
    xs: Vec<usize>,
    ys: Vec<usize>,
}

fn handles(spec: &ProcessSpec, k: usize) -> Handles {
    // Factors are built under a generous budget; `fit_depth` then tightens it.
    let ctx = spec.clone().zero_params().context_with_laurent(k, PROVISIONAL_DEPTH);
    let ring = ctx.ring.clone();
    let q = ring.var("q").expect("q");
    let t = ring.var("t").expect("t");
    let xs = (1..=spec.n_vars).map(|i| ring.var(&format!("x{i}")).expect("x")).collect();
    let ys = (1..=k).map(|i| ring.var(&format!("y{i}")).expect("y")).collect();
    Handles { ring, q, t, xs, ys }
}

/// `(1 - base)^{-k}` for a monomial `base`.
fn geometric_power(ring: &Arc<Ring>, base: &[(usize, i16)], k: u32) -> Result<Series, SeriesError> {
    let f = poly(ring, &[(1, &[]), (-1, base)]);
    Ok(f.invert()?.pow(k))
}

/// Integrand of the simpler formula:
/// `∏_{i≠j} (y_i-y_j)/(y_i-q y_j) ∏_i 1/((y_i²-1)(1-t y_i²))
/// ∏_{i<j} (y_i y_j - q)(1 - qt y_i y_j)/((y_i y_j - 1)(1 - t y_i y_j)) ∏_{i,j} (1 + y_i x_j)`
/// with prefactor `1/(n! (1-q)^n)` and measure `y_i dy_i/(2πi)`.
pub fn build_simpler_integrand(n: u32, spec: &ProcessSpec) -> Result<Integrand, SeriesError> {
    let h = handles(spec, n as usize);
    let (ring, q, t) = (&h.ring, h.q, h.t);
    let nf = ExactScalar::one() / factorial(n);
    let prefactor = geometric_power(ring, &[(q, 1)], n)?.scale(&nf);
    let mut factors = Vec::new();
    for (i, &yi) in h.ys.iter().enumerate() {
        for (j, &yj) in h.ys.iter().enumerate() {
            if i != j {
                factors.push(Factor::num("y_i - y_j", poly(ring, &[(1, &[(yi, 1)]), (-1, &[(yj, 1)])])));
                factors.push(Factor::den("y_i - q y_j", poly(ring, &[(1, &[(yi, 1)]), (-1, &[(q, 1), (yj, 1)])]))?);
            }
        }
        factors.push(Factor::den("y_i^2 - 1", poly(ring, &[(1, &[(yi, 2)]), (-1, &[])]))?);
        factors.push(Factor::den("1 - t y_i^2", poly(ring, &[(1, &[]), (-1, &[(t, 1), (yi, 2)])]))?);
        for &yj in &h.ys[i + 1..] {
            factors.push(Factor::num("y_i y_j - q", poly(ring, &[(1, &[(yi, 1), (yj, 1)]), (-1, &[(q, 1)])])));
            factors.push(Factor::num("1 - qt y_i y_j", poly(ring, &[(1, &[]), (-1, &[(q, 1), (t, 1), (yi, 1), (yj, 1)])])));
            factors.push(Factor::den("y_i y_j - 1", poly(ring, &[(1, &[(yi, 1), (yj, 1)]), (-1, &[])]))?);
            factors.push(Factor::den("1 - t y_i y_j", poly(ring, &[(1, &[]), (-1, &[(t, 1), (yi, 1), (yj, 1)])]))?);
        }
        for &x in &h.xs {
            factors.push(Factor::num("1 + y_i x_j", poly(ring, &[(1, &[]), (1, &[(yi, 1), (x, 1)])])));
        }
    }
    Integrand { ring: ring.clone(), ys: h.ys.clone(), prefactor, factors, measure_shift: 2 }.fit_depth()
}

/// `Δ(q,t;y)` over `ys` with every `f(y^±)` written out as two factors;
/// `unit_poles` keeps the factors `1/(1-y_i^{±2})`.
pub fn build_delta(ring: &Arc<Ring>, ys: &[usize], unit_poles: bool) -> Result<Vec<Factor>, SeriesError> {
    let q = ring.var("q")?;
    let t = ring.var("t")?;
    let mut out = Vec::new();
    for (i, &yi) in ys.iter().enumerate() {
        for &yj in &ys[i + 1..] {
            for ei in [1i16, -1] {
                for ej in [1i16, -1] {
                    let m = [(yi, ei), (yj, ej)];
                    let with = |extra: &[(usize, i16)]| -> Vec<(usize, i16)> { m.iter().chain(extra).copied().collect() };
                    out.push(Factor::num("1 - y_i^± y_j^±", poly(ring, &[(1, &[]), (-1, &m)])));
                    out.push(Factor::num("1 - qt y_i^± y_j^±", poly(ring, &[(1, &[]), (-1, &with(&[(q, 1), (t, 1)]))])));
                    out.push(Factor::den("1 - q y_i^± y_j^±", poly(ring, &[(1, &[]), (-1, &with(&[(q, 1)]))]))?);
                    out.push(Factor::den("1 - t y_i^± y_j^±", poly(ring, &[(1, &[]), (-1, &with(&[(t, 1)]))]))?);
                }
            }
        }
        for e in [2i16, -2] {
            if unit_poles {
                out.push(Factor::den("1 - y_i^±2", poly(ring, &[(1, &[]), (-1, &[(yi, e)])]))?);
            }
            out.push(Factor::den("1 - q y_i^±2", poly(ring, &[(1, &[]), (-1, &[(q, 1), (yi, e)])]))?);
            out.push(Factor::den("1 - t y_i^±2", poly(ring, &[(1, &[]), (-1, &[(t, 1), (yi, e)])]))?);
        }
    }
    Ok(out)
}

fn x_coupling(h: &Handles, ys: &[usize]) -> Vec<Factor> {
    let mut out = Vec::new();
    for &x in &h.xs {
        for &y in ys {
            for e in [1i16, -1] {
                out.push(Factor::num("1 + x_i y_j^±", poly(&h.ring, &[(1, &[]), (1, &[(x, 1), (y, e)])])));
            }
        }
    }
    out
}

/// `(1 - qt)^a (1 + qt)^b / ((1-q)^c (1-q²)^d (1-t)^c (1-t²)^d)` times `scalar`.
fn constant_prefactor(h: &Handles, a: u32, b: u32, c: u32, d: u32, scalar: ExactScalar) -> Result<Series, SeriesError> {
    let (ring, q, t) = (&h.ring, h.q, h.t);
    let one_minus_qt = poly(ring, &[(1, &[]), (-1, &[(q, 1), (t, 1)])]);
    let one_plus_qt = poly(ring, &[(1, &[]), (1, &[(q, 1), (t, 1)])]);
    Ok(one_minus_qt.pow(a)
        * one_plus_qt.pow(b)
        * geometric_power(ring, &[(q, 1)], c)?
        * geometric_power(ring, &[(t, 1)], c)?
        * geometric_power(ring, &[(q, 2)], d)?
        * geometric_power(ring, &[(t, 2)], d)?)
    .map(|s: Series| s.scale(&scalar))
}

fn weyl_scalar(m: u32) -> ExactScalar {
    ExactScalar::one() / (factorial(m) * ExactScalar::from_integer(num_bigint::BigInt::from(2u32).pow(m)))
}

/// The integrals of the symmetric formula for `Z_n`: one term for `n = 0`,
/// two for even `n ≥ 2` (on `m` and `m-1` variables), and for odd `n` the two
/// halves of the bracket.
pub fn build_nice_integrands(n: u32, spec: &ProcessSpec, reading: NiceReading) -> Result<Vec<Integrand>, SeriesError> {
    let m = n / 2;
    let h = handles(spec, m as usize);
    let (ring, q, t) = (&h.ring, h.q, h.t);
    let make = |ys: &[usize], prefactor: Series, factors: Vec<Factor>| {
        Integrand { ring: ring.clone(), ys: ys.to_vec(), prefactor, factors, measure_shift: reading.measure_shift }.fit_depth()
    };
    let mut out = Vec::new();
    if n % 2 == 0 {
        let ys = &h.ys[..];
        let mut f = build_delta(ring, ys, reading.delta_unit_poles)?;
        f.extend(x_coupling(&h, ys));
        out.push(make(ys, constant_prefactor(&h, m, 0, m, 0, weyl_scalar(m))?, f)?);
        if m >= 1 {
            let ys = &h.ys[..m as usize - 1];
            let mut f = build_delta(ring, ys, reading.delta_unit_poles)?;
            for &y in ys {
                for e in [2i16, -2] {
                    f.push(Factor::num("1 - y_i^±2", poly(ring, &[(1, &[]), (-1, &[(y, e)])])));
                    f.push(Factor::num("1 - q²t² y_i^±2", poly(ring, &[(1, &[]), (-1, &[(q, 2), (t, 2), (y, e)])])));
                    f.push(Factor::den("1 - q² y_i^±2", poly(ring, &[(1, &[]), (-1, &[(q, 2), (y, e)])]))?);
                    f.push(Factor::den("1 - t² y_i^±2", poly(ring, &[(1, &[]), (-1, &[(t, 2), (y, e)])]))?);
                }
            }
            f.extend(x_coupling(&h, ys));
            for &x in &h.xs {
                f.push(Factor::num("1 - x_i^2", poly(ring, &[(1, &[]), (-1, &[(x, 2)])])));
            }
            let scalar = weyl_scalar(m - 1) / int(2);
            let a = if reading.second_term_qt_power_m { m } else { m - 1 };
            out.push(make(ys, constant_prefactor(&h, a, 1, m, 1, scalar)?, f)?);
        }
    } else {
        let ys = &h.ys[..];
        let odd_scalar = if reading.odd_half { ExactScalar::new(1.into(), 2.into()) } else { int(1) };
        let pre = constant_prefactor(&h, m, 0, m + 1, 0, weyl_scalar(m) * odd_scalar)?;
        for s in [-1i64, 1] {
            let mut f = build_delta(ring, ys, reading.delta_unit_poles)?;
            f.extend(x_coupling(&h, ys));
            for &y in ys {
                for e in [1i16, -1] {
                    f.push(Factor::num("1 ∓ y_i^±", poly(ring, &[(1, &[]), (s, &[(y, e)])])));
                    f.push(Factor::num("1 ∓ qt y_i^±", poly(ring, &[(1, &[]), (s, &[(q, 1), (t, 1), (y, e)])])));
                    f.push(Factor::den("1 ∓ q y_i^±", poly(ring, &[(1, &[]), (s, &[(q, 1), (y, e)])]))?);
                    f.push(Factor::den("1 ∓ t y_i^±", poly(ring, &[(1, &[]), (s, &[(t, 1), (y, e)])]))?);
                }
            }
            for &x in &h.xs {
                f.push(Factor::num("1 ± x_j", poly(ring, &[(1, &[]), (-s, &[(x, 1)])])));
            }
            out.push(make(ys, pre.clone(), f)?);
        }
    }
    Ok(out)
}
