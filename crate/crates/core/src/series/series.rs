use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::table::Ring;
use super::SeriesError;

/// Coefficient field: reduced fractions with positive denominator.
pub type ExactScalar = BigRational;

/// Exponent vector aligned with the ring's variable table.
pub type Mono = SmallVec<[i16; 16]>;

/// Image of one variable under [`Series::substitute`].
#[derive(Clone, Debug)]
pub enum Image {
    /// `coef * prod v^e` as an exponent vector over the same table.
    Monomial(Mono, ExactScalar),
    Zero,
}

#[derive(Clone)]
pub struct Series {
    ring: Arc<Ring>,
    terms: FxHashMap<Mono, ExactScalar>,
}

/// Outcome of classifying one ratio monomial for geometric expansion.
fn ratio_ok(ring: &Ring, e: &[i16]) -> bool {
    let d = ring.degrees(e);
    if d.iter().any(|&x| x < 0) {
        return false;
    }
    if d.iter().sum::<i32>() > 0 {
        return true;
    }
    // Weight-free ratio: must push some depth-budgeted laurent variable downward.
    e.iter().enumerate().any(|(i, &x)| x < 0 && ring.policy.depth(i).is_some())
}

impl Series {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Series { ring: ring.clone(), terms: FxHashMap::default() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, ExactScalar::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: ExactScalar) -> Self {
        let mut s = Self::zero(ring);
        let e: Mono = SmallVec::from_elem(0, ring.table.len());
        s.insert(e, c);
        s
    }

    pub fn from_int(ring: &Arc<Ring>, n: i64) -> Self {
        Self::constant(ring, ExactScalar::from_integer(n.into()))
    }

    /// The single variable `name` (square roots allowed: `s_q`).
    pub fn var(ring: &Arc<Ring>, name: &str) -> Result<Self, SeriesError> {
        let i = ring.var(name)?;
        let mut e: Mono = SmallVec::from_elem(0, ring.table.len());
        e[i] = 1;
        Ok(Self::monomial(ring, e, ExactScalar::one()))
    }

    /// `coef * prod name^exp`; exceeding caps yields zero.
    pub fn term(ring: &Arc<Ring>, powers: &[(&str, i16)], coef: ExactScalar) -> Result<Self, SeriesError> {
        let mut e: Mono = SmallVec::from_elem(0, ring.table.len());
        for &(n, p) in powers {
            e[ring.var(n)?] += p;
        }
        Self::check_signs(ring, &e)?;
        Ok(Self::monomial(ring, e, coef))
    }

    /// Monomial from a raw exponent vector (canonicalized, re-truncated).
    pub fn monomial(ring: &Arc<Ring>, e: Mono, coef: ExactScalar) -> Self {
        let mut s = Self::zero(ring);
        s.insert(e, coef);
        s
    }

    /// Sum of `c * e` over the given terms, truncated to the ring's policy.
    pub fn from_terms<I: IntoIterator<Item = (Mono, ExactScalar)>>(ring: &Arc<Ring>, terms: I) -> Self {
        let mut s = Self::zero(ring);
        for (e, c) in terms {
            s.insert(e, c);
        }
        s
    }

    fn check_signs(ring: &Ring, e: &[i16]) -> Result<(), SeriesError> {
        let mut c: Mono = e.into();
        canonicalize(ring, &mut c);
        for (i, &x) in c.iter().enumerate() {
            if x < 0 && !ring.table.flags(i).laurent {
                return Err(SeriesError::NegativeExponent(fmt_mono(ring, &c)));
            }
        }
        Ok(())
    }

    /// Adds `c * e` after canonicalizing; drops it if outside the policy.
    fn insert(&mut self, mut e: Mono, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        canonicalize(&self.ring, &mut e);
        let deg = self.ring.degrees(&e);
        if !self.ring.within_caps(&deg) || !self.ring.within_depth(&e) {
            return;
        }
        accumulate(&mut self.terms, e, c);
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &ExactScalar)> {
        self.terms.iter()
    }

    /// Terms in graded lexicographic order.
    pub fn sorted_terms(&self) -> Vec<(&Mono, &ExactScalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex(a.0, b.0));
        v
    }

    pub fn coeff(&self, e: &[i16]) -> ExactScalar {
        self.terms.get(e).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn constant_coeff(&self) -> ExactScalar {
        let e: Mono = SmallVec::from_elem(0, self.ring.table.len());
        self.coeff(&e)
    }

    pub fn compatible(&self, other: &Series) -> Result<(), SeriesError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(SeriesError::PolicyMismatch(
                format!("{} {:?}", self.ring.policy, self.ring.table.names()),
                format!("{} {:?}", other.ring.policy, other.ring.table.names()),
            ))
        }
    }

    pub fn try_add(&self, other: &Series) -> Result<Series, SeriesError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            accumulate(&mut out.terms, e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Series) -> Result<Series, SeriesError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            accumulate(&mut out.terms, e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Series) -> Result<Series, SeriesError> {
        self.compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Series) -> Series {
        let ring = &self.ring;
        let caps = ring.policy.caps();
        fn with_deg<'a>(ring: &Ring, s: &'a Series) -> Vec<(&'a Mono, &'a ExactScalar, [i32; 4])> {
            let mut v: Vec<_> = s.terms.iter().map(|(e, c)| (e, c, ring.degrees(e))).collect();
            v.sort_by_key(|t| t.2[0]);
            v
        }
        let a = with_deg(ring, self);
        let b = with_deg(ring, other);
        let has_depth = ring.policy.laurent_depth.iter().any(|d| d.is_some());
        let mut out = FxHashMap::default();
        for (ea, ca, da) in &a {
            for (eb, cb, db) in &b {
                if da[0] + db[0] > caps[0] as i32 {
                    break;
                }
                if (1..4).any(|s| da[s] + db[s] > caps[s] as i32) {
                    continue;
                }
                let mut e: Mono = (*ea).clone();
                for (x, y) in e.iter_mut().zip(eb.iter()) {
                    *x += *y;
                }
                if has_depth && !ring.within_depth(&e) {
                    continue;
                }
                canonicalize(ring, &mut e);
                accumulate(&mut out, e, (*ca) * (*cb));
            }
        }
        Series { ring: ring.clone(), terms: out }
    }

    pub fn scale(&self, c: &ExactScalar) -> Series {
        if c.is_zero() {
            return Series::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect();
        Series { ring: self.ring.clone(), terms }
    }

    pub fn scale_int(&self, n: i64) -> Series {
        self.scale(&ExactScalar::from_integer(n.into()))
    }

    /// Multiplies by the monomial `c * e` (canonicalized, re-truncated).
    pub fn mul_mono(&self, e: &[i16], c: &ExactScalar) -> Series {
        let mut out = Series::zero(&self.ring);
        for (f, x) in &self.terms {
            let mut g = f.clone();
            for (a, b) in g.iter_mut().zip(e) {
                *a += *b;
            }
            out.insert(g, x * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Series {
        let mut acc = Series::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Product of a list of series (empty product is 1).
    pub fn product<'a, I: IntoIterator<Item = &'a Series>>(ring: &Arc<Ring>, it: I) -> Result<Series, SeriesError> {
        let mut acc = Series::one(ring);
        for s in it {
            acc = acc.try_mul(s)?;
        }
        Ok(acc)
    }

    /// Sum of a list of series (empty sum is 0).
    pub fn sum<'a, I: IntoIterator<Item = &'a Series>>(ring: &Arc<Ring>, it: I) -> Result<Series, SeriesError> {
        let mut acc = Series::zero(ring);
        for s in it {
            acc.add_assign_checked(s)?;
        }
        Ok(acc)
    }

    pub fn add_assign_checked(&mut self, other: &Series) -> Result<(), SeriesError> {
        self.compatible(other)?;
        for (e, c) in &other.terms {
            accumulate(&mut self.terms, e.clone(), c.clone());
        }
        Ok(())
    }

    /// `1/(s*D - sub)` expanded as `s*D^{-1} * sum_k (s*sub/D)^k`.
    ///
    /// `D` must involve laurent variables only. Every monomial of `s*sub/D`
    /// must have positive grading weight, or be weight-free while lowering a
    /// depth-budgeted laurent variable.
    pub fn expand_reciprocal(dominant: &[i16], sign: i32, sub: &Series) -> Result<Series, SeriesError> {
        let ring = sub.ring.clone();
        let label = || format!("{}*{} - ({})", sign, fmt_mono(&ring, dominant), sub);
        if sign != 1 && sign != -1 {
            return Err(SeriesError::NonExpandable(label()));
        }
        if dominant.iter().enumerate().any(|(i, &x)| x != 0 && !ring.table.flags(i).laurent) {
            return Err(SeriesError::NonExpandable(label()));
        }
        let inv: Mono = dominant.iter().map(|&x| -x).collect();
        let s = ExactScalar::from_integer(sign.into());
        // Ratio computed without depth truncation so its classification is honest.
        let mut ratio_terms = Vec::new();
        for (e, c) in &sub.terms {
            let mut r = e.clone();
            for (a, b) in r.iter_mut().zip(&inv) {
                *a += *b;
            }
            canonicalize(&ring, &mut r);
            if !ratio_ok(&ring, &r) {
                return Err(SeriesError::NonExpandable(label()));
            }
            ratio_terms.push((r, c * &s));
        }
        // The prefactor D^{-1} can raise laurent exponents; widen the budget by that much.
        let widen: Vec<(usize, u32)> = inv
            .iter()
            .enumerate()
            .filter_map(|(i, &x)| {
                ring.policy.depth(i).filter(|_| x > 0).map(|d| (i, d + x as u32))
            })
            .collect();
        let work = if widen.is_empty() { ring.clone() } else { ring.with_depths(&widen)? };
        let mut ratio = Series::zero(&work);
        for (r, c) in ratio_terms {
            ratio.insert(r, c);
        }
        let mut total = Series::one(&work);
        let mut power = Series::one(&work);
        let mut steps = 0usize;
        loop {
            power = power.mul_unchecked(&ratio);
            if power.is_zero() {
                break;
            }
            total = Series { ring: work.clone(), terms: merge(total.terms, &power.terms) };
            steps += 1;
            if steps > 100_000 {
                return Err(SeriesError::NonExpandable(label()));
            }
        }
        let mut out = Series::zero(&ring);
        for (e, c) in total.terms {
            let mut g = e;
            for (a, b) in g.iter_mut().zip(&inv) {
                *a += *b;
            }
            out.insert(g, c * &s);
        }
        Ok(out)
    }

    /// `1/f` for a binomial-like factor, choosing the first term that works as
    /// the dominant monomial.
    pub fn reciprocal(f: &Series) -> Result<Series, SeriesError> {
        let mut cands: Vec<_> = f.sorted_terms().into_iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        cands.reverse();
        for (e, c) in &cands {
            let sign = if c.is_one() {
                1
            } else if *c == -ExactScalar::one() {
                -1
            } else {
                continue;
            };
            let mut sub = Series::monomial(&f.ring, e.clone(), c.clone());
            sub = sub.try_sub(f)?;
            if let Ok(r) = Series::expand_reciprocal(e, sign, &sub) {
                return Ok(r);
            }
        }
        Err(SeriesError::NonExpandable(f.to_string()))
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn invert(&self) -> Result<Series, SeriesError> {
        let c0 = self.constant_coeff();
        if c0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm(self.to_string()));
        }
        let inv0 = c0.recip();
        let mut g = Series::one(&self.ring).try_sub(&self.scale(&inv0))?;
        g.terms.retain(|_, c| !c.is_zero());
        for e in g.terms.keys() {
            if !ratio_ok(&self.ring, e) {
                return Err(SeriesError::NonExpandable(self.to_string()));
            }
        }
        let mut total = Series::one(&self.ring);
        let mut power = Series::one(&self.ring);
        loop {
            power = power.mul_unchecked(&g);
            if power.is_zero() {
                break;
            }
            total = Series { ring: self.ring.clone(), terms: merge(total.terms, &power.terms) };
        }
        Ok(total.scale(&inv0))
    }

    /// Sub-series of monomials with exponent 0 on every listed variable.
    pub fn constant_term(&self, vars: &[usize]) -> Series {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| vars.iter().all(|&v| e[v] == 0))
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Series { ring: self.ring.clone(), terms }
    }

    /// Coefficient extraction: the part with exponent `k` in `var`, with `var` removed.
    pub fn coefficient_of(&self, var: usize, k: i16) -> Series {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] == k)
            .map(|(e, c)| {
                let mut g = e.clone();
                g[var] = 0;
                (g, c.clone())
            })
            .collect();
        Series { ring: self.ring.clone(), terms }
    }

    /// Exact substitution `v -> image(v)` for the listed variables, then
    /// multiplication by the compensating monomial and re-truncation.
    pub fn substitute(&self, assignment: &[(usize, Image)], compensation: Option<&[i16]>) -> Result<Series, SeriesError> {
        let n = self.ring.table.len();
        let mut out = FxHashMap::default();
        'terms: for (e, c) in &self.terms {
            let mut g: Mono = e.clone();
            let mut coef = c.clone();
            for (v, img) in assignment {
                let k = e[*v];
                if k == 0 {
                    continue;
                }
                g[*v] -= k;
                match img {
                    Image::Zero => continue 'terms,
                    Image::Monomial(m, a) => {
                        for i in 0..n {
                            g[i] += m[i] * k;
                        }
                        if k >= 0 {
                            coef *= a.pow(k as i32);
                        } else {
                            coef *= a.recip().pow((-k) as i32);
                        }
                    }
                }
            }
            if let Some(comp) = compensation {
                for i in 0..n {
                    g[i] += comp[i];
                }
            }
            canonicalize(&self.ring, &mut g);
            for (i, &x) in g.iter().enumerate() {
                if x < 0 && !self.ring.table.flags(i).laurent {
                    return Err(SeriesError::NegativeExponent(fmt_mono(&self.ring, &g)));
                }
            }
            let deg = self.ring.degrees(&g);
            if self.ring.within_caps(&deg) && self.ring.within_depth(&g) {
                accumulate(&mut out, g, coef);
            }
        }
        Ok(Series { ring: self.ring.clone(), terms: out })
    }

    /// Image for `v -> coef * name^exp ...`.
    pub fn image(ring: &Ring, powers: &[(&str, i16)], coef: ExactScalar) -> Result<Image, SeriesError> {
        let mut e: Mono = SmallVec::from_elem(0, ring.table.len());
        for &(n, p) in powers {
            e[ring.var(n)?] += p;
        }
        Ok(Image::Monomial(e, coef))
    }

    /// Swaps two variables.
    pub fn swap(&self, a: &str, b: &str) -> Result<Series, SeriesError> {
        let ia = self.ring.var(a)?;
        let ib = self.ring.var(b)?;
        let mut perm: Vec<usize> = (0..self.ring.table.len()).collect();
        perm.swap(ia, ib);
        self.permute(&perm)
    }

    /// Relabels variable `i` as `perm[i]`; square-root pairs must be permuted together.
    pub fn permute(&self, perm: &[usize]) -> Result<Series, SeriesError> {
        let mut out = Series::zero(&self.ring);
        for (e, c) in &self.terms {
            let mut g: Mono = SmallVec::from_elem(0, e.len());
            for (i, &x) in e.iter().enumerate() {
                g[perm[i]] += x;
            }
            out.insert(g, c.clone());
        }
        Ok(out)
    }

    /// Checks that the square-root symbol `root` never appears with odd
    /// exponent; canonical form then already expresses everything in the base.
    pub fn assert_even_powers(&self, root: &str) -> Result<Series, SeriesError> {
        let r = self.ring.var(root)?;
        if self.ring.table.sqrt_of(r).is_none() {
            return Err(SeriesError::UnknownVariable(format!("{root} is not a square-root symbol")));
        }
        let mut bad: Vec<_> = self.terms.keys().filter(|e| e[r] != 0).collect();
        if !bad.is_empty() {
            bad.sort_by(|a, b| grlex(a, b));
            return Err(SeriesError::OddPower { root: root.to_string(), monomial: fmt_mono(&self.ring, bad[0]) });
        }
        Ok(self.clone())
    }

    /// Moves the series into another ring over the same table, re-truncating.
    pub fn rehome(&self, ring: &Arc<Ring>) -> Result<Series, SeriesError> {
        if ring.table != self.ring.table {
            return Err(SeriesError::PolicyMismatch(
                format!("{:?}", self.ring.table.names()),
                format!("{:?}", ring.table.names()),
            ));
        }
        let mut out = Series::zero(ring);
        for (e, c) in &self.terms {
            out.insert(e.clone(), c.clone());
        }
        Ok(out)
    }

    /// Keeps only terms satisfying `keep`.
    pub fn filter<F: Fn(&[i16]) -> bool>(&self, keep: F) -> Series {
        let terms = self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect();
        Series { ring: self.ring.clone(), terms }
    }

    /// Largest exponent of `var` among the terms (None for the zero series).
    pub fn max_exponent(&self, var: usize) -> Option<i16> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn min_exponent(&self, var: usize) -> Option<i16> {
        self.terms.keys().map(|e| e[var]).min()
    }

    /// JSON dump: `[[exponents...], "num", "den"]` records in graded lex order.
    pub fn dump_json(&self) -> serde_json::Value {
        let recs: Vec<serde_json::Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(e, c)| serde_json::json!([e.to_vec(), c.numer().to_string(), c.denom().to_string()]))
            .collect();
        serde_json::json!({
            "variables": self.ring.table.names(),
            "terms": recs,
        })
    }

    /// Numeric evaluation with every variable assigned an exact value.
    pub fn evaluate(&self, values: &[ExactScalar]) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    t *= values[i].pow(x as i32);
                } else if x < 0 {
                    t *= values[i].recip().pow((-x) as i32);
                }
            }
            acc += t;
        }
        acc
    }
}

fn accumulate(map: &mut FxHashMap<Mono, ExactScalar>, e: Mono, c: ExactScalar) {
    use std::collections::hash_map::Entry;
    match map.entry(e) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
    }
}

fn merge(mut a: FxHashMap<Mono, ExactScalar>, b: &FxHashMap<Mono, ExactScalar>) -> FxHashMap<Mono, ExactScalar> {
    for (e, c) in b {
        accumulate(&mut a, e.clone(), c.clone());
    }
    a
}

/// Folds pairs of square-root exponents into the base variable.
fn canonicalize(ring: &Ring, e: &mut [i16]) {
    for i in 0..e.len() {
        if let Some(base) = ring.table.sqrt_of(i) {
            let x = e[i];
            if !(0..=1).contains(&x) {
                e[base] += x.div_euclid(2);
                e[i] = x.rem_euclid(2);
            }
        }
    }
}

fn grlex(a: &[i16], b: &[i16]) -> Ordering {
    let da: i32 = a.iter().map(|&x| x as i32).sum();
    let db: i32 = b.iter().map(|&x| x as i32).sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

pub(crate) fn fmt_mono(ring: &Ring, e: &[i16]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| if x == 1 { ring.table.name(i).to_string() } else { format!("{}^{}", ring.table.name(i), x) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.sorted_terms() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let m = fmt_mono(&self.ring, e);
            if m == "1" {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series({self})")
    }
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.compatible(other).is_ok() && self.terms == other.terms
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&Series> for &Series {
            type Output = Series;
            fn $m(self, rhs: &Series) -> Series {
                self.$imp(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Series> for Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                (&self).$imp(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $m(self, rhs: &Series) -> Series {
                (&self).$imp(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(&-ExactScalar::one())
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        (&self).neg()
    }
}

/// `n!` as a scalar.
pub fn factorial(n: u32) -> ExactScalar {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= k;
    }
    ExactScalar::from_integer(f)
}
