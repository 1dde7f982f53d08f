use std::cell::RefCell;
use std::sync::Arc;

use num_traits::Zero;
use rustc_hash::FxHashMap;

use super::partition::Partition;
use crate::series::{Mono, Ring, Series, SeriesError};

/// Bivariate polynomial `Σ c_{ij} a^i b^j` with series coefficients.
///
/// Used for `h_λ(a,b)` so that arguments such as `c/√t` can be assembled
/// without ever forming a negative power of a non-laurent variable.
#[derive(Clone, Debug)]
pub struct HPoly {
    pub terms: Vec<(u32, u32, Series)>,
}

impl HPoly {
    fn one(ring: &Arc<Ring>) -> Self {
        HPoly { terms: vec![(0, 0, Series::one(ring))] }
    }

    fn mul(&self, other: &HPoly) -> HPoly {
        let mut acc: FxHashMap<(u32, u32), Series> = FxHashMap::default();
        for (i, j, c) in &self.terms {
            for (k, l, d) in &other.terms {
                let p = c * d;
                match acc.get_mut(&(i + k, j + l)) {
                    Some(s) => *s = &*s + &p,
                    None => {
                        acc.insert((i + k, j + l), p);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, s)| !s.is_zero()).map(|((i, j), s)| (i, j, s)).collect();
        terms.sort_by_key(|t| (t.0, t.1));
        HPoly { terms }
    }

    /// Substitutes series for `a` and `b`.
    pub fn eval(&self, a: &Series, b: &Series) -> Series {
        let ring = a.ring().clone();
        let mut out = Series::zero(&ring);
        for (i, j, c) in &self.terms {
            out = out + c * &(a.pow(*i) * b.pow(*j));
        }
        out
    }

    /// Substitutes `a -> A/r`, `b -> B/r` for monomials `A`, `B` and a
    /// square-root symbol `r`, multiplied by `r^{half_power}`.
    ///
    /// Fails if some term would need a negative power of `r`.
    pub fn eval_scaled(&self, a: &[i16], b: &[i16], root: usize, half_power: i32) -> Result<Series, SeriesError> {
        let ring = match self.terms.first() {
            Some((_, _, c)) => c.ring().clone(),
            None => return Err(SeriesError::UnknownVariable("empty HPoly".into())),
        };
        let mut out = Series::zero(&ring);
        for (i, j, c) in &self.terms {
            let r = half_power - (*i + *j) as i32;
            if r < 0 {
                return Err(SeriesError::NegativeExponent(format!("{}^{}", ring.table.name(root), r)));
            }
            let mut e: Mono = a.iter().zip(b).map(|(x, y)| x * *i as i16 + y * *j as i16).collect();
            e[root] += r as i16;
            out = out + c.mul_mono(&e, &num_traits::One::one());
        }
        Ok(out)
    }

    /// `Σ c_{ij} a^i b^j r^{half_power-i-j}` for a square-root symbol `r`,
    /// i.e. `r^{half_power} h(a/r, b/r)`. Terms killed by a zero argument are
    /// skipped; any surviving term with a negative power of `r` is an error.
    pub fn eval_rooted(&self, a: &Series, b: &Series, root: usize, half_power: i32) -> Result<Series, SeriesError> {
        let ring = a.ring().clone();
        let mut out = Series::zero(&ring);
        let mut e: Mono = smallvec::SmallVec::from_elem(0, ring.table.len());
        for (i, j, c) in &self.terms {
            let ab = a.pow(*i) * b.pow(*j);
            if ab.is_zero() {
                continue;
            }
            let r = half_power - (*i + *j) as i32;
            if r < 0 {
                return Err(SeriesError::NegativeExponent(format!("{}^{}", ring.table.name(root), r)));
            }
            e[root] = r as i16;
            out = out + (c * &ab).mul_mono(&e, &num_traits::One::one());
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// q-series primitives over a fixed base variable (`q` on the q-Whittaker
/// side, `t` on the Hall–Littlewood side), with memoized Pochhammers and
/// Gaussian binomials.
pub struct QBase {
    ring: Arc<Ring>,
    base: Series,
    poch: RefCell<Vec<Series>>,
    poch_inv: RefCell<Vec<Series>>,
    binom: RefCell<FxHashMap<(u32, u32), Series>>,
}

impl QBase {
    pub fn new(ring: &Arc<Ring>, name: &str) -> Result<Self, SeriesError> {
        Ok(Self::from_series(Series::var(ring, name)?))
    }

    pub fn from_series(base: Series) -> Self {
        let ring = base.ring().clone();
        QBase {
            poch: RefCell::new(vec![Series::one(&ring)]),
            poch_inv: RefCell::new(vec![Series::one(&ring)]),
            binom: RefCell::new(FxHashMap::default()),
            ring,
            base,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn base(&self) -> &Series {
        &self.base
    }

    pub fn one(&self) -> Series {
        Series::one(&self.ring)
    }

    /// `(base; base)_m`.
    pub fn poch(&self, m: u32) -> Series {
        let mut p = self.poch.borrow_mut();
        while p.len() <= m as usize {
            let k = p.len() as u32;
            let f = self.one() - self.base.pow(k);
            let next = &p[k as usize - 1] * &f;
            p.push(next);
        }
        p[m as usize].clone()
    }

    /// `1/(base; base)_m`.
    pub fn poch_inv(&self, m: u32) -> Series {
        let have = self.poch_inv.borrow().len();
        for k in have..=m as usize {
            let inv = self.poch(k as u32).invert().expect("(q;q)_m has unit constant term");
            self.poch_inv.borrow_mut().push(inv);
        }
        self.poch_inv.borrow()[m as usize].clone()
    }

    /// Gaussian binomial `[m, k]`; zero unless `0 ≤ k ≤ m`.
    pub fn binom(&self, m: i64, k: i64) -> Series {
        if m < 0 || k < 0 || k > m {
            return Series::zero(&self.ring);
        }
        let (m, k) = (m as u32, k as u32);
        if k == 0 || k == m {
            return self.one();
        }
        if let Some(s) = self.binom.borrow().get(&(m, k)) {
            return s.clone();
        }
        let v = self.binom(m as i64 - 1, k as i64 - 1) + self.base.pow(k) * self.binom(m as i64 - 1, k as i64);
        self.binom.borrow_mut().insert((m, k), v.clone());
        v
    }

    /// Rogers–Szegő `h_m(z) = Σ_k [m,k] z^k`; zero for `m < 0`.
    pub fn rogers_szego(&self, m: i64, z: &Series) -> Series {
        if m < 0 {
            return Series::zero(&self.ring);
        }
        let mut out = Series::zero(&self.ring);
        let mut zp = self.one();
        for k in 0..=m {
            out = out + self.binom(m, k) * &zp;
            zp = &zp * z;
        }
        out
    }

    /// Homogeneous `a^m h_m(b/a) = Σ_k [m,k] a^{m-k} b^k`.
    pub fn rogers_szego_homogeneous(&self, m: i64, a: &Series, b: &Series) -> Series {
        if m < 0 {
            return Series::zero(&self.ring);
        }
        let mut out = Series::zero(&self.ring);
        for k in 0..=m {
            out = out + self.binom(m, k) * a.pow((m - k) as u32) * b.pow(k as u32);
        }
        out
    }

    fn factor_odd(&self, m: u32) -> HPoly {
        let terms = (0..=m).map(|k| (m - k, k, self.binom(m as i64, k as i64))).collect();
        HPoly { terms }
    }

    fn factor_even(&self, m: u32) -> HPoly {
        let terms = (0..=m).map(|k| (k, k, self.binom(m as i64, k as i64))).collect();
        HPoly { terms }
    }

    /// `∏_i a^{m_{2i-1}} h_{m_{2i-1}}(b/a) h_{m_{2i}}(ab)` from a list `m_1, m_2, ...`.
    fn h_from_counts(&self, counts: &[u32]) -> HPoly {
        let mut acc = HPoly::one(&self.ring);
        for (j, &m) in counts.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let f = if j % 2 == 0 { self.factor_odd(m) } else { self.factor_even(m) };
            acc = acc.mul(&f);
        }
        acc
    }

    /// `h_λ(a,b)` as a bivariate polynomial (multiplicity form).
    pub fn h_poly(&self, lambda: &Partition) -> HPoly {
        self.h_from_counts(&lambda.multiplicities())
    }

    /// `h_{λ'}(a,b)` as a bivariate polynomial (gap form, `m_j(λ') = λ_j - λ_{j+1}`).
    pub fn h_poly_conj(&self, lambda: &Partition) -> HPoly {
        self.h_from_counts(&lambda.gaps())
    }

    pub fn h_lambda(&self, lambda: &Partition, a: &Series, b: &Series) -> Series {
        self.h_poly(lambda).eval(a, b)
    }

    pub fn h_lambda_conj(&self, lambda: &Partition, a: &Series, b: &Series) -> Series {
        self.h_poly_conj(lambda).eval(a, b)
    }
}

/// Finite Pochhammer `(z; base)_m = ∏_{i<m} (1 - z base^i)`.
pub fn pochhammer(z: &Series, base: &Series, m: u32) -> Series {
    let ring = z.ring().clone();
    let mut out = Series::one(&ring);
    let mut zi = z.clone();
    for _ in 0..m {
        out = &out * &(Series::one(&ring) - &zi);
        zi = &zi * base;
    }
    out
}

/// Infinite (multi-base) Pochhammer `(z; b_1, ..., b_k)_∞ = ∏ (1 - z b_1^{i_1} ... b_k^{i_k})`.
///
/// Factors whose monomial truncates to zero equal 1 within caps, so the
/// product is finite whenever `z` has no constant term and each base has
/// positive weight.
pub fn pochhammer_inf(z: &Series, bases: &[&Series]) -> Result<Series, SeriesError> {
    if !z.constant_coeff().is_zero() {
        return Err(SeriesError::NonExpandable(format!("({z}; ...)_inf with nonzero constant term")));
    }
    for b in bases {
        if !b.constant_coeff().is_zero() {
            return Err(SeriesError::NonExpandable(format!("base {b} has a constant term")));
        }
    }
    let ring = z.ring().clone();
    let mut out = Series::one(&ring);
    fn rec(ring: &Arc<Ring>, zi: &Series, bases: &[&Series], out: &mut Series) {
        if zi.is_zero() {
            return;
        }
        match bases.split_first() {
            None => *out = &*out * &(Series::one(ring) - zi),
            Some((b, rest)) => {
                let mut cur = zi.clone();
                while !cur.is_zero() {
                    rec(ring, &cur, rest, out);
                    cur = &cur * *b;
                }
            }
        }
    }
    rec(&ring, z, bases, &mut out);
    Ok(out)
}

/// `1/(z; bases)_∞`.
pub fn pochhammer_inf_inv(z: &Series, bases: &[&Series]) -> Result<Series, SeriesError> {
    pochhammer_inf(z, bases)?.invert()
}
