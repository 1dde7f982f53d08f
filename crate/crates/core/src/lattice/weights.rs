//! Local weights of the stochastic six-vertex model, its two boundary
//! tables, and the Yang–Baxter check.

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::quad::Quad;
use crate::report::VerificationReport;
use crate::series::{ExactScalar, Series, SeriesError};

/// Arithmetic needed to evaluate local weights: formal series, exact
/// rationals, elements of `Q(√q)`, or floats for sampling.
pub trait Weight: Clone {
    fn zero_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn recip(&self) -> Result<Self, SeriesError>;
    fn is_zero(&self) -> bool;

    fn one_like(&self) -> Self {
        self.int_like(1)
    }

    fn neg(&self) -> Self {
        self.zero_like().sub(self)
    }

    fn div(&self, o: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&o.recip()?))
    }

    fn pow(&self, k: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Weight for Series {
    fn zero_like(&self) -> Self {
        Series::zero(self.ring())
    }
    fn int_like(&self, n: i64) -> Self {
        Series::from_int(self.ring(), n)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn recip(&self) -> Result<Self, SeriesError> {
        self.invert()
    }
    fn is_zero(&self) -> bool {
        Series::is_zero(self)
    }
}

impl Weight for ExactScalar {
    fn zero_like(&self) -> Self {
        ExactScalar::zero()
    }
    fn int_like(&self, n: i64) -> Self {
        ExactScalar::from_integer(n.into())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn recip(&self) -> Result<Self, SeriesError> {
        if Zero::is_zero(self) {
            return Err(SeriesError::ZeroConstantTerm("0".into()));
        }
        Ok(ExactScalar::recip(self))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Weight for Quad {
    fn zero_like(&self) -> Self {
        Quad::rational(ExactScalar::zero(), self.radicand())
    }
    fn int_like(&self, n: i64) -> Self {
        Quad::rational(ExactScalar::from_integer(n.into()), self.radicand())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn recip(&self) -> Result<Self, SeriesError> {
        Quad::recip(self).ok_or_else(|| SeriesError::ZeroConstantTerm("0".into()))
    }
    fn is_zero(&self) -> bool {
        Quad::is_zero(self)
    }
}

impl Weight for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn int_like(&self, n: i64) -> Self {
        n as f64
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn recip(&self) -> Result<Self, SeriesError> {
        if *self == 0.0 {
            return Err(SeriesError::ZeroConstantTerm("0".into()));
        }
        Ok(1.0 / self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

/// `R_r(i, j; k, ℓ)`: bottom `i`, left `j`, top `k`, right `ℓ`, spectral
/// ratio `r` (vertical over horizontal rapidity), anisotropy `t`.
pub fn r_weight<W: Weight>(i: u8, j: u8, k: u8, l: u8, ratio: &W, t: &W) -> Result<W, SeriesError> {
    let one = ratio.one_like();
    if i + j != k + l {
        return Ok(ratio.zero_like());
    }
    let den = one.sub(&t.mul(ratio));
    Ok(match (i, j, k, l) {
        (0, 0, 0, 0) | (1, 1, 1, 1) => one,
        (1, 0, 1, 0) => t.mul(&one.sub(ratio)).div(&den)?,
        (1, 0, 0, 1) => one.sub(t).div(&den)?,
        (0, 1, 0, 1) => one.sub(ratio).div(&den)?,
        (0, 1, 1, 0) => one.sub(t).mul(ratio).div(&den)?,
        _ => unreachable!("flux-conserving entries are listed"),
    })
}

/// `h(x) = (1 - x²)/((1 + p x)(1 + p' x))`.
pub fn boundary_h<W: Weight>(x: &W, p: &W, p2: &W) -> Result<W, SeriesError> {
    let one = x.one_like();
    let num = one.sub(&x.mul(x));
    let den = one.add(&p.mul(x)).mul(&one.add(&p2.mul(x)));
    num.div(&den)
}

/// Boundary weight `K(i; j)` with `i` incoming, `j` outgoing, given `h` and the
/// product `ab` of the boundary parameters.
pub fn k_weight<W: Weight>(i: u8, j: u8, h: &W, ab: &W) -> W {
    let one = h.one_like();
    match (i, j) {
        (0, 0) => one.add(&ab.mul(h)),
        (0, 1) => ab.mul(h).neg(),
        (1, 0) => h.clone(),
        _ => one.sub(h),
    }
}

/// Dual boundary weight with `h` and the product `cd`.
pub fn k_dual_weight<W: Weight>(i: u8, j: u8, h: &W, cd: &W) -> W {
    let one = h.one_like();
    match (i, j) {
        (0, 0) => one.sub(h),
        (0, 1) => h.clone(),
        (1, 0) => cd.mul(h).neg(),
        _ => one.add(&cd.mul(h)),
    }
}

fn bit(v: usize, i: usize) -> u8 {
    ((v >> i) & 1) as u8
}

/// Left minus right side of the `(i₁,i₂,i₃,j₁,j₂,j₃)` Yang–Baxter component.
pub fn yang_baxter_residual<W: Weight>(ins: [u8; 3], outs: [u8; 3], x: &W, y: &W, z: &W, t: &W) -> Result<W, SeriesError> {
    let [i1, i2, i3] = ins;
    let [j1, j2, j3] = outs;
    let (yx, zx, zy) = (y.div(x)?, z.div(x)?, z.div(y)?);
    let mut lhs = x.zero_like();
    let mut rhs = x.zero_like();
    for k in 0..8usize {
        let (k1, k2, k3) = (bit(k, 0), bit(k, 1), bit(k, 2));
        let l = r_weight(i2, i1, k2, k1, &yx, t)?
            .mul(&r_weight(i3, k1, k3, j1, &zx, t)?)
            .mul(&r_weight(k3, k2, j3, j2, &zy, t)?);
        lhs = lhs.add(&l);
        let r = r_weight(i3, i2, k3, k2, &zy, t)?
            .mul(&r_weight(k3, i1, j3, k1, &zx, t)?)
            .mul(&r_weight(k2, k1, j2, j1, &yx, t)?);
        rhs = rhs.add(&r);
    }
    Ok(lhs.sub(&rhs))
}

fn random_point(rng: &mut ChaCha8Rng) -> ExactScalar {
    loop {
        let n: i64 = rng.gen_range(1..40);
        let d: i64 = rng.gen_range(1..40);
        let v = ExactScalar::new(n.into(), d.into());
        if !v.is_one() {
            return v;
        }
    }
}

/// All 64 components at the fixed point `(x,y,z,t) = (1/2,1/3,1/5,1/7)` and at
/// `points` seeded random rational points each.
pub fn yang_baxter_verify(points: usize, seed: u64) -> VerificationReport {
    let mut rep = VerificationReport::new("yang-baxter").param("points", points).param("seed", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = |n: i64, d: i64| ExactScalar::new(n.into(), d.into());
    let mut pts = vec![[f(1, 2), f(1, 3), f(1, 5), f(1, 7)]];
    while pts.len() < points + 1 {
        let p = [random_point(&mut rng), random_point(&mut rng), random_point(&mut rng), random_point(&mut rng)];
        // keep every 1 - t·ratio denominator nonzero
        let ratios = [&p[1] / &p[0], &p[2] / &p[0], &p[2] / &p[1]];
        if ratios.iter().all(|r| !(&p[3] * r).is_one()) {
            pts.push(p);
        }
    }
    for comp in 0..64usize {
        let ins = [bit(comp, 5), bit(comp, 4), bit(comp, 3)];
        let outs = [bit(comp, 2), bit(comp, 1), bit(comp, 0)];
        let mut worst = ExactScalar::zero();
        for p in &pts {
            match yang_baxter_residual(ins, outs, &p[0], &p[1], &p[2], &p[3]) {
                Ok(r) if r.abs() > worst => worst = r.abs(),
                Ok(_) => {}
                Err(e) => {
                    rep.check(format!("{ins:?}->{outs:?}"), false, json!(e.to_string()));
                }
            }
        }
        rep.check(format!("{ins:?}->{outs:?}"), Zero::is_zero(&worst), json!(ToPrimitive::to_f64(&worst)));
    }
    rep.finish()
}

/// Row sums of the R, K and dual-K tables, each as a series identity.
pub fn stochasticity_verify(ratio: &Series, t: &Series, h: &Series, ab: &Series) -> Result<VerificationReport, SeriesError> {
    let mut rep = VerificationReport::new("stochasticity");
    let one = Series::one(ratio.ring());
    for i in 0..2u8 {
        for j in 0..2u8 {
            let mut s = ratio.zero_like();
            for k in 0..2u8 {
                for l in 0..2u8 {
                    s = s + r_weight(i, j, k, l, ratio, t)?;
                }
            }
            rep.check_series(format!("R-row-{i}{j}"), &(&s - &one));
        }
        let ks = k_weight(i, 0, h, ab) + k_weight(i, 1, h, ab);
        rep.check_series(format!("K-row-{i}"), &(&ks - &one));
        let kd = k_dual_weight(i, 0, h, ab) + k_dual_weight(i, 1, h, ab);
        rep.check_series(format!("Kdual-row-{i}"), &(&kd - &one));
    }
    Ok(rep.finish())
}
