use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Ctx, ProcessSpec};
use crate::qpartition::{grow, partitions_up_to, pochhammer_inf, Family, Partition};
use crate::series::{Image, Mono, Ring, Series, SeriesError};

/// `λ`-dependent factor of the `Z_n` summand:
/// `h_{n-λ_1}(ab) h_{λ'}(a,b) / ((q;q)_{n-λ_1} ∏ (q;q)_{λ_i-λ_{i+1}})`,
/// with the `n`-dependent part dropped when `n` is `None`.
fn top_weight(ctx: &Ctx, lambda: &Partition, n: Option<u32>, a: &Series, b: &Series) -> Series {
    let qb = &ctx.qb;
    let mut w = qb.h_lambda_conj(lambda, a, b);
    if w.is_zero() {
        return w;
    }
    for g in lambda.gaps() {
        w = w * qb.poch_inv(g);
    }
    if let Some(n) = n {
        let k = n as i64 - lambda.largest() as i64;
        if k < 0 {
            return ctx.zero();
        }
        w = w * qb.rogers_szego(k, &(a * b)) * qb.poch_inv(k as u32);
    }
    w
}

/// `t^{|μ|/2} h_{μ'}(c/√t, d/√t; q)`.
fn bottom_weight(ctx: &Ctx, mu: &Partition, c: &Series, d: &Series) -> Result<Series, SeriesError> {
    let root = ctx.idx("s_t");
    ctx.qb.h_poly_conj(mu).eval_rooted(c, d, root, mu.size() as i32)
}

/// The `Z_n` double sum over an arbitrary alphabet and parameter values.
///
/// `n = None` drops the `λ_1 ≤ n` restriction and the `h_{n-λ_1}` factor,
/// giving the left side of the partition-function identity. `skew_bound`
/// bounds `|λ/μ|`; it must cover every alphabet degree reachable within caps.
pub fn z_n_with(
    ctx: &Ctx,
    n: Option<u32>,
    alphabet: &[Series],
    params: &[Series; 4],
    skew_bound: u32,
) -> Result<Series, SeriesError> {
    let [a, b, c, d] = params;
    let mu_bound = ctx.caps.mu_bound();
    let max_first = n.unwrap_or(mu_bound + skew_bound);
    let mut tops: BTreeMap<Partition, Series> = BTreeMap::new();
    let mut acc = ctx.zero();
    for mu in partitions_up_to(mu_bound, max_first, mu_bound as usize) {
        let bottom = bottom_weight(ctx, &mu, c, d)?;
        if bottom.is_zero() {
            continue;
        }
        for (lambda, p) in grow(&mu, alphabet, Family::QWhittakerP, &ctx.qb, max_first, skew_bound) {
            let top = tops.entry(lambda.clone()).or_insert_with(|| top_weight(ctx, &lambda, n, a, b));
            if top.is_zero() {
                continue;
            }
            acc = acc + &*top * &(p * &bottom);
        }
    }
    acc.assert_even_powers("s_t")
}

/// `Z_n(x; q, t; a, b, c, d)` within the spec's caps.
pub fn z_n(n: u32, spec: &ProcessSpec) -> Result<Series, SeriesError> {
    let ctx = spec.context();
    z_n_with(&ctx, Some(n), &ctx.xs, &ctx.params, ctx.caps.x)
}

/// A transformation under which `Z_n` should be invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Transform {
    /// `q ↔ t` together with `√q ↔ √t`.
    SwapQt,
    /// Parameter `i` of `(a,b,c,d)` is sent to parameter `perm[i]`.
    PermuteAbcd([usize; 4]),
    /// `Z_n(x; a,b,c,d)` against `Z_n((a,b,c,d,x); 0,0,0,0)`.
    AbsorbParams,
    /// `(x_i x_j)^n Z_n(.., x_i^{-1}, .., x_j^{-1}, ..)` against `Z_n(x)`, 0-based.
    InvertPair(usize, usize),
}

/// Whether monomial `e` and its preimage under `x_v -> x_v^{-1}` followed by
/// multiplication by `∏ x_v^{shift}` (for `v` in `vars`) both lie within the x cap.
pub fn invert_pair_window(ring: &Ring, vars: &[usize], shift: i16, e: &[i16]) -> bool {
    let xcap = ring.policy.x as i32;
    let deg = ring.degrees(e)[1];
    let mut pre: Mono = e.into();
    for &v in vars {
        pre[v] = shift - e[v];
        if pre[v] < 0 {
            return false;
        }
    }
    deg <= xcap && ring.degrees(&pre)[1] <= xcap
}

/// `∏_{v} x_v^{shift} F(.., x_v^{-1}, ..) - F` restricted to the comparison window.
pub(crate) fn inversion_residual(f: &Series, vars: &[usize], shift: i16) -> Result<Series, SeriesError> {
    let ring = f.ring().clone();
    let n = ring.table.len();
    let mut comp: Mono = smallvec::SmallVec::from_elem(0, n);
    let mut assignment = Vec::new();
    for &v in vars {
        comp[v] = shift;
        let mut img: Mono = smallvec::SmallVec::from_elem(0, n);
        img[v] = -1;
        assignment.push((v, Image::Monomial(img, num_traits::One::one())));
    }
    // The image may exceed the cap before compensation; widen, substitute, then re-truncate.
    let wide = ring.with_caps(ring.policy.qt, ring.policy.x + 2 * shift.max(0) as u32 * vars.len() as u32, ring.policy.params, ring.policy.z);
    let g = f.rehome(&wide)?.substitute(&assignment, Some(&comp))?;
    let keep = |e: &[i16]| invert_pair_window(&ring, vars, shift, e);
    let g = g.filter(keep).rehome(&ring)?;
    Ok(g - f.filter(keep))
}

fn swap_perm(ring: &Ring, pairs: &[(&str, &str)]) -> Result<Vec<usize>, SeriesError> {
    let mut perm: Vec<usize> = (0..ring.table.len()).collect();
    for (a, b) in pairs {
        let (i, j) = (ring.var(a)?, ring.var(b)?);
        perm.swap(i, j);
    }
    Ok(perm)
}

/// Difference between the transformed and the original `Z_n`; zero iff the
/// symmetry holds within caps.
pub fn symmetry_residual(n: u32, spec: &ProcessSpec, transform: &Transform) -> Result<Series, SeriesError> {
    let ctx = spec.context();
    let z = z_n_with(&ctx, Some(n), &ctx.xs, &ctx.params, ctx.caps.x)?;
    match transform {
        Transform::SwapQt => {
            let perm = swap_perm(&ctx.ring, &[("q", "t"), ("s_q", "s_t")])?;
            Ok(z.permute(&perm)? - z)
        }
        Transform::PermuteAbcd(p) => {
            let names = ["a", "b", "c", "d"];
            let mut perm: Vec<usize> = (0..ctx.ring.table.len()).collect();
            for i in 0..4 {
                perm[ctx.idx(names[i])] = ctx.idx(names[p[i]]);
            }
            Ok(z.permute(&perm)? - z)
        }
        Transform::AbsorbParams => {
            let mut alphabet: Vec<Series> = ctx.params.iter().filter(|p| !p.is_zero()).cloned().collect();
            alphabet.extend(ctx.xs.iter().cloned());
            let zero = [ctx.zero(), ctx.zero(), ctx.zero(), ctx.zero()];
            let absorbed = z_n_with(&ctx, Some(n), &alphabet, &zero, ctx.caps.x + ctx.caps.params)?;
            Ok(z - absorbed)
        }
        Transform::InvertPair(i, j) => {
            if *i == *j || *i >= spec.n_vars || *j >= spec.n_vars {
                return Err(SeriesError::UnknownVariable(format!("invert-pair ({i},{j}) needs two distinct letters")));
            }
            let vars = [ctx.idx(&format!("x{}", i + 1)), ctx.idx(&format!("x{}", j + 1))];
            inversion_residual(&z, &vars, n as i16)
        }
    }
}

/// `(ax;q,t)_∞ (bx;q,t)_∞ (cx;q,t)_∞ (dx;q,t)_∞` over the alphabet times
/// `∏_{i<j} (x_i x_j; q,t)_∞`, the `x`-dependent denominator shared by the
/// partition function and `Z_∞`.
fn alphabet_denominator(ctx: &Ctx) -> Result<Series, SeriesError> {
    let (q, t) = (ctx.qb.base(), ctx.tb.base());
    let mut den = ctx.one();
    for (i, xi) in ctx.xs.iter().enumerate() {
        for p in &ctx.params {
            den = den * pochhammer_inf(&(p * xi), &[q, t])?;
        }
        for xj in &ctx.xs[i + 1..] {
            den = den * pochhammer_inf(&(xi * xj), &[q, t])?;
        }
    }
    Ok(den)
}

/// `(ab;q,t)(ac;q,t)(ad;q,t)(bc;q,t)(bd;q,t)(cd;q,t)`.
fn pair_denominator(ctx: &Ctx) -> Result<Series, SeriesError> {
    let (q, t) = (ctx.qb.base(), ctx.tb.base());
    let p = &ctx.params;
    let mut den = ctx.one();
    for i in 0..4 {
        for j in i + 1..4 {
            den = den * pochhammer_inf(&(&p[i] * &p[j]), &[q, t])?;
        }
    }
    Ok(den)
}

/// Both sides of the partition-function identity: the unrestricted double sum
/// and the product of double-Pochhammer reciprocals.
pub fn partition_function_sides(spec: &ProcessSpec) -> Result<(Series, Series), SeriesError> {
    let ctx = spec.context();
    let lhs = z_n_with(&ctx, None, &ctx.xs, &ctx.params, ctx.caps.x)?;
    let (q, t) = (ctx.qb.base(), ctx.tb.base());
    let ab = &ctx.params[0] * &ctx.params[1];
    let den = alphabet_denominator(&ctx)?
        * pochhammer_inf(t, &[t])?
        * pochhammer_inf(&(q * t), &[q, t])?
        * pair_denominator(&ctx)?;
    let rhs = pochhammer_inf(&ab, &[q])? * den.invert()?;
    Ok((lhs, rhs))
}

/// The product formula for `Z_∞`, symmetric in `(q,t)` and in `(a,b,c,d)`.
pub fn z_infinity(spec: &ProcessSpec) -> Result<Series, SeriesError> {
    let ctx = spec.context();
    let (q, t) = (ctx.qb.base(), ctx.tb.base());
    let den = alphabet_denominator(&ctx)?
        * pochhammer_inf(q, &[q])?
        * pochhammer_inf(t, &[t])?
        * pochhammer_inf(&(q * t), &[q, t])?
        * pair_denominator(&ctx)?;
    den.invert()
}

/// `P(χ ≤ n) = (q;q)_∞ (ab;q)_∞ h_n(ab;q) / (q;q)_n` for the random shift.
pub fn qw_shift_cdf(n: u32, spec: &ProcessSpec) -> Result<Series, SeriesError> {
    let ctx = spec.context();
    let q = ctx.qb.base();
    let ab = &ctx.params[0] * &ctx.params[1];
    Ok(pochhammer_inf(q, &[q])? * pochhammer_inf(&ab, &[q])? * ctx.qb.rogers_szego(n as i64, &ab) * ctx.qb.poch_inv(n))
}
