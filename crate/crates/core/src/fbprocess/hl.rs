use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::zn::inversion_residual;
use super::{Convention, Ctx, ProcessSpec, Side};
use crate::qpartition::{grow, partitions_up_to, pochhammer_inf, skew_one_var, Family, Partition, PartitionChain};
use crate::report::VerificationReport;
use crate::series::{Image, Series, SeriesError};

/// `s_i` for `i = 1..N`.
pub type Support = Vec<bool>;

/// How the support bits of a chain are read off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SupportConvention {
    /// `s_i = [ℓ(λ^{(i)}) = ℓ(λ^{(i-1)}) + 1]`.
    Forward,
    /// `s_i = [ℓ(λ^{(N+1-i)}) = ℓ(λ^{(N-i)}) + 1]`.
    Reversed,
}

pub fn chain_support(chain: &PartitionChain, conv: SupportConvention) -> Support {
    let bits: Vec<bool> = chain.steps().windows(2).map(|w| w[1].len() == w[0].len() + 1).collect();
    match conv {
        SupportConvention::Forward => bits,
        SupportConvention::Reversed => bits.into_iter().rev().collect(),
    }
}

/// Endpoint factor of the free-boundary weight, i.e. everything except the
/// product of one-variable skew functions.
fn endpoint_weight(ctx: &Ctx, side: Side, conv: Convention, first: &Partition, last: &Partition) -> Result<Series, SeriesError> {
    let [a, b, c, d] = &ctx.params;
    let half = first.size() as i32;
    match side {
        Side::HallLittlewood => {
            let tb = &ctx.tb;
            let root = ctx.idx("s_q");
            let mut den = ctx.one();
            for m in first.multiplicities() {
                den = den * tb.poch_inv(m);
            }
            let w = match conv {
                Convention::TheoremProof => {
                    tb.h_poly(first).eval_rooted(c, d, root, half)? * tb.h_lambda(last, a, b)
                }
                Convention::Definition => {
                    let head = tb.h_lambda(first, a, b);
                    head * tb.h_poly(last).eval_rooted(c, d, root, half)?
                }
            };
            Ok(w * den)
        }
        Side::QWhittaker => {
            let qb = &ctx.qb;
            let root = ctx.idx("s_t");
            let mut den = ctx.one();
            for g in last.gaps() {
                den = den * qb.poch_inv(g);
            }
            let w = match conv {
                Convention::TheoremProof => {
                    qb.h_poly_conj(first).eval_rooted(c, d, root, half)? * qb.h_lambda_conj(last, a, b)
                }
                Convention::Definition => {
                    qb.h_lambda_conj(first, a, b) * qb.h_poly_conj(last).eval_rooted(c, d, root, half)?
                }
            };
            Ok(w * den)
        }
    }
}

fn step_family(side: Side) -> Family {
    match side {
        Side::HallLittlewood => Family::HallLittlewoodP,
        Side::QWhittaker => Family::QWhittakerP,
    }
}

fn step_base(ctx: &Ctx, side: Side) -> &crate::qpartition::QBase {
    match side {
        Side::HallLittlewood => &ctx.tb,
        Side::QWhittaker => &ctx.qb,
    }
}

/// Unnormalized free-boundary weight of a chain under the spec's side and
/// convention. Odd powers of the square-root symbol are allowed here; they
/// must cancel only after summation.
pub fn fb_weight(chain: &PartitionChain, spec: &ProcessSpec) -> Result<Series, SeriesError> {
    let ctx = spec.context();
    if chain.n_steps() != spec.n_vars {
        return Err(SeriesError::UnknownVariable(format!(
            "chain has {} steps but the alphabet has {} letters",
            chain.n_steps(),
            spec.n_vars
        )));
    }
    let mut w = endpoint_weight(&ctx, spec.side, spec.convention, chain.first(), chain.last())?;
    let fam = step_family(spec.side);
    let base = step_base(&ctx, spec.side);
    for (i, st) in chain.steps().windows(2).enumerate() {
        w = w * skew_one_var(&st[1], &st[0], &ctx.xs[i], fam, base);
    }
    Ok(w)
}

/// Every chain with nonzero weight within caps, with its weight.
///
/// `|λ^{(0)}|` is bounded by `2·cap_qt + cap_params` and `|λ^{(N)}/λ^{(0)}|` by `cap_x`.
pub fn chains(spec: &ProcessSpec) -> Result<Vec<(PartitionChain, Series)>, SeriesError> {
    let ctx = spec.context();
    let fam = step_family(spec.side);
    let base = step_base(&ctx, spec.side);
    let bound = ctx.caps.mu_bound();
    let big = bound + ctx.caps.x;
    let mut out = Vec::new();
    let mut ends: FxHashMap<(Partition, Partition), Series> = FxHashMap::default();
    for first in partitions_up_to(bound, big, bound as usize) {
        let mut stack: Vec<(Vec<Partition>, Series)> = vec![(vec![first.clone()], ctx.one())];
        while let Some((path, w)) = stack.pop() {
            let k = path.len() - 1;
            let cur = path.last().expect("nonempty").clone();
            if k == spec.n_vars {
                let end = match ends.get(&(first.clone(), cur.clone())) {
                    Some(e) => e.clone(),
                    None => {
                        let e = endpoint_weight(&ctx, spec.side, spec.convention, &first, &cur)?;
                        ends.insert((first.clone(), cur.clone()), e.clone());
                        e
                    }
                };
                let total = w * end;
                if !total.is_zero() {
                    out.push((PartitionChain::new(path).expect("grown chains are nested"), total));
                }
                continue;
            }
            let used = cur.size() - first.size();
            for next in cur.strips_above(big, ctx.caps.x - used) {
                let s = skew_one_var(&next, &cur, &ctx.xs[k], fam, base);
                let nw = &w * &s;
                if nw.is_zero() {
                    continue;
                }
                let mut p = path.clone();
                p.push(next);
                stack.push((p, nw));
            }
        }
    }
    Ok(out)
}

/// Total unnormalized mass over all chains within caps.
pub fn total_mass(spec: &ProcessSpec) -> Result<Series, SeriesError> {
    let ctx = spec.context();
    let mut acc = ctx.zero();
    for (_, w) in chains(spec)? {
        acc = acc + w;
    }
    let root = if spec.side == Side::HallLittlewood { "s_q" } else { "s_t" };
    acc.assert_even_powers(root)
}

/// Unnormalized mass of each `(ℓ(λ^{(0)}), support)` outcome.
pub fn fbhl_masses(spec: &ProcessSpec, conv: SupportConvention) -> Result<BTreeMap<(usize, Support), Series>, SeriesError> {
    let mut out: BTreeMap<(usize, Support), Series> = BTreeMap::new();
    for (chain, w) in chains(spec)? {
        let key = (chain.first().len(), chain_support(&chain, conv));
        match out.get_mut(&key) {
            Some(s) => *s = &*s + &w,
            None => {
                out.insert(key, w);
            }
        }
    }
    let root = if spec.side == Side::HallLittlewood { "s_q" } else { "s_t" };
    for v in out.values_mut() {
        *v = v.assert_even_powers(root)?;
    }
    Ok(out)
}

/// Normalized probability of `ℓ(λ^{(0)}) = n` and support `s`.
pub fn fbhl_marginal(n: usize, s: &[bool], spec: &ProcessSpec, conv: SupportConvention) -> Result<Series, SeriesError> {
    let masses = fbhl_masses(spec, conv)?;
    let ctx = spec.context();
    let mut total = ctx.zero();
    for v in masses.values() {
        total = total + v;
    }
    let mass = masses.get(&(n, s.to_vec())).cloned().unwrap_or_else(|| ctx.zero());
    Ok(mass * total.invert()?)
}

/// Closed form of the Hall–Littlewood partition function: the q-Whittaker one
/// with `q ↔ t` exchanged and the alphabet passed through the involution.
pub fn phi_hl_product(spec: &ProcessSpec) -> Result<Series, SeriesError> {
    let ctx = spec.context();
    let (q, t) = (ctx.qb.base(), ctx.tb.base());
    let p = &ctx.params;
    let mut num = ctx.one();
    let mut den = ctx.one();
    for (i, xi) in ctx.xs.iter().enumerate() {
        for pk in p {
            num = num * pochhammer_inf(&-(pk * xi), &[q])?;
        }
        den = den * pochhammer_inf(&(xi * xi), &[q])?;
        for xj in &ctx.xs[i + 1..] {
            let xx = xi * xj;
            num = num * pochhammer_inf(&(t * &xx), &[q])?;
            den = den * pochhammer_inf(&xx, &[q])?;
        }
    }
    num = num * pochhammer_inf(&(&p[0] * &p[1]), &[t])?;
    den = den * pochhammer_inf(q, &[q])? * pochhammer_inf(&(q * t), &[q, t])?;
    for i in 0..4 {
        for j in i + 1..4 {
            den = den * pochhammer_inf(&(&p[i] * &p[j]), &[q, t])?;
        }
    }
    Ok(num * den.invert()?)
}

/// Coefficients `z^0..z^{z_order}` of the product form of `G(z)`, which is
/// symmetric in `(q,t)` and so serves both sides.
pub fn chi_pgf(spec: &ProcessSpec, z_order: u32) -> Result<Vec<Series>, SeriesError> {
    let spec = spec.clone().caps(spec.caps.with_z(z_order));
    let ctx = spec.context();
    let (q, t) = (ctx.qb.base(), ctx.tb.base());
    let z = ctx.var("z");
    let p = &ctx.params;
    let abcd = &(&p[0] * &p[1]) * &(&p[2] * &p[3]);
    let num = pochhammer_inf(&(&abcd * &z.pow(2)), &[q, t])?;
    let mut den = pochhammer_inf(&(q * &z), &[q])?
        * pochhammer_inf(&(t * &z), &[t])?
        * pochhammer_inf(&(&(q * t) * &z), &[q, t])?
        * pochhammer_inf(&(&abcd * &z), &[q, t])?;
    for i in 0..4 {
        for j in i + 1..4 {
            den = den * pochhammer_inf(&(&(&p[i] * &p[j]) * &z), &[q, t])?;
        }
    }
    let g = num * den.invert()?;
    let zi = ctx.idx("z");
    Ok((0..=z_order).map(|k| g.coefficient_of(zi, k as i16)).collect())
}

/// Coefficients of the partition-sum form
/// `Σ_λ h_λ(a,b) h_λ(c/√u, d/√u) z^{ℓ(λ)} u^{|λ|/2} / ∏ (v;v)_{m_i(λ)}`,
/// with `(u, v) = (q, t)` on the Hall–Littlewood side and `(t, q)` on the other.
pub fn chi_pgf_sum(side: Side, spec: &ProcessSpec, z_order: u32) -> Result<Vec<Series>, SeriesError> {
    let spec = spec.clone().caps(spec.caps.with_z(z_order));
    let ctx = spec.context();
    let (vb, root) = match side {
        Side::HallLittlewood => (&ctx.tb, ctx.idx("s_q")),
        Side::QWhittaker => (&ctx.qb, ctx.idx("s_t")),
    };
    let [a, b, c, d] = &ctx.params;
    let bound = ctx.caps.mu_bound();
    let mut out = vec![ctx.zero(); z_order as usize + 1];
    for lambda in partitions_up_to(bound, bound, z_order as usize) {
        let mut w = vb.h_lambda(&lambda, a, b);
        if w.is_zero() {
            continue;
        }
        w = w * vb.h_poly(&lambda).eval_rooted(c, d, root, lambda.size() as i32)?;
        for m in lambda.multiplicities() {
            w = w * vb.poch_inv(m);
        }
        let k = lambda.len();
        out[k] = &out[k] + &w;
    }
    Ok(out)
}

/// The bounded skew Hall–Littlewood sum equal to `C_n ∏ x_i^n K_{n^N}`:
/// `Σ_{μ⊆λ, λ_1≤2n} h_λ(a,b)/h_{m_{2n}(λ)}(ab) P_{λ/μ}(x;0,t) q^{|μ|/2} h_μ(c/√q,d/√q)/∏(t;t)_{m_i(μ)}`.
pub fn koornwinder_rhs(n: u32, spec: &ProcessSpec) -> Result<Series, SeriesError> {
    let ctx = spec.context();
    let tb = &ctx.tb;
    let [a, b, c, d] = &ctx.params;
    let ab = a * b;
    let root = ctx.idx("s_q");
    let bound = ctx.caps.mu_bound();
    let mut tops: BTreeMap<Partition, Series> = BTreeMap::new();
    let mut acc = ctx.zero();
    for mu in partitions_up_to(bound, 2 * n, bound as usize) {
        let mut bottom = tb.h_poly(&mu).eval_rooted(c, d, root, mu.size() as i32)?;
        if bottom.is_zero() {
            continue;
        }
        for m in mu.multiplicities() {
            bottom = bottom * tb.poch_inv(m);
        }
        for (lambda, p) in grow(&mu, &ctx.xs, Family::HallLittlewoodP, tb, 2 * n, ctx.caps.x) {
            let top = match tops.get(&lambda) {
                Some(t) => t.clone(),
                None => {
                    let m2n = if n == 0 { 0 } else { lambda.multiplicity(2 * n) };
                    let t = tb.h_lambda(&lambda, a, b) * tb.rogers_szego(m2n as i64, &ab).invert()?;
                    tops.insert(lambda.clone(), t.clone());
                    t
                }
            };
            acc = acc + top * (p * &bottom);
        }
    }
    acc.assert_even_powers("s_q")
}

/// `C_n` as a ratio of infinite `t`-Pochhammers.
pub fn koornwinder_constant(n: u32, spec: &ProcessSpec) -> Result<Series, SeriesError> {
    let ctx = spec.context();
    let (q, t) = (ctx.qb.base(), ctx.tb.base());
    let [a, b, c, d] = &ctx.params;
    let abcd = &(a * b) * &(c * d);
    let mut num = ctx.one();
    let mut den = ctx.one();
    if n >= 1 {
        for i in (n - 1)..=(2 * n - 2) {
            num = num * pochhammer_inf(&(&abcd * &q.pow(i)), &[t])?;
        }
    }
    for i in 1..=n {
        den = den * pochhammer_inf(&q.pow(i), &[t])?;
    }
    for i in 1..n {
        den = den * pochhammer_inf(&(&(a * b) * &q.pow(i)), &[t])?;
    }
    let pairs = [a * c, a * d, b * c, b * d, c * d];
    for i in 0..n {
        for s in &pairs {
            den = den * pochhammer_inf(&(s * &q.pow(i)), &[t])?;
        }
    }
    Ok(num * den.invert()?)
}

/// The right side at `x = 0`, whose value is the constant `C_n`.
pub fn koornwinder_constant_sum(n: u32, spec: &ProcessSpec) -> Result<Series, SeriesError> {
    let rhs = koornwinder_rhs(n, spec)?;
    let ctx = spec.context();
    let assignment: Vec<(usize, Image)> = (1..=spec.n_vars).map(|i| (ctx.idx(&format!("x{i}")), Image::Zero)).collect();
    rhs.substitute(&assignment, None)
}

/// Symmetries of the Koornwinder side: `x_i ↔ x_j`, single inversions and
/// pair inversions (each after multiplying by `x^{2n}`). All cases are
/// recorded; failures stay in the residual.
pub fn koornwinder_symmetry(n: u32, spec: &ProcessSpec) -> Result<VerificationReport, SeriesError> {
    let ctx = spec.context();
    let mut rep = VerificationReport::new("koornwinder-symmetry")
        .param("n", n)
        .param("n_vars", spec.n_vars)
        .with_policy(&ctx.ring.policy);
    let rhs = koornwinder_rhs(n, spec)?;
    let xi: Vec<usize> = (1..=spec.n_vars).map(|i| ctx.idx(&format!("x{i}"))).collect();
    for i in 0..xi.len() {
        for j in i + 1..xi.len() {
            let mut perm: Vec<usize> = (0..ctx.ring.table.len()).collect();
            perm.swap(xi[i], xi[j]);
            rep.check_series(format!("swap x{} x{}", i + 1, j + 1), &(rhs.permute(&perm)? - &rhs));
        }
    }
    for i in 0..xi.len() {
        rep.check_series(format!("invert x{}", i + 1), &inversion_residual(&rhs, &[xi[i]], 2 * n as i16)?);
    }
    for i in 0..xi.len() {
        for j in i + 1..xi.len() {
            rep.check_series(
                format!("invert x{} x{}", i + 1, j + 1),
                &inversion_residual(&rhs, &[xi[i], xi[j]], 2 * n as i16)?,
            );
        }
    }
    Ok(rep.finish())
}
