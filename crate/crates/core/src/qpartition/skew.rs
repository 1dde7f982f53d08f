use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::partition::Partition;
use super::qseries::QBase;
use crate::series::Series;

/// Which one-parameter specialization and normalization.
///
/// q-Whittaker families take a [`QBase`] over `q`; Hall–Littlewood families a
/// [`QBase`] over `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    QWhittakerP,
    QWhittakerQ,
    HallLittlewoodP,
    HallLittlewoodQ,
}

/// Coefficient of `x^{|λ/μ|}` in the one-variable skew function; zero unless
/// `λ/μ` is a horizontal strip.
pub fn skew_coefficient(lambda: &Partition, mu: &Partition, family: Family, qb: &QBase) -> Series {
    if !lambda.is_horizontal_strip_over(mu) {
        return Series::zero(qb.ring());
    }
    let l = lambda.len();
    match family {
        Family::QWhittakerP => {
            let mut acc = qb.one();
            for i in 1..=l {
                let (li, li1, mi) = (lambda.part(i) as i64, lambda.part(i + 1) as i64, mu.part(i) as i64);
                acc = acc * qb.binom(li - li1, li - mi);
            }
            acc
        }
        Family::QWhittakerQ => {
            let mut acc = qb.one();
            for i in 1..=l {
                let (li, li1, mi, mi1) = (lambda.part(i), lambda.part(i + 1), mu.part(i), mu.part(i + 1));
                acc = acc * qb.poch(mi - mi1) * qb.poch_inv(li - mi) * qb.poch_inv(mi - li1);
            }
            acc
        }
        Family::HallLittlewoodP | Family::HallLittlewoodQ => {
            let lc = lambda.conjugate();
            let mc = mu.conjugate();
            let theta = |i: usize| lc.part(i) - mc.part(i);
            let mut acc = qb.one();
            for i in 1..=(lambda.largest() as usize) {
                let (here, next) = (theta(i), theta(i + 1));
                let m = match family {
                    Family::HallLittlewoodQ if here == 1 && next == 0 => lambda.multiplicity(i as u32),
                    Family::HallLittlewoodP if here == 0 && next == 1 => mu.multiplicity(i as u32),
                    _ => continue,
                };
                acc = acc * (qb.one() - qb.base().pow(m));
            }
            acc
        }
    }
}

/// One-variable skew function `F_{λ/μ}(x)`.
pub fn skew_one_var(lambda: &Partition, mu: &Partition, x: &Series, family: Family, qb: &QBase) -> Series {
    let c = skew_coefficient(lambda, mu, family, qb);
    if c.is_zero() {
        return c;
    }
    c * x.pow(lambda.size() - mu.size())
}

/// Multi-variable skew function by branching over interlacing chains:
/// `F_{λ/μ}(x_1..x_k) = Σ_ν F_{λ/ν}(x_k) F_{ν/μ}(x_1..x_{k-1})`.
pub fn skew_multi(lambda: &Partition, mu: &Partition, alphabet: &[Series], family: Family, qb: &QBase) -> Series {
    let mut memo = FxHashMap::default();
    skew_rec(lambda, mu, alphabet, family, qb, &mut memo)
}

fn skew_rec(
    lambda: &Partition,
    mu: &Partition,
    xs: &[Series],
    family: Family,
    qb: &QBase,
    memo: &mut FxHashMap<(Partition, usize), Series>,
) -> Series {
    if !lambda.contains(mu) {
        return Series::zero(qb.ring());
    }
    if xs.is_empty() {
        return if lambda == mu { qb.one() } else { Series::zero(qb.ring()) };
    }
    if lambda.len() > mu.len() + xs.len() {
        return Series::zero(qb.ring());
    }
    let key = (lambda.clone(), xs.len());
    if let Some(s) = memo.get(&key) {
        return s.clone();
    }
    let (last, rest) = xs.split_last().expect("nonempty");
    let mut acc = Series::zero(qb.ring());
    for nu in lambda.strips_below(mu) {
        let inner = skew_rec(&nu, mu, rest, family, qb, memo);
        if inner.is_zero() {
            continue;
        }
        acc = acc + skew_one_var(lambda, &nu, last, family, qb) * inner;
    }
    memo.insert(key, acc.clone());
    acc
}

/// All `F_{λ/μ}(x_1..x_k)` for fixed `μ`, grown one letter at a time.
///
/// Only `λ` with `λ_1 ≤ max_first` and `|λ/μ| ≤ max_added` are produced;
/// zero entries are dropped.
pub fn grow(
    mu: &Partition,
    alphabet: &[Series],
    family: Family,
    qb: &QBase,
    max_first: u32,
    max_added: u32,
) -> BTreeMap<Partition, Series> {
    let mut cur: BTreeMap<Partition, Series> = BTreeMap::new();
    if mu.largest() > max_first {
        return cur;
    }
    cur.insert(mu.clone(), qb.one());
    for x in alphabet {
        let mut next: BTreeMap<Partition, Series> = BTreeMap::new();
        for (nu, s) in &cur {
            let used = nu.size() - mu.size();
            for kappa in nu.strips_above(max_first, max_added - used) {
                let w = skew_one_var(&kappa, nu, x, family, qb);
                if w.is_zero() {
                    continue;
                }
                let term = &w * s;
                if term.is_zero() {
                    continue;
                }
                match next.get_mut(&kappa) {
                    Some(v) => *v = &*v + &term,
                    None => {
                        next.insert(kappa, term);
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        cur = next;
    }
    cur
}

/// `b_λ` on the q-Whittaker side: `1/∏_i (q;q)_{λ_i-λ_{i+1}}`.
pub fn b_qwhittaker(lambda: &Partition, qb: &QBase) -> Series {
    let mut acc = qb.one();
    for g in lambda.gaps() {
        acc = acc * qb.poch_inv(g);
    }
    acc
}

/// `b_λ` on the Hall–Littlewood side: `∏_i (t;t)_{m_i(λ)}`.
pub fn b_hall_littlewood(lambda: &Partition, qb: &QBase) -> Series {
    let mut acc = qb.one();
    for m in lambda.multiplicities() {
        acc = acc * qb.poch(m);
    }
    acc
}
