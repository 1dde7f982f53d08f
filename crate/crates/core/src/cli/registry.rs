use super::options::{CliError, ParamsArg, RunOptions};
use crate::contour::cross_check;
use crate::fbprocess::{
    chi_pgf, chi_pgf_sum, koornwinder_constant, koornwinder_constant_sum, koornwinder_symmetry,
    partition_function_sides, symmetry_residual, Caps, ProcessSpec, Side, Transform,
};
use crate::lattice::{
    boson_equals_skew_hl, boundary_pair_verify, boundary_row_verify, stationary_cross_check, theorem_matching_verify,
    u_power_shift_verify, yang_baxter_verify, yb_boson_verify, Crossing, DualCoefficient, SamplerConfig,
};
use crate::qpartition::{littlewood_check, mehler_check, pochhammer_inf};
use crate::report::VerificationReport;
use crate::series::{frac, Series, TruncationPolicy};

/// Every identity `run` accepts.
pub const IDENTITIES: [&str; 18] = [
    "qt-symmetry",
    "abcd-symmetry",
    "absorb-params",
    "invert-pair",
    "partition-function",
    "contour-cross-check",
    "yang-baxter",
    "boson-hl",
    "yb-boson",
    "u-power-shift",
    "boundary-compat",
    "littlewood",
    "mehler",
    "chi-pgf",
    "hl-6vm-matching",
    "koornwinder-constant",
    "koornwinder-bc",
    "stationary-cross-check",
];

pub const DEFAULT_SEED: u64 = 20240601;

/// Runs one registered identity.
pub fn run(name: &str, opts: &RunOptions) -> Result<VerificationReport, CliError> {
    let mut rep = match name {
        "qt-symmetry" => symmetry(name, opts, &[("swap-qt", Transform::SwapQt)], &[1, 2], &[1, 2, 3], Caps::new(3, 4, 4))?,
        "abcd-symmetry" => {
            let ts = [
                ("(a b)", Transform::PermuteAbcd([1, 0, 2, 3])),
                ("(b c)", Transform::PermuteAbcd([0, 2, 1, 3])),
                ("(c d)", Transform::PermuteAbcd([0, 1, 3, 2])),
            ];
            symmetry(name, opts, &ts, &[1, 2], &[1, 2], Caps::new(3, 4, 4))?
        }
        "absorb-params" => symmetry(name, opts, &[("absorb", Transform::AbsorbParams)], &[1], &[1, 2], Caps::new(3, 3, 3))?,
        "invert-pair" => invert_pair(opts)?,
        "partition-function" => partition_function(opts)?,
        "contour-cross-check" => contour(opts)?,
        "yang-baxter" => {
            let seed = opts.seed_or(DEFAULT_SEED);
            yang_baxter_verify(opts.count.unwrap_or(5), seed).param("seed", seed)
        }
        "boson-hl" => boson_equals_skew_hl(opts.n.unwrap_or(6)),
        "yb-boson" => yb_boson_verify(3, opts.n.unwrap_or(2), Crossing::ADOPTED)?,
        "u-power-shift" => u_power_shift_verify(3, opts.n.unwrap_or(2)),
        "boundary-compat" => boundary_compat(opts)?,
        "littlewood" => littlewood(opts)?,
        "mehler" => mehler_check(opts.z_order.unwrap_or(8), opts.qt_cap.unwrap_or(8)),
        "chi-pgf" => chi(opts)?,
        "hl-6vm-matching" => matching(opts)?,
        "koornwinder-constant" => koornwinder_const(opts)?,
        "koornwinder-bc" => koornwinder_bc(opts)?,
        "stationary-cross-check" => stationary(opts)?,
        _ => {
            return Err(CliError::Usage(format!("unknown identity `{name}`; valid names: {}", IDENTITIES.join(", "))));
        }
    };
    rep.identity = name.to_string();
    Ok(rep)
}

/// Runs every identity with default options, in parallel, sorted by name.
pub fn run_all(opts: &RunOptions) -> Vec<(String, Result<VerificationReport, CliError>)> {
    let mut names: Vec<&str> = IDENTITIES.to_vec();
    names.sort_unstable();
    std::thread::scope(|s| {
        let handles: Vec<_> = names.iter().map(|&n| (n, s.spawn(move || run(n, opts)))).collect();
        handles
            .into_iter()
            .map(|(n, h)| {
                let r = h.join().unwrap_or_else(|_| Err(CliError::Compute(format!("{n} panicked"))));
                (n.to_string(), r)
            })
            .collect()
    })
}

pub(crate) fn describe(symbolic: [bool; 4]) -> String {
    let mut p = ParamsArg::default();
    for (i, s) in symbolic.iter().enumerate() {
        if !s {
            p.0[i] = super::options::ParamValue::Exact(frac(0, 1));
        }
    }
    p.to_string()
}

fn header(name: &str, caps: Caps, symbolic: Option<[bool; 4]>) -> VerificationReport {
    let mut rep = VerificationReport::new(name).with_policy(&caps.policy());
    if let Some(s) = symbolic {
        rep.set_param("params", describe(s));
    }
    rep
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn symmetry(
    name: &str,
    opts: &RunOptions,
    transforms: &[(&str, Transform)],
    sizes: &[usize],
    levels: &[u32],
    caps: Caps,
) -> Result<VerificationReport, CliError> {
    let caps = opts.caps(caps)?;
    let symbolic = opts.symbolic([true; 4])?;
    let sizes = opts.alphabet_sizes(sizes)?;
    let levels = opts.levels(levels);
    let mut rep = header(name, caps, Some(symbolic)).param("N", list(&sizes)).param("n", list(&levels));
    for &nv in &sizes {
        let spec = ProcessSpec::new(nv, caps).with_params(symbolic);
        for &n in &levels {
            for (label, t) in transforms {
                rep.check_series(format!("N={nv} n={n} {label}"), &symmetry_residual(n, &spec, t)?);
            }
        }
    }
    Ok(rep.finish())
}

fn invert_pair(opts: &RunOptions) -> Result<VerificationReport, CliError> {
    let caps = opts.caps(Caps::new(2, 4, 0))?;
    let symbolic = opts.symbolic([false; 4])?;
    let sizes = opts.alphabet_sizes(&[2])?;
    if sizes.iter().any(|&n| n < 2) {
        return Err(CliError::Invalid("invert-pair needs an alphabet of at least 2".into()));
    }
    let levels = opts.levels(&[1, 2]);
    let mut rep = header("invert-pair", caps, Some(symbolic)).param("N", list(&sizes)).param("n", list(&levels));
    for &nv in &sizes {
        let spec = ProcessSpec::new(nv, caps).with_params(symbolic);
        for &n in &levels {
            for i in 0..nv {
                for j in i + 1..nv {
                    let r = symmetry_residual(n, &spec, &Transform::InvertPair(i, j))?;
                    rep.check_series(format!("N={nv} n={n} x{} x{}", i + 1, j + 1), &r);
                }
            }
        }
    }
    Ok(rep.finish())
}

fn partition_function(opts: &RunOptions) -> Result<VerificationReport, CliError> {
    let caps = opts.caps(Caps::new(3, 3, 3))?;
    let symbolic = opts.symbolic([true; 4])?;
    let sizes = opts.alphabet_sizes(&[0, 1, 2])?;
    let mut rep = header("partition-function", caps, Some(symbolic)).param("N", list(&sizes));
    for &nv in &sizes {
        let (lhs, rhs) = partition_function_sides(&ProcessSpec::new(nv, caps).with_params(symbolic))?;
        rep.check_series(format!("N={nv}"), &(lhs - rhs));
    }
    Ok(rep.finish())
}

fn contour(opts: &RunOptions) -> Result<VerificationReport, CliError> {
    let caps = opts.caps(Caps::new(3, 3, 0))?;
    let sizes = opts.alphabet_sizes(&[0, 1, 2])?;
    let levels = opts.levels(&[0, 1, 2, 3]);
    let mut rep = header("contour-cross-check", caps, Some([false; 4])).param("N", list(&sizes)).param("n", list(&levels));
    for &nv in &sizes {
        let spec = ProcessSpec::new(nv, caps).zero_params();
        for &n in &levels {
            rep.merge(format!("N={nv} n={n}"), cross_check(n, &spec)?);
        }
    }
    Ok(rep.finish())
}

fn boundary_compat(opts: &RunOptions) -> Result<VerificationReport, CliError> {
    let param_cap = opts.param_cap.unwrap_or(6);
    let pair_policy = TruncationPolicy::new(opts.qt_cap.unwrap_or(12), opts.x_cap.unwrap_or(8), param_cap, 0);
    let row_policy = TruncationPolicy::new(opts.qt_cap.unwrap_or(8), opts.x_cap.unwrap_or(6), param_cap, 0);
    let mut rep = VerificationReport::new("boundary-compat").with_policy(&pair_policy).param("profile_cap", 3);
    rep.merge("two-column", boundary_pair_verify(3, pair_policy, DualCoefficient::SameAsLeft)?);
    rep.merge("full-row", boundary_row_verify(3, 1, row_policy)?);
    rep.note("the second two-column identity is checked with the coefficient c^{n_1} on both sides");
    Ok(rep.finish())
}

fn littlewood(opts: &RunOptions) -> Result<VerificationReport, CliError> {
    let (qt, x, p) = (opts.qt_cap.unwrap_or(6), opts.x_cap.unwrap_or(5), opts.param_cap.unwrap_or(3));
    let sizes = opts.alphabet_sizes(&[1, 2, 3])?;
    let mut rep = VerificationReport::new("littlewood")
        .with_policy(&TruncationPolicy::new(qt, x, p, 0))
        .param("n_vars", list(&sizes));
    for &nv in &sizes {
        rep.merge(format!("n_vars={nv}"), littlewood_check(nv, true, qt, x, p));
    }
    Ok(rep.finish())
}

fn chi(opts: &RunOptions) -> Result<VerificationReport, CliError> {
    let caps = opts.caps(Caps::new(3, 0, 3))?;
    let symbolic = opts.symbolic([true; 4])?;
    let z_order = opts.z_order.unwrap_or(3);
    let mut rep = header("chi-pgf", caps, Some(symbolic)).param("z_order", z_order);
    let spec = ProcessSpec::new(0, caps).with_params(symbolic);
    let prod = chi_pgf(&spec, z_order)?;
    let ring = prod[0].ring().clone();
    rep.check_series("z^0", &(&prod[0] - &Series::one(&ring)));

    let zero = ProcessSpec::new(0, caps).zero_params();
    let g = chi_pgf(&zero, z_order.max(1))?;
    let r0 = g[1].ring().clone();
    let one = Series::one(&r0);
    let (q, t) = (Series::var(&r0, "q")?, Series::var(&r0, "t")?);
    let (gq, gt) = ((&one - &q).invert()?, (&one - &t).invert()?);
    let expect = &q * &gq + &t * &gt + &(&q * &t) * &(&gq * &gt);
    rep.check_series("z^1 at a=b=c=d=0", &(&g[1] - &expect));

    // The sum form carries (vz;v)_∞ (abz;v)_∞ over the displayed product.
    let z = Series::var(&ring, "z")?;
    let zi = ring.var("z")?;
    let gz = prod.iter().enumerate().fold(Series::zero(&ring), |acc, (k, c)| acc + c * &z.pow(k as u32));
    let ab = if symbolic[0] && symbolic[1] { &Series::var(&ring, "a")? * &Series::var(&ring, "b")? } else { Series::zero(&ring) };
    let mut displayed_mismatch = 0;
    for (side, base) in [(Side::HallLittlewood, "t"), (Side::QWhittaker, "q")] {
        let vb = Series::var(&ring, base)?;
        let extra = pochhammer_inf(&(&vb * &z), &[&vb])? * pochhammer_inf(&(&ab * &z), &[&vb])?;
        let corrected = gz.clone() * extra;
        let sum = chi_pgf_sum(side, &spec, z_order)?;
        for (k, c) in sum.iter().enumerate() {
            let c = c.rehome(&ring)?;
            rep.check_series(format!("{side:?} z^{k}"), &(&c - &corrected.coefficient_of(zi, k as i16)));
            displayed_mismatch += usize::from(c != prod[k]);
        }
    }
    rep.resolved(format!(
        "the partition sum equals the displayed product times (vz;v)_∞(abz;v)_∞; \
         against the displayed product alone {displayed_mismatch} of {} coefficients differ",
        2 * (z_order + 1)
    ));
    Ok(rep.finish())
}

fn matching(opts: &RunOptions) -> Result<VerificationReport, CliError> {
    let caps = opts.caps(Caps::new(2, 3, 3))?;
    if opts.params.is_some() && opts.symbolic([true; 4])? != [true; 4] {
        return Err(CliError::Invalid("hl-6vm-matching runs with all of a,b,c,d formal".into()));
    }
    let sizes = opts.alphabet_sizes(&[1, 2])?;
    if sizes.contains(&0) {
        return Err(CliError::Invalid("hl-6vm-matching needs at least one row".into()));
    }
    let n_max = opts.n_max.unwrap_or(2);
    let mut rep = header("hl-6vm-matching", caps, Some([true; 4])).param("N", list(&sizes)).param("n_max", n_max);
    for &nv in &sizes {
        let sub = theorem_matching_verify(nv, caps, n_max)?;
        if let Some(l) = sub.params.get("L") {
            rep.set_param(&format!("L(N={nv})"), l);
        }
        rep.merge(format!("N={nv}"), sub);
    }
    Ok(rep.finish())
}

fn koornwinder_const(opts: &RunOptions) -> Result<VerificationReport, CliError> {
    let caps = opts.caps(Caps::new(2, 0, 4))?;
    let symbolic = opts.symbolic([true; 4])?;
    let levels = opts.levels(&[1, 2]);
    let mut rep = header("koornwinder-constant", caps, Some(symbolic)).param("n", list(&levels));
    let spec = ProcessSpec::new(0, caps).with_params(symbolic).side(Side::HallLittlewood);
    for &n in &levels {
        let r = koornwinder_constant_sum(n, &spec)? - koornwinder_constant(n, &spec)?;
        rep.check_series(format!("n={n}"), &r);
    }
    Ok(rep.finish())
}

fn koornwinder_bc(opts: &RunOptions) -> Result<VerificationReport, CliError> {
    let caps = opts.caps(Caps::new(2, 4, 2))?;
    let symbolic = opts.symbolic([true; 4])?;
    let sizes = opts.alphabet_sizes(&[2])?;
    let levels = opts.levels(&[1]);
    let mut rep = header("koornwinder-bc", caps, Some(symbolic)).param("N", list(&sizes)).param("n", list(&levels));
    for &nv in &sizes {
        let spec = ProcessSpec::new(nv, caps).with_params(symbolic).side(Side::HallLittlewood);
        for &n in &levels {
            let sub = koornwinder_symmetry(n, &spec)?;
            let singles: Vec<bool> = (1..=nv)
                .map(|i| match &sub.residual {
                    serde_json::Value::Object(m) => !m.contains_key(&format!("invert x{i}")),
                    _ => true,
                })
                .collect();
            rep.note(format!("N={nv} n={n}: single inversions invariant {singles:?}"));
            rep.merge(format!("N={nv} n={n}"), sub);
        }
    }
    Ok(rep.finish())
}

fn stationary(opts: &RunOptions) -> Result<VerificationReport, CliError> {
    let mut o = opts.clone();
    if o.alphabet.is_none() {
        o.alphabet = Some(super::options::Alphabet::Count(2));
    }
    let p = o.numeric()?;
    let seed = opts.seed_or(DEFAULT_SEED);
    let count = opts.count.unwrap_or(100_000);
    let cfg = SamplerConfig::default();
    let rep = stationary_cross_check(&p, &[frac(9, 10), frac(99, 100)], count, 1_000_000, seed, &cfg)?;
    Ok(rep.param("params", ParamsArg::from_numeric(&p)).param("x", list(&p.x)).param("replicas", cfg.replicas))
}
