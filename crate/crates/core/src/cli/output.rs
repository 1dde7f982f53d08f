use serde_json::{json, Value};

use super::options::{Alphabet, CliError, ParamsArg, RunOptions};
use super::registry::DEFAULT_SEED;
use crate::fbprocess::{
    koornwinder_constant, koornwinder_rhs, qw_shift_cdf, total_mass, z_infinity, z_n, Caps, ProcessSpec, Side,
};
use crate::lattice::{
    adaptive_l, exact_numeric, mc_sample, quasi_open_distribution, total_variation, LocalParams, SampleRun,
    SamplerConfig, StripMode, StripSpec,
};
use crate::series::Series;

/// Series available to `dump series`.
pub const SERIES_KINDS: [&str; 6] =
    ["z-infinity", "total-mass", "qw-shift-cdf", "koornwinder-rhs", "koornwinder-constant", "chi-pgf"];

fn record(kind: &str, opts: &RunOptions, caps: Caps, symbolic: [bool; 4], body: Value) -> Value {
    json!({
        "kind": kind,
        "n": opts.n,
        "alphabet": opts.alphabet.as_ref().map(|a| a.to_string()),
        "params": super::registry::describe(symbolic),
        "caps": {"qt": 2 * caps.qt, "x": caps.x, "params": caps.params},
        "series": body,
    })
}

/// `Z_n` for the given alphabet size as a series record.
pub fn dump_zn(opts: &RunOptions) -> Result<Value, CliError> {
    let caps = opts.caps(Caps::new(3, 3, 3))?;
    let symbolic = opts.symbolic([true; 4])?;
    let nv = *opts.alphabet_sizes(&[1])?.first().expect("one size");
    let n = opts.n.unwrap_or(1);
    let spec = ProcessSpec::new(nv, caps).with_params(symbolic);
    Ok(record("zn", opts, caps, symbolic, z_n(n, &spec)?.dump_json()))
}

/// One of [`SERIES_KINDS`].
pub fn dump_series(which: &str, opts: &RunOptions) -> Result<Value, CliError> {
    let caps = opts.caps(Caps::new(3, 3, 3))?;
    let symbolic = opts.symbolic([true; 4])?;
    let nv = *opts.alphabet_sizes(&[0])?.first().expect("one size");
    let n = opts.n.unwrap_or(1);
    let spec = ProcessSpec::new(nv, caps).with_params(symbolic);
    let hl = spec.clone().side(Side::HallLittlewood);
    let s: Value = match which {
        "z-infinity" => z_infinity(&spec)?.dump_json(),
        "total-mass" => total_mass(&hl)?.dump_json(),
        "qw-shift-cdf" => qw_shift_cdf(n, &spec)?.dump_json(),
        "koornwinder-rhs" => koornwinder_rhs(n, &hl)?.dump_json(),
        "koornwinder-constant" => koornwinder_constant(n, &hl)?.dump_json(),
        "chi-pgf" => {
            let coeffs = crate::fbprocess::chi_pgf(&spec, opts.z_order.unwrap_or(3))?;
            Value::Array(coeffs.iter().map(Series::dump_json).collect())
        }
        _ => {
            return Err(CliError::Usage(format!("unknown series `{which}`; valid: {}", SERIES_KINDS.join(", "))));
        }
    };
    Ok(record(which, opts, caps, symbolic, s))
}

/// The strip's `(S, D)` distribution. Formal when `--params` is absent or
/// formal, exact in `Q(√q)` when all six parameters are rationals.
pub fn dump_distribution(opts: &RunOptions) -> Result<Value, CliError> {
    let n_max = opts.n_max.unwrap_or(2);
    let numeric = opts.params.as_ref().is_some_and(|p| p.numeric(vec![]).is_ok());
    if numeric {
        let p = opts.numeric()?;
        let l = match opts.l {
            Some(l) => l,
            None => adaptive_l(&LocalParams::<f64>::from_numeric(&p), &SamplerConfig::default())?,
        };
        let spec = StripSpec { n: p.rows(), l, mode: StripMode::NumericExact(p.clone()) };
        let d = quasi_open_distribution(&spec, n_max)?;
        Ok(json!({
            "mode": "numeric",
            "N": p.rows(),
            "L": d.l(),
            "n_max": n_max,
            "params": ParamsArg::from_numeric(&p).to_string(),
            "x": p.x.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "distribution": d.to_json(),
        }))
    } else {
        let caps = opts.caps(Caps::new(2, 3, 3))?;
        let symbolic = opts.symbolic([true; 4])?;
        let nv = *opts.alphabet_sizes(&[1])?.first().expect("one size");
        if nv == 0 {
            return Err(CliError::Invalid("the strip needs at least one row".into()));
        }
        let spec = StripSpec { n: nv, l: opts.l.unwrap_or(1), mode: StripMode::FormalSeries { caps, symbolic } };
        let d = quasi_open_distribution(&spec, n_max)?;
        Ok(json!({
            "mode": "formal",
            "N": nv,
            "L": d.l(),
            "n_max": n_max,
            "params": super::registry::describe(symbolic),
            "caps": {"qt": 2 * caps.qt, "x": caps.x, "params": caps.params},
            "note": "c and d stand for c/√q and d/√q",
            "distribution": d.to_json(),
        }))
    }
}

/// A sampler run and, when `n_max` is given, its distance to the exact
/// distribution at the same `L`.
pub struct SampleOutput {
    pub run: SampleRun,
    pub params: String,
    pub tv: Option<f64>,
    pub n_max: Option<u32>,
}

impl SampleOutput {
    pub fn lines(&self) -> Vec<String> {
        self.run.outcomes.iter().map(|o| o.line(self.run.n)).collect()
    }

    /// The configuration line printed after the outcomes.
    pub fn summary(&self) -> Value {
        json!({
            "N": self.run.n,
            "L": self.run.l,
            "seed": self.run.seed,
            "count": self.run.outcomes.len(),
            "epsilon": self.run.epsilon,
            "params": self.params,
            "deep_deviations": self.run.deep_deviations,
            "n_max": self.n_max,
            "tv": self.tv,
        })
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.summary();
        v["outcomes"] = json!(self.lines());
        v
    }
}

pub fn sample(opts: &RunOptions) -> Result<SampleOutput, CliError> {
    let p = opts.numeric()?;
    let seed = opts.seed_or(DEFAULT_SEED);
    let run = mc_sample(&p, seed, opts.count.unwrap_or(10), &SamplerConfig::default())?;
    let tv = match opts.n_max {
        Some(n_max) => Some(total_variation(&run.empirical(n_max), &exact_numeric(&p, run.l, n_max)?)),
        None => None,
    };
    let params = ParamsArg::from_numeric(&p).to_string() + " x=" + &Alphabet::Values(p.x.clone()).to_string();
    Ok(SampleOutput { run, params, tv, n_max: opts.n_max })
}

/// JSON with objects expanded one key per line and arrays of records one
/// record per line, so series and distribution dumps diff cleanly.
pub fn layout(v: &Value) -> String {
    let mut out = String::new();
    write_layout(v, 0, &mut out);
    out
}

fn write_layout(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent + 2);
    match v {
        Value::Object(m) if !m.is_empty() => {
            out.push_str("{\n");
            for (i, (k, val)) in m.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_layout(val, indent + 2, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&" ".repeat(indent));
            out.push('}');
        }
        Value::Array(a) if !a.is_empty() && a.iter().all(|e| e.is_array() || e.is_object()) => {
            out.push_str("[\n");
            for (i, e) in a.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&e.to_string());
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&" ".repeat(indent));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}
