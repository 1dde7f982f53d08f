use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::fbprocess::Caps;
use crate::lattice::NumericParams;
use crate::series::{parse_scalar, ExactScalar};

/// Largest cap accepted from the command line; exponents are stored as `i16`.
pub const MAX_CAP: u32 = 64;
/// Largest alphabet accepted from the command line.
pub const MAX_ALPHABET: usize = 8;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid option: {0}")]
    Invalid(String),
    #[error("computation failed: {0}")]
    Compute(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for usage and option errors, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Invalid(_) => 2,
            CliError::Compute(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<crate::series::SeriesError> for CliError {
    fn from(e: crate::series::SeriesError) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<crate::lattice::LatticeError> for CliError {
    fn from(e: crate::lattice::LatticeError) -> Self {
        match e {
            crate::lattice::LatticeError::NonStochastic(s) => CliError::Invalid(s),
            other => CliError::Compute(other.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamValue {
    Formal,
    Exact(ExactScalar),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Formal => write!(f, "formal"),
            ParamValue::Exact(v) => write!(f, "{v}"),
        }
    }
}

const PARAM_NAMES: [&str; 6] = ["a", "b", "c", "d", "q", "t"];

/// `a,b,c,d,q,t`, each a rational `p/q` or `formal`; the single word
/// `formal` makes all six formal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamsArg(pub [ParamValue; 6]);

impl Default for ParamsArg {
    fn default() -> Self {
        ParamsArg(std::array::from_fn(|_| ParamValue::Formal))
    }
}

impl FromStr for ParamsArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim() == "formal" {
            return Ok(ParamsArg::default());
        }
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 6 {
            return Err(format!("expected six values a,b,c,d,q,t or `formal`, got {}", parts.len()));
        }
        let mut out: [ParamValue; 6] = std::array::from_fn(|_| ParamValue::Formal);
        for (i, p) in parts.iter().enumerate() {
            if *p != "formal" {
                let v = parse_scalar(p).ok_or_else(|| format!("{} = `{p}` is neither a rational nor `formal`", PARAM_NAMES[i]))?;
                out[i] = ParamValue::Exact(v);
            }
        }
        Ok(ParamsArg(out))
    }
}

impl fmt::Display for ParamsArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl ParamsArg {
    /// Which of `a, b, c, d` are ring variables in a formal identity: `formal`
    /// means a variable, `0` means absent. `q`, `t` must stay formal.
    pub fn symbolic(&self) -> Result<[bool; 4], CliError> {
        for i in 4..6 {
            if self.0[i] != ParamValue::Formal {
                return Err(CliError::Invalid(format!("{} must be formal in a series identity", PARAM_NAMES[i])));
            }
        }
        let mut out = [false; 4];
        for i in 0..4 {
            out[i] = match &self.0[i] {
                ParamValue::Formal => true,
                ParamValue::Exact(v) if Zero::is_zero(v) => false,
                ParamValue::Exact(v) => {
                    return Err(CliError::Invalid(format!(
                        "{} = {v}: series identities take each of a,b,c,d as `formal` or 0",
                        PARAM_NAMES[i]
                    )))
                }
            };
        }
        Ok(out)
    }

    /// All six values, for the numeric lattice.
    pub fn numeric(&self, x: Vec<ExactScalar>) -> Result<NumericParams, CliError> {
        let mut v = Vec::with_capacity(6);
        for (i, p) in self.0.iter().enumerate() {
            match p {
                ParamValue::Exact(s) => v.push(s.clone()),
                ParamValue::Formal => {
                    return Err(CliError::Invalid(format!("{} must be a rational for numeric runs", PARAM_NAMES[i])))
                }
            }
        }
        let [a, b, c, d, q, t]: [ExactScalar; 6] = v.try_into().expect("six values");
        Ok(NumericParams { q, t, a, b, c, d, x })
    }

    pub fn from_numeric(p: &NumericParams) -> Self {
        ParamsArg([&p.a, &p.b, &p.c, &p.d, &p.q, &p.t].map(|v| ParamValue::Exact(v.clone())))
    }
}

/// `--alphabet`: a count of formal variables or explicit rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Alphabet {
    Count(usize),
    Values(Vec<ExactScalar>),
}

impl FromStr for Alphabet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if !s.contains(',') && !s.contains('/') {
            if let Ok(n) = s.parse::<usize>() {
                return Ok(Alphabet::Count(n));
            }
        }
        let vals: Option<Vec<ExactScalar>> = s.split(',').map(parse_scalar).collect();
        vals.map(Alphabet::Values).ok_or_else(|| format!("`{s}` is neither a count nor a list of rationals"))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::Count(n) => write!(f, "{n}"),
            Alphabet::Values(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

impl Alphabet {
    pub fn len(&self) -> usize {
        match self {
            Alphabet::Count(n) => *n,
            Alphabet::Values(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Everything a command can be given. `None` means the command's default,
/// which is written into the report.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub n: Option<u32>,
    pub alphabet: Option<Alphabet>,
    pub params: Option<ParamsArg>,
    /// In half-units of `q`, `t`.
    pub qt_cap: Option<u32>,
    pub x_cap: Option<u32>,
    pub param_cap: Option<u32>,
    pub z_order: Option<u32>,
    pub n_max: Option<u32>,
    pub seed: Option<u64>,
    pub count: Option<usize>,
    /// Strip length for numeric distribution dumps.
    pub l: Option<usize>,
}

impl RunOptions {
    /// Caps in whole units. The qt cap is given in half-units and an odd
    /// value is rounded up.
    pub fn caps(&self, default: Caps) -> Result<Caps, CliError> {
        let half = self.qt_cap.unwrap_or(2 * default.qt);
        let x = self.x_cap.unwrap_or(default.x);
        let params = self.param_cap.unwrap_or(default.params);
        for (name, v) in [("qt-cap", half), ("x-cap", x), ("param-cap", params)] {
            if v > MAX_CAP {
                return Err(CliError::Invalid(format!("--{name} {v} exceeds {MAX_CAP}")));
            }
        }
        Ok(Caps::new(half.div_ceil(2), x, params))
    }

    pub fn symbolic(&self, default: [bool; 4]) -> Result<[bool; 4], CliError> {
        match &self.params {
            Some(p) => p.symbolic(),
            None => Ok(default),
        }
    }

    /// Alphabet sizes to run: the given count, else `default`.
    pub fn alphabet_sizes(&self, default: &[usize]) -> Result<Vec<usize>, CliError> {
        match &self.alphabet {
            None => Ok(default.to_vec()),
            Some(Alphabet::Count(n)) if *n > MAX_ALPHABET => {
                Err(CliError::Invalid(format!("--alphabet {n} exceeds {MAX_ALPHABET}")))
            }
            Some(Alphabet::Count(n)) => Ok(vec![*n]),
            Some(Alphabet::Values(_)) => {
                Err(CliError::Invalid("explicit alphabet values apply only to numeric runs; give a count".into()))
            }
        }
    }

    /// Levels to run: the given `n`, else `default`.
    pub fn levels(&self, default: &[u32]) -> Vec<u32> {
        match self.n {
            Some(n) => vec![n],
            None => default.to_vec(),
        }
    }

    pub fn seed_or(&self, default: u64) -> u64 {
        self.seed.unwrap_or(default)
    }

    /// Numeric lattice parameters: `--params` (default the reference set)
    /// and `--alphabet` values, or a count of the reference `x`.
    pub fn numeric(&self) -> Result<NumericParams, CliError> {
        let reference = NumericParams::reference();
        let x = match &self.alphabet {
            None => reference.x.clone(),
            Some(Alphabet::Values(v)) => v.clone(),
            Some(Alphabet::Count(n)) if *n <= reference.x.len() => reference.x[..*n].to_vec(),
            Some(Alphabet::Count(n)) => {
                return Err(CliError::Invalid(format!(
                    "--alphabet {n}: give explicit values for more than {} rows",
                    reference.x.len()
                )))
            }
        };
        if x.is_empty() || x.len() > MAX_ALPHABET {
            return Err(CliError::Invalid(format!("numeric runs need 1..={MAX_ALPHABET} rows, got {}", x.len())));
        }
        let p = match &self.params {
            None => NumericParams { x, ..reference },
            Some(p) => p.numeric(x)?,
        };
        p.validate_ranges().map_err(CliError::Invalid)?;
        Ok(p)
    }
}
