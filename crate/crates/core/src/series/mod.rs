//! Exact truncated multivariate Laurent/power series over the rationals.
//!
//! Every [`Series`] carries the [`Ring`] it lives in; binary operations reject
//! operands over different rings. Monomials are canonical: square-root symbols
//! carry exponent 0 or 1, with pairs folded into their base variable.

mod properties;
mod series;
mod table;

pub use properties::kernel_property_suite;
pub use series::{factorial, ExactScalar, Image, Mono, Series};
pub use table::{DegreeGroup, Ring, TruncationPolicy, VarFlags, VariableTable};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("policy mismatch: {0} vs {1}")]
    PolicyMismatch(String, String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("variable {0} is not laurent-allowed")]
    NotLaurent(String),
    #[error("non-expandable factor {0}")]
    NonExpandable(String),
    #[error("series {0} has zero constant term")]
    ZeroConstantTerm(String),
    #[error("negative exponent on non-laurent variable in {0}")]
    NegativeExponent(String),
    #[error("odd power of {root} in monomial {monomial}")]
    OddPower { root: String, monomial: String },
}

/// Convenience: parse an exact rational such as `"-3/4"` or `"2"`.
pub fn parse_scalar(s: &str) -> Option<ExactScalar> {
    use num_bigint::BigInt;
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(ExactScalar::new(n, d))
        }
        None => Some(ExactScalar::from_integer(s.parse().ok()?)),
    }
}

/// Small-integer scalar.
pub fn int(n: i64) -> ExactScalar {
    ExactScalar::from_integer(n.into())
}

/// Small-fraction scalar.
pub fn frac(n: i64, d: i64) -> ExactScalar {
    ExactScalar::new(n.into(), d.into())
}

/// Builder for the variable tables used throughout the crate.
#[derive(Default)]
pub struct RingBuilder {
    table: VariableTable,
}

impl RingBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds each name together with its square-root symbol `s_<name>`.
    pub fn qt(mut self, names: &[&str]) -> Self {
        for n in names {
            self.table.add_qt_with_root(n);
        }
        self
    }

    pub fn params(mut self, names: &[&str]) -> Self {
        for n in names {
            self.table.add(n, DegreeGroup::Params);
        }
        self
    }

    /// Alphabet variables `<prefix>1 .. <prefix>n` in the x group.
    pub fn alphabet(mut self, prefix: &str, n: usize) -> Self {
        for i in 1..=n {
            self.table.add(&format!("{prefix}{i}"), DegreeGroup::X);
        }
        self
    }

    /// Laurent variables `<prefix>1 .. <prefix>n`.
    pub fn laurent(mut self, prefix: &str, n: usize) -> Self {
        for i in 1..=n {
            self.table.add_laurent(&format!("{prefix}{i}"));
        }
        self
    }

    pub fn var(mut self, name: &str, group: DegreeGroup) -> Self {
        self.table.add(name, group);
        self
    }

    pub fn table(&self) -> &VariableTable {
        &self.table
    }

    pub fn build(self, policy: TruncationPolicy) -> std::sync::Arc<Ring> {
        Ring::new(self.table, policy).expect("builder tables carry no depth budgets on non-laurent variables")
    }
}
