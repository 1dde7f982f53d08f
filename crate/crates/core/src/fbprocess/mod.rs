//! Free-boundary q-Whittaker and Hall–Littlewood processes: `Z_n`, its
//! symmetries, partition functions, process weights and the random shift.

mod hl;
mod lemmas;
mod zn;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::qpartition::QBase;
use crate::series::{DegreeGroup, Ring, RingBuilder, Series, TruncationPolicy};

pub use hl::{
    chain_support, chains, chi_pgf, chi_pgf_sum, fb_weight, fbhl_marginal, fbhl_masses, koornwinder_constant,
    koornwinder_constant_sum, koornwinder_rhs, koornwinder_symmetry, phi_hl_product, total_mass, Support,
    SupportConvention,
};
pub use lemmas::{ab_equiv_check, inv_sym_identity_check, InvReading};
pub use zn::{
    invert_pair_window, partition_function_sides, qw_shift_cdf, symmetry_residual, z_infinity, z_n, z_n_with,
    Transform,
};

/// Truncation caps as seen by callers; `qt` counts whole powers of `q`, `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub qt: u32,
    pub x: u32,
    pub params: u32,
    pub z: u32,
}

impl Caps {
    pub fn new(qt: u32, x: u32, params: u32) -> Self {
        Caps { qt, x, params, z: 0 }
    }

    pub fn with_z(mut self, z: u32) -> Self {
        self.z = z;
        self
    }

    /// The kernel policy, whose qt cap is kept in half-units.
    pub fn policy(&self) -> TruncationPolicy {
        TruncationPolicy::new(2 * self.qt, self.x, self.params, self.z)
    }

    /// Largest `|μ|` whose weight `t^{|μ|/2} h_{μ'}(c/√t, d/√t)` fits the caps.
    pub fn mu_bound(&self) -> u32 {
        2 * self.qt + self.params
    }
}

impl fmt::Display for Caps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "qt={} x={} params={} z={}", self.qt, self.x, self.params, self.z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    QWhittaker,
    HallLittlewood,
}

/// Which printed form of the free-boundary weight is used.
///
/// `TheoremProof`: on the Hall–Littlewood side `(a,b)` sit on `λ^{(N)}`, and
/// `(c,d)` with `√q` sit on `λ^{(0)}` together with the `(t;t)` denominators.
/// `Definition`: `(a,b)` with `q^{|λ^{(0)}|/2}` on `λ^{(0)}`, `(c,d)/√q` on `λ^{(N)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    TheoremProof,
    Definition,
}

/// Process parameters: which of `a, b, c, d` are symbolic (the rest are 0),
/// the alphabet size and the caps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessSpec {
    pub side: Side,
    pub n_vars: usize,
    pub symbolic: [bool; 4],
    pub convention: Convention,
    pub caps: Caps,
}

impl ProcessSpec {
    pub fn new(n_vars: usize, caps: Caps) -> Self {
        ProcessSpec {
            side: Side::QWhittaker,
            n_vars,
            symbolic: [true; 4],
            convention: Convention::TheoremProof,
            caps,
        }
    }

    /// All four boundary parameters set to 0.
    pub fn zero_params(mut self) -> Self {
        self.symbolic = [false; 4];
        self
    }

    pub fn with_params(mut self, symbolic: [bool; 4]) -> Self {
        self.symbolic = symbolic;
        self
    }

    pub fn side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    pub fn convention(mut self, c: Convention) -> Self {
        self.convention = c;
        self
    }

    pub fn caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    /// Builds the working ring `q, s_q, t, s_t, a, b, c, d, x1..xN, z`.
    pub fn context(&self) -> Ctx {
        let ring = RingBuilder::new()
            .qt(&["q", "t"])
            .params(&["a", "b", "c", "d"])
            .alphabet("x", self.n_vars)
            .var("z", DegreeGroup::Z)
            .build(self.caps.policy());
        Ctx::new(ring, self)
    }

    /// As [`context`](Self::context) with laurent variables `y1..yk` appended,
    /// each with laurent-depth budget `depth`.
    pub fn context_with_laurent(&self, k: usize, depth: u32) -> Ctx {
        let ring = RingBuilder::new()
            .qt(&["q", "t"])
            .params(&["a", "b", "c", "d"])
            .alphabet("x", self.n_vars)
            .var("z", DegreeGroup::Z)
            .laurent("y", k)
            .build(self.caps.policy());
        let ys: Vec<(usize, u32)> = (1..=k).map(|i| (ring.var(&format!("y{i}")).expect("registered"), depth)).collect();
        let ring = ring.with_depths(&ys).expect("y variables are laurent");
        Ctx::new(ring, self)
    }
}

/// A ring with the handles every process computation needs.
pub struct Ctx {
    pub ring: Arc<Ring>,
    pub qb: QBase,
    pub tb: QBase,
    /// `a, b, c, d`, with non-symbolic entries equal to 0.
    pub params: [Series; 4],
    pub xs: Vec<Series>,
    pub caps: Caps,
}

impl Ctx {
    fn new(ring: Arc<Ring>, spec: &ProcessSpec) -> Ctx {
        let qb = QBase::new(&ring, "q").expect("q registered");
        let tb = QBase::new(&ring, "t").expect("t registered");
        let names = ["a", "b", "c", "d"];
        let params = std::array::from_fn(|i| {
            if spec.symbolic[i] {
                Series::var(&ring, names[i]).expect("registered")
            } else {
                Series::zero(&ring)
            }
        });
        let xs = (1..=spec.n_vars).map(|i| Series::var(&ring, &format!("x{i}")).expect("registered")).collect();
        Ctx { ring, qb, tb, params, xs, caps: spec.caps }
    }

    pub fn var(&self, name: &str) -> Series {
        Series::var(&self.ring, name).expect("registered")
    }

    pub fn idx(&self, name: &str) -> usize {
        self.ring.var(name).expect("registered")
    }

    pub fn one(&self) -> Series {
        Series::one(&self.ring)
    }

    pub fn zero(&self) -> Series {
        Series::zero(&self.ring)
    }
}
