//! Variable tables, degree groups and truncation policies.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::SeriesError;

/// Degree groups carrying a truncation cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DegreeGroup {
    /// q, t, u and their square-root symbols, counted in half-units.
    Qt,
    /// Alphabet variables x_1, ..., x_N.
    X,
    /// Boundary parameters a, b, c, d.
    Params,
    /// Generating-function variable z.
    Z,
    /// Laurent integration variables; bounded by the laurent-depth budget only.
    Free,
}

impl DegreeGroup {
    pub const CAPPED: [DegreeGroup; 4] =
        [DegreeGroup::Qt, DegreeGroup::X, DegreeGroup::Params, DegreeGroup::Z];

    pub(crate) fn slot(self) -> Option<usize> {
        match self {
            DegreeGroup::Qt => Some(0),
            DegreeGroup::X => Some(1),
            DegreeGroup::Params => Some(2),
            DegreeGroup::Z => Some(3),
            DegreeGroup::Free => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarFlags {
    pub laurent: bool,
    /// For a square-root symbol, the index of the variable it squares to.
    pub sqrt_of: Option<usize>,
    pub group: DegreeGroup,
    /// Contribution of one power of this variable to its group degree.
    pub weight: u32,
}

/// Ordered list of named indeterminates.
///
/// Square-root symbols `s_q` are stored next to their base `q`; monomials are
/// kept canonical with every square-root exponent in {0, 1}.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VariableTable {
    names: Vec<String>,
    flags: Vec<VarFlags>,
}

impl VariableTable {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, name: &str, flags: VarFlags) -> usize {
        assert!(self.index(name).is_none(), "duplicate variable {name}");
        self.names.push(name.to_string());
        self.flags.push(flags);
        self.names.len() - 1
    }

    /// Registers `name` (weight 2 in the qt group) together with its square
    /// root `s_name` (weight 1).
    pub fn add_qt_with_root(&mut self, name: &str) -> &mut Self {
        let base = self.push(
            name,
            VarFlags { laurent: false, sqrt_of: None, group: DegreeGroup::Qt, weight: 2 },
        );
        self.push(
            &format!("s_{name}"),
            VarFlags { laurent: false, sqrt_of: Some(base), group: DegreeGroup::Qt, weight: 1 },
        );
        self
    }

    pub fn add(&mut self, name: &str, group: DegreeGroup) -> &mut Self {
        assert!(group != DegreeGroup::Free, "use add_laurent for free variables");
        self.push(name, VarFlags { laurent: false, sqrt_of: None, group, weight: 1 });
        self
    }

    pub fn add_laurent(&mut self, name: &str) -> &mut Self {
        self.push(
            name,
            VarFlags { laurent: true, sqrt_of: None, group: DegreeGroup::Free, weight: 0 },
        );
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn flags(&self, i: usize) -> &VarFlags {
        &self.flags[i]
    }

    pub fn laurent_vars(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.flags[i].laurent).collect()
    }

    pub fn sqrt_of(&self, i: usize) -> Option<usize> {
        self.flags[i].sqrt_of
    }

    /// Index of the square-root symbol for base variable `i`, if registered.
    pub fn root_of(&self, i: usize) -> Option<usize> {
        (0..self.len()).find(|&j| self.flags[j].sqrt_of == Some(i))
    }
}

/// Per-group degree caps plus a laurent-depth budget per laurent variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationPolicy {
    /// Cap on the qt group in half-units (q, t, u count 2; their roots count 1).
    pub qt: u32,
    pub x: u32,
    pub params: u32,
    pub z: u32,
    /// Minimum allowed exponent is `-depth`; `None` leaves the variable unbounded below.
    pub laurent_depth: Vec<Option<u32>>,
}

impl TruncationPolicy {
    pub fn new(qt: u32, x: u32, params: u32, z: u32) -> Self {
        Self { qt, x, params, z, laurent_depth: Vec::new() }
    }

    pub(crate) fn caps(&self) -> [u32; 4] {
        [self.qt, self.x, self.params, self.z]
    }

    pub fn depth(&self, var: usize) -> Option<u32> {
        self.laurent_depth.get(var).copied().flatten()
    }
}

impl fmt::Display for TruncationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "qt={} x={} params={} z={}", self.qt, self.x, self.params, self.z)
    }
}

/// A variable table paired with the policy all series over it obey.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    pub table: VariableTable,
    pub policy: TruncationPolicy,
}

impl Ring {
    pub fn new(table: VariableTable, mut policy: TruncationPolicy) -> Result<Arc<Ring>, SeriesError> {
        policy.laurent_depth.resize(table.len(), None);
        for i in 0..table.len() {
            if policy.laurent_depth[i].is_some() && !table.flags(i).laurent {
                return Err(SeriesError::NotLaurent(table.name(i).to_string()));
            }
        }
        Ok(Arc::new(Ring { table, policy }))
    }

    /// Same table, new laurent-depth budgets.
    pub fn with_depths(&self, depths: &[(usize, u32)]) -> Result<Arc<Ring>, SeriesError> {
        let mut policy = self.policy.clone();
        for &(v, d) in depths {
            policy.laurent_depth[v] = Some(d);
        }
        Ring::new(self.table.clone(), policy)
    }

    /// Same table, new caps (depth budgets kept).
    pub fn with_caps(&self, qt: u32, x: u32, params: u32, z: u32) -> Arc<Ring> {
        let mut policy = self.policy.clone();
        policy.qt = qt;
        policy.x = x;
        policy.params = params;
        policy.z = z;
        Arc::new(Ring { table: self.table.clone(), policy })
    }

    pub fn var(&self, name: &str) -> Result<usize, SeriesError> {
        self.table.index(name).ok_or_else(|| SeriesError::UnknownVariable(name.to_string()))
    }

    /// Group degrees of an exponent vector, in the slot order of [`DegreeGroup::CAPPED`].
    pub fn degrees(&self, e: &[i16]) -> [i32; 4] {
        let mut d = [0i32; 4];
        for (i, &x) in e.iter().enumerate() {
            if x != 0 {
                let fl = self.table.flags(i);
                if let Some(s) = fl.group.slot() {
                    d[s] += fl.weight as i32 * x as i32;
                }
            }
        }
        d
    }

    pub fn within_caps(&self, deg: &[i32; 4]) -> bool {
        let caps = self.policy.caps();
        (0..4).all(|s| deg[s] <= caps[s] as i32)
    }

    pub(crate) fn within_depth(&self, e: &[i16]) -> bool {
        self.policy
            .laurent_depth
            .iter()
            .zip(e)
            .all(|(d, &x)| d.map_or(true, |d| x as i32 >= -(d as i32)))
    }
}
