use std::fmt;
use std::str::FromStr;

/// Weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<u32>),
    #[error("cannot parse partition {0:?}")]
    Parse(String),
    #[error("chain is not increasing at step {0}")]
    BrokenChain(usize),
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Zero parts are dropped; the rest must be weakly decreasing.
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        let parts: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        Ok(Self { parts })
    }

    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    /// Partition with multiplicities `m[i-1] = m_i`.
    pub fn from_multiplicities(m: &[u32]) -> Self {
        let mut parts = Vec::new();
        for (i, &k) in m.iter().enumerate().rev() {
            parts.extend(std::iter::repeat(i as u32 + 1).take(k as usize));
        }
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `λ_i` with 1-based index; zero beyond the length and `λ_0 = ∞`.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return u32::MAX;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn largest(&self) -> u32 {
        self.part(1)
    }

    /// `m_i(λ)`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == i).count() as u32
    }

    /// `[m_1, ..., m_{λ_1}]`.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut m = vec![0; self.largest() as usize];
        for &p in &self.parts {
            m[p as usize - 1] += 1;
        }
        m
    }

    /// Gaps `λ_i - λ_{i+1}` for `i = 1..=ℓ(λ)`.
    pub fn gaps(&self) -> Vec<u32> {
        (1..=self.len()).map(|i| self.part(i) - self.part(i + 1)).collect()
    }

    pub fn conjugate(&self) -> Partition {
        let n = self.largest() as usize;
        let parts = (1..=n).map(|j| self.parts.iter().filter(|&&p| p as usize >= j).count() as u32).collect();
        Partition { parts }
    }

    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// `λ/μ` is a horizontal strip: `λ_{i+1} ≤ μ_i ≤ λ_i` for all i.
    pub fn is_horizontal_strip_over(&self, mu: &Partition) -> bool {
        if !self.contains(mu) {
            return false;
        }
        (1..=self.len()).all(|i| self.part(i + 1) <= mu.part(i))
    }

    /// Every part occurs an even number of times (equivalently `λ'` is even).
    pub fn conjugate_is_even(&self) -> bool {
        self.multiplicities().iter().all(|m| m % 2 == 0)
    }

    /// Every part is even.
    pub fn is_even(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }

    /// `odd(λ')`: number of columns of odd length, `Σ_i (λ_{2i-1} - λ_{2i})`.
    pub fn odd_columns(&self) -> u32 {
        self.gaps().iter().step_by(2).sum()
    }

    /// All `ν` with `λ/ν` a horizontal strip and `μ ⊆ ν`.
    pub fn strips_below(&self, mu: &Partition) -> Vec<Partition> {
        let l = self.len();
        let mut out = Vec::new();
        let mut cur = vec![0u32; l];
        fn rec(lam: &Partition, mu: &Partition, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if i > lam.len() {
                out.push(Partition::new(cur.clone()).expect("interlacing keeps parts decreasing"));
                return;
            }
            let lo = lam.part(i + 1).max(mu.part(i));
            let hi = lam.part(i);
            for v in lo..=hi {
                cur[i - 1] = v;
                rec(lam, mu, i + 1, cur, out);
            }
        }
        if !self.contains(mu) {
            return out;
        }
        rec(self, mu, 1, &mut cur, &mut out);
        out
    }

    /// All `κ ⊇ λ` with `κ/λ` a horizontal strip, `κ_1 ≤ max_first` and `|κ/λ| ≤ max_added`.
    pub fn strips_above(&self, max_first: u32, max_added: u32) -> Vec<Partition> {
        let l = self.len();
        let mut out = Vec::new();
        let mut cur = vec![0u32; l + 1];
        fn rec(lam: &Partition, i: usize, budget: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if i > lam.len() + 1 {
                out.push(Partition::new(cur.clone()).expect("interlacing keeps parts decreasing"));
                return;
            }
            let lo = lam.part(i);
            let hi = if i == 1 { cap } else { lam.part(i - 1) };
            if lo > hi {
                return;
            }
            for v in lo..=hi.min(lo + budget) {
                cur[i - 1] = v;
                rec(lam, i + 1, budget - (v - lo), cap, cur, out);
            }
        }
        rec(self, 1, max_added, max_first, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = PartitionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Partition::empty());
        }
        let parts: Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse::<u32>()).collect();
        let parts = parts.map_err(|_| PartitionError::Parse(s.to_string()))?;
        Partition::new(parts)
    }
}

/// All partitions of `n` with largest part at most `max_part` and length at most `max_len`.
pub fn partitions_of(n: u32, max_part: u32, max_len: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: u32, max_part: u32, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=max_part.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, max_len, cur, out);
            cur.pop();
        }
    }
    rec(n, max_part, max_len, &mut cur, &mut out);
    out
}

/// All partitions of size at most `n`, bounded as in [`partitions_of`].
pub fn partitions_up_to(n: u32, max_part: u32, max_len: usize) -> Vec<Partition> {
    (0..=n).flat_map(|k| partitions_of(k, max_part, max_len)).collect()
}

/// Sequence `λ^{(0)} ⊆ λ^{(1)} ⊆ … ⊆ λ^{(N)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionChain {
    steps: Vec<Partition>,
}

impl PartitionChain {
    pub fn new(steps: Vec<Partition>) -> Result<Self, PartitionError> {
        for (i, w) in steps.windows(2).enumerate() {
            if !w[1].contains(&w[0]) {
                return Err(PartitionError::BrokenChain(i + 1));
            }
        }
        Ok(Self { steps })
    }

    pub fn steps(&self) -> &[Partition] {
        &self.steps
    }

    /// `N`, the number of one-variable steps.
    pub fn n_steps(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn first(&self) -> &Partition {
        &self.steps[0]
    }

    pub fn last(&self) -> &Partition {
        self.steps.last().expect("chains are nonempty")
    }

    pub fn is_horizontal(&self) -> bool {
        self.steps.windows(2).all(|w| w[1].is_horizontal_strip_over(&w[0]))
    }
}
