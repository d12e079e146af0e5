use std::fmt;

use crate::error::{Error, Result};

/// An integer partition, parts non-increasing and positive.
///
/// The derived ordering is lexicographic on the parts; it is only used to
/// canonicalise unordered pairs of partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidLabel(format!(
                "{parts:?} is not a partition (parts must be positive and non-increasing)"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zero parts.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition [m] (empty for m = 0).
    pub fn row(m: u32) -> Self {
        if m == 0 {
            Self::empty()
        } else {
            Partition(vec![m])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=width)
                .map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32)
                .collect(),
        )
    }

    /// Σ (i-1) μ_i
    pub fn a_invariant(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// Σ C(μ_i, 2)
    pub fn a_star_invariant(&self) -> u64 {
        self.0
            .iter()
            .map(|&p| p as u64 * (p as u64).saturating_sub(1) / 2)
            .sum()
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn standard_tableaux(&self) -> u128 {
        let conj = self.conjugate();
        let mut hooks: u128 = 1;
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row as usize - j - 1;
                let leg = conj.0[j] as usize - i - 1;
                hooks *= (arm + leg + 1) as u128;
            }
        }
        crate::weyl::factorial(self.weight() as u128) / hooks
    }

    fn beta_set(&self, len: usize) -> Vec<i64> {
        (0..len)
            .map(|i| {
                let part = self.0.get(i).copied().unwrap_or(0) as i64;
                part + (len - 1 - i) as i64
            })
            .collect()
    }

    fn from_beta_set(mut beta: Vec<i64>) -> Partition {
        beta.sort_unstable_by(|a, b| b.cmp(a));
        let len = beta.len();
        Partition::from_unsorted(
            beta.iter()
                .enumerate()
                .map(|(i, &b)| (b - (len - 1 - i) as i64) as u32)
                .collect(),
        )
    }

    /// Every way to strip a rim hook of size `r`, with the sign
    /// (-1)^(height) of the removed hook.
    pub fn remove_rim_hooks(&self, r: u32) -> Vec<(Partition, i64)> {
        let len = self.len();
        let beta = self.beta_set(len);
        let mut out = Vec::new();
        for (idx, &b) in beta.iter().enumerate() {
            let target = b - r as i64;
            if target < 0 || beta.contains(&target) {
                continue;
            }
            let between = beta.iter().filter(|&&x| x > target && x < b).count();
            let mut next = beta.clone();
            next[idx] = target;
            let sign = if between % 2 == 0 { 1 } else { -1 };
            out.push((Partition::from_beta_set(next), sign));
        }
        out
    }

    /// Partitions obtained by adding `r` boxes, no two in the same column.
    pub fn add_horizontal_strip(&self, r: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let rows = self.len() + 1;
        let mut current = vec![0u32; rows];
        self.strip_rec(0, r, &mut current, &mut out);
        out
    }

    fn strip_rec(&self, row: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        let rows = current.len();
        if row == rows {
            if left == 0 {
                out.push(Partition::from_unsorted(current.clone()));
            }
            return;
        }
        let base = self.0.get(row).copied().unwrap_or(0);
        let cap = if row == 0 {
            base + left
        } else {
            // interlacing: new row i may not exceed old row i-1
            self.0[row - 1].min(base + left)
        };
        for v in base..=cap {
            current[row] = v;
            self.strip_rec(row + 1, left - (v - base), current, out);
        }
    }

    /// All partitions of `m`, in reverse lexicographic order.
    pub fn all_of(m: u32) -> Vec<Partition> {
        fn rec(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=max.min(left)).rev() {
                cur.push(p);
                rec(left - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, m, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "∅" || s == "[]" {
            return Ok(Partition::empty());
        }
        let inner = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [..], got '{s}'")))?;
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad part '{p}' in '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Kostka number K_{λ,content}: semistandard tableaux of shape λ with the
/// given content, by iterated horizontal strips.
pub fn kostka(shape: &Partition, content: &[u32]) -> u64 {
    let mut layer: Vec<(Partition, u64)> = vec![(Partition::empty(), 1)];
    for &c in content {
        let mut next: std::collections::BTreeMap<Partition, u64> = Default::default();
        for (p, m) in &layer {
            for q in p.add_horizontal_strip(c) {
                // prune shapes that no longer fit inside the target
                if q.len() <= shape.len()
                    && q.parts().iter().zip(shape.parts()).all(|(a, b)| a <= b)
                {
                    *next.entry(q).or_insert(0) += m;
                }
            }
        }
        layer = next.into_iter().collect();
    }
    layer
        .into_iter()
        .find(|(p, _)| p == shape)
        .map(|(_, m)| m)
        .unwrap_or(0)
}
