use std::fmt;

use serde::{Serialize, Serializer};

use super::partition::Partition;
use crate::error::{Error, Result};
use crate::weyl::{Family, WeylDescriptor};

/// Which half of a restricted character `(μ,μ)` in type D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Half {
    Plus,
    Minus,
}

impl Half {
    pub fn flip(self) -> Half {
        match self {
            Half::Plus => Half::Minus,
            Half::Minus => Half::Plus,
        }
    }
}

/// Irreducible character label.
///
/// Type A: a partition of n+1 (`nu` empty, no half).
/// Type B: a bipartition `(μ,ν)` of n.
/// Type D: an unordered bipartition, stored with `mu >= nu`; when `mu == nu`
/// the character splits and `half` is set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharLabel {
    family: Family,
    mu: Partition,
    nu: Partition,
    half: Option<Half>,
}

impl CharLabel {
    pub fn type_a(mu: Partition) -> Self {
        CharLabel {
            family: Family::A,
            mu,
            nu: Partition::empty(),
            half: None,
        }
    }

    pub fn type_b(mu: Partition, nu: Partition) -> Self {
        CharLabel {
            family: Family::B,
            mu,
            nu,
            half: None,
        }
    }

    /// Canonicalises the pair; `half` is required exactly when `mu == nu`.
    pub fn type_d(mu: Partition, nu: Partition, half: Option<Half>) -> Result<Self> {
        let (mu, nu) = if mu >= nu { (mu, nu) } else { (nu, mu) };
        if (mu == nu) != half.is_some() {
            return Err(Error::InvalidLabel(format!(
                "type D label {{{mu},{nu}}}: a sign is needed exactly when both partitions agree"
            )));
        }
        Ok(CharLabel {
            family: Family::D,
            mu,
            nu,
            half,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    pub fn nu(&self) -> &Partition {
        &self.nu
    }

    pub fn half(&self) -> Option<Half> {
        self.half
    }

    pub fn is_trivial(&self) -> bool {
        self.nu.is_empty() && self.mu.len() <= 1 && self.half.is_none()
    }

    pub fn weight(&self) -> u32 {
        self.mu.weight() + self.nu.weight()
    }

    /// The type B label this one restricts from (type D only).
    pub fn b_parent(&self) -> CharLabel {
        CharLabel::type_b(self.mu.clone(), self.nu.clone())
    }

    pub fn check(&self, desc: &WeylDescriptor) -> Result<()> {
        let want = match desc.family {
            Family::A => desc.rank + 1,
            _ => desc.rank,
        } as u32;
        if self.family != desc.family || self.weight() != want {
            return Err(Error::InvalidLabel(format!(
                "{self} is not a character of {desc}"
            )));
        }
        Ok(())
    }

    /// Parses `[3,1]` (A), `([3,1],[2])` (B, D) or `([2],+)` (D, split).
    pub fn parse(desc: &WeylDescriptor, text: &str) -> Result<Self> {
        let t = text.trim();
        let label = match desc.family {
            Family::A => CharLabel::type_a(t.parse()?),
            fam => {
                let inner = t
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("expected (μ,ν), got '{t}'")))?;
                let inner = inner.trim_start();
                let end = if inner.starts_with('∅') {
                    '∅'.len_utf8()
                } else {
                    inner
                        .find(']')
                        .ok_or_else(|| Error::Parse(format!("expected (μ,ν), got '{t}'")))?
                        + 1
                };
                let (left, right) = inner.split_at(end);
                let right = right
                    .trim()
                    .strip_prefix(',')
                    .ok_or_else(|| Error::Parse(format!("expected (μ,ν), got '{t}'")))?
                    .trim();
                let mu: Partition = left.parse()?;
                match (fam, right) {
                    (Family::D, "+") => CharLabel::type_d(mu.clone(), mu, Some(Half::Plus))?,
                    (Family::D, "-") => CharLabel::type_d(mu.clone(), mu, Some(Half::Minus))?,
                    (Family::D, r) => CharLabel::type_d(mu, r.parse()?, None)?,
                    (_, r) => CharLabel::type_b(mu, r.parse()?),
                }
            }
        };
        label.check(desc)?;
        Ok(label)
    }
}

impl fmt::Display for CharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.family, self.half) {
            (Family::A, _) => write!(f, "{}", self.mu),
            (_, None) => write!(f, "({},{})", self.mu, self.nu),
            (_, Some(Half::Plus)) => write!(f, "({},+)", self.mu),
            (_, Some(Half::Minus)) => write!(f, "({},-)", self.mu),
        }
    }
}

impl Serialize for CharLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Every irreducible character label of W.
pub fn all_labels(desc: &WeylDescriptor) -> Vec<CharLabel> {
    let n = desc.rank as u32;
    match desc.family {
        Family::A => Partition::all_of(n + 1)
            .into_iter()
            .map(CharLabel::type_a)
            .collect(),
        Family::B => bipartitions(n)
            .map(|(mu, nu)| CharLabel::type_b(mu, nu))
            .collect(),
        Family::D => {
            let mut out = Vec::new();
            for (mu, nu) in bipartitions(n) {
                if mu > nu {
                    out.push(CharLabel::type_d(mu, nu, None).expect("canonical"));
                } else if mu == nu {
                    for h in [Half::Plus, Half::Minus] {
                        out.push(
                            CharLabel::type_d(mu.clone(), nu.clone(), Some(h)).expect("split"),
                        );
                    }
                }
            }
            out
        }
    }
}

fn bipartitions(n: u32) -> impl Iterator<Item = (Partition, Partition)> {
    (0..=n).rev().flat_map(move |k| {
        Partition::all_of(k).into_iter().flat_map(move |mu| {
            Partition::all_of(n - k)
                .into_iter()
                .map(move |nu| (mu.clone(), nu))
        })
    })
}

/// Degree of the irreducible character.
pub fn dimension(label: &CharLabel) -> u128 {
    match label.family {
        Family::A => label.mu.standard_tableaux(),
        Family::B | Family::D => {
            let a = label.mu.weight() as u128;
            let b = label.nu.weight() as u128;
            let full =
                binomial(a + b, a) * label.mu.standard_tableaux() * label.nu.standard_tableaux();
            if label.half.is_some() {
                full / 2
            } else {
                full
            }
        }
    }
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desc(f: Family, n: usize) -> WeylDescriptor {
        WeylDescriptor::new(f, n).unwrap()
    }

    #[test]
    fn squares_of_degrees_sum_to_group_order() {
        for f in [Family::A, Family::B, Family::D] {
            for n in 2..=7 {
                let d = desc(f, n);
                let total: u128 = all_labels(&d).iter().map(|l| dimension(l).pow(2)).sum();
                assert_eq!(total, d.order(), "{d}");
            }
        }
    }

    #[test]
    fn label_counts() {
        // number of bipartitions of n: 2, 5, 10, 20, 36
        let counts: Vec<usize> = (1..=5).map(|n| bipartitions(n).count()).collect();
        assert_eq!(counts, vec![2, 5, 10, 20, 36]);
        // D4 has 13 classes
        assert_eq!(all_labels(&desc(Family::D, 4)).len(), 13);
    }

    #[test]
    fn render_and_parse() {
        let b3 = desc(Family::B, 3);
        let l = CharLabel::parse(&b3, "([2],[1])").unwrap();
        assert_eq!(l.to_string(), "([2],[1])");
        let l = CharLabel::parse(&b3, "([],[2,1])").unwrap();
        assert_eq!(l.to_string(), "([],[2,1])");
        assert!(CharLabel::parse(&b3, "([2],[2])").is_err());

        let d4 = desc(Family::D, 4);
        let l = CharLabel::parse(&d4, "([1],[3])").unwrap();
        assert_eq!(l.to_string(), "([3],[1])");
        let l = CharLabel::parse(&d4, "([2],-)").unwrap();
        assert_eq!(l.half(), Some(Half::Minus));
        assert_eq!(l.to_string(), "([2],-)");
        assert!(CharLabel::parse(&d4, "([2],[2])").is_err());

        let a3 = desc(Family::A, 3);
        assert_eq!(CharLabel::parse(&a3, "[2,2]").unwrap().to_string(), "[2,2]");
        assert!(CharLabel::parse(&a3, "[2,1]").is_err());
    }
}
