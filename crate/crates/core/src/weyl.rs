//! Weyl groups of types A, B and D realised as (signed) permutation groups.
//!
//! Type A_n acts on the points {1..n+1}; types B_n and D_n act on
//! {-n..-1, 1..n} with `w(-i) = -w(i)`. Generators follow the Dynkin
//! numbering: `s_i = (i, i+1)(-i, -i-1)` for i < n, then `t = (-n, n)` for B
//! and `u = t s_{n-1} t` for D.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
        };
        f.write_str(c)
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" | "C" | "c" => Ok(Family::B),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Parse(format!("unknown Weyl family '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylDescriptor {
    pub family: Family,
    pub rank: usize,
}

impl fmt::Display for WeylDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl WeylDescriptor {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = match family {
            Family::A => 1,
            Family::B | Family::D => 2,
        };
        if rank < min {
            return Err(Error::InvalidDescriptor(format!(
                "family {family} needs rank at least {min}, got {rank}"
            )));
        }
        // Signed permutations are stored as i32 and group orders as u128.
        if rank > 30 {
            return Err(Error::InvalidDescriptor(format!(
                "rank {rank} is too large"
            )));
        }
        Ok(WeylDescriptor { family, rank })
    }

    /// Number of points the group permutes: n+1 for A_n, n otherwise.
    pub fn degree(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::B | Family::D => self.rank,
        }
    }

    pub fn order(&self) -> u128 {
        let n = self.rank as u128;
        match self.family {
            Family::A => factorial(n + 1),
            Family::B => (1u128 << n) * factorial(n),
            Family::D => (1u128 << (n - 1)) * factorial(n),
        }
    }

    /// Whether the rank is in the range where the closed-form bound holds
    /// (n ≥ 3 for A and B, n ≥ 4 for D).
    pub fn in_closed_form_range(&self) -> bool {
        match self.family {
            Family::A | Family::B => self.rank >= 3,
            Family::D => self.rank >= 4,
        }
    }

    /// All Dynkin node positions 1..=n.
    pub fn nodes(&self) -> impl Iterator<Item = usize> {
        1..=self.rank
    }

    /// Dynkin edges between node positions.
    fn adjacent(&self, a: usize, b: usize) -> bool {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let n = self.rank;
        match self.family {
            Family::A | Family::B => b == a + 1,
            Family::D => {
                if b == n {
                    n >= 3 && a == n - 2
                } else {
                    b == a + 1
                }
            }
        }
    }

    pub fn contains(&self, w: &SignedPermutation) -> bool {
        if w.degree() != self.degree() {
            return false;
        }
        match self.family {
            Family::A => w.negative_count() == 0,
            Family::B => true,
            Family::D => w.negative_count().is_multiple_of(2),
        }
    }

    fn ensure_contains(&self, w: &SignedPermutation) -> Result<()> {
        if self.contains(w) {
            Ok(())
        } else {
            Err(Error::NotInGroup(w.to_string(), self.to_string()))
        }
    }
}

pub(crate) fn factorial(n: u128) -> u128 {
    (1..=n).product::<u128>().max(1)
}

/// A permutation of {-m..-1, 1..m} commuting with negation, stored as the
/// images of 1..m.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    images: Vec<i32>,
}

impl SignedPermutation {
    pub fn identity(degree: usize) -> Self {
        SignedPermutation {
            images: (1..=degree as i32).collect(),
        }
    }

    pub fn from_images(images: Vec<i32>) -> Result<Self> {
        let m = images.len() as i32;
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let a = x.unsigned_abs() as i32;
            if x == 0 || a > m || seen[(a - 1) as usize] {
                return Err(Error::Parse(format!(
                    "{images:?} is not a signed permutation of 1..{m}"
                )));
            }
            seen[(a - 1) as usize] = true;
        }
        Ok(SignedPermutation { images })
    }

    /// Swap of the points i and j (and of -i and -j), 1-based.
    pub fn transposition(degree: usize, i: usize, j: usize) -> Self {
        let mut w = Self::identity(degree);
        w.images.swap(i - 1, j - 1);
        w
    }

    /// The sign change (-i, i), 1-based.
    pub fn sign_change(degree: usize, i: usize) -> Self {
        let mut w = Self::identity(degree);
        w.images[i - 1] = -w.images[i - 1];
        w
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    /// Image of a signed point.
    pub fn apply(&self, x: i32) -> i32 {
        let img = self.images[(x.unsigned_abs() - 1) as usize];
        if x < 0 {
            -img
        } else {
            img
        }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        debug_assert_eq!(self.degree(), other.degree());
        SignedPermutation {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            let pre = i as i32 + 1;
            images[(x.unsigned_abs() - 1) as usize] = if x < 0 { -pre } else { pre };
        }
        SignedPermutation { images }
    }

    pub fn conjugate_by(&self, g: &SignedPermutation) -> SignedPermutation {
        g.compose(self).compose(&g.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| x == i as i32 + 1)
    }

    pub fn negative_count(&self) -> usize {
        self.images.iter().filter(|&&x| x < 0).count()
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| x == i as i32 + 1)
            .count()
    }

    /// Cycles of the underlying permutation of {1..m}, each with the product
    /// of signs met along it (`true` for a negative cycle). Cycles are sorted
    /// by decreasing length, negative after positive on ties.
    pub fn signed_cycle_type(&self) -> Vec<(usize, bool)> {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut cycles = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut negative = false;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                len += 1;
                let img = self.images[cur];
                negative ^= img < 0;
                cur = (img.unsigned_abs() - 1) as usize;
            }
            cycles.push((len, negative));
        }
        cycles.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        cycles
    }

    /// Cycle type of the underlying unsigned permutation, decreasing.
    pub fn cycle_type(&self) -> Vec<usize> {
        self.signed_cycle_type()
            .into_iter()
            .map(|(l, _)| l)
            .collect()
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl std::str::FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [..], got '{s}'")))?;
        let images = inner
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| {
                p.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad image '{p}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        SignedPermutation::from_images(images)
    }
}

pub fn generators(desc: &WeylDescriptor) -> Vec<SignedPermutation> {
    let m = desc.degree();
    let n = desc.rank;
    match desc.family {
        Family::A => (1..=n)
            .map(|i| SignedPermutation::transposition(m, i, i + 1))
            .collect(),
        Family::B | Family::D => {
            let mut gens: Vec<_> = (1..n)
                .map(|i| SignedPermutation::transposition(m, i, i + 1))
                .collect();
            let t = SignedPermutation::sign_change(m, n);
            if desc.family == Family::B {
                gens.push(t);
            } else {
                let s = SignedPermutation::transposition(m, n - 1, n);
                gens.push(t.compose(&s).compose(&t));
            }
            gens
        }
    }
}

/// Letter counts of a reduced word: generators conjugate to some `s_i`, and
/// those conjugate to `t` (type B only).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash, Serialize, Deserialize)]
pub struct LengthProfile {
    pub s_letters: u64,
    pub t_letters: u64,
}

impl LengthProfile {
    pub fn total(&self) -> u64 {
        self.s_letters + self.t_letters
    }

    pub fn weighted(&self, e: Rational64) -> Rational64 {
        Rational64::from_integer(self.s_letters as i64) + e * (self.t_letters as i64)
    }
}

impl std::ops::Add for LengthProfile {
    type Output = LengthProfile;

    fn add(self, rhs: Self) -> Self {
        LengthProfile {
            s_letters: self.s_letters + rhs.s_letters,
            t_letters: self.t_letters + rhs.t_letters,
        }
    }
}

/// Counts positive roots sent to negative roots.
///
/// Positive roots are those whose first nonzero coordinate is positive:
/// `e_i - e_j`, `e_i + e_j` (i < j) and, for B, `e_i`.
pub fn length_profile(desc: &WeylDescriptor, w: &SignedPermutation) -> Result<LengthProfile> {
    desc.ensure_contains(w)?;
    let imgs = w.images();
    let m = imgs.len();
    let mut long = 0u64;
    let mut short = 0u64;
    for i in 0..m {
        let (a, ei) = (imgs[i].abs(), imgs[i].signum());
        for &img in &imgs[i + 1..] {
            let (b, ej) = (img.abs(), img.signum());
            // w(e_i - e_j) = ei e_a - ej e_b
            let lead_minus = if a < b { ei } else { -ej };
            if lead_minus < 0 {
                long += 1;
            }
            if desc.family != Family::A {
                let lead_plus = if a < b { ei } else { ej };
                if lead_plus < 0 {
                    long += 1;
                }
            }
        }
        if desc.family == Family::B && ei < 0 {
            short += 1;
        }
    }
    Ok(LengthProfile {
        s_letters: long,
        t_letters: short,
    })
}

pub fn length(desc: &WeylDescriptor, w: &SignedPermutation) -> Result<u64> {
    Ok(length_profile(desc, w)?.total())
}

/// Length where the B-generator `t` weighs `e` and every other generator 1.
pub fn weighted_length(
    desc: &WeylDescriptor,
    w: &SignedPermutation,
    e: Rational64,
) -> Result<Rational64> {
    Ok(length_profile(desc, w)?.weighted(e))
}

pub fn longest_word(desc: &WeylDescriptor) -> SignedPermutation {
    let m = desc.degree() as i32;
    let n = desc.rank;
    let images = match desc.family {
        Family::A => (1..=m).map(|i| m + 1 - i).collect(),
        Family::B => (1..=m).map(|i| -i).collect(),
        Family::D => (1..=m)
            .map(|i| if n % 2 == 1 && i == m { i } else { -i })
            .collect(),
    };
    SignedPermutation { images }
}

/// A set of Dynkin node positions 1..=n.
///
/// For D_n the two end nodes (positions n-1 and n, i.e. `s_{n-1}` and `u`)
/// carry the labels `n` and `n'`; type n-1 does not exist there.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeSubset {
    members: BTreeSet<usize>,
}

impl TypeSubset {
    pub fn new(desc: &WeylDescriptor, positions: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: BTreeSet<usize> = positions.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&p| p == 0 || p > desc.rank) {
            return Err(Error::InvalidType(format!(
                "node position {bad} is outside 1..={} for {desc}",
                desc.rank
            )));
        }
        Ok(TypeSubset { members })
    }

    pub fn empty() -> Self {
        TypeSubset {
            members: BTreeSet::new(),
        }
    }

    pub fn all(desc: &WeylDescriptor) -> Self {
        TypeSubset {
            members: desc.nodes().collect(),
        }
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.members.contains(&pos)
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn complement(&self, desc: &WeylDescriptor) -> TypeSubset {
        TypeSubset {
            members: desc.nodes().filter(|p| !self.members.contains(p)).collect(),
        }
    }

    /// Parses a comma separated list of node labels (`"1,3"`, `"4'"`),
    /// or the words `all` / `none`.
    pub fn parse(desc: &WeylDescriptor, text: &str) -> Result<Self> {
        match text.trim() {
            "all" => return Ok(Self::all(desc)),
            "none" | "" => return Ok(Self::empty()),
            _ => {}
        }
        let positions = text
            .split(',')
            .map(|tok| parse_node(desc, tok.trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(desc, positions)
    }

    pub fn render(&self, desc: &WeylDescriptor) -> String {
        let labels: Vec<String> = self.positions().map(|p| node_label(desc, p)).collect();
        format!("{{{}}}", labels.join(","))
    }

    pub fn labels(&self, desc: &WeylDescriptor) -> Vec<String> {
        self.positions().map(|p| node_label(desc, p)).collect()
    }
}

/// Display label of a node position.
pub fn node_label(desc: &WeylDescriptor, pos: usize) -> String {
    let n = desc.rank;
    if desc.family == Family::D && pos == n {
        format!("{n}'")
    } else if desc.family == Family::D && pos == n - 1 {
        n.to_string()
    } else {
        pos.to_string()
    }
}

pub fn parse_node(desc: &WeylDescriptor, label: &str) -> Result<usize> {
    let n = desc.rank;
    let bad = || Error::InvalidType(format!("'{label}' is not a node label of {desc}"));
    let (digits, primed) = match label.strip_suffix('\'') {
        Some(d) => (d, true),
        None => (label, false),
    };
    let k: usize = digits.trim().parse().map_err(|_| bad())?;
    match desc.family {
        Family::A | Family::B => {
            if primed || k == 0 || k > n {
                return Err(bad());
            }
            Ok(k)
        }
        Family::D => {
            if primed {
                if k == n {
                    Ok(n)
                } else {
                    Err(bad())
                }
            } else if k == n {
                Ok(n - 1)
            } else if k >= 1 && k + 1 < n {
                Ok(k)
            } else {
                Err(bad())
            }
        }
    }
}

/// Image of a node set under conjugation by the longest element.
pub fn w0_action_on_types(desc: &WeylDescriptor, set: &TypeSubset) -> TypeSubset {
    let n = desc.rank;
    let image = |p: usize| match desc.family {
        Family::A => n + 1 - p,
        Family::B => p,
        Family::D => {
            if n % 2 == 1 && p + 1 >= n {
                // swap the two end nodes
                2 * n - 1 - p
            } else {
                p
            }
        }
    };
    TypeSubset {
        members: set.positions().map(image).collect(),
    }
}

pub fn is_self_opposite(desc: &WeylDescriptor, set: &TypeSubset) -> bool {
    &w0_action_on_types(desc, set) == set
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorClass {
    pub representative: SignedPermutation,
    /// Node positions whose generators lie in this class.
    pub nodes: Vec<usize>,
    pub class_size: u64,
    /// Whether this is the class of `t` (structure constant q^e).
    pub is_t_class: bool,
}

/// Conjugacy classes of W meeting the generating set.
pub fn generator_class_data(desc: &WeylDescriptor) -> Vec<GeneratorClass> {
    let gens = generators(desc);
    let n = desc.rank as u64;
    match desc.family {
        Family::A => vec![GeneratorClass {
            representative: gens[0].clone(),
            nodes: desc.nodes().collect(),
            class_size: n * (n + 1) / 2,
            is_t_class: false,
        }],
        Family::B => vec![
            GeneratorClass {
                representative: gens[0].clone(),
                nodes: (1..desc.rank).collect(),
                class_size: n * (n - 1),
                is_t_class: false,
            },
            GeneratorClass {
                representative: gens[desc.rank - 1].clone(),
                nodes: vec![desc.rank],
                class_size: n,
                is_t_class: true,
            },
        ],
        Family::D if desc.rank == 2 => vec![
            GeneratorClass {
                representative: gens[0].clone(),
                nodes: vec![1],
                class_size: 1,
                is_t_class: false,
            },
            GeneratorClass {
                representative: gens[1].clone(),
                nodes: vec![2],
                class_size: 1,
                is_t_class: false,
            },
        ],
        Family::D => vec![GeneratorClass {
            representative: gens[0].clone(),
            nodes: desc.nodes().collect(),
            class_size: n * (n - 1),
            is_t_class: false,
        }],
    }
}

/// Irreducible factor of a parabolic subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    A(usize),
    B(usize),
    D(usize),
}

impl ComponentKind {
    pub fn order(&self) -> u128 {
        match *self {
            ComponentKind::A(k) => factorial(k as u128 + 1),
            ComponentKind::B(k) => (1u128 << k) * factorial(k as u128),
            ComponentKind::D(k) => (1u128 << (k - 1)) * factorial(k as u128),
        }
    }

    pub fn longest_profile(&self) -> LengthProfile {
        let (s, t) = match *self {
            ComponentKind::A(k) => (k * (k + 1) / 2, 0),
            ComponentKind::B(k) => (k * (k - 1), k),
            ComponentKind::D(k) => (k * (k - 1), 0),
        };
        LengthProfile {
            s_letters: s as u64,
            t_letters: t as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    pub nodes: Vec<usize>,
}

/// Connected components of the Dynkin subdiagram induced on `set`.
pub fn components(desc: &WeylDescriptor, set: &TypeSubset) -> Vec<Component> {
    let nodes: Vec<usize> = set.positions().collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &start in &nodes {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &nodes {
                if desc.adjacent(x, y) && seen.insert(y) {
                    comp.push(y);
                    queue.push_back(y);
                }
            }
        }
        comp.sort_unstable();
        let k = comp.len();
        let n = desc.rank;
        let kind = match desc.family {
            Family::B if comp.contains(&n) => ComponentKind::B(k),
            Family::D if k >= 3 && comp.contains(&n) && comp.contains(&(n - 1)) => {
                ComponentKind::D(k)
            }
            _ => ComponentKind::A(k),
        };
        out.push(Component { kind, nodes: comp });
    }
    out
}

pub fn parabolic_order(desc: &WeylDescriptor, set: &TypeSubset) -> u128 {
    components(desc, set)
        .iter()
        .map(|c| c.kind.order())
        .product()
}

pub fn parabolic_longest_profile(desc: &WeylDescriptor, set: &TypeSubset) -> LengthProfile {
    components(desc, set)
        .iter()
        .map(|c| c.kind.longest_profile())
        .fold(LengthProfile::default(), |a, b| a + b)
}

/// Sum over irreducible factors of the longest-word length, `t` weighing `e`.
pub fn parabolic_longest_weighted_length(
    desc: &WeylDescriptor,
    set: &TypeSubset,
    e: Rational64,
) -> Rational64 {
    parabolic_longest_profile(desc, set).weighted(e)
}

/// All elements of the parabolic subgroup generated by the nodes in `set`,
/// each exactly once, in breadth-first order from the identity.
pub fn parabolic_elements(
    desc: &WeylDescriptor,
    set: &TypeSubset,
    budget: &Budget,
) -> Result<Vec<SignedPermutation>> {
    let order = parabolic_order(desc, set);
    Budget::check(
        &format!("parabolic subgroup {} of {desc}", set.render(desc)),
        order.min(u64::MAX as u128) as u64,
        budget.group_elements,
    )?;
    let gens = generators(desc);
    let chosen: Vec<&SignedPermutation> = set.positions().map(|p| &gens[p - 1]).collect();
    let id = SignedPermutation::identity(desc.degree());
    let mut seen: HashSet<SignedPermutation> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut head = 0;
    while head < out.len() {
        let w = out[head].clone();
        head += 1;
        for g in &chosen {
            let x = g.compose(&w);
            if seen.insert(x.clone()) {
                out.push(x);
            }
        }
    }
    Ok(out)
}

pub fn group_elements(desc: &WeylDescriptor, budget: &Budget) -> Result<Vec<SignedPermutation>> {
    parabolic_elements(desc, &TypeSubset::all(desc), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn desc(f: Family, n: usize) -> WeylDescriptor {
        WeylDescriptor::new(f, n).unwrap()
    }

    /// Word length by breadth-first search over the Cayley graph.
    fn bfs_lengths(d: &WeylDescriptor) -> HashMap<SignedPermutation, u64> {
        let gens = generators(d);
        let id = SignedPermutation::identity(d.degree());
        let mut dist = HashMap::from([(id.clone(), 0u64)]);
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            let dw = dist[&w];
            for g in &gens {
                let x = g.compose(&w);
                if !dist.contains_key(&x) {
                    dist.insert(x.clone(), dw + 1);
                    queue.push_back(x);
                }
            }
        }
        dist
    }

    #[test]
    fn generators_match_dynkin_numbering() {
        let a2 = generators(&desc(Family::A, 2));
        assert_eq!(a2[0].images(), &[2, 1, 3]);
        assert_eq!(a2[1].images(), &[1, 3, 2]);
        let b2 = generators(&desc(Family::B, 2));
        assert_eq!(b2[0].images(), &[2, 1]);
        assert_eq!(b2[1].images(), &[1, -2]);
        let d4 = desc(Family::D, 4);
        let g = generators(&d4);
        let b4 = generators(&desc(Family::B, 4));
        assert_eq!(g[3], b4[3].compose(&b4[2]).compose(&b4[3]));
        assert_eq!(g[3].images(), &[1, 2, -4, -3]);
    }

    #[test]
    fn invalid_ranks_rejected() {
        assert!(WeylDescriptor::new(Family::A, 0).is_err());
        assert!(WeylDescriptor::new(Family::B, 1).is_err());
        assert!(WeylDescriptor::new(Family::D, 1).is_err());
        assert!(WeylDescriptor::new(Family::D, 2).is_ok());
    }

    #[test]
    fn closed_form_length_equals_bfs() {
        for (f, max) in [(Family::A, 4), (Family::B, 4), (Family::D, 4)] {
            let lo = if f == Family::A { 1 } else { 2 };
            for n in lo..=max {
                let d = desc(f, n);
                let dist = bfs_lengths(&d);
                assert_eq!(dist.len() as u128, d.order(), "{d}");
                for (w, l) in &dist {
                    assert_eq!(length(&d, w).unwrap(), *l, "{d} {w}");
                }
            }
        }
    }

    #[test]
    fn longest_word_lengths() {
        for n in 1..=5 {
            let d = desc(Family::A, n);
            let w0 = longest_word(&d);
            assert_eq!(length(&d, &w0).unwrap(), (n * (n + 1) / 2) as u64);
            if n <= 4 {
                let max = bfs_lengths(&d).into_iter().max_by_key(|(_, l)| *l).unwrap();
                assert_eq!(max.0, w0);
            }
        }
        for n in 2..=5 {
            let b = desc(Family::B, n);
            assert_eq!(length(&b, &longest_word(&b)).unwrap(), (n * n) as u64);
            let d = desc(Family::D, n);
            assert_eq!(length(&d, &longest_word(&d)).unwrap(), (n * (n - 1)) as u64);
            if n <= 4 {
                let max = bfs_lengths(&d).into_iter().max_by_key(|(_, l)| *l).unwrap();
                assert_eq!(max.0, longest_word(&d));
            }
        }
        let a2 = desc(Family::A, 2);
        assert_eq!(longest_word(&a2).images(), &[3, 2, 1]);
        assert_eq!(longest_word(&desc(Family::B, 3)).images(), &[-1, -2, -3]);
        assert_eq!(
            longest_word(&desc(Family::D, 4)).images(),
            &[-1, -2, -3, -4]
        );
        assert_eq!(
            longest_word(&desc(Family::D, 5)).images(),
            &[-1, -2, -3, -4, 5]
        );
    }

    #[test]
    fn weighted_lengths() {
        let half = Rational64::new(1, 2);
        for n in 2..=5 {
            let d = desc(Family::B, n);
            let w0 = longest_word(&d);
            for e in [
                Rational64::from_integer(0),
                half,
                Rational64::from_integer(2),
            ] {
                let expect = Rational64::from_integer((n * (n - 1)) as i64) + e * n as i64;
                assert_eq!(weighted_length(&d, &w0, e).unwrap(), expect);
            }
        }
        let b3 = desc(Family::B, 3);
        let t = generators(&b3)[2].clone();
        assert_eq!(
            weighted_length(&b3, &t, Rational64::from_integer(2)).unwrap(),
            Rational64::from_integer(2)
        );
        let id = SignedPermutation::identity(3);
        assert_eq!(
            weighted_length(&b3, &id, half).unwrap(),
            Rational64::from_integer(0)
        );
    }

    #[test]
    fn t_letters_constant_on_reduced_words() {
        // Count t-letters along BFS geodesics and compare with the negative count.
        let d = desc(Family::B, 3);
        let gens = generators(&d);
        let id = SignedPermutation::identity(3);
        let mut tcount: HashMap<SignedPermutation, u64> = HashMap::from([(id.clone(), 0)]);
        let mut layer = vec![id];
        for _ in 0..9 {
            let mut next = Vec::new();
            for w in &layer {
                let lw = length(&d, w).unwrap();
                for (k, g) in gens.iter().enumerate() {
                    let x = g.compose(w);
                    if length(&d, &x).unwrap() == lw + 1 {
                        let c = tcount[w] + u64::from(k == 2);
                        if let Some(&old) = tcount.get(&x) {
                            assert_eq!(old, c, "{x}");
                        } else {
                            tcount.insert(x.clone(), c);
                            next.push(x);
                        }
                    }
                }
            }
            layer = next;
        }
        for (w, c) in tcount {
            assert_eq!(length_profile(&d, &w).unwrap().t_letters, c);
        }
    }

    #[test]
    fn length_changes_by_one_under_generators() {
        for d in [desc(Family::A, 4), desc(Family::B, 4), desc(Family::D, 4)] {
            let gens = generators(&d);
            for w in group_elements(&d, &Budget::default()).unwrap() {
                let lw = length(&d, &w).unwrap() as i64;
                for g in &gens {
                    let ls = length(&d, &g.compose(&w)).unwrap() as i64;
                    assert_eq!((ls - lw).abs(), 1);
                }
            }
        }
    }

    #[test]
    fn membership_errors() {
        let d = desc(Family::D, 3);
        let w = SignedPermutation::from_images(vec![-1, 2, 3]).unwrap();
        assert!(matches!(length(&d, &w), Err(Error::NotInGroup(..))));
        let a = desc(Family::A, 2);
        assert!(length(&a, &w).is_err());
    }

    #[test]
    fn w0_action_matches_conjugation() {
        for d in [
            desc(Family::A, 3),
            desc(Family::A, 4),
            desc(Family::B, 3),
            desc(Family::D, 4),
            desc(Family::D, 5),
        ] {
            let gens = generators(&d);
            let w0 = longest_word(&d);
            for p in d.nodes() {
                let img = gens[p - 1].conjugate_by(&w0);
                let q = gens.iter().position(|g| *g == img).unwrap() + 1;
                let single = TypeSubset::new(&d, [p]).unwrap();
                let mapped = w0_action_on_types(&d, &single);
                assert_eq!(
                    mapped.positions().collect::<Vec<_>>(),
                    vec![q],
                    "{d} node {p}"
                );
                assert_eq!(w0_action_on_types(&d, &mapped), single);
            }
        }
        let a3 = desc(Family::A, 3);
        let j = TypeSubset::parse(&a3, "2").unwrap();
        assert_eq!(w0_action_on_types(&a3, &j), j);
        let a4 = desc(Family::A, 4);
        let j = TypeSubset::parse(&a4, "2,3").unwrap();
        assert_eq!(w0_action_on_types(&a4, &j), j);
        let d5 = desc(Family::D, 5);
        let j = TypeSubset::parse(&d5, "5").unwrap();
        assert_eq!(w0_action_on_types(&d5, &j).render(&d5), "{5'}");
    }

    #[test]
    fn w0_central_in_b() {
        let d = desc(Family::B, 4);
        let w0 = longest_word(&d);
        for g in generators(&d) {
            assert_eq!(g.conjugate_by(&w0), g);
        }
    }

    #[test]
    fn generator_class_sizes_by_orbit_enumeration() {
        for d in [
            desc(Family::A, 3),
            desc(Family::B, 3),
            desc(Family::B, 4),
            desc(Family::D, 4),
            desc(Family::D, 2),
        ] {
            let elems = group_elements(&d, &Budget::default()).unwrap();
            let gens = generators(&d);
            let classes = generator_class_data(&d);
            let total_nodes: usize = classes.iter().map(|c| c.nodes.len()).sum();
            assert_eq!(total_nodes, d.rank);
            for class in classes {
                let orbit: HashSet<_> = elems
                    .iter()
                    .map(|g| class.representative.conjugate_by(g))
                    .collect();
                assert_eq!(orbit.len() as u64, class.class_size, "{d}");
                for p in &class.nodes {
                    assert!(orbit.contains(&gens[p - 1]));
                }
            }
        }
    }

    #[test]
    fn parabolic_subgroups() {
        let b3 = desc(Family::B, 3);
        let budget = Budget::default();
        let e = parabolic_elements(&b3, &TypeSubset::empty(), &budget).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e[0].is_identity());
        let j = TypeSubset::parse(&b3, "1,2").unwrap();
        assert_eq!(parabolic_elements(&b3, &j, &budget).unwrap().len(), 6);
        let b4 = desc(Family::B, 4);
        let j = TypeSubset::parse(&b4, "1,3").unwrap();
        assert_eq!(parabolic_elements(&b4, &j, &budget).unwrap().len(), 4);

        let one = Rational64::from_integer(1);
        assert_eq!(
            parabolic_longest_weighted_length(&b3, &TypeSubset::parse(&b3, "1,2").unwrap(), one),
            Rational64::from_integer(3)
        );
        assert_eq!(
            parabolic_longest_weighted_length(&b3, &TypeSubset::parse(&b3, "2,3").unwrap(), one),
            Rational64::from_integer(4)
        );
        for n in 2..=6usize {
            let d = desc(Family::B, n);
            for k in 1..=n {
                let j = TypeSubset::new(&d, (1..=n).filter(|&p| p != k)).unwrap();
                for e2 in 0..=4i64 {
                    let e = Rational64::new(e2, 2);
                    let kk = (k * (k - 1) / 2) as i64;
                    let rest = (n - k) as i64;
                    let expect = Rational64::from_integer(kk)
                        + Rational64::from_integer(rest) * (Rational64::from_integer(rest - 1) + e);
                    assert_eq!(parabolic_longest_weighted_length(&d, &j, e), expect);
                }
            }
        }
    }

    #[test]
    fn parabolic_orders_and_longest_lengths_by_enumeration() {
        let budget = Budget::default();
        for d in [
            desc(Family::A, 4),
            desc(Family::B, 4),
            desc(Family::D, 4),
            desc(Family::D, 5),
        ] {
            for mask in 0u32..(1 << d.rank) {
                let j =
                    TypeSubset::new(&d, d.nodes().filter(|p| mask >> (p - 1) & 1 == 1)).unwrap();
                let elems = parabolic_elements(&d, &j, &budget).unwrap();
                assert_eq!(
                    elems.len() as u128,
                    parabolic_order(&d, &j),
                    "{d} {}",
                    j.render(&d)
                );
                let max = elems
                    .iter()
                    .map(|w| length_profile(&d, w).unwrap())
                    .max_by_key(|p| p.total())
                    .unwrap();
                assert_eq!(
                    max,
                    parabolic_longest_profile(&d, &j),
                    "{d} {}",
                    j.render(&d)
                );
            }
        }
    }

    #[test]
    fn budget_exceeded_is_reported() {
        let d = desc(Family::B, 6);
        let budget = Budget {
            group_elements: 100,
            ..Budget::default()
        };
        let err = group_elements(&d, &budget).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        assert!(err.to_string().contains("46080"));
    }

    #[test]
    fn labels_round_trip() {
        let d = desc(Family::D, 4);
        let j = TypeSubset::parse(&d, "1,4,4'").unwrap();
        assert_eq!(j.positions().collect::<Vec<_>>(), vec![1, 3, 4]);
        assert_eq!(j.render(&d), "{1,4,4'}");
        assert!(TypeSubset::parse(&d, "3").is_err());
        let w: SignedPermutation = "[2, -1, 3]".parse().unwrap();
        assert_eq!(w.to_string(), "[2, -1, 3]");
    }
}
