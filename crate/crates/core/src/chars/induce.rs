//! Decomposition of the permutation character on W/W_J.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::label::{all_labels, dimension, CharLabel, Half};
use super::mn::{class_key, value_on_class};
use super::partition::{kostka, Partition};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::weyl::{parabolic_elements, Family, TypeSubset, WeylDescriptor};

/// Multiplicities of irreducible characters, sorted by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub entries: Vec<(CharLabel, u64)>,
}

impl Decomposition {
    fn from_map(map: BTreeMap<CharLabel, u64>) -> Self {
        Decomposition {
            entries: map.into_iter().filter(|(_, m)| *m > 0).collect(),
        }
    }

    pub fn multiplicity(&self, label: &CharLabel) -> u64 {
        self.entries
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }

    /// Σ multiplicity × degree, which is the index |W : W_J|.
    pub fn total_dimension(&self) -> u128 {
        self.entries
            .iter()
            .map(|(l, m)| *m as u128 * dimension(l))
            .sum()
    }

    pub fn labels(&self) -> impl Iterator<Item = &CharLabel> {
        self.entries.iter().map(|(l, _)| l)
    }
}

/// Sizes of the runs of {1..len} joined by consecutive pairs (i, i+1)
/// with i in `joined`.
fn blocks(len: usize, joined: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut out = Vec::new();
    let mut size = 1;
    for i in 1..len {
        if joined(i) {
            size += 1;
        } else {
            out.push(size);
            size = 1;
        }
    }
    out.push(size);
    out
}

fn pieri_a(sizes: &[usize]) -> BTreeMap<Partition, u64> {
    let mut layer = BTreeMap::from([(Partition::empty(), 1u64)]);
    for &c in sizes {
        let mut next = BTreeMap::new();
        for (p, m) in &layer {
            for q in p.add_horizontal_strip(c as u32) {
                *next.entry(q).or_insert(0) += m;
            }
        }
        layer = next;
    }
    layer
}

type BiMap = BTreeMap<(Partition, Partition), u64>;

/// Each symmetric factor of size c contributes a horizontal d-strip to μ
/// and a (c-d)-strip to ν.
fn pieri_b(seed: BiMap, sizes: &[usize]) -> BiMap {
    let mut layer = seed;
    for &c in sizes {
        let mut next = BTreeMap::new();
        for ((mu, nu), m) in &layer {
            for d in 0..=c as u32 {
                for mu2 in mu.add_horizontal_strip(d) {
                    for nu2 in nu.add_horizontal_strip(c as u32 - d) {
                        *next.entry((mu2.clone(), nu2)).or_insert(0) += m;
                    }
                }
            }
        }
        layer = next;
    }
    layer
}

/// Ind_{W_J}^{W} 1 where J is the set of nodes in `set`, by Pieri rules.
pub fn induce_trivial(desc: &WeylDescriptor, set: &TypeSubset) -> Result<Decomposition> {
    let n = desc.rank;
    match desc.family {
        Family::A => {
            let sizes = blocks(n + 1, |i| set.contains(i));
            Ok(Decomposition::from_map(
                pieri_a(&sizes)
                    .into_iter()
                    .map(|(p, m)| (CharLabel::type_a(p), m))
                    .collect(),
            ))
        }
        Family::B => {
            let all = blocks(n, |i| set.contains(i));
            let (sizes, seed) = if set.contains(n) {
                let (last, rest) = all.split_last().expect("nonempty");
                (
                    rest.to_vec(),
                    ((Partition::row(*last as u32), Partition::empty()), 1),
                )
            } else {
                (all, ((Partition::empty(), Partition::empty()), 1))
            };
            let map = pieri_b(BTreeMap::from([seed]), &sizes);
            Ok(Decomposition::from_map(
                map.into_iter()
                    .map(|((mu, nu), m)| (CharLabel::type_b(mu, nu), m))
                    .collect(),
            ))
        }
        Family::D => induce_d(desc, set),
    }
}

fn induce_d(desc: &WeylDescriptor, set: &TypeSubset) -> Result<Decomposition> {
    let n = desc.rank;
    let has_s = set.contains(n - 1);
    let has_u = set.contains(n);
    let mut out = BTreeMap::new();
    if has_s && has_u {
        // D_b factor on the last b coordinates; Ind_{D_b}^{B_b} 1 = ([b],∅) + (∅,[b])
        let all = blocks(n, |i| set.contains(i));
        let (last, rest) = all.split_last().expect("nonempty");
        let b = *last as u32;
        let seed = BTreeMap::from([
            ((Partition::row(b), Partition::empty()), 1),
            ((Partition::empty(), Partition::row(b)), 1),
        ]);
        let map = pieri_b(seed, rest);
        for ((mu, nu), m) in &map {
            push_stable(&mut out, mu, nu, *m, &map)?;
        }
    } else {
        // a Young subgroup of Sym(n), conjugated by t when only u is present
        let sizes = if has_u {
            blocks(n, |i| if i == n - 1 { true } else { set.contains(i) })
        } else {
            blocks(n, |i| set.contains(i))
        };
        let map = pieri_b(
            BTreeMap::from([((Partition::empty(), Partition::empty()), 1)]),
            &sizes,
        );
        let halves: Option<Vec<u32>> = sizes
            .iter()
            .map(|&c| (c % 2 == 0).then_some(c as u32 / 2))
            .collect();
        for ((mu, nu), m) in &map {
            if mu > nu {
                out.insert(CharLabel::type_d(mu.clone(), nu.clone(), None)?, *m);
            } else if mu == nu {
                let k = halves.as_ref().map_or(0, |h| kostka(mu, h));
                if !(m + k).is_multiple_of(2) || k > *m {
                    return Err(Error::Inconsistent(format!(
                        "split multiplicity for ({mu},{mu}) in {desc}: {m} and {k}"
                    )));
                }
                let (plus, minus) = ((m + k) / 2, (m - k) / 2);
                let (plus, minus) = if has_u { (minus, plus) } else { (plus, minus) };
                out.insert(
                    CharLabel::type_d(mu.clone(), mu.clone(), Some(Half::Plus))?,
                    plus,
                );
                out.insert(
                    CharLabel::type_d(mu.clone(), mu.clone(), Some(Half::Minus))?,
                    minus,
                );
            }
        }
    }
    Ok(Decomposition::from_map(out))
}

/// Restriction to D of a t-stable induced character.
fn push_stable(
    out: &mut BTreeMap<CharLabel, u64>,
    mu: &Partition,
    nu: &Partition,
    m: u64,
    map: &BiMap,
) -> Result<()> {
    if mu > nu {
        let swapped = map.get(&(nu.clone(), mu.clone())).copied().unwrap_or(0);
        if swapped != m {
            return Err(Error::Inconsistent(format!(
                "({mu},{nu}) and ({nu},{mu}) differ in a t-stable induction"
            )));
        }
        out.insert(CharLabel::type_d(mu.clone(), nu.clone(), None)?, m);
    } else if mu == nu {
        if !m.is_multiple_of(2) {
            return Err(Error::Inconsistent(format!(
                "odd multiplicity {m} for ({mu},{mu})"
            )));
        }
        for h in [Half::Plus, Half::Minus] {
            out.insert(CharLabel::type_d(mu.clone(), mu.clone(), Some(h))?, m / 2);
        }
    }
    Ok(())
}

/// The same decomposition by averaging characters over W_J.
pub fn induce_trivial_oracle(
    desc: &WeylDescriptor,
    set: &TypeSubset,
    budget: &Budget,
) -> Result<Decomposition> {
    let elements = parabolic_elements(desc, set, budget)?;
    let mut classes: HashMap<_, u64> = HashMap::new();
    for w in &elements {
        *classes.entry(class_key(desc.family, w)).or_insert(0) += 1;
    }
    let order = elements.len() as i128;
    let mut out = BTreeMap::new();
    for label in all_labels(desc) {
        let mut total: i128 = 0;
        for (key, &count) in &classes {
            total += count as i128 * value_on_class(&label, key)? as i128;
        }
        if total % order != 0 || total < 0 {
            return Err(Error::Inconsistent(format!(
                "non-integral multiplicity {total}/{order} for {label}"
            )));
        }
        out.insert(label, (total / order) as u64);
    }
    Ok(Decomposition::from_map(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::parabolic_order;

    fn all_subsets(desc: &WeylDescriptor) -> Vec<TypeSubset> {
        let n = desc.rank;
        (0u32..1 << n)
            .map(|mask| {
                TypeSubset::new(desc, (1..=n).filter(|i| mask >> (i - 1) & 1 == 1)).unwrap()
            })
            .collect()
    }

    #[test]
    fn pieri_matches_oracle_everywhere_small() {
        for (f, n) in [
            (Family::A, 2),
            (Family::A, 3),
            (Family::A, 4),
            (Family::B, 2),
            (Family::B, 3),
            (Family::B, 4),
            (Family::D, 2),
            (Family::D, 3),
            (Family::D, 4),
            (Family::D, 5),
            (Family::D, 6),
        ] {
            let desc = WeylDescriptor::new(f, n).unwrap();
            for set in all_subsets(&desc) {
                let fast = induce_trivial(&desc, &set).unwrap();
                let slow = induce_trivial_oracle(&desc, &set, &Budget::default()).unwrap();
                assert_eq!(fast, slow, "{desc} {}", set.render(&desc));
                assert_eq!(
                    fast.total_dimension(),
                    desc.order() / parabolic_order(&desc, &set),
                    "{desc} {}",
                    set.render(&desc)
                );
            }
        }
    }

    #[test]
    fn trivial_appears_once() {
        let desc = WeylDescriptor::new(Family::B, 6).unwrap();
        for set in all_subsets(&desc) {
            let d = induce_trivial(&desc, &set).unwrap();
            let triv: Vec<_> = d.entries.iter().filter(|(l, _)| l.is_trivial()).collect();
            assert_eq!(triv.len(), 1);
            assert_eq!(triv[0].1, 1);
        }
    }

    #[test]
    fn d4_single_end_node() {
        let desc = WeylDescriptor::new(Family::D, 4).unwrap();
        let set = TypeSubset::new(&desc, [1, 2, 3]).unwrap();
        let d = induce_trivial(&desc, &set).unwrap();
        let rendered: Vec<String> = d.entries.iter().map(|(l, m)| format!("{l}:{m}")).collect();
        assert_eq!(rendered.len(), 3);
        assert!(rendered.contains(&"([4],[]):1".to_string()));
        assert!(rendered.contains(&"([3],[1]):1".to_string()));
    }
}
