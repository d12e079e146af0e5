//! Character values by the Murnaghan-Nakayama rule.

use super::label::{CharLabel, Half};
use super::partition::Partition;
use crate::error::{Error, Result};
use crate::weyl::{Family, SignedPermutation};

/// Largest rank for which the split type D characters are evaluated.
pub const SPLIT_RANK_LIMIT: usize = 6;

/// Conjugacy class data sufficient to evaluate every character.
///
/// `cycles` is the signed cycle type; `epsilon` separates the two type D
/// classes sharing a signed cycle type (all cycles positive and even), and
/// is zero otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    pub cycles: Vec<(usize, bool)>,
    pub epsilon: i8,
}

pub fn class_key(family: Family, w: &SignedPermutation) -> ClassKey {
    let cycles = w.signed_cycle_type();
    let epsilon = if family == Family::D && is_split_class(&cycles) {
        split_epsilon(w)
    } else {
        0
    };
    ClassKey { cycles, epsilon }
}

fn is_split_class(cycles: &[(usize, bool)]) -> bool {
    cycles.iter().all(|&(len, neg)| !neg && len % 2 == 0)
}

/// +1 if w is conjugate to an unsigned permutation inside D, else -1.
fn split_epsilon(w: &SignedPermutation) -> i8 {
    let n = w.degree();
    let mut sign = vec![0i8; n + 1];
    for start in 1..=n {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut cur = start;
        loop {
            let img = w.apply(cur as i32);
            let b = img.unsigned_abs() as usize;
            if b == start {
                break;
            }
            sign[b] = sign[cur] * img.signum() as i8;
            cur = b;
        }
    }
    let negatives = sign[1..].iter().filter(|&&s| s < 0).count();
    if negatives % 2 == 0 {
        1
    } else {
        -1
    }
}

/// χ^μ at cycle type `cycles` for the symmetric group.
pub fn symmetric_value(mu: &Partition, cycles: &[usize]) -> i64 {
    match cycles.split_first() {
        None => i64::from(mu.is_empty()),
        Some((&r, rest)) => mu
            .remove_rim_hooks(r as u32)
            .into_iter()
            .map(|(smaller, sign)| sign * symmetric_value(&smaller, rest))
            .sum(),
    }
}

/// χ^(μ,ν) for the hyperoctahedral group at a signed cycle type.
pub fn hyperoctahedral_value(mu: &Partition, nu: &Partition, cycles: &[(usize, bool)]) -> i64 {
    match cycles.split_first() {
        None => i64::from(mu.is_empty() && nu.is_empty()),
        Some((&(r, negative), rest)) => {
            let mut total = 0;
            for (smaller, sign) in mu.remove_rim_hooks(r as u32) {
                total += sign * hyperoctahedral_value(&smaller, nu, rest);
            }
            let nu_sign = if negative { -1 } else { 1 };
            for (smaller, sign) in nu.remove_rim_hooks(r as u32) {
                total += nu_sign * sign * hyperoctahedral_value(mu, &smaller, rest);
            }
            total
        }
    }
}

pub fn value_on_class(label: &CharLabel, key: &ClassKey) -> Result<i64> {
    match label.family() {
        Family::A => {
            let cycles: Vec<usize> = key.cycles.iter().map(|&(len, _)| len).collect();
            Ok(symmetric_value(label.mu(), &cycles))
        }
        Family::B => Ok(hyperoctahedral_value(label.mu(), label.nu(), &key.cycles)),
        Family::D => {
            let restricted = hyperoctahedral_value(label.mu(), label.nu(), &key.cycles);
            let Some(half) = label.half() else {
                return Ok(restricted);
            };
            let n = label.weight() as usize;
            if n > SPLIT_RANK_LIMIT {
                return Err(Error::Unsupported(format!(
                    "split character {label} of D{n}: evaluated only up to rank {SPLIT_RANK_LIMIT}"
                )));
            }
            let delta = if key.epsilon != 0 {
                let halves: Vec<usize> = key.cycles.iter().map(|&(len, _)| len / 2).collect();
                i64::from(key.epsilon)
                    * (1i64 << halves.len())
                    * symmetric_value(label.mu(), &halves)
            } else {
                0
            };
            let signed = match half {
                Half::Plus => restricted + delta,
                Half::Minus => restricted - delta,
            };
            debug_assert!(signed % 2 == 0);
            Ok(signed / 2)
        }
    }
}

/// χ(w) for the character `label`; `w` must have the matching degree.
pub fn mn_character_value(label: &CharLabel, w: &SignedPermutation) -> Result<i64> {
    let degree = label.weight() as usize;
    if w.degree() != degree {
        return Err(Error::NotInGroup(
            w.to_string(),
            format!("group of degree {degree} for character {label}"),
        ));
    }
    value_on_class(label, &class_key(label.family(), w))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::budget::Budget;
    use crate::chars::label::{all_labels, dimension};
    use crate::weyl::{group_elements, WeylDescriptor};

    fn class_table(desc: &WeylDescriptor) -> BTreeMap<ClassKey, i64> {
        let mut classes = BTreeMap::new();
        for w in group_elements(desc, &Budget::default()).unwrap() {
            *classes.entry(class_key(desc.family, &w)).or_insert(0) += 1;
        }
        classes
    }

    fn inner(desc: &WeylDescriptor, a: &CharLabel, b: &CharLabel) -> i128 {
        let classes = class_table(desc);
        let total: i128 = classes
            .iter()
            .map(|(k, &c)| {
                c as i128
                    * value_on_class(a, k).unwrap() as i128
                    * value_on_class(b, k).unwrap() as i128
            })
            .sum();
        assert_eq!(total % desc.order() as i128, 0);
        total / desc.order() as i128
    }

    #[test]
    fn symmetric_values() {
        let p = |v: &[u32]| Partition::new(v.to_vec()).unwrap();
        assert_eq!(symmetric_value(&p(&[2, 1]), &[1, 1, 1]), 2);
        assert_eq!(symmetric_value(&p(&[2, 1]), &[2, 1]), 0);
        assert_eq!(symmetric_value(&p(&[2, 1]), &[3]), -1);
        assert_eq!(symmetric_value(&p(&[1, 1, 1]), &[2, 1]), -1);
        assert_eq!(symmetric_value(&p(&[2, 2]), &[2, 2]), 2);
    }

    #[test]
    fn value_at_identity_is_dimension() {
        for (f, n) in [
            (Family::A, 5),
            (Family::B, 5),
            (Family::D, 4),
            (Family::D, 6),
        ] {
            let desc = WeylDescriptor::new(f, n).unwrap();
            let id = SignedPermutation::identity(desc.degree());
            for l in all_labels(&desc) {
                assert_eq!(
                    mn_character_value(&l, &id).unwrap() as u128,
                    dimension(&l),
                    "{l}"
                );
            }
        }
    }

    #[test]
    fn hyperoctahedral_sign_conventions() {
        let b = WeylDescriptor::new(Family::B, 4).unwrap();
        let t = crate::weyl::generators(&b)[3].clone();
        let s = crate::weyl::generators(&b)[0].clone();
        let l = CharLabel::parse(&b, "([],[4])").unwrap();
        assert_eq!(mn_character_value(&l, &t).unwrap(), -1);
        assert_eq!(mn_character_value(&l, &s).unwrap(), 1);
        let l = CharLabel::parse(&b, "([3],[1])").unwrap();
        assert_eq!(mn_character_value(&l, &t).unwrap(), 2);
    }

    #[test]
    fn orthonormal_in_small_ranks() {
        for (f, n) in [
            (Family::A, 3),
            (Family::B, 3),
            (Family::D, 4),
            (Family::D, 5),
        ] {
            let desc = WeylDescriptor::new(f, n).unwrap();
            let labels = all_labels(&desc);
            for (i, a) in labels.iter().enumerate() {
                for (j, b) in labels.iter().enumerate() {
                    assert_eq!(inner(&desc, a, b), i128::from(i == j), "{desc} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn split_characters_of_d6() {
        let desc = WeylDescriptor::new(Family::D, 6).unwrap();
        let split: Vec<CharLabel> = all_labels(&desc)
            .into_iter()
            .filter(|l| l.half().is_some())
            .collect();
        assert_eq!(split.len(), 6);
        for a in &split {
            for b in &split {
                assert_eq!(inner(&desc, a, b), i128::from(a == b), "{a} {b}");
            }
        }
    }

    #[test]
    fn split_beyond_limit_is_unsupported() {
        let desc = WeylDescriptor::new(Family::D, 8).unwrap();
        let l = CharLabel::parse(&desc, "([2,2],+)").unwrap();
        let id = SignedPermutation::identity(8);
        assert!(matches!(
            mn_character_value(&l, &id),
            Err(Error::Unsupported(_))
        ));
    }
}
