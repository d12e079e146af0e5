//! Irreducible characters of the Weyl groups A_n, B_n and D_n.

mod induce;
mod label;
mod mn;
mod partition;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

pub use induce::{induce_trivial, induce_trivial_oracle, Decomposition};
pub use label::{all_labels, dimension, CharLabel, Half};
pub use mn::{
    class_key, hyperoctahedral_value, mn_character_value, symmetric_value, value_on_class,
    ClassKey, SPLIT_RANK_LIMIT,
};
pub use partition::{kostka, Partition};

use crate::error::{Error, Result};
use crate::weyl::{longest_word, Family, SignedPermutation, WeylDescriptor};

/// Sign of an eigenvalue: fixed, or both signs occur.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
    Both,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
            Sign::Both => "±",
        }
    }
}

/// χ(s)/χ(1) for a transposition s of Sym(n+1).
pub fn central_ratio_a(mu: &Partition, n: usize) -> Result<Rational64> {
    if mu.weight() as usize != n + 1 {
        return Err(Error::InvalidLabel(format!(
            "{mu} is not a partition of {}",
            n + 1
        )));
    }
    let n = n as i64;
    let content = mu.a_star_invariant() as i64 - mu.a_invariant() as i64;
    Ok(Rational64::new(content * 2, n * (n + 1)))
}

/// Central character values (ω_s, ω_t) of (μ,ν) on the reflection classes of
/// B_n: |C| χ(r)/χ(1).
pub fn central_values_b(mu: &Partition, nu: &Partition) -> (i64, i64) {
    let content = |p: &Partition| p.a_star_invariant() as i64 - p.a_invariant() as i64;
    (
        2 * (content(mu) + content(nu)),
        mu.weight() as i64 - nu.weight() as i64,
    )
}

/// Whether the representation of `label` sends w0 to +1, -1 or neither.
pub fn sign_at_w0(desc: &WeylDescriptor, label: &CharLabel) -> Result<Sign> {
    label.check(desc)?;
    let by_value = |value: i64, dim: u128| {
        if value as i128 == dim as i128 {
            Sign::Plus
        } else if value as i128 == -(dim as i128) {
            Sign::Minus
        } else {
            Sign::Both
        }
    };
    match desc.family {
        Family::A => {
            let w0 = longest_word(desc);
            Ok(by_value(mn_character_value(label, &w0)?, dimension(label)))
        }
        Family::B => Ok(Sign::from_parity(label.nu().weight() % 2 == 1)),
        Family::D if desc.rank.is_multiple_of(2) => {
            Ok(Sign::from_parity(label.nu().weight() % 2 == 1))
        }
        Family::D => {
            // w0 is not central; evaluate the B-parent at w0 of D
            let w0: SignedPermutation = longest_word(desc);
            let parent = label.b_parent();
            Ok(by_value(
                mn_character_value(&parent, &w0)?,
                dimension(&parent),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::generators;

    #[test]
    fn central_values_match_character_ratios() {
        for n in 2..=6 {
            let b = WeylDescriptor::new(Family::B, n).unwrap();
            let gens = generators(&b);
            let (s, t) = (&gens[0], &gens[n - 1]);
            let cs = (n * (n - 1)) as i64;
            let ct = n as i64;
            for l in all_labels(&b) {
                let d = dimension(&l) as i64;
                let (ws, wt) = central_values_b(l.mu(), l.nu());
                assert_eq!(ws * d, cs * mn_character_value(&l, s).unwrap(), "{l}");
                assert_eq!(wt * d, ct * mn_character_value(&l, t).unwrap(), "{l}");
            }
        }
        for n in 1..=6 {
            let a = WeylDescriptor::new(Family::A, n).unwrap();
            let s = &generators(&a)[0];
            for l in all_labels(&a) {
                let d = dimension(&l) as i64;
                let ratio = central_ratio_a(l.mu(), n).unwrap();
                assert_eq!(
                    ratio * d,
                    Rational64::from(mn_character_value(&l, s).unwrap()),
                    "{l}"
                );
            }
        }
    }

    #[test]
    fn w0_signs() {
        let a3 = WeylDescriptor::new(Family::A, 3).unwrap();
        let sign =
            |d: &WeylDescriptor, s: &str| sign_at_w0(d, &CharLabel::parse(d, s).unwrap()).unwrap();
        assert_eq!(sign(&a3, "[4]"), Sign::Plus);
        assert_eq!(sign(&a3, "[1,1,1,1]"), Sign::Plus);
        assert_eq!(sign(&a3, "[3,1]"), Sign::Both);
        assert_eq!(sign(&a3, "[2,2]"), Sign::Plus);
        assert_eq!(sign(&a3, "[2,1,1]"), Sign::Both);
        let a2 = WeylDescriptor::new(Family::A, 2).unwrap();
        assert_eq!(sign(&a2, "[2,1]"), Sign::Both);
        let d3 = WeylDescriptor::new(Family::D, 3).unwrap();
        assert_eq!(sign(&d3, "([3],[])"), Sign::Plus);
        assert_eq!(sign(&d3, "([2],[1])"), Sign::Both);
    }
}
