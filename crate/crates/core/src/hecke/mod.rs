//! Eigenvalues of the opposition relation in the Iwahori-Hecke algebra,
//! flag counts, and Delsarte-Hoffman bounds.

mod bound;
mod count;

use std::fmt;

use num_bigint::BigUint;
use num_rational::Rational64;
use serde::{Serialize, Serializer};

pub use bound::{
    closed_form_gap, ekr_bound, hoffman_bound, hoffman_bound_values, sharp_constructions,
    BoundReport, BoundValue, ConstructionKind, ConstructionSize,
};
pub use count::{count_b_subspaces, count_flags, gaussian_binomial, q_multinomial};

use crate::chars::{all_labels, central_values_b, induce_trivial, sign_at_w0, CharLabel, Sign};
use crate::error::{Error, Result};
use crate::weyl::{
    is_self_opposite, parabolic_longest_profile, w0_action_on_types, Family, TypeSubset,
    WeylDescriptor,
};

/// The polar parameter e, one of 0, 1/2, 1, 3/2, 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolarParam {
    Zero,
    Half,
    One,
    ThreeHalves,
    Two,
}

impl PolarParam {
    pub const ALL: [PolarParam; 5] = [
        PolarParam::Zero,
        PolarParam::Half,
        PolarParam::One,
        PolarParam::ThreeHalves,
        PolarParam::Two,
    ];

    /// 2e as an integer.
    pub fn twice(self) -> i64 {
        match self {
            PolarParam::Zero => 0,
            PolarParam::Half => 1,
            PolarParam::One => 2,
            PolarParam::ThreeHalves => 3,
            PolarParam::Two => 4,
        }
    }

    pub fn as_rational(self) -> Rational64 {
        Rational64::new(self.twice(), 2)
    }

    pub fn is_half_integral(self) -> bool {
        self.twice() % 2 == 1
    }
}

impl fmt::Display for PolarParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolarParam::Zero => "0",
            PolarParam::Half => "1/2",
            PolarParam::One => "1",
            PolarParam::ThreeHalves => "3/2",
            PolarParam::Two => "2",
        })
    }
}

impl std::str::FromStr for PolarParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(PolarParam::Zero),
            "1/2" => Ok(PolarParam::Half),
            "1" => Ok(PolarParam::One),
            "3/2" => Ok(PolarParam::ThreeHalves),
            "2" => Ok(PolarParam::Two),
            other => Err(Error::Parse(format!(
                "e must be one of 0, 1/2, 1, 3/2, 2 (got '{other}')"
            ))),
        }
    }
}

impl Serialize for PolarParam {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// (p, k) with q = p^k, if q is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Integer square root of q when q is a perfect square.
pub fn exact_sqrt(q: u64) -> Option<u64> {
    let r = (q as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|x| x * x == q)
}

/// q_s = q and q_t = q^e.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureConstants {
    pub q: u64,
    pub e: PolarParam,
}

impl StructureConstants {
    pub fn new(q: u64, e: PolarParam) -> Result<Self> {
        if prime_power(q).is_none() {
            return Err(Error::InvalidDescriptor(format!(
                "q = {q} is not a prime power"
            )));
        }
        Ok(StructureConstants { q, e })
    }

    /// The parameter actually used for `desc`: ignored in type A, forced 0 in type D.
    pub fn effective_e(&self, desc: &WeylDescriptor) -> Result<PolarParam> {
        match desc.family {
            Family::A => Ok(PolarParam::Zero),
            Family::B => Ok(self.e),
            Family::D if self.e == PolarParam::Zero => Ok(PolarParam::Zero),
            Family::D => Err(Error::InvalidDescriptor(format!(
                "type D needs e = 0 (got e = {})",
                self.e
            ))),
        }
    }
}

/// sign · q^(a + b·e), stored with 2a to allow half-integral a.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OppositionEigenvalue {
    pub sign: Sign,
    pub twice_a: i64,
    pub b: i64,
}

impl OppositionEigenvalue {
    pub fn exp_int(&self) -> Rational64 {
        Rational64::new(self.twice_a, 2)
    }

    /// 2(a + b·e)
    pub fn twice_exponent(&self, e: PolarParam) -> i64 {
        self.twice_a + self.b * e.twice()
    }

    pub fn exp_string(&self) -> String {
        let a = if self.twice_a % 2 == 0 {
            (self.twice_a / 2).to_string()
        } else {
            format!("{}/2", self.twice_a)
        };
        format!("{a}+{}*e", self.b)
    }

    /// |λ| when it is an integer.
    pub fn magnitude(&self, q: u64, e: PolarParam) -> Option<BigUint> {
        power_half(q, self.twice_exponent(e))
    }

    /// Human-readable value such as `-8`, `±16` or `±2^(3/2)`.
    pub fn value_string(&self, q: u64, e: PolarParam) -> String {
        let t = self.twice_exponent(e);
        let mag = match self.magnitude(q, e) {
            Some(m) => m.to_string(),
            None => format!("{q}^({t}/2)"),
        };
        match self.sign {
            Sign::Plus => mag,
            Sign::Minus => format!("-{mag}"),
            Sign::Both => format!("±{mag}"),
        }
    }
}

impl Serialize for OppositionEigenvalue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("OppositionEigenvalue", 2)?;
        st.serialize_field("sign", self.sign.symbol())?;
        st.serialize_field("exp", &self.exp_string())?;
        st.end()
    }
}

/// q^(t/2) if it is an integer.
pub fn power_half(q: u64, twice: i64) -> Option<BigUint> {
    if twice < 0 {
        return None;
    }
    if twice % 2 == 0 {
        Some(BigUint::from(q).pow((twice / 2) as u32))
    } else {
        exact_sqrt(q).map(|r| BigUint::from(r).pow(twice as u32))
    }
}

fn check_rank(desc: &WeylDescriptor) -> Result<()> {
    if desc.family == Family::D && desc.rank == 2 {
        return Err(Error::Unsupported(
            "D2 is reducible; its two reflection classes are not handled".into(),
        ));
    }
    Ok(())
}

/// The eigenvalue of opposition on maximal flags for `label`.
pub fn eigenvalue_maximal(
    desc: &WeylDescriptor,
    sc: &StructureConstants,
    label: &CharLabel,
) -> Result<OppositionEigenvalue> {
    check_rank(desc)?;
    sc.effective_e(desc)?;
    label.check(desc)?;
    let n = desc.rank as i64;
    let sign = sign_at_w0(desc, label)?;
    let (twice_a, b) = match desc.family {
        Family::A => {
            // e_s = |C| + ω(ŝ) with ω = a* - a
            let mu = label.mu();
            let content = mu.a_star_invariant() as i64 - mu.a_invariant() as i64;
            (n * (n + 1) / 2 + content, 0)
        }
        Family::B | Family::D => {
            let (omega_s, omega_t) = central_values_b(label.mu(), label.nu());
            let e_s = n * (n - 1) + omega_s;
            let e_t = n + omega_t;
            if desc.family == Family::B {
                (e_s, e_t / 2)
            } else {
                (e_s, 0)
            }
        }
    };
    Ok(OppositionEigenvalue { sign, twice_a, b })
}

/// One label of ind(1_{W_J}) with its eigenvalue on flags of cotype J.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelledEigenvalue {
    pub label: CharLabel,
    pub multiplicity: u64,
    pub eigenvalue: OppositionEigenvalue,
}

pub fn require_self_opposite(desc: &WeylDescriptor, set: &TypeSubset) -> Result<()> {
    if is_self_opposite(desc, set) {
        Ok(())
    } else {
        Err(Error::NotSelfOpposite {
            ty: set.render(desc),
            image: w0_action_on_types(desc, set).render(desc),
        })
    }
}

/// Eigenvalues of opposition on flags of cotype `cotype`.
pub fn eigenvalues_partial(
    desc: &WeylDescriptor,
    sc: &StructureConstants,
    cotype: &TypeSubset,
) -> Result<Vec<LabelledEigenvalue>> {
    check_rank(desc)?;
    require_self_opposite(desc, cotype)?;
    let profile = parabolic_longest_profile(desc, cotype);
    let induced = induce_trivial(desc, cotype)?;
    induced
        .entries
        .iter()
        .map(|(label, mult)| {
            let mut ev = eigenvalue_maximal(desc, sc, label)?;
            ev.twice_a -= 2 * profile.s_letters as i64;
            ev.b -= profile.t_letters as i64;
            Ok(LabelledEigenvalue {
                label: label.clone(),
                multiplicity: *mult,
                eigenvalue: ev,
            })
        })
        .collect()
}

/// Eigenvalues of opposition on maximal flags, one per irreducible character.
pub fn eigenvalues_maximal(
    desc: &WeylDescriptor,
    sc: &StructureConstants,
) -> Result<Vec<(CharLabel, OppositionEigenvalue)>> {
    all_labels(desc)
        .into_iter()
        .map(|l| eigenvalue_maximal(desc, sc, &l).map(|ev| (l, ev)))
        .collect()
}

/// Distinct eigenvalues of a spectrum at a given e, keyed by (sign, 2·exponent),
/// with the labels contributing each.
pub fn distinct_eigenvalues(
    entries: &[LabelledEigenvalue],
    e: PolarParam,
) -> Vec<(Sign, i64, Vec<CharLabel>)> {
    let mut map: std::collections::BTreeMap<(i64, Sign), Vec<CharLabel>> = Default::default();
    for entry in entries {
        map.entry((entry.eigenvalue.twice_exponent(e), entry.eigenvalue.sign))
            .or_default()
            .push(entry.label.clone());
    }
    map.into_iter()
        .rev()
        .map(|((t, s), labels)| (s, t, labels))
        .collect()
}

/// Labels predicted to give the largest and the smallest eigenvalue.
fn expected_extreme_labels(
    desc: &WeylDescriptor,
    e: PolarParam,
    cotype: &TypeSubset,
) -> Result<(CharLabel, CharLabel)> {
    use crate::chars::Partition;
    let n = desc.rank as u32;
    let row = Partition::row;
    Ok(match desc.family {
        Family::A => (
            CharLabel::type_a(row(n + 1)),
            CharLabel::type_a(Partition::new(vec![n, 1])?),
        ),
        Family::B => {
            let special = matches!(e, PolarParam::Zero | PolarParam::Half)
                && n % 2 == 1
                && !cotype.contains(n as usize);
            let smallest = if special {
                CharLabel::type_b(Partition::empty(), row(n))
            } else {
                CharLabel::type_b(row(n - 1), row(1))
            };
            (CharLabel::type_b(row(n), Partition::empty()), smallest)
        }
        Family::D => (
            CharLabel::type_d(row(n), Partition::empty(), None)?,
            CharLabel::type_d(row(n - 1), row(1), None)?,
        ),
    })
}

/// Largest eigenvalue (trivial label) and the most negative one.
///
/// When the minimising candidate has sign `Both`, its minus branch is the one
/// that counts.
pub fn extreme_eigenvalues(
    desc: &WeylDescriptor,
    sc: &StructureConstants,
    cotype: &TypeSubset,
) -> Result<(LabelledEigenvalue, LabelledEigenvalue)> {
    let e = sc.effective_e(desc)?;
    let entries = eigenvalues_partial(desc, sc, cotype)?;
    let (triv_label, min_label) = expected_extreme_labels(desc, e, cotype)?;
    let largest = entries
        .iter()
        .find(|x| x.label == triv_label)
        .cloned()
        .ok_or_else(|| {
            Error::Inconsistent("trivial label missing from induced character".into())
        })?;
    let top = largest.eigenvalue.twice_exponent(e);
    if entries.iter().any(|x| x.eigenvalue.twice_exponent(e) > top) {
        return Err(Error::Inconsistent(format!(
            "an eigenvalue of {desc} exceeds the valency"
        )));
    }
    let smallest = entries
        .iter()
        .filter(|x| x.eigenvalue.sign != Sign::Plus)
        .max_by_key(|x| (x.eigenvalue.twice_exponent(e), x.label == min_label))
        .cloned()
        .ok_or_else(|| Error::Inconsistent(format!("no negative eigenvalue for {desc}")))?;
    if desc.in_closed_form_range() {
        let expected = entries
            .iter()
            .find(|x| x.label == min_label)
            .ok_or_else(|| {
                Error::Inconsistent(format!("{min_label} missing from the induced character"))
            })?;
        if expected.eigenvalue.twice_exponent(e) != smallest.eigenvalue.twice_exponent(e)
            || expected.eigenvalue.sign == Sign::Plus
        {
            return Err(Error::Inconsistent(format!(
                "smallest eigenvalue of {desc} comes from {} rather than {min_label}",
                smallest.label
            )));
        }
    }
    Ok((largest, smallest))
}

/// Closed-form spectrum of opposition on k-spaces of a polar space of rank n.
pub fn polar_single_type_spectrum(n: usize, k: usize) -> Result<Vec<OppositionEigenvalue>> {
    if k == 0 || k > n {
        return Err(Error::InvalidType(format!("k = {k} outside 1..={n}")));
    }
    let (n, k) = (n as i64, k as i64);
    let mut out = Vec::new();
    for d in 0..=k {
        for i in 0..=d.min(n - k) {
            let twice_a =
                2 * (n * (d + k - i) + (k - d) * (k - d + i) + i * (i - 1)) - k * (3 * k + 1);
            out.push(OppositionEigenvalue {
                sign: Sign::from_parity((k - d) % 2 == 1),
                twice_a,
                b: d,
            });
        }
    }
    Ok(out)
}
