use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::count::{count_b_subspaces, count_flags, gaussian_binomial, q_multinomial};
use super::{
    extreme_eigenvalues, require_self_opposite, LabelledEigenvalue, OppositionEigenvalue,
    PolarParam, StructureConstants,
};
use crate::chars::Sign;
use crate::error::{Error, Result};
use crate::weyl::{Family, TypeSubset, WeylDescriptor};

/// v / (1 + q^(twice_gap/2)), kept exact even when q^(twice_gap/2) is irrational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundValue {
    pub v: BigUint,
    pub q: u64,
    pub twice_gap: i64,
}

impl BoundValue {
    fn ratio(&self) -> Option<BigUint> {
        super::power_half(self.q, self.twice_gap)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        let r = self.ratio()?;
        Some(BigRational::new(
            BigInt::from(self.v.clone()),
            BigInt::from(r + 1u32),
        ))
    }

    /// The bound when it is a whole number.
    pub fn as_integer(&self) -> Option<BigUint> {
        let r = self.as_rational()?;
        r.is_integer().then(|| r.to_integer().magnitude().clone())
    }

    /// Largest integer c with c (1 + q^(gap/2)) ≤ v.
    pub fn floor(&self) -> BigUint {
        if let Some(r) = self.as_rational() {
            return r.floor().to_integer().magnitude().clone();
        }
        // c · q^(gap/2) ≤ v - c  ⇔  c² q^gap ≤ (v - c)²
        let qg = BigUint::from(self.q).pow(self.twice_gap as u32);
        let fits = |c: &BigUint| c <= &self.v && c * c * &qg <= (&self.v - c) * (&self.v - c);
        let (mut lo, mut hi) = (BigUint::zero(), self.v.clone());
        while lo < hi {
            let mid = (&lo + &hi + 1u32) >> 1;
            if fits(&mid) {
                lo = mid;
            } else {
                hi = mid - 1u32;
            }
        }
        lo
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) if r.is_integer() => write!(f, "{}", r.to_integer()),
            Some(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            None => write!(f, "{}/(1+{}^({}/2))", self.v, self.q, self.twice_gap),
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Delsarte-Hoffman bound v / (1 - k/α) for eigenvalues given as powers of q.
///
/// A `Both` sign on α is read as its negative branch.
pub fn hoffman_bound(
    v: &BigUint,
    k: &OppositionEigenvalue,
    alpha: &OppositionEigenvalue,
    q: u64,
    e: PolarParam,
) -> Result<BoundValue> {
    if k.sign != Sign::Plus {
        return Err(Error::NotApplicable("the valency must be positive".into()));
    }
    if alpha.sign == Sign::Plus {
        return Err(Error::NotApplicable(
            "the smallest eigenvalue must be negative".into(),
        ));
    }
    let twice_gap = k.twice_exponent(e) - alpha.twice_exponent(e);
    if twice_gap < 0 {
        return Err(Error::Inconsistent("|λ_min| exceeds the valency".into()));
    }
    Ok(BoundValue {
        v: v.clone(),
        q,
        twice_gap,
    })
}

/// Delsarte-Hoffman bound for plain integer eigenvalues.
pub fn hoffman_bound_values(v: &BigInt, k: &BigInt, alpha: &BigInt) -> Result<BigRational> {
    if !alpha.is_negative() {
        return Err(Error::NotApplicable(format!(
            "smallest eigenvalue {alpha} is not negative"
        )));
    }
    if !k.is_positive() {
        return Err(Error::NotApplicable(format!("valency {k} is not positive")));
    }
    let one = BigRational::one();
    let ratio = BigRational::new(k.clone(), alpha.clone());
    Ok(BigRational::from_integer(v.clone()) / (one - ratio))
}

fn special_b_case(desc: &WeylDescriptor, e: PolarParam, ty: &TypeSubset) -> bool {
    desc.family == Family::B
        && matches!(e, PolarParam::Zero | PolarParam::Half)
        && desc.rank % 2 == 1
        && ty.contains(desc.rank)
}

/// 2g where the closed-form bound is v/(1 + q^g) for flags of type `ty`.
pub fn closed_form_gap(desc: &WeylDescriptor, e: PolarParam, ty: &TypeSubset) -> i64 {
    let n = desc.rank as i64;
    match desc.family {
        Family::A => n + 1,
        Family::B if special_b_case(desc, e, ty) => match e {
            PolarParam::Half => n,
            _ => 0,
        },
        Family::B => 2 * (n - 1) + e.twice(),
        Family::D => 2 * (n - 1),
    }
}

/// The families of EKR-sets known to meet the bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ConstructionKind {
    /// Type A: the middle subspace passes through a fixed point.
    PointPencil,
    /// Type A: the middle subspace lies in a fixed hyperplane.
    Hyperplane,
    /// B and D: the point lies in a fixed generator.
    PointInGenerator,
    /// B: the generator passes through a fixed point.
    GeneratorsThroughPoint,
    /// B with e = 0, n odd: the generator lies in a fixed class.
    GeneratorClass,
    /// D, n even: the generator of class n (or n') passes through a fixed point.
    ClassThroughPoint { primed: bool },
    /// D4: the generator of class n (or n') meets a fixed generator of the other class in a plane.
    Triality { primed: bool },
}

impl ConstructionKind {
    pub fn name(&self) -> &'static str {
        match self {
            ConstructionKind::PointPencil => "point-pencil",
            ConstructionKind::Hyperplane => "hyperplane",
            ConstructionKind::PointInGenerator => "point-in-generator",
            ConstructionKind::GeneratorsThroughPoint => "point-pencil",
            ConstructionKind::GeneratorClass => "generator-class",
            ConstructionKind::ClassThroughPoint { primed: false } => "point-pencil(n)",
            ConstructionKind::ClassThroughPoint { primed: true } => "point-pencil(n')",
            ConstructionKind::Triality { primed: false } => "triality(n)",
            ConstructionKind::Triality { primed: true } => "triality(n')",
        }
    }

    /// Ok when the construction is defined for flags of type `ty`.
    pub fn check_applicable(
        &self,
        desc: &WeylDescriptor,
        e: PolarParam,
        ty: &TypeSubset,
    ) -> Result<()> {
        let n = desc.rank;
        let fail = |why: &str| {
            Err(Error::NotApplicable(format!(
                "{} for {desc}, type {}: {why}",
                self.name(),
                ty.render(desc)
            )))
        };
        let class_pos = |primed: bool| if primed { n } else { n - 1 };
        match (desc.family, self) {
            (Family::A, ConstructionKind::PointPencil | ConstructionKind::Hyperplane) => {
                if n.is_multiple_of(2) {
                    return fail("needs n = 2m - 1");
                }
                if !ty.contains(n.div_ceil(2)) {
                    return fail("needs the middle type m in the type");
                }
                Ok(())
            }
            (Family::B | Family::D, ConstructionKind::PointInGenerator) => {
                if !ty.contains(1) {
                    return fail("needs 1 in the type");
                }
                if special_b_case(desc, e, ty) {
                    return fail("the bound is larger when e <= 1/2, n odd and n is in the type");
                }
                Ok(())
            }
            (Family::B, ConstructionKind::GeneratorsThroughPoint) => {
                if !ty.contains(n) {
                    return fail("needs n in the type");
                }
                if e.twice() < 2 && n % 2 == 1 {
                    return fail("needs e >= 1 or n even");
                }
                Ok(())
            }
            (Family::B, ConstructionKind::GeneratorClass) => {
                if !ty.contains(n) {
                    return fail("needs n in the type");
                }
                if e != PolarParam::Zero || n.is_multiple_of(2) {
                    return fail("needs e = 0 and n odd");
                }
                Ok(())
            }
            (Family::D, ConstructionKind::ClassThroughPoint { primed }) => {
                if !ty.contains(class_pos(*primed)) {
                    return fail("needs that generator class in the type");
                }
                if n % 2 == 1 {
                    return fail("needs n even");
                }
                Ok(())
            }
            (Family::D, ConstructionKind::Triality { primed }) => {
                if !ty.contains(class_pos(*primed)) {
                    return fail("needs that generator class in the type");
                }
                if n != 4 {
                    return fail("needs n = 4");
                }
                Ok(())
            }
            _ => fail("not defined for this family"),
        }
    }

    fn candidates(family: Family) -> Vec<ConstructionKind> {
        use ConstructionKind::*;
        match family {
            Family::A => vec![PointPencil, Hyperplane],
            Family::B => vec![PointInGenerator, GeneratorsThroughPoint, GeneratorClass],
            Family::D => vec![
                PointInGenerator,
                ClassThroughPoint { primed: false },
                ClassThroughPoint { primed: true },
                Triality { primed: false },
                Triality { primed: true },
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionSize {
    pub kind: ConstructionKind,
    pub name: &'static str,
    #[serde(serialize_with = "as_string")]
    pub size: BigUint,
}

fn as_string<S: Serializer, T: fmt::Display>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn chain_in(total: usize, dims: impl Iterator<Item = usize>, offset: usize, q: u64) -> BigUint {
    let mut prev = offset;
    let parts: Vec<usize> = dims
        .map(|d| {
            let p = d - prev;
            prev = d;
            p
        })
        .collect();
    q_multinomial(total, &parts, q)
}

/// Size of one construction, counted directly from its definition.
fn construction_size(
    desc: &WeylDescriptor,
    sc: &StructureConstants,
    ty: &TypeSubset,
    kind: ConstructionKind,
) -> Result<BigUint> {
    let n = desc.rank;
    let q = sc.q;
    let e = sc.effective_e(desc)?;
    let dims: Vec<usize> = ty.positions().collect();
    Ok(match kind {
        ConstructionKind::PointPencil | ConstructionKind::Hyperplane => {
            let m = n.div_ceil(2);
            let through = if kind == ConstructionKind::PointPencil {
                gaussian_binomial(n, m - 1, q)
            } else {
                gaussian_binomial(n, m, q)
            };
            let below = chain_in(m, dims.iter().copied().filter(|&d| d < m), 0, q);
            let above = chain_in(n + 1 - m, dims.iter().copied().filter(|&d| d > m), m, q);
            through * below * above
        }
        ConstructionKind::PointInGenerator if n == 2 => {
            // residue of a point is a rank-1 polar space: q^e + 1 points
            let through = if ty.contains(2) {
                count_b_subspaces(1, 1, e, q)?
            } else {
                BigUint::from(1u32)
            };
            gaussian_binomial(2, 1, q) * through
        }
        ConstructionKind::PointInGenerator => {
            let residue = WeylDescriptor::new(desc.family, n - 1)?;
            let shifted =
                TypeSubset::new(&residue, dims.iter().filter(|&&d| d >= 2).map(|d| d - 1))?;
            gaussian_binomial(n, 1, q) * count_flags(&residue, sc, &shifted)?
        }
        ConstructionKind::GeneratorsThroughPoint => {
            count_b_subspaces(n - 1, n - 1, e, q)?
                * chain_in(n, dims.iter().copied().filter(|&d| d < n), 0, q)
        }
        ConstructionKind::GeneratorClass => count_flags(desc, sc, ty)? / 2u32,
        ConstructionKind::ClassThroughPoint { .. } | ConstructionKind::Triality { .. } => {
            let generators = match kind {
                // one class of generators of the rank n-1 residue
                ConstructionKind::ClassThroughPoint { .. } => {
                    count_b_subspaces(n - 1, n - 1, PolarParam::Zero, q)? / 2u32
                }
                // hyperplanes of the fixed generator
                _ => gaussian_binomial(n, n - 1, q),
            };
            let low = dims.iter().copied().filter(|&d| d + 2 <= n);
            let rest = if ty.contains(n - 1) && ty.contains(n) {
                gaussian_binomial(n, n - 1, q) * chain_in(n - 1, low, 0, q)
            } else {
                chain_in(n, low, 0, q)
            };
            generators * rest
        }
    })
}

/// Constructions known to meet the bound for flags of type `ty`, with sizes.
pub fn sharp_constructions(
    desc: &WeylDescriptor,
    sc: &StructureConstants,
    ty: &TypeSubset,
) -> Result<Vec<ConstructionSize>> {
    let e = sc.effective_e(desc)?;
    let mut out = Vec::new();
    for kind in ConstructionKind::candidates(desc.family) {
        if kind.check_applicable(desc, e, ty).is_ok() {
            out.push(ConstructionSize {
                kind,
                name: kind.name(),
                size: construction_size(desc, sc, ty, kind)?,
            });
        }
    }
    Ok(out)
}

/// Everything known about EKR-sets of flags of one type.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub family: Family,
    pub rank: usize,
    pub q: u64,
    pub e: Option<PolarParam>,
    #[serde(rename = "type")]
    pub ty: String,
    pub cotype: String,
    #[serde(serialize_with = "as_string")]
    pub v: BigUint,
    pub valency: OppositionEigenvalue,
    pub valency_value: String,
    pub lambda_min: OppositionEigenvalue,
    pub lambda_min_value: String,
    pub lambda_min_label: String,
    pub bound: BoundValue,
    #[serde(serialize_with = "as_string")]
    pub bound_floor: BigUint,
    #[serde(serialize_with = "opt_string")]
    pub closed_form: Option<BigUint>,
    pub sharp_constructions: Vec<ConstructionSize>,
    pub warnings: Vec<String>,
}

fn opt_string<S: Serializer>(x: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

/// Assembles v, the extreme eigenvalues and the Delsarte-Hoffman bound for
/// flags of cotype `cotype`, and checks the bound against its closed form.
pub fn ekr_bound(
    desc: &WeylDescriptor,
    sc: &StructureConstants,
    cotype: &TypeSubset,
) -> Result<BoundReport> {
    let ty = cotype.complement(desc);
    require_self_opposite(desc, &ty)?;
    let e = sc.effective_e(desc)?;
    let v = count_flags(desc, sc, &ty)?;
    let (largest, smallest): (LabelledEigenvalue, LabelledEigenvalue) =
        extreme_eigenvalues(desc, sc, cotype)?;
    let bound = hoffman_bound(&v, &largest.eigenvalue, &smallest.eigenvalue, sc.q, e)?;
    let expected_gap = closed_form_gap(desc, e, &ty);
    if bound.twice_gap != expected_gap {
        return Err(Error::Inconsistent(format!(
            "bound for {desc}, type {}: q-exponent {}/2 in the denominator, closed form has {expected_gap}/2",
            ty.render(desc),
            bound.twice_gap
        )));
    }
    if bound.floor() > v {
        return Err(Error::Inconsistent(
            "bound exceeds the number of flags".into(),
        ));
    }
    let mut warnings = Vec::new();
    if !desc.in_closed_form_range() {
        warnings.push(format!(
            "{desc} is below the rank range of the closed-form bound (A: n >= 3, B: n >= 3, D: n >= 4)"
        ));
    }
    if smallest.eigenvalue.sign == Sign::Both {
        warnings.push(format!(
            "the sign of λ_min from {} is undetermined; its negative branch was used",
            smallest.label
        ));
    }
    if desc.family == Family::A
        && desc.rank >= 3
        && ty.len() == 2
        && ty.contains(1)
        && ty.contains(desc.rank)
    {
        warnings.push(
            "type {1,n}: this bound grows like q^((3n-3)/2); the largest known EKR-sets are much smaller"
                .into(),
        );
    }
    if special_b_case(desc, e, &ty) && e == PolarParam::Half {
        warnings.push("no construction meeting this bound is known for e = 1/2, n odd".into());
    }
    Ok(BoundReport {
        family: desc.family,
        rank: desc.rank,
        q: sc.q,
        e: (desc.family != Family::A).then_some(e),
        ty: ty.render(desc),
        cotype: cotype.render(desc),
        valency_value: largest.eigenvalue.value_string(sc.q, e),
        valency: largest.eigenvalue,
        lambda_min_value: smallest.eigenvalue.value_string(sc.q, e),
        lambda_min: smallest.eigenvalue,
        lambda_min_label: smallest.label.to_string(),
        bound_floor: bound.floor(),
        closed_form: bound.as_integer(),
        bound,
        sharp_constructions: sharp_constructions(desc, sc, &ty)?,
        warnings,
        v,
    })
}
