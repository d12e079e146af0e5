//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use flag_ekr::chars::{induce_trivial, induce_trivial_oracle, Sign};
use flag_ekr::geometry::{
    is_coclique, max_coclique, sharp_construction, verify_equitable_blowup, verify_hecke_relations,
    verify_spectrum, FlagSpace, Geometry, GeometryKind, GeometrySpec, OppositionGraph, View,
};
use flag_ekr::hecke::{
    count_flags, eigenvalues_partial, ekr_bound, polar_single_type_spectrum, ConstructionKind,
    PolarParam, StructureConstants,
};
use flag_ekr::weyl::{Family, TypeSubset, WeylDescriptor};
use flag_ekr::Budget;

type Outcome = Result<String, String>;

/// (kind, rank, q, twice e, known counts for k = 1, 2, ...)
type CountCase = (GeometryKind, usize, u64, Option<u32>, &'static [u128]);
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

struct Instance {
    spec: GeometrySpec,
    ty: TypeSubset,
    space: FlagSpace,
    graph: OppositionGraph,
}

fn instance(
    kind: GeometryKind,
    rank: usize,
    q: u64,
    view: View,
    ty: &str,
) -> Result<Instance, String> {
    let budget = Budget::default();
    let spec = GeometrySpec::new(kind, rank, q)
        .map_err(err)?
        .with_view(view);
    let ty = TypeSubset::parse(&spec.weyl(), ty).map_err(err)?;
    let space =
        FlagSpace::new(Geometry::new(spec).map_err(err)?, ty.clone(), &budget).map_err(err)?;
    let graph = OppositionGraph::build(&space, &budget).map_err(err)?;
    Ok(Instance {
        spec,
        ty,
        space,
        graph,
    })
}

/// Distinct predicted values as strings like "64", "-16", "±2^(3/2)".
fn predicted_values(inst: &Instance) -> Result<BTreeSet<String>, String> {
    let q = inst.spec.q;
    Ok(inst
        .spec
        .predicted_spectrum(&inst.ty)
        .map_err(err)?
        .into_iter()
        .map(|(sign, t, _)| {
            let mag = if t % 2 == 0 {
                q.pow((t / 2) as u32).to_string()
            } else {
                format!("{q}^({t}/2)")
            };
            match sign {
                Sign::Plus => mag,
                Sign::Minus => format!("-{mag}"),
                Sign::Both => format!("±{mag}"),
            }
        })
        .collect())
}

fn set(values: &[&str]) -> BTreeSet<String> {
    values.iter().map(|s| s.to_string()).collect()
}

/// Certifies the predicted spectrum and returns the realized values. For
/// maximal flags both branches of every ± pair must occur.
fn certify(inst: &Instance, maximal: bool) -> Result<Vec<String>, String> {
    let predicted = inst.spec.predicted_spectrum(&inst.ty).map_err(err)?;
    let r = verify_spectrum(&inst.graph, &predicted, inst.spec.q, maximal).map_err(err)?;
    ensure(r.passed, format!("spectrum check failed: {:?}", r.failures))?;
    if maximal {
        ensure(
            r.eigenvalues.iter().all(|c| c.realized),
            "an eigenvalue branch is not realized",
        )?;
    }
    Ok(r.realized_values())
}

fn bound_of(inst: &Instance) -> Result<flag_ekr::hecke::BoundReport, String> {
    let desc = inst.spec.weyl();
    let sc = inst.spec.structure_constants().map_err(err)?;
    ekr_bound(&desc, &sc, &inst.ty.complement(&desc)).map_err(err)
}

fn construction(inst: &Instance, kind: ConstructionKind) -> Result<usize, String> {
    let set = sharp_construction(&inst.space, kind, &Budget::default()).map_err(err)?;
    ensure(
        is_coclique(&inst.graph, &set),
        format!("{} is not a coclique", kind.name()),
    )?;
    Ok(set.len())
}

fn criterion_1() -> Outcome {
    let r = verify_hecke_relations(2, &Budget::default()).map_err(err)?;
    let sizes: Vec<usize> = r.class_sizes.iter().map(|c| c.1).collect();
    ensure(r.chambers == 21, "expected 21 chambers")?;
    ensure(
        sizes == vec![1, 2, 2, 4, 4, 8],
        format!("class sizes {sizes:?}"),
    )?;
    ensure(
        r.passed && r.identities_checked == 12,
        format!("{:?}", r.failures),
    )?;
    Ok(format!(
        "class sizes {sizes:?}, {} identities",
        r.identities_checked
    ))
}

fn criterion_2() -> Outcome {
    let inst = instance(GeometryKind::Projective, 2, 2, View::Polar, "1,2")?;
    let values = predicted_values(&inst)?;
    ensure(
        values == set(&["8", "±2^(3/2)", "-1"]),
        format!("predicted {values:?}"),
    )?;
    ensure(
        inst.graph.vertex_count() == 21 && inst.graph.valency == 8,
        "graph is not 21 vertices of valency 8",
    )?;
    certify(&inst, true)?;
    Ok(format!("{values:?} certified on 21 vertices"))
}

fn criterion_3() -> Outcome {
    let budget = Budget::default();
    let inst = instance(GeometryKind::Projective, 3, 2, View::Polar, "all")?;
    ensure(
        inst.graph.vertex_count() == 315,
        format!("v = {}", inst.graph.vertex_count()),
    )?;
    let values = predicted_values(&inst)?;
    ensure(
        values == set(&["64", "±16", "8", "±4", "1"]),
        format!("predicted {values:?}"),
    )?;
    certify(&inst, true)?;
    let bound = bound_of(&inst)?;
    ensure(
        bound.bound.to_string() == "63",
        format!("bound {}", bound.bound),
    )?;
    // blow up the pencil of lines through a point to chambers
    let lines = instance(GeometryKind::Projective, 3, 2, View::Polar, "2")?;
    let pencil =
        sharp_construction(&lines.space, ConstructionKind::PointPencil, &budget).map_err(err)?;
    let pencil: BTreeSet<_> = pencil
        .iter()
        .map(|&i| lines.space.flags()[i].clone())
        .collect();
    let blown: Vec<usize> = (0..inst.space.len())
        .filter(|&i| pencil.contains(&lines.space.restrict(&inst.space, &inst.space.flags()[i])))
        .collect();
    ensure(
        blown.len() == 63,
        format!("blow-up has {} chambers", blown.len()),
    )?;
    ensure(
        is_coclique(&inst.graph, &blown),
        "blow-up is not a coclique",
    )?;
    Ok("v=315, spectrum certified, bound 63 met by the blown-up pencil".into())
}

fn criterion_4() -> Outcome {
    let inst = instance(GeometryKind::Projective, 3, 2, View::Polar, "2")?;
    let values = predicted_values(&inst)?;
    ensure(
        values == set(&["16", "±4", "2"]),
        format!("predicted {values:?}"),
    )?;
    let realized = certify(&inst, false)?;
    let bound = bound_of(&inst)?;
    ensure(
        bound.bound.to_string() == "7" && bound.v == 35u32.into(),
        format!("bound {}", bound.bound),
    )?;
    let found = max_coclique(&inst.graph, None, &Budget::default()).map_err(err)?;
    ensure(
        found.size == 7 && found.proven_optimal,
        format!("max coclique {}", found.size),
    )?;
    let pencil = construction(&inst, ConstructionKind::PointPencil)?;
    let plane = construction(&inst, ConstructionKind::Hyperplane)?;
    ensure(
        pencil == 7 && plane == 7,
        format!("constructions {pencil}, {plane}"),
    )?;
    Ok(format!(
        "realized {realized:?}, bound 35/5 = 7 = max coclique = pencil = plane"
    ))
}

fn criterion_5() -> Outcome {
    let inst = instance(GeometryKind::Symplectic, 3, 2, View::Polar, "1")?;
    ensure(
        inst.graph.vertex_count() == 63 && inst.graph.valency == 32,
        "graph is not 63 vertices of valency 32",
    )?;
    let values = predicted_values(&inst)?;
    ensure(
        values == set(&["32", "4", "-4"]),
        format!("predicted {values:?}"),
    )?;
    certify(&inst, false)?;
    ensure(bound_of(&inst)?.bound.to_string() == "7", "bound is not 7")?;
    ensure(
        construction(&inst, ConstructionKind::PointInGenerator)? == 7,
        "generator does not give 7 points",
    )?;
    let found = max_coclique(&inst.graph, None, &Budget::default()).map_err(err)?;
    ensure(
        found.size == 7 && found.proven_optimal,
        format!("max coclique {}", found.size),
    )?;
    Ok("63 points, valency 32, bound 7 = max coclique".into())
}

fn criterion_6() -> Outcome {
    let inst = instance(GeometryKind::Symplectic, 3, 2, View::Polar, "3")?;
    ensure(
        inst.graph.vertex_count() == 135 && inst.graph.valency == 64,
        "graph is not 135 vertices of valency 64",
    )?;
    certify(&inst, false)?;
    let b = bound_of(&inst)?;
    ensure(
        b.lambda_min_value == "-8" && b.bound.to_string() == "15",
        format!("λ_min {} bound {}", b.lambda_min_value, b.bound),
    )?;
    ensure(
        construction(&inst, ConstructionKind::GeneratorsThroughPoint)? == 15,
        "pencil is not 15",
    )?;
    Ok("135 generators, λ_min -8, bound 15 = point-pencil".into())
}

fn criterion_7() -> Outcome {
    let inst = instance(GeometryKind::HyperbolicQuadric, 4, 2, View::Oriflamme, "4")?;
    ensure(
        inst.graph.vertex_count() == 135 && inst.graph.valency == 64,
        "graph is not 135 vertices of valency 64",
    )?;
    certify(&inst, false)?;
    let b = bound_of(&inst)?;
    ensure(
        b.lambda_min_value == "-8" && b.bound.to_string() == "15",
        format!("λ_min {} bound {}", b.lambda_min_value, b.bound),
    )?;
    let size = construction(&inst, ConstructionKind::ClassThroughPoint { primed: false })?;
    ensure(size == 15, format!("pencil has {size}"))?;
    Ok("one class of 135 generators, λ_min -8, bound 15 = point-pencil".into())
}

fn criterion_8() -> Outcome {
    let budget = Budget::default();
    let mut factors = Vec::new();
    for (kind, rank, ty, expected) in [
        (GeometryKind::Projective, 3, "2", 4),
        (GeometryKind::Symplectic, 3, "3", 8),
    ] {
        let spec = GeometrySpec::new(kind, rank, 2)
            .map_err(err)?
            .with_view(View::Polar);
        let ty = TypeSubset::parse(&spec.weyl(), ty).map_err(err)?;
        let r = verify_equitable_blowup(&Geometry::new(spec).map_err(err)?, &ty, &budget)
            .map_err(err)?;
        ensure(r.passed, format!("{spec}: {:?}", r.counterexample))?;
        ensure(r.factor == expected, format!("{spec}: factor {}", r.factor))?;
        factors.push(r.factor);
    }
    Ok(format!("factors {factors:?}"))
}

fn all_subsets(desc: &WeylDescriptor) -> Vec<TypeSubset> {
    let nodes: Vec<usize> = desc.nodes().collect();
    (0u32..1 << nodes.len())
        .map(|m| {
            TypeSubset::new(
                desc,
                nodes.iter().copied().filter(|p| m >> (p - 1) & 1 == 1),
            )
            .unwrap()
        })
        .collect()
}

fn criterion_9() -> Outcome {
    let budget = Budget::default();
    let mut groups = Vec::new();
    groups.extend((1..=5).map(|n| (Family::A, n)));
    groups.extend((2..=4).map(|n| (Family::B, n)));
    groups.push((Family::D, 4));
    let mut checked = 0;
    for (family, n) in groups {
        let desc = WeylDescriptor::new(family, n).map_err(err)?;
        for j in all_subsets(&desc) {
            let fast = induce_trivial(&desc, &j).map_err(err)?;
            let slow = induce_trivial_oracle(&desc, &j, &budget).map_err(err)?;
            ensure(fast == slow, format!("{desc} J={}", j.render(&desc)))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} parabolic subgroups agree"))
}

fn criterion_10() -> Outcome {
    let mut checked = 0;
    for n in 1..=6 {
        let desc = WeylDescriptor::new(Family::B, n.max(2)).map_err(err)?;
        if desc.rank != n {
            continue;
        }
        for e in PolarParam::ALL {
            let sc = StructureConstants::new(4, e).map_err(err)?;
            for k in 1..=n {
                let cotype = TypeSubset::new(&desc, (1..=n).filter(|&i| i != k)).map_err(err)?;
                let mut lhs: Vec<(Sign, i64)> = eigenvalues_partial(&desc, &sc, &cotype)
                    .map_err(err)?
                    .iter()
                    .flat_map(|x| {
                        std::iter::repeat_n(
                            (x.eigenvalue.sign, x.eigenvalue.twice_exponent(e)),
                            x.multiplicity as usize,
                        )
                    })
                    .collect();
                let mut rhs: Vec<(Sign, i64)> = polar_single_type_spectrum(n, k)
                    .map_err(err)?
                    .iter()
                    .map(|x| (x.sign, x.twice_exponent(e)))
                    .collect();
                lhs.sort();
                rhs.sort();
                ensure(lhs == rhs, format!("n={n} e={e} k={k}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (n, e, k) cases agree"))
}

/// [n k]_q by the product formula.
fn gauss(n: u32, k: u32, q: u128) -> u128 {
    (0..k).map(|i| q.pow(n - i) - 1).product::<u128>()
        / (0..k).map(|i| q.pow(i + 1) - 1).product::<u128>()
}

fn criterion_11() -> Outcome {
    let budget = Budget::default();
    let cases: [CountCase; 7] = [
        (GeometryKind::Projective, 3, 2, None, &[15, 35, 15]),
        (GeometryKind::Projective, 3, 3, None, &[40, 130, 40]),
        (GeometryKind::Projective, 4, 2, None, &[31, 155, 155, 31]),
        (GeometryKind::Symplectic, 3, 2, Some(2), &[63, 315, 135]),
        (
            GeometryKind::ParabolicQuadric,
            3,
            2,
            Some(2),
            &[63, 315, 135],
        ),
        (
            GeometryKind::HyperbolicQuadric,
            4,
            2,
            Some(0),
            &[135, 1575, 2025, 270],
        ),
        (
            GeometryKind::EllipticQuadric,
            3,
            2,
            Some(4),
            &[119, 1071, 765],
        ),
    ];
    let mut total = 0;
    for (kind, rank, q, twice_e, known) in cases {
        let spec = GeometrySpec::new(kind, rank, q)
            .map_err(err)?
            .with_view(View::Polar);
        let g = Geometry::new(spec).map_err(err)?;
        let desc = spec.weyl();
        let sc = spec.structure_constants().map_err(err)?;
        for (i, &expected) in known.iter().enumerate() {
            let k = i + 1;
            let found = g.enumerate_subspaces(k, &budget).map_err(err)?.len() as u128;
            let formula = match twice_e {
                None => gauss(rank as u32 + 1, k as u32, q as u128),
                Some(te) => {
                    let q = q as u128;
                    let product: u128 = (0..k as u32)
                        .map(|j| q.pow(rank as u32 - j - 1) * q.pow(te / 2) + 1)
                        .product();
                    gauss(rank as u32, k as u32, q) * product
                }
            };
            let ty = TypeSubset::new(&desc, [k]).map_err(err)?;
            let library: u128 = count_flags(&desc, &sc, &ty)
                .map_err(err)?
                .try_into()
                .map_err(err)?;
            ensure(
                found == expected && formula == expected && library == expected,
                format!("{spec} k={k}: enumerated {found}, formula {formula}, library {library}, known {expected}"),
            )?;
            total += 1;
        }
    }
    Ok(format!("{total} subspace counts agree"))
}

fn criterion_12() -> Outcome {
    let desc = WeylDescriptor::new(Family::B, 3).map_err(err)?;
    let sc = StructureConstants::new(2, PolarParam::Zero).map_err(err)?;
    let r = ekr_bound(&desc, &sc, &TypeSubset::empty()).map_err(err)?;
    ensure(
        r.bound.twice_gap == 0,
        format!("denominator 1+q^({}/2)", r.bound.twice_gap),
    )?;
    ensure(
        r.bound_floor.clone() * 2u32 == r.v,
        format!("bound {} for v = {}", r.bound, r.v),
    )?;
    Ok(format!(
        "rank-3 analogue Q+(5,2): v={}, bound v/2 = {} (formula level only)",
        r.v, r.bound
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 12] = [
        (
            "PG(2,2) relation census",
            criterion_1,
            Duration::from_secs(1),
        ),
        (
            "PG(2,2) chamber spectrum",
            criterion_2,
            Duration::from_secs(1),
        ),
        ("PG(3,2) chambers", criterion_3, Duration::from_secs(60)),
        ("PG(3,2) lines", criterion_4, Duration::from_secs(5)),
        ("Sp(6,2) points", criterion_5, Duration::from_secs(5)),
        ("Sp(6,2) generators", criterion_6, Duration::from_secs(10)),
        (
            "O+(8,2) one generator class",
            criterion_7,
            Duration::from_secs(30),
        ),
        (
            "equitable blow-up factors",
            criterion_8,
            Duration::from_secs(30),
        ),
        (
            "decomposition oracle",
            criterion_9,
            Duration::from_secs(120),
        ),
        (
            "closed-form polar spectrum",
            criterion_10,
            Duration::from_secs(60),
        ),
        ("subspace counts", criterion_11, Duration::from_secs(120)),
        ("e = 0 special case", criterion_12, Duration::from_secs(1)),
    ];
    println!();
    let mut failed = Vec::new();
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > *limit => {
                Err(format!("{msg}; took {elapsed:.2?}, limit {limit:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({elapsed:.2?})", i + 1),
            Err(msg) => {
                println!("FAIL {:>2} {name}: {msg} ({elapsed:.2?})", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
