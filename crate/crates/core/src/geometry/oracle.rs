//! Equitable blow-up and the explicit EKR-sets meeting the bound.

use num_bigint::BigUint;
use serde::Serialize;

use super::flags::FlagSpace;
use super::graph::OppositionGraph;
use super::space::{Geometry, Subspace};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hecke::{power_half, ConstructionKind};
use crate::weyl::{parabolic_longest_profile, TypeSubset};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowupReport {
    pub passed: bool,
    /// q^ℓ with ℓ the weighted length of the longest element of W_J.
    pub factor: u64,
    pub partial_flags: usize,
    pub maximal_flags: usize,
    pub pairs_checked: u64,
    pub counterexample: Option<String>,
}

/// Checks that each maximal extension of a partial flag is opposite to
/// exactly q^ℓ extensions of any opposite partial flag, and to none of the
/// extensions of a partial flag that is not opposite.
pub fn verify_equitable_blowup(
    geometry: &Geometry,
    ty: &TypeSubset,
    budget: &Budget,
) -> Result<BlowupReport> {
    let desc = geometry.spec.weyl();
    let partial = FlagSpace::new(geometry.clone(), ty.clone(), budget)?;
    let maximal = FlagSpace::new(geometry.clone(), TypeSubset::all(&desc), budget)?;
    Budget::check(
        "maximal flags for the blow-up",
        maximal.len() as u64,
        budget.graph_vertices,
    )?;
    let profile = parabolic_longest_profile(&desc, &ty.complement(&desc));
    let e = geometry.spec.structure_constants()?.effective_e(&desc)?;
    let twice = 2 * profile.s_letters as i64 + profile.t_letters as i64 * e.twice();
    let factor: u64 = power_half(geometry.spec.q, twice)
        .and_then(|f| u64::try_from(f).ok())
        .ok_or_else(|| Error::NotApplicable(format!("q^({twice}/2) is not an integer")))?;

    let mut extensions: Vec<Vec<usize>> = vec![Vec::new(); partial.len()];
    for (i, f) in maximal.flags().iter().enumerate() {
        let sub = partial.restrict(&maximal, f);
        let j = partial
            .index_of(&sub)
            .ok_or_else(|| Error::Inconsistent("restriction is not a flag".into()))?;
        extensions[j].push(i);
    }
    let partial_tables = partial.opposition_tables()?;
    let maximal_tables = maximal.opposition_tables()?;
    let mut pairs_checked = 0;
    for a in 0..partial.len() {
        for b in 0..partial.len() {
            let expected = if partial_tables.opposite(a, b) {
                factor
            } else {
                0
            };
            for &x in &extensions[a] {
                let found = extensions[b]
                    .iter()
                    .filter(|&&y| maximal_tables.opposite(x, y))
                    .count() as u64;
                pairs_checked += 1;
                if found != expected {
                    return Ok(BlowupReport {
                        passed: false,
                        factor,
                        partial_flags: partial.len(),
                        maximal_flags: maximal.len(),
                        pairs_checked,
                        counterexample: Some(format!(
                            "maximal flag {} has {found} opposite extensions of {} (expected {expected})",
                            maximal.flags()[x].encode(),
                            partial.flags()[b].encode()
                        )),
                    });
                }
            }
        }
    }
    Ok(BlowupReport {
        passed: true,
        factor,
        partial_flags: partial.len(),
        maximal_flags: maximal.len(),
        pairs_checked,
        counterexample: None,
    })
}

/// Indices of the flags forming one of the known EKR-sets.
pub fn sharp_construction(
    space: &FlagSpace,
    kind: ConstructionKind,
    budget: &Budget,
) -> Result<Vec<usize>> {
    let desc = &space.desc;
    let geometry = &space.geometry;
    let field = &geometry.field;
    let n = desc.rank;
    let e = geometry.spec.structure_constants()?.effective_e(desc)?;
    kind.check_applicable(desc, e, &space.ty)?;
    let first = |k: usize| -> Result<Subspace> {
        geometry
            .enumerate_subspaces(k, budget)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Inconsistent(format!("no {k}-spaces")))
    };
    let class_pos = |primed: bool| if primed { n } else { n - 1 };
    let select = |keep: &dyn Fn(&super::flags::Flag) -> bool| -> Vec<usize> {
        (0..space.len())
            .filter(|&i| keep(&space.flags()[i]))
            .collect()
    };
    Ok(match kind {
        ConstructionKind::PointPencil => {
            let (m, p) = (n.div_ceil(2), first(1)?);
            select(&|f| space.element(f, m).contains(field, &p))
        }
        ConstructionKind::Hyperplane => {
            let (m, h) = (n.div_ceil(2), first(n)?);
            select(&|f| h.contains(field, space.element(f, m)))
        }
        ConstructionKind::PointInGenerator => {
            let g = first(n)?;
            select(&|f| g.contains(field, space.element(f, 1)))
        }
        ConstructionKind::GeneratorsThroughPoint => {
            let p = first(1)?;
            select(&|f| space.element(f, n).contains(field, &p))
        }
        ConstructionKind::GeneratorClass => {
            let g = first(n)?;
            select(&|f| space.element(f, n).intersection_dim(field, &g) % 2 == n % 2)
        }
        ConstructionKind::ClassThroughPoint { primed } => {
            let p = first(1)?;
            select(&|f| space.element(f, class_pos(primed)).contains(field, &p))
        }
        ConstructionKind::Triality { primed } => {
            // a fixed generator of the class not used by the flags
            let other = usize::from(!primed);
            let fixed = geometry
                .enumerate_subspaces(n, budget)?
                .into_iter()
                .find(|g| space.generator_class(g) == Some(other))
                .ok_or_else(|| Error::Inconsistent("generator class is empty".into()))?;
            select(&|f| {
                space
                    .element(f, class_pos(primed))
                    .intersection_dim(field, &fixed)
                    == n - 1
            })
        }
    })
}

/// Whether no two of the given vertices are adjacent.
pub fn is_coclique(graph: &OppositionGraph, vertices: &[usize]) -> bool {
    vertices.iter().enumerate().all(|(i, &a)| {
        vertices[i + 1..]
            .iter()
            .all(|&b| !graph.adjacency.get(a, b))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionCheck {
    pub name: &'static str,
    pub size: usize,
    #[serde(serialize_with = "as_string")]
    pub predicted: BigUint,
    pub is_coclique: bool,
    pub passed: bool,
}

fn as_string<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// Builds every applicable construction, checks it is a coclique and that
/// its size is the predicted one.
pub fn check_constructions(
    space: &FlagSpace,
    graph: &OppositionGraph,
    budget: &Budget,
) -> Result<Vec<ConstructionCheck>> {
    let sc = space.geometry.spec.structure_constants()?;
    let predicted = crate::hecke::sharp_constructions(&space.desc, &sc, &space.ty)?;
    let mut out = Vec::new();
    for c in predicted {
        let set = sharp_construction(space, c.kind, budget)?;
        let coclique = is_coclique(graph, &set);
        out.push(ConstructionCheck {
            name: c.name,
            size: set.len(),
            passed: coclique && BigUint::from(set.len()) == c.size,
            predicted: c.size,
            is_coclique: coclique,
        });
    }
    Ok(out)
}
