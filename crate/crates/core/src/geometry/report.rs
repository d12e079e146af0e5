//! One geometry instance checked end to end against the algebraic predictions.

use num_bigint::BigUint;
use serde::Serialize;

use super::coclique::max_coclique;
use super::flags::FlagSpace;
use super::graph::OppositionGraph;
use super::oracle::{check_constructions, is_coclique, ConstructionCheck};
use super::space::{Geometry, GeometrySpec};
use super::spectrum::verify_spectrum;
use crate::budget::Budget;
use crate::error::Result;
use crate::hecke::{ekr_bound, BoundReport};
use crate::weyl::TypeSubset;

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    #[serde(flatten)]
    pub bound: BoundReport,
    pub geometry: String,
    pub vertices: usize,
    pub graph_valency: usize,
    pub spectrum_verified: bool,
    pub realized_eigenvalues: Vec<String>,
    pub max_coclique: Option<usize>,
    pub max_coclique_proven: Option<bool>,
    pub constructions: Vec<ConstructionCheck>,
    pub failures: Vec<String>,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Builds the opposition graph of flags of type `ty` and compares it with
/// the bound report: flag count, valency, spectrum, constructions and,
/// when `coclique` is set, the exact coclique number.
pub fn verify_instance(
    spec: GeometrySpec,
    ty: &TypeSubset,
    coclique: bool,
    budget: &Budget,
) -> Result<InstanceReport> {
    let desc = spec.weyl();
    let sc = spec.structure_constants()?;
    let bound = ekr_bound(&desc, &sc, &ty.complement(&desc))?;
    let space = FlagSpace::new(Geometry::new(spec)?, ty.clone(), budget)?;
    let graph = OppositionGraph::build(&space, budget)?;
    let mut failures = Vec::new();
    if BigUint::from(space.len()) != bound.v {
        failures.push(format!(
            "{} flags enumerated, {} predicted",
            space.len(),
            bound.v
        ));
    }
    let maximal = ty.len() == desc.nodes().count();
    let spectrum = verify_spectrum(&graph, &spec.predicted_spectrum(ty)?, spec.q, maximal)?;
    failures.extend(spectrum.failures.iter().cloned());
    let constructions = check_constructions(&space, &graph, budget)?;
    for c in constructions.iter().filter(|c| !c.passed) {
        failures.push(format!(
            "construction {} has size {} (predicted {}), coclique: {}",
            c.name, c.size, c.predicted, c.is_coclique
        ));
    }
    let (mut max_size, mut proven) = (None, None);
    if coclique {
        let hint = usize::try_from(&bound.bound_floor).ok();
        let found = max_coclique(&graph, hint, budget)?;
        if !is_coclique(&graph, &found.witness) {
            failures.push("coclique witness has an opposite pair".into());
        }
        if BigUint::from(found.size) > bound.bound_floor {
            failures.push(format!(
                "coclique of size {} exceeds the bound {}",
                found.size, bound.bound
            ));
        }
        max_size = Some(found.size);
        proven = Some(found.proven_optimal);
    }
    Ok(InstanceReport {
        geometry: spec.to_string(),
        vertices: graph.vertex_count(),
        graph_valency: graph.valency,
        spectrum_verified: spectrum.passed,
        realized_eigenvalues: spectrum.realized_values(),
        max_coclique: max_size,
        max_coclique_proven: proven,
        constructions,
        failures,
        bound,
    })
}
