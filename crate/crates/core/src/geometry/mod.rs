//! Brute-force oracle: small projective and polar spaces, their flags and
//! opposition graphs, and exact checks of the algebraic predictions.

mod coclique;
mod field;
mod flags;
mod graph;
mod oracle;
mod relations;
mod report;
mod space;
mod spectrum;
mod suite;

pub use coclique::{max_coclique, CocliqueResult};
pub use field::{Field, MAX_FIELD_ORDER};
pub use flags::{is_opposite, slot_dim, Flag, FlagSpace};
pub use graph::{BitMatrix, OppositionGraph, FORMAT_VERSION, MAGIC};
pub use oracle::{
    check_constructions, is_coclique, sharp_construction, verify_equitable_blowup, BlowupReport,
    ConstructionCheck,
};
pub use relations::{verify_hecke_relations, HeckeReport, RELATION_NAMES, RELATION_WORDS};
pub use report::{verify_instance, InstanceReport};
pub use space::{Geometry, GeometryKind, GeometrySpec, LocalCache, Subspace, View};
pub use spectrum::{verify_spectrum, EigenvalueCheck, SpectrumReport};
pub use suite::{run_suite, CheckResult, SuiteReport, SUITES};

use crate::chars::{CharLabel, Sign};
use crate::error::Result;
use crate::hecke::{distinct_eigenvalues, eigenvalues_partial, PolarParam, StructureConstants};
use crate::weyl::TypeSubset;

impl GeometrySpec {
    /// q_s = q and q_t = q^e for this geometry.
    pub fn structure_constants(&self) -> Result<StructureConstants> {
        StructureConstants::new(self.q, self.e().unwrap_or(PolarParam::Zero))
    }

    /// Distinct predicted eigenvalues of opposition on flags of type `ty`.
    pub fn predicted_spectrum(&self, ty: &TypeSubset) -> Result<Vec<(Sign, i64, Vec<CharLabel>)>> {
        let desc = self.weyl();
        let sc = self.structure_constants()?;
        let entries = eigenvalues_partial(&desc, &sc, &ty.complement(&desc))?;
        Ok(distinct_eigenvalues(&entries, sc.effective_e(&desc)?))
    }
}
