//! Named verification suites over small instances.

use serde::Serialize;

use super::oracle::verify_equitable_blowup;
use super::relations::verify_hecke_relations;
use super::report::{verify_instance, InstanceReport};
use super::space::{Geometry, GeometryKind, GeometrySpec, View};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::weyl::TypeSubset;

pub const SUITES: [&str; 7] = ["pg22", "pg32", "sp62", "o72", "o8p2", "hecke-a2", "all"];

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub instances: Vec<InstanceReport>,
}

struct Runner<'a> {
    budget: &'a Budget,
    checks: Vec<CheckResult>,
    instances: Vec<InstanceReport>,
}

impl Runner<'_> {
    fn instance(&mut self, spec: GeometrySpec, ty: &[&str], coclique: bool) -> Result<()> {
        let desc = spec.weyl();
        let ty = TypeSubset::parse(&desc, &ty.join(","))?;
        let report = verify_instance(spec, &ty, coclique, self.budget)?;
        let mut detail = format!(
            "v={} k={} bound={} spectrum={}",
            report.vertices,
            report.graph_valency,
            report.bound.bound,
            if report.spectrum_verified {
                "certified"
            } else {
                "FAILED"
            },
        );
        if let Some(size) = report.max_coclique {
            detail.push_str(&format!(" max_coclique={size}"));
        }
        for c in &report.constructions {
            detail.push_str(&format!(" {}={}", c.name, c.size));
        }
        for f in &report.failures {
            detail.push_str(&format!("; {f}"));
        }
        self.checks.push(CheckResult {
            name: format!("{spec} type {}", ty.render(&desc)),
            passed: report.passed(),
            detail,
        });
        self.instances.push(report);
        Ok(())
    }

    fn blowup(&mut self, spec: GeometrySpec, ty: &[&str]) -> Result<()> {
        let desc = spec.weyl();
        let ty = TypeSubset::parse(&desc, &ty.join(","))?;
        let r = verify_equitable_blowup(&Geometry::new(spec)?, &ty, self.budget)?;
        self.checks.push(CheckResult {
            name: format!("{spec} blow-up of type {}", ty.render(&desc)),
            passed: r.passed,
            detail: match r.counterexample {
                Some(c) => c,
                None => format!("factor {} over {} pairs", r.factor, r.pairs_checked),
            },
        });
        Ok(())
    }

    fn hecke(&mut self, q: u64) -> Result<()> {
        let r = verify_hecke_relations(q, self.budget)?;
        let sizes: Vec<String> = r
            .class_sizes
            .iter()
            .map(|(n, s)| format!("{n}:{s}"))
            .collect();
        self.checks.push(CheckResult {
            name: format!("PG(2,{q}) relation census"),
            passed: r.passed,
            detail: if r.passed {
                format!(
                    "{} identities, class sizes {}",
                    r.identities_checked,
                    sizes.join(" ")
                )
            } else {
                r.failures.join("; ")
            },
        });
        Ok(())
    }
}

fn pg(n: usize, q: u64) -> Result<GeometrySpec> {
    GeometrySpec::projective(n, q)
}

fn polar(kind: GeometryKind, n: usize, q: u64) -> Result<GeometrySpec> {
    Ok(GeometrySpec::new(kind, n, q)?.with_view(View::Polar))
}

/// Runs a suite; a check that fails is reported, errors (budget, bad input) abort.
pub fn run_suite(name: &str, budget: &Budget) -> Result<SuiteReport> {
    let mut r = Runner {
        budget,
        checks: Vec::new(),
        instances: Vec::new(),
    };
    let parts: Vec<&str> = match name {
        "all" => SUITES[..SUITES.len() - 1].to_vec(),
        other if SUITES.contains(&other) => vec![other],
        other => {
            return Err(Error::Parse(format!(
                "unknown suite '{other}' (expected one of {})",
                SUITES.join(", ")
            )))
        }
    };
    for part in parts {
        match part {
            "pg22" => {
                r.instance(pg(2, 2)?, &["1", "2"], true)?;
                r.instance(pg(2, 3)?, &["1", "2"], false)?;
            }
            "pg32" => {
                r.instance(pg(3, 2)?, &["1", "2", "3"], false)?;
                r.instance(pg(3, 2)?, &["2"], true)?;
                r.instance(pg(3, 2)?, &["1", "3"], true)?;
                r.blowup(pg(3, 2)?, &["2"])?;
            }
            "sp62" => {
                let w = polar(GeometryKind::Symplectic, 3, 2)?;
                r.instance(w, &["1"], true)?;
                r.instance(w, &["2"], false)?;
                r.instance(w, &["3"], true)?;
                r.instance(w, &["1", "3"], false)?;
                r.blowup(w, &["3"])?;
            }
            "o72" => {
                let o = polar(GeometryKind::ParabolicQuadric, 3, 2)?;
                r.instance(o, &["1"], true)?;
                r.instance(o, &["3"], true)?;
            }
            "o8p2" => {
                let d = GeometrySpec::new(GeometryKind::HyperbolicQuadric, 4, 2)?;
                r.instance(d, &["4"], true)?;
                r.instance(d, &["4'"], false)?;
                r.instance(d, &["1"], false)?;
                let b = polar(GeometryKind::HyperbolicQuadric, 3, 2)?;
                r.instance(b, &["3"], true)?;
                let e = polar(GeometryKind::EllipticQuadric, 3, 2)?;
                r.instance(e, &["1"], false)?;
            }
            "hecke-a2" => {
                r.hecke(2)?;
                r.hecke(3)?;
            }
            _ => unreachable!("suite names checked above"),
        }
    }
    Ok(SuiteReport {
        suite: name.to_string(),
        passed: r.checks.iter().all(|c| c.passed),
        checks: r.checks,
        instances: r.instances,
    })
}
