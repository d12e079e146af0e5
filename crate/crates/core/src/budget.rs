//! Enumeration budgets shared by the group, character and geometry oracles.

use crate::error::{Error, Result};

/// Environment variable that overrides every count-type budget at once.
pub const BUDGET_ENV: &str = "OPPG_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of Weyl group elements enumerated in one go.
    pub group_elements: u64,
    /// Maximum number of subspaces enumerated for one dimension.
    pub subspaces: u64,
    /// Maximum vertex count of an opposition graph.
    pub graph_vertices: u64,
    /// Maximum vertex count accepted by the exact coclique search.
    pub coclique_vertices: u64,
    /// Search-tree node limit of the coclique search before it gives up on optimality.
    pub coclique_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            group_elements: 10_000_000,
            subspaces: 1_000_000,
            graph_vertices: 5_000,
            coclique_vertices: 400,
            coclique_nodes: 20_000_000,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            group_elements: u64::MAX,
            subspaces: u64::MAX,
            graph_vertices: u64::MAX,
            coclique_vertices: u64::MAX,
            coclique_nodes: u64::MAX,
        }
    }

    /// Default budget, with every count overridden by `OPPG_BUDGET` when it is set.
    pub fn from_env() -> Result<Self> {
        let mut budget = Budget::default();
        if let Ok(raw) = std::env::var(BUDGET_ENV) {
            let value: u64 = raw
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{BUDGET_ENV}={raw} is not an integer")))?;
            budget.group_elements = value;
            budget.subspaces = value;
            budget.graph_vertices = value;
            budget.coclique_vertices = value;
        }
        Ok(budget)
    }

    pub(crate) fn check(what: &str, required: u64, budget: u64) -> Result<()> {
        if required > budget {
            return Err(Error::BudgetExceeded {
                what: what.to_string(),
                required: required.to_string(),
                budget,
            });
        }
        Ok(())
    }
}
