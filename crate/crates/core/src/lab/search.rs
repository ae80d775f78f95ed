//! Counterexample search over families of conflict graphs.

use crate::conflict_graph::{classify, graph_to_interest_profile, ConflictGraph};
use crate::error::{Error, Result};
use crate::payments::PaymentRule;
use crate::rational::Rational;

use super::grid::BidGrid;
use super::sweep::{sweep_nondecreasing, ViolationReport};
use crate::auction::InterestProfile;

#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    /// Graphs actually swept.
    pub examined: usize,
    /// Graphs skipped because a sufficient condition already guarantees the property.
    pub skipped_guaranteed: usize,
    pub evaluations: usize,
    pub found: Option<(InterestProfile, ViolationReport)>,
    pub budget_exhausted: bool,
}

/// Sweeps each graph's realisation on the uniform grid `[lo, hi]` until a
/// violation is found or `budget` payment evaluations have been spent.
/// Running out of budget is reported in the outcome, not as an error.
pub fn search_violation<I>(
    rule: PaymentRule,
    family: I,
    lo: Rational,
    hi: Rational,
    step: Rational,
    budget: usize,
) -> Result<SearchOutcome>
where
    I: IntoIterator<Item = ConflictGraph>,
{
    let mut out = SearchOutcome::default();
    for graph in family {
        if rule == PaymentRule::VcgNearest && classify(&graph)?.vn_nondecreasing_guaranteed {
            out.skipped_guaranteed += 1;
            continue;
        }
        let profile = graph_to_interest_profile(&graph)?;
        let grid = BidGrid::uniform(graph.node_count(), lo, hi, step)?;
        let remaining = budget - out.evaluations;
        match sweep_nondecreasing(&profile, rule, &grid, remaining) {
            Ok(report) => {
                out.examined += 1;
                out.evaluations += report.evaluations;
                if let Some(v) = report.violation {
                    out.found = Some((profile, v));
                    return Ok(out);
                }
            }
            Err(Error::Budget { .. }) => {
                out.budget_exhausted = true;
                return Ok(out);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conflict_graph::{graphs_up_to_isomorphism, is_complete_multipartite};
    use crate::rational::int;

    #[test]
    fn guard_skips_small_mis_graphs() {
        let family: Vec<_> = (1..=5)
            .flat_map(|n| graphs_up_to_isomorphism(n).unwrap())
            .filter(|g| classify(g).unwrap().max_mis_size <= 3)
            .collect();
        let total = family.len();
        let out = search_violation(PaymentRule::VcgNearest, family, int(0), int(4), int(1), 1_000_000).unwrap();
        assert_eq!(out.skipped_guaranteed, total);
        assert_eq!(out.examined, 0);
        assert!(out.found.is_none());
    }

    #[test]
    fn multipartite_family_is_clean() {
        let family: Vec<_> = (2..=5)
            .flat_map(|n| graphs_up_to_isomorphism(n).unwrap())
            .filter(|g| is_complete_multipartite(g).is_some())
            .collect();
        assert!(!family.is_empty());
        let out = search_violation(PaymentRule::VcgNearest, family, int(0), int(4), int(1), 1_000_000).unwrap();
        assert!(out.found.is_none());
        assert!(!out.budget_exhausted);
    }

    #[test]
    fn exhaustion_is_reported() {
        let family = vec![ConflictGraph::empty(3)];
        let out = search_violation(PaymentRule::Proxy, family, int(0), int(10), int(1), 10).unwrap();
        assert!(out.budget_exhausted);
        assert!(out.found.is_none());
    }
}
