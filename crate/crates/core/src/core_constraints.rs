//! Core constraints of a fixed efficient allocation.
//!
//! A coalition `L` blocks the outcome if it could offer the seller more than
//! the winners outside `L` pay. For every set `P` of winners the binding
//! coalition is `L = N \ P` (adding losers to `L` never lowers the bound),
//! which gives the row `Σ_{i∈P} p_i ≥ W(b, X(b_L)) − W(b, x_L)`.

use num_traits::Zero;
use serde::Serialize;

use crate::auction::{max_welfare, Allocation, BidProfile, BidderSet, InterestProfile};
use crate::error::{Error, Result};
use crate::lp::{minimize_covering, CoveringRow};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoreConstraint {
    pub payer_set: BidderSet,
    pub bound: Rational,
    pub origin_coalition: BidderSet,
    /// Singleton payer set: the row reads `p_i ≥ p_i^V`.
    pub vcg_constraint: bool,
}

impl CoreConstraint {
    pub fn is_satisfied_by(&self, payments: &[Rational]) -> bool {
        self.payer_set.iter().fold(Rational::zero(), |s, i| s + payments[i]) >= self.bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreSystem {
    pub constraints: Vec<CoreConstraint>,
    pub allocation: Allocation,
    pub bids: BidProfile,
}

impl CoreSystem {
    pub fn winners(&self) -> BidderSet {
        self.allocation.winners()
    }

    /// Rows that are not VCG constraints.
    pub fn coalition_constraints(&self) -> impl Iterator<Item = &CoreConstraint> {
        self.constraints.iter().filter(|c| !c.vcg_constraint)
    }

    pub fn find(&self, payer_set: BidderSet) -> Option<&CoreConstraint> {
        self.constraints.iter().find(|c| c.payer_set == payer_set)
    }

    /// Exact membership test: every row plus `0 ≤ p_i ≤ b_i`, and zero for losers.
    pub fn contains(&self, payments: &[Rational]) -> bool {
        let n = self.bids.len();
        payments.len() == n
            && (0..n).all(|i| {
                if self.winners().contains(i) {
                    payments[i] >= Rational::zero() && payments[i] <= *self.bids.get(i)
                } else {
                    payments[i].is_zero()
                }
            })
            && self.constraints.iter().all(|c| c.is_satisfied_by(payments))
    }

    fn winner_positions(&self) -> Vec<usize> {
        self.winners().to_vec()
    }

    fn to_covering(&self, c: &CoreConstraint, winners: &[usize]) -> CoveringRow {
        let members = winners
            .iter()
            .enumerate()
            .filter(|(_, &w)| c.payer_set.contains(w))
            .fold(0u64, |m, (pos, _)| m | 1 << pos);
        CoveringRow {
            members,
            bound: c.bound,
        }
    }

    fn caps(&self, winners: &[usize]) -> Vec<Rational> {
        winners.iter().map(|&w| *self.bids.get(w)).collect()
    }

    /// Minimum of `Σ_{i∈payers} p_i` over the polytope of `rows` and the caps.
    fn min_payer_sum(&self, payers: BidderSet, rows: &[&CoreConstraint]) -> Result<Rational> {
        let winners = self.winner_positions();
        let covering: Vec<CoveringRow> = rows.iter().map(|c| self.to_covering(c, &winners)).collect();
        let cost: Vec<Rational> = winners
            .iter()
            .map(|&w| Rational::from_integer(payers.contains(w) as i128))
            .collect();
        Ok(minimize_covering(&self.caps(&winners), &covering, &cost)?.value)
    }
}

/// All non-vacuous core constraints for `alloc`, ordered by payer set
/// (larger sets first, then lexicographically).
pub fn enumerate_core_constraints(
    profile: &InterestProfile,
    bids: &BidProfile,
    alloc: &Allocation,
) -> Result<CoreSystem> {
    alloc.check_feasible(profile)?;
    if bids.len() != profile.bidder_count() {
        return Err(Error::input(format!(
            "{} bundles but {} bids",
            profile.bidder_count(),
            bids.len()
        )));
    }
    let everyone = profile.all_bidders();
    let winners = alloc.winners();
    let mut constraints = Vec::new();
    for payers in winners.subsets() {
        if payers.is_empty() {
            continue;
        }
        let coalition = everyone.difference(payers);
        let kept_winners = winners.difference(payers);
        let bound = max_welfare(profile, bids, coalition)? - bids.sum_over(kept_winners);
        if bound <= Rational::zero() {
            continue;
        }
        if bound > bids.sum_over(payers) {
            return Err(Error::NotEfficient(format!(
                "coalition {coalition} outbids winners {payers} even at full bids"
            )));
        }
        constraints.push(CoreConstraint {
            payer_set: payers,
            bound,
            origin_coalition: coalition,
            vcg_constraint: payers.len() == 1,
        });
    }
    constraints.sort_by(|a, b| {
        b.payer_set
            .len()
            .cmp(&a.payer_set.len())
            .then_with(|| a.payer_set.lex_cmp(&b.payer_set))
    });
    constraints.dedup_by(|a, b| a.payer_set == b.payer_set && a.bound == b.bound);
    Ok(CoreSystem {
        constraints,
        allocation: *alloc,
        bids: bids.clone(),
    })
}

/// Whether dropping `candidate` leaves the core unchanged.
pub fn is_constraint_redundant(system: &CoreSystem, candidate: &CoreConstraint) -> Result<bool> {
    let others: Vec<&CoreConstraint> = system.constraints.iter().filter(|c| *c != candidate).collect();
    Ok(system.min_payer_sum(candidate.payer_set, &others)? >= candidate.bound)
}

/// Whether `other` holds everywhere on `{keep} ∪ caps`.
fn implied_by(system: &CoreSystem, keep: &CoreConstraint, other: &CoreConstraint) -> Result<bool> {
    Ok(system.min_payer_sum(other.payer_set, &[keep])? >= other.bound)
}

/// The single constraint that, with the participation caps, cuts out the
/// whole core for this bid profile, if there is one. An empty system has no
/// such constraint.
pub fn detect_secc(system: &CoreSystem) -> Result<Option<CoreConstraint>> {
    'candidates: for keep in &system.constraints {
        for other in &system.constraints {
            if other == keep {
                continue;
            }
            if !implied_by(system, keep, other)? {
                continue 'candidates;
            }
        }
        return Ok(Some(keep.clone()));
    }
    Ok(None)
}

/// Minimum total payment over the core.
pub fn minimum_revenue(system: &CoreSystem) -> Result<Rational> {
    let rows: Vec<&CoreConstraint> = system.constraints.iter().collect();
    system.min_payer_sum(system.winners(), &rows)
}

#[derive(Serialize)]
pub struct ConstraintView {
    pub payer_set: Vec<usize>,
    pub bound: String,
    pub origin_coalition: Vec<usize>,
    pub vcg_constraint: bool,
}

impl From<&CoreConstraint> for ConstraintView {
    fn from(c: &CoreConstraint) -> Self {
        ConstraintView {
            payer_set: c.payer_set.iter().map(|i| i + 1).collect(),
            bound: c.bound.to_string(),
            origin_coalition: c.origin_coalition.iter().map(|i| i + 1).collect(),
            vcg_constraint: c.vcg_constraint,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auction::winner_determination;
    use crate::rational::int;

    fn llg() -> InterestProfile {
        InterestProfile::from_item_lists(&[&[0], &[1], &[0, 1]], 2).unwrap()
    }

    fn bull() -> InterestProfile {
        InterestProfile::from_item_lists(&[&[0], &[1], &[2], &[0, 1], &[0, 2]], 3).unwrap()
    }

    fn set(ix: &[usize]) -> BidderSet {
        BidderSet::from_indices(ix.iter().copied())
    }

    fn system_for(profile: &InterestProfile, bids: &[i128]) -> CoreSystem {
        let bids = BidProfile::from_integers(bids).unwrap();
        let alloc = winner_determination(profile, &bids, None).unwrap();
        enumerate_core_constraints(profile, &bids, &alloc).unwrap()
    }

    #[test]
    fn llg_rows() {
        let sys = system_for(&llg(), &[6, 7, 9]);
        let rows: Vec<(BidderSet, Rational, bool)> = sys
            .constraints
            .iter()
            .map(|c| (c.payer_set, c.bound, c.vcg_constraint))
            .collect();
        assert_eq!(
            rows,
            vec![
                (set(&[0, 1]), int(9), false),
                (set(&[0]), int(2), true),
                (set(&[1]), int(3), true),
            ]
        );
        assert_eq!(sys.constraints[0].origin_coalition, set(&[2]));
    }

    #[test]
    fn llg_redundancy() {
        let sys = system_for(&llg(), &[6, 7, 9]);
        let joint = sys.find(set(&[0, 1])).unwrap();
        assert!(!is_constraint_redundant(&sys, joint).unwrap());
        assert!(is_constraint_redundant(&sys, sys.find(set(&[0])).unwrap()).unwrap());
        assert!(is_constraint_redundant(&sys, sys.find(set(&[1])).unwrap()).unwrap());
        assert_eq!(detect_secc(&sys).unwrap().unwrap().payer_set, set(&[0, 1]));
        assert_eq!(minimum_revenue(&sys).unwrap(), int(9));
    }

    #[test]
    fn single_constraint_is_not_redundant() {
        let profile = InterestProfile::from_item_lists(&[&[0], &[0]], 1).unwrap();
        let sys = system_for(&profile, &[5, 3]);
        assert_eq!(sys.constraints.len(), 1);
        assert!(!is_constraint_redundant(&sys, &sys.constraints[0]).unwrap());
        assert_eq!(detect_secc(&sys).unwrap(), Some(sys.constraints[0].clone()));
    }

    #[test]
    fn uncontested_winner_has_no_rows() {
        let profile = InterestProfile::from_item_lists(&[&[0], &[1]], 2).unwrap();
        let sys = system_for(&profile, &[5, 3]);
        assert!(sys.constraints.is_empty());
        assert_eq!(minimum_revenue(&sys).unwrap(), int(0));
        assert_eq!(detect_secc(&sys).unwrap(), None);
    }

    #[test]
    fn bull_effective_rows_are_the_two_pairs() {
        let sys = system_for(&bull(), &[5, 4, 4, 6, 6]);
        assert_eq!(sys.winners(), set(&[0, 1, 2]));
        let mut effective = Vec::new();
        for c in sys.coalition_constraints() {
            if !is_constraint_redundant(&sys, c).unwrap() {
                effective.push((c.payer_set, c.bound));
            }
        }
        assert_eq!(effective, vec![(set(&[0, 1]), int(6)), (set(&[0, 2]), int(6))]);
        assert_eq!(sys.find(set(&[0])).unwrap().bound, int(2));
        assert_eq!(sys.find(set(&[1])).unwrap().bound, int(1));
        assert_eq!(sys.find(set(&[2])).unwrap().bound, int(1));
    }

    #[test]
    fn bull_has_no_secc_when_both_pairs_bind() {
        let sys = system_for(&bull(), &[5, 4, 4, 6, 6]);
        let a = sys.find(set(&[0, 1])).unwrap();
        let b = sys.find(set(&[0, 2])).unwrap();
        assert!(!implied_by(&sys, a, b).unwrap());
        assert!(!implied_by(&sys, b, a).unwrap());
        assert_eq!(detect_secc(&sys).unwrap(), None);
        assert_eq!(minimum_revenue(&sys).unwrap(), int(7));
    }

    #[test]
    fn inefficient_allocation_is_rejected() {
        let bids = BidProfile::from_integers(&[1, 1, 9]).unwrap();
        let err = enumerate_core_constraints(&llg(), &bids, &Allocation::from_winners(&[0, 1])).unwrap_err();
        assert!(matches!(err, Error::NotEfficient(_)));
        let overlap = Allocation::from_winners(&[0, 2]);
        assert!(matches!(
            enumerate_core_constraints(&llg(), &bids, &overlap).unwrap_err(),
            Error::Input(_)
        ));
    }

    mod props {
        use super::*;
        use crate::auction::ItemBundle;
        use proptest::prelude::*;

        fn instance() -> impl Strategy<Value = (InterestProfile, BidProfile)> {
            (2usize..=6, 2usize..=4).prop_flat_map(|(n, m)| {
                (
                    proptest::collection::vec(1u64..(1 << m), n),
                    proptest::collection::vec((0i128..20, 1i128..3), n),
                )
                    .prop_map(move |(bundles, bids)| {
                        let bundles = bundles.into_iter().map(ItemBundle::from_bits).collect();
                        let bids = bids.into_iter().map(|(a, b)| Rational::new(a, b)).collect();
                        (
                            InterestProfile::new(bundles, m).unwrap(),
                            BidProfile::new(bids).unwrap(),
                        )
                    })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(150))]
            #[test]
            fn system_invariants((profile, bids) in instance()) {
                let alloc = winner_determination(&profile, &bids, None).unwrap();
                let sys = enumerate_core_constraints(&profile, &bids, &alloc).unwrap();
                let n = profile.bidder_count();
                let first_price: Vec<Rational> = (0..n)
                    .map(|i| if alloc.is_winner(i) { *bids.get(i) } else { int(0) })
                    .collect();
                prop_assert!(sys.contains(&first_price));
                let revenue = minimum_revenue(&sys).unwrap();
                prop_assert!(revenue <= bids.sum_over(alloc.winners()));
                for c in &sys.constraints {
                    prop_assert!(c.bound > int(0));
                    prop_assert!(c.payer_set.is_subset(alloc.winners()));
                    prop_assert!(revenue >= c.bound);
                }
                if let Some(secc) = detect_secc(&sys).unwrap() {
                    for c in sys.constraints.iter().filter(|c| **c != secc) {
                        prop_assert!(is_constraint_redundant(&sys, c).unwrap());
                    }
                }
            }

            #[test]
            fn renumbering_bidders_renumbers_the_system(
                (profile, bids) in instance(),
                seed in any::<u64>(),
            ) {
                use rand::seq::SliceRandom;
                use rand::SeedableRng;
                let n = profile.bidder_count();
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
                // bidder i of the original becomes bidder perm[i]
                let mut bundles = vec![ItemBundle::default(); n];
                let mut permuted_bids = vec![int(0); n];
                for i in 0..n {
                    bundles[perm[i]] = profile.bundle(i);
                    permuted_bids[perm[i]] = *bids.get(i);
                }
                let other = InterestProfile::new(bundles, profile.item_count()).unwrap();
                let other_bids = BidProfile::new(permuted_bids).unwrap();
                let map = |s: BidderSet| BidderSet::from_indices(s.iter().map(|i| perm[i]));

                let alloc = winner_determination(&profile, &bids, None).unwrap();
                let moved = Allocation::new(map(alloc.winners()));
                let a = enumerate_core_constraints(&profile, &bids, &alloc).unwrap();
                let b = enumerate_core_constraints(&other, &other_bids, &moved).unwrap();
                let mut mapped: Vec<(BidderSet, Rational)> =
                    a.constraints.iter().map(|c| (map(c.payer_set), c.bound)).collect();
                let mut direct: Vec<(BidderSet, Rational)> =
                    b.constraints.iter().map(|c| (c.payer_set, c.bound)).collect();
                mapped.sort_by_key(|(s, _)| s.mask());
                direct.sort_by_key(|(s, _)| s.mask());
                prop_assert_eq!(mapped, direct);
            }
        }
    }
}
