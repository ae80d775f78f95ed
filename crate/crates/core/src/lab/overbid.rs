//! Overbidding checks. A bidder with value `v_i` either wins when truthful
//! (then raising the bid keeps the allocation efficient, and a
//! non-decreasing rule can only charge more) or loses (then any winning
//! overbid is charged at least the overbid itself).

use num_traits::Zero;

use crate::auction::{
    is_efficient, max_welfare, winner_determination, Allocation, BidProfile, InterestProfile, ValuationProfile,
};
use crate::error::{Error, Result};
use crate::payments::{vcg_payments, PaymentRule};
use crate::rational::Rational;

use super::grid::BidGrid;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Opponents {
    /// Everyone else bids their value.
    Truthful,
    /// Everyone else ranges over the grid.
    Grid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverbidPath {
    WinningTruthful,
    LosingTruthful,
}

/// A profitable overbid: `utility_overbid > utility_truthful`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverbidReport {
    pub rule: PaymentRule,
    pub bidder: usize,
    pub value: Rational,
    pub truthful_bids: BidProfile,
    pub overbid: Rational,
    pub truthful_allocation: Allocation,
    pub overbid_allocation: Allocation,
    pub utility_truthful: Rational,
    pub utility_overbid: Rational,
    pub path: OverbidPath,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OverbidOutcome {
    pub overbids_checked: usize,
    pub winning_truthful: usize,
    pub losing_truthful: usize,
    pub violation: Option<OverbidReport>,
}

/// Allocation chosen under `bids` and bidder `i`'s resulting utility.
fn outcome(
    profile: &InterestProfile,
    rule: PaymentRule,
    bids: &BidProfile,
    i: usize,
    value: &Rational,
) -> Result<(Allocation, Rational)> {
    let alloc = winner_determination(profile, bids, None)?;
    if !alloc.is_winner(i) {
        return Ok((alloc, Rational::zero()));
    }
    let payments = rule.compute(profile, bids, &alloc)?;
    Ok((alloc, value - payments.get(i)))
}

/// Calls `f` with every assignment of grid bids to all bidders except `skip`
/// (whose slot is left at zero), in lexicographic order.
fn for_each_context<F>(grid: &BidGrid, skip: usize, mut f: F) -> Result<()>
where
    F: FnMut(Vec<Rational>) -> Result<bool>,
{
    let n = grid.bidder_count();
    let values: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            if i == skip {
                vec![Rational::zero()]
            } else {
                grid.values(i)
            }
        })
        .collect();
    let mut digits = vec![0usize; n];
    loop {
        let bids = digits.iter().enumerate().map(|(i, &d)| values[i][d]).collect();
        if !f(bids)? {
            return Ok(());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < values[i].len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

fn context_count(grid: &BidGrid, skip: usize) -> usize {
    (0..grid.bidder_count())
        .filter(|&j| j != skip)
        .map(|j| grid.values(j).len())
        .fold(1usize, |acc, k| acc.saturating_mul(k))
}

/// For each bidder, compares truthful bidding at `valuations[i]` against
/// every grid overbid above it, with the other bids fixed by `opponents`.
pub fn check_overbid_dominance(
    profile: &InterestProfile,
    rule: PaymentRule,
    valuations: &ValuationProfile,
    grid: &BidGrid,
    opponents: Opponents,
    budget: usize,
) -> Result<OverbidOutcome> {
    let n = profile.bidder_count();
    if valuations.len() != n || grid.bidder_count() != n {
        return Err(Error::input(
            "valuations, grid and auction disagree on the bidder count",
        ));
    }
    let mut result = OverbidOutcome::default();
    let total: usize = (0..n)
        .map(|i| match opponents {
            Opponents::Truthful => 1,
            Opponents::Grid => context_count(grid, i),
        })
        .zip(0..n)
        .fold(0usize, |acc, (k, i)| {
            acc.saturating_add(k.saturating_mul(grid.values(i).len() + 1))
        });
    if total > budget {
        return Err(Error::Budget {
            budget,
            covered: 0,
            total,
        });
    }
    for i in 0..n {
        let value = *valuations.get(i);
        let overbids: Vec<Rational> = grid.values(i).into_iter().filter(|b| *b > value).collect();
        let mut visit = |mut bids: Vec<Rational>| -> Result<bool> {
            bids[i] = value;
            let truthful = BidProfile::new(bids)?;
            let (truthful_allocation, utility_truthful) = outcome(profile, rule, &truthful, i, &value)?;
            let path = if truthful_allocation.is_winner(i) {
                OverbidPath::WinningTruthful
            } else {
                OverbidPath::LosingTruthful
            };
            for overbid in &overbids {
                let bids = truthful.with_bid(i, *overbid)?;
                let (overbid_allocation, utility_overbid) = outcome(profile, rule, &bids, i, &value)?;
                result.overbids_checked += 1;
                match path {
                    OverbidPath::WinningTruthful => result.winning_truthful += 1,
                    OverbidPath::LosingTruthful => result.losing_truthful += 1,
                }
                if utility_overbid > utility_truthful {
                    result.violation = Some(OverbidReport {
                        rule,
                        bidder: i,
                        value,
                        truthful_bids: truthful.clone(),
                        overbid: *overbid,
                        truthful_allocation,
                        overbid_allocation,
                        utility_truthful,
                        utility_overbid,
                        path,
                    });
                    return Ok(false);
                }
            }
            Ok(true)
        };
        match opponents {
            Opponents::Truthful => {
                visit(valuations.as_slice().to_vec())?;
            }
            Opponents::Grid => for_each_context(grid, i, &mut visit)?,
        }
        if result.violation.is_some() {
            break;
        }
    }
    Ok(result)
}

/// Every value/overbid pair on the grid: along each line `b_{-i}`, the
/// payment at every grid bid is computed once, and for each value `g_a` and
/// each overbid `g_c > g_a` the overbid utility `g_a − p_i(g_c)` (if
/// winning) must not beat the truthful one.
pub fn check_overbid_lines(
    profile: &InterestProfile,
    rule: PaymentRule,
    grid: &BidGrid,
    budget: usize,
) -> Result<OverbidOutcome> {
    let n = profile.bidder_count();
    if grid.bidder_count() != n {
        return Err(Error::input(format!(
            "grid covers {} bidders, auction has {n}",
            grid.bidder_count()
        )));
    }
    let total = grid.profile_count().map(|p| p.saturating_mul(n)).unwrap_or(usize::MAX);
    if total > budget {
        return Err(Error::Budget {
            budget,
            covered: 0,
            total,
        });
    }
    let mut result = OverbidOutcome::default();
    for i in 0..n {
        let own = grid.values(i);
        for_each_context(grid, i, |context| {
            let mut line: Vec<(Allocation, Rational)> = Vec::with_capacity(own.len());
            for bid in &own {
                let mut bids = context.clone();
                bids[i] = *bid;
                let bids = BidProfile::new(bids)?;
                let alloc = winner_determination(profile, &bids, None)?;
                let paid = if alloc.is_winner(i) {
                    *rule.compute(profile, &bids, &alloc)?.get(i)
                } else {
                    Rational::zero()
                };
                line.push((alloc, paid));
            }
            for (a, value) in own.iter().enumerate() {
                let (truthful_allocation, paid) = &line[a];
                let wins = truthful_allocation.is_winner(i);
                let utility_truthful = if wins { value - paid } else { Rational::zero() };
                let path = if wins {
                    OverbidPath::WinningTruthful
                } else {
                    OverbidPath::LosingTruthful
                };
                for c in a + 1..own.len() {
                    let (overbid_allocation, paid_over) = &line[c];
                    let utility_overbid = if overbid_allocation.is_winner(i) {
                        value - paid_over
                    } else {
                        Rational::zero()
                    };
                    result.overbids_checked += 1;
                    match path {
                        OverbidPath::WinningTruthful => result.winning_truthful += 1,
                        OverbidPath::LosingTruthful => result.losing_truthful += 1,
                    }
                    if utility_overbid > utility_truthful {
                        let mut truthful = context.clone();
                        truthful[i] = *value;
                        result.violation = Some(OverbidReport {
                            rule,
                            bidder: i,
                            value: *value,
                            truthful_bids: BidProfile::new(truthful)?,
                            overbid: own[c],
                            truthful_allocation: *truthful_allocation,
                            overbid_allocation: *overbid_allocation,
                            utility_truthful,
                            utility_overbid,
                            path,
                        });
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })?;
        if result.violation.is_some() {
            break;
        }
    }
    Ok(result)
}

/// The smallest overbid that lets a strictly losing bidder win.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCase {
    pub bidder: usize,
    pub epsilon: Rational,
    pub overbid: Rational,
    pub truthful_allocation: Allocation,
    pub overbid_allocation: Allocation,
    pub vcg_payment: Rational,
    pub rule_payment: Rational,
    pub utility: Rational,
}

/// `ε = W(b^v, x^v) − W(b^v, x^o)`, where `x^o` is the best allocation
/// containing bidder `i`; bidding `v_i + ε` makes `x^o` efficient, and the
/// VCG payment there equals the overbid. `None` if `i` does not strictly lose.
pub fn lemma8_boundary(
    profile: &InterestProfile,
    rule: PaymentRule,
    truthful: &BidProfile,
    i: usize,
) -> Result<Option<BoundaryCase>> {
    let everyone = profile.all_bidders();
    let truthful_allocation = winner_determination(profile, truthful, None)?;
    if truthful_allocation.is_winner(i) {
        return Ok(None);
    }
    let compatible = everyone.difference(profile.conflicts_of(i)).without(i);
    let rest = winner_determination(profile, truthful, Some(compatible))?;
    let overbid_allocation = Allocation::new(rest.winners().with(i));
    let best = max_welfare(profile, truthful, everyone)?;
    let with_i = truthful.sum_over(overbid_allocation.winners());
    let epsilon = best - with_i;
    if epsilon <= Rational::zero() {
        return Ok(None);
    }
    let value = *truthful.get(i);
    let overbid = value + epsilon;
    let bids = truthful.with_bid(i, overbid)?;
    if !is_efficient(profile, &bids, &overbid_allocation)? {
        return Err(Error::Solver(
            "boundary overbid does not make the allocation efficient".into(),
        ));
    }
    let vcg_payment = *vcg_payments(profile, &bids, &overbid_allocation)?.get(i);
    let rule_payment = *rule.compute(profile, &bids, &overbid_allocation)?.get(i);
    Ok(Some(BoundaryCase {
        bidder: i,
        epsilon,
        overbid,
        truthful_allocation,
        overbid_allocation,
        vcg_payment,
        rule_payment,
        utility: value - rule_payment,
    }))
}
