//! Monotonicity sweep: raising one's own bid, with the allocation still
//! efficient, must never lower one's own payment.

use crate::auction::{all_efficient_allocations, Allocation, BidProfile, InterestProfile};
use crate::error::{Error, Result};
use crate::payments::{PaymentRule, PaymentVector};
use crate::rational::Rational;

use super::grid::BidGrid;

/// Witness that `rule` is not non-decreasing: `x` is efficient under both
/// profiles, they differ only in bidder `bidder`'s bid, and the higher bid
/// pays strictly less.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolationReport {
    pub rule: PaymentRule,
    pub bidder: usize,
    pub allocation: Allocation,
    pub lower_bids: BidProfile,
    pub higher_bids: BidProfile,
    pub payment_at_lower: Rational,
    pub payment_at_higher: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub profiles: usize,
    pub evaluations: usize,
    pub violation: Option<ViolationReport>,
}

struct LineEntry {
    allocation: u64,
    max_payment: Rational,
    digit: usize,
}

pub fn check_nondecreasing(
    profile: &InterestProfile,
    rule: PaymentRule,
    grid: &BidGrid,
) -> Result<Option<ViolationReport>> {
    Ok(sweep_nondecreasing(profile, rule, grid, super::DEFAULT_BUDGET)?.violation)
}

/// Walks every grid profile in lexicographic order. For each bidder and
/// each line `b_{-i}` it keeps, per efficient allocation, the largest
/// payment seen at a lower own bid; a smaller payment later on the same
/// line is a violation. Only pairs where the allocation is efficient at
/// both ends are compared.
pub fn sweep_nondecreasing(
    profile: &InterestProfile,
    rule: PaymentRule,
    grid: &BidGrid,
    budget: usize,
) -> Result<SweepReport> {
    sweep_with(profile, rule, grid, budget, |p, b, x| rule.compute(p, b, x))
}

pub(crate) fn sweep_with<F>(
    profile: &InterestProfile,
    rule: PaymentRule,
    grid: &BidGrid,
    budget: usize,
    pay: F,
) -> Result<SweepReport>
where
    F: Fn(&InterestProfile, &BidProfile, &Allocation) -> Result<PaymentVector>,
{
    let n = profile.bidder_count();
    if grid.bidder_count() != n {
        return Err(Error::input(format!(
            "grid covers {} bidders, auction has {n}",
            grid.bidder_count()
        )));
    }
    let values: Vec<Vec<Rational>> = (0..n).map(|i| grid.values(i)).collect();
    let total = grid.profile_count().unwrap_or(usize::MAX);
    if total > budget {
        return Err(Error::Budget {
            budget,
            covered: 0,
            total,
        });
    }
    // stride[i]: distance in profile index between neighbours along bidder i.
    let mut stride = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        stride[i] = stride[i + 1] * values[i + 1].len();
    }
    let mut lines: Vec<Vec<Vec<LineEntry>>> = (0..n)
        .map(|i| (0..total / values[i].len()).map(|_| Vec::new()).collect())
        .collect();

    let mut digits = vec![0usize; n];
    let mut evaluations = 0usize;
    for index in 0..total {
        let bids = BidProfile::new(digits.iter().enumerate().map(|(i, &d)| values[i][d]).collect())?;
        for alloc in all_efficient_allocations(profile, &bids, None)? {
            evaluations += 1;
            if evaluations > budget {
                return Err(Error::Budget {
                    budget,
                    covered: index,
                    total,
                });
            }
            let payments = pay(profile, &bids, &alloc)?;
            for i in 0..n {
                let line = (index / (stride[i] * values[i].len())) * stride[i] + index % stride[i];
                let entries = &mut lines[i][line];
                let paid = payments.get(i);
                match entries.iter_mut().find(|e| e.allocation == alloc.winners().mask()) {
                    Some(entry) => {
                        if *paid < entry.max_payment {
                            let lower_bids = bids.with_bid(i, values[i][entry.digit])?;
                            return Ok(SweepReport {
                                profiles: index + 1,
                                evaluations,
                                violation: Some(ViolationReport {
                                    rule,
                                    bidder: i,
                                    allocation: alloc,
                                    lower_bids,
                                    higher_bids: bids,
                                    payment_at_lower: entry.max_payment,
                                    payment_at_higher: *paid,
                                }),
                            });
                        }
                        entry.max_payment = *paid;
                        entry.digit = digits[i];
                    }
                    None => entries.push(LineEntry {
                        allocation: alloc.winners().mask(),
                        max_payment: *paid,
                        digit: digits[i],
                    }),
                }
            }
        }
        // advance the mixed-radix counter, last bidder fastest
        for i in (0..n).rev() {
            digits[i] += 1;
            if digits[i] < values[i].len() {
                break;
            }
            digits[i] = 0;
        }
    }
    Ok(SweepReport {
        profiles: total,
        evaluations,
        violation: None,
    })
}
