//! Payment rules: first price, VCG, VCG-nearest, proxy and proportional.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::auction::{max_welfare, Allocation, BidProfile, BidderSet, InterestProfile};
use crate::core_constraints::{detect_secc, enumerate_core_constraints, minimum_revenue, CoreConstraint, CoreSystem};
use crate::error::{Error, Result};
use crate::qp::{project, LinearConstraint};
use crate::rational::Rational;

/// Active-set bound on the number of winners for the VCG-nearest solver.
pub const MAX_VN_WINNERS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PaymentVector(Vec<Rational>);

impl PaymentVector {
    pub fn new(payments: Vec<Rational>) -> Self {
        PaymentVector(payments)
    }

    pub fn zeros(n: usize) -> Self {
        PaymentVector(vec![Rational::zero(); n])
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |s, p| s + p)
    }

    /// `0 ≤ p_i ≤ b_i` for winners, `p_i = 0` for losers.
    pub fn respects_participation(&self, bids: &BidProfile, alloc: &Allocation) -> bool {
        self.0.len() == bids.len()
            && self.0.iter().enumerate().all(|(i, p)| {
                if alloc.is_winner(i) {
                    *p >= Rational::zero() && p <= bids.get(i)
                } else {
                    p.is_zero()
                }
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeccSolution {
    /// Winners whose cap `p_i = b_i` binds.
    pub active_cap_set: BidderSet,
    pub delta: Rational,
    pub secc_bound: Rational,
    pub secc_payers: BidderSet,
}

pub fn first_price(bids: &BidProfile, alloc: &Allocation) -> PaymentVector {
    PaymentVector(
        (0..bids.len())
            .map(|i| {
                if alloc.is_winner(i) {
                    *bids.get(i)
                } else {
                    Rational::zero()
                }
            })
            .collect(),
    )
}

/// `p_i^V = W(b, X(b_{-i})) − W(b, x_{-i})` for winners.
pub fn vcg_payments(profile: &InterestProfile, bids: &BidProfile, alloc: &Allocation) -> Result<PaymentVector> {
    alloc.check_feasible(profile)?;
    let everyone = profile.all_bidders();
    let winners = alloc.winners();
    let mut payments = vec![Rational::zero(); bids.len()];
    for i in winners.iter() {
        let without = max_welfare(profile, bids, everyone.without(i))?;
        let others = bids.sum_over(winners.without(i));
        let p = without - others;
        if p < Rational::zero() {
            return Err(Error::NotEfficient(format!(
                "dropping bidder {} raises welfare above the allocation's",
                i + 1
            )));
        }
        payments[i] = p;
    }
    Ok(PaymentVector(payments))
}

/// The minimum-revenue core point closest to the VCG point.
pub fn vn_payment(profile: &InterestProfile, bids: &BidProfile, alloc: &Allocation) -> Result<PaymentVector> {
    let system = enumerate_core_constraints(profile, bids, alloc)?;
    let vcg = vcg_payments(profile, bids, alloc)?;
    vn_from_system(&system, &vcg)
}

pub fn vn_from_system(system: &CoreSystem, vcg: &PaymentVector) -> Result<PaymentVector> {
    let winners: Vec<usize> = system.winners().to_vec();
    if winners.len() > MAX_VN_WINNERS {
        return Err(Error::Capacity {
            what: "winner count",
            size: winners.len(),
            limit: MAX_VN_WINNERS,
        });
    }
    let n = system.bids.len();
    if system.constraints.is_empty() {
        return Ok(PaymentVector::zeros(n));
    }
    let revenue = minimum_revenue(system)?;
    let target: Vec<Rational> = winners.iter().map(|&w| *vcg.get(w)).collect();

    let solve = |with_vcg_rows: bool| -> Result<Vec<Rational>> {
        let d = winners.len();
        let one = Rational::from_integer(1);
        let mut rows = vec![LinearConstraint::equal(vec![one; d], revenue)];
        for c in &system.constraints {
            if c.vcg_constraint && !with_vcg_rows {
                continue;
            }
            let coeffs = winners
                .iter()
                .map(|&w| if c.payer_set.contains(w) { one } else { Rational::zero() })
                .collect();
            rows.push(LinearConstraint::at_least(coeffs, c.bound));
        }
        for k in 0..d {
            let mut lower = vec![Rational::zero(); d];
            lower[k] = one;
            let upper = lower.iter().map(|v| -v).collect();
            rows.push(LinearConstraint::at_least(lower, Rational::zero()));
            rows.push(LinearConstraint::at_least(upper, -*system.bids.get(winners[k])));
        }
        project(&target, &rows)
    };

    let expand = |point: Vec<Rational>| {
        let mut full = vec![Rational::zero(); n];
        for (&w, p) in winners.iter().zip(point) {
            full[w] = p;
        }
        PaymentVector(full)
    };

    let payments = expand(solve(false)?);
    if system
        .constraints
        .iter()
        .all(|c| c.is_satisfied_by(payments.as_slice()))
    {
        return Ok(payments);
    }
    Ok(expand(solve(true)?))
}

/// Closed-form VCG-nearest payments when `secc` alone (with the caps) cuts
/// out the core: winners outside the constraint keep their VCG payment, the
/// rest share the shortfall equally until their caps bind.
pub fn vn_payment_secc(
    bids: &BidProfile,
    alloc: &Allocation,
    secc: &CoreConstraint,
    vcg: &PaymentVector,
) -> Result<(PaymentVector, SeccSolution)> {
    let payers = secc.payer_set.intersection(alloc.winners());
    if payers.is_empty() {
        return Err(Error::input("the effective constraint involves no winner"));
    }
    if payers != secc.payer_set {
        return Err(Error::input("the effective constraint charges a losing bidder"));
    }
    let mut payments: Vec<Rational> = (0..bids.len())
        .map(|i| {
            if alloc.is_winner(i) {
                *vcg.get(i)
            } else {
                Rational::zero()
            }
        })
        .collect();

    let mut capped = BidderSet::EMPTY;
    let delta = loop {
        let free = payers.difference(capped);
        if free.is_empty() {
            break Rational::zero();
        }
        let shortfall = secc.bound - free.iter().fold(Rational::zero(), |s, j| s + vcg.get(j)) - bids.sum_over(capped);
        let delta = shortfall / Rational::from_integer(free.len() as i128);
        if delta <= Rational::zero() {
            // The VCG point already meets the constraint.
            break Rational::zero();
        }
        let over: Vec<usize> = free.iter().filter(|&j| *vcg.get(j) + delta > *bids.get(j)).collect();
        if over.is_empty() {
            break delta;
        }
        for j in over {
            capped = capped.with(j);
        }
    };
    for j in payers.iter() {
        payments[j] = if capped.contains(j) {
            *bids.get(j)
        } else {
            *vcg.get(j) + delta
        };
    }
    Ok((
        PaymentVector(payments),
        SeccSolution {
            active_cap_set: capped,
            delta,
            secc_bound: secc.bound,
            secc_payers: payers,
        },
    ))
}

/// Equal shares `p_i = min(α, b_i)` with the smallest α that reaches the core.
pub fn proxy_payment(profile: &InterestProfile, bids: &BidProfile, alloc: &Allocation) -> Result<PaymentVector> {
    let system = enumerate_core_constraints(profile, bids, alloc)?;
    Ok(proxy_from_system(&system).0)
}

/// Also returns the share level α.
pub fn proxy_from_system(system: &CoreSystem) -> (PaymentVector, Rational) {
    let bids = &system.bids;
    let mut alpha = Rational::zero();
    for c in &system.constraints {
        alpha = alpha.max(smallest_share_level(c, bids));
    }
    let payments = (0..bids.len())
        .map(|i| {
            if system.winners().contains(i) {
                alpha.min(*bids.get(i))
            } else {
                Rational::zero()
            }
        })
        .collect();
    (PaymentVector(payments), alpha)
}

/// Smallest α with `Σ_{i∈S} min(α, b_i) ≥ B`, walking the breakpoints of
/// the piecewise-linear left-hand side in increasing bid order.
fn smallest_share_level(c: &CoreConstraint, bids: &BidProfile) -> Rational {
    let mut caps: Vec<Rational> = c.payer_set.iter().map(|i| *bids.get(i)).collect();
    caps.sort();
    let mut settled = Rational::zero();
    let mut uncapped = caps.len() as i128;
    for cap in &caps {
        // On [previous cap, cap] the sum is settled + uncapped·α.
        let alpha = (c.bound - settled) / Rational::from_integer(uncapped);
        if alpha <= *cap {
            return alpha.max(Rational::zero());
        }
        settled += cap;
        uncapped -= 1;
    }
    // Unreachable for efficient allocations: the bids satisfy every row.
    caps.last().copied().unwrap_or_else(Rational::zero)
}

/// `p_i = α·b_i` with the smallest α that reaches the core.
pub fn proportional_payment(profile: &InterestProfile, bids: &BidProfile, alloc: &Allocation) -> Result<PaymentVector> {
    let system = enumerate_core_constraints(profile, bids, alloc)?;
    Ok(proportional_from_system(&system)?.0)
}

pub fn proportional_from_system(system: &CoreSystem) -> Result<(PaymentVector, Rational)> {
    let bids = &system.bids;
    let mut alpha = Rational::zero();
    for c in &system.constraints {
        let total = bids.sum_over(c.payer_set);
        if total.is_zero() {
            return Err(Error::NotEfficient(format!(
                "payers {} bid nothing yet must cover {}",
                c.payer_set, c.bound
            )));
        }
        alpha = alpha.max(c.bound / total);
    }
    assert!(
        alpha <= Rational::from_integer(1),
        "proportional scale above one for an efficient allocation"
    );
    let payments = (0..bids.len())
        .map(|i| {
            if system.winners().contains(i) {
                alpha * bids.get(i)
            } else {
                Rational::zero()
            }
        })
        .collect();
    Ok((PaymentVector(payments), alpha))
}

/// A payment rule, selectable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PaymentRule {
    FirstPrice,
    Vcg,
    VcgNearest,
    Proxy,
    Proportional,
}

impl PaymentRule {
    pub const ALL: [PaymentRule; 5] = [
        PaymentRule::FirstPrice,
        PaymentRule::Vcg,
        PaymentRule::VcgNearest,
        PaymentRule::Proxy,
        PaymentRule::Proportional,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PaymentRule::FirstPrice => "first-price",
            PaymentRule::Vcg => "vcg",
            PaymentRule::VcgNearest => "vn",
            PaymentRule::Proxy => "proxy",
            PaymentRule::Proportional => "proportional",
        }
    }

    /// VCG is the only rule here that can leave the core.
    pub fn is_core_selecting(&self) -> bool {
        !matches!(self, PaymentRule::Vcg)
    }

    pub fn compute(&self, profile: &InterestProfile, bids: &BidProfile, alloc: &Allocation) -> Result<PaymentVector> {
        match self {
            PaymentRule::FirstPrice => {
                alloc.check_feasible(profile)?;
                Ok(first_price(bids, alloc))
            }
            PaymentRule::Vcg => vcg_payments(profile, bids, alloc),
            PaymentRule::VcgNearest => vn_payment(profile, bids, alloc),
            PaymentRule::Proxy => proxy_payment(profile, bids, alloc),
            PaymentRule::Proportional => proportional_payment(profile, bids, alloc),
        }
    }
}

impl fmt::Display for PaymentRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PaymentRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "first-price" | "first_price" | "fp" => Ok(PaymentRule::FirstPrice),
            "vcg" => Ok(PaymentRule::Vcg),
            "vn" | "vcg-nearest" | "vcg_nearest" => Ok(PaymentRule::VcgNearest),
            "proxy" => Ok(PaymentRule::Proxy),
            "proportional" | "prop" => Ok(PaymentRule::Proportional),
            other => Err(Error::Parse(format!("unknown payment rule {other:?}"))),
        }
    }
}

/// VN via the closed form when this profile has an effective constraint,
/// otherwise via the general projection.
pub fn vn_payment_auto(profile: &InterestProfile, bids: &BidProfile, alloc: &Allocation) -> Result<PaymentVector> {
    let system = enumerate_core_constraints(profile, bids, alloc)?;
    let vcg = vcg_payments(profile, bids, alloc)?;
    match detect_secc(&system)? {
        Some(secc) => Ok(vn_payment_secc(bids, alloc, &secc, &vcg)?.0),
        None => vn_from_system(&system, &vcg),
    }
}
