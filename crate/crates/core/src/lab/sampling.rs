//! Sampled SECC certification. The existence of an SECC is a statement
//! about every bid profile; sampling can only collect evidence for it.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::auction::{winner_determination, BidProfile, BidderSet, InterestProfile, ItemBundle};
use crate::core_constraints::{detect_secc, enumerate_core_constraints};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct SamplingOptions {
    pub lo: Rational,
    pub hi: Rational,
    /// Bids are `k/d` with `1 ≤ d ≤ max_denominator`.
    pub max_denominator: i128,
    /// Keep only profiles whose efficient allocation has exactly these winners.
    pub condition_winners: Option<BidderSet>,
    /// Cap on draws when conditioning rejects samples.
    pub max_attempts: usize,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        SamplingOptions {
            lo: Rational::from_integer(1),
            hi: Rational::from_integer(10),
            max_denominator: 8,
            condition_winners: None,
            max_attempts: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeccCertification {
    pub samples: usize,
    pub attempts: usize,
    /// Samples where an SECC existed, counting vacuous ones.
    pub with_secc: usize,
    /// Samples whose core system had no constraints at all.
    pub vacuous: usize,
    /// Distinct SECC payer sets seen per winner set.
    pub payer_sets: BTreeMap<u64, Vec<BidderSet>>,
    pub first_failure: Option<BidProfile>,
}

impl SeccCertification {
    pub fn fraction_with_secc(&self) -> Rational {
        if self.samples == 0 {
            return Rational::from_integer(0);
        }
        Rational::new(self.with_secc as i128, self.samples as i128)
    }

    pub fn all_secc(&self) -> bool {
        self.samples > 0 && self.with_secc == self.samples
    }

    /// Whether each winner set always had the same SECC payer set.
    pub fn payer_sets_stable(&self) -> bool {
        self.payer_sets.values().all(|sets| sets.len() <= 1)
    }
}

fn random_rational(rng: &mut ChaCha8Rng, lo: Rational, hi: Rational, max_denominator: i128) -> Rational {
    let d = rng.gen_range(1..=max_denominator);
    let scaled_lo = (lo * d).ceil().to_integer();
    let scaled_hi = (hi * d).floor().to_integer();
    if scaled_lo > scaled_hi {
        // no multiple of 1/d in range; fall back to integral endpoints
        return lo;
    }
    Rational::new(rng.gen_range(scaled_lo..=scaled_hi), d)
}

pub fn random_bid_profile(
    rng: &mut ChaCha8Rng,
    n: usize,
    lo: Rational,
    hi: Rational,
    max_denominator: i128,
) -> Result<BidProfile> {
    if lo < Rational::from_integer(0) || hi < lo || max_denominator < 1 {
        return Err(Error::input(
            "sampling needs 0 ≤ lo ≤ hi and a positive denominator cap",
        ));
    }
    BidProfile::new((0..n).map(|_| random_rational(rng, lo, hi, max_denominator)).collect())
}

/// Every bidder gets a non-empty bundle; each item is included with
/// probability 1/2.
pub fn random_interest_profile(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Result<InterestProfile> {
    if m == 0 || m > 64 {
        return Err(Error::input("item count must be between 1 and 64"));
    }
    let bundles = (0..n)
        .map(|_| loop {
            let items: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
            if !items.is_empty() {
                break ItemBundle::from_items(&items);
            }
        })
        .collect::<Result<Vec<_>>>()?;
    InterestProfile::new(bundles, m)
}

pub fn certify_secc_sampled(
    profile: &InterestProfile,
    samples: usize,
    seed: u64,
    options: &SamplingOptions,
) -> Result<SeccCertification> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = profile.bidder_count();
    let mut report = SeccCertification {
        samples: 0,
        attempts: 0,
        with_secc: 0,
        vacuous: 0,
        payer_sets: BTreeMap::new(),
        first_failure: None,
    };
    while report.samples < samples && report.attempts < options.max_attempts {
        report.attempts += 1;
        let bids = random_bid_profile(&mut rng, n, options.lo, options.hi, options.max_denominator)?;
        let alloc = winner_determination(profile, &bids, None)?;
        if let Some(want) = options.condition_winners {
            if alloc.winners() != want {
                continue;
            }
        }
        report.samples += 1;
        let system = enumerate_core_constraints(profile, &bids, &alloc)?;
        if system.constraints.is_empty() {
            report.vacuous += 1;
            report.with_secc += 1;
            continue;
        }
        match detect_secc(&system)? {
            Some(c) => {
                report.with_secc += 1;
                let seen = report.payer_sets.entry(alloc.winners().mask()).or_default();
                if !seen.contains(&c.payer_set) {
                    seen.push(c.payer_set);
                }
            }
            None => {
                if report.first_failure.is_none() {
                    report.first_failure = Some(bids);
                }
            }
        }
    }
    Ok(report)
}
