use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Per-bidder bid ranges `[lo, hi]` walked in steps of `step`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BidGrid {
    ranges: Vec<(Rational, Rational)>,
    step: Rational,
}

impl BidGrid {
    pub fn new(ranges: Vec<(Rational, Rational)>, step: Rational) -> Result<Self> {
        if step <= Rational::zero() {
            return Err(Error::input("grid step must be positive"));
        }
        for (i, (lo, hi)) in ranges.iter().enumerate() {
            if *lo < Rational::zero() {
                return Err(Error::input(format!("grid for bidder {} starts below zero", i + 1)));
            }
            if hi < lo {
                return Err(Error::input(format!("grid for bidder {} has hi < lo", i + 1)));
            }
        }
        Ok(BidGrid { ranges, step })
    }

    pub fn uniform(bidders: usize, lo: Rational, hi: Rational, step: Rational) -> Result<Self> {
        Self::new(vec![(lo, hi); bidders], step)
    }

    pub fn bidder_count(&self) -> usize {
        self.ranges.len()
    }

    pub fn step(&self) -> Rational {
        self.step
    }

    pub fn range(&self, i: usize) -> (Rational, Rational) {
        self.ranges[i]
    }

    /// `lo, lo + step, …` up to and including `hi` when it is hit exactly.
    pub fn values(&self, i: usize) -> Vec<Rational> {
        let (lo, hi) = self.ranges[i];
        let mut out = Vec::new();
        let mut v = lo;
        while v <= hi {
            out.push(v);
            v += self.step;
        }
        out
    }

    /// Number of full bid profiles, or `None` on overflow.
    pub fn profile_count(&self) -> Option<usize> {
        (0..self.bidder_count()).try_fold(1usize, |acc, i| acc.checked_mul(self.values(i).len()))
    }
}
