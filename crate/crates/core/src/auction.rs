//! Domain types for single-minded auctions and exact winner determination.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Largest item universe a bundle bitset can hold.
pub const MAX_ITEMS: usize = 64;
/// Largest bidder count a [`BidderSet`] can hold.
pub const MAX_BIDDERS: usize = 64;
/// Exhaustive winner determination is only offered up to this many bidders.
pub const MAX_EXHAUSTIVE_BIDDERS: usize = 20;

/// The bundle a single-minded bidder demands, as a bitset over item indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct ItemBundle(u64);

impl ItemBundle {
    pub fn from_items(items: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &item in items {
            if item >= MAX_ITEMS {
                return Err(Error::Capacity {
                    what: "item index",
                    size: item,
                    limit: MAX_ITEMS - 1,
                });
            }
            bits |= 1 << item;
        }
        Ok(ItemBundle(bits))
    }

    pub fn from_bits(bits: u64) -> Self {
        ItemBundle(bits)
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn items(&self) -> Vec<usize> {
        (0..MAX_ITEMS).filter(|i| self.0 >> i & 1 == 1).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn intersects(&self, other: &ItemBundle) -> bool {
        self.0 & other.0 != 0
    }

    fn max_item(&self) -> Option<usize> {
        (!self.is_empty()).then(|| 63 - self.0.leading_zeros() as usize)
    }
}

/// A set of bidder indices, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct BidderSet(u64);

impl BidderSet {
    pub const EMPTY: BidderSet = BidderSet(0);

    pub fn from_mask(mask: u64) -> Self {
        BidderSet(mask)
    }

    /// All bidders `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            BidderSet(u64::MAX)
        } else {
            BidderSet((1u64 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        BidderSet(indices.into_iter().fold(0u64, |m, i| m | 1 << i))
    }

    pub fn mask(&self) -> u64 {
        self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn with(&self, i: usize) -> Self {
        BidderSet(self.0 | 1 << i)
    }

    pub fn without(&self, i: usize) -> Self {
        BidderSet(self.0 & !(1 << i))
    }

    pub fn union(&self, other: BidderSet) -> Self {
        BidderSet(self.0 | other.0)
    }

    pub fn intersection(&self, other: BidderSet) -> Self {
        BidderSet(self.0 & other.0)
    }

    pub fn difference(&self, other: BidderSet) -> Self {
        BidderSet(self.0 & !other.0)
    }

    pub fn is_subset(&self, other: BidderSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of `self`, including the empty set and `self`.
    pub fn subsets(&self) -> impl Iterator<Item = BidderSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current == full {
                None
            } else {
                Some((current.wrapping_sub(full)) & full)
            };
            Some(BidderSet(current))
        })
    }

    /// Lexicographic order of the sorted index sequences, so `{0,2} < {1}`
    /// and `{0} < {0,1}`.
    pub fn lex_cmp(&self, other: &BidderSet) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }
}

impl fmt::Display for BidderSet {
    /// One-based, the way bidders are numbered in reports.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// The public bundles of all bidders, plus their pairwise conflicts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InterestProfile {
    bundles: Vec<ItemBundle>,
    item_count: usize,
    conflicts: Vec<u64>,
}

impl InterestProfile {
    pub fn new(bundles: Vec<ItemBundle>, item_count: usize) -> Result<Self> {
        if item_count > MAX_ITEMS {
            return Err(Error::Capacity {
                what: "item count",
                size: item_count,
                limit: MAX_ITEMS,
            });
        }
        if bundles.len() > MAX_BIDDERS {
            return Err(Error::Capacity {
                what: "bidder count",
                size: bundles.len(),
                limit: MAX_BIDDERS,
            });
        }
        for (i, bundle) in bundles.iter().enumerate() {
            if bundle.is_empty() {
                return Err(Error::input(format!("bidder {} has an empty bundle", i + 1)));
            }
            if let Some(top) = bundle.max_item() {
                if top >= item_count {
                    return Err(Error::input(format!(
                        "bidder {} demands item {top}, but only {item_count} items exist",
                        i + 1
                    )));
                }
            }
        }
        let conflicts = bundles
            .iter()
            .enumerate()
            .map(|(i, a)| {
                bundles
                    .iter()
                    .enumerate()
                    .filter(|&(j, b)| j != i && a.intersects(b))
                    .fold(0u64, |m, (j, _)| m | 1 << j)
            })
            .collect();
        Ok(InterestProfile {
            bundles,
            item_count,
            conflicts,
        })
    }

    /// Convenience constructor from per-bidder item index lists.
    pub fn from_item_lists(lists: &[&[usize]], item_count: usize) -> Result<Self> {
        let bundles = lists
            .iter()
            .map(|items| ItemBundle::from_items(items))
            .collect::<Result<Vec<_>>>()?;
        Self::new(bundles, item_count)
    }

    pub fn bidder_count(&self) -> usize {
        self.bundles.len()
    }

    pub fn item_count(&self) -> usize {
        self.item_count
    }

    pub fn bundles(&self) -> &[ItemBundle] {
        &self.bundles
    }

    pub fn bundle(&self, i: usize) -> ItemBundle {
        self.bundles[i]
    }

    pub fn all_bidders(&self) -> BidderSet {
        BidderSet::full(self.bidder_count())
    }

    /// Bidders whose bundle overlaps bidder `i`'s.
    pub fn conflicts_of(&self, i: usize) -> BidderSet {
        BidderSet(self.conflicts[i])
    }

    /// True iff no two members of `set` demand a common item.
    pub fn is_feasible(&self, set: BidderSet) -> bool {
        set.iter().all(|i| self.conflicts[i] & set.0 == 0)
    }
}

/// Reported bids, one exact non-negative rational per bidder.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BidProfile(Vec<Rational>);

impl BidProfile {
    pub fn new(bids: Vec<Rational>) -> Result<Self> {
        if let Some(i) = bids.iter().position(|b| *b < Rational::zero()) {
            return Err(Error::input(format!("bid of bidder {} is negative", i + 1)));
        }
        Ok(BidProfile(bids))
    }

    pub fn from_integers(bids: &[i128]) -> Result<Self> {
        Self::new(bids.iter().map(|&b| Rational::from_integer(b)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    /// The profile `(value, b_{-i})`.
    pub fn with_bid(&self, i: usize, value: Rational) -> Result<Self> {
        if value < Rational::zero() {
            return Err(Error::input(format!("bid of bidder {} is negative", i + 1)));
        }
        let mut bids = self.0.clone();
        bids[i] = value;
        Ok(BidProfile(bids))
    }

    pub fn sum_over(&self, set: BidderSet) -> Rational {
        set.iter().fold(Rational::zero(), |acc, i| acc + self.0[i])
    }
}

/// True (private) values; only the property lab uses them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValuationProfile(Vec<Rational>);

impl ValuationProfile {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| *v < Rational::zero()) {
            return Err(Error::input(format!("value of bidder {} is negative", i + 1)));
        }
        Ok(ValuationProfile(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    /// Truthful bidding.
    pub fn as_bids(&self) -> BidProfile {
        BidProfile(self.0.clone())
    }
}

/// The set of winning bidders; each receives its whole bundle.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Allocation {
    winners: BidderSet,
}

impl Allocation {
    pub fn new(winners: BidderSet) -> Self {
        Allocation { winners }
    }

    pub fn from_winners(winners: &[usize]) -> Self {
        Allocation::new(BidderSet::from_indices(winners.iter().copied()))
    }

    pub fn winners(&self) -> BidderSet {
        self.winners
    }

    pub fn is_winner(&self, i: usize) -> bool {
        self.winners.contains(i)
    }

    pub fn check_feasible(&self, profile: &InterestProfile) -> Result<()> {
        let n = profile.bidder_count();
        if !self.winners.is_subset(BidderSet::full(n)) {
            return Err(Error::input(format!(
                "allocation {} names a bidder outside 1..={n}",
                self.winners
            )));
        }
        if !profile.is_feasible(self.winners) {
            return Err(Error::input(format!(
                "allocation {} assigns an item twice",
                self.winners
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.winners.fmt(f)
    }
}

/// Sum of the winners' bids. Feasibility is the caller's concern.
pub fn reported_welfare(bids: &BidProfile, alloc: &Allocation) -> Result<Rational> {
    let n = bids.len();
    if !alloc.winners().is_subset(BidderSet::full(n)) {
        return Err(Error::input(format!(
            "allocation {} names a bidder outside 1..={n}",
            alloc.winners()
        )));
    }
    Ok(bids.sum_over(alloc.winners()))
}

fn check_dimensions(profile: &InterestProfile, bids: &BidProfile) -> Result<()> {
    if profile.bidder_count() != bids.len() {
        return Err(Error::input(format!(
            "{} bundles but {} bids",
            profile.bidder_count(),
            bids.len()
        )));
    }
    if profile.bidder_count() > MAX_EXHAUSTIVE_BIDDERS {
        return Err(Error::Capacity {
            what: "bidder count",
            size: profile.bidder_count(),
            limit: MAX_EXHAUSTIVE_BIDDERS,
        });
    }
    Ok(())
}

/// Depth-first enumeration of feasible sets in lexicographic order of their
/// sorted index sequences. A set is visited before all of its extensions.
struct PackingSearch<'a> {
    profile: &'a InterestProfile,
    bids: &'a [Rational],
    allowed: u64,
    /// `suffix[j]` = total bid of allowed bidders with index >= j.
    suffix: Vec<Rational>,
}

impl<'a> PackingSearch<'a> {
    fn new(profile: &'a InterestProfile, bids: &'a BidProfile, restrict_to: Option<BidderSet>) -> Self {
        let n = profile.bidder_count();
        let allowed = restrict_to.unwrap_or(BidderSet::full(n)).mask() & BidderSet::full(n).mask();
        let bids = bids.as_slice();
        let mut suffix = vec![Rational::zero(); n + 1];
        for j in (0..n).rev() {
            suffix[j] = suffix[j + 1];
            if allowed >> j & 1 == 1 {
                suffix[j] += bids[j];
            }
        }
        PackingSearch {
            profile,
            bids,
            allowed,
            suffix,
        }
    }

    /// First (lexicographically smallest) set of maximum weight.
    fn best(&self) -> (BidderSet, Rational) {
        let mut best = (0u64, Rational::zero());
        self.best_from(0, 0, 0, Rational::zero(), &mut best);
        (BidderSet(best.0), best.1)
    }

    fn best_from(&self, start: usize, chosen: u64, blocked: u64, weight: Rational, best: &mut (u64, Rational)) {
        if weight > best.1 {
            *best = (chosen, weight);
        }
        let n = self.bids.len();
        for j in start..n {
            if self.allowed >> j & 1 == 0 || blocked >> j & 1 == 1 {
                continue;
            }
            // Everything below this point is visited after `best`, so a tie cannot win.
            if weight + self.suffix[j] <= best.1 {
                break;
            }
            self.best_from(
                j + 1,
                chosen | 1 << j,
                blocked | self.profile.conflicts[j],
                weight + self.bids[j],
                best,
            );
        }
    }

    fn all_with_weight(&self, target: &Rational) -> Vec<BidderSet> {
        let mut out = Vec::new();
        self.collect_from(0, 0, 0, Rational::zero(), target, &mut out);
        out
    }

    fn collect_from(
        &self,
        start: usize,
        chosen: u64,
        blocked: u64,
        weight: Rational,
        target: &Rational,
        out: &mut Vec<BidderSet>,
    ) {
        if weight == *target {
            out.push(BidderSet(chosen));
        }
        let n = self.bids.len();
        for j in start..n {
            if self.allowed >> j & 1 == 0 || blocked >> j & 1 == 1 {
                continue;
            }
            if weight + self.suffix[j] < *target {
                break;
            }
            self.collect_from(
                j + 1,
                chosen | 1 << j,
                blocked | self.profile.conflicts[j],
                weight + self.bids[j],
                target,
                out,
            );
        }
    }
}

/// Welfare-maximizing feasible allocation among `restrict_to` (default: all
/// bidders). Ties go to the lexicographically smallest winner set.
pub fn winner_determination(
    profile: &InterestProfile,
    bids: &BidProfile,
    restrict_to: Option<BidderSet>,
) -> Result<Allocation> {
    check_dimensions(profile, bids)?;
    let (set, _) = PackingSearch::new(profile, bids, restrict_to).best();
    Ok(Allocation::new(set))
}

/// `W(b, X(b_L))`: the maximum reported welfare using only bidders in `coalition`.
pub fn max_welfare(profile: &InterestProfile, bids: &BidProfile, coalition: BidderSet) -> Result<Rational> {
    check_dimensions(profile, bids)?;
    Ok(PackingSearch::new(profile, bids, Some(coalition)).best().1)
}

/// Every welfare-maximizing feasible allocation over `restrict_to`, in
/// lexicographic order; the first entry is the one `winner_determination`
/// picks.
pub fn all_efficient_allocations(
    profile: &InterestProfile,
    bids: &BidProfile,
    restrict_to: Option<BidderSet>,
) -> Result<Vec<Allocation>> {
    check_dimensions(profile, bids)?;
    let search = PackingSearch::new(profile, bids, restrict_to);
    let (_, optimum) = search.best();
    Ok(search
        .all_with_weight(&optimum)
        .into_iter()
        .map(Allocation::new)
        .collect())
}

/// Whether `alloc` attains the maximum reported welfare under `bids`.
pub fn is_efficient(profile: &InterestProfile, bids: &BidProfile, alloc: &Allocation) -> Result<bool> {
    alloc.check_feasible(profile)?;
    let optimum = max_welfare(profile, bids, profile.all_bidders())?;
    Ok(bids.sum_over(alloc.winners()) == optimum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn llg() -> InterestProfile {
        InterestProfile::from_item_lists(&[&[0], &[1], &[0, 1]], 2).unwrap()
    }

    fn bull() -> InterestProfile {
        InterestProfile::from_item_lists(&[&[0], &[1], &[2], &[0, 1], &[0, 2]], 3).unwrap()
    }

    fn line5() -> InterestProfile {
        InterestProfile::from_item_lists(&[&[0, 1], &[1, 2], &[2, 3], &[3, 0, 4], &[4]], 5).unwrap()
    }

    /// Brute force over all 2^n subsets.
    fn brute_force(profile: &InterestProfile, bids: &BidProfile) -> (Rational, Vec<BidderSet>) {
        let all = profile.all_bidders();
        let mut best = Rational::zero();
        let mut sets = Vec::new();
        for s in all.subsets() {
            if !profile.is_feasible(s) {
                continue;
            }
            let w = bids.sum_over(s);
            if w > best {
                best = w;
                sets.clear();
            }
            if w == best {
                sets.push(s);
            }
        }
        sets.sort_by(|a, b| a.lex_cmp(b));
        (best, sets)
    }

    #[test]
    fn welfare_examples() {
        let bids = BidProfile::from_integers(&[6, 7, 9]).unwrap();
        let w = reported_welfare(&bids, &Allocation::from_winners(&[0, 1])).unwrap();
        assert_eq!(w, int(13));
        assert_eq!(reported_welfare(&bids, &Allocation::default()).unwrap(), int(0));
        let bull_bids = BidProfile::from_integers(&[5, 4, 4, 6, 6]).unwrap();
        let w = reported_welfare(&bull_bids, &Allocation::from_winners(&[0, 1, 2])).unwrap();
        assert_eq!(w, int(13));
        assert!(reported_welfare(&bids, &Allocation::from_winners(&[3])).is_err());
    }

    #[test]
    fn llg_locals_win() {
        let bids = BidProfile::from_integers(&[6, 7, 9]).unwrap();
        let alloc = winner_determination(&llg(), &bids, None).unwrap();
        assert_eq!(alloc, Allocation::from_winners(&[0, 1]));
        let all = all_efficient_allocations(&llg(), &bids, None).unwrap();
        assert_eq!(all, vec![Allocation::from_winners(&[0, 1])]);
    }

    #[test]
    fn llg_tie_lists_both_and_picks_lex_smallest() {
        let bids = BidProfile::from_integers(&[6, 7, 13]).unwrap();
        let all = all_efficient_allocations(&llg(), &bids, None).unwrap();
        assert_eq!(
            all,
            vec![Allocation::from_winners(&[0, 1]), Allocation::from_winners(&[2])]
        );
        let alloc = winner_determination(&llg(), &bids, None).unwrap();
        assert_eq!(alloc, Allocation::from_winners(&[0, 1]));
    }

    #[test]
    fn single_bidder_wins() {
        let profile = InterestProfile::from_item_lists(&[&[0]], 1).unwrap();
        let bids = BidProfile::from_integers(&[3]).unwrap();
        assert_eq!(
            winner_determination(&profile, &bids, None).unwrap(),
            Allocation::from_winners(&[0])
        );
    }

    #[test]
    fn line5_example() {
        let bids = BidProfile::from_integers(&[5, 3, 5, 4, 2]).unwrap();
        let (best, sets) = brute_force(&line5(), &bids);
        assert_eq!(best, int(12));
        assert_eq!(sets, vec![BidderSet::from_indices([0, 2, 4])]);
        let alloc = winner_determination(&line5(), &bids, None).unwrap();
        assert_eq!(alloc, Allocation::from_winners(&[0, 2, 4]));
    }

    #[test]
    fn bull_three_way_tie() {
        let bids = BidProfile::from_integers(&[5, 4, 4, 9, 9]).unwrap();
        let all = all_efficient_allocations(&bull(), &bids, None).unwrap();
        let (_, oracle) = brute_force(&bull(), &bids);
        assert_eq!(all.iter().map(|a| a.winners()).collect::<Vec<_>>(), oracle);
        assert_eq!(
            all,
            vec![
                Allocation::from_winners(&[0, 1, 2]),
                Allocation::from_winners(&[1, 4]),
                Allocation::from_winners(&[2, 3]),
            ]
        );
    }

    #[test]
    fn restriction_is_respected() {
        let bids = BidProfile::from_integers(&[6, 7, 9]).unwrap();
        let alloc = winner_determination(&llg(), &bids, Some(BidderSet::from_indices([1, 2]))).unwrap();
        assert_eq!(alloc, Allocation::from_winners(&[2]));
        let w = max_welfare(&llg(), &bids, BidderSet::from_indices([0])).unwrap();
        assert_eq!(w, int(6));
    }

    #[test]
    fn zero_bids_do_not_join_by_default() {
        let profile = InterestProfile::from_item_lists(&[&[0], &[1]], 2).unwrap();
        let bids = BidProfile::from_integers(&[3, 0]).unwrap();
        let all = all_efficient_allocations(&profile, &bids, None).unwrap();
        assert_eq!(
            all,
            vec![Allocation::from_winners(&[0]), Allocation::from_winners(&[0, 1])]
        );
        assert_eq!(
            winner_determination(&profile, &bids, None).unwrap(),
            Allocation::from_winners(&[0])
        );
    }

    #[test]
    fn capacity_and_input_errors() {
        let bundles = (0..21).map(|i| ItemBundle::from_items(&[i]).unwrap()).collect();
        let profile = InterestProfile::new(bundles, 21).unwrap();
        let bids = BidProfile::new(vec![int(1); 21]).unwrap();
        assert!(winner_determination(&profile, &bids, None).unwrap_err().is_capacity());
        assert!(InterestProfile::from_item_lists(&[&[]], 1).is_err());
        assert!(InterestProfile::from_item_lists(&[&[3]], 2).is_err());
        assert!(BidProfile::new(vec![int(-1)]).is_err());
        let short = BidProfile::from_integers(&[1, 2]).unwrap();
        assert!(winner_determination(&llg(), &short, None).is_err());
    }

    #[test]
    fn lex_order_and_subsets() {
        let a = BidderSet::from_indices([0, 2]);
        let b = BidderSet::from_indices([1]);
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
        assert_eq!(BidderSet::from_indices([0]).lex_cmp(&a), Ordering::Less);
        assert_eq!(a.subsets().count(), 4);
        assert_eq!(BidderSet::EMPTY.subsets().count(), 1);
        assert_eq!(a.to_string(), "{1,3}");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn profile_and_bids() -> impl Strategy<Value = (InterestProfile, BidProfile)> {
            (1usize..=9, 1usize..=5).prop_flat_map(|(n, m)| {
                (
                    proptest::collection::vec(1u64..(1 << m), n),
                    proptest::collection::vec(0i128..12, n),
                )
                    .prop_map(move |(bundles, bids)| {
                        let bundles = bundles.into_iter().map(ItemBundle::from_bits).collect();
                        (
                            InterestProfile::new(bundles, m).unwrap(),
                            BidProfile::from_integers(&bids).unwrap(),
                        )
                    })
            })
        }

        proptest! {
            #[test]
            fn matches_brute_force((profile, bids) in profile_and_bids()) {
                let (best, sets) = brute_force(&profile, &bids);
                let alloc = winner_determination(&profile, &bids, None).unwrap();
                prop_assert!(profile.is_feasible(alloc.winners()));
                prop_assert_eq!(bids.sum_over(alloc.winners()), best);
                prop_assert_eq!(alloc.winners(), sets[0]);
                let all = all_efficient_allocations(&profile, &bids, None).unwrap();
                prop_assert_eq!(all.iter().map(|a| a.winners()).collect::<Vec<_>>(), sets);
                prop_assert_eq!(winner_determination(&profile, &bids, None).unwrap(), alloc);
            }

            #[test]
            fn restricted_search_stays_inside((profile, bids) in profile_and_bids(), mask in any::<u64>()) {
                let restrict = BidderSet::from_mask(mask).intersection(profile.all_bidders());
                let alloc = winner_determination(&profile, &bids, Some(restrict)).unwrap();
                prop_assert!(alloc.winners().is_subset(restrict));
                prop_assert!(profile.is_feasible(alloc.winners()));
            }
        }
    }
}
