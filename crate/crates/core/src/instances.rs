//! Named auction instances: the standard LLG example, the bull graph, the
//! five-bidder line, the star and the 4-cycle.

use crate::auction::{BidProfile, InterestProfile, ItemBundle, ValuationProfile};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub items: Vec<String>,
    pub bidder_names: Vec<String>,
    pub profile: InterestProfile,
    pub bids: BidProfile,
    pub values: Option<ValuationProfile>,
}

impl Instance {
    /// Builds an instance from item names and `(bidder, bundle items, bid)` rows.
    pub fn from_rows(name: &str, items: &[&str], rows: &[(&str, &[&str], i128)]) -> Result<Self> {
        let mut bundles = Vec::with_capacity(rows.len());
        for (bidder, bundle, _) in rows {
            let idx = bundle
                .iter()
                .map(|item| {
                    items
                        .iter()
                        .position(|known| known == item)
                        .ok_or_else(|| Error::input(format!("bidder {bidder} demands unknown item {item}")))
                })
                .collect::<Result<Vec<_>>>()?;
            bundles.push(ItemBundle::from_items(&idx)?);
        }
        Ok(Instance {
            name: name.to_string(),
            items: items.iter().map(|s| s.to_string()).collect(),
            bidder_names: rows.iter().map(|(b, _, _)| b.to_string()).collect(),
            profile: InterestProfile::new(bundles, items.len())?,
            bids: BidProfile::new(rows.iter().map(|(_, _, bid)| Rational::from_integer(*bid)).collect())?,
            values: None,
        })
    }

    pub fn with_bids(&self, bids: BidProfile) -> Result<Self> {
        if bids.len() != self.profile.bidder_count() {
            return Err(Error::input(format!(
                "{} bids for {} bidders",
                bids.len(),
                self.profile.bidder_count()
            )));
        }
        Ok(Instance { bids, ..self.clone() })
    }
}

pub const BUILTIN_NAMES: [&str; 5] = ["llg", "bull", "line5", "star", "cycle4"];

pub fn builtin(name: &str) -> Option<Instance> {
    let instance = match name {
        "llg" => Instance::from_rows(
            "llg",
            &["A", "B"],
            &[("local1", &["A"], 6), ("local2", &["B"], 7), ("global", &["A", "B"], 9)],
        ),
        "bull" => Instance::from_rows(
            "bull",
            &["A", "B", "C"],
            &[
                ("b1", &["A"], 5),
                ("b2", &["B"], 4),
                ("b3", &["C"], 4),
                ("b4", &["A", "B"], 6),
                ("b5", &["A", "C"], 6),
            ],
        ),
        "line5" => Instance::from_rows(
            "line5",
            &["A", "B", "C", "D", "E"],
            &[
                ("b1", &["A", "B"], 5),
                ("b2", &["B", "C"], 3),
                ("b3", &["C", "D"], 5),
                ("b4", &["D", "A", "E"], 4),
                ("b5", &["E"], 2),
            ],
        ),
        "star" => Instance::from_rows(
            "star",
            &["A", "B", "C", "D"],
            &[
                ("b1", &["A"], 2),
                ("b2", &["B"], 3),
                ("b3", &["C"], 4),
                ("b4", &["D"], 5),
                ("center", &["A", "B", "C", "D"], 10),
            ],
        ),
        "cycle4" => Instance::from_rows(
            "cycle4",
            &["A", "B", "C", "D"],
            &[
                ("b1", &["A", "B"], 4),
                ("b2", &["B", "C"], 5),
                ("b3", &["C", "D"], 6),
                ("b4", &["D", "A"], 7),
            ],
        ),
        _ => return None,
    };
    Some(instance.expect("built-in instances are well formed"))
}
