//! JSON instance documents. Rationals travel as strings (`"9/2"`, `"4.5"`).

use serde::{Deserialize, Serialize};
use smca::instances::Instance;
use smca::rational::{format_rational, parse_rational};
use smca::{BidProfile, Error, InterestProfile, ItemBundle, Result, ValuationProfile};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub items: Vec<String>,
    pub bidders: Vec<BidderEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BidderEntry {
    pub name: String,
    pub bundle: Vec<String>,
    pub bid: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

impl InstanceDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn to_instance(&self) -> Result<Instance> {
        for (k, item) in self.items.iter().enumerate() {
            if self.items[..k].contains(item) {
                return Err(Error::input(format!("item {item} declared twice")));
            }
        }
        let mut bundles = Vec::with_capacity(self.bidders.len());
        let mut bids = Vec::with_capacity(self.bidders.len());
        let mut values = Vec::with_capacity(self.bidders.len());
        for bidder in &self.bidders {
            let indices = bidder
                .bundle
                .iter()
                .map(|item| {
                    self.items
                        .iter()
                        .position(|known| known == item)
                        .ok_or_else(|| Error::input(format!("bidder {} demands undeclared item {item}", bidder.name)))
                })
                .collect::<Result<Vec<_>>>()?;
            bundles.push(ItemBundle::from_items(&indices)?);
            bids.push(parse_rational(&bidder.bid)?);
            values.push(bidder.value.as_deref().map(parse_rational).transpose()?);
        }
        let values = if values.iter().all(Option::is_some) && !values.is_empty() {
            Some(ValuationProfile::new(values.into_iter().flatten().collect())?)
        } else if values.iter().any(Option::is_some) {
            return Err(Error::input("either every bidder has a value or none does"));
        } else {
            None
        };
        Ok(Instance {
            name: self.name.clone().unwrap_or_else(|| "instance".to_string()),
            items: self.items.clone(),
            bidder_names: self.bidders.iter().map(|b| b.name.clone()).collect(),
            profile: InterestProfile::new(bundles, self.items.len())?,
            bids: BidProfile::new(bids)?,
            values,
        })
    }

    pub fn from_instance(instance: &Instance) -> Self {
        let bidders = (0..instance.profile.bidder_count())
            .map(|i| BidderEntry {
                name: instance.bidder_names[i].clone(),
                bundle: instance
                    .profile
                    .bundle(i)
                    .items()
                    .into_iter()
                    .map(|k| instance.items[k].clone())
                    .collect(),
                bid: format_rational(instance.bids.get(i)),
                value: instance.values.as_ref().map(|v| format_rational(v.get(i))),
            })
            .collect();
        InstanceDocument {
            name: Some(instance.name.clone()),
            items: instance.items.clone(),
            bidders,
        }
    }
}
