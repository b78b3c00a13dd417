//! The 17 retained POI industry classification labels.
//!
//! Four low-correlation categories (entrances/exits, natural features,
//! administrative landmarks, gate addresses) are excluded at parse time.

use crate::error::{Error, Result};
use alloc::string::String;

/// A retained POI classification label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PoiLabel {
    Food,
    Hotel,
    Shopping,
    Service,
    Beauty,
    Travel,
    Entertainment,
    Sports,
    Education,
    Media,
    Medicine,
    Car,
    Traffic,
    Finance,
    Estate,
    Company,
    Government,
}

/// All 17 labels in record-name order.
pub const ALL_LABELS: [PoiLabel; 17] = [
    PoiLabel::Food,
    PoiLabel::Hotel,
    PoiLabel::Shopping,
    PoiLabel::Service,
    PoiLabel::Beauty,
    PoiLabel::Travel,
    PoiLabel::Entertainment,
    PoiLabel::Sports,
    PoiLabel::Education,
    PoiLabel::Media,
    PoiLabel::Medicine,
    PoiLabel::Car,
    PoiLabel::Traffic,
    PoiLabel::Finance,
    PoiLabel::Estate,
    PoiLabel::Company,
    PoiLabel::Government,
];

/// Category names that are deliberately not carried into the pipeline.
pub const EXCLUDED_CATEGORIES: [&str; 4] = [
    "entrances and exits",
    "natural features",
    "administrative landmark",
    "gate address",
];

impl PoiLabel {
    /// Position of this label in [`ALL_LABELS`].
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<PoiLabel> {
        ALL_LABELS.get(i).copied()
    }

    /// Short record name used in CSV columns.
    pub fn as_str(self) -> &'static str {
        match self {
            PoiLabel::Food => "food",
            PoiLabel::Hotel => "hotel",
            PoiLabel::Shopping => "shopping",
            PoiLabel::Service => "service",
            PoiLabel::Beauty => "beauty",
            PoiLabel::Travel => "travel",
            PoiLabel::Entertainment => "entertainment",
            PoiLabel::Sports => "sports",
            PoiLabel::Education => "education",
            PoiLabel::Media => "media",
            PoiLabel::Medicine => "medicine",
            PoiLabel::Car => "car",
            PoiLabel::Traffic => "traffic",
            PoiLabel::Finance => "finance",
            PoiLabel::Estate => "estate",
            PoiLabel::Company => "company",
            PoiLabel::Government => "government",
        }
    }

    /// Long category name as it appears in map exports.
    pub fn category_name(self) -> &'static str {
        match self {
            PoiLabel::Food => "Delicious Food",
            PoiLabel::Hotel => "Hotel",
            PoiLabel::Shopping => "Shopping",
            PoiLabel::Service => "Life Services",
            PoiLabel::Beauty => "Beauty",
            PoiLabel::Travel => "Tourist Attractions",
            PoiLabel::Entertainment => "Leisure and Entertainment",
            PoiLabel::Sports => "Fitness",
            PoiLabel::Education => "Educational Training",
            PoiLabel::Media => "Culture and Media",
            PoiLabel::Medicine => "Medical Treatment",
            PoiLabel::Car => "Car Services",
            PoiLabel::Traffic => "Traffic Facilities",
            PoiLabel::Finance => "Financial",
            PoiLabel::Estate => "Property",
            PoiLabel::Company => "Incorporated Business",
            PoiLabel::Government => "Government Institutional",
        }
    }

    /// True when `s` names one of the four excluded categories.
    pub fn is_excluded_category(s: &str) -> bool {
        let lower = ascii_lower(s);
        EXCLUDED_CATEGORIES.iter().any(|c| *c == lower)
    }

    /// Parse either a record name (`"food"`) or a category name
    /// (`"Delicious Food"`), case-insensitively.
    pub fn parse(s: &str) -> Result<PoiLabel> {
        let lower = ascii_lower(s);
        for label in ALL_LABELS {
            if lower == label.as_str() || lower == ascii_lower(label.category_name()) {
                return Ok(label);
            }
        }
        Err(Error::Config(alloc::format!("unknown POI label: {s}")))
    }
}

impl core::fmt::Display for PoiLabel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

fn ascii_lower(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.trim().chars() {
        out.push(c.to_ascii_lowercase());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_labels_round_trip() {
        assert_eq!(ALL_LABELS.len(), 17);
        for (i, label) in ALL_LABELS.iter().enumerate() {
            assert_eq!(label.index(), i);
            assert_eq!(PoiLabel::from_index(i), Some(*label));
            assert_eq!(PoiLabel::parse(label.as_str()).unwrap(), *label);
            assert_eq!(PoiLabel::parse(label.category_name()).unwrap(), *label);
        }
    }

    #[test]
    fn excluded_categories_are_rejected() {
        assert!(PoiLabel::is_excluded_category("Natural Features"));
        assert!(PoiLabel::is_excluded_category("  gate address "));
        assert!(PoiLabel::parse("Natural Features").is_err());
        assert!(!PoiLabel::is_excluded_category("Delicious Food"));
    }

    #[test]
    fn parse_is_case_insensitive() {
        assert_eq!(PoiLabel::parse("FOOD").unwrap(), PoiLabel::Food);
        assert_eq!(PoiLabel::parse("delicious food").unwrap(), PoiLabel::Food);
        assert!(PoiLabel::parse("arcology").is_err());
    }
}
