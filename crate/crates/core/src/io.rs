//! JSON formats for instances and allocations.
//!
//! Instance: `{"weights": ["2/5", "3/5"], "utilities": [["40", "60"], ["40", "60"]]}`.
//! Rationals may be `"p/q"` strings, integer strings or JSON integers.
//!
//! Allocation: `{"bundles": [[0, 1], [2], []]}` with zero-based item indices.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance};

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Parses and validates an instance. Validation failures keep their own error
/// kind; malformed JSON becomes a parse error.
pub fn parse_instance(text: &str) -> Result<Instance> {
    // Deserialize into plain JSON first so that validation errors from
    // `Instance::new` are not flattened into parse errors.
    let value: serde_json::Value = serde_json::from_str(text).map_err(parse_error)?;
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Raw {
        #[serde(with = "crate::rational::serde_str::vec")]
        weights: Vec<crate::Rational>,
        #[serde(with = "crate::rational::serde_str::matrix")]
        utilities: Vec<Vec<crate::Rational>>,
    }
    let raw: Raw = serde_json::from_value(value).map_err(parse_error)?;
    Instance::new(raw.weights, raw.utilities)
}

pub fn instance_to_json(inst: &Instance) -> String {
    serde_json::to_string_pretty(inst).expect("instances serialize")
}

/// Parses an allocation and checks that it partitions `0..m`.
pub fn parse_allocation(text: &str, m: usize) -> Result<Allocation> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Raw {
        bundles: Vec<Vec<usize>>,
    }
    let raw: Raw = serde_json::from_str(text).map_err(parse_error)?;
    Allocation::from_bundles(raw.bundles, m)
}

pub fn allocation_to_json(a: &Allocation) -> String {
    serde_json::to_string(a).expect("allocations serialize")
}
