//! Construction, verification, bounding and exhaustive search of sets in
//! Z_m^n without proper k-term arithmetic progressions.

pub mod cli;
pub mod codes;
pub mod constructions;
pub mod error;
pub mod group;
pub mod pointset;
pub mod reformulation;
pub mod search;
pub mod verifier;

use std::time::Duration;

use serde::Serializer;

pub use error::{Error, Result};
pub use group::{ApWitness, GroupParams, GroupVec};
pub use pointset::PointSet;
pub use reformulation::SubsetSystem;
pub use verifier::{find_witness, verify, VerifyReport};

pub(crate) fn serialize_duration_ms<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1000.0)
}
