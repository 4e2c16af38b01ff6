//! Exact combinatorial index calculus for braided ends of flow-line curves in
//! mapping tori.
//!
//! Everything here is integer or rational arithmetic: irrational monodromy
//! angles are pinned between consecutive rationals of bounded denominator
//! ([`angle::AngleRep`]), so floors, ceilings, partitions, writhe bounds and
//! index formulas are all computed exactly. The `oracle` module re-derives the
//! closed forms by brute force (partition enumeration, literal crossing
//! counts) and is kept independent of the code it checks.

pub mod angle;
pub mod braid;
pub mod flowline;
pub mod index;
pub mod oracle;
pub mod orbit;
pub mod partition;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
