//! Arrangements of rational subtori of the 6-torus.

mod build;
mod intersect;
pub mod oracle;
mod subtorus;

pub use build::{build_arrangement, expand_orbits, Arrangement};
pub use intersect::intersect_subtori;
pub use subtorus::{canonicalize, contains, frac, Subtorus};
