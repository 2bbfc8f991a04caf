//! Exterior powers of lattices and finite symmetry groups acting on subtori.

mod group;
mod wedge;

pub use group::{act_on_subtorus, group_closure, MatrixGroup};
pub use wedge::{binomial, wedge_power, wedge_vectors, WedgeIndex};
