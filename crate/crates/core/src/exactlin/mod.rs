//! Exact integer linear algebra over arbitrary-precision integers.

mod abelian;
mod hnf;
mod lattice;
mod matrix;
mod modp;
mod snf;

pub use abelian::AbelianGroup;
pub use hnf::{hnf, hnf_only, Hnf};
pub use lattice::{
    cokernel, kernel, lattice_intersect, lattice_sum, member, saturate, Sublattice,
    SublatticeRepr,
};
pub use matrix::{to_bigints, IntMatrix};
pub use modp::{is_prime, rank_mod_p};
pub use snf::{snf, snf_diagonal, Snf};
