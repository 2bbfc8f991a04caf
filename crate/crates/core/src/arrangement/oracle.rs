//! Brute-force intersection check on the finite covering grid
//! `(1/q)Z^n / Z^n`.
//!
//! Grid points of each subtorus are listed by stepping its stabilizer basis
//! in increments of `1/q`; a point is kept if it appears in both lists.
//! The common points are then grouped into cosets of the grid points of the
//! identity component. The grid resolution `q` is the common denominator of
//! both offsets times the index of `Γ1 + Γ2` in its saturation, which is
//! fine enough for every component to carry grid points.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::subtorus::Subtorus;
use crate::error::Result;
use crate::exactlin::{lattice_intersect, lattice_sum};

/// A component as its set of grid points, coordinates scaled by `q` and
/// reduced into `[0, q)`.
pub type GridComponent = BTreeSet<Vec<i64>>;

pub fn covering_denominator(t1: &Subtorus, t2: &Subtorus) -> Result<BigInt> {
    let sum = lattice_sum(t1.stabilizer(), t2.stabilizer())?;
    Ok(t1.denominator().lcm(&t2.denominator()) * sum.index_in_saturation())
}

fn scaled_offset(t: &Subtorus, q: i64) -> Option<Vec<i64>> {
    t.offset()
        .iter()
        .map(|x| {
            let y = x * BigInt::from(q);
            y.is_integer().then(|| y.to_integer().to_i64()).flatten()
        })
        .collect()
}

fn small_basis(vs: &[Vec<BigInt>]) -> Vec<Vec<i64>> {
    vs.iter()
        .map(|v| v.iter().map(|x| x.to_i64().expect("small stabilizer entry")).collect())
        .collect()
}

/// All points `base + Σ a_i b_i (mod q)` with `0 ≤ a_i < q`.
fn grid_span(base: &[i64], basis: &[Vec<i64>], q: i64) -> HashSet<Vec<i64>> {
    let n = base.len();
    let mut out = HashSet::new();
    let mut digits = vec![0i64; basis.len()];
    loop {
        let mut p = base.to_vec();
        for (a, b) in digits.iter().zip(basis) {
            for i in 0..n {
                p[i] += a * b[i];
            }
        }
        for x in p.iter_mut() {
            *x = x.rem_euclid(q);
        }
        out.insert(p);
        let mut i = 0;
        while i < digits.len() {
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == digits.len() {
            break;
        }
    }
    out
}

/// Components of `t1 ∩ t2` found on the covering grid, or `None` when the
/// grid resolution would exceed `cap`.
pub fn oracle_components(
    t1: &Subtorus,
    t2: &Subtorus,
    cap: u64,
) -> Result<Option<(i64, BTreeSet<GridComponent>)>> {
    let q = covering_denominator(t1, t2)?;
    let Some(q) = q.to_i64().filter(|&q| q as u64 <= cap) else {
        return Ok(None);
    };
    let o1 = scaled_offset(t1, q).expect("offset denominators divide q");
    let o2 = scaled_offset(t2, q).expect("offset denominators divide q");
    let g1 = grid_span(&o1, &small_basis(&t1.stabilizer().basis_vectors()), q);
    let g2 = grid_span(&o2, &small_basis(&t2.stabilizer().basis_vectors()), q);
    let mut common: BTreeSet<Vec<i64>> = g1.intersection(&g2).cloned().collect();

    let identity = lattice_intersect(t1.stabilizer(), t2.stabilizer())?;
    let zero = vec![0i64; t1.ambient()];
    let identity_points: Vec<Vec<i64>> =
        grid_span(&zero, &small_basis(&identity.basis_vectors()), q)
            .into_iter()
            .collect();

    let mut components = BTreeSet::new();
    while let Some(p) = common.pop_first() {
        let mut comp = BTreeSet::from([p.clone()]);
        for z in &identity_points {
            let shifted: Vec<i64> = p.iter().zip(z).map(|(a, b)| (a + b).rem_euclid(q)).collect();
            common.remove(&shifted);
            comp.insert(shifted);
        }
        components.insert(comp);
    }
    Ok(Some((q, components)))
}

/// Grid points of an algebraically computed component.
pub fn grid_points(t: &Subtorus, q: i64) -> Option<GridComponent> {
    let base = scaled_offset(t, q)?;
    Some(
        grid_span(&base, &small_basis(&t.stabilizer().basis_vectors()), q)
            .into_iter()
            .collect(),
    )
}

/// Compares `components` (claimed to be `t1 ∩ t2`) against the grid
/// search. `None` when the grid would be too fine.
pub fn oracle_agrees(
    t1: &Subtorus,
    t2: &Subtorus,
    components: &[Subtorus],
    cap: u64,
) -> Result<Option<bool>> {
    let Some((q, expected)) = oracle_components(t1, t2, cap)? else {
        return Ok(None);
    };
    let mut got = BTreeSet::new();
    for c in components {
        match grid_points(c, q) {
            Some(points) => {
                got.insert(points);
            }
            None => return Ok(Some(false)),
        }
    }
    Ok(Some(got.len() == components.len() && got == expected))
}
