//! Exterior powers in lexicographic subset coordinates.
//!
//! Coordinate `S = {i1 < ... < im}` of `v1 ∧ ... ∧ vm` is the minor of the
//! `n × m` matrix `[v1 ... vm]` on rows `S`. Subsets are ordered
//! lexicographically, so `Λ2 Z^4` has coordinates
//! `{0,1},{0,2},{0,3},{1,2},{1,3},{2,3}`.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, Sublattice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeIndex {
    n: usize,
    degree: usize,
    subsets: Vec<Vec<usize>>,
    positions: HashMap<Vec<usize>, usize>,
}

impl WedgeIndex {
    pub fn new(n: usize, degree: usize) -> Self {
        let subsets = subsets(n, degree);
        let positions = subsets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        WedgeIndex {
            n,
            degree,
            subsets,
            positions,
        }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subset(&self, pos: usize) -> &[usize] {
        &self.subsets[pos]
    }

    /// Coordinate of a sorted subset.
    pub fn position(&self, subset: &[usize]) -> Option<usize> {
        self.positions.get(subset).copied()
    }
}

fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, m, &mut Vec::new(), &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `v1 ∧ ... ∧ vm` in `Λm Z^n` coordinates. All vectors must share length `n`.
pub fn wedge_vectors(vs: &[Vec<BigInt>]) -> Result<Vec<BigInt>> {
    let n = vs.first().map_or(0, Vec::len);
    if let Some(bad) = vs.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    let m = vs.len();
    if m > n {
        return Ok(vec![BigInt::from(0); binomial(n, m)]);
    }
    subsets(n, m)
        .iter()
        .map(|rows| {
            let minor = IntMatrix::from_rows(
                rows.iter()
                    .map(|&i| vs.iter().map(|v| v[i].clone()).collect())
                    .collect(),
                m,
            )?;
            minor.det()
        })
        .collect()
}

/// Sublattice of `Λm Z^n` spanned by the wedges of all `m`-subsets of the
/// basis of `s`.
pub fn wedge_power(s: &Sublattice, degree: usize) -> Result<Sublattice> {
    let k = s.rank();
    if degree == 0 || degree > k {
        return Err(Error::DegreeOutOfRange { degree, rank: k });
    }
    let basis = s.basis_vectors();
    let gens = subsets(k, degree)
        .iter()
        .map(|pick| {
            let chosen: Vec<Vec<BigInt>> = pick.iter().map(|&i| basis[i].clone()).collect();
            wedge_vectors(&chosen)
        })
        .collect::<Result<Vec<_>>>()?;
    Sublattice::from_vectors(binomial(s.ambient_rank(), degree), &gens)
}
