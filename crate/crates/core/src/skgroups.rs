//! Cokernels `S_k` of the boundary maps into `H_*(T^6)`.
//!
//! `S_0 = Z` and `S_1 = Z^6` always, `S_k = 0` above degree 3. `S_2` is the
//! quotient of `Λ4 Z^6` by the top wedges of the 4-torus stabilizers. For
//! `S_3` only bounds on the image inside `Λ3 Z^6` are available:
//! `M1 = <Λ3 Γ^α>` and the cycles `b1^θ ∧ b2^θ ∧ e_i` from below, the
//! saturation `M2` of `M1` from above. When a lower bound already equals
//! `M2` the image is known and `S_3 = Z^20 / M2` is free.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::Result;
use crate::exactlin::{cokernel, lattice_sum, saturate, AbelianGroup, IntMatrix, Sublattice};
use crate::wedgelat::{binomial, wedge_power, wedge_vectors};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum S3Status {
    FreeByM1,
    FreeByM1Prime,
    Indeterminate,
}

impl S3Status {
    pub fn is_free(self) -> bool {
        self != S3Status::Indeterminate
    }
}

impl fmt::Display for S3Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            S3Status::FreeByM1 => "FreeByM1",
            S3Status::FreeByM1Prime => "FreeByM1Prime",
            S3Status::Indeterminate => "Indeterminate",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct S3Verdict {
    pub m1: Sublattice,
    pub m1prime: Sublattice,
    pub m2: Sublattice,
    pub status: S3Status,
    /// `Z^20 / M2` when the status is free.
    pub s3: Option<AbelianGroup>,
    /// `Z^20 / (M1 + M1')`, the quotient by the best proven lower bound.
    pub lower_quotient: AbelianGroup,
}

impl S3Verdict {
    /// Rational rank of `S_3`; the same for every bound.
    pub fn rank(&self) -> usize {
        20 - self.m2.rank()
    }
}

#[derive(Clone, Debug)]
pub struct SkGroups {
    pub s0: AbelianGroup,
    pub s1: AbelianGroup,
    pub s2: AbelianGroup,
    pub s3_verdict: S3Verdict,
}

impl SkGroups {
    /// Rational rank of `S_k`, zero above degree 3.
    pub fn rank(&self, k: usize) -> usize {
        match k {
            0 => self.s0.free_rank,
            1 => self.s1.free_rank,
            2 => self.s2.free_rank,
            3 => self.s3_verdict.rank(),
            _ => 0,
        }
    }
}

/// Columns `Λ4 Γ^α` in `Z^15`, one per 4-torus.
pub fn top_wedge_matrix(arr: &Arrangement) -> Result<IntMatrix> {
    let cols = arr
        .four_tori()
        .iter()
        .map(|t| wedge_vectors(&t.stabilizer().basis_vectors()))
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_columns(&cols, binomial(6, 4))
}

pub fn compute_s2(arr: &Arrangement) -> Result<AbelianGroup> {
    Ok(cokernel(&top_wedge_matrix(arr)?))
}

/// Generators of `M1` as columns in `Z^20`.
pub fn m1_generators(arr: &Arrangement) -> Result<IntMatrix> {
    let mut cols = Vec::new();
    for t in arr.four_tori() {
        cols.extend(wedge_power(t.stabilizer(), 3)?.basis_vectors());
    }
    IntMatrix::from_columns(&cols, binomial(6, 3))
}

/// Generators `b1^θ ∧ b2^θ ∧ e_i` of `M1'` as columns in `Z^20`.
pub fn m1prime_generators(arr: &Arrangement) -> Result<IntMatrix> {
    let mut cols = Vec::new();
    for t in arr.two_tori() {
        let b = t.stabilizer().basis_vectors();
        for i in 0..6 {
            let e: Vec<BigInt> = (0..6).map(|j| BigInt::from(i64::from(i == j))).collect();
            cols.push(wedge_vectors(&[b[0].clone(), b[1].clone(), e])?);
        }
    }
    IntMatrix::from_columns(&cols, binomial(6, 3))
}

pub fn compute_s3(arr: &Arrangement) -> Result<S3Verdict> {
    let m1 = Sublattice::from_generators(&m1_generators(arr)?);
    let m1prime = Sublattice::from_generators(&m1prime_generators(arr)?);
    let m2 = saturate(&m1);
    let joined = lattice_sum(&m1, &m1prime)?;
    let status = if m1 == m2 {
        S3Status::FreeByM1
    } else if joined == m2 {
        S3Status::FreeByM1Prime
    } else {
        S3Status::Indeterminate
    };
    let s3 = status.is_free().then(|| cokernel(m2.basis()));
    let lower_quotient = cokernel(joined.basis());
    Ok(S3Verdict {
        m1,
        m1prime,
        m2,
        status,
        s3,
        lower_quotient,
    })
}

pub fn compute_sk(arr: &Arrangement) -> Result<SkGroups> {
    Ok(SkGroups {
        s0: AbelianGroup::free(1),
        s1: AbelianGroup::free(6),
        s2: compute_s2(arr)?,
        s3_verdict: compute_s3(arr)?,
    })
}
