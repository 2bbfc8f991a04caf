use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::abelian::AbelianGroup;
use super::hnf::{hnf, hnf_only};
use super::matrix::IntMatrix;
use super::snf::snf_diagonal;
use crate::error::{Error, Result};

/// Integer sublattice of `Z^n`, stored as the nonzero columns of its column
/// Hermite form. Equal lattices have equal bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sublattice {
    ambient: usize,
    basis: IntMatrix,
}

impl Sublattice {
    /// Lattice spanned by the columns of `generators`.
    pub fn from_generators(generators: &IntMatrix) -> Self {
        let (h, pivots) = hnf_only(generators);
        Sublattice {
            ambient: generators.rows(),
            basis: h.select_columns(0..pivots.len()),
        }
    }

    pub fn from_vectors(ambient: usize, vectors: &[Vec<BigInt>]) -> Result<Self> {
        Ok(Self::from_generators(&IntMatrix::from_columns(vectors, ambient)?))
    }

    pub fn from_i64_vectors(ambient: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        let vs: Vec<Vec<BigInt>> = vectors
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_vectors(ambient, &vs)
    }

    pub fn zero(ambient: usize) -> Self {
        Sublattice {
            ambient,
            basis: IntMatrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Sublattice {
            ambient,
            basis: IntMatrix::identity(ambient),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Basis columns (Hermite form).
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<BigInt>> {
        self.basis.columns()
    }

    /// Coefficients of `v` in the Hermite basis, or `None` if `v` is not in
    /// the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        let mut row = 0;
        for j in 0..self.rank() {
            while self.basis[(row, j)].is_zero() {
                if !rest[row].is_zero() {
                    return Ok(None);
                }
                row += 1;
            }
            let (q, r) = rest[row].div_rem(&self.basis[(row, j)]);
            if !r.is_zero() {
                return Ok(None);
            }
            for (i, x) in rest.iter_mut().enumerate().skip(row) {
                let b = &self.basis[(i, j)];
                if !b.is_zero() {
                    *x -= &q * b;
                }
            }
            coeffs.push(q);
            row += 1;
        }
        if rest.iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        Ok(Some(coeffs))
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> Result<bool> {
        for v in other.basis_vectors() {
            if !member(self, &v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Index of the lattice in its saturation.
    pub fn index_in_saturation(&self) -> BigInt {
        snf_diagonal(&self.basis).into_iter().product()
    }

    /// Integer functionals vanishing on the lattice, one per row. The rows
    /// form a Hermite basis of the (saturated) annihilator.
    pub fn annihilator(&self) -> IntMatrix {
        kernel(&self.basis.transpose()).basis.transpose()
    }

    pub fn is_saturated(&self) -> bool {
        self.index_in_saturation().is_one()
    }
}

fn check_ambient(s: &Sublattice, t: &Sublattice) -> Result<()> {
    if s.ambient != t.ambient {
        return Err(Error::DimensionMismatch {
            expected: s.ambient,
            found: t.ambient,
        });
    }
    Ok(())
}

/// Saturated lattice of integer solutions of `M·v = 0`.
pub fn kernel(m: &IntMatrix) -> Sublattice {
    let r = hnf(m);
    let k = r.rank();
    Sublattice::from_generators(&r.u.select_columns(k..m.cols()))
}

/// `Z^{rows} / image(M)`.
pub fn cokernel(m: &IntMatrix) -> AbelianGroup {
    let diag = snf_diagonal(m);
    AbelianGroup {
        free_rank: m.rows() - diag.len(),
        factors: diag.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// Rational span of `s` intersected with `Z^n`.
pub fn saturate(s: &Sublattice) -> Sublattice {
    if s.rank() == 0 {
        return s.clone();
    }
    if s.rank() == s.ambient {
        return Sublattice::full(s.ambient);
    }
    kernel(&s.annihilator())
}

pub fn lattice_sum(s: &Sublattice, t: &Sublattice) -> Result<Sublattice> {
    check_ambient(s, t)?;
    Ok(Sublattice::from_generators(&s.basis.hstack(&t.basis)?))
}

pub fn lattice_intersect(s: &Sublattice, t: &Sublattice) -> Result<Sublattice> {
    check_ambient(s, t)?;
    let mut neg_t = t.basis.clone();
    for j in 0..neg_t.cols() {
        neg_t.negate_col(j);
    }
    let rel = kernel(&s.basis.hstack(&neg_t)?);
    let coeffs = rel.basis.transpose().select_columns(0..s.rank()).transpose();
    Ok(Sublattice::from_generators(&s.basis.mul(&coeffs)?))
}

pub fn member(s: &Sublattice, v: &[BigInt]) -> Result<bool> {
    Ok(s.coordinates(v)?.is_some())
}

/// Serializable plain form of a sublattice (list of basis vectors as decimal strings).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SublatticeRepr {
    pub ambient_rank: usize,
    pub basis: Vec<Vec<String>>,
}

impl From<&Sublattice> for SublatticeRepr {
    fn from(s: &Sublattice) -> Self {
        SublatticeRepr {
            ambient_rank: s.ambient,
            basis: s
                .basis_vectors()
                .iter()
                .map(|v| v.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }
}
