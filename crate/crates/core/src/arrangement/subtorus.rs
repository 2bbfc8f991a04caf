use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{hnf, saturate, IntMatrix, Sublattice};

/// Fractional part in `[0, 1)`.
pub fn frac(x: &BigRational) -> BigRational {
    x - BigRational::from_integer(x.floor().to_integer())
}

pub(crate) fn dot(row: &[BigInt], v: &[BigRational]) -> BigRational {
    row.iter()
        .zip(v)
        .filter(|(a, _)| !a.is_zero())
        .map(|(a, x)| BigRational::from_integer(a.clone()) * x)
        .sum()
}

/// Rational subtorus `offset + span(stabilizer)` of `R^n / Z^n`.
///
/// The class of the offset modulo `Z^n + span(stabilizer)` is recorded as
/// `key = frac(P·offset)` where the rows of `P` are the Hermite basis of the
/// integer functionals vanishing on the stabilizer. Because `P` maps `Z^n`
/// onto `Z^{n-d}`, the key determines the class, and the stored offset is
/// the representative `W·key` with `W` the first `n-d` columns of the
/// unimodular transform bringing `P` to Hermite form `[I | 0]`.
#[derive(Clone, Debug)]
pub struct Subtorus {
    stabilizer: Sublattice,
    annihilator: IntMatrix,
    key: Vec<BigRational>,
    offset: Vec<BigRational>,
}

impl Subtorus {
    /// Canonical subtorus through `offset` with the saturation of
    /// `stabilizer` as tangent lattice.
    pub fn new(stabilizer: &Sublattice, offset: &[BigRational]) -> Result<Self> {
        let n = stabilizer.ambient_rank();
        if offset.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: offset.len(),
            });
        }
        let stabilizer = saturate(stabilizer);
        let annihilator = stabilizer.annihilator();
        let key: Vec<BigRational> = (0..annihilator.rows())
            .map(|i| frac(&dot(annihilator.row(i), offset)))
            .collect();
        let section = hnf(&annihilator).u;
        let offset = (0..n)
            .map(|i| {
                key.iter()
                    .enumerate()
                    .map(|(j, k)| BigRational::from_integer(section[(i, j)].clone()) * k)
                    .sum()
            })
            .collect();
        Ok(Subtorus {
            stabilizer,
            annihilator,
            key,
            offset,
        })
    }

    pub fn through_origin(stabilizer: &Sublattice) -> Self {
        let zero = vec![BigRational::zero(); stabilizer.ambient_rank()];
        Self::new(stabilizer, &zero).expect("matching dimension")
    }

    pub fn dim(&self) -> usize {
        self.stabilizer.rank()
    }

    pub fn ambient(&self) -> usize {
        self.stabilizer.ambient_rank()
    }

    pub fn stabilizer(&self) -> &Sublattice {
        &self.stabilizer
    }

    pub fn annihilator(&self) -> &IntMatrix {
        &self.annihilator
    }

    pub fn key(&self) -> &[BigRational] {
        &self.key
    }

    /// Canonical offset representative.
    pub fn offset(&self) -> &[BigRational] {
        &self.offset
    }

    /// Whether the point `x` lies on the subtorus.
    pub fn contains_point(&self, x: &[BigRational]) -> bool {
        (0..self.annihilator.rows()).all(|i| frac(&dot(self.annihilator.row(i), x)) == self.key[i])
    }

    /// Least common denominator of the offset coordinates.
    pub fn denominator(&self) -> BigInt {
        self.offset
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }
}

/// Re-canonicalized copy of `t`.
pub fn canonicalize(t: &Subtorus) -> Subtorus {
    Subtorus::new(&t.stabilizer, &t.offset).expect("dimension preserved")
}

/// Whether `small ⊆ big` as subsets of the torus.
pub fn contains(big: &Subtorus, small: &Subtorus) -> bool {
    let tangent_ok = small.stabilizer.basis_vectors().iter().all(|v| {
        (0..big.annihilator.rows()).all(|i| {
            big.annihilator
                .row(i)
                .iter()
                .zip(v)
                .map(|(a, b)| a * b)
                .sum::<BigInt>()
                .is_zero()
        })
    });
    tangent_ok && big.contains_point(&small.offset)
}

impl PartialEq for Subtorus {
    fn eq(&self, other: &Self) -> bool {
        self.stabilizer == other.stabilizer && self.key == other.key
    }
}

impl Eq for Subtorus {}

impl Hash for Subtorus {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.stabilizer.hash(state);
        self.key.hash(state);
    }
}

impl PartialOrd for Subtorus {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subtorus {
    fn cmp(&self, other: &Self) -> Ordering {
        self.stabilizer
            .cmp(&other.stabilizer)
            .then_with(|| self.key.cmp(&other.key))
    }
}

impl fmt::Display for Subtorus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis: Vec<String> = self
            .stabilizer
            .basis_vectors()
            .iter()
            .map(|v| {
                let xs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})", xs.join(","))
            })
            .collect();
        let off: Vec<String> = self.offset.iter().map(|x| x.to_string()).collect();
        write!(f, "<{}> + ({})", basis.join(", "), off.join(","))
    }
}
