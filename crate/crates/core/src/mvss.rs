//! First page of the Mayer-Vietoris spectral sequence of a torus
//! arrangement and the resulting homology of the arrangement.

use std::ops::Range;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactlin::{rank_mod_p, snf_diagonal, AbelianGroup, IntMatrix};
use crate::wedgelat::wedge_vectors;

/// The differential from `⊕_{(α,θ)} Λ2 Γ^θ` to `⊕_α Λ2 Γ^α ⊕ ⊕_θ Λ2 Γ^θ`.
///
/// Rows: six per 4-torus (`Λ2` of its Hermite basis, lexicographic pairs),
/// then one per 2-torus. Columns: one per incidence pair, ordered by `α`
/// then by `θ`. A column carries `+b1∧b2` written in the `α` block and
/// `-1` in the `θ` row, where `b1, b2` is the Hermite basis of `Γ^θ`.
#[derive(Clone, Debug)]
pub struct D1Matrix {
    pub matrix: IntMatrix,
    pub row_blocks_alpha: Vec<Range<usize>>,
    pub row_theta: Vec<usize>,
    /// `(α, θ)` for each column.
    pub columns: Vec<(usize, usize)>,
}

pub fn build_d1(arr: &Arrangement) -> Result<D1Matrix> {
    let (l2, l1) = (arr.l2(), arr.l1());
    let nrows = 6 * l2 + l1;
    let columns: Vec<(usize, usize)> = arr
        .incidence_12()
        .iter()
        .enumerate()
        .flat_map(|(a, ts)| ts.iter().map(move |&t| (a, t)))
        .collect();
    let mut m = IntMatrix::zeros(nrows, columns.len());
    for (j, &(alpha, theta)) in columns.iter().enumerate() {
        let big = arr.four_tori()[alpha].stabilizer();
        let coords = arr.two_tori()[theta]
            .stabilizer()
            .basis_vectors()
            .iter()
            .map(|b| big.coordinates(b))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::IncidenceBroken { alpha, theta })?;
        let w = wedge_vectors(&coords)?;
        for (k, x) in w.into_iter().enumerate() {
            m[(6 * alpha + k, j)] = x;
        }
        m[(6 * l2 + theta, j)] = BigInt::from(-1);
    }
    Ok(D1Matrix {
        matrix: m,
        row_blocks_alpha: (0..l2).map(|a| 6 * a..6 * a + 6).collect(),
        row_theta: (0..l1).map(|t| 6 * l2 + t).collect(),
        columns,
    })
}

/// Homology of the arrangement with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AHomology {
    /// `H_0` through `H_4`.
    pub h: Vec<AbelianGroup>,
    pub f: i64,
    pub chi: i64,
    pub coker_d1: AbelianGroup,
    pub ker_d1_rank: usize,
    pub d1_rank: usize,
    pub d1_shape: (usize, usize),
}

/// Euler characteristic from the incidence counts.
pub fn euler_characteristic(arr: &Arrangement) -> i64 {
    let l0_theta = arr.l0_theta();
    let nested: usize = arr
        .incidence_12()
        .iter()
        .flat_map(|ts| ts.iter().map(|&t| l0_theta[t]))
        .sum();
    arr.l0() as i64 - arr.l0_alpha().iter().sum::<usize>() as i64 + nested as i64
        - l0_theta.iter().sum::<usize>() as i64
}

/// Rank correction of `H_2` beyond the cokernel of `d1`.
pub fn free_correction(arr: &Arrangement, chi: i64) -> i64 {
    -3 * arr.l2() as i64 - arr.l1() as i64 + arr.l1_alpha().iter().sum::<usize>() as i64 + 5 + chi
}

pub fn homology_of_a(arr: &Arrangement) -> Result<AHomology> {
    let d1 = build_d1(arr)?;
    homology_from_d1(arr, &d1)
}

pub fn homology_from_d1(arr: &Arrangement, d1: &D1Matrix) -> Result<AHomology> {
    let chi = euler_characteristic(arr);
    let f = free_correction(arr, chi);
    if f < 0 {
        return Err(Error::NegativeF(f));
    }
    let diag = snf_diagonal(&d1.matrix);
    let rank = diag.len();
    let (rows, cols) = (d1.matrix.rows(), d1.matrix.cols());
    let coker_d1 = AbelianGroup {
        free_rank: rows - rank,
        factors: diag.into_iter().filter(|d| !d.is_one()).collect(),
    };
    let ker_d1_rank = cols - rank;
    let h2 = coker_d1.direct_sum(&AbelianGroup::free(f as usize));
    let h = vec![
        AbelianGroup::free(1),
        AbelianGroup::free(6),
        h2,
        AbelianGroup::free(4 * arr.l2() + ker_d1_rank),
        AbelianGroup::free(arr.l2()),
    ];
    Ok(AHomology {
        h,
        f,
        chi,
        coker_d1,
        ker_d1_rank,
        d1_rank: rank,
        d1_shape: (rows, cols),
    })
}

/// Dimensions of `H_0..H_4` with `F_p` coefficients, from a mod-`p`
/// elimination of `d1`.
pub fn homology_of_a_mod_p(arr: &Arrangement, p: u64) -> Result<Vec<usize>> {
    let d1 = build_d1(arr)?;
    homology_mod_p_from_d1(arr, &d1, p)
}

pub fn homology_mod_p_from_d1(arr: &Arrangement, d1: &D1Matrix, p: u64) -> Result<Vec<usize>> {
    let rank = rank_mod_p(&d1.matrix, p)?;
    let chi = euler_characteristic(arr);
    let f = free_correction(arr, chi);
    if f < 0 {
        return Err(Error::NegativeF(f));
    }
    let (rows, cols) = (d1.matrix.rows(), d1.matrix.cols());
    Ok(vec![
        1,
        6,
        rows - rank + f as usize,
        4 * arr.l2() + cols - rank,
        arr.l2(),
    ])
}
