//! Column Hermite normal form.
//!
//! Columns are lattice generators. In the result the nonzero columns come
//! first; column `j` has its leading (topmost nonzero) entry in row `p_j`
//! with `p_0 < p_1 < ...`, every leading entry is positive, and the entries
//! of row `p_j` lying left of the leading entry are reduced into
//! `[0, leading)`. This is the transpose of the usual upper-triangular row
//! HNF, so two generating sets span the same lattice iff their forms are
//! bitwise equal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Hermite form `H` together with a unimodular `U` such that `M·U = H`.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Leading row of each nonzero column of `h`.
    pub pivots: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn hnf(m: &IntMatrix) -> Hnf {
    reduce(m, true)
}

/// Hermite form without tracking the transform.
pub fn hnf_only(m: &IntMatrix) -> (IntMatrix, Vec<usize>) {
    let r = reduce(m, false);
    (r.h, r.pivots)
}

fn reduce(m: &IntMatrix, track: bool) -> Hnf {
    let (nrows, ncols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = if track {
        IntMatrix::identity(ncols)
    } else {
        IntMatrix::zeros(0, 0)
    };
    let mut pivots = Vec::new();
    let mut pc = 0;

    for row in 0..nrows {
        if pc == ncols {
            break;
        }
        // Euclid across the row until a single nonzero remains at column pc.
        loop {
            let smallest = (pc..ncols)
                .filter(|&j| !h[(row, j)].is_zero())
                .min_by(|&a, &b| h[(row, a)].abs().cmp(&h[(row, b)].abs()));
            let Some(j) = smallest else { break };
            if j != pc {
                h.swap_cols(pc, j);
                if track {
                    u.swap_cols(pc, j);
                }
            }
            let mut clean = true;
            for j in pc + 1..ncols {
                if h[(row, j)].is_zero() {
                    continue;
                }
                let q = h[(row, j)].div_floor(&h[(row, pc)]);
                h.sub_col_multiple(j, pc, &q);
                if track {
                    u.sub_col_multiple(j, pc, &q);
                }
                if !h[(row, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(row, pc)].is_zero() {
            continue;
        }
        if h[(row, pc)].is_negative() {
            h.negate_col(pc);
            if track {
                u.negate_col(pc);
            }
        }
        let pivot: BigInt = h[(row, pc)].clone();
        for j in 0..pc {
            let q = h[(row, j)].div_floor(&pivot);
            if !q.is_zero() {
                h.sub_col_multiple(j, pc, &q);
                if track {
                    u.sub_col_multiple(j, pc, &q);
                }
            }
        }
        pivots.push(row);
        pc += 1;
    }
    Hnf { h, u, pivots }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    /// Independent oracle: repeated pairwise gcd column operations on a copy,
    /// producing the same canonical layout.
    fn naive_hnf(m: &IntMatrix) -> IntMatrix {
        let mut cols: Vec<Vec<BigInt>> = m.columns();
        let n = m.rows();
        let mut out: Vec<Vec<BigInt>> = Vec::new();
        for row in 0..n {
            // pairwise gcd combine every column with nonzero entry in this row
            let mut acc: Option<Vec<BigInt>> = None;
            let mut rest = Vec::new();
            for c in cols.drain(..) {
                if c[row].is_zero() {
                    rest.push(c);
                    continue;
                }
                match acc.take() {
                    None => acc = Some(c),
                    Some(a) => {
                        let e = a[row].extended_gcd(&c[row]);
                        let g = e.gcd.clone();
                        let new_a: Vec<BigInt> =
                            a.iter().zip(&c).map(|(x, y)| &e.x * x + &e.y * y).collect();
                        let (fa, fc) = (&c[row] / &g, &a[row] / &g);
                        let killed: Vec<BigInt> =
                            a.iter().zip(&c).map(|(x, y)| &fa * x - &fc * y).collect();
                        rest.push(killed);
                        acc = Some(new_a);
                    }
                }
            }
            cols = rest;
            if let Some(mut a) = acc {
                if a[row].is_negative() {
                    a.iter_mut().for_each(|x| *x = -x.clone());
                }
                out.push(a);
            }
        }
        // reduce left entries
        let piv_rows: Vec<usize> = out
            .iter()
            .map(|c| c.iter().position(|x| !x.is_zero()).unwrap())
            .collect();
        for j in 0..out.len() {
            for i in 0..j {
                let p = &out[j][piv_rows[j]];
                let q = out[i][piv_rows[j]].div_floor(p);
                let cj = out[j].clone();
                for (x, y) in out[i].iter_mut().zip(&cj) {
                    *x -= &q * y;
                }
            }
        }
        let mut h = IntMatrix::zeros(n, m.cols());
        for (j, c) in out.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                h[(i, j)] = x.clone();
            }
        }
        h
    }

    fn lcg(seed: &mut u64) -> i64 {
        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((*seed >> 33) % 21) as i64 - 10
    }

    #[test]
    fn identity_is_fixed() {
        let i = IntMatrix::identity(3);
        let r = hnf(&i);
        assert_eq!(r.h, i);
        assert_eq!(r.u, i);
    }

    #[test]
    fn zero_matrix() {
        let z = IntMatrix::zeros(2, 2);
        let r = hnf(&z);
        assert!(r.h.is_zero());
        assert_eq!(z.mul(&r.u).unwrap(), r.h);
        assert!(r.u.det().unwrap().abs().is_one());
    }

    #[test]
    fn random_4x4_matches_naive_oracle() {
        let mut seed = 7u64;
        for _ in 0..200 {
            let rows: Vec<Vec<i64>> = (0..4).map(|_| (0..4).map(|_| lcg(&mut seed)).collect()).collect();
            let m = IntMatrix::from_i64_rows(&rows);
            let r = hnf(&m);
            assert_eq!(m.mul(&r.u).unwrap(), r.h);
            assert!(r.u.det().unwrap().abs().is_one());
            assert_eq!(r.h, naive_hnf(&m), "matrix {rows:?}");
        }
    }

    #[test]
    fn layout_invariants() {
        let m = IntMatrix::from_i64_rows(&[vec![4, 6, 2], vec![1, 0, 3], vec![5, 5, 5]]);
        let r = hnf(&m);
        for (j, &p) in r.pivots.iter().enumerate() {
            assert!(r.h[(p, j)] > BigInt::zero());
            for i in 0..p {
                assert!(r.h[(i, j)].is_zero());
            }
            for i in 0..j {
                assert!(r.h[(p, i)] >= BigInt::zero() && r.h[(p, i)] < r.h[(p, j)]);
            }
        }
    }
}
