use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank of `m` with entries reduced modulo the prime `p`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize> {
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(Error::NotPrime(p));
    }
    let pb = BigInt::from(p);
    let mut rows: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.mod_floor(&pb).to_u64().expect("reduced residue fits"))
                .collect()
        })
        .collect();
    Ok(rank_of_residues(&mut rows, p))
}

fn inverse(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let (mut base, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn rank_of_residues(rows: &mut [Vec<u64>], p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inverse(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = (*x + (p - f) * y) % p;
            }
        }
        rank += 1;
    }
    rank
}
